import re
from typing import Any, Dict, List, Tuple

from advtext.attack.attack import Attack
from advtext.attack.components import COMPONENT_CLASSES, UNSUPPORTED_CLASSES, build_by_class_name, parse_scalar
from advtext.core.component import BuildContext
from advtext.core.errors import UsageError

FIELD = re.compile(r"^\((\w+)\):\s*(.*)$")
NAME = re.compile(r"^[A-Z]\w*$")


def dump_prototype(attack: Attack) -> str:
    return repr(attack)


def _value(raw: str, lines: List[str], position: int, context: BuildContext) -> Tuple[Any, int]:
    """Parse the value starting on lines[position - 1]; return it and the next line to read."""
    if raw.endswith("("):
        return _component(raw[:-1], lines, position, context)
    if NAME.match(raw) and (raw in COMPONENT_CLASSES or raw in UNSUPPORTED_CLASSES):
        return build_by_class_name(raw, {}, [], context), position
    return parse_scalar(raw), position


def _component(name: str, lines: List[str], position: int, context: BuildContext) -> Tuple[Any, int]:
    params: Dict[str, Any] = {}
    items: List[Any] = []
    while position < len(lines):
        line = lines[position]
        if line == ")":
            return build_by_class_name(name, params, items, context), position + 1
        match = FIELD.match(line)
        if not match:
            raise UsageError(f"Cannot parse prototype line {line!r}")
        key, raw = match.groups()
        value, position = _value(raw, lines, position + 1, context)
        if key.isdigit():
            items.append(value)
        else:
            params[key] = value
    raise UsageError(f"Unterminated component {name} in prototype")


def parse_prototype(text: str, context: BuildContext) -> Attack:
    """Rebuild an `Attack` from the text its `repr` prints."""
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if len(lines) < 2 or lines[0] != "Attack(" or lines[-1] != ")":
        raise UsageError("A prototype starts with 'Attack(' and ends with ')'")
    fields: Dict[str, Any] = {}
    constraints: List[Any] = []
    position = 1
    while position < len(lines) - 1:
        match = FIELD.match(lines[position])
        if not match:
            raise UsageError(f"Cannot parse prototype line {lines[position]!r}")
        key, raw = match.groups()
        position += 1
        if key == "constraints":
            if raw == "None":
                continue
            while position < len(lines) - 1:
                item = FIELD.match(lines[position])
                if not item or not item.group(1).isdigit():
                    break
                value, position = _value(item.group(2), lines, position + 1, context)
                constraints.append(value)
        else:
            fields[key], position = _value(raw, lines, position, context)
    missing = {"search_method", "goal_function", "transformation"} - set(fields)
    if missing:
        raise UsageError(f"Prototype lacks {', '.join(sorted(missing))}")
    return Attack(
        fields["goal_function"],
        constraints,
        fields["transformation"],
        fields["search_method"],
        use_cache=context.use_cache,
    )
