from typing import Any, Dict, List


def add_indent(text: str, num_spaces: int) -> str:
    """Indent every line but the first."""
    lines = text.split("\n")
    if len(lines) == 1:
        return text
    first = lines.pop(0)
    return first + "\n" + "\n".join((num_spaces * " ") + line for line in lines)


def format_value(value: Any) -> str:
    if isinstance(value, (set, frozenset)):
        return "{" + ", ".join(repr(v) for v in sorted(value)) + "}"
    return str(value)


class Component:
    """Shared prototype printing for attack components.

    `extra_repr_keys` names the attributes shown in the prototype, in
    order; `from_params` rebuilds a component from those values.
    """

    def extra_repr_keys(self) -> List[str]:
        return []

    def repr_params(self) -> Dict[str, Any]:
        return {key: getattr(self, key) for key in self.extra_repr_keys()}

    def __repr__(self) -> str:
        params = [f"  ({key}):  {format_value(value)}" for key, value in self.repr_params().items()]
        if not params:
            return self.__class__.__name__
        return f"{self.__class__.__name__}(\n" + "\n".join(params) + "\n)"

    __str__ = __repr__

    @classmethod
    def from_params(cls, params: Dict[str, Any], context) -> "Component":
        return cls(**params)


class BuildContext:
    """What components may draw on when they are built by name."""

    def __init__(self, model=None, resources=None, query_budget=None, use_cache: bool = True):
        if resources is None:
            from advtext.resources.bundle import ResourceBundle
            resources = ResourceBundle()
        self.model = model
        self.resources = resources
        self.query_budget = query_budget
        self.use_cache = use_cache
