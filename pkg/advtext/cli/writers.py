"""Result writers for attack runs.

Every writer is an observer: `log(index, result, record)` once per
attacked example in example order, then `close(summary)` once.
"""
import html
import json
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, TextIO, Tuple

import pandas as pd

from advtext.core.errors import DatasetError, UsageError
from advtext.models.attacked_text import AttackedText
from advtext.models.results import AttackResult
from advtext.schemas.attack import CSV_COLUMNS, AttackRecord, AttackSummary

logger = logging.getLogger(__name__)

DELETED = "deleted"
INSERTED = "inserted"
SUBSTITUTED = "substituted"

ANSI = {DELETED: "\033[91m", SUBSTITUTED: "\033[93m", INSERTED: "\033[92m"}
ANSI_RESET = "\033[0m"


def diff_marks(original: AttackedText, perturbed: AttackedText) -> Tuple[Dict[int, str], Dict[int, str]]:
    """Word-level diff of an edit chain, keyed by word index on each side."""
    original_marks = {i: DELETED for i in range(original.num_words)}
    perturbed_marks = {j: INSERTED for j in range(perturbed.num_words)}
    for i, j in original.aligned_indices(perturbed):
        del original_marks[i]
        del perturbed_marks[j]
        if original.words[i] != perturbed.words[j]:
            original_marks[i] = perturbed_marks[j] = SUBSTITUTED
    return original_marks, perturbed_marks


def render(
    text: AttackedText,
    marks: Dict[int, str],
    mark: Callable[[str, str], str],
    escape: Callable[[str], str] = lambda s: s,
) -> str:
    parts: List[str] = []
    index = 0
    for position, column in enumerate(text.columns):
        if position:
            parts.append(escape("\n"))
        parts.append(escape(column.separators[0]))
        for word, separator in zip(column.words, column.separators[1:]):
            kind = marks.get(index)
            parts.append(mark(escape(word), kind) if kind else escape(word))
            parts.append(escape(separator))
            index += 1
    return "".join(parts)


def summary_rows(summary: AttackSummary) -> List[Tuple[str, str]]:
    rows = [
        ("Number of successful attacks", str(summary.successful)),
        ("Number of failed attacks", str(summary.failed)),
        ("Number of skipped attacks", str(summary.skipped)),
        ("Number of maximized attacks", str(summary.maximized)),
        ("Original accuracy", f"{summary.original_accuracy:.2f}%"),
        ("Accuracy under attack", f"{summary.accuracy_under_attack:.2f}%"),
        ("Attack success rate", f"{summary.attack_success_rate:.2f}%"),
        ("Average perturbed word %", f"{summary.average_perturbed_word_percentage:.2f}%"),
        ("Average num. words per input", f"{summary.average_num_words:.2f}"),
        ("Avg num queries", f"{summary.average_num_queries:.2f}"),
    ]
    if summary.recipe:
        rows.insert(0, ("Recipe", summary.recipe))
    return rows


class ResultWriter:
    def log(self, index: int, result: AttackResult, record: AttackRecord) -> None:
        raise NotImplementedError

    def close(self, summary: AttackSummary) -> None:
        pass


class StdoutWriter(ResultWriter):
    """Colored diffs: deletions red, substitutions yellow, insertions green."""

    def __init__(self, stream: Optional[TextIO] = None, color: bool = True):
        self.stream = stream or sys.stdout
        self.color = color

    def _mark(self, word: str, kind: str) -> str:
        if not self.color:
            return f"[[{word}]]"
        return f"{ANSI[kind]}{word}{ANSI_RESET}"

    def log(self, index, result, record):
        original_marks, perturbed_marks = diff_marks(result.original_text, result.perturbed_text)
        print(f"--- Result {index} ---", file=self.stream)
        print(f"{record.original_output} --> {record.perturbed_output} [{record.status.value}]", file=self.stream)
        print(render(result.original_text, original_marks, self._mark), file=self.stream)
        if result.perturbed_text != result.original_text:
            print(file=self.stream)
            print(render(result.perturbed_text, perturbed_marks, self._mark), file=self.stream)
        print(file=self.stream)

    def close(self, summary):
        rows = summary_rows(summary)
        width = max(len(name) for name, _ in rows) + 2
        for name, value in rows:
            print(f"{name + ':':<{width}}{value}", file=self.stream)


class TxtWriter(ResultWriter):
    """Plain text; changed words are wrapped in [[ ]]."""

    def __init__(self, path: str):
        self.path = path
        self.blocks: List[str] = []

    def log(self, index, result, record):
        original_marks, perturbed_marks = diff_marks(result.original_text, result.perturbed_text)
        mark = lambda word, kind: f"[[{word}]]"
        self.blocks.append(
            "\n".join([
                f"Result {index}: {record.original_output} --> {record.perturbed_output} [{record.status.value}]",
                render(result.original_text, original_marks, mark),
                render(result.perturbed_text, perturbed_marks, mark),
            ])
        )

    def close(self, summary):
        with open(self.path, "w", encoding="utf-8") as f:
            for block in self.blocks:
                f.write(block + "\n\n")
            for name, value in summary_rows(summary):
                f.write(f"{name}: {value}\n")
        logger.info("Wrote %d results to %s", len(self.blocks), self.path)


class CsvWriter(ResultWriter):
    def __init__(self, path: str):
        self.path = path
        self.rows: List[Dict[str, object]] = []

    def log(self, index, result, record):
        row = record.dict(include=set(CSV_COLUMNS))
        row["status"] = record.status.value
        self.rows.append(row)

    def close(self, summary):
        frame = pd.DataFrame(self.rows, columns=CSV_COLUMNS)
        frame.to_csv(self.path, index=False, lineterminator="\r\n")
        logger.info("Wrote %d results to %s", len(frame), self.path)


HTML_STYLE = """
table { border-collapse: collapse; }
td, th { border: 1px solid #ccc; padding: 4px 8px; vertical-align: top; white-space: pre-wrap; }
.deleted { background: #fdd; text-decoration: line-through; }
.inserted { background: #dfd; }
.substituted { background: #ffd; }
"""


class HtmlWriter(ResultWriter):
    """One table row per result with highlighted word edits."""

    def __init__(self, path: str):
        self.path = path
        self.rows: List[str] = []

    @staticmethod
    def _mark(word: str, kind: str) -> str:
        tag = {DELETED: "del", INSERTED: "ins", SUBSTITUTED: "mark"}[kind]
        return f'<{tag} class="{kind}">{word}</{tag}>'

    def log(self, index, result, record):
        original_marks, perturbed_marks = diff_marks(result.original_text, result.perturbed_text)
        cells = [
            str(index),
            render(result.original_text, original_marks, self._mark, html.escape),
            render(result.perturbed_text, perturbed_marks, self._mark, html.escape),
            html.escape(f"{record.original_output} --> {record.perturbed_output}"),
            html.escape(record.status.value),
            str(record.num_queries),
        ]
        self.rows.append("<tr>" + "".join(f"<td>{c}</td>" for c in cells) + "</tr>")

    def close(self, summary):
        header = "".join(f"<th>{h}</th>" for h in ["#", "original", "perturbed", "output", "status", "queries"])
        summary_table = "".join(
            f"<tr><th>{html.escape(name)}</th><td>{html.escape(value)}</td></tr>" for name, value in summary_rows(summary)
        )
        with open(self.path, "w", encoding="utf-8") as f:
            f.write("<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Attack results</title>\n")
            f.write(f"<style>{HTML_STYLE}</style>\n</head>\n<body>\n")
            f.write(f"<table class=\"results\">\n<thead><tr>{header}</tr></thead>\n<tbody>\n")
            for row in self.rows:
                f.write(row + "\n")
            f.write("</tbody>\n</table>\n")
            f.write(f"<table class=\"summary\">\n{summary_table}\n</table>\n</body>\n</html>\n")
        logger.info("Wrote %d results to %s", len(self.rows), self.path)


class JsonlWriter(ResultWriter):
    """One `result` line per example, then one `summary` line."""

    def __init__(self, path: str):
        self.path = path
        self.lines: List[str] = []

    def log(self, index, result, record):
        self.lines.append(json.dumps({"type": "result", **record.dict()}))

    def close(self, summary):
        with open(self.path, "w", encoding="utf-8") as f:
            for line in self.lines:
                f.write(line + "\n")
            f.write(json.dumps({"type": "summary", **summary.dict()}) + "\n")
        logger.info("Wrote %d results to %s", len(self.lines), self.path)


def read_jsonl(path: str) -> Tuple[List[AttackRecord], Optional[AttackSummary]]:
    records: List[AttackRecord] = []
    summary: Optional[AttackSummary] = None
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            payload = json.loads(line)
            kind = payload.pop("type", None)
            if kind == "result":
                records.append(AttackRecord.parse_obj(payload))
            elif kind == "summary":
                summary = AttackSummary.parse_obj(payload)
            else:
                raise DatasetError(f"{path}:{line_number}: unknown record type {kind!r}")
    return records, summary


WRITERS = {
    "txt": TxtWriter,
    "csv": CsvWriter,
    "html": HtmlWriter,
    "jsonl": JsonlWriter,
}


def build_writer(spec: str) -> ResultWriter:
    """`format=path`, or a bare path whose extension names the format."""
    fmt, sep, path = spec.partition("=")
    if not sep:
        path = spec
        fmt = os.path.splitext(spec)[1].lstrip(".").lower()
    if fmt not in WRITERS or not path:
        raise UsageError(f"Cannot log to {spec!r}; use one of {', '.join(f'{k}=PATH' for k in WRITERS)}")
    return WRITERS[fmt](path)
