import enum
import logging
import os
from collections import OrderedDict
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import pandas as pd

from advtext.core.errors import DatasetError
from advtext.models.attacked_text import DEFAULT_COLUMN, AttackedText

logger = logging.getLogger(__name__)

ExampleInput = Union[str, "OrderedDict[str, str]"]


class TaskType(str, enum.Enum):
    CLASSIFICATION = "classification"
    TEXT_TO_TEXT = "text-to-text"


class Example(NamedTuple):
    input: ExampleInput
    output: Union[int, str]

    def attacked_text(self) -> AttackedText:
        return AttackedText(self.input)

    @property
    def text(self) -> str:
        if isinstance(self.input, str):
            return self.input
        return "\n".join(self.input.values())


# header layouts we recognise, most specific first
_INPUT_LAYOUTS: List[Tuple[str, ...]] = [("premise", "hypothesis"), ("text", "text2"), ("text",)]


class Dataset:
    """Labelled examples read from a delimited file or built in memory.

    Classification files carry `text` (optionally `text2`, or a
    `premise`/`hypothesis` pair) and an integer `label`; text-to-text
    files carry `source` and `reference`.
    """

    def __init__(
        self,
        examples: Sequence[Example],
        task: TaskType = TaskType.CLASSIFICATION,
        label_names: Optional[Sequence[str]] = None,
        input_columns: Sequence[str] = (DEFAULT_COLUMN,),
        name: str = "dataset",
    ):
        self.examples = list(examples)
        self.task = TaskType(task)
        self.label_names = list(label_names) if label_names is not None else None
        self.input_columns = tuple(input_columns)
        self.name = name

    def __len__(self) -> int:
        return len(self.examples)

    def __iter__(self) -> Iterator[Example]:
        return iter(self.examples)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Dataset(self.examples[index], self.task, self.label_names, self.input_columns, self.name)
        return self.examples[index]

    @property
    def texts(self) -> List[str]:
        return [e.text for e in self.examples]

    @property
    def outputs(self) -> List[Union[int, str]]:
        return [e.output for e in self.examples]

    @property
    def num_labels(self) -> int:
        if self.label_names:
            return len(self.label_names)
        return max((int(o) for o in self.outputs), default=-1) + 1

    def replace_examples(self, examples: Sequence[Example]) -> "Dataset":
        return Dataset(examples, self.task, self.label_names, self.input_columns, self.name)

    @classmethod
    def from_dataframe(cls, frame: pd.DataFrame, name: str = "dataset") -> "Dataset":
        frame = frame.rename(columns=lambda c: str(c).strip())
        columns = list(frame.columns)
        if {"source", "reference"} <= set(columns):
            examples = [Example(str(s), str(r)) for s, r in zip(frame["source"], frame["reference"])]
            return cls(examples, TaskType.TEXT_TO_TEXT, input_columns=("source",), name=name)
        layout = next((layout for layout in _INPUT_LAYOUTS if set(layout) <= set(columns)), None)
        if layout is None or "label" not in columns:
            raise DatasetError(
                f"{name}: expected columns text[,text2],label or source,reference; found {', '.join(columns)}"
            )
        try:
            labels = [int(str(v).strip()) for v in frame["label"]]
        except ValueError as exc:
            raise DatasetError(f"{name}: labels must be integers ({exc})")
        if any(label < 0 for label in labels):
            raise DatasetError(f"{name}: labels must be non-negative")
        examples = []
        for row, label in zip(frame[list(layout)].itertuples(index=False), labels):
            if len(layout) == 1:
                examples.append(Example(str(row[0]), label))
            else:
                examples.append(Example(OrderedDict(zip(layout, (str(v) for v in row))), label))
        return cls(examples, TaskType.CLASSIFICATION, input_columns=layout, name=name)

    @classmethod
    def from_csv(cls, path: str) -> "Dataset":
        if not os.path.exists(path):
            raise DatasetError(f"Dataset file {path} does not exist")
        sep = "\t" if path.endswith((".tsv", ".tab")) else ","
        try:
            frame = pd.read_csv(path, sep=sep, dtype=str, keep_default_na=False)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
            raise DatasetError(f"Cannot read dataset {path}: {exc}")
        dataset = cls.from_dataframe(frame, name=os.path.basename(path))
        logger.info("Loaded %d %s examples from %s", len(dataset), dataset.task.value, path)
        return dataset

    def to_dataframe(self) -> pd.DataFrame:
        if self.task == TaskType.TEXT_TO_TEXT:
            return pd.DataFrame({"source": self.texts, "reference": self.outputs})
        rows = []
        for example in self.examples:
            inputs = example.input if isinstance(example.input, dict) else {DEFAULT_COLUMN: example.input}
            rows.append({**inputs, "label": example.output})
        return pd.DataFrame(rows, columns=list(self.input_columns) + ["label"])

    def to_csv(self, path: str) -> None:
        self.to_dataframe().to_csv(path, index=False, lineterminator="\n")
