from advtext.datasets.dataset import Dataset, Example, TaskType
