"""Write the bundled toy resources, model and corpus to RESOURCE_DIR."""
import sys

from advtext.core.config import settings
from advtext.core.logging import configure_logging
from advtext.datasets.toy import write_toy_resources


def init_resources(resource_dir: str = settings.RESOURCE_DIR) -> None:
    paths = write_toy_resources(resource_dir)
    for name, path in paths.items():
        print(f"{name}: {path}")


if __name__ == "__main__":
    configure_logging()
    init_resources(sys.argv[1] if len(sys.argv) > 1 else settings.RESOURCE_DIR)
