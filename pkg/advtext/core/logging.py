import logging
import logging.config
import os
from typing import Optional

from advtext.core.config import settings

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"


def configure_logging(level: Optional[str] = None, config_file: Optional[str] = None) -> None:
    """Load the ini logging config, falling back to a console handler."""
    config_file = config_file or settings.LOG_CONFIG
    if os.path.exists(config_file):
        logging.config.fileConfig(config_file, disable_existing_loggers=False)
    else:
        logging.basicConfig(format=LOG_FORMAT, datefmt="%H:%M:%S")
    logging.getLogger("advtext").setLevel((level or settings.LOG_LEVEL).upper())
