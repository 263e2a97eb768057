import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from advtext.cli.commands import COMMANDS
from advtext.core.config import settings
from advtext.core.errors import AdvTextError, UsageError
from advtext.core.logging import configure_logging

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="advtext", description="Adversarial attacks, augmentation and training for text models")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    for subparser in subparsers.choices.values():
        subparser.add_argument("--quiet", action="store_true", help="no progress bars or per-result output")
        subparser.add_argument("--log-level", default=settings.LOG_LEVEL)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns 0 on success, 1 on usage errors, 2 on runtime errors."""
    try:
        args = build_parser().parse_args(argv)
        configure_logging("WARNING" if args.quiet else args.log_level)
        return args.func(args)
    except AdvTextError as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return UsageError.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return AdvTextError.exit_code
