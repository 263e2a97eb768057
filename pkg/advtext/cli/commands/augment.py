import logging
import os

import pandas as pd

from advtext.augmentation.augmenter import augment_frame, build_augmenter
from advtext.cli.loaders import add_resource_arguments, resource_bundle_from_args
from advtext.core.config import settings
from advtext.core.errors import DatasetError
from advtext.schemas.augmentation import AugmenterConfig

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("augment", help="augment one text column of a CSV file")
    parser.add_argument("--csv", required=True, help="input CSV (or .tsv) file with a header")
    parser.add_argument("--input-column", default="text")
    parser.add_argument("--recipe", default="embedding", help="embedding, eda or charswap")
    parser.add_argument("--pct-words-to-swap", type=float, default=0.1, help="fraction, or a percentage when above 1")
    parser.add_argument("--transformations-per-example", type=int, default=1)
    parser.add_argument("--exclude-original", action="store_true", help="write only the augmented rows")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    add_resource_arguments(parser)
    parser.add_argument("--output", help="output file, default <input>_augmented.csv")
    parser.set_defaults(func=run)


def run(args) -> int:
    config = AugmenterConfig(
        recipe=args.recipe,
        pct_words_to_swap=args.pct_words_to_swap,
        transformations_per_example=args.transformations_per_example,
        seed=args.seed,
        exclude_original=args.exclude_original,
    )
    if not os.path.exists(args.csv):
        raise DatasetError(f"Input file {args.csv} does not exist")
    sep = "\t" if args.csv.endswith(".tsv") else ","
    frame = pd.read_csv(args.csv, sep=sep, dtype=str, keep_default_na=False)
    augmenter = build_augmenter(config, resource_bundle_from_args(args))
    augmented = augment_frame(
        frame, args.input_column, augmenter, include_original=not config.exclude_original, progress=not args.quiet
    )
    root, extension = os.path.splitext(args.csv)
    output = args.output or f"{root}_augmented{extension}"
    augmented.to_csv(output, sep=sep, index=False, lineterminator="\n")
    logger.info("Wrote %d rows to %s", len(augmented), output)
    return 0
