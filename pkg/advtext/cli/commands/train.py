import logging
import os

from advtext.cli.loaders import add_resource_arguments, load_dataset, resource_bundle_from_args
from advtext.core.config import settings
from advtext.schemas.augmentation import normalize_pct
from advtext.schemas.training import TrainConfig
from advtext.training.trainer import adversarial_train, train

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("train", help="train the linear victim, optionally with augmentation or attacks")
    parser.add_argument("--model", default="linear", choices=["linear"], help="victim architecture")
    parser.add_argument("--dataset", default="toy", help="toy, or a CSV/TSV file")
    parser.add_argument("--dev-dataset", help="held-out set for per-epoch accuracy and the final evaluation")
    parser.add_argument("--output", default="model.json", help="where to save the trained model")
    parser.add_argument("--epochs", type=int, default=10)
    parser.add_argument("--num-clean-epochs", type=int, default=0)
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--learning-rate", type=float, default=0.5)
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--augment", dest="augment_recipe", help="augmentation recipe applied before epoch 1")
    parser.add_argument("--pct-words-to-swap", type=float, default=0.1)
    parser.add_argument("--transformations-per-example", type=int, default=1)
    parser.add_argument("--attack", dest="attack_recipe", help="recipe used for adversarial training")
    parser.add_argument("--attack-period", dest="attack_period_epochs", type=int, default=settings.ATTACK_PERIOD_EPOCHS)
    parser.add_argument("--query-budget", type=int, default=settings.QUERY_BUDGET)
    parser.add_argument("--early-stopping-patience", type=int)
    add_resource_arguments(parser)
    parser.set_defaults(func=run)


def run(args) -> int:
    config = TrainConfig(
        epochs=args.epochs,
        num_clean_epochs=args.num_clean_epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        seed=args.seed,
        augment_recipe=args.augment_recipe,
        pct_words_to_swap=normalize_pct(args.pct_words_to_swap),
        transformations_per_example=args.transformations_per_example,
        attack_recipe=args.attack_recipe,
        attack_period_epochs=args.attack_period_epochs,
        query_budget=args.query_budget,
        early_stopping_patience=args.early_stopping_patience,
    )
    dataset = load_dataset(args.dataset)
    dev = load_dataset(args.dev_dataset) if args.dev_dataset else None
    resources = resource_bundle_from_args(args) if config.augment_recipe or config.attack_recipe else None
    if config.attack_recipe:
        model, history = adversarial_train(config, dataset, dev, resources)
    else:
        model, history = train(config, dataset, dev, resources)
    model.model_id = os.path.splitext(os.path.basename(args.output))[0]
    model.save(args.output)
    if history.clean_accuracy is not None:
        print(f"Clean accuracy: {100 * history.clean_accuracy:.2f}%")
    if history.accuracy_under_attack is not None:
        print(f"Accuracy under attack ({config.attack_recipe}): {100 * history.accuracy_under_attack:.2f}%")
    return 0
