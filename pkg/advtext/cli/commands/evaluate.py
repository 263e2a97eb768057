from advtext.cli.loaders import load_dataset, load_victim
from advtext.datasets.dataset import TaskType
from advtext.training.trainer import evaluate_model


def register(subparsers) -> None:
    parser = subparsers.add_parser("eval", help="accuracy of a classifier or mean BLEU of a translator")
    parser.add_argument("--model", default="toy", help="toy, toy-translator, or a model file")
    parser.add_argument("--dataset", help="toy, toy-translation, or a CSV/TSV file")
    parser.add_argument("--num-examples", type=int)
    parser.set_defaults(func=run)


def run(args) -> int:
    model = load_victim(args.model)
    dataset = load_dataset(args.dataset or ("toy-translation" if args.model == "toy-translator" else "toy"))
    if args.num_examples is not None:
        dataset = dataset[: args.num_examples]
    score = evaluate_model(model, dataset)
    metric = "Accuracy" if dataset.task == TaskType.CLASSIFICATION else "BLEU"
    print(f"{metric} on {len(dataset)} examples: {100 * score:.2f}")
    return 0
