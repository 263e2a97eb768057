import logging
from typing import List, Optional, Tuple

from advtext.attack.attack import Attack
from advtext.attack.components import build_attack_from_tokens
from advtext.attack.prototype import dump_prototype, parse_prototype
from advtext.attack.recipes import build_recipe
from advtext.attack.runner import attack_dataset
from advtext.cli.loaders import add_resource_arguments, load_dataset, load_victim, resource_bundle_from_args
from advtext.cli.writers import ResultWriter, StdoutWriter, build_writer
from advtext.core.component import BuildContext
from advtext.core.config import settings
from advtext.core.errors import UsageError
from advtext.victims.base import is_classifier

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("attack", help="attack a victim model over a dataset")
    parser.add_argument("--recipe", help="named attack recipe (see list-recipes)")
    parser.add_argument("--goal-function", help="goal function token, default untargeted-classification")
    parser.add_argument("--transformation", help="transformation token, e.g. word-swap-embedding:max_candidates=20")
    parser.add_argument("--constraints", nargs="*", help="constraint tokens, applied in order")
    parser.add_argument("--search-method", help="search method token, default greedy-word-wir")
    parser.add_argument("--attack-prototype", help="file holding a dumped attack prototype to rebuild")
    parser.add_argument("--print-prototype", action="store_true", help="print the attack prototype and exit")
    parser.add_argument("--model", default="toy", help="toy, toy-translator, or a model file")
    parser.add_argument("--dataset", help="toy, toy-translation, or a CSV/TSV file")
    add_resource_arguments(parser)
    parser.add_argument("--num-examples", type=int)
    parser.add_argument("--offset", type=int, default=0)
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--query-budget", type=int, default=settings.QUERY_BUDGET)
    parser.add_argument("--num-workers", type=int, default=settings.NUM_WORKERS)
    parser.add_argument("--no-cache", action="store_true", help="disable the goal and constraint caches")
    parser.add_argument("--no-color", action="store_true")
    parser.add_argument(
        "--log-to", action="append", default=[], metavar="FORMAT=PATH",
        help="also write results as txt, csv, html or jsonl; repeatable",
    )
    parser.set_defaults(func=run)


def _component_flags(args) -> List[str]:
    names = ["goal_function", "transformation", "constraints", "search_method"]
    return [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is not None]


def build_attack(args, model, resources) -> Tuple[Attack, Optional[str]]:
    """The attack the flags describe, and the recipe name when one was used."""
    components = _component_flags(args)
    sources = [bool(args.recipe), bool(components), bool(args.attack_prototype)]
    if sum(sources) > 1:
        raise UsageError("Use one of --recipe, --attack-prototype or component flags, not several")
    context = BuildContext(model=model, resources=resources, query_budget=args.query_budget, use_cache=not args.no_cache)
    if args.recipe:
        return build_recipe(args.recipe, model, resources, args.query_budget, use_cache=not args.no_cache), args.recipe
    if args.attack_prototype:
        with open(args.attack_prototype, encoding="utf-8") as f:
            return parse_prototype(f.read(), context), None
    if not args.transformation:
        raise UsageError("Give --recipe, --attack-prototype, or at least --transformation")
    attack = build_attack_from_tokens(
        context,
        args.transformation,
        goal_function=args.goal_function,
        constraints=args.constraints or (),
        search_method=args.search_method,
    )
    return attack, None


def run(args) -> int:
    model = load_victim(args.model)
    resources = resource_bundle_from_args(args)
    attack, recipe = build_attack(args, model, resources)
    if args.print_prototype:
        print(dump_prototype(attack))
        return 0
    dataset = load_dataset(args.dataset or ("toy" if is_classifier(model) else "toy-translation"))
    writers: List[ResultWriter] = [build_writer(spec) for spec in args.log_to]
    if not args.quiet:
        writers.insert(0, StdoutWriter(color=not args.no_color))
    outcome = attack_dataset(
        attack,
        dataset,
        num_examples=args.num_examples,
        seed=args.seed,
        num_workers=args.num_workers,
        offset=args.offset,
        recipe=recipe,
        observers=writers,
        progress=not args.quiet,
    )
    for writer in writers:
        writer.close(outcome.summary)
    return 0
