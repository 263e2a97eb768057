from advtext.attack.recipes import RECIPES, UNSUPPORTED_RECIPES


def register(subparsers) -> None:
    parser = subparsers.add_parser("list-recipes", help="list the attack recipes")
    parser.set_defaults(func=run)


def run(args) -> int:
    width = max(len(name) for name in RECIPES) + 2
    for name, recipe in RECIPES.items():
        print(f"{name:<{width}}{recipe.description}")
    print()
    print("Not available (need a language-model component):")
    for name, component in UNSUPPORTED_RECIPES.items():
        print(f"  {name:<{width}}{component}")
    return 0
