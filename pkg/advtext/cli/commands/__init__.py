from advtext.cli.commands import attack, augment, evaluate, recipes, train

COMMANDS = [attack, augment, train, evaluate, recipes]
