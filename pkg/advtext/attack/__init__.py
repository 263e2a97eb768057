from advtext.attack.attack import Attack
from advtext.attack.cache import ResultCache
from advtext.attack.components import build_attack_from_tokens, build_component, parse_token
from advtext.attack.prototype import dump_prototype, parse_prototype
from advtext.attack.recipes import RECIPES, UNSUPPORTED_RECIPES, build_recipe
from advtext.attack.runner import AttackRun, attack_dataset, example_rng, iter_attacks
