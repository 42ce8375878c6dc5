import random

import pytest

from afterimage.model import AfterimageLevelSet, Rule, RuleSet


def random_ruleset(rng: random.Random, n_max: int = 3, max_rules: int = 8,
                   alternating: bool = False) -> RuleSet:
    """Random surjective rule set over a coarse intensity grid.

    With `alternating`, each bias intensity maps to a single level and levels
    cycle along ascending bias, which makes separated mapping schemes (the
    scrambling-friendly layout) common instead of vanishingly rare.
    """
    while True:
        n = rng.randint(2, n_max)
        if alternating:
            biases = sorted(rng.sample(range(256), k=rng.randint(2 * n, max_rules)))
            triggers = rng.sample(range(256), k=len(biases))
            rules = [Rule(b / 255, t / 255, 1 + i % n)
                     for i, (b, t) in enumerate(zip(biases, triggers))]
        else:
            grid = [q / 255 for q in rng.sample(range(256), k=rng.randint(2, 6))]
            pairs = rng.sample(
                [(b, t) for b in grid for t in grid],
                k=min(rng.randint(n, max_rules), len(grid) ** 2),
            )
            rules = [Rule(b, t, rng.randint(1, n)) for b, t in pairs]
        if {r.target for r in rules} != set(range(1, n + 1)):
            continue
        return RuleSet("random", AfterimageLevelSet(n), tuple(rules))


@pytest.fixture
def rng():
    return random.Random(0xA51DE)
