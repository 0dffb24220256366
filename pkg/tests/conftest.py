import random
from fractions import Fraction

import pytest


def simplex_point(rng: random.Random, d: int, total: int, grain: int = 10**6) -> tuple[Fraction, ...]:
    """Exact rational point on {x >= 0, sum x = total} from a uniform integer composition."""
    cuts = sorted(rng.randint(0, grain) for _ in range(d - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [grain])]
    return tuple(Fraction(total * p, grain) for p in parts)


@pytest.fixture
def rng():
    return random.Random(20240611)
