import random
from fractions import Fraction

import pytest

from app.cli import run
from app.services.arith import TowerElement
from app.services.gin import DEFAULT_SEED, GinConfig
from app.services.poly import Polynomial

HOMOGENEOUS_3 = ("Z0", "Z1", "Z2")
AFFINE_2 = ("z1", "z2")


@pytest.fixture
def cfg():
    return GinConfig(seed=DEFAULT_SEED)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def cli(capsys):
    """Run the CLI and return (exit code, stdout, stderr)."""
    def invoke(*argv):
        code = run(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


def random_element(rng, density=4, bound=5):
    coords = [Fraction(0)] * 16
    for k in rng.sample(range(16), density):
        coords[k] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return TowerElement(coords)


def random_homogeneous(rng, roster, degree, terms=3, bound=4):
    from app.services.poly import monomials_of_degree

    monomials = rng.sample(monomials_of_degree(len(roster), degree), terms)
    return Polynomial(roster, {alpha: rng.randint(-bound, bound) or 1 for alpha in monomials})
