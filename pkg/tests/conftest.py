from fractions import Fraction

import pytest
from hypothesis import settings

from qhopf import scalars

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def at(x, v=Fraction(3, 2), eta=Fraction(5, 7)):
    """Numeric value of a Scalar at ``v`` (so ``q = v**6``) and ``eta``."""
    x = scalars.Scalar.coerce(x)
    import flint

    args = [flint.fmpq(v.numerator, v.denominator), flint.fmpq(eta.numerator, eta.denominator)]
    args += [flint.fmpq(0)] * 4
    num = x.num(*args)
    den = x.den(*args)
    return Fraction(int(num.p), int(num.q)) / Fraction(int(den.p), int(den.q))


@pytest.fixture
def numeric():
    return at
