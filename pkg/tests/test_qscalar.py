import random
from fractions import Fraction

import pytest
import sympy

from qcenter.qscalar import (
    LaurentPoly,
    RationalFunction as RF,
    CyclotomicField,
    SpecializationPole,
    build_context,
    gauss_binomial,
    gauss_factorial,
    gauss_int,
    specialize_scalar,
)
from qcenter.rootlat import build_root_system

Q = sympy.Symbol("q")


def rand_poly(rng, size=4, span=5):
    return LaurentPoly({rng.randrange(-span, span + 1):
                        Fraction(rng.randrange(-9, 10))
                        for _ in range(rng.randrange(1, size))})


def to_sympy(p: LaurentPoly):
    return sum(sympy.Rational(c) * Q ** e for e, c in p.c.items())


def test_laurent_ring_against_sympy():
    rng = random.Random(3)
    for _ in range(60):
        a, b = rand_poly(rng), rand_poly(rng)
        assert sympy.simplify(
            to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
        assert sympy.simplify(
            to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0


def test_rational_function_field_axioms():
    rng = random.Random(5)
    for _ in range(40):
        a = RF(rand_poly(rng))
        b = RF(rand_poly(rng))
        if a.is_zero() or b.is_zero():
            continue
        assert (a * a.inverse() - RF.one()).is_zero()
        assert ((a * b) / b - a).is_zero()
        assert (a * b - b * a).is_zero()
        assert ((a + b) - (b + a)).is_zero()


def test_gauss_integers_match_symbolic():
    for n in range(8):
        want = sum(Q ** (n - 1 - 2 * t) for t in range(n))
        got = to_sympy(gauss_int(n, 1).num) / to_sympy(gauss_int(n, 1).den)
        assert sympy.simplify(got - want) == 0


def test_gauss_binomial_pascal():
    for n in range(1, 7):
        for k in range(1, n):
            lhs = gauss_binomial(n, k, 1)
            rhs = gauss_binomial(n - 1, k - 1, 1) * RF.q_power(-(n - k)) + \
                gauss_binomial(n - 1, k, 1) * RF.q_power(k)
            assert (lhs - rhs).is_zero()


def test_gauss_factorial_product():
    for d in (1, 2, 3):
        acc = RF.one()
        for n in range(1, 6):
            acc = acc * gauss_int(n, d)
            assert (gauss_factorial(n, d) - acc).is_zero()


@pytest.mark.parametrize("ell", [3, 4, 5, 6, 8, 12])
def test_cyclotomic_root_is_primitive(ell):
    field = CyclotomicField(ell)
    z = field.zeta()
    assert (z ** ell - field.one()).is_zero()
    for k in range(1, ell):
        assert not (z ** k - field.one()).is_zero()
    assert z.multiplicative_order() == ell


def test_cyclotomic_inverse():
    field = CyclotomicField(7)
    z = field.zeta()
    x = z ** 3 + field.from_rational(2)
    assert ((x * x.inverse()) - field.one()).is_zero()


def test_specialize_detects_pole():
    field = CyclotomicField(4)
    f = RF.one() / (RF.q_power(4) - RF.one())   # zero of order 1 at zeta_4
    with pytest.raises(SpecializationPole):
        specialize_scalar(f, field)


def test_specialize_removable_singularity():
    # (q^4-1)/(q^2+1) = q^2-1 at zeta_4: value -2
    field = CyclotomicField(4)
    f = (RF.q_power(4) - RF.one()) / (RF.q_power(2) + RF.one())
    val = specialize_scalar(f, field)
    assert val == field.from_rational(-2)


def test_context_epsilon_and_eta():
    rs = build_root_system("A", 1)
    assert build_context(rs, 6).epsilon == -1     # odd r, ell = 2r
    assert build_context(rs, 4).epsilon == 1
    assert build_context(rs, 3).epsilon == 1
    ctx = build_context(rs, 4)
    assert all(e == -1 for e in ctx.eta_beta)     # even ell_beta
    ctx = build_context(rs, 3)
    assert all(e == 1 for e in ctx.eta_beta)


def test_context_case_split():
    b2 = build_root_system("B", 2)
    assert build_context(b2, 6).case == "even-shifted"
    assert build_context(b2, 8).case == "even-plain"
    assert build_context(b2, 5).case == "odd"
    with pytest.raises(ValueError):
        build_context(b2, 4)   # r must exceed the lacing number
