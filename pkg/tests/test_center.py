import random

import pytest

from qcenter.center import (
    GenericScalars,
    RootScalars,
    certify,
    character_sum,
    exact_rank,
    ga_add,
    ga_eq,
    ga_mul,
    hc_basis_check,
    hc_iota,
    is_central,
    is_twist_invariant,
    resolve_orientation,
    t_element,
    twisted_action,
)
from qcenter.modrep import build_irrep
from qcenter.qscalar import RationalFunction as RF, build_context
from qcenter.rootlat import build_root_system
from qcenter.uqpbw import PBWEngine
from qcenter.uzeta import SpecializedAlgebra


@pytest.fixture(scope="module")
def a1_eng():
    return PBWEngine(build_root_system("A", 1))


@pytest.fixture(scope="module")
def a2_eng():
    return PBWEngine(build_root_system("A", 2))


def _rand_ga(rs, rng, scalars):
    out = {}
    for _ in range(rng.randrange(1, 4)):
        key = tuple(2 * rng.randrange(-2, 3) for _ in range(rs.rank))
        out[key] = scalars.q_power(rng.randrange(-3, 4))
    return out


def test_group_algebra_ring_laws(a2_eng):
    rng = random.Random(41)
    sc = GenericScalars()
    rs = a2_eng.rs
    for _ in range(20):
        a, b, c = (_rand_ga(rs, rng, sc) for _ in range(3))
        assert ga_eq(ga_mul(a, ga_mul(b, c)), ga_mul(ga_mul(a, b), c))
        assert ga_eq(ga_mul(a, ga_add(b, c)),
                     ga_add(ga_mul(a, b), ga_mul(a, c)))
        assert ga_eq(ga_mul(a, b), ga_mul(b, a))


def test_twisted_action_is_group_action(a2_eng):
    """Applying a braid word letter by letter agrees with the composite, and
    each simple twist squares to the identity."""
    rng = random.Random(42)
    sc = GenericScalars()
    rs = a2_eng.rs
    for _ in range(15):
        x = _rand_ga(rs, rng, sc)
        for i in range(rs.rank):
            assert ga_eq(twisted_action(rs, (i, i), x, sc), x)
        w = tuple(rng.randrange(rs.rank) for _ in range(3))
        step = x
        for i in reversed(w):
            step = twisted_action(rs, (i,), step, sc)
        assert ga_eq(twisted_action(rs, w, x, sc), step)


def test_twisted_action_rejects_odd_support(a2_eng):
    sc = GenericScalars()
    with pytest.raises(ValueError):
        twisted_action(a2_eng.rs, (0,), {(1, 0): RF.one()}, sc)


def test_trace_element_is_central_generic(a1_eng, a2_eng):
    for eng, lam in ((a1_eng, (2,)), (a2_eng, (1, 0))):
        mod = build_irrep(eng, lam)
        ce = t_element(mod, source=f"t{lam}")
        assert is_central(ce.element, eng)
        certify(ce, eng)
        assert ce.certified


def test_certify_raises_on_noncentral(a1_eng):
    from qcenter.center import CentralElement
    bad = CentralElement(a1_eng.canon_e(0), "e0", "generic")
    with pytest.raises(ArithmeticError):
        certify(bad, a1_eng)


def test_generators_are_not_central(a2_eng):
    assert not is_central(a2_eng.canon_e(0), a2_eng)
    assert not is_central(a2_eng.canon_f(1), a2_eng)
    assert is_central(a2_eng.canon_unit(), a2_eng)


def test_trace_element_specialized_central(a1_eng):
    mod = build_irrep(a1_eng, (1,))
    for ell in (3, 4, 6):
        ctx = build_context(a1_eng.rs, ell)
        alg = SpecializedAlgebra(a1_eng, ctx, "z")
        ce = t_element(mod, alg=alg, source="t1")
        assert alg.is_central(ce.element)


def test_projection_matches_character_sum(a1_eng, a2_eng):
    sc = GenericScalars()
    for eng, lam in ((a1_eng, (1,)), (a1_eng, (2,)), (a2_eng, (1, 0)),
                     (a2_eng, (0, 1))):
        mod = build_irrep(eng, lam)
        iota = hc_iota(t_element(mod))
        orient = resolve_orientation(mod, iota, sc)
        assert orient in (1, -1)
        assert ga_eq(character_sum(mod, sc, orient), iota)
        assert is_twist_invariant(eng.rs, iota, sc)


def test_projection_twist_invariant_specialized(a1_eng):
    ctx = build_context(a1_eng.rs, 4)
    alg = SpecializedAlgebra(a1_eng, ctx, "z")
    sc = RootScalars(ctx.field)
    mod = build_irrep(a1_eng, (2,))
    ce = t_element(mod, alg=alg)
    iota = hc_iota(ce)
    assert is_twist_invariant(a1_eng.rs, iota, sc)


def test_exact_rank():
    one = RF.one()
    q = RF.q_power(1)
    vs = [{(0, 0): one}, {(2, 0): q}, {(0, 0): one, (2, 0): q}]
    assert exact_rank(vs[:2]) == 2
    assert exact_rank(vs) == 2
    assert exact_rank([vs[0]]) == 1
    assert exact_rank([]) == 0


def test_projections_linearly_independent(a1_eng):
    iotas = [hc_iota(t_element(build_irrep(a1_eng, (n,))))
             for n in (1, 2, 3)]
    assert hc_basis_check(iotas)
    assert exact_rank(iotas) == 3
    # duplicating a projection must break independence
    assert not hc_basis_check(iotas + [iotas[0]])


def test_projection_support_is_doubled_antidominant_cone(a1_eng):
    """For sl2 the projection of t_L(n) is supported on -2n..2n in steps
    of 4 minus shifts, i.e. exactly the doubled module weights."""
    n = 3
    mod = build_irrep(a1_eng, (n,))
    iota = hc_iota(t_element(mod))
    orient = resolve_orientation(mod, iota, GenericScalars())
    want = {tuple(orient * 2 * v for v in mu) for mu in mod.weight_character()}
    assert set(iota) == want
