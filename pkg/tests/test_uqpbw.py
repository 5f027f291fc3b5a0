import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from qcenter.qscalar import RationalFunction as RF, gauss_factorial
from qcenter.rootlat import build_root_system
from qcenter.uqpbw import PBWEngine, TriangularElement


def engine(letter, rank, word=None):
    return PBWEngine(build_root_system(letter, rank), word)


@pytest.fixture(scope="module")
def a2():
    return engine("A", 2)


@pytest.fixture(scope="module")
def b2():
    return engine("B", 2)


# -- defining relations ------------------------------------------------------

@pytest.mark.parametrize("lt,rk", [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
def test_defining_relations_vanish(lt, rk):
    eng = engine(lt, rk)
    for rel in eng.defining_relations():
        assert eng.canon_of_free(rel).is_zero()


def test_serre_relations_both_sides(a2, b2):
    for eng in (a2, b2):
        for i in range(eng.rank):
            for j in range(eng.rank):
                if i == j:
                    continue
                for side in ("e", "f"):
                    assert eng.canon_of_free(
                        eng.serre_element(i, j, side)).is_zero()


# -- Hopf structure ----------------------------------------------------------

def _rand_free(eng, rng, maxlen=2):
    x = eng.free_unit()
    for _ in range(rng.randrange(1, maxlen + 1)):
        kind = rng.randrange(3)
        i = rng.randrange(eng.rank)
        if kind == 0:
            g = eng.e(i)
        elif kind == 1:
            g = eng.f(i)
        else:
            g = eng.k(tuple(rng.choice([-1, 0, 1])
                            for _ in range(eng.rank)))
        x = eng.multiply(x, g)
    return x


def test_counit_is_algebra_map(a2):
    rng = random.Random(9)
    for _ in range(30):
        x, y = _rand_free(a2, rng), _rand_free(a2, rng)
        lhs = a2.counit(a2.multiply(x, y))
        rhs = a2.counit(x) * a2.counit(y)
        assert (lhs - rhs).is_zero()


def _leg_free(eng, key):
    # coproduct legs are normalized to word-then-k order; FreeElement keys
    # put k before the e word, so commuting it across costs a q power
    from qcenter.uqpbw import FreeElement, _word_weightQ
    word, lam, side = key
    if side == "f":
        return FreeElement({(word, lam, ()): RF.one()})
    sc = RF.q_power(-eng.ip_weight_rootQ(lam, _word_weightQ(word, eng.rank)))
    return FreeElement({((), lam, word): sc})


def _leg_norm(key):
    word, lam, side = key
    return (word, lam, side if word else "k")


def _rand_one_sided(eng, rng, maxlen=3):
    """Random pure e-side or pure f-side element with k factors."""
    side = rng.randrange(2)
    x = eng.free_unit()
    for _ in range(rng.randrange(1, maxlen + 1)):
        if rng.randrange(3) == 2:
            g = eng.k(tuple(rng.choice([-1, 0, 1])
                            for _ in range(eng.rank)))
        else:
            i = rng.randrange(eng.rank)
            g = eng.e(i) if side == 0 else eng.f(i)
        x = eng.multiply(x, g)
    return x


def test_coproduct_counit_axiom(a2):
    """(counit (x) id) of the coproduct returns the element itself."""
    rng = random.Random(10)
    for _ in range(15):
        x = _rand_one_sided(a2, rng)
        acc = TriangularElement.zero()
        for (k1, k2), c in a2.coproduct(x).items():
            eps = a2.counit(_leg_free(a2, k1))
            if eps.is_zero():
                continue
            acc = acc + a2.canon_of_free(_leg_free(a2, k2)).scale(c * eps)
        assert (acc - a2.canon_of_free(x)).is_zero()


def test_coproduct_coassociative(a2):
    """Both ways of iterating the coproduct agree on the outer legs'
    canonical product with the middle leg collapsed by the counit."""
    rng = random.Random(16)
    for _ in range(10):
        x = _rand_one_sided(a2, rng, 2)
        # (id x eps x id) applied to (Delta x id)Delta and (id x Delta)Delta
        # both reduce to Delta itself; compare the resulting dictionaries.
        def reduced(first_left):
            out = {}
            for (k1, k2), c in a2.coproduct(x).items():
                inner = a2.coproduct(_leg_free(a2, k1 if first_left else k2))
                for (j1, j2), cc in inner.items():
                    mid = j2 if first_left else j1
                    eps = a2.counit(_leg_free(a2, mid))
                    if eps.is_zero():
                        continue
                    key = (j1, k2) if first_left else (k1, j2)
                    key = (_leg_norm(key[0]), _leg_norm(key[1]))
                    val = out.get(key, RF.zero()) + c * cc * eps
                    if val.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = val
            return out
        base = {}
        for (k1, k2), c in a2.coproduct(x).items():
            base[(_leg_norm(k1), _leg_norm(k2))] = c
        for variant in (reduced(True), reduced(False)):
            assert set(variant) == set(base)
            for k in base:
                assert (variant[k] - base[k]).is_zero()


def test_antipode_axiom_on_generators(a2):
    """m(S (x) id)Delta = unit * counit on e_i, f_i, k."""
    gens = [a2.e(0), a2.e(1), a2.f(0), a2.f(1), a2.k((1, 0)), a2.k((0, -1))]
    for g in gens:
        acc = TriangularElement.zero()
        for (k1, k2), c in a2.coproduct(g).items():
            part = a2.multiply(a2.antipode(_leg_free(a2, k1)),
                               _leg_free(a2, k2))
            acc = acc + a2.canon_of_free(part).scale(c)
        want = a2.canon_unit().scale(a2.counit(g))
        assert (acc - want).is_zero()


def test_braid_respects_products(b2):
    rng = random.Random(11)
    for _ in range(20):
        x, y = _rand_free(b2, rng, 1), _rand_free(b2, rng, 1)
        i = rng.randrange(b2.rank)
        lhs = b2.canon_of_free(b2.braid_apply(i, b2.multiply(x, y)))
        rhs = b2.canon_of_free(
            b2.multiply(b2.braid_apply(i, x), b2.braid_apply(i, y)))
        assert (lhs - rhs).is_zero()


def test_braid_inverse_roundtrip(a2, b2):
    rng = random.Random(12)
    for eng in (a2, b2):
        for _ in range(15):
            x = _rand_free(eng, rng, 1)
            i = rng.randrange(eng.rank)
            back = eng.braid_apply(i, eng.braid_apply(i, x, inverse=True))
            assert (eng.canon_of_free(back) - eng.canon_of_free(x)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1)),
                min_size=1, max_size=3),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1)),
                min_size=1, max_size=3))
def test_canonical_multiplication_associative_a1(xs, ys):
    eng = engine("A", 1)

    def elem(spec):
        x = eng.free_unit()
        for kind, i in spec:
            g = (eng.e(0), eng.f(0), eng.k((i or -1,)))[kind]
            x = eng.multiply(x, g)
        return eng.canon_of_free(x)

    a, b = elem(xs), elem(ys)
    c = eng.canon_e(0) + eng.canon_f(0)
    lhs = eng.canon_mul(eng.canon_mul(a, b), c)
    rhs = eng.canon_mul(a, eng.canon_mul(b, c))
    assert (lhs - rhs).is_zero()


# -- PBW pairing -------------------------------------------------------------

def test_pair_pbw_diagonal_value(a2):
    bound = 2
    vecs = [m for m in itertools.product(range(bound + 1), repeat=a2.n)
            if sum(m) <= bound]
    for m in vecs:
        for n in vecs:
            got = a2.pair_pbw(m, n)
            if m != n:
                assert got.is_zero()
                continue
            want = RF.one()
            for j, mj in enumerate(m):
                want = want * gauss_factorial(mj, a2.d_beta[j])
                want = want * (a2.pair_factor(j) ** mj).inverse()
                want = want * RF.q_power(a2.d_beta[j] * (mj * (mj - 1) // 2))
                if mj % 2:
                    want = want.scale(-1)
            assert (got - want).is_zero()


def test_pairing_kills_serre(a2, b2):
    """The pairing of a Serre element against every opposite word of the
    same weight vanishes."""
    for eng in (a2, b2):
        for i in range(eng.rank):
            for j in range(eng.rank):
                if i == j:
                    continue
                rel = eng.serre_element(i, j, "e")
                mult = 1 - eng.rs.cartan[i][j]
                letters = [i] * mult + [j]
                from qcenter.uqpbw import FreeElement
                for w in set(itertools.permutations(letters)):
                    y = FreeElement({(tuple(w), (0,) * eng.rank, ()):
                                     RF.one()})
                    assert eng.drinfeld_pair(rel, y).is_zero()


def test_kostant_exponents_count(a2, b2):
    """Number of PBW exponent vectors of a given weight equals the brute
    force count of ways to write the weight over positive roots."""
    for eng in (a2, b2):
        for gamma in itertools.product(range(3), repeat=eng.rank):
            exps = eng.kostant_exponents(tuple(gamma))
            brute = 0
            bound = sum(gamma)
            for m in itertools.product(range(bound + 1), repeat=eng.n):
                w = [0] * eng.rank
                for jj, mj in enumerate(m):
                    for t in range(eng.rank):
                        w[t] += mj * eng.betas[jj][t]
                if tuple(w) == tuple(gamma):
                    brute += 1
            assert len(exps) == brute
            assert len(set(exps)) == len(exps)


def test_canonicalize_roundtrip(a2):
    rng = random.Random(13)
    for _ in range(20):
        x = a2.canon_of_free(_rand_free(a2, rng))
        back = a2.canon_of_free(a2.free_of_canonical(x))
        assert (back - x).is_zero()


def test_word_choice_changes_basis_not_products():
    """Two reduced words give engines that agree on word-level products."""
    rs = build_root_system("A", 2)
    e1 = PBWEngine(rs, (0, 1, 0))
    e2 = PBWEngine(rs, (1, 0, 1))
    rng = random.Random(14)
    for _ in range(10):
        x, y = _rand_free(e1, rng), _rand_free(e1, rng)
        p1 = e1.canon_of_free(e1.multiply(x, y))
        p2 = e2.canon_of_free(e2.multiply(x, y))
        # compare through the word-free invariant: counit and pairing with
        # the other engine's canonical form mapped back to words
        back1 = e1.free_of_canonical(p1)
        back2 = e2.free_of_canonical(p2)
        assert (e1.canon_of_free(back2) - p1).is_zero()
        assert (e2.canon_of_free(back1) - p2).is_zero()
