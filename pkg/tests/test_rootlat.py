import itertools
import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from qcenter.rootlat import (
    IntegerLattice,
    build_root_system,
    congruence_sublattice,
    coroot_lattice,
    even_weight_sublattice,
    quotient,
    root_lattice,
    smith_normal_form,
    weight_lattice,
)

POSITIVE_ROOT_COUNTS = {
    ("A", 1): 1, ("A", 2): 3, ("A", 3): 6,
    ("B", 2): 4, ("B", 3): 9, ("C", 3): 9,
    ("D", 4): 12, ("G", 2): 6, ("F", 4): 24,
}

FUNDAMENTAL_GROUP_ORDERS = {
    ("A", 1): 2, ("A", 2): 3, ("A", 3): 4,
    ("B", 2): 2, ("B", 3): 2, ("C", 3): 2,
    ("D", 4): 4, ("G", 2): 1, ("F", 4): 1,
}


@pytest.mark.parametrize("key", sorted(POSITIVE_ROOT_COUNTS))
def test_positive_root_counts(key):
    letter, rank = key
    rs = build_root_system(letter, rank)
    assert len(rs.positive_roots) == POSITIVE_ROOT_COUNTS[key]


@pytest.mark.parametrize("key", sorted(FUNDAMENTAL_GROUP_ORDERS))
def test_weight_mod_root_lattice_order(key):
    letter, rank = key
    rs = build_root_system(letter, rank)
    q = quotient(weight_lattice(rs), root_lattice(rs))
    assert q.order == FUNDAMENTAL_GROUP_ORDERS[key]


@pytest.mark.parametrize("key", sorted(POSITIVE_ROOT_COUNTS))
def test_longest_word_enumerates_positive_roots(key):
    letter, rank = key
    rs = build_root_system(letter, rank)
    betas = rs.beta_sequence(rs.longest_word())
    assert len(betas) == len(rs.positive_roots)
    assert sorted(map(tuple, betas)) == sorted(map(tuple, rs.positive_roots))
    # every entry is positive
    for b in betas:
        assert all(v >= 0 for v in b)


def test_reflections_are_involutions():
    rng = random.Random(1)
    for letter, rank in (("A", 2), ("B", 2), ("G", 2), ("C", 3)):
        rs = build_root_system(letter, rank)
        for _ in range(20):
            lam = tuple(rng.randrange(-3, 4) for _ in range(rank))
            for i in range(rank):
                assert rs.reflect_weight(i, rs.reflect_weight(i, lam)) == \
                    tuple(lam)


def test_inner_product_weyl_invariance():
    rng = random.Random(2)
    for letter, rank in (("A", 2), ("B", 2), ("G", 2)):
        rs = build_root_system(letter, rank)
        for _ in range(20):
            lam = tuple(rng.randrange(-3, 4) for _ in range(rank))
            mu = tuple(rng.randrange(-3, 4) for _ in range(rank))
            for i in range(rank):
                assert rs.ip_weight_weight(lam, mu) == rs.ip_weight_weight(
                    rs.reflect_weight(i, lam), rs.reflect_weight(i, mu))


def test_pairing_against_coroots_is_cartan():
    for letter, rank in (("A", 2), ("B", 2), ("G", 2), ("B", 3)):
        rs = build_root_system(letter, rank)
        for i in range(rank):
            alpha = tuple(1 if t == i else 0 for t in range(rank))
            idx = rs.positive_root_index(alpha)
            lam = rs.root_to_weight_coords(alpha)
            # (alpha_i, alpha_j^vee) = cartan[j][i]
            for j in range(rank):
                jidx = rs.positive_root_index(
                    tuple(1 if t == j else 0 for t in range(rank)))
                val = rs.pair_weight_coroot(lam, jidx)
                assert val == rs.cartan[j][i]


def test_smith_normal_form_against_sympy():
    rng = random.Random(4)
    for _ in range(25):
        n, m = rng.randrange(1, 5), rng.randrange(1, 5)
        mat = [[rng.randrange(-6, 7) for _ in range(m)] for _ in range(n)]
        if all(all(v == 0 for v in row) for row in mat):
            continue
        divisors, U, V = smith_normal_form(mat)
        # U * mat * V diagonal with the reported divisors
        prod = (sympy.Matrix(U) * sympy.Matrix(mat) * sympy.Matrix(V))
        for i in range(n):
            for j in range(m):
                if i == j and i < len(divisors):
                    assert abs(prod[i, j]) == abs(divisors[i])
                else:
                    assert prod[i, j] == 0
        assert abs(sympy.Matrix(U).det()) == 1
        assert abs(sympy.Matrix(V).det()) == 1
        ref = [abs(x) for x in sympy_snf(sympy.Matrix(mat)).diagonal()
               if x != 0]
        assert [abs(d) for d in divisors] == ref
        for a, b in zip(divisors, divisors[1:]):
            assert b % a == 0


def test_congruence_sublattice_membership_bruteforce():
    conds = [(1, 2), (3, 1)]
    moduli = [3, 4]
    lat = congruence_sublattice(conds, moduli, 2)
    for x in range(-6, 7):
        for y in range(-6, 7):
            member = (x + 2 * y) % 3 == 0 and (3 * x + y) % 4 == 0
            assert lat.contains((x, y)) == member


def test_lattice_intersection_and_quotient():
    a = IntegerLattice.from_rows([[2, 0], [0, 3]], 2)
    b = IntegerLattice.from_rows([[3, 0], [0, 2]], 2)
    inter = a.intersection(b)
    for v in ((6, 0), (0, 6)):
        assert inter.contains(v)
    assert not inter.contains((2, 0))
    assert not inter.contains((3, 0))
    q = quotient(a, inter)
    assert q.order == 6
    keys = {q.key((i, j)) for i in range(6) for j in range(6)}
    assert len(keys) == 6


def _f2_rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] % 2), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] % 2:
                rows[r] = [(a + b) % 2 for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def test_even_weight_sublattice_index():
    # index |P/P0| = 2^rank of the parity-condition matrix over F2
    for letter, rank in (("A", 1), ("A", 2), ("B", 2), ("G", 2), ("C", 3)):
        rs = build_root_system(letter, rank)
        conds = [[(rs.d[i] * g[i]) % 2 for i in range(rank)]
                 for g in rs.positive_roots]
        order = 2 ** _f2_rank(conds)
        q = quotient(weight_lattice(rs), even_weight_sublattice(rs))
        assert q.order == order
        # P0 members pair evenly with every positive root
        lat = even_weight_sublattice(rs)
        for row in lat.basis:
            vec = tuple(int(v) for v in row)
            for gamma in rs.positive_roots:
                assert rs.ip_weight_rootQ(vec, tuple(gamma)) % 2 == 0


def test_coroot_lattice_contains_coroots():
    for letter, rank in (("B", 2), ("G", 2), ("C", 3)):
        rs = build_root_system(letter, rank)
        lat = coroot_lattice(rs)
        for idx in range(len(rs.positive_roots)):
            # coroot coordinates are integral in the simple coroot basis
            coords = rs.coroot_coordinates(idx)
            assert all(Fraction(v).denominator == 1 for v in coords)
