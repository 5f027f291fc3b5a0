"""Root systems, reduced words for the longest Weyl element, and the
integer-lattice toolkit (Smith normal form, congruence sublattices,
finite quotients) used by the weight-lattice bookkeeping.

Conventions: short roots have squared length 2, weights are stored in
fundamental-weight coordinates, roots also carry simple-root coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------

def _cartan_matrix(letter: str, rank: int) -> List[List[int]]:
    A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    if letter == "A":
        for i in range(rank - 1):
            edge(i, i + 1)
    elif letter == "B":
        if rank < 2:
            raise ValueError("type B requires rank >= 2")
        for i in range(rank - 2):
            edge(i, i + 1)
        # alpha_{n-1} long, alpha_n short
        edge(rank - 2, rank - 1, -1, -2)
    elif letter == "C":
        if rank < 2:
            raise ValueError("type C requires rank >= 2")
        for i in range(rank - 2):
            edge(i, i + 1)
        # alpha_{n-1} short, alpha_n long
        edge(rank - 2, rank - 1, -2, -1)
    elif letter == "D":
        if rank < 3:
            raise ValueError("type D requires rank >= 3")
        for i in range(rank - 3):
            edge(i, i + 1)
        edge(rank - 3, rank - 2)
        edge(rank - 3, rank - 1)
    elif letter == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E requires rank 6, 7 or 8")
        # Bourbaki numbering: node 2 attaches to node 4
        chain = [1, 3, 4, 5, 6, 7, 8][: rank - 1]
        for a, b in zip(chain, chain[1:]):
            edge(a - 1, b - 1)
        edge(2 - 1, 4 - 1)
    elif letter == "F":
        if rank != 4:
            raise ValueError("type F requires rank 4")
        edge(0, 1)
        edge(1, 2, -1, -2)
        edge(2, 3)
    elif letter == "G":
        if rank != 2:
            raise ValueError("type G requires rank 2")
        edge(0, 1, -1, -3)
    else:
        raise ValueError(f"unknown type {letter!r}")
    return A


def symmetrizers(cartan: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Minimal positive integers d_i with d_i a_ij = d_j a_ji."""
    n = len(cartan)
    d = [0] * n
    for start in range(n):
        if d[start]:
            continue
        d[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cartan[i][j] != 0:
                    # d_j = d_i * a_ij / a_ji
                    val = Fraction(d[i] * cartan[i][j], cartan[j][i])
                    if d[j] == 0:
                        if val.denominator != 1:
                            d = [Fraction(x) for x in d]
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise ValueError("Cartan matrix is not symmetrizable")
    mult = lcm(*[Fraction(x).denominator for x in d])
    d = [int(Fraction(x) * mult) for x in d]
    g = 0
    for x in d:
        g = gcd(g, x)
    return tuple(x // g for x in d)


@dataclass(frozen=True)
class RootSystem:
    """Finite root system presented by a symmetrizable Cartan matrix.

    positive_roots holds simple-root coordinate tuples; d gives the
    symmetrizers (1 for short simple roots under the (alpha,alpha)=2
    normalization).
    """

    cartan: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    letter: str = "?"
    positive_roots: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def n_pos(self) -> int:
        return len(self.positive_roots)

    # -- root geometry -------------------------------------------------------

    def d_alpha(self, idx: int) -> int:
        """Half the squared length of the idx-th positive root."""
        c = self.positive_roots[idx]
        val = sum(
            c[i] * c[j] * self.d[i] * self.cartan[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
            if c[i] and c[j]
        )
        assert val % 2 == 0
        return val // 2

    def root_pairing_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """(alpha_i, alpha_j) = d_i a_ij."""
        return tuple(
            tuple(self.d[i] * self.cartan[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def ip_rootQ_rootQ(self, a: Sequence[int], b: Sequence[int]) -> int:
        """(alpha, beta) for simple-root coordinate vectors."""
        return sum(
            a[i] * b[j] * self.d[i] * self.cartan[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
            if a[i] and b[j]
        )

    def ip_weight_rootQ(self, lam: Sequence[int], gamma: Sequence[int]) -> int:
        """(lambda, gamma) for lambda in fundamental-weight coordinates and
        gamma in simple-root coordinates: (varpi_i, alpha_j) = d_j delta_ij."""
        return sum(self.d[j] * lam[j] * gamma[j] for j in range(self.rank) if gamma[j])

    def pair_weight_coroot(self, lam: Sequence, idx: int) -> Fraction:
        """(lambda, beta^vee) for the idx-th positive root."""
        c = self.positive_roots[idx]
        da = self.d_alpha(idx)
        return Fraction(self.ip_weight_rootQ(lam, c), da)

    def coroot_coordinates(self, idx: int) -> Tuple[int, ...]:
        """Coordinates of beta^vee in the simple-coroot basis."""
        c = self.positive_roots[idx]
        da = self.d_alpha(idx)
        out = []
        for j in range(self.rank):
            v = Fraction(c[j] * self.d[j], da)
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    def root_to_weight_coords(self, gamma: Sequence[int]) -> Tuple[int, ...]:
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(
            sum(self.cartan[i][j] * gamma[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def fundamental_weight_gram(self) -> List[List[Fraction]]:
        """(varpi_i, varpi_j) as a rational matrix."""
        n = self.rank
        inv = _rational_inverse([[Fraction(v) for v in row] for row in self.cartan])
        return [[inv[j][i] * self.d[j] for j in range(n)] for i in range(n)]

    def ip_weight_weight(self, lam: Sequence, mu: Sequence) -> Fraction:
        g = self.fundamental_weight_gram()
        return sum(
            Fraction(lam[i]) * Fraction(mu[j]) * g[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    # -- Weyl group ----------------------------------------------------------

    def reflect_weight(self, i: int, lam: Sequence[int]) -> Tuple[int, ...]:
        """s_i acting on fundamental-weight coordinates."""
        mi = lam[i]
        return tuple(
            lam[k] - mi * self.cartan[k][i] for k in range(self.rank)
        )

    def reflect_rootQ(self, i: int, gamma: Sequence[int]) -> Tuple[int, ...]:
        """s_i acting on simple-root coordinates."""
        pair = sum(self.cartan[i][j] * gamma[j] for j in range(self.rank))
        out = list(gamma)
        out[i] -= pair
        return tuple(out)

    def rho(self) -> Tuple[int, ...]:
        return tuple(1 for _ in range(self.rank))

    def rho_tilde(self) -> Tuple[Fraction, ...]:
        """Half the sum of d_alpha alpha^vee over positive roots, in
        fundamental-weight coordinates."""
        n = self.rank
        acc = [Fraction(0)] * n
        for idx in range(self.n_pos):
            c = self.positive_roots[idx]
            # d_alpha * alpha^vee = alpha
            wc = self.root_to_weight_coords(c)
            for k in range(n):
                acc[k] += Fraction(wc[k], 2)
        return tuple(acc)

    def longest_word(self) -> Tuple[int, ...]:
        """Deterministic reduced word for the longest Weyl element.

        Repeatedly applies the smallest simple reflection that lowers the
        current image of rho, starting from rho.
        """
        lam = list(self.rho())
        word = []
        while True:
            for i in range(self.rank):
                if lam[i] > 0:
                    lam = list(self.reflect_weight(i, lam))
                    word.append(i)
                    break
            else:
                break
        assert all(v == -1 for v in lam)
        assert len(word) == self.n_pos
        return tuple(word)

    def beta_sequence(self, word: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
        """beta_j = s_{i_1} ... s_{i_{j-1}} (alpha_{i_j}), simple-root coords."""
        betas = []
        for j, ij in enumerate(word):
            gamma = tuple(1 if k == ij else 0 for k in range(self.rank))
            for p in range(j - 1, -1, -1):
                gamma = self.reflect_rootQ(word[p], gamma)
            betas.append(gamma)
        return tuple(betas)

    def validate_word(self, word: Sequence[int]) -> None:
        """Check a user-supplied word is a reduced expression for the
        longest element."""
        if len(word) != self.n_pos:
            raise ValueError(
                f"word has length {len(word)}, expected {self.n_pos}"
            )
        if any(not (0 <= i < self.rank) for i in word):
            raise ValueError("word letters must be simple-root indices")
        betas = self.beta_sequence(word)
        seen = set(betas)
        if len(seen) != self.n_pos or seen != set(self.positive_roots):
            raise ValueError("word is not a reduced expression for w0")

    def positive_root_index(self, gamma: Sequence[int]) -> int:
        return self.positive_roots.index(tuple(gamma))


def _positive_roots(cartan, d) -> Tuple[Tuple[int, ...], ...]:
    rank = len(cartan)
    roots = {tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)}
    frontier = set(roots)
    while frontier:
        new = set()
        for gamma in frontier:
            for i in range(rank):
                pair = sum(cartan[i][j] * gamma[j] for j in range(rank))
                out = list(gamma)
                out[i] -= pair
                out = tuple(out)
                if all(v >= 0 for v in out) and any(out) and out not in roots:
                    new.add(out)
        roots |= new
        frontier = new
    return tuple(sorted(roots, key=lambda g: (sum(g), g)))


def build_root_system(letter: str, rank: int, max_rank: int = 4) -> RootSystem:
    """Construct an irreducible root system by type and rank.

    The rank cap is a runtime guard only; G2 and F4 are always allowed.
    """
    letter = letter.upper()
    if letter in ("G", "F"):
        pass
    elif rank > max_rank:
        raise ValueError(
            f"rank {rank} exceeds the configured cap {max_rank}"
        )
    if rank < 1:
        raise ValueError("rank must be positive")
    cartan = _cartan_matrix(letter, rank)
    d = symmetrizers(cartan)
    return from_cartan(cartan, d, letter)


def from_cartan(cartan, d=None, letter="?") -> RootSystem:
    cartan = tuple(tuple(int(v) for v in row) for row in cartan)
    if d is None:
        d = symmetrizers(cartan)
    d = tuple(int(v) for v in d)
    pos = _positive_roots(cartan, d)
    return RootSystem(cartan=cartan, d=d, letter=letter, positive_roots=pos)


# ---------------------------------------------------------------------------
# rational linear algebra helpers
# ---------------------------------------------------------------------------

def _rational_inverse(m: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    a = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _rational_solve(m: List[List[Fraction]], rhs: List[Fraction]):
    """Solve a square nonsingular rational system."""
    inv = _rational_inverse(m)
    return [sum(inv[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rhs))]


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

def smith_normal_form(mat: Sequence[Sequence[int]]):
    """Return (divisors, U, V) with U * mat * V diagonal over Z.

    U and V are unimodular; divisors are the nonzero elementary divisors
    in divisibility order.
    """
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, f):
        a[i] = [x + f * y for x, y in zip(a[i], a[j])]
        U[i] = [x + f * y for x, y in zip(U[i], U[j])]

    def add_col(i, j, f):
        for row in a:
            row[i] += f * row[j]
        for row in V:
            row[i] += f * row[j]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j]:
                    if piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    f = -(a[i][t] // a[t][t])
                    add_row(i, t, f)
                    if a[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    f = -(a[t][j] // a[t][t])
                    add_col(j, t, f)
                    if a[t][j]:
                        swap_cols(j, t)
                        dirty = True
        t += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            if a[i + 1][i + 1] % a[i][i] != 0:
                add_col(i, i + 1, 1)
                # re-clear the 2x2 block
                f = -(a[i + 1][i] // a[i][i]) if a[i][i] else 0
                while a[i + 1][i]:
                    f = -(a[i + 1][i] // a[i][i])
                    add_row(i + 1, i, f)
                    if a[i + 1][i]:
                        swap_rows(i, i + 1)
                while a[i][i + 1]:
                    f = -(a[i][i + 1] // a[i][i])
                    add_col(i + 1, i, f)
                    if a[i][i + 1]:
                        swap_cols(i, i + 1)
                changed = True
    divisors = [abs(a[i][i]) for i in range(t) if a[i][i]]
    return divisors, U, V


def integer_kernel(mat: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Basis of the integer kernel {x : mat @ x = 0}."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    divisors, U, V = smith_normal_form(mat)
    rank = len(divisors)
    out = []
    for j in range(rank, cols):
        out.append(tuple(V[i][j] for i in range(cols)))
    return out


# ---------------------------------------------------------------------------
# rational lattices in weight space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerLattice:
    """Full- or partial-rank lattice in weight space.

    Basis rows are rational vectors in fundamental-weight coordinates.
    """

    basis: Tuple[Tuple[Fraction, ...], ...]
    ambient: int

    @staticmethod
    def from_rows(rows, ambient=None) -> "IntegerLattice":
        rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if ambient is None:
            ambient = len(rows[0]) if rows else 0
        return IntegerLattice(rows, ambient)

    @staticmethod
    def standard(n: int) -> "IntegerLattice":
        return IntegerLattice.from_rows(
            [[1 if j == i else 0 for j in range(n)] for i in range(n)], n
        )

    @staticmethod
    def zero(n: int) -> "IntegerLattice":
        return IntegerLattice((), n)

    @property
    def lattice_rank(self) -> int:
        return len(self.basis)

    def scaled(self, f) -> "IntegerLattice":
        f = Fraction(f)
        return IntegerLattice.from_rows(
            [[f * v for v in row] for row in self.basis], self.ambient
        )

    def coordinates_of(self, vec) -> Tuple[Fraction, ...] | None:
        """Rational coordinates of vec in this basis, or None."""
        if not self.basis:
            return () if all(Fraction(v) == 0 for v in vec) else None
        # least-squares-free exact solve: use a maximal invertible column set
        cols = _independent_columns(self.basis)
        m = [[self.basis[i][c] for i in range(len(self.basis))] for c in cols]
        rhs = [Fraction(vec[c]) for c in cols]
        sol = _rational_solve(m, rhs)
        # verify on all coordinates
        for j in range(self.ambient):
            if sum(sol[i] * self.basis[i][j] for i in range(len(sol))) != Fraction(vec[j]):
                return None
        return tuple(sol)

    def contains(self, vec) -> bool:
        sol = self.coordinates_of(vec)
        return sol is not None and all(v.denominator == 1 for v in sol)

    def intersection(self, other: "IntegerLattice") -> "IntegerLattice":
        """Intersection of two lattices in the same ambient space."""
        if not self.basis or not other.basis:
            return IntegerLattice.zero(self.ambient)
        k1, k2 = len(self.basis), len(other.basis)
        # integer solutions of x*B1 - y*B2 = 0 after clearing denominators
        den = 1
        for row in self.basis + other.basis:
            for v in row:
                den = lcm(den, v.denominator)
        stacked = []
        for j in range(self.ambient):
            stacked.append(
                [int(self.basis[i][j] * den) for i in range(k1)]
                + [int(-other.basis[i][j] * den) for i in range(k2)]
            )
        kern = integer_kernel(stacked)
        rows = []
        for vec in kern:
            row = tuple(
                sum(Fraction(vec[i]) * self.basis[i][j] for i in range(k1))
                for j in range(self.ambient)
            )
            rows.append(row)
        rows = _lattice_reduce(rows, self.ambient)
        return IntegerLattice.from_rows(rows, self.ambient)


def _independent_columns(rows) -> List[int]:
    work = [list(r) for r in rows]
    n = len(work[0])
    cols = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][c]
        work[r] = [v * inv for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [v - f * w for v, w in zip(work[i], work[r])]
        cols.append(c)
        r += 1
        if r == len(work):
            break
    return cols


def _lattice_reduce(rows, ambient):
    """Reduce a generating set of a lattice to a basis via HNF over Z."""
    rows = [r for r in rows if any(v != 0 for v in r)]
    if not rows:
        return ()
    den = 1
    for row in rows:
        for v in row:
            den = lcm(den, v.denominator)
    mat = [[int(v * den) for v in row] for row in rows]
    # use SNF machinery: basis of the row space lattice = U^{-1}-independent...
    # simplest: Hermite-style elimination
    mat = _hermite(mat)
    return tuple(tuple(Fraction(v, den) for v in row) for row in mat)


def _hermite(mat):
    """Row Hermite normal form (nonzero rows) over Z."""
    mat = [list(r) for r in mat]
    rows = len(mat)
    cols = len(mat[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if mat[i][c]:
                if piv is None or abs(mat[i][c]) < abs(mat[piv][c]):
                    piv = i
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        dirty = True
        while dirty:
            dirty = False
            for i in range(r + 1, rows):
                if mat[i][c]:
                    f = mat[i][c] // mat[r][c]
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
                    if mat[i][c]:
                        mat[r], mat[i] = mat[i], mat[r]
                        dirty = True
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            f = mat[i][c] // mat[r][c]
            if f:
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == rows:
            break
    return [row for row in mat[:r] if any(row)]


@dataclass
class FiniteQuotient:
    """Finite abelian quotient L1/L2 with a coset-key map."""

    divisors: Tuple[int, ...]
    order: int
    _coord_map: object = None   # vec (in L1 coords) -> key tuple

    def key(self, coords: Sequence[int]) -> Tuple[int, ...]:
        return self._coord_map(coords)


def quotient(big: IntegerLattice, small: IntegerLattice) -> FiniteQuotient:
    """Finite quotient big/small; small must be finite-index in big."""
    if small.lattice_rank == 0:
        if big.lattice_rank == 0:
            return FiniteQuotient((), 1, lambda c: ())
        raise ValueError("quotient is infinite")
    if big.lattice_rank != small.lattice_rank:
        raise ValueError("quotient is infinite")
    coord_rows = []
    for row in small.basis:
        sol = big.coordinates_of(row)
        if sol is None or any(v.denominator != 1 for v in sol):
            raise ValueError("second lattice is not contained in the first")
        coord_rows.append([int(v) for v in sol])
    divisors, U, V = smith_normal_form(coord_rows)
    n = big.lattice_rank
    if len(divisors) != n:
        raise ValueError("quotient is infinite")
    nontrivial = tuple(d for d in divisors if d > 1)
    order = 1
    for dv in divisors:
        order *= dv

    def keyfun(coords, V=V, divisors=divisors):
        y = [
            sum(coords[i] * V[i][j] for i in range(n)) % divisors[j]
            for j in range(n)
        ]
        return tuple(y[j] for j in range(n) if divisors[j] > 1)

    return FiniteQuotient(nontrivial, order, keyfun)


def congruence_sublattice(conds, moduli, ambient) -> IntegerLattice:
    """Lattice {x in Z^ambient : conds[k] . x = 0 mod moduli[k]}."""
    conds = [list(map(int, c)) for c in conds]
    moduli = [int(m) for m in moduli]
    k = len(conds)
    if k == 0:
        return IntegerLattice.standard(ambient)
    stacked = []
    for row_idx in range(k):
        row = conds[row_idx] + [
            -moduli[i] if i == row_idx else 0 for i in range(k)
        ]
        stacked.append(row)
    kern = integer_kernel(stacked)
    rows = [vec[:ambient] for vec in kern]
    rows = _lattice_reduce([tuple(Fraction(v) for v in r) for r in rows], ambient)
    return IntegerLattice.from_rows(rows, ambient)


# ---------------------------------------------------------------------------
# the standard lattices attached to a root system at a root of unity
# ---------------------------------------------------------------------------

def weight_lattice(rs: RootSystem) -> IntegerLattice:
    return IntegerLattice.standard(rs.rank)


def root_lattice(rs: RootSystem) -> IntegerLattice:
    rows = [rs.root_to_weight_coords(tuple(1 if j == i else 0 for j in range(rs.rank)))
            for i in range(rs.rank)]
    return IntegerLattice.from_rows(rows, rs.rank)


def coroot_lattice(rs: RootSystem) -> IntegerLattice:
    """Coroot lattice; alpha_i^vee = alpha_i / d_i in the ambient space."""
    rows = []
    for i in range(rs.rank):
        wc = rs.root_to_weight_coords(tuple(1 if j == i else 0 for j in range(rs.rank)))
        rows.append([Fraction(v, rs.d[i]) for v in wc])
    return IntegerLattice.from_rows(rows, rs.rank)


def even_weight_sublattice(rs: RootSystem) -> IntegerLattice:
    """P0 = {lambda : d_i (lambda, alpha_i^vee) in 2Z for all i}."""
    conds = [[rs.d[i] if j == i else 0 for j in range(rs.rank)] for i in range(rs.rank)]
    return congruence_sublattice(conds, [2] * rs.rank, rs.rank)
