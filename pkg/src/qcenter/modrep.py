"""Finite-dimensional irreducible highest-weight modules as explicit matrices.

A module is realized as a Verma quotient: basis vectors are images of
f-side PBW monomials applied to a highest-weight vector, one spanning set
per weight space, cut down by the radical of the contravariant form.  All
matrix entries are exact rational functions in q; specialization at a root
of unity is entrywise and pole-checked.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .qscalar import (
    RationalFunction as RF,
    gauss_factorial,
    specialize_scalar,
    SpecializationPole,
)
from .uqpbw import PBWEngine, TriangularElement, FreeElement, _solve_rf
from .rootlat import RootSystem, root_lattice


def weyl_dimension(rs: RootSystem, highest: Sequence[int]) -> int:
    """Product formula for the dimension of the irreducible with a given
    dominant highest weight (fundamental-weight coordinates)."""
    lam = tuple(highest)
    rho = rs.rho()
    num = Fraction(1)
    for idx, beta in enumerate(rs.positive_roots):
        betaW = rs.root_to_weight_coords(beta)
        a = rs.ip_weight_weight(tuple(l + r for l, r in zip(lam, rho)), betaW)
        b = rs.ip_weight_weight(rho, betaW)
        num *= Fraction(a, 1) / Fraction(b, 1)
    assert num.denominator == 1
    return int(num)


def _dominant_conjugate(rs: RootSystem, mu: Sequence[int]) -> Tuple[int, ...]:
    cur = tuple(mu)
    while True:
        for i in range(rs.rank):
            if cur[i] < 0:
                cur = rs.reflect_weight(i, cur)
                break
        else:
            return cur


def _w0_weight(rs: RootSystem, lam: Sequence[int]) -> Tuple[int, ...]:
    cur = tuple(lam)
    for i in reversed(rs.longest_word()):
        cur = rs.reflect_weight(i, cur)
    return cur


@dataclass
class WeightSpace:
    """One weight space of the realized module."""

    gammaQ: Tuple[int, ...]          # lam_bar - weight, in simple-root coords
    weight: Tuple[int, ...]          # fundamental-weight coords
    monos: Tuple[Tuple[int, ...], ...]   # Verma spanning monomial exponents
    pivots: Tuple[int, ...]          # positions into monos forming a basis
    reduce_rows: List[List[RF]]      # pivots x monos reduction matrix


class ModuleRealization:
    """Irreducible module with exact matrix action of canonical elements."""

    def __init__(self, engine: PBWEngine, highest: Sequence[int], depth=None):
        rs = engine.rs
        if any(v < 0 for v in highest):
            raise ValueError("highest weight must be dominant")
        self.engine = engine
        self.rs = rs
        self.highest = tuple(int(v) for v in highest)
        self.tag = "generic"
        self._rootlat = root_lattice(rs)
        lowest = _w0_weight(rs, self.highest)
        span = self._weight_to_rootQ(
            tuple(a - b for a, b in zip(self.highest, lowest)))
        need = sum(span)
        if depth is None:
            depth = need
        elif depth < need:
            raise ValueError(
                f"depth {depth} insufficient: weight span needs {need}")
        self.depth = depth
        self._sigma_cache: Dict[Tuple[int, ...], TriangularElement] = {}
        self.spaces: Dict[Tuple[int, ...], WeightSpace] = {}
        self._build_spaces()
        self.basis: List[Tuple[Tuple[int, ...], int]] = []
        for gammaQ in sorted(self.spaces, key=lambda g: (sum(g), g)):
            sp = self.spaces[gammaQ]
            for p in range(len(sp.pivots)):
                self.basis.append((gammaQ, p))
        self.index = {key: i for i, key in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._op_cache: Dict[tuple, list] = {}

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    def _weight_to_rootQ(self, lamW) -> Tuple[int, ...]:
        sol = self._rootlat.coordinates_of(lamW)
        if sol is None or any(v.denominator != 1 for v in sol):
            raise ValueError("weight not in the root-lattice translate")
        return tuple(int(v) for v in sol)

    def _is_module_weight(self, gammaQ) -> bool:
        mu = tuple(
            h - sum(gammaQ[i] * self.rs.root_to_weight_coords(
                tuple(1 if t == i else 0 for t in range(self.rs.rank)))[j]
                for i in range(self.rs.rank))
            for j, h in enumerate(self.highest))
        dom = _dominant_conjugate(self.rs, mu)
        diff = tuple(a - b for a, b in zip(self.highest, dom))
        sol = self._rootlat.coordinates_of(diff)
        return sol is not None and all(
            v.denominator == 1 and v >= 0 for v in sol)

    def _build_spaces(self):
        rank = self.rs.rank
        zero = (0,) * rank
        seen = {zero}
        frontier = [zero]
        support = [zero]
        while frontier:
            nxt = []
            for g in frontier:
                for i in range(rank):
                    h = tuple(v + (1 if t == i else 0) for t, v in enumerate(g))
                    if h in seen or sum(h) > self.depth:
                        continue
                    seen.add(h)
                    if self._is_module_weight(h):
                        nxt.append(h)
                        support.append(h)
            frontier = nxt
        for gammaQ in support:
            self.spaces[gammaQ] = self._build_space(gammaQ)

    def _mono_elem(self, n) -> TriangularElement:
        zeroR = (0,) * self.rs.rank
        zeroN = (0,) * self.engine.n
        return TriangularElement({(n, zeroR, zeroN): RF.one()})

    def _sigma_elem(self, n) -> TriangularElement:
        cached = self._sigma_cache.get(n)
        if cached is not None:
            return cached
        zeroR = (0,) * self.rs.rank
        free = FreeElement({(w, zeroR, ()): c
                            for w, c in self.engine.f_pbw_words(n).items()})
        out = self.engine.canonicalize(self.engine.sigma_transpose(free))
        self._sigma_cache[n] = out
        return out

    def _hw_eval(self, x: TriangularElement) -> RF:
        """Value of the U^0 component on the highest-weight line."""
        total = RF.zero()
        for (nf, lam, me), c in x.terms.items():
            if any(nf) or any(me):
                continue
            exp = self.rs.ip_weight_weight(self.highest, lam)
            if exp.denominator != 1:
                raise ValueError("non-integral pairing exponent")
            total = total + c * RF.q_power(int(exp))
        return total

    def _build_space(self, gammaQ) -> WeightSpace:
        eng = self.engine
        monos = eng.kostant_exponents(gammaQ)
        k = len(monos)
        gram = [[None] * k for _ in range(k)]
        for a in range(k):
            sig = self._sigma_elem(monos[a])
            for b in range(k):
                gram[a][b] = self._hw_eval(
                    eng.canon_mul(sig, self._mono_elem(monos[b])))
        pivots: List[int] = []
        for c in range(k):
            trial = pivots + [c]
            if self._principal_nonsingular(gram, trial):
                pivots.append(c)
        # reduction matrix: coordinates of every monomial image in the basis
        reduce_rows = [[RF.zero()] * k for _ in range(len(pivots))]
        for c in range(k):
            rows = [[gram[p][pp] for pp in pivots] for p in pivots]
            rhs = [gram[p][c] for p in pivots]
            sol = _solve_rf(rows, rhs)
            if sol is None:
                raise ArithmeticError("pivot Gram block unexpectedly singular")
            for r in range(len(pivots)):
                reduce_rows[r][c] = sol[r]
        weight = tuple(
            h - sum(gammaQ[i] * self.rs.root_to_weight_coords(
                tuple(1 if t == i else 0 for t in range(self.rs.rank)))[j]
                for i in range(self.rs.rank))
            for j, h in enumerate(self.highest))
        return WeightSpace(gammaQ, weight, monos, tuple(pivots), reduce_rows)

    @staticmethod
    def _principal_nonsingular(gram, idxs) -> bool:
        n = len(idxs)
        work = [[gram[idxs[r]][idxs[c]] for c in range(n)] for r in range(n)]
        for c in range(n):
            piv = None
            for r in range(c, n):
                if not work[r][c].is_zero():
                    piv = r
                    break
            if piv is None:
                return False
            work[c], work[piv] = work[piv], work[c]
            inv = work[c][c].inverse()
            for r in range(c + 1, n):
                if work[r][c].is_zero():
                    continue
                f = work[r][c] * inv
                work[r] = [v - f * w for v, w in zip(work[r], work[c])]
        return True

    # ------------------------------------------------------------------
    # action
    # ------------------------------------------------------------------

    def weight_of(self, idx: int) -> Tuple[int, ...]:
        gammaQ, _ = self.basis[idx]
        return self.spaces[gammaQ].weight

    def act_on_basis(self, x: TriangularElement, idx: int) -> Dict[int, RF]:
        """Image of the idx-th basis vector, as basis coordinates."""
        gammaQ, p = self.basis[idx]
        sp = self.spaces[gammaQ]
        mono = sp.monos[sp.pivots[p]]
        prod = self.engine.canon_mul(x, self._mono_elem(mono))
        comps: Dict[Tuple[int, ...], Dict[Tuple[int, ...], RF]] = {}
        for (nf, lam, me), c in prod.terms.items():
            if any(me):
                continue
            exp = self.rs.ip_weight_weight(self.highest, lam)
            if exp.denominator != 1:
                raise ValueError("non-integral pairing exponent")
            val = c * RF.q_power(int(exp))
            g = self.engine.exp_weightQ(nf)
            comps.setdefault(g, {})
            w = comps[g].get(nf)
            w = val if w is None else w + val
            comps[g][nf] = w
        out: Dict[int, RF] = {}
        for g, vec in comps.items():
            sp2 = self.spaces.get(g)
            if sp2 is None:
                continue
            pos = {m: t for t, m in enumerate(sp2.monos)}
            col = [RF.zero()] * len(sp2.monos)
            for m, v in vec.items():
                col[pos[m]] = v
            for r in range(len(sp2.pivots)):
                total = RF.zero()
                for t in range(len(col)):
                    if not col[t].is_zero():
                        total = total + sp2.reduce_rows[r][t] * col[t]
                if not total.is_zero():
                    out[self.index[(g, r)]] = total
        return out

    def matrix_of(self, x: TriangularElement) -> List[Dict[int, RF]]:
        """Columns (one per basis vector) of the action matrix."""
        return [self.act_on_basis(x, idx) for idx in range(self.dim)]

    # -- standard operators ----------------------------------------------

    def _canon_k(self, nu) -> TriangularElement:
        return self.engine.canon_k(tuple(nu))

    def e_op(self, i: int):
        return self._op("e", i, lambda: self.engine.canon_e(i))

    def f_op(self, i: int):
        return self._op("f", i, lambda: self.engine.canon_f(i))

    def k_op(self, nu):
        nu = tuple(nu)
        return self._op("k", nu, lambda: self._canon_k(nu))

    def f_div_op(self, j: int, n: int):
        return self._op("fdiv", (j, n), lambda: divided_power(self.engine, "f", j, n))

    def e_div_op(self, j: int, n: int):
        return self._op("ediv", (j, n), lambda: divided_power(self.engine, "e", j, n))

    def _op(self, kind, key, build):
        full = (kind, key)
        if full not in self._op_cache:
            self._op_cache[full] = self.matrix_of(build())
        return self._op_cache[full]

    def weight_character(self) -> Dict[Tuple[int, ...], int]:
        out: Dict[Tuple[int, ...], int] = {}
        for sp in self.spaces.values():
            if sp.pivots:
                out[sp.weight] = len(sp.pivots)
        return out


def divided_power(engine: PBWEngine, side: str, j: int, n: int) -> TriangularElement:
    """Canonical form of the n-th divided power of the j-th root vector."""
    zeroR = (0,) * engine.rank
    zeroN = (0,) * engine.n
    exp = tuple(n if t == j else 0 for t in range(engine.n))
    coeff = gauss_factorial(n, engine.d_beta[j]).inverse()
    if side == "f":
        return TriangularElement({(exp, zeroR, zeroN): coeff})
    return TriangularElement({(zeroN, zeroR, exp): coeff})


def build_irrep(rs_or_engine, highest, depth=None) -> ModuleRealization:
    """Construct the irreducible module with the given dominant weight."""
    if isinstance(rs_or_engine, PBWEngine):
        engine = rs_or_engine
    else:
        engine = PBWEngine(rs_or_engine)
    return ModuleRealization(engine, highest, depth)


def weight_character(m: ModuleRealization) -> Dict[Tuple[int, ...], int]:
    return m.weight_character()


class SpecializedModule:
    """Entrywise specialization of a generic module at a root of unity."""

    def __init__(self, module: ModuleRealization, ctx):
        self.module = module
        self.ctx = ctx
        self.field = ctx.field
        self.dim = module.dim
        self.tag = "specialized"

    def matrix_of(self, x: TriangularElement, label: str = "") -> list:
        cols = []
        for idx, col in enumerate(self.module.matrix_of(x)):
            out = {}
            for row, val in col.items():
                try:
                    out[row] = specialize_scalar(val, self.field)
                except SpecializationPole as exc:
                    raise SpecializationPole(
                        f"non-integral entry for operator {label or 'element'} "
                        f"at basis pair ({row}, {idx})") from exc
            cols.append(out)
        return cols

    def k_matrix(self, nu) -> list:
        return self.matrix_of(self.module.engine.canon_k(tuple(nu)), "k")

    def f_div_matrix(self, j: int, n: int) -> list:
        return self.matrix_of(
            divided_power(self.module.engine, "f", j, n), f"f_div({j},{n})")

    def e_div_matrix(self, j: int, n: int) -> list:
        return self.matrix_of(
            divided_power(self.module.engine, "e", j, n), f"e_div({j},{n})")

    def weight_character(self) -> Dict[Tuple[int, ...], int]:
        return self.module.weight_character()


def integral_matrices(module: ModuleRealization, ctx) -> SpecializedModule:
    return SpecializedModule(module, ctx)
