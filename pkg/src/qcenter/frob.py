"""Scaled-root-system layer: the exponent-dividing projection, its
transpose embedding into the base algebra, membership in the image-center
intersection, the finite twist groups, and the lattice counting identities.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .qscalar import CyclotomicNumber, RationalFunction as RF, build_context
from .rootlat import (
    RootSystem,
    IntegerLattice,
    FiniteQuotient,
    build_root_system,
    weight_lattice,
    even_weight_sublattice,
    quotient,
    congruence_sublattice,
    _lattice_reduce,
)
from .uqpbw import PBWEngine, TriangularElement
from .uzeta import (
    SpecializedAlgebra,
    SpecializedElement,
    prime_root_system,
    ab_monomial,
)


# ---------------------------------------------------------------------------
# lattice data
# ---------------------------------------------------------------------------

def _coroot_rows(rs: RootSystem, indices) -> List[Tuple[int, ...]]:
    return [tuple(int(v) for v in rs.coroot_coordinates(i)) for i in indices]


def _span(rows, ambient: int) -> IntegerLattice:
    """Lattice spanned by a (possibly dependent) generating set."""
    reduced = _lattice_reduce(
        [tuple(Fraction(v) for v in r) for r in rows], ambient)
    return IntegerLattice.from_rows(reduced, ambient)


def p_prime_lattice(rs: RootSystem, ctx) -> IntegerLattice:
    """Weights pairing into r_alpha Z against every coroot."""
    conds = _coroot_rows(rs, range(len(rs.positive_roots)))
    moduli = list(ctx.r_beta)
    return congruence_sublattice(conds, moduli, rs.rank)


def p_prime_simple(rs: RootSystem, ctx) -> IntegerLattice:
    """The same lattice through the simple conditions only: spanned by
    r_i * (i-th fundamental weight)."""
    rows = []
    for i in range(rs.rank):
        alpha = tuple(1 if t == i else 0 for t in range(rs.rank))
        ri = ctx.r_beta[rs.positive_root_index(alpha)]
        rows.append([ri if t == i else 0 for t in range(rs.rank)])
    return IntegerLattice.from_rows(rows, rs.rank)


def p_doubleprime_lattice(rs: RootSystem, ctx) -> IntegerLattice:
    """The torus-membership lattice: weights of the scaled lattice pairing
    into 2 r_gamma Z against the coroots carrying sign -1.  Equal to the
    scaled lattice itself when the order is odd, and to twice it except in
    the shifted even case."""
    pp = p_prime_simple(rs, ctx)
    if ctx.ell % 2:
        return pp
    delta1 = [i for i in range(len(rs.positive_roots))
              if ctx.eta_beta[i] == -1]
    conds = _coroot_rows(rs, delta1)
    moduli = [2 * ctx.r_beta[i] for i in delta1]
    return pp.intersection(congruence_sublattice(conds, moduli, rs.rank))


@dataclass
class PrimeRootData:
    base: RootSystem
    ctx: object
    prime: RootSystem
    r_simple: Tuple[int, ...]
    same_class: bool            # scaled system isomorphic to the base one
    p_prime: IntegerLattice
    p_dprime: IntegerLattice
    delta1_plus: Tuple[int, ...]     # base positive-root indices
    q1_vee: IntegerLattice           # in simple-coroot coordinates
    gamma1: FiniteQuotient
    gamma2: FiniteQuotient
    m: int

    @property
    def gamma_order(self) -> int:
        return self.gamma1.order * self.gamma2.order


def _m_value(rs: RootSystem, ctx) -> int:
    if ctx.ell % 2:
        return 1
    if ctx.case == "even-shifted":
        short = sum(1 for i in range(rs.rank) if rs.d[i] == 1)
        return 2 ** short
    return 2 ** rs.rank


def build_prime_data(rs: RootSystem, ctx) -> PrimeRootData:
    prime, r_simple = prime_root_system(rs, ctx)
    delta1 = tuple(i for i in range(len(rs.positive_roots))
                   if ctx.eta_beta[i] == -1)
    rows = _coroot_rows(rs, delta1)
    q1 = _span(rows, rs.rank) if rows else IntegerLattice.zero(rs.rank)
    pw = weight_lattice(rs)
    pp = p_prime_simple(rs, ctx)
    ppd = p_doubleprime_lattice(rs, ctx)
    trivial = FiniteQuotient((), 1, lambda c: ())
    if ctx.ell % 2:
        gamma1 = trivial
        gamma2 = trivial
    else:
        gamma1 = quotient(weight_lattice(prime), even_weight_sublattice(prime))
        if ctx.case == "even-shifted":
            short_idx = [i for i in range(len(prime.positive_roots))
                         if prime.d_alpha(i) == min(
                             prime.d_alpha(t)
                             for t in range(len(prime.positive_roots)))]
            qs = _span(_coroot_rows(prime, short_idx), prime.rank)
            gamma2 = quotient(qs, qs.scaled(2))
        else:
            qv = IntegerLattice.standard(prime.rank)
            gamma2 = quotient(qv, qv.scaled(2))
    return PrimeRootData(
        base=rs, ctx=ctx, prime=prime, r_simple=r_simple,
        same_class=len(set(ctx.r_beta)) == 1,
        p_prime=pp, p_dprime=ppd, delta1_plus=delta1, q1_vee=q1,
        gamma1=gamma1, gamma2=gamma2, m=_m_value(rs, ctx))


# ---------------------------------------------------------------------------
# the exponent-dividing projection
# ---------------------------------------------------------------------------

def frob_xi(data: PrimeRootData, exps: Sequence[int], lam) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Divide the exponent over each positive root by its r and keep the
    weight, or return None (the zero image).

    exps is indexed by base positive-root index."""
    if not data.p_prime.contains(tuple(lam)):
        return None
    out = []
    for idx, n in enumerate(exps):
        r = data.ctx.r_beta[idx]
        if n % r:
            return None
        out.append(n // r)
    return tuple(out), tuple(lam)


# ---------------------------------------------------------------------------
# monomials in the image of the transpose embedding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrobMonomial:
    """Divided exponent data: the realized element is
    a^{r*m} k_mu S(b)^{r*m'} with exponents indexed by base positive-root
    index and mu in the scaled weight lattice."""
    m: Tuple[int, ...]
    mu: Tuple[int, ...]
    mp: Tuple[int, ...]


def zfr_membership(mono: FrobMonomial, data: PrimeRootData) -> bool:
    if data.ctx.ell % 2:
        return True
    rs = data.base
    total = [0] * rs.rank
    for idx in data.delta1_plus:
        c = mono.m[idx] + mono.mp[idx]
        if c:
            cr = rs.coroot_coordinates(idx)
            for t in range(rs.rank):
                total[t] += c * cr[t]
    if any(v % 2 for v in total):
        return False
    return data.p_dprime.contains(mono.mu)


def realize_monomial(engine: PBWEngine, data: PrimeRootData,
                     mono: FrobMonomial) -> TriangularElement:
    """The monomial as a canonical element of the base algebra."""
    rs = data.base
    m_pbw = [0] * engine.n
    mp_pbw = [0] * engine.n
    for j in range(engine.n):
        idx = rs.positive_root_index(engine.betas[j])
        r = data.ctx.r_beta[idx]
        m_pbw[j] = r * mono.m[idx]
        mp_pbw[j] = r * mono.mp[idx]
    return ab_monomial(engine, tuple(m_pbw), mono.mu, tuple(mp_pbw))


def coset_representatives(big: IntegerLattice, small: IntegerLattice) -> List[Tuple[int, ...]]:
    """Deterministic representatives of big/small, as ambient vectors."""
    quot = quotient(big, small)
    reps: Dict[tuple, Tuple[int, ...]] = {}
    n = big.lattice_rank
    radius = 0
    while len(reps) < quot.order:
        radius += 1
        for coords in itertools.product(range(-radius, radius + 1), repeat=n):
            key = quot.key(coords)
            if key not in reps:
                vec = tuple(
                    sum(coords[i] * big.basis[i][j] for i in range(n))
                    for j in range(big.ambient))
                assert all(v.denominator == 1 for v in vec)
                reps[key] = tuple(int(v) for v in vec)
        if radius > 8:
            raise ArithmeticError("coset enumeration did not terminate")
    return [reps[k] for k in sorted(reps)]


def zfr_crosscheck(ctx, bound: int = 2, engine: PBWEngine | None = None,
                   max_active: int | None = None,
                   max_total: int | None = None) -> List[dict]:
    """Membership predicate against direct centrality, on a grid that is
    complete modulo the periodicity of both conditions.

    max_active caps how many exponent slots are nonzero at once (the
    conditions are additive, so pairwise interactions decide the rest);
    max_total caps the total divided degree of a grid point."""
    rs = ctx.root_system
    eng = engine if engine is not None else PBWEngine(rs)
    data = build_prime_data(rs, ctx)
    alg = SpecializedAlgebra(eng, ctx, f"U_zeta({rs.letter}{rs.rank})")
    npos = len(rs.positive_roots)
    slots = 2 * npos
    if max_active is None:
        max_active = slots if npos <= 1 else 2
    mus = coset_representatives(data.p_prime, data.p_dprime)
    exp_vectors = []
    for active in itertools.combinations(range(slots), max_active):
        for vals in itertools.product(range(1, bound + 1), repeat=max_active):
            vec = [0] * slots
            for pos, v in zip(active, vals):
                vec[pos] = v
            exp_vectors.append(tuple(vec))
    for k in range(max_active):
        for active in itertools.combinations(range(slots), k):
            for vals in itertools.product(range(1, bound + 1), repeat=k):
                vec = [0] * slots
                for pos, v in zip(active, vals):
                    vec[pos] = v
                exp_vectors.append(tuple(vec))
    if max_total is not None:
        exp_vectors = [v for v in exp_vectors if sum(v) <= max_total]
    cases = []
    for vec in sorted(set(exp_vectors)):
        m, mp = vec[:npos], vec[npos:]
        for mu in mus:
            mono = FrobMonomial(m, tuple(mu), mp)
            member = zfr_membership(mono, data)
            central = alg.is_central(realize_monomial(eng, data, mono))
            cases.append({
                "case": f"m={m} mu={tuple(mu)} m'={mp}",
                "member": member,
                "central": central,
                "status": "pass" if member == central else "fail",
            })
    return cases


# ---------------------------------------------------------------------------
# the transpose embedding
# ---------------------------------------------------------------------------

def c_beta(ctx, idx: int) -> CyclotomicNumber:
    """Per-root constant of the transpose embedding."""
    r = ctx.r_beta[idx]
    db = ctx.root_system.d_alpha(idx)
    # zeta_beta^{-r(r-1)/2} with sign (-1)^{r+1}
    val = ctx.zeta ** (-db * (r * (r - 1) // 2))
    if r % 2 == 0:
        val = val.scale(-1)
    return val


@dataclass
class DKElement:
    """Element of the specialized algebra written in the rescaled monomial
    basis a^m k_mu S(b)^{m'}, keys (m, mu, m').

    The basis survives specialization points where the rescaled root
    vectors vanish as multiples of the unrescaled ones, so elements of the
    scaled algebra are stored this way rather than through e and f."""
    terms: Dict[tuple, CyclotomicNumber]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.terms.values())

    def __eq__(self, other) -> bool:
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a, b = self.terms.get(k), other.terms.get(k)
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif a != b:
                return False
        return True

    def scale(self, c) -> "DKElement":
        return DKElement({k: v * c for k, v in self.terms.items()})


class TransposeFrobenius:
    """Monomial-wise embedding of the scaled algebra into the base one.

    Products on the scaled side are computed with generic structure
    constants (Laurent polynomials, by integrality of the rescaled form)
    and specialized afterwards."""

    def __init__(self, base_engine: PBWEngine, ctx,
                 data: PrimeRootData | None = None,
                 prime_engine: PBWEngine | None = None):
        self.ctx = ctx
        self.base = base_engine
        self.data = data if data is not None else build_prime_data(
            base_engine.rs, ctx)
        if prime_engine is None:
            prime_engine = PBWEngine(self.data.prime)
        self.prime = prime_engine
        self.base_alg = SpecializedAlgebra(
            base_engine, ctx,
            f"U_zeta({base_engine.rs.letter}{base_engine.rs.rank})")
        # scalar specializer only; prime-side elements live in DKElement
        self._scalars = SpecializedAlgebra(
            prime_engine, ctx,
            f"U_eps({self.data.prime.letter}{self.data.prime.rank})")
        # positional correspondence through the shared reduced word
        self.base_betas = base_engine.rs.beta_sequence(prime_engine.word)
        self.pos_idx = [base_engine.rs.positive_root_index(b)
                        for b in self.base_betas]
        # base PBW position of each prime PBW position
        self.base_pos = [base_engine.betas.index(b) for b in self.base_betas]
        self._gen_cache: Dict[tuple, TriangularElement] = {}
        self._pair_cache: Dict[tuple, Dict[tuple, CyclotomicNumber]] = {}

    # -- generic rescaled-basis arithmetic on the scaled side ----------------

    def _gen_ab(self, key) -> TriangularElement:
        got = self._gen_cache.get(key)
        if got is None:
            m, mu, mp = key
            got = ab_monomial(self.prime, m, mu, mp)
            self._gen_cache[key] = got
        return got

    def _mono_key_of_term(self, key) -> tuple:
        nf, lam, me = key
        shift = self.prime.rs.root_to_weight_coords(
            self.prime.exp_weightQ(nf))
        mu = tuple(a - b for a, b in zip(lam, shift))
        return (me, mu, nf)

    def generic_to_ab(self, x: TriangularElement) -> Dict[tuple, object]:
        """Expansion of a generic element over rescaled monomials.

        Greedy leading-term peeling is not well founded here (straightening
        tails are not lexicographically lower), so instead the finite set of
        rescaled monomials reachable from the support is closed off and the
        coefficients are found by exact linear elimination."""
        pending = {self._mono_key_of_term(k)
                   for k, v in x.terms.items() if not v.is_zero()}
        monos: Dict[tuple, TriangularElement] = {}
        while pending:
            s = pending.pop()
            if s in monos:
                continue
            g = self._gen_ab(s)
            monos[s] = g
            for k, v in g.terms.items():
                if v.is_zero():
                    continue
                t = self._mono_key_of_term(k)
                if t not in monos:
                    pending.add(t)
        unknowns = sorted(monos, key=lambda s: (sum(s[0]) + sum(s[2]), s),
                          reverse=True)
        rowset = set(k for k, v in x.terms.items() if not v.is_zero())
        for g in monos.values():
            rowset.update(k for k, v in g.terms.items() if not v.is_zero())
        rows = sorted(rowset)
        ridx = {k: i for i, k in enumerate(rows)}
        aug: List[Dict[int, RF]] = [dict() for _ in rows]
        for j, s in enumerate(unknowns):
            for k, v in monos[s].terms.items():
                if not v.is_zero():
                    aug[ridx[k]][j] = v
        rhs: List[RF] = [RF.zero()] * len(rows)
        for k, v in x.terms.items():
            rhs[ridx[k]] = v
        used = [False] * len(rows)
        pivot_row = [None] * len(unknowns)
        for j in range(len(unknowns)):
            piv = next((i for i in range(len(rows))
                        if not used[i] and j in aug[i]
                        and not aug[i][j].is_zero()), None)
            if piv is None:
                raise ArithmeticError("rescaled monomials not independent")
            used[piv] = True
            pivot_row[j] = piv
            inv = aug[piv][j].inverse()
            aug[piv] = {c: v * inv for c, v in aug[piv].items()}
            rhs[piv] = rhs[piv] * inv
            prow, prhs = aug[piv], rhs[piv]
            for i in range(len(rows)):
                if i == piv:
                    continue
                f = aug[i].get(j)
                if f is None or f.is_zero():
                    continue
                for c, v in prow.items():
                    w = aug[i].get(c, RF.zero()) - f * v
                    if w.is_zero():
                        aug[i].pop(c, None)
                    else:
                        aug[i][c] = w
                rhs[i] = rhs[i] - f * prhs
        for i in range(len(rows)):
            if not used[i] and not rhs[i].is_zero():
                raise ArithmeticError("basis conversion inconsistent")
        out: Dict[tuple, object] = {}
        for j, s in enumerate(unknowns):
            c = rhs[pivot_row[j]]
            if not c.is_zero():
                out[s] = c
        return out

    def dk_specialize(self, x: TriangularElement) -> DKElement:
        return DKElement({k: self._scalars.spec(v)
                          for k, v in self.generic_to_ab(x).items()})

    def dk_monomial(self, m, mu, mp) -> DKElement:
        return DKElement({(tuple(m), tuple(mu), tuple(mp)):
                          self.ctx.field.one()})

    def dk_add(self, u: DKElement, v: DKElement) -> DKElement:
        out = dict(u.terms)
        for k, c in v.terms.items():
            w = out.get(k)
            w = c if w is None else w + c
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return DKElement(out)

    def dk_sub(self, u: DKElement, v: DKElement) -> DKElement:
        return self.dk_add(u, v.scale(self.ctx.field.from_rational(-1)))

    def _pair_product(self, k1, k2) -> Dict[tuple, CyclotomicNumber]:
        got = self._pair_cache.get((k1, k2))
        if got is None:
            prod = self.prime.canon_mul(self._gen_ab(k1), self._gen_ab(k2))
            got = {k: self._scalars.spec(v)
                   for k, v in self.generic_to_ab(prod).items()}
            self._pair_cache[(k1, k2)] = got
        return got

    def dk_mul(self, u: DKElement, v: DKElement) -> DKElement:
        out: Dict[tuple, CyclotomicNumber] = {}
        for k1, c1 in u.terms.items():
            if c1.is_zero():
                continue
            for k2, c2 in v.terms.items():
                if c2.is_zero():
                    continue
                c = c1 * c2
                for k, s in self._pair_product(k1, k2).items():
                    w = out.get(k)
                    w = s * c if w is None else w + s * c
                    if w.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = w
        return DKElement(out)

    # -- the embedding itself -------------------------------------------------

    def txi(self, u: DKElement) -> SpecializedElement:
        acc = self.base_alg.zero()
        for (m, mu, mp), coef in u.terms.items():
            if coef.is_zero():
                continue
            mu_base = tuple(
                self.data.r_simple[i] * mu[i] for i in range(len(mu)))
            if not self.data.p_prime.contains(mu_base):
                raise ValueError("weight outside the scaled lattice")
            m_base = [0] * self.base.n
            mp_base = [0] * self.base.n
            c = self.ctx.field.one()
            for j in range(self.prime.n):
                idx = self.pos_idx[j]
                r = self.ctx.r_beta[idx]
                bp = self.base_pos[j]
                m_base[bp] = r * m[j]
                mp_base[bp] = r * mp[j]
                tot = m[j] + mp[j]
                if tot:
                    c = c * c_beta(self.ctx, idx) ** tot
            mono = self.base_alg.specialize_element(
                ab_monomial(self.base, tuple(m_base), mu_base,
                            tuple(mp_base)))
            acc = self.base_alg.add(acc, mono.scale(coef * c))
        return acc


def cbeta_adjunction_holds(ctx, idx: int, n: int) -> bool:
    """Diagonal-pairing identity matching the scaled and base constants."""
    r = ctx.r_beta[idx]
    db = ctx.root_system.d_alpha(idx)
    rn = r * n
    lhs = c_beta(ctx, idx) ** n * ctx.zeta ** (db * rn * (rn - 1) // 2)
    if rn % 2:
        lhs = lhs.scale(-1)
    # epsilon_{beta'} = zeta_beta^{r^2}
    rhs = ctx.zeta ** (db * r * r * (n * (n - 1) // 2))
    if n % 2:
        rhs = rhs.scale(-1)
    return lhs == rhs


# ---------------------------------------------------------------------------
# counting identities
# ---------------------------------------------------------------------------

def counting_identities(types: Sequence[Tuple[str, int]],
                        ells: Sequence[int]) -> List[dict]:
    rows = []
    for letter, rank in types:
        rs = build_root_system(letter, rank)
        for ell in ells:
            try:
                ctx = build_context(rs, ell)
            except ValueError as exc:
                rows.append({
                    "type": f"{letter}{rank}", "ell": ell,
                    "status": f"skipped({exc})",
                })
                continue
            data = build_prime_data(rs, ctx)
            pw = weight_lattice(rs)
            idx_p_pprime = quotient(pw, data.p_prime).order
            idx_pp_ppd = quotient(data.p_prime, data.p_dprime).order
            if data.q1_vee.lattice_rank == 0:
                idx_q1 = 1
            else:
                two_q = IntegerLattice.standard(rs.rank).scaled(2)
                inter = data.q1_vee.intersection(two_q)
                idx_q1 = quotient(data.q1_vee, inter).order
            degree = data.m
            for r in ctx.r_beta:
                degree *= r
            identity = data.m * data.m == idx_pp_ppd * idx_q1
            rows.append({
                "type": f"{letter}{rank}", "ell": ell, "m": data.m,
                "P/P'": idx_p_pprime, "P'/P''": idx_pp_ppd,
                "Q1/(Q1&2Q)": idx_q1, "degree": degree,
                "gamma": data.gamma_order,
                "identity": identity,
                "status": "pass" if identity else "fail",
            })
    return rows
