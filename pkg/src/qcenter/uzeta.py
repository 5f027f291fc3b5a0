"""Arithmetic at a root of unity and the sign-twist layer.

SpecializedAlgebra evaluates the generic canonical arithmetic at a chosen
root of unity with exact pole cancellation.  The commutation-law verifiers
check the root-of-unity relations for the scaled root vectors a_beta^{r},
S(b_beta)^{r} and the torus part, both in the base algebra and in the
scaled-root-system algebra.  The twist layer realizes the group algebra of
P/P0 acting by signs, the q -> -q embedding into the twisted product, and
the projection that drops the sign-group factors.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .qscalar import (
    LaurentPoly,
    RationalFunction as RF,
    CyclotomicNumber,
    specialize_scalar,
    gauss_factorial,
)
from .rootlat import (
    RootSystem,
    from_cartan,
    weight_lattice,
    even_weight_sublattice,
    quotient,
)
from .uqpbw import PBWEngine, TriangularElement, FreeElement


# ---------------------------------------------------------------------------
# q -> -q substitution on exact scalars
# ---------------------------------------------------------------------------

def _neg_q_poly(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({e: (-v if e % 2 else v) for e, v in p.c.items()})


def neg_q(f: RF) -> RF:
    """The rational function with q replaced by -q."""
    return RF(_neg_q_poly(f.num), _neg_q_poly(f.den))


# ---------------------------------------------------------------------------
# specialized elements
# ---------------------------------------------------------------------------

@dataclass
class SpecializedElement:
    terms: Dict[tuple, CyclotomicNumber]
    tag: str

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpecializedElement) or self.tag != other.tag:
            return False
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

    def scale(self, c) -> "SpecializedElement":
        return SpecializedElement(
            {k: v.scale(c) if isinstance(c, (int, Fraction)) else v * c
             for k, v in self.terms.items()}, self.tag)


class SpecializedAlgebra:
    """The canonical-basis algebra with coefficients evaluated at a root
    of unity.  Products are computed through the generic engine and
    specialized termwise; the evaluation point defaults to the primitive
    root of the context's field."""

    def __init__(self, engine: PBWEngine, ctx, tag: str,
                 z: CyclotomicNumber | None = None,
                 minpoly: list | None = None):
        self.engine = engine
        self.ctx = ctx
        self.field = ctx.field
        self.z = z if z is not None else ctx.field.zeta()
        self.minpoly = minpoly if minpoly is not None else list(ctx.field.modulus)
        self.tag = tag
        self._pair_cache: Dict[tuple, "SpecializedElement"] = {}

    # -- scalars ------------------------------------------------------------

    def spec(self, f: RF) -> CyclotomicNumber:
        return specialize_scalar(f, self.field, self.z, self.minpoly)

    def q_power(self, e: int) -> CyclotomicNumber:
        return self.z ** e

    # -- element constructors -------------------------------------------------

    def specialize_element(self, x: TriangularElement) -> SpecializedElement:
        out: Dict[tuple, CyclotomicNumber] = {}
        for key, c in x.terms.items():
            v = self.spec(c)
            if not v.is_zero():
                out[key] = v
        return SpecializedElement(out, self.tag)

    def zero(self) -> SpecializedElement:
        return SpecializedElement({}, self.tag)

    def unit(self) -> SpecializedElement:
        return self.specialize_element(self.engine.canon_unit())

    def e(self, i: int) -> SpecializedElement:
        return self.specialize_element(self.engine.canon_e(i))

    def f(self, i: int) -> SpecializedElement:
        return self.specialize_element(self.engine.canon_f(i))

    def k(self, lam) -> SpecializedElement:
        return self.specialize_element(self.engine.canon_k(tuple(lam)))

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: SpecializedElement, b: SpecializedElement) -> SpecializedElement:
        out = dict(a.terms)
        for k, v in b.terms.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return SpecializedElement(out, self.tag)

    def sub(self, a: SpecializedElement, b: SpecializedElement) -> SpecializedElement:
        return self.add(a, b.scale(-1))

    def _mono_product(self, k1: tuple, k2: tuple) -> SpecializedElement:
        got = self._pair_cache.get((k1, k2))
        if got is None:
            prod = self.engine.canon_mul(
                TriangularElement({k1: RF.one()}),
                TriangularElement({k2: RF.one()}))
            got = self.specialize_element(prod)
            self._pair_cache[(k1, k2)] = got
        return got

    def mul(self, a: SpecializedElement, b: SpecializedElement) -> SpecializedElement:
        acc: Dict[tuple, CyclotomicNumber] = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                c = c1 * c2
                if c.is_zero():
                    continue
                for k, v in self._mono_product(k1, k2).terms.items():
                    w = acc.get(k)
                    w = v * c if w is None else w + v * c
                    if w.is_zero():
                        acc.pop(k, None)
                    else:
                        acc[k] = w
        return SpecializedElement(acc, self.tag)

    # -- centrality -----------------------------------------------------------

    def _generators(self) -> List[SpecializedElement]:
        gens = []
        for i in range(self.engine.rank):
            gens.append(self.e(i))
            gens.append(self.f(i))
            gens.append(self.k(
                tuple(1 if t == i else 0 for t in range(self.engine.rank))))
        return gens

    def is_central(self, x) -> bool:
        if isinstance(x, TriangularElement):
            # generic commutators, specialized test: cheaper and exact
            eng = self.engine
            for i in range(eng.rank):
                for g in (eng.canon_e(i), eng.canon_f(i),
                          eng.canon_k(tuple(1 if t == i else 0
                                            for t in range(eng.rank)))):
                    diff = eng.canon_mul(x, g) - eng.canon_mul(g, x)
                    if not self.specialize_element(diff).is_zero():
                        return False
            return True
        for g in self._generators():
            if not self.sub(self.mul(x, g), self.mul(g, x)).is_zero():
                return False
        return True


# ---------------------------------------------------------------------------
# generic builders for the rescaled monomial basis
# ---------------------------------------------------------------------------

def a_power(engine: PBWEngine, j: int, n: int) -> TriangularElement:
    """a_{beta_j}^n as a canonical monomial."""
    m = tuple(n if t == j else 0 for t in range(engine.n))
    coef = engine.pair_factor(j) ** n if n else RF.one()
    return TriangularElement({((0,) * engine.n, (0,) * engine.rank, m): coef})


def sb_monomial(engine: PBWEngine, m) -> TriangularElement:
    """Antipode image of the rescaled f-side PBW monomial."""
    coef = RF.one()
    for j, mj in enumerate(m):
        if mj:
            coef = coef * engine.pair_factor(j) ** mj
    free = FreeElement({(w, (0,) * engine.rank, ()): c
                        for w, c in engine.f_pbw_words(m).items()})
    return engine.canonicalize(engine.antipode(free)).scale(coef)


def ab_monomial(engine: PBWEngine, m, mu, mp) -> TriangularElement:
    """Canonical form of a^{m} k_mu S(b^{mp}), all in canonical PBW order."""
    amono = TriangularElement({((0,) * engine.n, (0,) * engine.rank, tuple(m)):
                               _pf_power(engine, m)})
    out = engine.canon_mul(amono, engine.canon_k(tuple(mu)))
    return engine.canon_mul(out, sb_monomial(engine, tuple(mp)))


def _pf_power(engine: PBWEngine, m) -> RF:
    coef = RF.one()
    for j, mj in enumerate(m):
        if mj:
            coef = coef * engine.pair_factor(j) ** mj
    return coef


# ---------------------------------------------------------------------------
# the scaled root system
# ---------------------------------------------------------------------------

def prime_root_system(rs: RootSystem, ctx) -> Tuple[RootSystem, Tuple[int, ...]]:
    """Root system with simple roots r_i * alpha_i, plus the r_i tuple.

    The Cartan matrix is a'_ij = (r_j / r_i) a_ij with symmetrizers
    d'_i = r_i^2 d_i; the same reduced word stays reduced, so positive
    roots correspond positionally."""
    rank = rs.rank
    r = []
    for i in range(rank):
        alpha = tuple(1 if t == i else 0 for t in range(rank))
        r.append(ctx.r_beta[rs.positive_root_index(alpha)])
    cartan = []
    for i in range(rank):
        row = []
        for j in range(rank):
            num = r[j] * rs.cartan[i][j]
            if num % r[i]:
                raise ArithmeticError("scaled Cartan entry not integral")
            row.append(num // r[i])
        cartan.append(row)
    d_prime = tuple(r[i] * r[i] * rs.d[i] for i in range(rank))
    if len(set(r)) == 1:
        letter = rs.letter
    else:
        letter = {"B": "C", "C": "B"}.get(rs.letter, rs.letter)
    return from_cartan(cartan, d_prime, letter), tuple(r)


# ---------------------------------------------------------------------------
# commutation-law verifiers
# ---------------------------------------------------------------------------

def _root_pairing(rs: RootSystem, idx_a: int, beta) -> int:
    """(alpha^vee, beta) for the idx_a-th positive root and beta in
    simple-root coordinates."""
    alpha_w = rs.root_to_weight_coords(rs.positive_roots[idx_a])
    val = Fraction(rs.ip_weight_rootQ(alpha_w, beta), rs.d_alpha(idx_a))
    if val.denominator != 1:
        raise ArithmeticError("non-integral root pairing")
    return int(val)


def _check_spec_zero(alg: SpecializedAlgebra, lhs: TriangularElement,
                     rhs: TriangularElement, sign: int) -> bool:
    diff = lhs - rhs.scale(RF.const(sign))
    return alg.specialize_element(diff).is_zero()


def verify_rel_zeta(ctx, bound: int = 2, engine: PBWEngine | None = None) -> List[dict]:
    """Commutation laws of the r-th powers of the rescaled root vectors
    against every root vector and the torus, at the primitive root."""
    rs = ctx.root_system
    eng = engine if engine is not None else PBWEngine(rs)
    alg = SpecializedAlgebra(eng, ctx, f"U_zeta({rs.letter}{rs.rank})")
    pr = [rs.positive_root_index(b) for b in eng.betas]
    cases = []

    def record(name, ok):
        cases.append({"case": name, "status": "pass" if ok else "fail"})

    sb_cache: Dict[tuple, TriangularElement] = {}

    def sb_pow(j, n):
        got = sb_cache.get((j, n))
        if got is None:
            got = sb_monomial(eng, tuple(n if t == j else 0
                                         for t in range(eng.n)))
            sb_cache[(j, n)] = got
        return got

    for j in range(eng.n):
        rj = ctx.r_beta[pr[j]]
        eta = ctx.eta_beta[pr[j]]
        aj = a_power(eng, j, rj)
        sbj = sb_pow(j, rj)
        for l in range(eng.n):
            exp = _root_pairing(rs, pr[j], eng.betas[l])
            sign = -1 if (eta == -1 and exp % 2) else 1
            al = a_power(eng, l, 1)
            sbl = sb_pow(l, 1)
            pairs = [
                ("a^r|a", aj, al), ("Sb^r|Sb", sbj, sbl),
                ("a^r|Sb", aj, sbl), ("Sb^r|a", sbj, al),
            ]
            for name, x, y in pairs:
                ok = _check_spec_zero(
                    alg, eng.canon_mul(x, y), eng.canon_mul(y, x), sign)
                record(f"{name} j={j} l={l}", ok)
        # torus relations
        lams = [tuple(1 if t == i else 0 for t in range(rs.rank))
                for i in range(min(rs.rank, bound))]
        for lam in lams:
            pairing = rs.pair_weight_coroot(lam, pr[j])
            assert pairing.denominator == 1
            sign = -1 if (eta == -1 and int(pairing) % 2) else 1
            klam = eng.canon_k(lam)
            for name, x in [("k|a^r", aj), ("k|Sb^r", sbj)]:
                ok = _check_spec_zero(
                    alg, eng.canon_mul(klam, x), eng.canon_mul(x, klam), sign)
                record(f"{name} j={j} lam={lam}", ok)
        # P' torus elements against single root vectors
        for i in range(min(rs.rank, bound)):
            alpha = tuple(1 if t == i else 0 for t in range(rs.rank))
            ri = ctx.r_beta[rs.positive_root_index(alpha)]
            mu = tuple(ri if t == i else 0 for t in range(rs.rank))
            pairing = rs.pair_weight_coroot(mu, pr[j])
            frac = Fraction(pairing, ctx.r_beta[pr[j]])
            if frac.denominator != 1:
                raise ArithmeticError("P' pairing not divisible by r_beta")
            sign = -1 if (eta == -1 and int(frac) % 2) else 1
            kmu = eng.canon_k(mu)
            for name, x in [("kP'|a", a_power(eng, j, 1)),
                            ("kP'|Sb", sb_pow(j, 1))]:
                ok = _check_spec_zero(
                    alg, eng.canon_mul(kmu, x), eng.canon_mul(x, kmu), sign)
                record(f"{name} j={j} mu={mu}", ok)
    return cases


def verify_rel_epsilon(ctx, bound: int = 2,
                       prime_engine: PBWEngine | None = None) -> List[dict]:
    """Commutation laws in the scaled-root-system algebra at epsilon."""
    rs = ctx.root_system
    if prime_engine is None:
        rsp, _ = prime_root_system(rs, ctx)
        prime_engine = PBWEngine(rsp, word=None)
    engp = prime_engine
    rsp = engp.rs
    alg = SpecializedAlgebra(engp, ctx, f"U_eps({rsp.letter}{rsp.rank})")
    cases = []

    def record(name, ok):
        cases.append({"case": name, "status": "pass" if ok else "fail"})

    # epsilon_{alpha'} = zeta_alpha^{r_alpha^2}; positions correspond through
    # the shared reduced word (valid in both Weyl groups)
    base_betas = rs.beta_sequence(engp.word)
    eps_pos = [
        ctx.epsilon_beta[rs.positive_root_index(base_betas[j])]
        for j in range(engp.n)
    ]

    sb_cache: Dict[int, TriangularElement] = {}

    def sb1(j):
        got = sb_cache.get(j)
        if got is None:
            got = sb_monomial(engp, tuple(1 if t == j else 0
                                          for t in range(engp.n)))
            sb_cache[j] = got
        return got

    for j in range(engp.n):
        aj = a_power(engp, j, 1)
        sbj = sb1(j)
        for l in range(engp.n):
            exp = _root_pairing(rsp, rsp.positive_root_index(engp.betas[j]),
                                engp.betas[l])
            sign = -1 if (eps_pos[j] == -1 and exp % 2) else 1
            al = a_power(engp, l, 1)
            sbl = sb1(l)
            for name, x, y in [("a|a", aj, al), ("Sb|Sb", sbj, sbl),
                               ("a|Sb", aj, sbl), ("Sb|a", sbj, al)]:
                ok = _check_spec_zero(
                    alg, engp.canon_mul(x, y), engp.canon_mul(y, x), sign)
                record(f"{name} j={j} l={l}", ok)
        for i in range(min(rsp.rank, bound)):
            mu = tuple(1 if t == i else 0 for t in range(rsp.rank))
            pairing = rsp.pair_weight_coroot(
                mu, rsp.positive_root_index(engp.betas[j]))
            assert pairing.denominator == 1
            sign = -1 if (eps_pos[j] == -1 and int(pairing) % 2) else 1
            kmu = engp.canon_k(mu)
            for name, x in [("k|a", aj), ("k|Sb", sbj)]:
                ok = _check_spec_zero(
                    alg, engp.canon_mul(kmu, x), engp.canon_mul(x, kmu), sign)
                record(f"{name} j={j} mu={mu}", ok)
    if ctx.epsilon == 1:
        # commutativity of the whole checked range
        gens = [a_power(engp, j, 1) for j in range(engp.n)]
        gens += [sb1(j) for j in range(engp.n)]
        gens += [engp.canon_k(tuple(1 if t == i else 0
                                    for t in range(rsp.rank)))
                 for i in range(rsp.rank)]
        ok = all(
            _check_spec_zero(alg, engp.canon_mul(x, y),
                             engp.canon_mul(y, x), 1)
            for xi, x in enumerate(gens) for y in gens[xi + 1:])
        record("commutative at epsilon=1", ok)
    return cases


# ---------------------------------------------------------------------------
# sign-group layer
# ---------------------------------------------------------------------------

class SignGroup:
    """P modulo the even-pairing sublattice P0, acting by signs."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.quot = quotient(weight_lattice(rs), even_weight_sublattice(rs))

    def key(self, lam) -> tuple:
        return self.quot.key(tuple(lam))

    def pair_sign(self, lam, gammaQ) -> int:
        """(-1)^{(lam, gamma)} for gamma in simple-root coordinates."""
        s = self.rs.ip_weight_rootQ(tuple(lam), tuple(gammaQ))
        return -1 if s % 2 else 1


def g_action(engine: PBWEngine, lam, x):
    """Action of the sign automorphism attached to lam on an element in
    canonical form (generic or specialized coefficients)."""
    sg_rs = engine.rs
    terms = x.terms
    out = {}
    for key, c in terms.items():
        nf, _, me = key
        gam = tuple(a + b for a, b in zip(engine.exp_weightQ(nf),
                                          engine.exp_weightQ(me)))
        s = sg_rs.ip_weight_rootQ(tuple(lam), gam)
        out[key] = c.scale(-1) if s % 2 else c
    if isinstance(x, TriangularElement):
        return TriangularElement(out)
    return SpecializedElement(out, x.tag)


def is_g_invariant(engine: PBWEngine, x) -> bool:
    for i in range(engine.rank):
        lam = tuple(1 if t == i else 0 for t in range(engine.rank))
        if isinstance(x, TriangularElement):
            if not (g_action(engine, lam, x) - x).is_zero():
                return False
        else:
            y = g_action(engine, lam, x)
            if not all((y.terms[k] - x.terms[k]).is_zero() for k in x.terms):
                return False
    return True


# ---------------------------------------------------------------------------
# twisted product U (x) F[P/P0]
# ---------------------------------------------------------------------------

@dataclass
class TwistElement:
    # coset key -> (representative weight, canonical element)
    parts: Dict[tuple, Tuple[tuple, TriangularElement]]

    def is_zero(self) -> bool:
        return all(u.is_zero() for _, u in self.parts.values())


class TwistAlgebra:
    def __init__(self, engine: PBWEngine):
        self.engine = engine
        self.sg = SignGroup(engine.rs)
        self.zero_lam = (0,) * engine.rank

    def element(self, u: TriangularElement, lam=None) -> TwistElement:
        lam = tuple(lam) if lam is not None else self.zero_lam
        return TwistElement({self.sg.key(lam): (lam, u)})

    def unit(self) -> TwistElement:
        return self.element(self.engine.canon_unit())

    def add(self, x: TwistElement, y: TwistElement) -> TwistElement:
        parts = dict(x.parts)
        for g, (lam, u) in y.parts.items():
            if g in parts:
                lam0, u0 = parts[g]
                parts[g] = (lam0, u0 + u)
            else:
                parts[g] = (lam, u)
        return TwistElement({g: p for g, p in parts.items()
                             if not p[1].is_zero()} or {})

    def scale(self, x: TwistElement, c: RF) -> TwistElement:
        return TwistElement({g: (lam, u.scale(c))
                             for g, (lam, u) in x.parts.items()})

    def sub(self, x: TwistElement, y: TwistElement) -> TwistElement:
        return self.add(x, self.scale(y, RF.const(-1)))

    def mul(self, x: TwistElement, y: TwistElement) -> TwistElement:
        out = TwistElement({})
        for g1, (lam1, u1) in x.parts.items():
            for g2, (lam2, u2) in y.parts.items():
                u = self.engine.canon_mul(u1, g_action(self.engine, lam1, u2))
                out = self.add(out, self.element(
                    u, tuple(a + b for a, b in zip(lam1, lam2))))
        return out

    def eq(self, x: TwistElement, y: TwistElement) -> bool:
        return self.sub(x, y).is_zero()


def xi_tilde(x: TwistElement) -> TriangularElement:
    """Linear projection dropping the sign-group factors."""
    out = TriangularElement.zero()
    for _, u in x.parts.values():
        out = out + u
    return out


def xi_z(engine: PBWEngine, x: TwistElement, alg: SpecializedAlgebra | None = None):
    """Projection on sign-group invariants; rejects non-invariant input."""
    for _, (lam, u) in x.parts.items():
        if not is_g_invariant(engine, u):
            raise ValueError("component is not invariant under the sign group")
    out = xi_tilde(x)
    return alg.specialize_element(out) if alg is not None else out


# ---------------------------------------------------------------------------
# the q -> -q embedding
# ---------------------------------------------------------------------------

def valid_J_subsets(rs: RootSystem) -> List[Tuple[int, ...]]:
    """Subsets J with exactly one endpoint of every odd-paired edge."""
    rank = rs.rank
    odd_edges = []
    for i in range(rank):
        for j in range(rank):
            if i != j and (rs.d[i] * rs.cartan[i][j]) % 2:
                odd_edges.append((i, j))
    out = []
    subsets = sorted(
        (tuple(i for i in range(rank) if mask >> i & 1)
         for mask in range(1 << rank)),
        key=lambda s: (len(s), s))
    for J in subsets:
        sJ = set(J)
        if all(len({i, j} & sJ) == 1 for i, j in odd_edges):
            out.append(J)
    return out


class ThetaEmbedding:
    """Images of the generators under the sign-twisted embedding that
    realizes the q -> -q symmetry inside the twisted product."""

    def __init__(self, engine: PBWEngine, J: Sequence[int] | None = None):
        self.engine = engine
        self.rs = engine.rs
        self.ta = TwistAlgebra(engine)
        valid = valid_J_subsets(self.rs)
        if J is None:
            if not valid:
                raise ValueError("no valid twist subset exists")
            J = valid[0]
        J = tuple(sorted(J))
        if J not in valid:
            raise ValueError(f"invalid twist subset {J}")
        self.J = J

    def phi_lam(self, i: int) -> tuple:
        if i in self.J:
            return tuple(self.rs.cartan[t][i] for t in range(self.rs.rank))
        return (0,) * self.rs.rank

    def psi_lam(self, i: int) -> tuple:
        alpha = tuple(self.rs.cartan[t][i] for t in range(self.rs.rank))
        return tuple(a + b for a, b in zip(self.phi_lam(i), alpha))

    def theta_e(self, i: int) -> TwistElement:
        return self.ta.element(self.engine.canon_e(i), self.phi_lam(i))

    def theta_f(self, i: int) -> TwistElement:
        u = self.engine.canon_f(i)
        if self.rs.d[i] % 2:
            u = u.scale(RF.const(-1))
        return self.ta.element(u, self.psi_lam(i))

    def theta_k(self, lam) -> TwistElement:
        return self.ta.element(self.engine.canon_k(tuple(lam)), tuple(lam))

    # -- relation fidelity at -q ---------------------------------------------

    def check_torus_relations(self) -> bool:
        rs, ta = self.rs, self.ta
        for i in range(rs.rank):
            lam = tuple(1 if t == i else 0 for t in range(rs.rank))
            tk = self.theta_k(lam)
            for jj in range(rs.rank):
                # (lam, alpha_j) = d_j * lam_j in fundamental coordinates
                exp = rs.d[jj] * lam[jj]
                c = RF.q_power(exp, (-1) ** (exp % 2))
                lhs = ta.mul(tk, self.theta_e(jj))
                rhs = ta.scale(ta.mul(self.theta_e(jj), tk), c)
                if not ta.eq(lhs, rhs):
                    return False
                cinv = RF.q_power(-exp, (-1) ** (exp % 2))
                lhs = ta.mul(tk, self.theta_f(jj))
                rhs = ta.scale(ta.mul(self.theta_f(jj), tk), cinv)
                if not ta.eq(lhs, rhs):
                    return False
        return True

    def check_ef_relations(self) -> bool:
        rs, ta = self.rs, self.ta
        for i in range(rs.rank):
            for j in range(rs.rank):
                lhs = ta.sub(ta.mul(self.theta_e(i), self.theta_f(j)),
                             ta.mul(self.theta_f(j), self.theta_e(i)))
                if i != j:
                    if not lhs.is_zero():
                        return False
                    continue
                di = rs.d[i]
                denom = (RF.q_power(di, (-1) ** (di % 2))
                         - RF.q_power(-di, (-1) ** (di % 2)))
                alpha = tuple(rs.cartan[t][i] for t in range(rs.rank))
                rhs = ta.sub(self.theta_k(alpha),
                             self.theta_k(tuple(-v for v in alpha)))
                rhs = ta.scale(rhs, RF.one() / denom)
                if not ta.eq(lhs, rhs):
                    return False
        return True

    def _map_word(self, side: str, word, coeff: RF) -> TwistElement:
        out = self.ta.element(self.engine.canon_unit().scale(neg_q(coeff)))
        gen = self.theta_e if side == "e" else self.theta_f
        for letter in word:
            out = self.ta.mul(out, gen(letter))
        return out

    def check_serre_relations(self) -> bool:
        rs, ta = self.rs, self.ta
        for i in range(rs.rank):
            for j in range(rs.rank):
                if i == j:
                    continue
                for side in ("e", "f"):
                    rel = self.engine.serre_element(i, j, side)
                    acc = TwistElement({})
                    for (fw, lam, ew), c in rel.terms.items():
                        word = ew if side == "e" else fw
                        acc = ta.add(acc, self._map_word(side, word, c))
                    if not acc.is_zero():
                        return False
        return True

    # -- root-vector images -----------------------------------------------------

    def _phi_beta(self, gammaQ) -> tuple:
        phi = [0] * self.rs.rank
        for i in self.J:
            ni = gammaQ[i]
            if ni:
                for t in range(self.rs.rank):
                    phi[t] += ni * self.rs.cartan[t][i]
        return tuple(phi)

    def root_vector_sign(self, j: int, side: str = "e") -> int:
        """Sign s with theta(x_beta) = s * x_beta * phi_beta for the e-side
        root vector or its f-side antipode image, by direct evaluation of
        the word expansion at -q."""
        eng, ta = self.engine, self.ta
        eng._ensure_root_vectors()
        acc = TwistElement({})
        if side == "e":
            for w, c in eng._ebeta[j].items():
                acc = ta.add(acc, self._map_word("e", w, c))
            target = TriangularElement({
                ((0,) * eng.n, (0,) * eng.rank,
                 tuple(1 if t == j else 0 for t in range(eng.n))): RF.one()})
        elif side == "sf":
            free = FreeElement({(w, (0,) * eng.rank, ()): c
                                for w, c in eng._fbeta[j].items()})
            for (fw, lam, _), c in eng.antipode(free).terms.items():
                part = self._map_word("f", fw, c)
                part = ta.mul(part, self.theta_k(lam))
                acc = ta.add(acc, part)
            target = sb_monomial(
                eng, tuple(1 if t == j else 0 for t in range(eng.n))).scale(
                    eng.pair_factor(j).inverse())
        else:
            raise ValueError("side must be 'e' or 'sf'")
        phi_beta = self._phi_beta(eng.betas[j])
        for s in (1, -1):
            cand = ta.element(target.scale(RF.const(s)), phi_beta)
            if ta.eq(acc, cand):
                return s
        raise ArithmeticError(
            f"root-vector image is not a signed multiple (j={j}, side={side})")
