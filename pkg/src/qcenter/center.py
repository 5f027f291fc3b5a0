"""Central elements from module traces and the Harish-Chandra projection.

t_M is assembled from the explicit trace formula: for every pair of
balanced PBW exponent tuples inside the module's weight span, the divided
monomial sandwich is evaluated as a matrix trace and attached to the
corresponding rescaled-root-vector monomial.  The projection onto the
k-span, its twisted Weyl invariance, and exact centrality tests live here
as well.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .qscalar import RationalFunction as RF, gauss_factorial
from .uqpbw import PBWEngine, TriangularElement, FreeElement
from .modrep import ModuleRealization


# ---------------------------------------------------------------------------
# scalar adapters: the same group-algebra code runs at generic q and at a
# root of unity
# ---------------------------------------------------------------------------

class GenericScalars:
    kind = "generic"

    def zero(self):
        return RF.zero()

    def q_power(self, e: int):
        return RF.q_power(e)

    def from_int(self, n: int):
        return RF.const(n)


class RootScalars:
    kind = "specialized"

    def __init__(self, field, z=None):
        self.field = field
        self.z = z if z is not None else field.zeta()

    def zero(self):
        return self.field.zero()

    def q_power(self, e: int):
        return self.z ** e

    def from_int(self, n: int):
        return self.field.from_rational(n)


# ---------------------------------------------------------------------------
# group algebra of 2P
# ---------------------------------------------------------------------------

def ga_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        w = v if w is None else w + v
        if w.is_zero():
            out.pop(k, None)
        else:
            out[k] = w
    return out


def ga_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            v = v1 * v2
            w = out.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
    return out


def ga_eq(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        va, vb = a.get(k), b.get(k)
        if va is None:
            if not vb.is_zero():
                return False
        elif vb is None:
            if not va.is_zero():
                return False
        elif va != vb:
            return False
    return True


def _check_2p(key) -> None:
    if any(v % 2 for v in key):
        raise ValueError(f"support outside the doubled weight lattice: {key}")


def twisted_action(rs, word, x: dict, scalars) -> dict:
    """Action of the Weyl word (leftmost letter acts last) on F[2P]."""
    out = x
    for i in reversed(tuple(word)):
        out = _simple_twist(rs, i, out, scalars)
    return out


def _simple_twist(rs, i: int, x: dict, scalars) -> dict:
    two_rho = (2,) * rs.rank
    out: dict = {}
    for key, c in x.items():
        _check_2p(key)
        mu = tuple(v // 2 for v in key)
        smu = rs.reflect_weight(i, mu)
        exp = rs.ip_weight_weight(
            tuple(a - b for a, b in zip(smu, mu)), two_rho)
        if exp.denominator != 1:
            raise ValueError("non-integral twist exponent")
        k2 = tuple(2 * v for v in smu)
        v = c * scalars.q_power(int(exp))
        w = out.get(k2)
        w = v if w is None else w + v
        if w.is_zero():
            out.pop(k2, None)
        else:
            out[k2] = w
    return out


def is_twist_invariant(rs, x: dict, scalars) -> bool:
    for i in range(rs.rank):
        if not ga_eq(_simple_twist(rs, i, x, scalars), x):
            return False
    return True


# ---------------------------------------------------------------------------
# the trace element t_M
# ---------------------------------------------------------------------------

@dataclass
class CentralElement:
    element: object                 # TriangularElement or SpecializedElement
    source: str
    kind: str                       # "generic" / "specialized"
    certified: bool = False


def _a_mono(eng: PBWEngine, m) -> TriangularElement:
    """Canonically ordered product of rescaled e-root vectors."""
    coef = RF.one()
    for j, mj in enumerate(m):
        if mj:
            coef = coef * eng.pair_factor(j) ** mj
    return TriangularElement({((0,) * eng.n, (0,) * eng.rank, m): coef})


def _f_div(eng: PBWEngine, m) -> TriangularElement:
    coef = RF.one()
    for j, mj in enumerate(m):
        if mj:
            coef = coef * gauss_factorial(mj, eng.d_beta[j]).inverse()
    return TriangularElement({(m, (0,) * eng.rank, (0,) * eng.n): coef})


def _antipode_f_pbw(eng: PBWEngine, n) -> TriangularElement:
    free = FreeElement({(w, (0,) * eng.rank, ()): c
                        for w, c in eng.f_pbw_words(n).items()})
    return eng.canonicalize(eng.antipode(free))


def _antipode_e_pbw(eng: PBWEngine, n) -> TriangularElement:
    free = FreeElement({((), (0,) * eng.rank, w): c
                        for w, c in eng.e_pbw_words(n).items()})
    return eng.canonicalize(eng.antipode(free))


def s_b_mono_descending(eng: PBWEngine, n, cache: dict) -> TriangularElement:
    """Antipode image of the rescaled f-side PBW monomial (descending order)."""
    got = cache.get(("sb", n))
    if got is None:
        coef = RF.one()
        for j, nj in enumerate(n):
            if nj:
                coef = coef * eng.pair_factor(j) ** nj
        got = _antipode_f_pbw(eng, n).scale(coef)
        cache[("sb", n)] = got
    return got


def _s_e_div_descending(eng: PBWEngine, n, cache: dict) -> TriangularElement:
    got = cache.get(("sediv", n))
    if got is None:
        coef = RF.one()
        for j, nj in enumerate(n):
            if nj:
                coef = coef * gauss_factorial(nj, eng.d_beta[j]).inverse()
        got = _antipode_e_pbw(eng, n).scale(coef)
        cache[("sediv", n)] = got
    return got


def _prefactor(eng: PBWEngine, m, mp) -> RF:
    out = RF.one()
    sign = 0
    for j in range(eng.n):
        sign += m[j] + mp[j]
        e = -eng.d_beta[j] * (m[j] * (m[j] - 1) // 2 + mp[j] * (mp[j] - 1) // 2)
        if e:
            out = out * RF.q_power(e)
    if sign % 2:
        out = out.scale(-1)
    return out


def t_element(module: ModuleRealization, alg=None, source: str = "") -> CentralElement:
    """Trace element of a module: generic by default, specialized when a
    specialized algebra is supplied."""
    eng = module.engine
    rs = module.rs
    cache: dict = {}
    support = {g for g, sp in module.spaces.items() if sp.pivots}
    gammas = set()
    for g1 in support:
        for g2 in support:
            d = tuple(b - a for a, b in zip(g1, g2))
            if all(v >= 0 for v in d):
                gammas.add(d)
    k2rho = eng.canon_k((2,) * rs.rank)
    total = TriangularElement.zero()
    for gamma in sorted(gammas, key=lambda g: (sum(g), g)):
        exps = eng.kostant_exponents(gamma)
        for m in exps:
            fdiv = _f_div(eng, m)
            amono = _a_mono(eng, m)
            for mp in exps:
                x = eng.canon_mul(
                    eng.canon_mul(fdiv, _s_e_div_descending(eng, mp, cache)),
                    k2rho)
                # partial traces of x per weight space
                diag: Dict[tuple, RF] = {}
                for idx in range(module.dim):
                    g, _ = module.basis[idx]
                    val = module.act_on_basis(x, idx).get(idx)
                    if val is None:
                        continue
                    w = diag.get(g)
                    diag[g] = val if w is None else w + val
                pref = _prefactor(eng, m, mp)
                sb = s_b_mono_descending(eng, mp, cache)
                for g0 in support:
                    gsrc = tuple(a + b for a, b in zip(g0, gamma))
                    tr = diag.get(gsrc)
                    if tr is None or tr.is_zero():
                        continue
                    nu = module.spaces[g0].weight
                    term = eng.canon_mul(
                        eng.canon_mul(amono,
                                      eng.canon_k(tuple(-2 * v for v in nu))),
                        sb).scale(pref * tr)
                    total = total + term
    if alg is None:
        return CentralElement(total, source or "t_M", "generic")
    return CentralElement(
        alg.specialize_element(total), source or "t_M", "specialized")


# ---------------------------------------------------------------------------
# centrality and the Harish-Chandra projection
# ---------------------------------------------------------------------------

def is_central(z, engine_or_alg) -> bool:
    """Exact commutator test against e_i, f_i and k on fundamental weights."""
    if isinstance(engine_or_alg, PBWEngine):
        eng = engine_or_alg
        gens = []
        for i in range(eng.rank):
            gens.append(eng.canon_e(i))
            gens.append(eng.canon_f(i))
            gens.append(eng.canon_k(
                tuple(1 if t == i else 0 for t in range(eng.rank))))
        for g in gens:
            if not (eng.canon_mul(z, g) - eng.canon_mul(g, z)).is_zero():
                return False
        return True
    alg = engine_or_alg
    return alg.is_central(z)


def certify(ce: CentralElement, engine_or_alg) -> CentralElement:
    if not is_central(ce.element, engine_or_alg):
        raise ArithmeticError(f"element {ce.source} failed the centrality test")
    ce.certified = True
    return ce


def hc_iota(z) -> dict:
    """Projection of a central element onto its k-span, as an element of
    the group algebra supported on doubled weights."""
    elem = z.element if isinstance(z, CentralElement) else z
    out: dict = {}
    for (nf, lam, me), c in elem.terms.items():
        if any(nf) or any(me):
            continue
        _check_2p(lam)
        w = out.get(lam)
        w = c if w is None else w + c
        if w.is_zero():
            out.pop(lam, None)
        else:
            out[lam] = w
    return out


def character_sum(module: ModuleRealization, scalars, orientation: int) -> dict:
    """Weight-character image: sum over module weights of the dimension
    times q^{orientation*(mu, 2*rho)} on e(orientation * 2*mu)."""
    if orientation not in (1, -1):
        raise ValueError("orientation must be +-1")
    rs = module.rs
    two_rho = (2,) * rs.rank
    out: dict = {}
    for mu, d in module.weight_character().items():
        exp = rs.ip_weight_weight(mu, two_rho)
        if exp.denominator != 1:
            raise ValueError("non-integral character exponent")
        key = tuple(orientation * 2 * v for v in mu)
        v = scalars.q_power(orientation * int(exp)) * scalars.from_int(d)
        w = out.get(key)
        out[key] = v if w is None else w + v
    return {k: v for k, v in out.items() if not v.is_zero()}


def resolve_orientation(module: ModuleRealization, iota: dict, scalars) -> Optional[int]:
    """Orientation of the character sum matching an honest projection."""
    for orientation in (1, -1):
        if ga_eq(character_sum(module, scalars, orientation), iota):
            return orientation
    return None


def exact_rank(vectors: List[dict]) -> int:
    """Rank of a list of group-algebra elements, by exact elimination."""
    keys = sorted({k for v in vectors for k in v})
    rows = [[v.get(k) for k in keys] for v in vectors]

    def get(r, c):
        x = rows[r][c]
        return x

    nrows, ncols = len(rows), len(keys)
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, nrows):
            x = get(r, c)
            if x is not None and not x.is_zero():
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        for r in range(nrows):
            if r == rank:
                continue
            x = get(r, c)
            if x is None or x.is_zero():
                continue
            f = x * inv
            for cc in range(ncols):
                a = rows[rank][cc]
                if a is None or a.is_zero():
                    continue
                b = rows[r][cc]
                prod = f * a
                rows[r][cc] = (-prod) if b is None else b - prod
        rank += 1
        if rank == nrows:
            break
    return rank


def hc_basis_check(iotas: List[dict]) -> bool:
    """True when the projected central elements are linearly independent."""
    return exact_rank(iotas) == len(iotas)
