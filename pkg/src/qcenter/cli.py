"""Batch verification suites with machine-readable reports.

Every suite builds its own contexts, runs exact checks, and emits a JSON
(or CSV) report.  Reports are deterministic for a fixed seed; the timing
block is the only nondeterministic field and can be suppressed.
"""

import argparse
import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .qscalar import RationalFunction as RF, build_context, gauss_factorial
from .rootlat import build_root_system
from .uqpbw import PBWEngine
from .modrep import build_irrep
from .uzeta import (
    SpecializedAlgebra,
    ThetaEmbedding,
    TwistAlgebra,
    is_g_invariant,
    valid_J_subsets,
    verify_rel_epsilon,
    verify_rel_zeta,
    xi_z,
)
from .center import (
    GenericScalars,
    hc_basis_check,
    hc_iota,
    is_central,
    is_twist_invariant,
    resolve_orientation,
    t_element,
)
from .frob import (
    TransposeFrobenius,
    build_prime_data,
    cbeta_adjunction_holds,
    counting_identities,
    zfr_crosscheck,
)

SCHEMA = "qc-report/1"
SUITES = ("drinfeld", "pbw", "rel-zeta", "rel-epsilon", "theta", "center",
          "frob", "counting")
DEFAULT_SEED = 20240801

COUNTING_TYPES = (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3),
                  ("C", 3), ("D", 4), ("G", 2), ("F", 4))
REL_GRID = ((("A", 1), (3, 4, 6, 8)),
            (("A", 2), (3, 4, 5, 6, 8)),
            (("B", 2), (6, 8)))
CENTER_GRID = ((("A", 1), ((1,), (2,), (3,)), (3, 4, 6)),
               (("A", 2), ((1, 0), (0, 1)), (4, 5)))
FROB_GRID = ((("A", 1), (3, 4, 6)), (("B", 2), (6,)))


# ---------------------------------------------------------------------------
# parameter parsing
# ---------------------------------------------------------------------------

def parse_type(s: str):
    s = s.strip()
    if not s or not s[0].isalpha():
        raise ValueError(f"bad type {s!r}, expected e.g. A2")
    if len(s) == 1:
        return s[0].upper(), None
    return s[0].upper(), int(s[1:])


def parse_ells(s: str):
    out = []
    for part in s.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parse_types(s: str):
    s = s.strip()
    if ".." in s:
        lo, hi = (parse_type(t) for t in s.split(".."))
        names = [t for t in COUNTING_TYPES]
        ilo = names.index(lo)
        ihi = names.index(hi)
        return names[ilo:ihi + 1]
    return [parse_type(t) for t in s.split(",")]


def parse_ints(s: str):
    return tuple(int(v) for v in s.split(","))


def _requested_grid(params, default_grid):
    """(letter, rank, ells) list, narrowed by explicit type/ell flags."""
    if params.get("type"):
        lt, rk = params["type"]
        ells = params.get("ells")
        if ells is None:
            ells = next((e for (t, e) in default_grid if t == (lt, rk)), None)
            if ells is None:
                raise ValueError(
                    f"no default orders for {lt}{rk}; pass --ell")
        return [((lt, rk), tuple(ells))]
    grid = [(t, e) for t, e in default_grid]
    if params.get("ells"):
        grid = [(t, tuple(params["ells"])) for t, _ in grid]
    return grid


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_drinfeld(params):
    bound = params.get("bound") or 3
    types = [params["type"]] if params.get("type") else [("A", 2), ("B", 2)]
    cases = []
    for lt, rk in types:
        rs = build_root_system(lt, rk)
        eng = PBWEngine(rs, params.get("word"))
        vecs = [m for m in _exp_box(eng.n, bound) if sum(m) <= bound]
        for m in vecs:
            for n in vecs:
                got = eng.pair_pbw(m, n)
                want = RF.zero()
                if m == n:
                    want = RF.one()
                    for j, mj in enumerate(m):
                        want = want * gauss_factorial(mj, eng.d_beta[j])
                        want = want * (eng.pair_factor(j) ** mj).inverse()
                        want = want * RF.q_power(
                            eng.d_beta[j] * (mj * (mj - 1) // 2))
                        if mj % 2:
                            want = want.scale(-1)
                ok = (got - want).is_zero()
                cases.append({
                    "case": f"{lt}{rk} tau(E{m}, F{n})",
                    "status": "pass" if ok else "fail"})
    return cases, {"word": "default longest-word decomposition"}


def _exp_box(n, bound):
    out = [()]
    for _ in range(n):
        out = [v + (x,) for v in out for x in range(bound + 1)]
    return [v for v in out if sum(v) <= bound]


def _rand_free(eng, rng, maxlen):
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


def suite_pbw(params):
    seed = params.get("seed", DEFAULT_SEED)
    types = [params["type"]] if params.get("type") else \
        [("A", 1), ("A", 2), ("B", 2)]
    nsamples = params.get("bound") or 100
    cases = []
    for lt, rk in types:
        rs = build_root_system(lt, rk)
        eng = PBWEngine(rs, params.get("word"))
        maxlen = 1 if (lt, rk) == ("B", 2) else 2
        rng = random.Random((seed, lt, rk).__repr__())
        fails = {"assoc": 0, "unit": 0, "antipode": 0, "braid": 0}
        for _ in range(nsamples):
            a = _rand_free(eng, rng, maxlen)
            b = _rand_free(eng, rng, maxlen)
            c = _rand_free(eng, rng, maxlen)
            lhs = eng.canon_of_free(eng.multiply(eng.multiply(a, b), c))
            rhs = eng.canon_of_free(eng.multiply(a, eng.multiply(b, c)))
            if not (lhs - rhs).is_zero():
                fails["assoc"] += 1
            u = eng.canon_of_free(eng.multiply(eng.free_unit(), a))
            if not (u - eng.canon_of_free(a)).is_zero():
                fails["unit"] += 1
            sab = eng.canon_of_free(eng.antipode(eng.multiply(a, b)))
            sba = eng.canon_of_free(
                eng.multiply(eng.antipode(b), eng.antipode(a)))
            if not (sab - sba).is_zero():
                fails["antipode"] += 1
            i = rng.randrange(eng.rank)
            tab = eng.canon_of_free(eng.braid_apply(i, eng.multiply(a, b)))
            tatb = eng.canon_of_free(
                eng.multiply(eng.braid_apply(i, a), eng.braid_apply(i, b)))
            back = eng.canon_of_free(
                eng.braid_apply(i, eng.braid_apply(i, a, inverse=True)))
            if not (tab - tatb).is_zero() or \
                    not (back - eng.canon_of_free(a)).is_zero():
                fails["braid"] += 1
        for law, cnt in sorted(fails.items()):
            cases.append({
                "case": f"{lt}{rk} {law} ({nsamples} samples)",
                "status": "pass" if cnt == 0 else "fail"})
    return cases, {"seed": seed}


def suite_rel_zeta(params):
    cases = []
    for (lt, rk), ells in _requested_grid(params, REL_GRID):
        rs = build_root_system(lt, rk)
        eng = PBWEngine(rs, params.get("word"))
        for ell in ells:
            ctx = build_context(rs, ell)
            for c in verify_rel_zeta(ctx, params.get("bound") or 2, eng):
                cases.append({"case": f"{lt}{rk} ell={ell} {c['case']}",
                              "status": c["status"]})
    return cases, {}


def _epsilon_expected(ctx) -> int:
    """Sign classification by the parity case split."""
    r, ell = ctx.r, ctx.ell
    d = max(ctx.root_system.d)
    if r % 2 and ell == 2 * r:
        return -1
    if d == 2 and r % 2 == 0 and (r // 2) % 2:
        return -1
    return 1


def suite_rel_epsilon(params):
    cases = []
    conventions = {}
    for (lt, rk), ells in _requested_grid(params, REL_GRID):
        rs = build_root_system(lt, rk)
        for ell in ells:
            ctx = build_context(rs, ell)
            ok = ctx.epsilon == _epsilon_expected(ctx)
            cases.append({
                "case": f"{lt}{rk} ell={ell} epsilon classification",
                "status": "pass" if ok else "fail"})
            conventions[f"{lt}{rk} ell={ell}"] = {"epsilon": ctx.epsilon}
            for c in verify_rel_epsilon(ctx, params.get("bound") or 2):
                cases.append({"case": f"{lt}{rk} ell={ell} {c['case']}",
                              "status": c["status"]})
    return cases, conventions


def _theta_invariant_sample(eng, ta, theta, rng):
    """Random invariant element of the twisted product."""
    x = ta.unit()
    for _ in range(rng.randrange(1, 3)):
        i = rng.randrange(eng.rank)
        pick = rng.randrange(3)
        if pick == 0:
            g = ta.mul(theta.theta_e(i), theta.theta_f(i))
        elif pick == 1:
            g = ta.mul(theta.theta_f(i), theta.theta_e(i))
        else:
            g = theta.theta_k(tuple(rng.choice([-1, 0, 1])
                                    for _ in range(eng.rank)))
        x = ta.mul(x, g)
    return x


def suite_theta(params):
    seed = params.get("seed", DEFAULT_SEED)
    types = [params["type"]] if params.get("type") else \
        [("A", 1), ("A", 2), ("B", 2)]
    cases = []
    conventions = {}
    for lt, rk in types:
        rs = build_root_system(lt, rk)
        eng = PBWEngine(rs, params.get("word"))
        subsets = [tuple(params["J"])] if params.get("J") is not None \
            else valid_J_subsets(rs)
        conventions[f"{lt}{rk}"] = {"valid_J": [list(J) for J in subsets]}
        for J in subsets:
            theta = ThetaEmbedding(eng, J)
            for name, ok in (("torus", theta.check_torus_relations()),
                             ("ef", theta.check_ef_relations()),
                             ("serre", theta.check_serre_relations())):
                cases.append({
                    "case": f"{lt}{rk} J={list(J)} {name} relations",
                    "status": "pass" if ok else "fail"})
            esigns = [theta.root_vector_sign(j, "e") for j in range(eng.n)]
            fsigns = [theta.root_vector_sign(j, "sf") for j in range(eng.n)]
            conventions[f"{lt}{rk} J={list(J)}"] = {
                "root_vector_signs_e": esigns,
                "root_vector_signs_sf": fsigns}
            cases.append({
                "case": f"{lt}{rk} J={list(J)} root-vector signs in {{-1,1}}",
                "status": "pass" if all(s in (-1, 1)
                                        for s in esigns + fsigns)
                else "fail"})
        # projection multiplicativity on invariant samples
        ta = TwistAlgebra(eng)
        theta = ThetaEmbedding(eng)
        rng = random.Random((seed, lt, rk, "xi").__repr__())
        bad = 0
        nsamples = 10
        for _ in range(nsamples):
            x = _theta_invariant_sample(eng, ta, theta, rng)
            y = _theta_invariant_sample(eng, ta, theta, rng)
            lhs = xi_z(eng, ta.mul(x, y))
            rhs = eng.canon_mul(xi_z(eng, x), xi_z(eng, y))
            if not (lhs - rhs).is_zero():
                bad += 1
        cases.append({
            "case": f"{lt}{rk} projection multiplicativity "
                    f"({nsamples} samples)",
            "status": "pass" if bad == 0 else "fail"})
        noninv = next((i for i in range(eng.rank)
                       if not is_g_invariant(eng, eng.canon_e(i))), None)
        if noninv is not None:
            try:
                xi_z(eng, ta.element(eng.canon_e(noninv)))
                rejected = False
            except ValueError:
                rejected = True
            cases.append({
                "case": f"{lt}{rk} projection rejects non-invariant input",
                "status": "pass" if rejected else "fail"})
    return cases, conventions


def _center_grid(params):
    if params.get("type"):
        lt, rk = params["type"]
        lams = [params["lam"]] if params.get("lam") else \
            next((l for (t, l, _) in CENTER_GRID if t == (lt, rk)),
                 ((1,) * rk,))
        ells = params.get("ells") or next(
            (e for (t, _, e) in CENTER_GRID if t == (lt, rk)), (3, 4))
        return [((lt, rk), tuple(lams), tuple(ells))]
    return list(CENTER_GRID)


def suite_center(params):
    cases = []
    conventions = {}
    scalars = GenericScalars()
    for (lt, rk), lams, ells in _center_grid(params):
        rs = build_root_system(lt, rk)
        eng = PBWEngine(rs, params.get("word"))
        iotas = []
        for lam in lams:
            module = build_irrep(eng, tuple(lam))
            ce = t_element(module, source=f"t_L{tuple(lam)}")
            ok = is_central(ce.element, eng)
            cases.append({
                "case": f"{lt}{rk} t_L{tuple(lam)} generic centrality",
                "status": "pass" if ok else "fail"})
            cases.append({
                "case": f"{lt}{rk} t_L{tuple(lam)} sign-group invariance",
                "status": "pass" if is_g_invariant(eng, ce.element)
                else "fail"})
            iota = hc_iota(ce)
            orient = resolve_orientation(module, iota, scalars)
            conventions[f"{lt}{rk} t_L{tuple(lam)}"] = {
                "orientation": orient}
            cases.append({
                "case": f"{lt}{rk} t_L{tuple(lam)} projected character sum",
                "status": "pass" if orient is not None else "fail"})
            cases.append({
                "case": f"{lt}{rk} t_L{tuple(lam)} twisted Weyl invariance",
                "status": "pass"
                if is_twist_invariant(rs, iota, scalars) else "fail"})
            iotas.append(iota)
            for ell in ells:
                ctx = build_context(rs, ell)
                alg = SpecializedAlgebra(eng, ctx, f"U_zeta({lt}{rk})")
                cases.append({
                    "case": f"{lt}{rk} t_L{tuple(lam)} central at ell={ell}",
                    "status": "pass" if alg.is_central(ce.element)
                    else "fail"})
        if len(iotas) > 1:
            cases.append({
                "case": f"{lt}{rk} projections linearly independent",
                "status": "pass" if hc_basis_check(iotas) else "fail"})
    return cases, conventions


def suite_frob(params):
    seed = params.get("seed", DEFAULT_SEED)
    cases = []
    conventions = {}
    for (lt, rk), ells in _requested_grid(params, FROB_GRID):
        rs = build_root_system(lt, rk)
        for ell in ells:
            ctx = build_context(rs, ell)
            data = build_prime_data(rs, ctx)
            conventions[f"{lt}{rk} ell={ell}"] = {
                "prime_type": f"{data.prime.letter}{data.prime.rank}",
                "r_simple": list(data.r_simple),
                "m": data.m}
            # membership against direct centrality
            max_total = 2 if (lt, rk) == ("B", 2) else None
            grid = zfr_crosscheck(ctx, bound=params.get("bound") or 2,
                                  max_total=max_total)
            bad = [c for c in grid if c["status"] == "fail"]
            cases.append({
                "case": f"{lt}{rk} ell={ell} membership crosscheck "
                        f"({len(grid)} grid points)",
                "status": "pass" if not bad else "fail"})
            if ell % 2:
                allc = all(c["central"] for c in grid)
                cases.append({
                    "case": f"{lt}{rk} ell={ell} odd order: all grid "
                            f"monomials central",
                    "status": "pass" if allc else "fail"})
            # per-root constants
            cb = all(cbeta_adjunction_holds(ctx, idx, n)
                     for idx in range(len(rs.positive_roots))
                     for n in range(4))
            cases.append({
                "case": f"{lt}{rk} ell={ell} per-root constant adjunction",
                "status": "pass" if cb else "fail"})
            # embedding multiplicativity on monomial pairs
            eng = PBWEngine(rs, params.get("word"))
            tf = TransposeFrobenius(eng, ctx, data)
            rng = random.Random((seed, lt, rk, ell).__repr__())
            bad = 0
            nsamples = 50
            for _ in range(nsamples):
                u = _rand_dk_monomial(tf, rng)
                v = _rand_dk_monomial(tf, rng)
                lhs = tf.txi(tf.dk_mul(u, v))
                rhs = tf.base_alg.mul(tf.txi(u), tf.txi(v))
                if not tf.base_alg.sub(lhs, rhs).is_zero():
                    bad += 1
            cases.append({
                "case": f"{lt}{rk} ell={ell} embedding multiplicativity "
                        f"({nsamples} samples)",
                "status": "pass" if bad == 0 else "fail"})
    return cases, conventions


def _rand_dk_monomial(tf, rng):
    eng = tf.prime
    m = tuple(rng.randrange(0, 2) for _ in range(eng.n))
    mp = tuple(rng.randrange(0, 2) for _ in range(eng.n))
    mu = tuple(rng.choice([-1, 0, 1]) for _ in range(eng.rank))
    return tf.dk_monomial(m, mu, mp).scale(
        tf.ctx.field.from_rational(rng.randrange(1, 4)))


def _counting_chunk(args):
    t, ells = args
    return counting_identities([t], ells)


def suite_counting(params):
    types = params.get("types") or \
        ([params["type"]] if params.get("type") else list(COUNTING_TYPES))
    ells = params.get("ells") or list(range(2, 25))
    jobs = params.get("jobs") or 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_counting_chunk, [(t, ells) for t in types])
        rows = [r for chunk in chunks for r in chunk]
    else:
        rows = counting_identities(types, ells)
    return rows, {}


SUITE_FUNCS = {
    "drinfeld": suite_drinfeld,
    "pbw": suite_pbw,
    "rel-zeta": suite_rel_zeta,
    "rel-epsilon": suite_rel_epsilon,
    "theta": suite_theta,
    "center": suite_center,
    "frob": suite_frob,
    "counting": suite_counting,
}


# ---------------------------------------------------------------------------
# report assembly and output
# ---------------------------------------------------------------------------

def run_suite(name: str, params: dict) -> dict:
    if name == "all":
        subs = [run_suite(s, params) for s in SUITES]
        cases = [dict(c, case=f"{r['suite']}: {c['case']}")
                 for r in subs for c in r["cases"]]
        conventions = {r["suite"]: r["conventions"] for r in subs}
    else:
        t0 = time.time()
        cases, conventions = SUITE_FUNCS[name](params)
        elapsed = time.time() - t0
    report = {
        "schema": SCHEMA,
        "suite": name,
        "params": _printable_params(params),
        "cases": cases,
        "conventions": conventions,
        "status": "pass" if not any(c.get("status") == "fail"
                                    for c in cases) else "fail",
    }
    if not params.get("no_timing"):
        if name == "all":
            report["timing"] = {"seconds": sum(
                r.get("timing", {}).get("seconds", 0) for r in subs)}
        else:
            report["timing"] = {"seconds": round(elapsed, 3)}
    return report


def _printable_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if v is None or k in ("no_timing",):
            continue
        if k == "type":
            out["type"] = f"{v[0]}{v[1]}"
        elif k == "types":
            out["types"] = [f"{l}{r}" for l, r in v]
        else:
            out[k] = list(v) if isinstance(v, tuple) else v
    return out


def emit(report: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        rows = report["cases"]
        preferred = ["case", "type", "ell", "m", "P/P'", "P'/P''",
                     "Q1/(Q1&2Q)", "degree", "gamma", "member", "central",
                     "identity", "status"]
        seen = {k for r in rows for k in r}
        keys = [k for k in preferred if k in seen] + \
            sorted(k for k in seen if k not in preferred)
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        for r in rows:
            writer.writerow(r)
        text = buf.getvalue()
    else:
        text = json.dumps(report, sort_keys=True, indent=2,
                          default=str) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument surface
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--type", type=parse_type, default=None,
                   help="root system, e.g. A2")
    p.add_argument("--types", type=parse_types, default=None,
                   help="comma list or range, e.g. A1..G2")
    p.add_argument("--rank", type=int, default=None,
                   help="rank when --type gives only a letter")
    p.add_argument("--ell", dest="ells", type=parse_ells, default=None,
                   help="order(s) of the root of unity, e.g. 4 or 2..24")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=parse_ints, default=None,
                   help="highest weight, e.g. 1,0")
    p.add_argument("--word", type=parse_ints, default=None,
                   help="reduced word for the longest element, e.g. 0,1,0")
    p.add_argument("--J", type=parse_ints, default=None,
                   help="twist subset, e.g. 0,1 (empty: pass '')")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_const", dest="fmt",
                   const="json", default="json")
    p.add_argument("--csv", action="store_const", dest="fmt", const="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--no-timing", action="store_true", dest="no_timing")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qc",
        description="exact verification suites for the quantized "
                    "enveloping algebra center at roots of unity")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("suite", choices=SUITES + ("all",))
    _add_common(run)

    verify = sub.add_parser("verify", help="aliases for relation suites")
    verify.add_argument("suite", choices=("rel-zeta", "rel-epsilon", "theta"))
    _add_common(verify)

    frob = sub.add_parser("frob", help="scaled-system layer commands")
    frob.add_argument("action", choices=("table", "crosscheck"))
    _add_common(frob)

    center = sub.add_parser("center", help="center layer commands")
    center.add_argument("action", choices=("t-element",))
    _add_common(center)

    return parser


def _params_of(args) -> dict:
    t = args.type
    if t is not None:
        if args.rank is not None:
            t = (t[0], args.rank)
        if t[1] is None:
            raise ValueError(f"type {t[0]} needs a rank")
    return {
        "type": t,
        "types": args.types,
        "ells": args.ells,
        "bound": args.bound,
        "lam": args.lam,
        "word": args.word,
        "J": args.J,
        "seed": args.seed,
        "jobs": args.jobs,
        "no_timing": args.no_timing,
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run":
        suite = args.suite
    elif args.command == "verify":
        suite = args.suite
    elif args.command == "frob":
        suite = "counting" if args.action == "table" else "frob"
    else:
        suite = "center"
    try:
        report = run_suite(suite, _params_of(args))
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    emit(report, args.fmt, args.out)
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
