"""Exact scalar arithmetic for quantum-group computations.

Everything here works over the rationals: Laurent polynomials in the
quantum parameter q, reduced fractions of such polynomials, and elements
of cyclotomic number fields Q(zeta_ell).  No floating point is used
anywhere, so every downstream identity check is an exact yes/no.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient lists over Q, index = degree)
# ---------------------------------------------------------------------------

def _dense_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return _dense_trim(out)


def _dense_divmod(a, b):
    """Quotient and remainder of dense polynomials over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / Fraction(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv_lead
        if coef:
            q[i] = coef
            for j, bj in enumerate(b):
                if bj:
                    a[i + j] -= coef * bj
    return _dense_trim(q), _dense_trim(a)


def _dense_gcd(a, b):
    """Monic gcd of dense polynomials over Q."""
    a, b = list(a), list(b)
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial in q with rational coefficients.

    Stored as a sparse map exponent -> nonzero Fraction.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Dict[int, Fraction] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if isinstance(v, Fraction) and v.denominator == 1:
                    v = v.numerator
                if v:
                    c[int(e)] = v
        self.c = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(v) -> "LaurentPoly":
        return LaurentPoly({0: v})

    @staticmethod
    def q_power(e: int, coeff=1) -> "LaurentPoly":
        return LaurentPoly({e: coeff})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == {0: Fraction(1)}

    def min_exp(self) -> int:
        return min(self.c)

    def max_exp(self) -> int:
        return max(self.c)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = LaurentPoly()
        out.c = c
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly()
        out.c = {e: -v for e, v in self.c.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.c or not other.c:
            return LaurentPoly()
        c: Dict[int, Fraction] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        out = LaurentPoly()
        out.c = c
        return out

    def scale(self, v) -> "LaurentPoly":
        if isinstance(v, Fraction) and v.denominator == 1:
            v = v.numerator
        out = LaurentPoly()
        if v:
            out.c = {e: w * v for e, w in self.c.items()}
        return out

    def shift(self, k: int) -> "LaurentPoly":
        out = LaurentPoly()
        out.c = {e + k: v for e, v in self.c.items()}
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def subs_neg_q(self) -> "LaurentPoly":
        """Substitute q -> -q."""
        out = LaurentPoly()
        out.c = {e: (v if e % 2 == 0 else -v) for e, v in self.c.items()}
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                parts.append(f"{v}")
            elif e == 1:
                parts.append(f"{v}*q")
            else:
                parts.append(f"{v}*q^{e}")
        return " + ".join(parts)

    # -- dense conversion ----------------------------------------------------

    def to_dense(self) -> Tuple[int, list]:
        """Return (shift, dense coeff list) with q^shift * poly = self."""
        if not self.c:
            return 0, []
        lo = self.min_exp()
        dense = [0] * (self.max_exp() - lo + 1)
        for e, v in self.c.items():
            dense[e - lo] = v
        return lo, dense

    @staticmethod
    def from_dense(shift: int, dense: Iterable) -> "LaurentPoly":
        return LaurentPoly({shift + i: v for i, v in enumerate(dense)})


# ---------------------------------------------------------------------------
# rational functions in q
# ---------------------------------------------------------------------------

def _divide_cyclic(p: LaurentPoly, m: int) -> LaurentPoly | None:
    """Exact quotient p / (q^m - 1), or None; linear-time fold."""
    if p.is_zero():
        return p
    lo, dense = p.to_dense()
    deg = len(dense) - 1
    if deg < m:
        return None
    s = [0] * (deg - m + 1)
    # p = s*q^m - s: p_j = s_{j-m} - s_j
    for j in range(deg, m - 1, -1):
        sj = s[j] if j < len(s) else 0
        s[j - m] = dense[j] + sj
    # verify the low coefficients: p_j = -s_j for j < m
    for j in range(m):
        sj = s[j] if j < len(s) else 0
        if dense[j] != -sj:
            return None
    return LaurentPoly.from_dense(lo, s)


def _divide_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient p / d as Laurent polynomials, or None."""
    if p.is_zero():
        return p
    plo, pd = p.to_dense()
    dlo, dd = d.to_dense()
    quo, rem = _dense_divmod(pd, dd)
    if rem:
        return None
    return LaurentPoly.from_dense(plo - dlo, quo)


def _extract_atoms(p: LaurentPoly):
    """Factor p = c * q^shift * prod (q^{2k}-1)^{e_k} * residual.

    Greedy, largest atom first; returns (atoms, residual or None, unit)
    where unit is a Laurent monomial collecting c * q^shift.
    """
    atoms: Dict[int, int] = {}
    lo, dense = p.to_dense()
    cur = LaurentPoly.from_dense(0, dense)
    k = (len(dense) - 1) // 2
    while k >= 1:
        quo = _divide_cyclic(cur, 2 * k)
        if quo is not None:
            atoms[k] = atoms.get(k, 0) + 1
            cur = quo
            k = min(k, (cur.max_exp() - cur.min_exp()) // 2) if not cur.is_zero() else 0
        else:
            k -= 1
    clo, cd = cur.to_dense()
    lo += clo
    if len(cd) == 1:
        return atoms, None, LaurentPoly.q_power(lo, cd[0])
    return atoms, LaurentPoly.from_dense(0, cd), LaurentPoly.q_power(lo)


def _residual_cofactor(res: LaurentPoly):
    """Find K and cofactor with res * cofactor = q^{2K} - 1, or None.

    Succeeds whenever res is a product of cyclotomic polynomials other
    than q - 1, which covers quantum integers and their products.
    """
    deg = res.max_exp()
    for K in range(max(1, (deg + 1) // 2), 4 * deg + 3):
        atom = LaurentPoly({2 * K: 1, 0: -1})
        cof = _divide_exact(atom, res)
        if cof is not None:
            return K, cof
    return None


class RationalFunction:
    """Rational function in q, tuned to the denominators that occur in
    quantum-group computations.

    The denominator is kept as a product of cyclic atoms (q^{2k} - 1)^e
    together with an optional residual polynomial (from generic inversion).
    Cancellation uses cheap exact-division attempts, never polynomial gcd;
    equality is decided by cross-multiplication.
    """

    __slots__ = ("n", "atoms", "dpoly")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        self.n = num
        self.atoms = {}
        self.dpoly = None  # None means 1
        if den is not None and not den.is_one():
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            self.atoms, self.dpoly, unit = _extract_atoms(den)
            (a, c), = unit.c.items()
            self.n = self.n.shift(-a).scale(Fraction(1, 1) / c)
            if self.dpoly is not None:
                found = _residual_cofactor(self.dpoly)
                if found is not None:
                    K, cof = found
                    self.n = self.n * cof
                    self.atoms[K] = self.atoms.get(K, 0) + 1
                    self.dpoly = None
            self._cancel()

    @staticmethod
    def _make(num: LaurentPoly, atoms, dpoly) -> "RationalFunction":
        out = RationalFunction.__new__(RationalFunction)
        out.n = num
        if num.is_zero():
            out.atoms = {}
            out.dpoly = None
        else:
            out.atoms = atoms
            out.dpoly = dpoly
        return out

    def _cancel(self):
        if self.n.is_zero():
            self.atoms = {}
            self.dpoly = None
            return
        changed = True
        while changed:
            changed = False
            if self.atoms and sum(self.n.c.values()) == 0:
                # q=1 is a root, so a cyclic factor may cancel
                for k in list(self.atoms):
                    while self.atoms.get(k, 0) > 0:
                        quo = _divide_cyclic(self.n, 2 * k)
                        if quo is None:
                            break
                        self.n = quo
                        self.atoms[k] -= 1
                        changed = True
                        if sum(self.n.c.values()) != 0:
                            changed = False
                            if self.atoms.get(k) == 0:
                                del self.atoms[k]
                            return self._finish_cancel()
                    if self.atoms.get(k) == 0:
                        del self.atoms[k]
            if self.dpoly is not None:
                quo = _divide_exact(self.n, self.dpoly)
                if quo is not None:
                    self.n = quo
                    self.dpoly = None
                    changed = True

    def _finish_cancel(self):
        # numerator no longer vanishes at q=1; only the residual can cancel
        if self.dpoly is not None:
            quo = _divide_exact(self.n, self.dpoly)
            if quo is not None:
                self.n = quo
                self.dpoly = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(LaurentPoly.zero())

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction(LaurentPoly.one())

    @staticmethod
    def const(v) -> "RationalFunction":
        return RationalFunction(LaurentPoly.const(v))

    @staticmethod
    def q_power(e: int, coeff=1) -> "RationalFunction":
        return RationalFunction(LaurentPoly.q_power(e, coeff))

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RationalFunction":
        return RationalFunction(p)

    # -- materialized numerator/denominator -----------------------------------

    @property
    def num(self) -> LaurentPoly:
        return self.n

    @property
    def den(self) -> LaurentPoly:
        out = LaurentPoly.one()
        for k, e in self.atoms.items():
            atom = LaurentPoly({2 * k: 1, 0: -1})
            for _ in range(e):
                out = out * atom
        if self.dpoly is not None:
            out = out * self.dpoly
        return out

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.n.is_zero()

    def is_one(self) -> bool:
        if not self.atoms and self.dpoly is None:
            return self.n.is_one()
        return self == RationalFunction.one()

    def is_laurent(self) -> bool:
        """True when the value lies in Q[q, q^{-1}]."""
        if self.n.is_zero():
            return True
        self._cancel()
        if self.atoms:
            return False
        return self.dpoly is None or len(self.dpoly.c) == 1

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.n.is_zero():
            return other
        if other.n.is_zero():
            return self
        if self.atoms == other.atoms and self.dpoly == other.dpoly:
            return RationalFunction._make(
                self.n + other.n, dict(self.atoms), self.dpoly)
        # common denominator: atom-wise max, product of distinct residuals
        atoms = dict(self.atoms)
        for k, e in other.atoms.items():
            atoms[k] = max(atoms.get(k, 0), e)
        n1, n2 = self.n, other.n
        for k, e in atoms.items():
            atom = LaurentPoly({2 * k: 1, 0: -1})
            for _ in range(e - self.atoms.get(k, 0)):
                n1 = n1 * atom
            for _ in range(e - other.atoms.get(k, 0)):
                n2 = n2 * atom
        if self.dpoly == other.dpoly:
            dp = self.dpoly
        else:
            if other.dpoly is not None:
                n1 = n1 * other.dpoly
            if self.dpoly is not None:
                n2 = n2 * self.dpoly
            if self.dpoly is None:
                dp = other.dpoly
            elif other.dpoly is None:
                dp = self.dpoly
            else:
                dp = self.dpoly * other.dpoly
        return RationalFunction._make(n1 + n2, atoms, dp)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._make(-self.n, dict(self.atoms), self.dpoly)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if self.n.is_zero() or other.n.is_zero():
            return RationalFunction.zero()
        atoms = dict(self.atoms)
        for k, e in other.atoms.items():
            atoms[k] = atoms.get(k, 0) + e
        if self.dpoly is None:
            dp = other.dpoly
        elif other.dpoly is None:
            dp = self.dpoly
        else:
            dp = self.dpoly * other.dpoly
        out = RationalFunction._make(self.n * other.n, atoms, dp)
        if out.atoms or out.dpoly is not None:
            out._cancel()
        return out

    def inverse(self) -> "RationalFunction":
        if self.n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        atoms, res, unit = _extract_atoms(self.n)
        (a, c), = unit.c.items()
        num = self.den.shift(-a).scale(Fraction(1, 1) / c)
        if res is not None:
            found = _residual_cofactor(res)
            if found is not None:
                K, cof = found
                num = num * cof
                atoms[K] = atoms.get(K, 0) + 1
                res = None
        out = RationalFunction._make(num, atoms, res)
        out._cancel()
        return out

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, v) -> "RationalFunction":
        num = self.n.scale(v)
        if num.is_zero():
            return RationalFunction.zero()
        return RationalFunction._make(num, dict(self.atoms), self.dpoly)

    def subs_neg_q(self) -> "RationalFunction":
        # the cyclic atoms are even, hence invariant under q -> -q
        dp = None if self.dpoly is None else self.dpoly.subs_neg_q()
        return RationalFunction._make(self.n.subs_neg_q(), dict(self.atoms), dp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.n.is_zero():
            return other.n.is_zero()
        if other.n.is_zero():
            return False
        if (self.atoms == other.atoms and self.dpoly == other.dpoly):
            return self.n == other.n
        return self.n * other.den == other.n * self.den

    def __repr__(self):
        if not self.atoms and self.dpoly is None:
            return repr(self.n)
        return f"({self.n!r})/({self.den!r})"


RF = RationalFunction


# ---------------------------------------------------------------------------
# Gaussian integers and factorials
# ---------------------------------------------------------------------------

def gauss_int(n: int, d: int = 1) -> RationalFunction:
    """Balanced q-integer [n] in the variable q^d.

    [n] = (q^{dn} - q^{-dn})/(q^d - q^{-d}) = q^{d(n-1)} + ... + q^{-d(n-1)}.
    """
    if n < 0:
        raise ValueError("gauss_int requires n >= 0")
    if d <= 0:
        raise ValueError("gauss_int requires d >= 1")
    return RationalFunction(
        LaurentPoly({d * (n - 1 - 2 * k): Fraction(1) for k in range(n)})
    )


def gauss_factorial(n: int, d: int = 1) -> RationalFunction:
    """Balanced q-factorial [n]! in the variable q^d."""
    if n < 0:
        raise ValueError("gauss_factorial requires n >= 0")
    out = RationalFunction.one()
    for k in range(2, n + 1):
        out = out * gauss_int(k, d)
    return out


def gauss_binomial(n: int, k: int, d: int = 1) -> RationalFunction:
    """Balanced q-binomial coefficient in the variable q^d."""
    if k < 0 or k > n:
        return RationalFunction.zero()
    num = RationalFunction.one()
    for j in range(k):
        num = num * gauss_int(n - j, d)
    return num / gauss_factorial(k, d)


# ---------------------------------------------------------------------------
# cyclotomic fields
# ---------------------------------------------------------------------------

def _cyclotomic_dense(ell: int) -> list:
    """Dense integer coefficients of the ell-th cyclotomic polynomial."""
    # x^ell - 1 divided by the product of Phi_d over proper divisors d.
    num = [Fraction(-1)] + [Fraction(0)] * (ell - 1) + [Fraction(1)]
    for d in range(1, ell):
        if ell % d == 0:
            q, r = _dense_divmod(num, _cyclotomic_dense(d))
            assert not r
            num = q
    return num


class CyclotomicField:
    """The number field Q(zeta_ell), zeta_ell a primitive ell-th root of 1.

    Elements are residues modulo the ell-th cyclotomic polynomial, stored
    as coefficient tuples of length phi(ell).
    """

    def __init__(self, ell: int):
        if ell < 1:
            raise ValueError("order must be a positive integer")
        self.ell = ell
        self.modulus = _cyclotomic_dense(ell)
        self.degree = len(self.modulus) - 1
        # reduction table for x^k, degree <= k < 2*degree - 1
        self._xpow = {}
        cur = [Fraction(0)] * self.degree
        if self.degree == 1:
            cur0 = [-self.modulus[0]]
            self._xpow[1] = cur0
        for k in range(self.degree, 2 * self.degree):
            mono = [Fraction(0)] * k + [Fraction(1)]
            _, r = _dense_divmod(mono, self.modulus)
            r = list(r) + [Fraction(0)] * (self.degree - len(r))
            self._xpow[k] = r
        self._zeta_pows = None

    def element(self, coeffs) -> "CyclotomicNumber":
        c = list(coeffs) + [Fraction(0)] * (self.degree - len(coeffs))
        return CyclotomicNumber(self, tuple(Fraction(v) for v in c[: self.degree]))

    def zero(self) -> "CyclotomicNumber":
        return self.element([])

    def one(self) -> "CyclotomicNumber":
        return self.element([Fraction(1)])

    def from_rational(self, v) -> "CyclotomicNumber":
        return self.element([Fraction(v)])

    def zeta(self) -> "CyclotomicNumber":
        if self.degree == 1:
            # Phi_1 = x - 1 or Phi_2 = x + 1
            return self.from_rational(-self.modulus[0])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return self.element(c)

    def zeta_power(self, e: int) -> "CyclotomicNumber":
        """zeta^e, using zeta^ell = 1."""
        if self._zeta_pows is None:
            pows = [self.one()]
            z = self.zeta()
            for _ in range(self.ell - 1):
                pows.append(pows[-1] * z)
            self._zeta_pows = pows
        return self._zeta_pows[e % self.ell]

    def _reduce(self, dense) -> tuple:
        out = [Fraction(0)] * self.degree
        for k, v in enumerate(dense):
            if not v:
                continue
            if k < self.degree:
                out[k] += v
            else:
                for j, w in enumerate(self._xpow[k]):
                    if w:
                        out[j] += v * w
        return tuple(out)

    def evaluate_laurent(self, p: LaurentPoly) -> "CyclotomicNumber":
        """Evaluate a Laurent polynomial at zeta."""
        out = self.zero()
        for e, v in p.c.items():
            out = out + self.zeta_power(e).scale(v)
        return out

    def evaluate_at(self, p: LaurentPoly, z: "CyclotomicNumber") -> "CyclotomicNumber":
        """Evaluate a Laurent polynomial at an arbitrary invertible element."""
        out = self.zero()
        zinv = None
        for e, v in sorted(p.c.items()):
            if e >= 0:
                out = out + (z ** e).scale(v)
            else:
                if zinv is None:
                    zinv = z.inverse()
                out = out + (zinv ** (-e)).scale(v)
        return out

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and self.ell == other.ell

    def __hash__(self):
        return hash(("CyclotomicField", self.ell))

    def __repr__(self):
        return f"CyclotomicField({self.ell})"


class CyclotomicNumber:
    """Element of a cyclotomic field, exact rational coordinates."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)

    def is_rational(self) -> bool:
        return all(v == 0 for v in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def __add__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        return CyclotomicNumber(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        return self + (-other)

    def __mul__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        n = self.field.degree
        dense = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    dense[i + j] += a * b
        return CyclotomicNumber(self.field, self.field._reduce(dense))

    def scale(self, v) -> "CyclotomicNumber":
        v = Fraction(v)
        return CyclotomicNumber(self.field, tuple(a * v for a in self.coeffs))

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid against the (irreducible) modulus
        a = list(self.field.modulus)
        b = _dense_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = _dense_divmod(a, b)
            if not r:
                break
            s = _dense_trim(
                [
                    (s0[i] if i < len(s0) else Fraction(0))
                    - sum(
                        q[j] * s1[i - j]
                        for j in range(len(q))
                        if 0 <= i - j < len(s1)
                    )
                    for i in range(max(len(s0), len(q) + len(s1) - 1))
                ]
            )
            a, b = b, r
            s0, s1 = s1, s
        assert len(b) == 1, "modulus not coprime with element"
        inv = [c / b[0] for c in s1]
        return CyclotomicNumber(self.field, self.field._reduce(inv))

    def __truediv__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        return self * other.inverse()

    def __pow__(self, n: int) -> "CyclotomicNumber":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def multiplicative_order(self, bound: int = 10_000) -> int:
        """Order of a root of unity, by direct exponentiation."""
        one = self.field.one()
        cur = self
        for k in range(1, bound + 1):
            if cur == one:
                return k
            cur = cur * self
        raise ValueError("element has no small multiplicative order")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclotomicNumber)
            and self.field.ell == other.field.ell
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.ell, self.coeffs))

    def __repr__(self):
        parts = []
        for i, v in enumerate(self.coeffs):
            if v:
                parts.append(f"{v}" if i == 0 else f"{v}*z^{i}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# specialization q -> root of unity
# ---------------------------------------------------------------------------

def _divide_out(p: LaurentPoly, minpoly_dense: list) -> LaurentPoly:
    """Exact division of a Laurent polynomial by an ordinary polynomial."""
    lo, dense = p.to_dense()
    q, r = _dense_divmod(dense, minpoly_dense)
    if r:
        raise ArithmeticError("division not exact")
    return LaurentPoly.from_dense(lo, q)


class SpecializationPole(ArithmeticError):
    """Raised when a rational function has a genuine pole at the target."""


def specialize_scalar(
    f: RationalFunction, field: CyclotomicField, z: CyclotomicNumber | None = None,
    minpoly: list | None = None,
) -> CyclotomicNumber:
    """Evaluate a rational function in q at a root of unity z in the field.

    Common factors of the minimal polynomial of z are cancelled exactly
    between numerator and denominator; a residual zero denominator raises
    SpecializationPole.
    """
    if z is None:
        z = field.zeta()
        minpoly = field.modulus
    if minpoly is None:
        raise ValueError("minpoly required for a non-generator target")
    num, den = f.num, f.den
    while True:
        dval = field.evaluate_at(den, z)
        if not dval.is_zero():
            break
        try:
            den = _divide_out(den, minpoly)
            num = _divide_out(num, minpoly)
        except ArithmeticError:
            raise SpecializationPole(f"pole at specialization: {f!r}")
    return field.evaluate_at(num, z) / dval


# ---------------------------------------------------------------------------
# root-of-unity context
# ---------------------------------------------------------------------------

@dataclass
class RootOfUnityContext:
    """Numerical data attached to a root system and an order ell >= 2.

    zeta is a primitive ell-th root of unity, r the order of zeta^2.
    Per positive root beta: d_beta (half squared length), zeta_beta =
    zeta^{d_beta}, ell_beta its order, r_beta the order of zeta_beta^2,
    eta_beta = zeta_beta^{r_beta} (always +-1).  epsilon is the sign
    zeta_alpha^{r_alpha^2} for alpha whose rescaled image is short.
    """

    root_system: object
    ell: int
    field: CyclotomicField
    zeta: CyclotomicNumber
    r: int
    d: int
    d_beta: tuple
    ell_beta: tuple
    r_beta: tuple
    eta_beta: tuple       # entries +1 / -1 as ints
    epsilon: int          # +1 / -1
    epsilon_beta: tuple   # zeta_beta^{r_beta^2} per positive root, as ints
    case: str             # "odd", "even-shifted", "even-plain"
    delta1_plus: tuple    # indices of positive roots in Delta_1^+

    def zeta_power(self, e: int) -> CyclotomicNumber:
        return self.field.zeta_power(e)


def _sign_of(x: CyclotomicNumber) -> int:
    if x == x.field.one():
        return 1
    if x == (-x.field.one()):
        return -1
    raise ValueError("expected +-1")


def build_context(root_system, ell: int) -> RootOfUnityContext:
    """Construct the root-of-unity context, enforcing r > d."""
    if ell < 2:
        raise ValueError("order must be >= 2")
    rs = root_system
    d = max(rs.d)
    field = CyclotomicField(ell)
    zeta = field.zeta()
    r = (zeta * zeta).multiplicative_order(2 * ell)
    assert r == (ell if ell % 2 else ell // 2)
    if r <= d:
        raise ValueError(
            f"order of zeta^2 is {r}, must exceed the lacing number {d}"
        )
    d_beta, ell_beta, r_beta, eta_beta, eps_beta = [], [], [], [], []
    for idx in range(len(rs.positive_roots)):
        db = rs.d_alpha(idx)
        zb = field.zeta_power(db)
        lb = zb.multiplicative_order(2 * ell)
        rb = (zb * zb).multiplicative_order(2 * ell)
        d_beta.append(db)
        ell_beta.append(lb)
        r_beta.append(rb)
        eta_beta.append(_sign_of(zb ** rb))
        eps_beta.append(_sign_of(zb ** (rb * rb)))
    # which roots become short after rescaling by r_beta
    scaled_len = [r_beta[i] ** 2 * d_beta[i] for i in range(len(d_beta))]
    short_after = min(scaled_len)
    eps_vals = {
        eps_beta[i] for i in range(len(d_beta)) if scaled_len[i] == short_after
    }
    assert len(eps_vals) == 1, "epsilon must be constant on short rescaled roots"
    epsilon = eps_vals.pop()
    if ell % 2:
        case = "odd"
    elif r % 2 and d == 2:
        case = "even-shifted"
    else:
        case = "even-plain"
    if case == "even-shifted":
        # here ell = 2r automatically; only the short roots carry sign twists
        delta1 = tuple(i for i in range(len(d_beta)) if d_beta[i] == 1)
    else:
        delta1 = tuple(range(len(d_beta)))
    return RootOfUnityContext(
        root_system=rs,
        ell=ell,
        field=field,
        zeta=zeta,
        r=r,
        d=d,
        d_beta=tuple(d_beta),
        ell_beta=tuple(ell_beta),
        r_beta=tuple(r_beta),
        eta_beta=tuple(eta_beta),
        epsilon=epsilon,
        epsilon_beta=tuple(eps_beta),
        case=case,
        delta1_plus=delta1,
    )
