"""Exact cyclotomic scalars and the exact/float backend pair.

Representation
--------------
An element of Q(zeta_N) is stored in the power basis 1, z, z^2, ..., z^(phi(N)-1)
(z = exp(2*pi*i/N)) as a dense vector of integer numerators plus a single positive
denominator.  The vector is always canonically reduced modulo the N-th cyclotomic
polynomial, so equality of values is literally equality of (N, numerators, denominator)
and never consults a tolerance.

Reduction uses Phi_N(x) = Phi_r(x^(N/r)) with r = rad(N): writing an exponent
e = q*(N/r) + s, the monomial x^e rewrites through the small table of
y^q mod Phi_r(y).  Those rewrite rows have O(phi(r)) entries with tiny coefficients,
which keeps reduction cheap even when phi(N) is in the thousands.

Multiplication is integer convolution (numpy int64 with an exact object-dtype
fallback when a magnitude guard trips) followed by one reduction pass.  Nothing in
the exact path ever rounds.

ScaledScalar carries a formal rational power of q next to a scalar: (c, e) means
c * q^e.  Sums are only defined between equal exponents; a mismatch raises
QExpMismatchError, because in the identities computed here a mismatched sum is a
bug, not a request for numerics.

The float backend mirrors the same operations on complex128 with a relative
tolerance used for equality only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Union

import numpy as np

Rational = Union[int, Fraction]

# Magnitudes above this make int64 convolution unsafe; fall back to exact object dtype.
_INT64_GUARD = 2**62

_MAX_LCM_ORDER = 10**6


class QExpMismatchError(ArithmeticError):
    """Sum of ScaledScalars with different formal q-exponents (needs a numeric fallback)."""


# ---------------------------------------------------------------------------
# cyclotomic polynomial and per-N context
# ---------------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, num = q * den with den monic-ish (lc +-1).
    num = list(num)
    dlead = den[-1]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % dlead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q[i] = c // dlead
        if q[i]:
            for j, dj in enumerate(den):
                num[i + j] -= q[i] * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n(x), low degree first."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in _divisors(n):
        if d < n:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
    return tuple(_poly_divide_exact(num, den))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _radical(n: int) -> int:
    r, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            r *= p
            while m % p == 0:
                m //= p
        p += 1
    return r * m if m > 1 else r


class CycContext:
    """Reduction tables for one cyclotomic order N.  Built once, then read-only."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("cyclotomic order must be positive")
        self.N = N
        self.rad = _radical(N)
        self.K = N // self.rad
        phi_rad = len(cyclotomic_poly(self.rad)) - 1
        self.phi = phi_rad * self.K
        self.phi_rad = phi_rad
        # pow_rows[q] = coefficients of y^q mod Phi_rad(y), q in [0, rad)
        poly = cyclotomic_poly(self.rad)
        head = [-c for c in poly[:-1]]  # y^phi_rad = head(y), lc is 1
        rows = [[0] * phi_rad for _ in range(self.rad)]
        for q in range(phi_rad):
            rows[q][q] = 1
        for q in range(phi_rad, self.rad):
            prev = rows[q - 1]
            cur = [0] * phi_rad
            carry = prev[phi_rad - 1]
            for j in range(phi_rad - 1, 0, -1):
                cur[j] = prev[j - 1]
            if carry:
                for j in range(phi_rad):
                    cur[j] += carry * head[j]
            rows[q] = cur
        self.pow_rows = np.array(rows, dtype=np.int64)
        self._pow_rows_py = [tuple(r) for r in rows]
        self._root_sparse: dict[int, tuple[tuple[int, int], ...]] = {}
        self._recog: Optional[dict[tuple, int]] = None
        self._roots_complex: Optional[np.ndarray] = None

    # -- reduction -----------------------------------------------------------

    def reduce_groupring(self, vec: np.ndarray) -> np.ndarray:
        """Length-N integer vector of exponent coefficients -> canonical length-phi vector."""
        if vec.dtype == object:
            return self._reduce_py(vec)
        if len(vec) and np.abs(vec).max(initial=0) * 3 * self.rad >= _INT64_GUARD:
            return self._reduce_py(vec.astype(object))
        V = vec.reshape(self.rad, self.K)
        out = np.einsum("qs,qj->js", V, self.pow_rows)
        return out.reshape(self.phi)

    def _reduce_py(self, vec: np.ndarray) -> np.ndarray:
        out = [0] * self.phi
        K = self.K
        for e in range(self.N):
            c = vec[e]
            if not c:
                continue
            q, s = divmod(e, K)
            for j, rc in enumerate(self._pow_rows_py[q]):
                if rc:
                    out[j * K + s] += c * rc
        return np.array(out, dtype=object)

    def fold_conv(self, conv: np.ndarray) -> np.ndarray:
        """Fold a convolution result (length < 2N) into exponent classes mod N."""
        if len(conv) <= self.N:
            full = np.zeros(self.N, dtype=conv.dtype)
            full[: len(conv)] = conv
        else:
            full = conv[: self.N].copy()
            full[: len(conv) - self.N] += conv[self.N :]
        return full

    # -- roots of unity -------------------------------------------------------

    def root_sparse(self, e: int) -> tuple[tuple[int, int], ...]:
        """Canonical form of z^e as ((index, coeff), ...)."""
        e %= self.N
        hit = self._root_sparse.get(e)
        if hit is None:
            q, s = divmod(e, self.K)
            hit = tuple(
                (j * self.K + s, int(c)) for j, c in enumerate(self._pow_rows_py[q]) if c
            )
            self._root_sparse[e] = hit
        return hit

    def recognition_table(self) -> dict[tuple, int]:
        """Projectivized canonical sparse form -> exponent, for root recognition."""
        if self._recog is None:
            table: dict[tuple, int] = {}
            for e in range(self.N):
                key = _projectivize(self.root_sparse(e))
                table.setdefault(key, e)
            self._recog = table
        return self._recog

    def roots_complex(self) -> np.ndarray:
        if self._roots_complex is None:
            ang = 2.0 * math.pi / self.N
            ks = np.arange(self.N)
            self._roots_complex = np.exp(1j * ang * ks)
        return self._roots_complex


def _projectivize(sparse: tuple[tuple[int, int], ...]) -> tuple:
    lead = Fraction(sparse[0][1])
    return tuple((i, Fraction(c) / lead) for i, c in sparse)


@lru_cache(maxsize=None)
def get_context(N: int) -> CycContext:
    return CycContext(N)


# ---------------------------------------------------------------------------
# CycNumber
# ---------------------------------------------------------------------------


class CycNumber:
    """Element of Q(zeta_N), canonical in the power basis, exact.

    Equality and hashing are representational: elements are normalized so that
    rational values always demote to N = 1, and arithmetic between different N
    lifts to the lcm.  Nonrational values should be kept in one fixed N per
    computation (every computation here fixes N up front).
    """

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num: tuple[int, ...], den: int):
        # internal: assumes canonical, normalized inputs
        self.N = N
        self.num = num
        self.den = den

    # -- construction ---------------------------------------------------------

    @staticmethod
    def from_vec(N: int, vec: np.ndarray, den: int = 1) -> "CycNumber":
        ctx = get_context(N)
        if len(vec) != ctx.phi:
            raise ValueError("canonical vector has wrong length")
        return _make(N, [int(c) for c in vec], int(den))

    @staticmethod
    def rational(value: Rational) -> "CycNumber":
        fr = Fraction(value)
        return _make(1, [fr.numerator], fr.denominator)

    @staticmethod
    def zero() -> "CycNumber":
        return _ZERO

    @staticmethod
    def one() -> "CycNumber":
        return _ONE

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return self.N == 1

    def as_fraction(self) -> Fraction:
        if self.N != 1:
            raise ValueError("not a rational value: %r" % (self,))
        return Fraction(self.num[0], self.den)

    def sparse(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, c) for i, c in enumerate(self.num) if c)

    def as_root_times_rational(self) -> Optional[tuple[int, Fraction]]:
        """If self = r * zeta_N^e with r rational, return (e, r); else None.

        For odd N the sign lives in r (so e.g. -zeta_5 returns (1, -1)).
        """
        sp = self.sparse()
        if not sp:
            return None
        ctx = get_context(self.N)
        e = ctx.recognition_table().get(_projectivize(sp))
        if e is None:
            return None
        row = ctx.root_sparse(e)
        if len(row) != len(sp):
            return None
        r = Fraction(sp[0][1], self.den) / row[0][1]
        for (i, c), (ri, rc) in zip(sp, row):
            if i != ri or Fraction(c, self.den) != r * rc:
                return None
        if r < 0 and self.N % 2 == 0:
            e, r = (e + self.N // 2) % self.N, -r
        return e % self.N, r

    # -- arithmetic -----------------------------------------------------------

    def _lift_vec(self, N: int) -> tuple[list[int], int]:
        """Canonical numerator vector of self inside Q(zeta_N), same denominator."""
        if N == self.N:
            return list(self.num), self.den
        if N % self.N != 0:
            raise ValueError("cannot lift Q(zeta_%d) into Q(zeta_%d)" % (self.N, N))
        scale = N // self.N
        ctx = get_context(N)
        big = any(abs(c) * 3 * ctx.rad >= _INT64_GUARD for c in self.num)
        vec = np.zeros(N, dtype=object if big else np.int64)
        # rewrite the canonical basis monomials of the small field in the big one
        for i, c in enumerate(self.num):
            if c:
                vec[(i * scale) % N] += c
        red = ctx.reduce_groupring(vec)
        return [int(c) for c in red], self.den

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        N = _common_order(self.N, other.N)
        (anum, aden) = self._lift_vec(N)
        (bnum, bden) = other._lift_vec(N)
        den = _lcm(aden, bden)
        fa, fb = den // aden, den // bden
        num = [fa * x + fb * y for x, y in zip(anum, bnum)]
        return _make(N, num, den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.N, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.N == 1:
            return _make(self.N, [other.num[0] * c for c in self.num], self.den * other.den)
        if self.N == 1:
            return _make(other.N, [self.num[0] * c for c in other.num], self.den * other.den)
        N = _common_order(self.N, other.N)
        (anum, aden) = self._lift_vec(N)
        (bnum, bden) = other._lift_vec(N)
        ctx = get_context(N)
        ma = max((abs(c) for c in anum), default=0)
        mb = max((abs(c) for c in bnum), default=0)
        if ma and mb and ma * mb * min(len(anum), len(bnum)) >= _INT64_GUARD:
            conv = np.convolve(np.array(anum, dtype=object), np.array(bnum, dtype=object))
        else:
            conv = np.convolve(np.array(anum, dtype=np.int64), np.array(bnum, dtype=np.int64))
        red = ctx.reduce_groupring(ctx.fold_conv(conv))
        return _make(N, [int(c) for c in red], aden * bden)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            fr = Fraction(other)
            if fr == 0:
                raise ZeroDivisionError
            return _make(self.N, [fr.denominator * c for c in self.num], self.den * fr.numerator)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            rt = self.as_root_times_rational()
            if rt is None:
                raise ArithmeticError("inverse only available for rational multiples of roots")
            e, r = rt
            return root_of_unity((e * k) % self.N, self.N) * (r ** k)
        out = CycNumber.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.N == other.N:
            return self.num == other.num and self.den == other.den
        N = _common_order(self.N, other.N)
        (anum, aden) = self._lift_vec(N)
        (bnum, bden) = other._lift_vec(N)
        return all(x * bden == y * aden for x, y in zip(anum, bnum))

    def __hash__(self):
        return hash((self.N, self.num, self.den))

    def __repr__(self):
        return "CycNumber(%d, %s)" % (self.N, self.short_str())

    def short_str(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.num):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("%+d*z" % c if terms else "%d*z" % c)
            else:
                terms.append("%+d*z^%d" % (c, i) if terms else "%d*z^%d" % (c, i))
        body = " ".join(terms) if len(terms) > 1 else terms[0]
        if self.den != 1:
            body = "(%s)/%d" % (body, self.den)
        if self.N > 1:
            body += " [z=zeta_%d]" % self.N
        return body

    # -- analytic views --------------------------------------------------------

    def conjugate(self) -> "CycNumber":
        if self.N == 1:
            return self
        ctx = get_context(self.N)
        weights: dict[int, int] = {}
        for i, c in enumerate(self.num):
            if c:
                j = (-i) % self.N
                weights[j] = weights.get(j, 0) + c
        return _from_groupring(self.N, weights, self.den)

    def norm_squared(self) -> "CycNumber":
        return self * self.conjugate()

    def to_complex(self) -> complex:
        if self.N == 1:
            return complex(self.num[0] / self.den)
        ctx = get_context(self.N)
        roots = ctx.roots_complex()
        acc = 0.0 + 0.0j
        for i, c in enumerate(self.num):
            if c:
                acc += c * roots[i]
        return acc / self.den


_ZERO = CycNumber(1, (0,), 1)
_ONE = CycNumber(1, (1,), 1)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _common_order(n1: int, n2: int) -> int:
    N = _lcm(n1, n2)
    if N > _MAX_LCM_ORDER:
        raise ValueError("mixed cyclotomic orders too large: lcm(%d, %d)" % (n1, n2))
    return N


def _make(N: int, num: list[int], den: int) -> CycNumber:
    if den == 0:
        raise ZeroDivisionError
    if den < 0:
        den, num = -den, [-c for c in num]
    g = den
    for c in num:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if g > 1:
        den //= g
        num = [c // g for c in num]
    if N > 1 and not any(num[1:]):
        return CycNumber(1, (num[0],), den)
    if not any(num):
        return CycNumber(1, (0,), 1)
    return CycNumber(N, tuple(num), den)


def _from_groupring(N: int, weights: Mapping[int, int], den: int = 1) -> CycNumber:
    ctx = get_context(N)
    big = any(abs(c) * 3 * ctx.rad >= _INT64_GUARD for c in weights.values())
    vec = np.zeros(N, dtype=object if big else np.int64)
    for e, c in weights.items():
        vec[e % N] += c
    red = ctx.reduce_groupring(vec)
    return _make(N, [int(c) for c in red], den)


def _coerce(x) -> "CycNumber":
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNumber.rational(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# public scalar ops (exact)
# ---------------------------------------------------------------------------


def root_of_unity(e: int, N: int) -> CycNumber:
    """zeta_N^e as a canonical CycNumber."""
    ctx = get_context(N)
    vec = [0] * ctx.phi
    for i, c in ctx.root_sparse(e):
        vec[i] = c
    return _make(N, vec, 1)


def conjugate(x: CycNumber) -> CycNumber:
    return x.conjugate()


def norm_squared(x: CycNumber) -> CycNumber:
    return x.norm_squared()


def to_complex(x: Union[CycNumber, complex]) -> complex:
    if isinstance(x, CycNumber):
        return x.to_complex()
    return complex(x)


def proportionality_ratio(a: CycNumber, b: CycNumber) -> Optional[Fraction]:
    """r with a == r * b, if a and b are rationally proportional (b != 0)."""
    if b.is_zero():
        return None
    if a.is_zero():
        return Fraction(0)
    N = _common_order(a.N, b.N)
    (anum, aden) = a._lift_vec(N)
    (bnum, bden) = b._lift_vec(N)
    bi = next(i for i, c in enumerate(bnum) if c)
    if not anum[bi]:
        return None
    r = Fraction(anum[bi], aden) / Fraction(bnum[bi], bden)
    ok = all(Fraction(x, aden) == r * Fraction(y, bden) for x, y in zip(anum, bnum))
    return r if ok else None


# ---------------------------------------------------------------------------
# ScaledScalar
# ---------------------------------------------------------------------------


Scalar = Union[CycNumber, complex]


@dataclass(frozen=True)
class ScaledScalar:
    """A scalar times a formal rational power of q: (coeff, e) <-> coeff * q^e."""

    coeff: Scalar
    qexp: Fraction

    @staticmethod
    def of(coeff, qexp: Rational = 0) -> "ScaledScalar":
        if isinstance(coeff, (int, Fraction)):
            coeff = CycNumber.rational(coeff)
        if _scalar_is_exact_zero(coeff):
            return ScaledScalar(coeff, Fraction(0))
        return ScaledScalar(coeff, Fraction(qexp))

    def is_zero_exact(self) -> bool:
        return _scalar_is_exact_zero(self.coeff)

    def __mul__(self, other):
        if isinstance(other, ScaledScalar):
            a, b = _align_scalars(self.coeff, other.coeff)
            return ScaledScalar.of(a * b, self.qexp + other.qexp)
        if isinstance(other, (int, Fraction, CycNumber, complex)):
            a, b = _align_scalars(self.coeff, other)
            return ScaledScalar.of(a * b, self.qexp)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, ScaledScalar):
            return NotImplemented
        if self.is_zero_exact():
            return other
        if other.is_zero_exact():
            return self
        if self.qexp != other.qexp:
            raise QExpMismatchError(
                "sum of scaled scalars with q-exponents %s and %s" % (self.qexp, other.qexp)
            )
        a, b = _align_scalars(self.coeff, other.coeff)
        return ScaledScalar.of(a + b, self.qexp)

    def __pow__(self, k: int):
        out = ScaledScalar.of(1)
        for _ in range(k):
            out = out * self
        return out

    def scale_q(self, delta: Rational) -> "ScaledScalar":
        if self.is_zero_exact():
            return self
        return ScaledScalar(self.coeff, self.qexp + Fraction(delta))

    def to_complex(self, q: int) -> complex:
        return to_complex(self.coeff) * (float(q) ** float(self.qexp))

    def eq_value(self, other: "ScaledScalar", q: int, backend: "Backend") -> bool:
        """Value equality, absorbing integer q-exponent differences into the coefficient."""
        if self.is_zero_exact() and other.is_zero_exact():
            return True
        delta = self.qexp - other.qexp
        if delta.denominator == 1:
            if backend.exact:
                lhs = self.coeff * (Fraction(q) ** int(delta))
            else:
                lhs = to_complex(self.coeff) * (float(q) ** int(delta))
            return backend.eq(lhs, other.coeff)
        # a fractional q-power gap: only equal if both vanish (handled above) or the
        # backend can compare numerically
        if backend.exact:
            return False
        return backend.eq(self.to_complex(q), other.to_complex(q))


def _scalar_is_exact_zero(x: Scalar) -> bool:
    if isinstance(x, CycNumber):
        return x.is_zero()
    return x == 0


def _align_scalars(a, b):
    """Demote exact operands to complex when the other side is a float value."""
    a_exact = isinstance(a, (CycNumber, int, Fraction))
    b_exact = isinstance(b, (CycNumber, int, Fraction))
    if a_exact and not b_exact:
        a = to_complex(a) if isinstance(a, CycNumber) else complex(a)
    elif b_exact and not a_exact:
        b = to_complex(b) if isinstance(b, CycNumber) else complex(b)
    return a, b


# ---------------------------------------------------------------------------
# Backend
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Backend:
    """Dispatch point between exact cyclotomic and complex floating arithmetic.

    mode "exact": scalars are CycNumbers, equality is exact.
    mode "float": scalars are complex, equality is relative within `tolerance`
    (|a-b| <= tolerance * max(1, |a|, |b|)).
    """

    mode: str
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError("backend mode must be 'exact' or 'float'")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def root_of_unity(self, e: int, N: int) -> Scalar:
        if self.exact:
            return root_of_unity(e, N)
        return cmath.exp(2j * cmath.pi * (e % N) / N)

    def one(self) -> Scalar:
        return CycNumber.one() if self.exact else 1.0 + 0.0j

    def zero(self) -> Scalar:
        return CycNumber.zero() if self.exact else 0.0 + 0.0j

    def rational(self, value: Rational) -> Scalar:
        if self.exact:
            return CycNumber.rational(value)
        return complex(Fraction(value))

    def conjugate(self, x: Scalar) -> Scalar:
        if isinstance(x, CycNumber):
            return x.conjugate()
        return complex(x).conjugate()

    def norm_squared(self, x: Scalar) -> Scalar:
        if isinstance(x, CycNumber):
            return x.norm_squared()
        return x * complex(x).conjugate()

    def to_complex(self, x: Scalar) -> complex:
        return to_complex(x)

    def eq(self, a, b) -> bool:
        if self.exact:
            if isinstance(a, (int, Fraction)):
                a = CycNumber.rational(a)
            if isinstance(b, (int, Fraction)):
                b = CycNumber.rational(b)
            return a == b
        ca = a.to_complex() if isinstance(a, CycNumber) else complex(a)
        cb = b.to_complex() if isinstance(b, CycNumber) else complex(b)
        scale = max(1.0, abs(ca), abs(cb))
        return abs(ca - cb) <= self.tolerance * scale

    def is_zero(self, x: Scalar) -> bool:
        if isinstance(x, CycNumber):
            return x.is_zero()
        return abs(x) <= self.tolerance

    def root_combination(self, N: int, weights: Mapping[int, Rational]) -> Scalar:
        """sum_e weights[e] * zeta_N^e, computed natively in the backend."""
        if self.exact:
            intw: dict[int, int] = {}
            den = 1
            for w in weights.values():
                if isinstance(w, Fraction):
                    den = _lcm(den, w.denominator)
            for e, w in weights.items():
                intw[e % N] = intw.get(e % N, 0) + int(Fraction(w) * den)
            return _from_groupring(N, intw, den)
        ctx = get_context(N)
        roots = ctx.roots_complex()
        acc = 0.0 + 0.0j
        for e, w in weights.items():
            acc += complex(Fraction(w)) * roots[e % N]
        return acc

    def root_combination_vec(self, N: int, counts: np.ndarray) -> Scalar:
        """Same as root_combination for a dense length-N integer count vector."""
        if self.exact:
            ctx = get_context(N)
            red = ctx.reduce_groupring(counts.astype(np.int64, copy=False))
            return _make(N, [int(c) for c in red], 1)
        ctx = get_context(N)
        return complex(np.dot(counts, ctx.roots_complex()))


EXACT = Backend("exact")
FLOAT = Backend("float")


def backend_for(mode: str, tolerance: float = 1e-9) -> Backend:
    if mode == "exact":
        return EXACT
    return Backend("float", tolerance)
