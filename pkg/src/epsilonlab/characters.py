"""Multiplicative characters of Q_p^x and their invariants.

A finite-order character is pinned down by a level t and an exponent k: on units
it sends the fixed generator g of (Z/p^t)^x to zeta_{phi(p^t)}^k, and it is
normalized to send p itself to 1 (the unramified part of a general character is
split off as a formal |.|^s shift, see QuasiCharacter).  The conductor exponent
a(chi) is computed from k, not stored, so it can never go stale.

v_chi is the unit class attached to a ramified character by the local expansion
chi(1 + y) = psi(v_chi * y / p^{a}) for y in the deepest relevant filtration
step; it is found by exhaustive check and is provably unique mod p^{floor(a/2)}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

from .padic import is_odd_prime, unit_group, unit_part_mod
from .scalars import EXACT, Backend, Rational


@dataclass(frozen=True)
class MultChar:
    """Character of (Z/p^level)^x with chi(p) = 1: chi(g) = zeta_m^k, m = phi(p^level)."""

    p: int
    level: int
    k: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError("odd prime required")
        if self.level < 1:
            raise ValueError("level must be >= 1")
        m = self.group_order
        object.__setattr__(self, "k", self.k % m)

    @property
    def group_order(self) -> int:
        return self.p ** (self.level - 1) * (self.p - 1)

    @property
    def root_order(self) -> int:
        """Order of the cyclotomic field the raw values live in."""
        return self.group_order

    # -- evaluation -----------------------------------------------------------

    def value_exponent(self, x: Union[int, Fraction]) -> int:
        """e with chi(x) = zeta_{group_order}^e; any nonzero rational (chi(p) = 1)."""
        u = unit_part_mod(self.p, Fraction(x), self.level)
        return self.k * unit_group(self.p, self.level).dlog(u) % self.group_order

    def eval(self, x: Union[int, Fraction], backend: Backend = EXACT):
        return backend.root_of_unity(self.value_exponent(x), self.group_order)

    # -- invariants -----------------------------------------------------------

    def is_trivial(self) -> bool:
        return self.k == 0

    @property
    def conductor_exponent(self) -> int:
        return _conductor_exponent(self.p, self.level, self.k)

    def parity_sign(self) -> int:
        """chi(-1) as +-1."""
        e = self.value_exponent(-1 % self.p ** self.level)
        return 1 if e == 0 else -1

    # -- algebra ---------------------------------------------------------------

    def induce(self, level: int) -> "MultChar":
        """The same character of Q_p^x presented at a deeper level."""
        if level < self.level:
            raise ValueError("cannot lower the presentation level; build a new character")
        if level == self.level:
            return self
        big = unit_group(self.p, level)
        # chi at the new level sends big.gen to chi(big.gen mod p^level)
        e = self.value_exponent(big.gen % self.p ** self.level)
        m_small, m_big = self.group_order, big.order
        # e/m_small = k_big/m_big as angles
        k_big = e * (m_big // m_small)
        return MultChar(self.p, level, k_big)

    def mul(self, other: "MultChar") -> "MultChar":
        if other.p != self.p:
            raise ValueError("mixed primes")
        lvl = max(self.level, other.level)
        a, b = self.induce(lvl), other.induce(lvl)
        return MultChar(self.p, lvl, a.k + b.k)

    def inv(self) -> "MultChar":
        return MultChar(self.p, self.level, -self.k)

    def __pow__(self, n: int) -> "MultChar":
        return MultChar(self.p, self.level, self.k * n)

    def same_character(self, other: "MultChar") -> bool:
        """Equality as characters of Q_p^x (presentation level ignored)."""
        if other.p != self.p:
            return False
        lvl = max(self.level, other.level)
        return self.induce(lvl).k == other.induce(lvl).k

    def to_json(self) -> dict:
        return {"p": self.p, "level": self.level, "k": self.k}

    @staticmethod
    def from_json(obj: dict) -> "MultChar":
        return MultChar(int(obj["p"]), int(obj["level"]), int(obj["k"]))


@lru_cache(maxsize=None)
def _conductor_exponent(p: int, level: int, k: int) -> int:
    m = p ** (level - 1) * (p - 1)
    if k % m == 0:
        return 0
    ug = unit_group(p, level)
    for a in range(1, level):
        # 1 + p^a generates (1+p^a Z)/(1+p^level Z) for odd p, so triviality
        # there is one congruence
        if k * ug.dlog(1 + p ** a) % m == 0:
            return a
    return level


def trivial_char(p: int) -> MultChar:
    return MultChar(p, 1, 0)


def enumerate_chars(p: int, level: int) -> Iterator[MultChar]:
    """All characters presented at the given level (group-order many)."""
    m = p ** (level - 1) * (p - 1)
    for k in range(m):
        yield MultChar(p, level, k)


def chars_with_conductor(p: int, a: int) -> list[MultChar]:
    """All characters with conductor exponent exactly a, presented at level max(a,1)."""
    if a == 0:
        return [trivial_char(p)]
    return [chi for chi in enumerate_chars(p, a) if chi.conductor_exponent == a]


def represent_at_level(chi: MultChar, level: int) -> MultChar:
    """The same character of Q_p^x presented at the given level (>= its conductor)."""
    if chi.level == level:
        return chi
    if chi.level < level:
        return chi.induce(level)
    if chi.conductor_exponent > level:
        raise ValueError("character does not factor through level %d" % level)
    # values on units mod p^level determine it; read k off the generator
    ug = unit_group(chi.p, level)
    e = chi.value_exponent(ug.gen)
    m_small, m_big = ug.order, chi.group_order
    if e * m_small % m_big:
        raise ArithmeticError("conductor bookkeeping violated while lowering level")
    return MultChar(chi.p, level, e * m_small // m_big)


# ---------------------------------------------------------------------------
# quasi-characters: finite part times |.|^shift
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuasiChar:
    """chi = finite * |.|^shift.  The shift only ever moves formal q-exponents."""

    finite: MultChar
    shift: Fraction = Fraction(0)

    @staticmethod
    def of(finite: MultChar, shift: Rational = 0) -> "QuasiChar":
        return QuasiChar(finite, Fraction(shift))

    @property
    def p(self) -> int:
        return self.finite.p

    @property
    def conductor_exponent(self) -> int:
        return self.finite.conductor_exponent

    def mul(self, other: "QuasiChar") -> "QuasiChar":
        return QuasiChar(self.finite.mul(other.finite), self.shift + other.shift)

    def inv(self) -> "QuasiChar":
        return QuasiChar(self.finite.inv(), -self.shift)

    def twist(self, extra_shift: Rational) -> "QuasiChar":
        return QuasiChar(self.finite, self.shift + Fraction(extra_shift))


def as_quasi(chi: Union[MultChar, QuasiChar]) -> QuasiChar:
    if isinstance(chi, MultChar):
        return QuasiChar(chi)
    return chi


# dispatch-style aliases (kept thin; the methods above are the real API)

def char_mul(a, b):
    return as_quasi(a).mul(as_quasi(b))


def char_inv(a):
    return as_quasi(a).inv()


def char_induce(chi: MultChar, level: int) -> MultChar:
    return chi.induce(level)


def char_algebra(op: str, chi1: MultChar, chi2: Optional[MultChar] = None,
                 level: Optional[int] = None) -> MultChar:
    """Single-entry dispatcher over the finite-character operations.

    op is one of "mul" (needs chi2), "inv", "induce_to_level" (needs level).
    """
    if op == "mul":
        if chi2 is None:
            raise ValueError('"mul" needs a second character')
        return chi1.mul(chi2)
    if op == "inv":
        return chi1.inv()
    if op == "induce_to_level":
        if level is None:
            raise ValueError('"induce_to_level" needs a target level')
        return chi1.induce(level)
    raise ValueError("unknown character operation %r" % op)


# ---------------------------------------------------------------------------
# the unit class v_chi of a ramified character
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueClass:
    """A unit residue mod p^m; m = 0 marks the vacuous class (every unit works)."""

    p: int
    m: int
    rep: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("negative modulus exponent")
        object.__setattr__(self, "rep", self.rep % self.p ** self.m if self.m else 0)

    @property
    def vacuous(self) -> bool:
        return self.m == 0

    def contains(self, x: int) -> bool:
        if self.vacuous:
            return x % self.p != 0
        return x % self.p ** self.m == self.rep and x % self.p != 0

    def lifts(self) -> list[int]:
        """All unit lifts mod p^{m+1} (used to probe representative independence)."""
        mod = self.p ** (self.m + 1)
        step = self.p ** self.m
        cands = [self.rep + j * step for j in range(self.p)] if not self.vacuous else list(range(1, mod))
        return [x for x in cands if x % self.p != 0]


def v_chi(chi: MultChar) -> ResidueClass:
    """The class v mod p^{floor(a/2)} with chi(1 + y p^{ceil(a/2)}) = zeta_{p^{floor(a/2)}}^{v y}.

    For a(chi) = 1 the condition is empty and the vacuous class is returned.
    Existence and uniqueness for a >= 2 follow from conductor minimality; the
    search is exhaustive so a failure here would expose a real inconsistency.
    """
    a = chi.conductor_exponent
    if a == 0:
        raise ValueError("v_chi needs a ramified character")
    lo, hi = a // 2, a - a // 2  # floor, ceil
    if lo == 0:
        return ResidueClass(chi.p, 0, 0)
    p = chi.p
    mod_lo = p ** lo
    m = chi.group_order
    # chi(1 + y*p^hi) has values in the p-power roots; read each off as an exponent
    targets = {}
    for y in range(mod_lo):
        e = chi.value_exponent((1 + y * p ** hi) % p ** chi.level)
        # e / m must equal (v*y mod p^lo) / p^lo
        num = e * mod_lo
        if num % m:
            raise ArithmeticError("character value off the expected p-power lattice")
        targets[y] = num // m % mod_lo
    for v in range(1, mod_lo):
        if v % p == 0:
            continue
        if all((v * y) % mod_lo == targets[y] for y in range(mod_lo)):
            return ResidueClass(p, lo, v)
    raise ArithmeticError("no unit class matches chi on the deep filtration step "
                          "(conductor bookkeeping is broken)")
