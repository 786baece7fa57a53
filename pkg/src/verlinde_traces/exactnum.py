"""Exact scalars: rationals and the cyclotomic field Q(nu), nu = exp(2 pi i / p).

Rationals are plain :class:`fractions.Fraction`.  A :class:`CycloNum` is a
residue modulo the p-th cyclotomic polynomial, stored as an integer
coefficient vector over a common positive denominator in the power basis
``1, z, ..., z^(phi(p)-1)``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "CycloNum",
    "cyclotomic_polynomial",
    "root_of_unity",
    "as_rational",
    "format_exact",
]


def _poly_trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division of coefficient lists (lowest degree first)."""
    a = [Fraction(c) for c in a]
    b = _poly_trim([Fraction(c) for c in b])
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], _poly_trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = a[shift + len(b) - 1] / lead
        q[shift] = c
        if c:
            for i, bc in enumerate(b):
                a[shift + i] -= c * bc
    return _poly_trim(q), _poly_trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(p: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_p, lowest degree first.

    Uses Phi_p = (z^p - 1) / prod_{d | p, d < p} Phi_d with exact division.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if p < 1:
        raise ValueError(f"cyclotomic order must be positive, got {p}")
    num = [-1] + [0] * (p - 1) + [1]
    den = [1]
    for d in range(1, p):
        if p % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod(num, den)
    if r != [0] or any(c.denominator != 1 for c in q):
        raise ArithmeticError(f"inexact division computing Phi_{p}")
    return tuple(int(c) for c in q)


class _Field:
    """Per-order reduction data for Q(zeta_p)."""

    def __init__(self, p: int):
        self.p = p
        self.phi = cyclotomic_polynomial(p)
        self.deg = len(self.phi) - 1
        # powers[e] = z^e mod Phi_p, e < max(p, 2 deg - 1); Phi_p is monic.
        n = max(p, 2 * self.deg - 1, 1)
        powers = []
        cur = [1] + [0] * (self.deg - 1)
        for _ in range(n):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(self.deg):
                    cur[i] -= top * self.phi[i]
        self.powers = powers


@lru_cache(maxsize=None)
def _field(p: int) -> _Field:
    return _Field(p)


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = den
    for c in nums:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


class CycloNum:
    """Element of Q(zeta_p), immutable."""

    __slots__ = ("p", "_nums", "_den", "_hash")
    depth = 0

    def __init__(self, p: int, coeffs: Sequence = (), den: int = 1):
        if p < 1:
            raise ValueError(f"cyclotomic order must be positive, got {p}")
        f = _field(p)
        if len(coeffs) > f.deg:
            # Out-of-basis input is reduced through the power table.
            coeffs = _reduce_fractions(f, [Fraction(c) for c in coeffs])
        coeffs = list(coeffs) + [0] * (f.deg - len(coeffs))
        if all(isinstance(c, int) for c in coeffs):
            nums, d = _normalize(coeffs, den)
        else:
            fr = [Fraction(c) / den for c in coeffs]
            lcm = 1
            for c in fr:
                lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
            nums, d = _normalize([int(c * lcm) for c in fr], lcm)
        self.p = p
        self._nums = nums
        self._den = d
        self._hash = None

    @classmethod
    def _raw(cls, p: int, nums: tuple[int, ...], den: int) -> CycloNum:
        obj = object.__new__(cls)
        obj.p = p
        obj._nums, obj._den = _normalize(list(nums), den)
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, p: int, value) -> CycloNum:
        value = Fraction(value)
        deg = _field(p).deg
        return cls._raw(p, (value.numerator,) + (0,) * (deg - 1), value.denominator)

    @classmethod
    def zero(cls, p: int) -> CycloNum:
        return cls.rational(p, 0)

    @classmethod
    def one(cls, p: int) -> CycloNum:
        return cls.rational(p, 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._nums)

    @property
    def degree(self) -> int:
        return len(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def is_zero(self) -> bool:
        return not any(self._nums)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._nums[0], self._den)

    def _coerce(self, other) -> CycloNum:
        if isinstance(other, CycloNum):
            if other.p != self.p:
                raise ValueError(
                    f"cannot combine elements of Q(zeta_{self.p}) and Q(zeta_{other.p})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._den, o._den
        return CycloNum._raw(
            self.p, tuple(x * b + y * a for x, y in zip(self._nums, o._nums)), a * b
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.p, tuple(-c for c in self._nums), self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycloNum._raw(
                self.p,
                tuple(c * other.numerator for c in self._nums),
                self._den * other.denominator,
            )
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = _field(self.p)
        if f.deg == 1:
            return CycloNum._raw(self.p, (self._nums[0] * o._nums[0],), self._den * o._den)
        prod = _poly_mul(self._nums, o._nums)
        out = [0] * f.deg
        for e, c in enumerate(prod):
            if c:
                for i, r in enumerate(f.powers[e]):
                    if r:
                        out[i] += c * r
        return CycloNum._raw(self.p, tuple(out), self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        """Multiplicative inverse via the extended Euclidean algorithm over Q[z]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.degree == 1:
            return CycloNum._raw(self.p, (self._den,), self._nums[0])
        a = _poly_trim([Fraction(c, self._den) for c in self._nums])
        b = [Fraction(c) for c in _field(self.p).phi]
        # Invariant: s * self == r (mod Phi_p).
        r0, r1 = b, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _poly_trim(list(r1)) != [0]:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if len(r0) != 1:
            raise ArithmeticError("element shares a factor with Phi_p")
        s = [c / r0[0] for c in s0]
        return CycloNum(self.p, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloNum.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        if isinstance(other, CycloNum):
            return self.p == other.p and self._nums == other._nums and self._den == other._den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._nums[0], self._den))
            else:
                self._hash = hash((self.p, self._nums, self._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(complex(c) * z**e for e, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CycloNum({self.p}, {format_exact(self)})"

    def __str__(self):
        return format_exact(self)


def _reduce_fractions(f: _Field, coeffs: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * f.deg
    powers = f.powers
    for e, c in enumerate(coeffs):
        if not c:
            continue
        # z^p = 1 in the field, and the table covers every residue mod p.
        red = powers[e] if e < len(powers) else powers[e % f.p]
        for i, r in enumerate(red):
            if r:
                out[i] += c * r
    return out


def root_of_unity(p: int, k: int = 1) -> CycloNum:
    """nu^k in Q(zeta_p), with k taken modulo p."""
    if p < 1:
        raise ValueError(f"cyclotomic order must be positive, got {p}")
    f = _field(p)
    return CycloNum._raw(p, f.powers[k % p], 1)


def as_rational(value) -> Fraction:
    """Coerce an exact scalar known to be rational to a Fraction."""
    if isinstance(value, CycloNum):
        return value.to_rational()
    return Fraction(value)


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_exact(value) -> str:
    """Stable text form: ``num/den`` for rationals, ``[c0,c1,...]@p`` otherwise."""
    if isinstance(value, CycloNum):
        if value.is_rational():
            return _format_fraction(value.to_rational())
        return "[" + ",".join(_format_fraction(c) for c in value.coeffs) + f"]@{value.p}"
    return _format_fraction(Fraction(value))
