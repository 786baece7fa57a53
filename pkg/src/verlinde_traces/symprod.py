"""The (theta, x) subring of H*(S^k Y) with its degree functional.

Classes are dense matrices ``c[a][b]`` for ``theta^a x^b`` with
``a <= g_Y`` and ``a + b <= k``; products outside that range vanish.
Integration against the fundamental class uses
``theta^a x^(k-a) -> a! * binom(g_Y, a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .series import TruncSeries, inverse, is_zero

__all__ = [
    "RingParams",
    "CohClass",
    "coh_exp",
    "degree",
    "eval_series_at",
    "theta_eliminate",
    "theta_exp_degree",
    "pullback_theta",
]


@dataclass(frozen=True)
class RingParams:
    k: int
    g_Y: int

    def __post_init__(self):
        if self.k < 0 or self.g_Y < 0:
            raise ValueError(f"invalid ring parameters {self}")

    @property
    def max_theta(self) -> int:
        return min(self.g_Y, self.k)

    def shape(self):
        """(a, b) index pairs of the stored entries."""
        return [(a, b) for a in range(self.max_theta + 1) for b in range(self.k - a + 1)]


class CohClass:
    """Element of Q[theta, x] / (theta^(g_Y+1), degree > k) over a ring K."""

    __slots__ = ("params", "rows", "depth")

    def __init__(self, params: RingParams, rows):
        self.params = params
        self.rows = tuple(tuple(r) for r in rows)
        if len(self.rows) != params.max_theta + 1 or any(
            len(r) != params.k - a + 1 for a, r in enumerate(self.rows)
        ):
            raise ValueError("class entries do not match the ring shape")
        self.depth = 1 + getattr(self.rows[0][0], "depth", 0)

    @classmethod
    def scalar(cls, params: RingParams, c) -> CohClass:
        zero = c * 0
        rows = [
            [zero] * (params.k - a + 1) for a in range(params.max_theta + 1)
        ]
        rows[0][0] = c
        return cls(params, rows)

    @classmethod
    def monomial(cls, params: RingParams, a: int, b: int, c=Fraction(1)) -> CohClass:
        """c * theta^a x^b (zero if truncated away)."""
        zero = c * 0
        rows = [
            [zero] * (params.k - r + 1) for r in range(params.max_theta + 1)
        ]
        if a <= params.max_theta and a + b <= params.k:
            rows[a][b] = c
        return cls(params, rows)

    @classmethod
    def theta(cls, params: RingParams, one=Fraction(1)) -> CohClass:
        return cls.monomial(params, 1, 0, one)

    @classmethod
    def x(cls, params: RingParams, one=Fraction(1)) -> CohClass:
        return cls.monomial(params, 0, 1, one)

    @property
    def zero_coeff(self):
        return self.rows[0][0] * 0

    def coeff(self, a: int, b: int):
        if a < len(self.rows) and b < len(self.rows[a]):
            return self.rows[a][b]
        return self.zero_coeff

    @property
    def constant(self):
        return self.rows[0][0]

    def is_nilpotent(self) -> bool:
        return is_zero(self.rows[0][0])

    def homogeneous(self, n: int) -> CohClass:
        """The part of total degree n."""
        z = self.zero_coeff
        return CohClass(
            self.params,
            [[c if a + b == n else z for b, c in enumerate(r)] for a, r in enumerate(self.rows)],
        )

    def _kind(self, other):
        if isinstance(other, CohClass):
            if other.params != self.params:
                raise ValueError(f"ring mismatch: {self.params} vs {other.params}")
            return "class"
        d = getattr(other, "depth", 0)
        if d < self.depth:
            return "scalar"
        return None

    def __add__(self, other):
        kind = self._kind(other)
        if kind is None:
            return NotImplemented
        if kind == "class":
            return CohClass(
                self.params,
                [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            )
        rows = [list(r) for r in self.rows]
        rows[0][0] = rows[0][0] + other
        return CohClass(self.params, rows)

    __radd__ = __add__

    def __neg__(self):
        return CohClass(self.params, [[-c for c in r] for r in self.rows])

    def __sub__(self, other):
        kind = self._kind(other)
        if kind is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        kind = self._kind(other)
        if kind is None:
            return NotImplemented
        if kind == "scalar":
            return CohClass(self.params, [[c * other for c in r] for r in self.rows])
        k = self.params.k
        amax = self.params.max_theta
        out = [[None] * (k - a + 1) for a in range(amax + 1)]
        left = [(a, b, c) for a, r in enumerate(self.rows) for b, c in enumerate(r) if not is_zero(c)]
        right = [(a, b, c) for a, r in enumerate(other.rows) for b, c in enumerate(r) if not is_zero(c)]
        for a1, b1, c1 in left:
            for a2, b2, c2 in right:
                a, b = a1 + a2, b1 + b2
                if a > amax or a + b > k:
                    continue
                term = c1 * c2
                cur = out[a][b]
                out[a][b] = term if cur is None else cur + term
        z = self.zero_coeff
        return CohClass(self.params, [[z if c is None else c for c in r] for r in out])

    def __rmul__(self, other):
        kind = self._kind(other)
        if kind is None:
            return NotImplemented
        return CohClass(self.params, [[other * c for c in r] for r in self.rows])

    def inverse(self) -> CohClass:
        """(c0 + N)^-1 = c0^-1 sum_r (-N/c0)^r, N nilpotent."""
        c0 = self.constant
        try:
            inv0 = inverse(c0)
        except (ZeroDivisionError, ValueError, ArithmeticError) as exc:
            raise ValueError("class with non-unit constant term is not invertible") from exc
        nil = (self - c0) * (-inv0)
        result = CohClass.scalar(self.params, inv0 * 0 + 1)
        power = result
        for _ in range(self.params.k):
            power = power * nil
            result = result + power
        return result * inv0

    def __truediv__(self, other):
        kind = self._kind(other)
        if kind is None:
            return NotImplemented
        if kind == "class":
            return self * other.inverse()
        return self * inverse(other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = CohClass.scalar(self.params, self.zero_coeff + 1)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map(self, fn: Callable) -> CohClass:
        return CohClass(self.params, [[fn(c) for c in r] for r in self.rows])

    def __eq__(self, other):
        if isinstance(other, CohClass):
            return self.params == other.params and self.rows == other.rows
        if getattr(other, "depth", 0) < self.depth:
            return self == CohClass.scalar(self.params, self.zero_coeff + other)
        return NotImplemented

    def __hash__(self):
        return hash((self.params, self.rows))

    def __repr__(self):
        terms = []
        for a, r in enumerate(self.rows):
            for b, c in enumerate(r):
                if not is_zero(c):
                    terms.append(f"({c})*theta^{a}*x^{b}")
        return f"CohClass[k={self.params.k}, g_Y={self.params.g_Y}](" + (" + ".join(terms) or "0") + ")"


def coh_exp(u: CohClass) -> CohClass:
    """exp of a nilpotent class; the sum stops at u^k."""
    if not u.is_nilpotent():
        raise ValueError("exp requires a class with zero constant term")
    result = CohClass.scalar(u.params, u.zero_coeff + 1)
    term = result
    for n in range(1, u.params.k + 1):
        term = term * u * Fraction(1, n)
        result = result + term
    return result


def degree(u: CohClass):
    """Integral over S^k Y: sum_a c[a][k-a] * a! * binom(g_Y, a)."""
    k, g = u.params.k, u.params.g_Y
    total = u.zero_coeff
    for a in range(u.params.max_theta + 1):
        c = u.rows[a][k - a]
        if not is_zero(c):
            total = total + c * (math.factorial(a) * math.comb(g, a))
    return total


def eval_series_at(f: TruncSeries, u: CohClass) -> CohClass:
    """Substitute a class into a one-variable series by Horner's rule.

    For nilpotent ``u`` the series must be known to order ``k``; beyond that
    every power of ``u`` vanishes.  For non-nilpotent ``u`` the stored
    coefficients are read as an exact polynomial.
    """
    coeffs = f.coeffs
    if u.is_nilpotent():
        if f.order < u.params.k:
            raise ValueError(
                f"series known to order {f.order}, need {u.params.k} to evaluate on S^{u.params.k}Y"
            )
        coeffs = coeffs[: u.params.k + 1]
    result = CohClass.scalar(u.params, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        result = result * u + c
    return result


def pullback_theta(u: CohClass, p: int) -> CohClass:
    """Ring map theta -> p*theta, x -> x: scales row a by p^a."""
    return CohClass(u.params, [[c * p**a for c in r] for a, r in enumerate(u.rows)])


def _fit(f: TruncSeries, order: int) -> TruncSeries:
    # Callers guarantee coefficients past f.order never reach the result.
    if f.order >= order:
        return f.truncate(order)
    return TruncSeries(f.coeffs + (f.zero_coeff,) * (order - f.order), f.var)


def _check_orders(F: TruncSeries, G: TruncSeries, k: int):
    if F.order < k - 1 or G.order < k:
        raise ValueError(
            f"need F to order {k - 1} and G to order {k}, got {F.order} and {G.order}"
        )


def theta_exp_degree(F: TruncSeries, G: TruncSeries, params: RingParams):
    """degree(exp(theta F(x)) G(x)) computed inside the ring."""
    k = params.k
    _check_orders(F, G, k)
    one = G.zero_coeff + 1
    x = CohClass.x(params, one)
    th = CohClass.theta(params, one)
    # theta * x^k = 0, so F is only needed to order k - 1.
    Fx = eval_series_at(_fit(F, k), x)
    return degree(coh_exp(th * Fx) * eval_series_at(G, x))


def theta_eliminate(F: TruncSeries, G: TruncSeries, params: RingParams):
    """coeff of x^k in (1 + x F(x))^g_Y G(x).

    Equals :func:`theta_exp_degree` for all F, G: this is how theta is
    eliminated from an integral over S^k Y.
    """
    k = params.k
    _check_orders(F, G, k)
    xF = TruncSeries.variable(k, G.zero_coeff + 1, G.var) * _fit(F, k)
    bracket = (xF + 1) ** params.g_Y
    return (bracket * _fit(G, k)).coeff(k)
