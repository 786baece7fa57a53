"""Truncated power series and Laurent series over a caller-supplied ring.

A :class:`TruncSeries` keeps coefficients for exponents ``0..order`` of one
named variable.  Coefficients may be any exact ring element supporting
``+ - *`` with ints and Fractions: ``Fraction``, :class:`CycloNum`, another
``TruncSeries`` in a different variable, or a cohomology class.  Nesting is
resolved by ``depth``: an operand of smaller depth is a scalar, an operand
of larger depth owns the operation.

The two-variable engine used for the residue formula is a series in ``x``
whose coefficients are series in ``t``::

    >>> from fractions import Fraction
    >>> one_t = TruncSeries.constant(Fraction(1), 2, var="t")
    >>> e = exp_linear(-1, 2, one=one_t)
    >>> e.coeff(2).coeff(0)
    Fraction(1, 2)
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

__all__ = [
    "TruncSeries",
    "LaurentSeries",
    "exp_linear",
    "laurent_div_pow",
    "residue",
    "inverse",
    "is_zero",
]


def is_zero(c) -> bool:
    return c == 0


def inverse(c):
    """Multiplicative inverse of a ring element, raising if it is not a unit."""
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise ZeroDivisionError("zero is not a unit")
        return 1 / Fraction(c)
    return c.inverse()


def _depth(c) -> int:
    return getattr(c, "depth", 0)


def _defer(owner, method: str, operand):
    if isinstance(owner, TruncSeries):
        return getattr(owner, method)(operand)
    return NotImplemented


class TruncSeries:
    """sum_{n <= order} c_n var^n, truncated; immutable."""

    __slots__ = ("coeffs", "var", "depth")

    def __init__(self, coeffs: Sequence, var: str = "x"):
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        self.coeffs = tuple(coeffs)
        self.var = var
        self.depth = 1 + _depth(self.coeffs[0])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int, var: str = "x") -> TruncSeries:
        zero = c * 0
        return cls([c] + [zero] * order, var)

    @classmethod
    def variable(cls, order: int, one=Fraction(1), var: str = "x") -> TruncSeries:
        """The series ``var`` itself (zero if order is 0)."""
        zero = one * 0
        return cls([zero, one][: order + 1] + [zero] * max(order - 1, 0), var)

    @classmethod
    def monomial(cls, n: int, order: int, one=Fraction(1), var: str = "x") -> TruncSeries:
        zero = one * 0
        coeffs = [zero] * (order + 1)
        if n <= order:
            coeffs[n] = one
        return cls(coeffs, var)

    @property
    def zero_coeff(self):
        return self.coeffs[0] * 0

    def one(self) -> TruncSeries:
        return TruncSeries.constant(self.zero_coeff + 1, self.order, self.var)

    def coeff(self, n: int):
        """Exact coefficient of var^n."""
        if n < 0:
            return self.zero_coeff
        if n > self.order:
            raise IndexError(
                f"coefficient {self.var}^{n} requested but series is known to order {self.order}"
            )
        return self.coeffs[n]

    def __getitem__(self, n: int):
        return self.coeff(n)

    def truncate(self, order: int) -> TruncSeries:
        if order > self.order:
            raise ValueError(f"cannot extend precision from {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1], self.var)

    def _kind(self, other):
        """'series' for a same-variable operand, 'scalar', or None to defer.

        Python never tries the reflected method when both operands are
        TruncSeries, so callers hand a deeper operand over explicitly.
        """
        if isinstance(other, TruncSeries) and other.var == self.var:
            if other.order != self.order:
                raise ValueError(
                    f"order mismatch in {self.var}: {self.order} vs {other.order}"
                )
            return "series"
        d = _depth(other)
        if d < self.depth:
            return "scalar"
        if d > self.depth:
            return None
        raise TypeError(f"ambiguous operands: {self!r} and {other!r}")

    def __add__(self, other):
        kind = self._kind(other)
        if kind is None:
            return _defer(other, "__radd__", self)
        if kind == "series":
            return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.var)
        return TruncSeries((self.coeffs[0] + other,) + self.coeffs[1:], self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        kind = self._kind(other)
        if kind is None:
            return _defer(other, "__rsub__", self)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        kind = self._kind(other)
        if kind is None:
            return _defer(other, "__rmul__", self)
        if kind == "scalar":
            return TruncSeries([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        T = self.order
        nz_b = [(j, c) for j, c in enumerate(b) if not is_zero(c)]
        out = []
        for n in range(T + 1):
            acc = None
            for j, c in nz_b:
                if j > n:
                    break
                term = a[n - j] * c
                acc = term if acc is None else acc + term
            out.append(self.zero_coeff if acc is None else acc)
        return TruncSeries(out, self.var)

    def __rmul__(self, other):
        kind = self._kind(other)
        if kind is None:
            return NotImplemented
        return TruncSeries([other * c for c in self.coeffs], self.var)

    def inverse(self) -> TruncSeries:
        c0 = self.coeffs[0]
        try:
            g0 = inverse(c0)
        except (ZeroDivisionError, ValueError, ArithmeticError) as exc:
            raise ValueError(
                f"constant term of series in {self.var} is not a unit"
            ) from exc
        f = self.coeffs
        g = [g0]
        for n in range(1, self.order + 1):
            acc = f[1] * g[n - 1]
            for j in range(2, n + 1):
                acc = acc + f[j] * g[n - j]
            g.append(-(g0 * acc))
        return TruncSeries(g, self.var)

    def __truediv__(self, other):
        kind = self._kind(other)
        if kind is None:
            return _defer(other, "__rtruediv__", self)
        if kind == "series":
            return self * other.inverse()
        return self * inverse(other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("series powers must be integers")
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = self.one()
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exp(self) -> TruncSeries:
        """exp of a series with zero constant term, via g' = f' g."""
        if not is_zero(self.coeffs[0]):
            raise ValueError("exp requires a series with zero constant term")
        f = self.coeffs
        g = [self.zero_coeff + 1]
        for n in range(1, self.order + 1):
            acc = None
            for k in range(1, n + 1):
                if is_zero(f[k]):
                    continue
                term = f[k] * g[n - k] * Fraction(k, n)
                acc = term if acc is None else acc + term
            g.append(self.zero_coeff if acc is None else acc)
        return TruncSeries(g, self.var)

    def derivative(self) -> TruncSeries:
        """d/dvar; the top coefficient becomes unknown so the order drops by one."""
        if self.order == 0:
            raise ValueError("derivative of an order-0 series has no known coefficients")
        return TruncSeries([c * n for n, c in enumerate(self.coeffs)][1:], self.var)

    def map(self, fn) -> TruncSeries:
        return TruncSeries([fn(c) for c in self.coeffs], self.var)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.var == other.var and self.coeffs == other.coeffs
        if _depth(other) < self.depth:
            return self.coeffs[0] == other and all(is_zero(c) for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if not is_zero(c):
                terms.append(f"({c})*{self.var}^{n}" if n else f"({c})")
        body = " + ".join(terms) or "0"
        return f"{body} + O({self.var}^{self.order + 1})"


def exp_linear(scale, order: int, one=Fraction(1), var: str = "x") -> TruncSeries:
    """exp(scale * var) to the given order; ``one`` fixes the coefficient ring."""
    coeffs = []
    power = one
    for n in range(order + 1):
        coeffs.append(power * Fraction(1, math.factorial(n)))
        power = power * scale
    return TruncSeries(coeffs, var)


class LaurentSeries:
    """sum_{n >= 0} body_n var^(valuation + n), with normalized valuation."""

    __slots__ = ("valuation", "body")

    def __init__(self, valuation: int, body: TruncSeries):
        lead = 0
        while lead < body.order and is_zero(body.coeffs[lead]):
            lead += 1
        if lead:
            body = TruncSeries(body.coeffs[lead:], body.var)
            valuation += lead
        self.valuation = valuation
        self.body = body

    @property
    def var(self) -> str:
        return self.body.var

    @property
    def precision(self) -> int:
        """Largest exponent whose coefficient is known."""
        return self.valuation + self.body.order

    def coeff(self, n: int):
        if n < self.valuation:
            return self.body.zero_coeff
        if n > self.precision:
            raise IndexError(
                f"coefficient {self.var}^{n} beyond known precision {self.precision}"
            )
        return self.body.coeffs[n - self.valuation]

    def _align(self, other: LaurentSeries):
        v = min(self.valuation, other.valuation)
        top = min(self.precision, other.precision)
        if top < v:
            raise ValueError("no overlapping precision")
        a = [self.coeff(n) for n in range(v, top + 1)]
        b = [other.coeff(n) for n in range(v, top + 1)]
        return v, a, b

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        v, a, b = self._align(other)
        return LaurentSeries(v, TruncSeries([x + y for x, y in zip(a, b)], self.var))

    def __neg__(self):
        return LaurentSeries(self.valuation, -self.body)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            n = min(self.body.order, other.body.order)
            prod = self.body.truncate(n) * other.body.truncate(n)
            return LaurentSeries(self.valuation + other.valuation, prod)
        return LaurentSeries(self.valuation, self.body * other)

    __rmul__ = __mul__

    def derivative(self) -> LaurentSeries:
        # Precision drops by exactly one, so every stored term stays exact.
        coeffs = [c * (self.valuation + n) for n, c in enumerate(self.body.coeffs)]
        return LaurentSeries(self.valuation - 1, TruncSeries(coeffs, self.var))

    def __repr__(self):
        return f"LaurentSeries(valuation={self.valuation}, body={self.body!r})"


def laurent_div_pow(f: TruncSeries, k: int) -> LaurentSeries:
    """f / var^(k+1); its residue is the coefficient of var^k in f."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if f.order < k:
        raise ValueError(
            f"series known to order {f.order}, need order {k} for the residue"
        )
    return LaurentSeries(-(k + 1), f)


def residue(f: LaurentSeries):
    """Coefficient of var^-1."""
    return f.coeff(-1)
