"""Truncated formal power series in the deformation parameter t.

Coefficients may be any objects supporting +, -, and (for products) *.
Every binary operation checks that both operands carry the same cap; there
is no implicit re-capping.
"""

from __future__ import annotations

from math import factorial

from .errors import ConfigurationError, PreconditionError
from .rationals import Fraction


class TruncatedSeries:
    """c0 + c1 t + ... + cK t^K with all arithmetic truncated at t^K."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap, coeffs):
        if cap < 0:
            raise ConfigurationError("order cap must be >= 0")
        coeffs = list(coeffs)
        if len(coeffs) != cap + 1:
            raise ConfigurationError(
                f"need {cap + 1} coefficients for cap {cap}, got {len(coeffs)}"
            )
        self.cap = cap
        self.coeffs = coeffs

    @classmethod
    def constant(cls, cap, value, zero):
        return cls(cap, [value] + [zero] * cap)

    def _check(self, other):
        if self.cap != other.cap:
            raise ConfigurationError(
                f"series cap mismatch: {self.cap} vs {other.cap}"
            )

    def __getitem__(self, k):
        return self.coeffs[k]

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(
            self.cap, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(
            self.cap, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return TruncatedSeries(self.cap, [-a for a in self.coeffs])

    def __mul__(self, other):
        """Cauchy product, truncated at the cap."""
        self._check(other)
        out = []
        for k in range(self.cap + 1):
            acc = None
            for p in range(k + 1):
                term = self.coeffs[p] * other.coeffs[k - p]
                acc = term if acc is None else acc + term
            out.append(acc)
        return TruncatedSeries(self.cap, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cap == other.cap and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.cap, tuple(self.coeffs)))

    def __repr__(self):
        return f"TruncatedSeries(cap={self.cap}, {self.coeffs!r})"

    def restrict(self, new_cap):
        """Forget orders above new_cap (explicit; never done implicitly)."""
        if new_cap > self.cap:
            raise ConfigurationError("cannot extend a truncated series")
        return TruncatedSeries(new_cap, self.coeffs[: new_cap + 1])

    def shift(self, k, zero):
        """Multiply by t^k, truncating at the cap."""
        return TruncatedSeries(
            self.cap, ([zero] * k + self.coeffs)[: self.cap + 1]
        )


def series_exp(x: TruncatedSeries, one, zero, is_zero=lambda c: not c):
    """exp of a series with no constant term: sum_{j<=K} x^j / j!.

    Requires a commutative-enough coefficient algebra with unit `one`.
    The sum is finite because x has t-valuation >= 1.
    """
    if not is_zero(x.coeffs[0]):
        raise PreconditionError("series_exp requires zero constant term")
    acc = TruncatedSeries.constant(x.cap, one, zero)
    power = acc
    for j in range(1, x.cap + 1):
        power = power * x
        inv = Fraction(1, factorial(j))
        acc = acc + TruncatedSeries(x.cap, [c * inv for c in power.coeffs])
    return acc
