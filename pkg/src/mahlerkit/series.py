"""Truncated power series with a guaranteed-order marker.

A TruncatedSeries is the exact prefix u(0..N-1) of some power series; the
guaranteed order N equals the coefficient count.  Truncated operations
produce the longest prefix that stays exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly


class TruncatedSeries:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable):
        self._c = tuple(Fraction(x) for x in coeffs)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        if order < 1:
            raise ValueError("order must be positive")
        return cls([1] + [0] * (order - 1))

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncatedSeries":
        return cls([p.coeff(i) for i in range(order)])

    @property
    def coeffs(self) -> Sequence[Fraction]:
        return self._c

    @property
    def guaranteed_order(self) -> int:
        return len(self._c)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        raise IndexError(f"coefficient {k} exceeds guaranteed order {len(self._c)}")

    def prefix(self, n: int) -> "TruncatedSeries":
        if n > len(self._c):
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self._c[:n])

    def valuation(self):
        """First nonzero index, or math.inf if zero through the window."""
        for i, x in enumerate(self._c):
            if x != 0:
                return i
        return math.inf

    def is_zero_prefix(self) -> bool:
        return all(x == 0 for x in self._c)

    def to_poly(self) -> Poly:
        return Poly(self._c)

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(len(self._c), len(other._c))
        return TruncatedSeries([self._c[i] + other._c[i] for i in range(n)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(len(self._c), len(other._c))
        return TruncatedSeries([self._c[i] - other._c[i] for i in range(n)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-x for x in self._c])

    def scale(self, k) -> "TruncatedSeries":
        k = Fraction(k)
        return TruncatedSeries([k * x for x in self._c])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(len(self._c), len(other._c))
        out = [Fraction(0)] * n
        for i, x in enumerate(self._c[:n]):
            if x == 0:
                continue
            for j in range(n - i):
                y = other._c[j]
                if y:
                    out[i + j] += x * y
        return TruncatedSeries(out)

    def mul_poly(self, p: Poly) -> "TruncatedSeries":
        """Multiply by a polynomial; the window does not shrink."""
        n = len(self._c)
        out = [Fraction(0)] * n
        for i, x in enumerate(p.coeffs):
            if x == 0 or i >= n:
                continue
            for j in range(n - i):
                y = self._c[j]
                if y:
                    out[i + j] += x * y
        return TruncatedSeries(out)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by z^k (window preserved, prefix shifts in zeros)."""
        n = len(self._c)
        return TruncatedSeries(([Fraction(0)] * k + list(self._c))[:n])

    def subs_zpow(self, k: int, order: int | None = None) -> "TruncatedSeries":
        """Return s(z^k) to the requested order (default: k * current order)."""
        if k < 1:
            raise ValueError("substitution power must be >= 1")
        full = len(self._c) * k
        n = full if order is None else min(order, full)
        out = [Fraction(0)] * n
        for i, x in enumerate(self._c):
            if x and i * k < n:
                out[i * k] = x
        return TruncatedSeries(out)

    def pow(self, n: int, order: int | None = None) -> "TruncatedSeries":
        out_order = len(self._c) if order is None else min(order, len(self._c))
        result = TruncatedSeries.one(out_order)
        base = self.prefix(out_order)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self):
        head = ", ".join(str(x) for x in self._c[:8])
        more = ", ..." if len(self._c) > 8 else ""
        return f"TruncatedSeries([{head}{more}], order={len(self._c)})"
