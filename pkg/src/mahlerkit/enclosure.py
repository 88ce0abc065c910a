"""Certified interval arithmetic over dyadic endpoints.

Enclosure is the package's only carrier of approximate real values: a
closed interval [lo, hi] of exact dyadics, every operation rounding lo
toward -inf and hi toward +inf at the working precision.  Transcendental
helpers (log, exp) use integer-power-of-two argument reduction and series
with explicit remainder bounds, so containment is unconditional.

BoxC is the complex rectangle built from two Enclosures (re, im); it backs
root enclosures and projective distance computations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .dyadic import DOWN, UP, D_ONE, D_ZERO, Dyadic


class Enclosure:
    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: Dyadic, hi: Dyadic, prec: int):
        if prec < 8:
            raise ValueError("precision too small")
        if lo.cmp(hi) > 0:
            raise ValueError(f"inverted interval: {lo!r} > {hi!r}")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- constructors ------------------------------------------------------------

    @classmethod
    def point_int(cls, n: int, prec: int) -> "Enclosure":
        d = Dyadic.from_int(n)
        return cls(d.round(prec, DOWN), d.round(prec, UP), prec)

    @classmethod
    def from_fraction(cls, x, prec: int) -> "Enclosure":
        x = Fraction(x)
        return cls(
            Dyadic.from_fraction(x, prec, DOWN),
            Dyadic.from_fraction(x, prec, UP),
            prec,
        )

    @classmethod
    def from_fractions(cls, lo, hi, prec: int) -> "Enclosure":
        return cls(
            Dyadic.from_fraction(Fraction(lo), prec, DOWN),
            Dyadic.from_fraction(Fraction(hi), prec, UP),
            prec,
        )

    @classmethod
    def from_dyadics(cls, lo: Dyadic, hi: Dyadic, prec: int) -> "Enclosure":
        return cls(lo.round(prec, DOWN), hi.round(prec, UP), prec)

    @classmethod
    def zero(cls, prec: int) -> "Enclosure":
        return cls(D_ZERO, D_ZERO, prec)

    # -- structure ---------------------------------------------------------------

    def is_point(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Dyadic:
        """Upper bound on hi - lo."""
        return self.hi.sub_dir(self.lo, self.prec, UP)

    def mid(self) -> Dyadic:
        return self.lo.add_dir(self.hi, self.prec + 2, DOWN).mul_pow2(-1)

    def contains_fraction(self, x) -> bool:
        x = Fraction(x)
        return self.lo.cmp_fraction(x) <= 0 <= self.hi.cmp_fraction(x)

    def contains_dyadic(self, d: Dyadic) -> bool:
        return self.lo.cmp(d) <= 0 <= self.hi.cmp(d)

    def straddles_zero(self) -> bool:
        return self.lo.sign <= 0 <= self.hi.sign

    def is_positive(self) -> bool:
        return self.lo.sign > 0

    def is_negative(self) -> bool:
        return self.hi.sign < 0

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo.cmp(other.hi) <= 0 and other.lo.cmp(self.hi) <= 0

    def contains_interval(self, other: "Enclosure") -> bool:
        return self.lo.cmp(other.lo) <= 0 and other.hi.cmp(self.hi) <= 0

    def certainly_le(self, other: "Enclosure") -> bool:
        return self.hi.cmp(other.lo) <= 0

    def certainly_lt(self, other: "Enclosure") -> bool:
        return self.hi.cmp(other.lo) < 0

    def to_decimal(self, digits: int = 40) -> tuple[str, str]:
        return self.lo.to_decimal(digits, DOWN), self.hi.to_decimal(digits, UP)

    def __repr__(self):
        lo, hi = self.lo.to_float(), self.hi.to_float()
        return f"Enclosure[{lo:.12g}, {hi:.12g}]@{self.prec}"

    # -- arithmetic ----------------------------------------------------------------

    def _p(self, other=None) -> int:
        if other is None:
            return self.prec
        return max(self.prec, other.prec)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo, self.prec)

    def __add__(self, other: "Enclosure") -> "Enclosure":
        p = self._p(other)
        return Enclosure(
            self.lo.add_dir(other.lo, p, DOWN),
            self.hi.add_dir(other.hi, p, UP),
            p,
        )

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return self + (-other)

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        p = self._p(other)
        cands = [
            self.lo.mul_exact(other.lo),
            self.lo.mul_exact(other.hi),
            self.hi.mul_exact(other.lo),
            self.hi.mul_exact(other.hi),
        ]
        lo = min(cands)
        hi = max(cands)
        return Enclosure(lo.round(p, DOWN), hi.round(p, UP), p)

    def mul_rat(self, x) -> "Enclosure":
        return self * Enclosure.from_fraction(Fraction(x), self.prec)

    def add_rat(self, x) -> "Enclosure":
        return self + Enclosure.from_fraction(Fraction(x), self.prec)

    def scale2(self, k: int) -> "Enclosure":
        return Enclosure(self.lo.mul_pow2(k), self.hi.mul_pow2(k), self.prec)

    def widen(self, slack: Dyadic) -> "Enclosure":
        """Pad both ends outward by a nonnegative dyadic amount."""
        if slack.sign < 0:
            raise ValueError("widening slack must be nonnegative")
        return Enclosure(
            self.lo.sub_dir(slack, self.prec, DOWN),
            self.hi.add_dir(slack, self.prec, UP),
            self.prec,
        )

    def abs(self) -> "Enclosure":
        if self.lo.sign >= 0:
            return self
        if self.hi.sign <= 0:
            return -self
        return Enclosure(D_ZERO, max(-self.lo, self.hi), self.prec)

    def recip(self) -> "Enclosure":
        if self.straddles_zero():
            raise ZeroDivisionError("reciprocal of an interval containing zero")
        p = self.prec
        return Enclosure(
            D_ONE.div_dir(self.hi, p, DOWN),
            D_ONE.div_dir(self.lo, p, UP),
            p,
        )

    def __truediv__(self, other: "Enclosure") -> "Enclosure":
        return self * other.recip()

    def pow_int(self, n: int) -> "Enclosure":
        if n < 0:
            return self.pow_int(-n).recip()
        p = self.prec
        if n == 0:
            return Enclosure(D_ONE, D_ONE, p)
        if self.lo.sign >= 0:
            return Enclosure(self.lo.pow_dir(n, p, DOWN), self.hi.pow_dir(n, p, UP), p)
        if self.hi.sign <= 0:
            mag = (-self).pow_int(n)
            return -mag if n % 2 else mag
        # straddles zero
        lo_mag = (-self.lo).pow_dir(n, p, UP)
        hi_mag = self.hi.pow_dir(n, p, UP)
        if n % 2:
            return Enclosure(-lo_mag, hi_mag, p)
        return Enclosure(D_ZERO, max(lo_mag, hi_mag), p)

    def sqrt(self) -> "Enclosure":
        """Square root of the interval intersected with [0, inf)."""
        if self.hi.sign < 0:
            raise ValueError("square root of a negative interval")
        lo = self.lo if self.lo.sign > 0 else D_ZERO
        p = self.prec
        return Enclosure(lo.sqrt_dir(p, DOWN), self.hi.sqrt_dir(p, UP), p)

    def min_with(self, other: "Enclosure") -> "Enclosure":
        p = self._p(other)
        return Enclosure(min(self.lo, other.lo), min(self.hi, other.hi), p)

    def hull(self, other: "Enclosure") -> "Enclosure":
        p = self._p(other)
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi), p)

    # -- transcendental ---------------------------------------------------------------

    def log(self) -> "Enclosure":
        if self.lo.sign <= 0:
            raise ValueError("log requires a certified positive interval")
        p = self.prec
        lo = _ln_dyadic(self.lo, p).lo
        hi = _ln_dyadic(self.hi, p).hi
        return Enclosure(lo, hi, p)

    def exp(self) -> "Enclosure":
        p = self.prec
        lo = _exp_dyadic(self.lo, p).lo
        hi = _exp_dyadic(self.hi, p).hi
        return Enclosure(lo, hi, p)


def enclosure_min(items: Iterable[Enclosure]) -> Enclosure:
    """Interval containing min_i x_i when x_i is in items[i]."""
    items = list(items)
    if not items:
        raise ValueError("minimum of an empty collection")
    acc = items[0]
    for e in items[1:]:
        acc = acc.min_with(e)
    return acc


def enclosure_sum(items: Iterable[Enclosure], prec: int) -> Enclosure:
    acc = Enclosure.zero(prec)
    for e in items:
        acc = acc + e
    return acc


# -- ln / exp kernels ---------------------------------------------------------------

_LN2_CACHE: dict[int, Enclosure] = {}


def _atanh_small(y: Enclosure, prec: int) -> Enclosure:
    """atanh on |y| <= 1/2, by odd series with an explicit tail bound."""
    y_abs_hi = y.abs().hi
    if y_abs_hi.cmp_fraction(Fraction(1, 2)) > 0:
        raise ValueError("atanh argument reduction failed")
    y2 = y * y
    term = y
    total = y
    j = 1
    # stop when the next term is below 2^-(prec+6); the series alternates in
    # sign only through y itself, so bound the tail geometrically via y^2
    tiny = Dyadic(1, -(prec + 6))
    while True:
        term = term * y2
        contrib = term.mul_rat(Fraction(1, 2 * j + 1))
        total = total + contrib
        j += 1
        if contrib.abs().hi.cmp(tiny) <= 0:
            break
        if j > 4 * prec:
            raise AssertionError("atanh series failed to converge")
    # tail: sum_{i>=j} |y|^(2i+1)/(2i+1) <= |y|^(2j+1)/(1-|y|^2)
    tail_mag = y_abs_hi.pow_dir(2 * j + 1, prec, UP)
    one_minus = D_ONE.sub_dir(y_abs_hi.mul_dir(y_abs_hi, prec, UP), prec, DOWN)
    tail = tail_mag.div_dir(one_minus, prec, UP)
    return total.widen(tail)


def ln2_enclosure(prec: int) -> Enclosure:
    got = _LN2_CACHE.get(prec)
    if got is None:
        y = Enclosure.from_fraction(Fraction(1, 3), prec + 8)
        got = _atanh_small(y, prec + 8).scale2(1)
        got = Enclosure(got.lo.round(prec, DOWN), got.hi.round(prec, UP), prec)
        _LN2_CACHE[prec] = got
    return got


def _ln_dyadic(d: Dyadic, prec: int) -> Enclosure:
    if d.sign <= 0:
        raise ValueError("ln of a nonpositive dyadic")
    p = prec + 8
    # d = m * 2^e with m in [1, 2)
    bl = d.man.bit_length()
    m = Dyadic(d.man, -(bl - 1))
    e = d.exp + bl - 1
    # ln m = 2 atanh((m-1)/(m+1)), argument in [0, 1/3)
    num = Enclosure.from_dyadics(m, m, p).add_rat(-1)
    den = Enclosure.from_dyadics(m, m, p).add_rat(1)
    y = num / den
    lnm = _atanh_small(y, p).scale2(1)
    if e:
        lnm = lnm + ln2_enclosure(p).mul_rat(e)
    return Enclosure(lnm.lo.round(prec, DOWN), lnm.hi.round(prec, UP), prec)


def _exp_dyadic(d: Dyadic, prec: int) -> Enclosure:
    p = prec + 8
    if d.is_zero:
        return Enclosure(D_ONE, D_ONE, prec)
    approx = d.to_float()
    if not math.isfinite(approx) or abs(approx) > 1e15:
        raise OverflowError("exp argument out of supported range")
    k = int(round(approx / math.log(2)))
    r = Enclosure.from_dyadics(d, d, p)
    if k:
        r = r - ln2_enclosure(p).mul_rat(k)
    # |r| <= ~0.7 after reduction
    r_mag = r.abs().hi
    if r_mag.cmp_fraction(Fraction(3, 4)) > 0:
        raise AssertionError("exp argument reduction failed")
    total = Enclosure.point_int(1, p)
    term = Enclosure.point_int(1, p)
    tiny = Dyadic(1, -(p + 4))
    j = 0
    while True:
        j += 1
        term = (term * r).mul_rat(Fraction(1, j))
        total = total + term
        if term.abs().hi.cmp(tiny) <= 0:
            break
        if j > 4 * p:
            raise AssertionError("exp series failed to converge")
    # tail <= |term_{j+1}| * 2 once |r|/(j+2) <= 1/2
    nxt = term.abs().hi.mul_dir(r_mag, p, UP).div_dir(Dyadic.from_int(j + 1), p, UP)
    total = total.widen(nxt.mul_pow2(1))
    total = total.scale2(k)
    return Enclosure(total.lo.round(prec, DOWN), total.hi.round(prec, UP), prec)


def log_of_fraction(x, prec: int) -> Enclosure:
    """ln of an exact positive rational."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a nonpositive rational")
    return Enclosure.from_fraction(x, prec + 8).log()


# -- complex rectangles ---------------------------------------------------------------


class BoxC:
    """Axis-aligned complex rectangle re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re: Enclosure, im: Enclosure):
        self.re = re
        self.im = im

    @classmethod
    def point_fraction(cls, re, im, prec: int) -> "BoxC":
        return cls(Enclosure.from_fraction(re, prec), Enclosure.from_fraction(im, prec))

    @classmethod
    def zero(cls, prec: int) -> "BoxC":
        return cls(Enclosure.zero(prec), Enclosure.zero(prec))

    def __add__(self, other: "BoxC") -> "BoxC":
        return BoxC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "BoxC") -> "BoxC":
        return BoxC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "BoxC") -> "BoxC":
        return BoxC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def mul_enclosure(self, e: Enclosure) -> "BoxC":
        return BoxC(self.re * e, self.im * e)

    def mul_rat(self, x) -> "BoxC":
        return BoxC(self.re.mul_rat(x), self.im.mul_rat(x))

    def abs_sq(self) -> Enclosure:
        return self.re.pow_int(2) + self.im.pow_int(2)

    def modulus(self) -> Enclosure:
        return self.abs_sq().sqrt()

    def contains_complex_fraction(self, re, im) -> bool:
        return self.re.contains_fraction(re) and self.im.contains_fraction(im)

    def is_real_point(self) -> bool:
        return self.im.is_point() and self.im.lo.is_zero

    def __repr__(self):
        return f"BoxC({self.re!r}, {self.im!r})"
