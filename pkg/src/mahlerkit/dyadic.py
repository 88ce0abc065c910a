"""Exact dyadic rationals with directed rounding.

A Dyadic is man * 2**exp with man odd (or man == 0, exp == 0).  These are
the endpoints of every Enclosure.  Directions are DOWN (-1, toward -inf)
and UP (+1, toward +inf); every rounding helper guarantees

    round(x, prec, DOWN) <= x <= round(x, prec, UP)

Operations never materialize integers much larger than the working
precision: additions and comparisons short-circuit when the binary
magnitude windows of the operands are far apart, which matters because
tail bounds like |beta|**(2**25) carry exponents in the tens of millions.
"""

from __future__ import annotations

import math
from fractions import Fraction

DOWN = -1
UP = 1

# |binary exponent| beyond which decimal output is clamped to a crude
# honest bound instead of an exact digit string
_DECIMAL_EXP_LIMIT = 350_000


class Dyadic:
    __slots__ = ("man", "exp")

    def __init__(self, man: int, exp: int = 0):
        if man == 0:
            self.man, self.exp = 0, 0
            return
        shift = (man & -man).bit_length() - 1  # strip trailing zero bits
        self.man = man >> shift
        self.exp = exp + shift

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Dyadic":
        return cls(n, 0)

    @classmethod
    def from_fraction(cls, x: Fraction, prec: int, direction: int) -> "Dyadic":
        """Directed conversion of an exact rational to a prec-bit dyadic."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        if p == 0:
            return cls(0)
        if q == 1:
            return cls(p).round(prec, direction)
        neg = p < 0
        a = -p if neg else p
        shift = prec + 2 - a.bit_length() + q.bit_length()
        if shift >= 0:
            num, den = a << shift, q
        else:
            num, den = a, q << (-shift)
        quo, rem = divmod(num, den)
        exact = rem == 0
        # |x| = (quo + rem/den) * 2**-shift
        if neg:
            mag_round_up = direction == DOWN
        else:
            mag_round_up = direction == UP
        if not exact and mag_round_up:
            quo += 1
        d = cls(-quo if neg else quo, -shift)
        return d.round(prec, direction)

    # -- basic structure --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.man == 0

    @property
    def sign(self) -> int:
        return 0 if self.man == 0 else (1 if self.man > 0 else -1)

    @property
    def top_exp(self) -> int:
        """t with 2**(t-1) <= |x| < 2**t (0 for zero)."""
        if self.man == 0:
            return 0
        return self.exp + abs(self.man).bit_length()

    def as_fraction(self) -> Fraction:
        """Exact value.  Refuses absurd exponents (would allocate megabytes)."""
        if abs(self.exp) > 4_000_000:
            raise OverflowError("dyadic exponent too large for Fraction conversion")
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def to_float(self) -> float:
        try:
            return math.ldexp(self.man, self.exp)
        except OverflowError:
            return math.inf if self.man > 0 else -math.inf

    def __repr__(self):
        f = self.to_float()
        return f"Dyadic({self.man}*2^{self.exp} ~ {f:.6g})"

    def __eq__(self, other):
        return isinstance(other, Dyadic) and self.man == other.man and self.exp == other.exp

    def __hash__(self):
        return hash((self.man, self.exp))

    # -- rounding ----------------------------------------------------------------

    def round(self, prec: int, direction: int) -> "Dyadic":
        if self.man == 0:
            return self
        bl = abs(self.man).bit_length()
        if bl <= prec:
            return self
        s = bl - prec
        if direction == DOWN:
            newman = self.man >> s  # floor division: toward -inf
        else:
            newman = -((-self.man) >> s)  # ceil
        return Dyadic(newman, self.exp + s)

    def bump(self, direction: int, prec: int) -> "Dyadic":
        """Move one prec-level ulp in the given direction."""
        if self.man == 0:
            return Dyadic(direction, -prec)
        ulp_exp = self.top_exp - prec
        if direction == UP:
            return self.add_exact(Dyadic(1, ulp_exp))
        return self.add_exact(Dyadic(-1, ulp_exp))

    # -- exact arithmetic (bounded operands) ---------------------------------------

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.man, self.exp)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.man), self.exp)

    def add_exact(self, other: "Dyadic") -> "Dyadic":
        """Exact sum; only safe when exponent windows are close."""
        if self.man == 0:
            return other
        if other.man == 0:
            return self
        e = min(self.exp, other.exp)
        return Dyadic((self.man << (self.exp - e)) + (other.man << (other.exp - e)), e)

    def mul_exact(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.man * other.man, self.exp + other.exp)

    def mul_pow2(self, k: int) -> "Dyadic":
        if self.man == 0:
            return self
        return Dyadic(self.man, self.exp + k)

    # -- comparisons ----------------------------------------------------------------

    def cmp(self, other: "Dyadic") -> int:
        sa, sb = self.sign, other.sign
        if sa != sb:
            return -1 if sa < sb else 1
        if sa == 0:
            return 0
        ta, tb = self.top_exp, other.top_exp
        if ta != tb:
            lesser = -1 if ta < tb else 1
            return lesser * sa
        # same sign and same magnitude window: aligned shift is small
        diff = self.add_exact(-other)
        return diff.sign

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def cmp_fraction(self, x: Fraction) -> int:
        """Exact sign of self - x with a magnitude-window shortcut."""
        x = Fraction(x)
        sx = (x > 0) - (x < 0)
        sa = self.sign
        if sa != sx:
            return -1 if sa < sx else 1
        if sa == 0:
            return 0
        tx = x.numerator.bit_length() - x.denominator.bit_length()  # within +-1
        ta = self.top_exp
        if abs(ta - tx) > 2:
            return sa if ta > tx else -sa
        # windows close: cross-multiply with a bounded shift
        p, q = x.numerator, x.denominator
        if self.exp >= 0:
            lhs = self.man * q << self.exp
            rhs = p
        else:
            lhs = self.man * q
            rhs = p << -self.exp
        return (lhs > rhs) - (lhs < rhs)

    # -- directed arithmetic -----------------------------------------------------------

    def add_dir(self, other: "Dyadic", prec: int, direction: int) -> "Dyadic":
        if self.man == 0:
            return other.round(prec, direction)
        if other.man == 0:
            return self.round(prec, direction)
        big, small = (self, other) if self.top_exp >= other.top_exp else (other, self)
        gap = big.top_exp - small.top_exp
        if gap <= prec + 4:
            return big.add_exact(small).round(prec, direction)
        # |small| < ulp(big at prec): round big, then nudge if the discarded
        # part lies on the wrong side of the direction
        r = big.round(prec, direction)
        if direction == DOWN and small.sign < 0:
            return r.bump(DOWN, prec)
        if direction == UP and small.sign > 0:
            return r.bump(UP, prec)
        # also account for big's own discarded bits already handled by round()
        return r

    def sub_dir(self, other: "Dyadic", prec: int, direction: int) -> "Dyadic":
        return self.add_dir(-other, prec, direction)

    def mul_dir(self, other: "Dyadic", prec: int, direction: int) -> "Dyadic":
        return self.mul_exact(other).round(prec, direction)

    def div_dir(self, other: "Dyadic", prec: int, direction: int) -> "Dyadic":
        if other.man == 0:
            raise ZeroDivisionError("dyadic division by zero")
        if self.man == 0:
            return self
        neg = (self.man > 0) != (other.man > 0)
        a, b = abs(self.man), abs(other.man)
        shift = prec + 2 - a.bit_length() + b.bit_length()
        if shift >= 0:
            num, den = a << shift, b
        else:
            num, den = a, b << -shift
        quo, rem = divmod(num, den)
        mag_up = (direction == UP) != neg
        if rem and mag_up:
            quo += 1
        d = Dyadic(-quo if neg else quo, self.exp - other.exp - shift)
        return d.round(prec, direction)

    def sqrt_dir(self, prec: int, direction: int) -> "Dyadic":
        if self.man < 0:
            raise ValueError("square root of a negative dyadic")
        if self.man == 0:
            return self
        m, e = self.man, self.exp
        if e & 1:
            m <<= 1
            e -= 1
        t = max(0, (2 * prec + 4 - m.bit_length() + 1) // 2)
        scaled = m << (2 * t)
        r = math.isqrt(scaled)
        exact = r * r == scaled
        if direction == UP and not exact:
            r += 1
        return Dyadic(r, e // 2 - t).round(prec, direction)

    def pow_dir(self, n: int, prec: int, direction: int) -> "Dyadic":
        """Directed n-th power of a nonnegative dyadic (square and multiply)."""
        if n < 0:
            raise ValueError("negative exponent")
        if self.man < 0:
            raise ValueError("pow_dir expects a nonnegative base")
        result = Dyadic(1)
        base = self
        while n:
            if n & 1:
                result = result.mul_dir(base, prec, direction)
            n >>= 1
            if n:
                base = base.mul_dir(base, prec, direction)
        return result

    # -- integer parts -------------------------------------------------------------------

    def floor(self) -> int:
        if self.exp >= 0:
            if self.exp > 1_000_000:
                raise OverflowError("floor of a dyadic with a huge exponent")
            return self.man << self.exp
        return self.man >> -self.exp

    # -- decimal output --------------------------------------------------------------------

    def to_decimal(self, digits: int, direction: int) -> str:
        """Directed decimal rendering, deterministic and platform independent."""
        if self.man == 0:
            return "0"
        neg = self.man < 0
        top = self.top_exp
        if top < -_DECIMAL_EXP_LIMIT:
            # |x| < 10^-99999: clamp to an honest one-sided bound
            if neg:
                return "-1e-99999" if direction == DOWN else "0"
            return "0" if direction == DOWN else "1e-99999"
        if top > _DECIMAL_EXP_LIMIT:
            raise OverflowError("decimal rendering of an astronomically large dyadic")
        a = abs(self.man)
        e10 = top * 30103 // 100000  # ~ floor(top*log10 2), corrected below
        for _ in range(4):
            scale = digits - 1 - e10
            num = a * (10**scale if scale >= 0 else 1) * (1 << self.exp if self.exp >= 0 else 1)
            den = (10**-scale if scale < 0 else 1) * (1 << -self.exp if self.exp < 0 else 1)
            quo, rem = divmod(num, den)
            if quo == 0:
                e10 -= 1
                continue
            if len(str(quo)) > digits:
                e10 += 1
                continue
            mag_up = (direction == UP) != neg
            if rem and mag_up:
                quo += 1
                if len(str(quo)) > digits:  # 999.. -> 1000..
                    quo //= 10
                    e10 += 1
            s = str(quo).ljust(digits, "0")
            body = s[0] + ("." + s[1:] if digits > 1 else "")
            return f"{'-' if neg else ''}{body}e{e10:+d}"
        raise AssertionError("decimal exponent search failed to settle")


D_ZERO = Dyadic(0)
D_ONE = Dyadic(1)
