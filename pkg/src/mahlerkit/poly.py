"""Dense univariate polynomials over exact rationals.

Coefficients are `fractions.Fraction` values indexed by the power of z.
The zero polynomial is the empty coefficient tuple; otherwise the trailing
coefficient is nonzero.  All operations are exact and return new objects.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class Poly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_coerce(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def constant(cls, x) -> "Poly":
        return cls((x,))

    @classmethod
    def z(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Poly":
        return cls([0] * k + [coeff])

    # -- structure ------------------------------------------------------------

    @property
    def coeffs(self) -> Sequence[Fraction]:
        return self._c

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def valuation(self):
        """Index of the first nonzero coefficient; math.inf for zero."""
        for i, x in enumerate(self._c):
            if x != 0:
                return i
        return math.inf

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._c[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return bool(self._c)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self._c])

    def __sub__(self, other) -> "Poly":
        return self + (-other if isinstance(other, Poly) else Poly.constant(-_coerce(other)))

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            k = _coerce(other)
            if k == 0:
                return Poly.zero()
            return Poly([x * k for x in self._c])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return Poly.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by z^k."""
        if not self._c:
            return self
        return Poly([Fraction(0)] * k + list(self._c))

    def subs_zpow(self, k: int) -> "Poly":
        """Return p(z^k)."""
        if k < 1:
            raise ValueError("substitution power must be >= 1")
        if k == 1 or not self._c:
            return self
        out = [Fraction(0)] * ((len(self._c) - 1) * k + 1)
        for i, x in enumerate(self._c):
            if x:
                out[i * k] = x
        return Poly(out)

    def derivative(self) -> "Poly":
        return Poly([i * x for i, x in enumerate(self._c)][1:])

    # -- evaluation -----------------------------------------------------------

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        x = _coerce(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    # -- exact division / gcd -------------------------------------------------

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = len(rem) - len(other._c)
        if dq < 0:
            return Poly.zero(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if top == 0:
                continue
            f = top / lead
            quot[k] = f
            for j, y in enumerate(other._c):
                rem[k + j] -= f * y
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self * (1 / self.leading)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def lcm(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly.zero()
        return (self * other).exact_div(self.gcd(other)).monic()

    def squarefree(self) -> "Poly":
        """Largest squarefree divisor with the same root set."""
        if self.degree < 1:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree < 1:
            return self.monic()
        return self.exact_div(g).monic()

    # -- integer normalization ------------------------------------------------

    def integerized(self) -> tuple["Poly", Fraction]:
        """Scale to coprime integer coefficients (positive leading).

        Returns (primitive integer polynomial, scalar s) with self == s * prim.
        """
        if self.is_zero:
            return self, Fraction(1)
        den = math.lcm(*[c.denominator for c in self._c])
        num = math.gcd(*[abs(c.numerator) for c in self._c if c != 0])
        s = Fraction(num, den)
        if self.leading < 0:
            s = -s
        return Poly([c / s for c in self._c]), s

    def height(self) -> Fraction:
        """Max absolute value of the coefficients (0 for the zero poly)."""
        return max((abs(c) for c in self._c), default=Fraction(0))

    # -- bounds ---------------------------------------------------------------

    def root_lower_bound(self) -> Fraction:
        """Positive r such that every nonzero complex root has modulus >= r.

        Strips the z^val factor, then applies the Cauchy bound to the
        reversed polynomial.  Returns 1 when there are no nonzero roots.
        """
        if self.is_zero:
            raise ValueError("zero polynomial has no root bound")
        v = self.valuation
        body = self._c[v:]
        if len(body) == 1:
            return Fraction(1)
        c0 = abs(body[0])
        biggest = max(abs(c) for c in body[1:])
        # roots of the reversal are reciprocals: |1/beta| <= 1 + max|c_i|/|c_0|
        return 1 / (1 + biggest / c0)

    # -- presentation ----------------------------------------------------------

    def to_expr(self) -> str:
        """Render as an expression the package parser accepts."""
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                zpow = "z" if i == 1 else f"z^{i}"
                body = zpow if mag == 1 else f"{mag}*{zpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.to_expr()})"


ZERO = Poly.zero()
ONE = Poly.one()
Z = Poly.z()


def poly_lcm_many(polys: Iterable[Poly]) -> Poly:
    acc = ONE
    for p in polys:
        if p.is_zero:
            continue
        acc = acc.lcm(p)
    return acc
