"""Rational functions in z and matrices thereof.

RatFun keeps num/den reduced with a monic denominator.  MatRF is an
immutable rectangular grid of RatFun supporting the handful of exact
operations the Mahler-system code needs: product, determinant, inverse,
substitution z -> z^k, and pointwise rational evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import ONE, Poly, poly_lcm_many


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly.zero(), Poly.one()
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lead = den.leading
            if lead != 1:
                num, den = num * (1 / lead), den * (1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls(p, Poly.one())

    @classmethod
    def constant(cls, x) -> "RatFun":
        return cls(Poly.constant(x), Poly.one())

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_poly(self) -> bool:
        return self.den == ONE

    def as_poly(self) -> Poly:
        if not self.is_poly:
            raise ValueError(f"{self!r} is not a polynomial")
        return self.num

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self == RatFun.from_poly(other if isinstance(other, Poly) else Poly.constant(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatFun":
        other = self._coerce(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "RatFun":
        other = self._coerce(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return RatFun(self.den, self.num) ** (-n)
        return RatFun(self.num**n, self.den**n)

    @staticmethod
    def _coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, Poly):
            return RatFun.from_poly(x)
        return RatFun.constant(x)

    def subs_zpow(self, k: int) -> "RatFun":
        return RatFun(self.num.subs_zpow(k), self.den.subs_zpow(k))

    def eval(self, x) -> Fraction:
        d = self.den.eval(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.eval(x) / d

    def defined_at(self, x) -> bool:
        return self.den.eval(x) != 0

    def __repr__(self):
        if self.is_poly:
            return self.num.to_expr()
        return f"({self.num.to_expr()})/({self.den.to_expr()})"


R_ZERO = RatFun.from_poly(Poly.zero())
R_ONE = RatFun.from_poly(Poly.one())


class MatRF:
    """Immutable matrix of rational functions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = tuple(tuple(RatFun._coerce(e) for e in row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("matrix must be nonempty")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("matrix rows have unequal length")
        self.entries = grid
        self.rows = len(grid)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "MatRF":
        return cls([[R_ONE if i == j else R_ZERO for j in range(n)] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, MatRF) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __mul__(self, other: "MatRF") -> "MatRF":
        if self.cols != other.rows:
            raise ValueError("matrix dimensions do not match")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = R_ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero:
                        continue
                    b = other.entries[k][j]
                    if b.is_zero:
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatRF(out)

    def subs_zpow(self, k: int) -> "MatRF":
        return MatRF([[e.subs_zpow(k) for e in row] for row in self.entries])

    def det(self) -> RatFun:
        """Determinant by fraction-field Gaussian elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [list(row) for row in self.entries]
        det = R_ONE
        for col in range(n):
            piv = next((r for r in range(col, n) if not m[r][col].is_zero), None)
            if piv is None:
                return R_ZERO
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            pivot = m[col][col]
            det = det * pivot
            inv = R_ONE / pivot
            for r in range(col + 1, n):
                f = m[r][col] * inv
                if f.is_zero:
                    continue
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
        return det

    def inverse(self) -> "MatRF":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        m = [list(row) + [R_ONE if i == j else R_ZERO for j in range(n)] for i, row in enumerate(self.entries)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not m[r][col].is_zero), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular over the function field")
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
            inv = R_ONE / m[col][col]
            m[col] = [e * inv for e in m[col]]
            for r in range(n):
                if r == col or m[r][col].is_zero:
                    continue
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return MatRF([row[n:] for row in m])

    def eval_matrix(self, x) -> list[list[Fraction]]:
        """Evaluate every entry at a rational point (raises at poles)."""
        return [[e.eval(x) for e in row] for row in self.entries]

    def defined_at(self, x) -> bool:
        return all(e.defined_at(x) for row in self.entries for e in row)

    def denominator_lcm(self) -> Poly:
        return poly_lcm_many([e.den for row in self.entries for e in row])

    def direct_sum(self, other: "MatRF") -> "MatRF":
        top = [list(row) + [R_ZERO] * other.cols for row in self.entries]
        bottom = [[R_ZERO] * self.cols + list(row) for row in other.entries]
        return MatRF(top + bottom)

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.entries)
        return f"MatRF[{body}]"
