"""Forms in X_0..X_m with polynomial-in-z coefficients, stored sparsely.

The exponent map sends tuples (e_0, ..., e_m) to nonzero Poly coefficients.
deg_X is the maximal total degree; most constructions in this package
produce honest homogeneous forms (see is_homogeneous), but substituted
forms such as the P_N of the lacunary harness are legitimately mixed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .enclosure import Enclosure
from .errors import ArityMismatch, ZeroForm
from .poly import Poly
from .series import TruncatedSeries


class AuxForm:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Poly]):
        if nvars < 1:
            raise ValueError("a form needs at least one variable")
        clean: dict[tuple[int, ...], Poly] = {}
        for exps, p in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for nvars={nvars}")
            if not isinstance(p, Poly):
                p = Poly.constant(p) if not isinstance(p, (list, tuple)) else Poly(p)
            if not p.is_zero:
                clean[exps] = p
        self.nvars = nvars
        self.terms = clean

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "AuxForm":
        return cls(nvars, {})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff=1) -> "AuxForm":
        p = coeff if isinstance(coeff, Poly) else Poly.constant(coeff)
        return cls(nvars, {tuple(exps): p})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "AuxForm":
        exps = [0] * nvars
        exps[index] = 1
        return cls.monomial(nvars, exps)

    # -- structure --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_X(self) -> int:
        """Max total X-degree (-1 for the zero form)."""
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def deg_z(self) -> int:
        return max((p.degree for p in self.terms.values()), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    @property
    def is_z_free(self) -> bool:
        return all(p.degree <= 0 for p in self.terms.values())

    def term_count(self) -> int:
        return len(self.terms)

    def height(self) -> Fraction:
        """Max |coefficient| over all z-powers of all terms."""
        return max((p.height() for p in self.terms.values()), default=Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, AuxForm)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Poly]]:
        return sorted(self.terms.items())

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "AuxForm") -> "AuxForm":
        if self.nvars != other.nvars:
            raise ArityMismatch("form arities differ")
        out = dict(self.terms)
        for exps, p in other.terms.items():
            out[exps] = out.get(exps, Poly.zero()) + p
        return AuxForm(self.nvars, out)

    def __neg__(self) -> "AuxForm":
        return AuxForm(self.nvars, {e: -p for e, p in self.terms.items()})

    def __sub__(self, other: "AuxForm") -> "AuxForm":
        return self + (-other)

    def __mul__(self, other: "AuxForm") -> "AuxForm":
        if self.nvars != other.nvars:
            raise ArityMismatch("form arities differ")
        out: dict[tuple[int, ...], Poly] = {}
        for e1, p1 in self.terms.items():
            for e2, p2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                prod = p1 * p2
                out[key] = out.get(key, Poly.zero()) + prod
        return AuxForm(self.nvars, out)

    def scale_poly(self, p: Poly) -> "AuxForm":
        if p.is_zero:
            return AuxForm.zero(self.nvars)
        return AuxForm(self.nvars, {e: q * p for e, q in self.terms.items()})

    def scale(self, x) -> "AuxForm":
        return self.scale_poly(Poly.constant(x))

    def pow(self, n: int) -> "AuxForm":
        result = AuxForm.monomial(self.nvars, (0,) * self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_z(self, k: int) -> "AuxForm":
        """Substitute z -> z^k in every coefficient."""
        return AuxForm(self.nvars, {e: p.subs_zpow(k) for e, p in self.terms.items()})

    def pad_vars(self, nvars: int) -> "AuxForm":
        """View the form in a larger variable ring (extra exponents zero)."""
        if nvars < self.nvars:
            raise ArityMismatch("cannot drop variables")
        if nvars == self.nvars:
            return self
        extra = (0,) * (nvars - self.nvars)
        return AuxForm(nvars, {e + extra: p for e, p in self.terms.items()})

    # -- evaluation -----------------------------------------------------------------

    def evaluate_series(self, series: Sequence[TruncatedSeries]) -> TruncatedSeries:
        """Compose with a vector of truncated series (one per variable)."""
        if len(series) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} series, got {len(series)}")
        window = min(s.guaranteed_order for s in series)
        acc = TruncatedSeries.zero(window)
        powers: dict[tuple[int, int], TruncatedSeries] = {}

        def var_pow(i: int, e: int) -> TruncatedSeries:
            got = powers.get((i, e))
            if got is None:
                got = series[i].pow(e, window)
                powers[(i, e)] = got
            return got

        for exps, p in self.terms.items():
            mono = TruncatedSeries.one(window)
            for i, e in enumerate(exps):
                if e:
                    mono = mono * var_pow(i, e)
            acc = acc + mono.mul_poly(p)
        return acc

    def evaluate_fractions(self, point: Sequence, z=None) -> Fraction:
        """Exact value at rational X-coordinates (z defaults to 0 for z-free)."""
        if len(point) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} coordinates")
        pt = [Fraction(x) for x in point]
        zval = Fraction(0) if z is None else Fraction(z)
        total = Fraction(0)
        for exps, p in self.terms.items():
            c = p.eval(zval) if p.degree > 0 else p.coeff(0)
            m = c
            for x, e in zip(pt, exps):
                if e:
                    m *= x**e
            total += m
        return total

    def evaluate_enclosures(self, point: Sequence[Enclosure], prec: int) -> Enclosure:
        """Interval value at Enclosure coordinates; coefficients must be z-free."""
        if not self.is_z_free:
            raise ValueError("interval evaluation requires z-free coefficients")
        if len(point) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} coordinates")
        total = Enclosure.zero(prec)
        for exps, p in self.terms.items():
            m = Enclosure.from_fraction(p.coeff(0), prec)
            for x, e in zip(point, exps):
                if e:
                    m = m * x.pow_int(e)
            total = total + m
        return total

    # -- normalization -----------------------------------------------------------------

    def integerized(self) -> "AuxForm":
        """Scale so all coefficients are integers of content 1.

        Sign convention: the coefficient of the lexicographically first term
        (at its lowest z-power) is positive.
        """
        if self.is_zero:
            raise ZeroForm("cannot normalize the zero form")
        dens = [c.denominator for p in self.terms.values() for c in p.coeffs]
        nums = [abs(c.numerator) for p in self.terms.values() for c in p.coeffs if c != 0]
        s = Fraction(math.gcd(*nums), math.lcm(*dens))
        first_exps = min(self.terms)
        lead_poly = self.terms[first_exps]
        lead = lead_poly.coeff(int(lead_poly.valuation))
        if lead < 0:
            s = -s
        return AuxForm(self.nvars, {e: p * (1 / s) for e, p in self.terms.items()})

    # -- serialization --------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "deg_X": self.deg_X,
            "terms": [
                {"exps": list(e), "poly": p.to_expr()} for e, p in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "AuxForm":
        from .parse import parse_poly

        nvars = int(doc["nvars"])
        terms = {tuple(t["exps"]): parse_poly(t["poly"]) for t in doc["terms"]}
        return cls(nvars, terms)

    def __repr__(self):
        if self.is_zero:
            return "AuxForm(0)"
        bits = []
        for exps, p in self.sorted_terms()[:6]:
            mono = "*".join(f"X{i}^{e}" for i, e in enumerate(exps) if e) or "1"
            bits.append(f"({p.to_expr()})*{mono}")
        more = " + ..." if len(self.terms) > 6 else ""
        return f"AuxForm({' + '.join(bits)}{more})"


def binary_form_coeffs(form: AuxForm) -> list[Fraction]:
    """Coefficient list c_i of X1^i (X0^(d-i)) for a z-free binary form."""
    if form.nvars != 2:
        raise ArityMismatch("expected a binary form")
    if form.is_zero:
        raise ZeroForm("zero binary form")
    if not form.is_z_free:
        raise ValueError("binary form must have z-free coefficients")
    if not form.is_homogeneous:
        raise ValueError("binary form must be homogeneous")
    d = form.deg_X
    out = [Fraction(0)] * (d + 1)
    for (e0, e1), p in form.terms.items():
        out[e1] = p.coeff(0)
    return out
