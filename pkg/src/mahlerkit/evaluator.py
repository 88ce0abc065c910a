"""Rigorous evaluation of M-values.

Enclosures come from exact rational partial sums widened by a geometric
tail bound kappa * (rho|alpha|)^(N+1) / (1 - rho|alpha|).  The bound is a
certificate only when the coefficient profile was declared by the caller
(e.g. 0/1 coefficients); fitted profiles are exact on every computed
coefficient but the enclosure is labeled uncertified.

eval_via_system is the independent route: evaluate the solution vector at
the tiny point alpha^(q^k), then pull back through k exactly inverted
system matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import DOWN, UP, Dyadic
from .enclosure import Enclosure
from .errors import DeclaredBoundViolated, NotRegular, PointOutOfRange, TailDiverges
from .linalg import invert_fraction_matrix
from .mahler import MahlerEquation, MahlerSystem, expand_series, regularity
from .series import TruncatedSeries


@dataclass(frozen=True)
class GrowthProfile:
    rho: Fraction
    kappa: Fraction
    verified_to: int
    certified: bool
    reason: str = ""

    def __post_init__(self):
        if self.rho <= 0 or self.kappa <= 0:
            raise ValueError("profile parameters must be positive")


def growth_profile(s: TruncatedSeries, declared: tuple | None = None) -> GrowthProfile:
    """Coefficient growth bound |u_n| <= kappa * rho^n.

    With `declared` = (kappa, rho, reason) the bound is re-verified exactly
    on every computed coefficient and returned certified; otherwise rho is
    fitted on the upper half of the window (rounded up to a rational that
    provably covers it) and kappa is raised to cover everything computed.
    """
    n = s.guaranteed_order
    if n == 0:
        raise ValueError("cannot profile an empty series")
    if declared is not None:
        kappa, rho, reason = Fraction(declared[0]), Fraction(declared[1]), str(declared[2])
        for i, u in enumerate(s.coeffs):
            if abs(u) > kappa * rho**i:
                raise DeclaredBoundViolated(i)
        return GrowthProfile(rho, kappa, n - 1, True, reason)

    # fitted: rho >= |u_i|^(1/i) over the window [n/2, n)
    rho = Fraction(1, 2)
    for i in range(max(1, n // 2), n):
        u = abs(s.coeffs[i])
        if u == 0:
            continue
        while rho**i < u:
            rho = rho * Fraction(17, 16)
    kappa = Fraction(1)
    for i, u in enumerate(s.coeffs):
        bound = rho**i
        need = abs(u) / bound
        if need > kappa:
            kappa = need
    return GrowthProfile(rho, kappa, n - 1, False, "fitted on computed coefficients")


@dataclass(frozen=True)
class ValueEnclosure:
    value: Enclosure
    terms_used: int
    tail_bound: Dyadic
    certified: bool
    route: str
    partial_sum: Fraction | None = None

    def to_json_dict(self, digits: int = 40) -> dict:
        lo, hi = self.value.to_decimal(digits)
        return {
            "value_lo": lo,
            "value_hi": hi,
            "terms_used": self.terms_used,
            "tail_bound": self.tail_bound.to_decimal(12, UP),
            "certified": self.certified,
            "route": self.route,
        }


def _tail_fraction(profile: GrowthProfile, absalpha: Fraction, N: int) -> Fraction:
    r = profile.rho * absalpha
    return profile.kappa * r ** (N + 1) / (1 - r)


def _width_bits(target_width: Fraction) -> int:
    w = Fraction(target_width)
    return max(16, w.denominator.bit_length() - w.numerator.bit_length() + 2)


def eval_at(
    eq: MahlerEquation,
    alpha,
    profile: GrowthProfile,
    target_width: Fraction,
) -> ValueEnclosure:
    """Enclosure of f(alpha) from the minimal exact partial sum.

    N is the least truncation whose widened interval meets target_width;
    the partial sum itself is exact and returned alongside.
    """
    alpha = Fraction(alpha)
    if alpha == 0 or abs(alpha) >= 1:
        raise PointOutOfRange(f"need 0 < |alpha| < 1, got {alpha}")
    target_width = Fraction(target_width)
    if target_width <= 0:
        raise ValueError("target width must be positive")
    absalpha = abs(alpha)
    if profile.rho * absalpha >= 1:
        raise TailDiverges(f"rho*|alpha| = {profile.rho * absalpha} >= 1")

    # smallest N with 2*tail(N) <= (3/4) * target, leaving room for rounding
    budget = target_width * Fraction(3, 8)
    N = 0
    while _tail_fraction(profile, absalpha, N) > budget:
        N += 1
        if N > 10_000_000:
            raise AssertionError("tail bound failed to shrink")

    prec = _width_bits(target_width) + 64
    for _ in range(8):
        series = expand_series(eq, N + 1)
        partial = Fraction(0)
        for c in reversed(series.coeffs):
            partial = partial * alpha + c
        tail = _tail_fraction(profile, absalpha, N)
        tail_dy = Dyadic.from_fraction(tail, 64, UP)
        value = Enclosure.from_fraction(partial, prec).widen(tail_dy)
        if value.width().cmp_fraction(target_width) <= 0:
            return ValueEnclosure(value, N + 1, tail_dy, profile.certified, "direct", partial)
        prec *= 2  # automatic precision escalation
    raise AssertionError("width target unreachable despite escalation")


def eval_via_system(
    sys: MahlerSystem,
    eq: MahlerEquation,
    alpha,
    k: int,
    profile: GrowthProfile,
    target_width: Fraction,
) -> ValueEnclosure:
    """Evaluate at alpha^(q^k) and pull back through k inverted matrices.

    Requires alpha regular for sys with horizon >= k.  The matrices at the
    rational points alpha^(q^j) are exact and inverted exactly; only the
    final matrix-vector products run in interval arithmetic.
    """
    alpha = Fraction(alpha)
    if k < 0:
        raise ValueError("k must be nonnegative")
    report = regularity(sys, alpha)
    if not report.regular:
        raise NotRegular(report.failure_k, report.failure_point)
    if sys.structure is None:
        raise ValueError("system route needs a companion-derived system")
    struct = sys.structure
    q = sys.q

    # exact inverses A(alpha^(q^j))^-1 for j = 0..k-1
    inverses = []
    point = alpha
    for j in range(k):
        mat = sys.A.eval_matrix(point)  # defined: regularity certified
        inverses.append(invert_fraction_matrix(mat))
        point = point**q

    tiny = point  # alpha^(q^k)
    target = Fraction(target_width)
    inner = target / (4 ** (k + 1))
    prec = _width_bits(target) + 64 * (k + 1)
    for _ in range(8):
        comps: list[Enclosure] = []
        used = 0
        if struct.const_slot:
            comps.append(Enclosure.point_int(1, prec))
        base_pt = tiny
        for j in range(struct.order):
            ve = eval_at(eq, base_pt, profile, inner)
            used = max(used, ve.terms_used)
            comps.append(Enclosure.from_fraction(ve.partial_sum, prec).widen(ve.tail_bound))
            base_pt = base_pt**struct.base_q
        vec = comps
        for inv in reversed(inverses):
            vec = [
                _dot_exact_interval(row, vec, prec)
                for row in inv
            ]
        f_index = 1 if struct.const_slot else 0
        value = vec[f_index]
        if value.width().cmp_fraction(target) <= 0:
            return ValueEnclosure(
                value, used, value.width(), profile.certified, f"system-k{k}", None
            )
        inner = inner / 256
        prec *= 2
    raise AssertionError("system route width target unreachable")


def _dot_exact_interval(row, vec, prec: int) -> Enclosure:
    acc = Enclosure.zero(prec)
    for r, v in zip(row, vec):
        if r == 0:
            continue
        acc = acc + v.mul_rat(r)
    return acc


def denominator_growth(s: TruncatedSeries) -> list[int]:
    """lcm of coefficient denominators per prefix (observational datum)."""
    out = []
    acc = 1
    for u in s.coeffs:
        acc = math.lcm(acc, u.denominator)
        out.append(acc)
    return out
