"""Principal-ideal elimination quantities on the projective line.

For a principal ideal (P) the degree equals deg(P), log H((P)) is bounded
by log H(P) + m^2 deg(P), and the absolute value at omega is bounded by
|P(omega)| |omega|^(-deg P) (m+1)^(2m deg P).  dist on P^1 minimizes the
normalized cross term over certified root boxes.  The consistency check is
the surrogate of the elimination inequality obtained by replacing the
(externally defined) absolute value with its upper bound; the replacement
only loosens the inequality, so the verdict is labeled consistency, not
verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dyadic import UP, Dyadic
from .enclosure import BoxC, Enclosure, enclosure_min, log_of_fraction
from .errors import PrecisionExhausted, ZeroForm
from .forms import AuxForm
from .rng import derive_rng
from .roots import ProjRootBox, binary_form_roots


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fraction, ...]
    normalized: bool

    @classmethod
    def from_fractions(cls, coords: Sequence, normalize: bool = True) -> "ProjPoint":
        pt = tuple(Fraction(c) for c in coords)
        if all(c == 0 for c in pt):
            raise ValueError("projective point needs a nonzero coordinate")
        if normalize:
            m = max(abs(c) for c in pt)
            pt = tuple(c / m for c in pt)
        return cls(pt, normalize)

    @property
    def sup_norm(self) -> Fraction:
        return max(abs(c) for c in self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class PrincipalQuantities:
    deg: int
    logH_upper: Enclosure
    logAbs_upper: Enclosure | None  # None encodes -infinity (omega on V(P))


def principal_quantities(P: AuxForm, omega: ProjPoint, prec: int = 96) -> PrincipalQuantities:
    """deg, height-log bound, and absolute-value-log bound for the ideal (P)."""
    if P.is_zero:
        raise ZeroForm("principal ideal of the zero form")
    if not P.is_homogeneous or not P.is_z_free:
        raise ValueError("expected a z-free homogeneous form")
    if len(omega) != P.nvars:
        raise ValueError("point dimension does not match the form")
    m = P.nvars - 1
    deg = P.deg_X
    height = P.height()
    logH = log_of_fraction(height, prec).add_rat(m * m * deg)
    value = abs(P.evaluate_fractions(omega.coords))
    if value == 0:
        return PrincipalQuantities(deg, logH, None)
    # log(|P(w)| |w|^-deg (m+1)^(2m deg))
    logAbs = log_of_fraction(value, prec)
    logAbs = logAbs - log_of_fraction(omega.sup_norm, prec).mul_rat(deg)
    if m >= 1:
        logAbs = logAbs + log_of_fraction(Fraction(m + 1), prec).mul_rat(2 * m * deg)
    return PrincipalQuantities(deg, logH, logAbs)


def _cross_term(omega: ProjPoint, root: ProjRootBox, prec: int) -> Enclosure:
    """|w0 b1 - w1 b0| / (|b| |w|) for one root box."""
    b0, b1 = root.coords
    w0, w1 = omega.coords
    cross = b1.mul_rat(w0) - b0.mul_rat(w1)
    num = cross.modulus()
    beta_norm = _box_sup_norm(b0, b1)
    denom = beta_norm.mul_rat(omega.sup_norm)
    return num / denom


def _box_sup_norm(b0: BoxC, b1: BoxC) -> Enclosure:
    m0, m1 = b0.modulus(), b1.modulus()
    lo = max(m0.lo, m1.lo)
    hi = max(m0.hi, m1.hi)
    return Enclosure(lo, hi, max(m0.prec, m1.prec))


def dist_p1(F: AuxForm, omega: ProjPoint, prec: int = 64) -> Enclosure:
    """Normalized projective distance from omega to V(F) on the line.

    min over certified root boxes of |b|^-1 |w|^-1 |w0 b1 - w1 b0|,
    refinable by raising prec.
    """
    if F.is_zero:
        raise ZeroForm("distance to the zero form")
    if len(omega) != 2 or F.nvars != 2:
        raise ValueError("dist_p1 works on the projective line")
    # exact shortcut: omega itself on the variety
    if F.evaluate_fractions(omega.coords) == 0:
        return Enclosure.zero(prec)
    roots = binary_form_roots(F, prec=prec + 16)
    if not roots:
        raise ZeroForm("constant form has an empty variety")
    terms = [_cross_term(omega, r, prec + 16) for r in roots]
    result = enclosure_min(terms)
    return Enclosure(result.lo.round(prec, -1), result.hi.round(prec, 1), prec)


@dataclass(frozen=True)
class ElimCheck:
    verdict: str  # 'holds' | 'holds-trivially' | 'inconclusive' | 'violated'
    lhs: Enclosure | None  # None encodes -infinity
    rhs: Enclosure
    label: str = "consistency"

    @property
    def ok(self) -> bool:
        return self.verdict in ("holds", "holds-trivially")


def liouville_elim_check(F: AuxForm, omega: ProjPoint, prec: int = 96) -> ElimCheck:
    """Surrogate inequality deg(F) log dist(w, F) <= logAbs_upper + 3 deg(F).

    m = 1 and r = 1: the elimination inequality for a principal binary
    ideal, with the external |I(w)| replaced by its computable upper
    bound.  A certified LHS > RHS would be an implementation failure and
    is reported as 'violated'.
    """
    if F.is_zero:
        raise ZeroForm("zero form")
    deg = F.deg_X
    pq = principal_quantities(F, omega, prec)
    rhs = (pq.logAbs_upper if pq.logAbs_upper is not None else Enclosure.zero(prec)).add_rat(3 * deg)
    if pq.logAbs_upper is None:
        # omega on the variety: both sides -infinity, trivially consistent
        return ElimCheck("holds-trivially", None, rhs)
    if deg == 0:
        return ElimCheck("holds-trivially", None, rhs)
    work = prec
    for _ in range(4):
        dist = dist_p1(F, omega, work)
        if dist.lo.sign <= 0:
            if dist.hi.sign <= 0:
                return ElimCheck("holds-trivially", None, rhs)
            # distance may be zero: LHS unbounded below, trivially holds
            # unless it is certainly positive; refine
            work *= 2
            continue
        lhs = dist.log().mul_rat(deg)
        if lhs.certainly_le(rhs):
            return ElimCheck("holds", lhs, rhs)
        if rhs.certainly_lt(lhs):
            return ElimCheck("violated", lhs, rhs)
        work *= 2
    dist = dist_p1(F, omega, work)
    lhs = dist.log().mul_rat(deg) if dist.lo.sign > 0 else None
    return ElimCheck("inconclusive", lhs, rhs)


# -- randomized suite -----------------------------------------------------------------


@dataclass(frozen=True)
class SuiteRow:
    index: int
    seed: int
    deg: int
    coeffs: tuple[int, ...]
    omega: tuple[str, str]
    verdict: str
    lhs: tuple[str, str] | None
    rhs: tuple[str, str]


def _random_case(rng, degmax: int, coeffmax: int):
    while True:
        deg = rng.randint(1, degmax)
        coeffs = [rng.randint(-coeffmax, coeffmax) for _ in range(deg + 1)]
        if any(coeffs):
            break
    while True:
        w = (
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
        )
        if w[0] or w[1]:
            break
    return coeffs, w


def elim_suite(count: int, seed: int, degmax: int = 5, coeffmax: int = 10, prec: int = 96) -> list[SuiteRow]:
    """Seeded random binary forms checked against the surrogate inequality."""
    from .rng import derive_seed

    rows: list[SuiteRow] = []
    for idx in range(count):
        rng = derive_rng(seed, "elimsuite", idx)
        case_seed = derive_seed(seed, "elimsuite", idx)
        coeffs, w = _random_case(rng, degmax, coeffmax)
        deg = len(coeffs) - 1
        form = AuxForm(2, {(deg - i, i): c for i, c in enumerate(coeffs) if c})
        omega = ProjPoint.from_fractions(w)
        check = liouville_elim_check(form, omega, prec)
        rows.append(
            SuiteRow(
                idx,
                case_seed,
                form.deg_X,
                tuple(coeffs),
                (str(w[0]), str(w[1])),
                check.verdict,
                None if check.lhs is None else check.lhs.to_decimal(24),
                check.rhs.to_decimal(24),
            )
        )
    return rows
