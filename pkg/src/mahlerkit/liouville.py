"""Lacunary-series harness: growth checks with exact integer arithmetic,
xi = sum beta^(u_n) enclosures, the Q_N / P_N polynomial identities,
bound-shape evaluation, exhaustive polynomial minimum scans, and interval
continued fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dyadic import DOWN, UP, Dyadic
from .enclosure import Enclosure, ln2_enclosure, log_of_fraction
from .errors import ArityMismatch, BetaNotContracting, PrecisionExhausted
from .evaluator import ValueEnclosure
from .forms import AuxForm
from .poly import Poly
from .rng import derive_rng, derive_seed


# -- exponent sequences -------------------------------------------------------------


class ExponentSeq:
    """Strictly increasing positive integer exponents, lazily extended.

    Generators: explicit list, tower(b, c) with u_n = b^(c^n), and
    factorial with u_n = (n+1)!  (shifted so the sequence strictly
    increases; xi at beta = 1/10 is then the classical Liouville constant).
    """

    def __init__(self, kind: str, params: tuple, values: list[int]):
        self.kind = kind
        self.params = params
        self._vals = values

    @classmethod
    def explicit(cls, values: Sequence[int]) -> "ExponentSeq":
        vals = [int(v) for v in values]
        cls._validate(vals)
        return cls("explicit", (), vals)

    @classmethod
    def tower(cls, b: int, c: int) -> "ExponentSeq":
        if b < 2 or c < 2:
            raise ValueError("tower needs b >= 2 and c >= 2")
        return cls("tower", (b, c), [])

    @classmethod
    def factorial(cls) -> "ExponentSeq":
        return cls("factorial", (), [])

    @staticmethod
    def _validate(vals: list[int]):
        if any(v <= 0 for v in vals):
            raise ValueError("exponents must be positive")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("exponents must be strictly increasing")

    def _extend_to(self, n: int):
        while len(self._vals) <= n:
            i = len(self._vals)
            if self.kind == "tower":
                b, c = self.params
                self._vals.append(b ** (c**i))
            elif self.kind == "factorial":
                self._vals.append(math.factorial(i + 1))
            else:
                raise IndexError(f"explicit sequence has only {len(self._vals)} terms")

    def u(self, n: int) -> int:
        if n < 0:
            raise IndexError("negative index")
        self._extend_to(n)
        return self._vals[n]

    def values(self, upto: int) -> list[int]:
        return [self.u(n) for n in range(upto)]

    def describe(self) -> str:
        if self.kind == "tower":
            b, c = self.params
            return f"tower({b},{c})"
        if self.kind == "factorial":
            return "factorial"
        return f"explicit{self._vals}"


# -- growth condition ---------------------------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    n: int
    u_n: int
    u_next: int
    holds: bool  # u_{n+1} > u_n^C
    ratio: Fraction | None  # exact u_{n+1}/u_n^C when C is integral


@dataclass(frozen=True)
class GrowthReport:
    C: Fraction
    rows: list[GrowthRow]
    increasing: bool


def growth_check(u: ExponentSeq, C, upto: int) -> GrowthReport:
    """Exact comparison of u_{n+1} against u_n^C for n < upto.

    Rational C = p/r is handled by cross-multiplication (u_{n+1}^r vs
    u_n^p); the summary flag states whether the ratio sequence increases
    over the checked range.
    """
    C = Fraction(C)
    if upto < 1:
        raise ValueError("upto must be >= 1")
    p, r = C.numerator, C.denominator
    rows: list[GrowthRow] = []
    for n in range(upto):
        un, unext = u.u(n), u.u(n + 1)
        holds = unext**r > un**p
        ratio = Fraction(unext, un**p) if r == 1 else None
        rows.append(GrowthRow(n, un, unext, holds, ratio))
    increasing = True
    for n in range(upto - 1):
        # ratio_n < ratio_{n+1}  <=>  u_{n+1}^(r+p) < u_{n+2}^r * u_n^p
        a, b, c = u.u(n), u.u(n + 1), u.u(n + 2)
        if not b ** (r + p) < c**r * a**p:
            increasing = False
            break
    return GrowthReport(C, rows, increasing)


# -- xi values ----------------------------------------------------------------------


def xi_value(beta, u: ExponentSeq, terms: int, target_width: Fraction, prec: int | None = None) -> ValueEnclosure:
    """Enclosure of xi = sum_n beta^(u_n) from `terms` summands plus tail.

    beta may be an exact rational or a ValueEnclosure; its modulus must be
    certified below 1.  The tail uses |beta|_hi^(u_terms) / (1 - |beta|_hi),
    valid because the exponents are strictly increasing integers.
    """
    target_width = Fraction(target_width)
    if prec is None:
        prec = max(96, target_width.denominator.bit_length() + 64)
    exact_beta = None
    certified = True
    if isinstance(beta, ValueEnclosure):
        enc = beta.value
        certified = beta.certified
    elif isinstance(beta, Enclosure):
        enc = beta
    else:
        exact_beta = Fraction(beta)
        enc = Enclosure.from_fraction(exact_beta, prec)
    abs_hi = enc.abs().hi
    if abs_hi.cmp_fraction(1) >= 0:
        raise BetaNotContracting("upper end of |beta| is not below 1")

    if exact_beta is not None and terms <= 64 and u.u(max(terms - 1, 0)) <= 1 << 16:
        partial = sum((exact_beta ** u.u(n) for n in range(terms)), Fraction(0))
        value = Enclosure.from_fraction(partial, prec)
        partial_out = partial
    else:
        value = Enclosure.zero(prec)
        base = enc if exact_beta is None else Enclosure.from_fraction(exact_beta, prec)
        for n in range(terms):
            value = value + base.pow_int(u.u(n))
        partial_out = None
    tail = abs_hi.pow_dir(u.u(terms), prec, UP)
    one_minus = Dyadic.from_int(1).sub_dir(abs_hi, prec, DOWN)
    tail = tail.div_dir(one_minus, prec, UP)
    value = value.widen(tail)
    return ValueEnclosure(value, terms, tail, certified, "lacunary", partial_out)


# -- Q_N / P_N ------------------------------------------------------------------------


def qn_form(u: ExponentSeq, N: int) -> AuxForm:
    """Binary form sum_{n<=N} X0^(u_n) X1^(u_N - u_n): degree u_N, height 1."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    uN = u.u(N)
    terms = {}
    for n in range(N + 1):
        un = u.u(n)
        terms[(un, uN - un)] = Poly.one()
    return AuxForm(2, terms)


def pn_build(P: AuxForm, Q_N: AuxForm, u_N: int) -> AuxForm:
    """Substitute X_i -> X_i * X_r^(u_N) and Y -> Q_N(X_{r-1}, X_r) into P.

    P lives in (X_1..X_{r-2}, Y); the result lives in (X_1..X_r) with
    degree at most deg(P) * (u_N + 1) and height bounded in terms of P and
    N alone.
    """
    if Q_N.nvars != 2:
        raise ArityMismatch("Q_N must be binary")
    if P.is_zero:
        raise ArityMismatch("P must be nonzero")
    if not P.is_z_free or not Q_N.is_z_free:
        raise ArityMismatch("substitution forms must be z-free")
    r = P.nvars + 1
    if r == 2:
        qn = Q_N
    else:
        # Q_N's two variables land in the last two slots
        qn = AuxForm(
            r,
            {
                (0,) * (r - 2) + (e0, e1): p
                for (e0, e1), p in Q_N.terms.items()
            },
        )
    out = AuxForm.zero(r)
    qn_pows: dict[int, AuxForm] = {0: AuxForm.monomial(r, (0,) * r, 1)}

    def qn_pow(e: int) -> AuxForm:
        if e not in qn_pows:
            qn_pows[e] = qn_pow(e - 1) * qn
        return qn_pows[e]

    for exps, coef in P.terms.items():
        xs, ey = exps[:-1], exps[-1]
        base_exps = tuple(xs) + (0, u_N * sum(xs))
        term = AuxForm.monomial(r, base_exps, coef.coeff(0))
        if ey:
            term = term * qn_pow(ey)
        out = out + term
    return out


# -- bound profiles ---------------------------------------------------------------------


@dataclass(frozen=True)
class BoundProfile:
    c1: Fraction
    tau: int

    def __post_init__(self):
        if self.c1 <= 0:
            raise ValueError("c1 must be positive")
        if self.tau < 1:
            raise ValueError("tau must be >= 1")


def bound_profile_log(bp: BoundProfile, d: int, H: int, prec: int = 96) -> Enclosure:
    """Enclosure of ln(H^(-c1 d^tau) * exp(-c1 d^(2 tau + 2)))."""
    if d < 1 or H < 1:
        raise ValueError("d and H must be >= 1")
    exponent = Enclosure.from_fraction(-bp.c1 * Fraction(d) ** (2 * bp.tau + 2), prec)
    if H > 1:
        lnH = log_of_fraction(Fraction(H), prec)
        exponent = exponent + lnH.mul_rat(-bp.c1 * Fraction(d) ** bp.tau)
    return exponent


def bound_profile_eval(bp: BoundProfile, d: int, H: int, prec: int = 96) -> Enclosure:
    """Enclosure of H^(-c1 d^tau) * e^(-c1 d^(2 tau + 2))."""
    return bound_profile_log(bp, d, H, prec).exp()


# -- exhaustive minimum scans --------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    d: int
    H: int
    min_abs_lo: Dyadic
    argmin: tuple[int, ...]
    predicted: Enclosure | None
    precision_bits: int


@dataclass(frozen=True)
class CandidateRelation:
    d: int
    H: int
    coeffs: tuple[int, ...]
    value: Enclosure


@dataclass(frozen=True)
class PolyScanResult:
    rows: list[ScanRow]
    relations: list[CandidateRelation]


def default_ladder(Hmax: int) -> list[int]:
    out = []
    h = 2
    while h <= Hmax:
        out.append(h)
        h *= 2
    if not out or out[-1] != Hmax:
        out.append(Hmax)
    return [h for h in out if h <= Hmax] or [Hmax]


def _poly_interval(coeffs: Sequence[int], x: Enclosure, prec: int) -> Enclosure:
    acc = Enclosure.zero(prec)
    for c in reversed(coeffs):
        acc = acc * x
        if c:
            acc = acc.add_rat(c)
    return acc


def _coeff_tuples(d: int, H: int):
    """Nonzero integer coefficient tuples of length d+1, height <= H,
    first nonzero coefficient positive (P and -P share |P(xi)|)."""
    span = list(range(-H, H + 1))

    def rec(prefix: list[int], lead_seen: bool):
        if len(prefix) == d + 1:
            if lead_seen:
                yield tuple(prefix)
            return
        if not lead_seen:
            for c in range(0, H + 1):
                yield from rec(prefix + [c], c > 0)
        else:
            for c in span:
                yield from rec(prefix + [c], True)

    yield from rec([], False)


def poly_min_scan(
    xi: ValueEnclosure,
    d: int,
    Hmax: int,
    bp: BoundProfile | None = None,
    ladder: Sequence[int] | None = None,
) -> PolyScanResult:
    """Certified minimum of |P(xi)| over nonzero integer P, deg <= d', H <= h.

    Scans every degree d' <= d and every height on the ladder.  Each value
    is an outward-rounded interval; intervals straddling zero cannot be
    certified nonzero at any precision (the input enclosure is the floor)
    and are promoted to candidate algebraic relations.
    """
    if not xi.certified:
        raise ValueError("poly_min_scan requires a certified xi")
    heights = list(ladder) if ladder is not None else default_ladder(Hmax)
    if any(h < 1 for h in heights):
        raise ValueError("heights must be positive")
    x = xi.value
    rows: list[ScanRow] = []
    relations: list[CandidateRelation] = []
    seen_rel: set[tuple[int, ...]] = set()
    for dd in range(1, d + 1):
        for H in heights:
            prec = x.prec + (dd + 1) * (H.bit_length() + 2) + 32
            best: Dyadic | None = None
            arg: tuple[int, ...] = ()
            for coeffs in _coeff_tuples(dd, H):
                val = _poly_interval(coeffs, x, prec).abs()
                if val.lo.sign <= 0:
                    # cannot be certified nonzero at any precision: the
                    # enclosure of xi itself is the accuracy floor
                    if coeffs not in seen_rel:
                        seen_rel.add(coeffs)
                        relations.append(CandidateRelation(dd, H, coeffs, val))
                    continue
                if best is None or val.lo.cmp(best) < 0:
                    best = val.lo
                    arg = coeffs
            if best is None:
                raise PrecisionExhausted(
                    f"every polynomial at d={dd}, H={H} straddles zero"
                )
            predicted = bound_profile_log(bp, dd, H) if bp is not None else None
            rows.append(ScanRow(dd, H, best, arg, predicted, prec))
    return PolyScanResult(rows, relations)


# -- continued fractions --------------------------------------------------------------------


@dataclass(frozen=True)
class CFResult:
    quotients: list[int]
    stop_width: Dyadic
    stop_reason: str  # 'max-terms' | 'ambiguous-floor' | 'possible-termination'


def continued_fraction(xi: ValueEnclosure, max_terms: int) -> CFResult:
    """Partial quotients certified common to every point of the enclosure.

    Emits while the floor is constant on the interval; stops cleanly at the
    first ambiguity or when the fractional part may be zero (a rational in
    the interval would terminate there).
    """
    if not xi.certified:
        raise ValueError("continued_fraction requires a certified xi")
    x = xi.value
    out: list[int] = []
    reason = "max-terms"
    for _ in range(max_terms):
        lo_f = x.lo.floor()
        hi_f = x.hi.floor()
        if lo_f != hi_f:
            reason = "ambiguous-floor"
            break
        out.append(lo_f)
        frac = x.add_rat(-lo_f)
        if frac.lo.sign <= 0:
            reason = "possible-termination"
            break
        x = frac.recip()
    return CFResult(out, x.width(), reason)


def exact_cf(x: Fraction, max_terms: int = 64) -> list[int]:
    """Euclidean continued fraction of an exact rational (test oracle)."""
    out = []
    x = Fraction(x)
    for _ in range(max_terms):
        a = math.floor(x)
        out.append(a)
        x -= a
        if x == 0:
            break
        x = 1 / x
    return out
