"""Mahler equations and systems.

An equation is sum_j a_j(z) f(z^(q^j)) = b(z) with polynomial a_j, a_0 and
a_m nonzero.  The series engine expands the unique power-series solution
prefix consistent with the prescribed seeds: with v0 = val(a_0), the
coefficient equation at order n + v0 determines u(n) once n > v0/(q-1),
and the initial block below that threshold is solved as an exact linear
system against the seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateLeading,
    InconsistentSeeds,
    MixedBase,
    PointOutOfRange,
    Underdetermined,
)
from .linalg import solve_exact
from .parse import parse_fraction, parse_ratfun
from .poly import Poly
from .ratfun import MatRF, R_ONE, R_ZERO, RatFun
from .series import TruncatedSeries


@dataclass(frozen=True)
class MahlerEquation:
    q: int
    a: tuple[Poly, ...]
    rhs: Poly
    seeds: tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError("q must be an integer >= 2")
        if not self.a:
            raise ValueError("equation needs at least a_0")
        if self.a[0].is_zero or self.a[-1].is_zero:
            raise ValueError("a_0 and a_m must be nonzero")
        if len(self.a) == 1 and self.rhs.is_zero:
            raise ValueError("order 0 requires a nonzero right-hand side")

    @property
    def order(self) -> int:
        return len(self.a) - 1

    @property
    def is_homogeneous(self) -> bool:
        return self.rhs.is_zero

    @classmethod
    def build(cls, q: int, coeffs: Sequence, rhs=None, seeds: Sequence = (), name: str = "") -> "MahlerEquation":
        a = tuple(c if isinstance(c, Poly) else Poly(c) for c in coeffs)
        r = rhs if isinstance(rhs, Poly) else (Poly.zero() if rhs is None else Poly(rhs))
        return cls(q, a, r, tuple(Fraction(s) for s in seeds), name)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "MahlerEquation":
        """Load an equation document, clearing rational-function coefficients."""
        q = int(doc["q"])
        coeffs = [parse_ratfun(s) for s in doc["coeffs"]]
        rhs = parse_ratfun(doc.get("rhs", "0"))
        dens = [c.den for c in coeffs] + [rhs.den]
        lcm = Poly.one()
        for d in dens:
            lcm = lcm.lcm(d)
        a = tuple((c * lcm).as_poly() for c in coeffs)
        r = (rhs * lcm).as_poly()
        seeds = tuple(parse_fraction(s) for s in doc.get("seeds", []))
        return cls(q, a, r, seeds, doc.get("name", ""))

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "coeffs": [p.to_expr() for p in self.a],
            "rhs": self.rhs.to_expr(),
            "seeds": [str(s) for s in self.seeds],
            "name": self.name,
        }


# -- series expansion ------------------------------------------------------------


def initial_block_size(eq: MahlerEquation) -> int:
    v0 = int(eq.a[0].valuation)
    return v0 // (eq.q - 1) + 1


def expand_series(eq: MahlerEquation, N: int) -> TruncatedSeries:
    """First N coefficients of the power-series solution fixed by the seeds."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    a0 = eq.a[0]
    v0 = int(a0.valuation)
    c = a0.coeff(v0)
    if c == 0:
        raise DegenerateLeading("leading coefficient vanished")  # pragma: no cover
    q = eq.q
    nstar = initial_block_size(eq)
    total = max(N, nstar, len(eq.seeds))

    # initial block: orders 0 .. nstar+v0-1 involve only u(0..nstar-1)
    qpow = [q**j for j in range(eq.order + 1)]
    rows: list[list[Fraction]] = []
    rhs_col: list[Fraction] = []
    for order in range(nstar + v0):
        row = [Fraction(0)] * nstar
        for j, aj in enumerate(eq.a):
            step = qpow[j]
            for i, ci in enumerate(aj.coeffs):
                if ci == 0:
                    continue
                rem = order - i
                if rem < 0 or rem % step:
                    continue
                k = rem // step
                if k >= nstar:
                    raise AssertionError("block equation reached beyond the block")
                row[k] += ci
        rows.append(row)
        rhs_col.append(eq.rhs.coeff(order))
    for idx in range(min(len(eq.seeds), nstar)):
        row = [Fraction(0)] * nstar
        row[idx] = Fraction(1)
        rows.append(row)
        rhs_col.append(eq.seeds[idx])
    report = solve_exact(rows, rhs_col)
    if report.status == "inconsistent":
        raise InconsistentSeeds("seeds contradict the coefficient equations")
    if report.status == "underdetermined":
        raise Underdetermined(report.free_count)
    u: list[Fraction] = list(report.solution)

    for n in range(nstar, total):
        order = n + v0
        acc = eq.rhs.coeff(order)
        for j, aj in enumerate(eq.a):
            step = qpow[j]
            for i, ci in enumerate(aj.coeffs):
                if ci == 0:
                    continue
                if j == 0 and i == v0:
                    continue  # the u(n) term itself
                rem = order - i
                if rem < 0 or rem % step:
                    continue
                k = rem // step
                if k == n and j == 0:
                    continue
                if k > n or (k == n and j > 0):
                    raise AssertionError("recurrence referenced an undetermined coefficient")
                acc -= ci * u[k]
        u.append(acc / c)

    for idx in range(nstar, len(eq.seeds)):
        if u[idx] != eq.seeds[idx]:
            raise InconsistentSeeds(
                f"seed u({idx})={eq.seeds[idx]} contradicts recurrence value {u[idx]}"
            )
    return TruncatedSeries(u[:N])


def verify_equation(eq: MahlerEquation, s: TruncatedSeries):
    """Guaranteed lower bound on val_z of the residual sum_j a_j s(z^(q^j)) - b.

    Returns the exact first-failure order when the residual shows inside the
    guaranteed window, else math.inf (residual identically zero to window).
    """
    window = s.guaranteed_order
    if window == 0:
        return 0
    acc = TruncatedSeries.zero(window)
    for j, aj in enumerate(eq.a):
        sj = s.subs_zpow(eq.q**j, order=window) if j else s
        acc = acc + sj.mul_poly(aj)
    acc = acc - TruncatedSeries.from_poly(eq.rhs, window)
    return acc.valuation()


# -- systems ------------------------------------------------------------------------


@dataclass(frozen=True)
class CompanionStructure:
    """How a companion(-derived) system's solution vector is laid out.

    The vector is (f(z), f(z^b), ..., f(z^(b^(order-1)))) with b = base_q,
    prefixed by the constant function 1 when const_slot is set.
    """

    base_q: int
    order: int
    const_slot: bool

    @property
    def size(self) -> int:
        return self.order + (1 if self.const_slot else 0)


@dataclass(frozen=True)
class MahlerSystem:
    q: int
    A: MatRF
    provenance: str = "raw"
    structure: CompanionStructure | None = None

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if not self.A.is_square:
            raise ValueError("system matrix must be square")
        if self.A.det().is_zero:
            raise ValueError("system matrix must be invertible over the rational functions")

    @property
    def size(self) -> int:
        return self.A.rows

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "size": self.size,
            "entries": [[repr(e) for e in row] for row in self.A.entries],
            "det": repr(self.A.det()),
            "provenance": self.provenance,
        }


def companion_system(eq: MahlerEquation) -> MahlerSystem:
    """Companion system with Y(z^q) = A(z) Y(z).

    Homogeneous order m: the m x m companion matrix.  Inhomogeneous: the
    (m+1) x (m+1) augmentation whose first row (1, 0, ..., 0) carries the
    constant function, the last row absorbing the inhomogeneity b/a_m.
    """
    m = eq.order
    am = RatFun.from_poly(eq.a[-1])
    if eq.is_homogeneous:
        rows = []
        for i in range(m - 1):
            rows.append([R_ONE if j == i + 1 else R_ZERO for j in range(m)])
        rows.append([-RatFun.from_poly(eq.a[j]) / am for j in range(m)])
        A = MatRF(rows)
        structure = CompanionStructure(eq.q, m, const_slot=False)
    else:
        if m == 0:
            raise ValueError("order-0 equations define rational functions; no companion system")
        size = m + 1
        rows = [[R_ONE] + [R_ZERO] * m]
        for i in range(1, m):
            rows.append([R_ONE if j == i + 1 else R_ZERO for j in range(size)])
        last = [RatFun.from_poly(eq.rhs) / am]
        last += [-RatFun.from_poly(eq.a[j]) / am for j in range(m)]
        rows.append(last)
        A = MatRF(rows)
        structure = CompanionStructure(eq.q, m, const_slot=True)
    return MahlerSystem(eq.q, A, "companion-of-equation", structure)


def direct_sum(systems: Sequence[MahlerSystem]) -> MahlerSystem:
    if not systems:
        raise ValueError("direct sum of no systems")
    q = systems[0].q
    if any(s.q != q for s in systems):
        raise MixedBase("direct sum requires a common Mahler base q")
    A = systems[0].A
    for s in systems[1:]:
        A = A.direct_sum(s.A)
    return MahlerSystem(q, A, "direct-sum", None)


def iterate_system(sys: MahlerSystem, ell: int) -> MahlerSystem:
    """q^ell system with A_ell(z) = A(z^(q^(ell-1))) ... A(z)."""
    if ell < 1:
        raise ValueError("iteration exponent must be >= 1")
    if ell == 1:
        return sys
    acc = sys.A
    for j in range(1, ell):
        acc = sys.A.subs_zpow(sys.q**j) * acc
    return MahlerSystem(sys.q**ell, acc, "iterate", sys.structure)


# -- regularity ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    checked_up_to: int
    failure_k: int | None
    r_min: Fraction
    singular_polys: tuple[Poly, ...]
    failure_point: Fraction | None = None

    def to_json_dict(self) -> dict:
        return {
            "regular": self.regular,
            "checked_up_to": self.checked_up_to,
            "failure_k": self.failure_k,
            "r_min": str(self.r_min),
            "singular_polys": [p.to_expr() for p in self.singular_polys],
            "failure_point": None if self.failure_point is None else str(self.failure_point),
        }


def _check_point(alpha: Fraction):
    alpha = Fraction(alpha)
    if alpha == 0 or abs(alpha) >= 1:
        raise PointOutOfRange(f"need 0 < |alpha| < 1, got {alpha}")
    return alpha


def regularity(sys: MahlerSystem, alpha) -> RegularityReport:
    """Certificate that A is defined and invertible at alpha^(q^k) for all k.

    S(z) = lcm of entry denominators times the determinant numerator has the
    points of failure among its roots; beyond K with |alpha|^(q^K) < r_min
    (a Cauchy-type lower bound on nonzero roots of S) no further root can be
    hit, so finitely many exact evaluations decide the question.
    """
    alpha = _check_point(alpha)
    den_lcm = sys.A.denominator_lcm()
    det = sys.A.det()
    assert not det.is_zero
    witness = (den_lcm, det.num)
    s_poly = den_lcm * det.num
    r_min = s_poly.root_lower_bound()

    abs_alpha = abs(alpha)
    K = 0
    point_pow = abs_alpha
    while point_pow >= r_min:
        # next power: |alpha|^(q^(K+1)) = (|alpha|^(q^K))^q
        point_pow = point_pow**sys.q
        K += 1
        if K > 512:
            raise AssertionError("regularity horizon failed to terminate")

    point = alpha
    for k in range(K + 1):
        for p in witness:
            if not p.is_zero and p.degree >= 0 and p.eval(point) == 0:
                return RegularityReport(False, K, k, r_min, witness, point)
        if k < K:
            point = point**sys.q
    return RegularityReport(True, K, None, r_min, witness, None)


@dataclass(frozen=True)
class RegularSearch:
    found: bool
    ell: int | None
    system: MahlerSystem | None
    reports: dict

    def to_json_dict(self) -> dict:
        return {
            "found": self.found,
            "ell": self.ell,
            "reports": {str(k): r.to_json_dict() for k, r in self.reports.items()},
        }


def find_regular_power(eq: MahlerEquation, alpha, Lmax: int) -> RegularSearch:
    """Smallest ell <= Lmax whose iterated companion system is regular at alpha.

    Exhaustive up to Lmax; a NotFound outcome carries every per-ell report
    (the bounded search does not reproduce the lifting-theorem existence
    argument, so NotFound is a legitimate answer).
    """
    alpha = _check_point(alpha)
    base = companion_system(eq)
    reports: dict[int, RegularityReport] = {}
    for ell in range(1, Lmax + 1):
        sys_l = iterate_system(base, ell)
        rep = regularity(sys_l, alpha)
        reports[ell] = rep
        if rep.regular:
            return RegularSearch(True, ell, sys_l, reports)
    return RegularSearch(False, None, None, reports)
