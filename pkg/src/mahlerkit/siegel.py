"""Auxiliary-form machinery: kernel-built forms with prescribed valuation,
the clearing recursion R_{k+1}(z,X) = a(z)^N R_k(z^q, B(z)X), the matching
composition identity, and the multiplicity-bound experiment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import ClearingFailure, InsufficientTruncation, MixedBase
from .forms import AuxForm
from .linalg import kernel_basis
from .mahler import CompanionStructure, MahlerEquation, MahlerSystem, companion_system, expand_series
from .poly import Poly
from .ratfun import MatRF, R_ONE, R_ZERO
from .rng import derive_rng, derive_seed
from .series import TruncatedSeries


def monomials_of_degree(nvars: int, deg: int) -> list[tuple[int, ...]]:
    """All exponent vectors with the given total degree, lexicographic."""
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out


# -- construction ---------------------------------------------------------------


@dataclass(frozen=True)
class AuxFormBuild:
    form: AuxForm
    achieved: object  # int or math.inf
    relation_witness: bool  # composition vanished through the whole window
    conditions: int
    unknowns: int


def aux_form(series: Sequence[TruncatedSeries], N: int, V: int) -> AuxFormBuild:
    """Nonzero integer form R with val_z R(z, 1, f_1, ..., f_t) >= V.

    The functions are (1, f_1, ..., f_t) with the constant slot implicit;
    the form is homogeneous of degree N with z-degree <= N, built from the
    exact kernel of the V x unknowns coefficient-matching matrix.  When the
    input functions are algebraically dependent a kernel vector may compose
    to the zero series; the basis is walked for a nonzero composition and,
    failing that, the zero-composition witness is returned flagged.
    """
    t = len(series)
    if t < 1:
        raise ValueError("need at least one function")
    window = min(s.guaranteed_order for s in series)
    if window <= V + N:
        raise InsufficientTruncation(
            f"series guaranteed to order {window}, need > V+N = {V + N}"
        )
    monos = monomials_of_degree(t + 1, N)
    unknowns = (N + 1) * len(monos)
    if unknowns <= V:
        raise ValueError(f"{unknowns} unknowns cannot satisfy {V} conditions")

    # composition prefix of each monomial (the constant slot contributes 1)
    prods: list[TruncatedSeries] = []
    for exps in monos:
        acc = TruncatedSeries.one(window)
        for i, e in enumerate(exps[1:], start=0):
            if e:
                acc = acc * series[i].pow(e, window)
        prods.append(acc)

    rows = []
    for r in range(V):
        row = []
        for prod in prods:
            for zp in range(N + 1):
                idx = r - zp
                row.append(prod.coeffs[idx] if idx >= 0 else Fraction(0))
        rows.append(row)
    basis = kernel_basis(rows)
    assert basis, "dimension count guarantees a nonzero kernel"

    def vector_to_form(vec: Sequence[int]) -> AuxForm:
        terms = {}
        for m_idx, exps in enumerate(monos):
            coeffs = vec[m_idx * (N + 1) : (m_idx + 1) * (N + 1)]
            p = Poly(coeffs)
            if not p.is_zero:
                terms[exps] = p
        return AuxForm(t + 1, terms)

    chosen = None
    achieved = math.inf
    for vec in basis:
        form = vector_to_form(vec)
        val = achieved_valuation(form, series)
        if val is not math.inf:
            chosen, achieved = form, val
            break
        if chosen is None:
            chosen = form
    relation = achieved is math.inf
    if not relation and achieved < V:
        raise AssertionError("kernel vector missed the imposed valuation")
    return AuxFormBuild(chosen, achieved, relation, V, unknowns)


def achieved_valuation(R: AuxForm, series: Sequence[TruncatedSeries]):
    """Exact valuation of R(z, 1, f_1, ..., f_t), or math.inf within window."""
    window = min(s.guaranteed_order for s in series)
    vec = [TruncatedSeries.one(window)] + [s.prefix(window) for s in series]
    return R.evaluate_series(vec).valuation()


# -- the clearing recursion --------------------------------------------------------


def augmented_system(eq: MahlerEquation) -> MahlerSystem:
    """The (m+1)-square system acting on (1, f, f(z^q), ...).

    Inhomogeneous equations already get the constant slot from
    companion_system; homogeneous ones are padded with a leading 1 block.
    """
    base = companion_system(eq)
    if base.structure is not None and base.structure.const_slot:
        return base
    one_block = MatRF([[R_ONE]])
    A = one_block.direct_sum(base.A)
    structure = CompanionStructure(eq.q, base.structure.order, const_slot=True)
    return MahlerSystem(eq.q, A, "companion-of-equation", structure)


def clearing_poly(Bsys: MahlerSystem) -> Poly:
    """lcm of the denominators of the system matrix (the paper's a(z))."""
    return Bsys.A.denominator_lcm()


def iterate_aux(R: AuxForm, Bsys: MahlerSystem, a: Poly, N: int, k: int) -> AuxForm:
    """k-fold application of R -> a(z)^N R(z^q, B(z) X).

    a must clear B's denominators and N must dominate deg_X(R); the output
    stays homogeneous of the same X-degree while deg_z grows with each step.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not R.is_homogeneous:
        raise ValueError("recursion input must be homogeneous")
    size = Bsys.size
    D = max(R.deg_X, 0)
    if D > N:
        raise ValueError(f"deg_X(R)={D} exceeds N={N}")
    cleared: list[list[Poly]] = []
    for row in Bsys.A.entries:
        crow = []
        for e in row:
            num = e.num * a
            try:
                crow.append(num.exact_div(e.den))
            except ValueError:
                raise ClearingFailure(f"a(z) does not clear denominator {e.den.to_expr()}") from None
        cleared.append(crow)
    lin = [
        AuxForm(size, {tuple(1 if j == l else 0 for j in range(size)): cleared[i][l] for l in range(size) if not cleared[i][l].is_zero})
        for i in range(size)
    ]
    a_extra = a ** (N - D)

    form = R.pad_vars(size)
    for _ in range(k):
        out = AuxForm.zero(size)
        for exps, coef in form.terms.items():
            term = AuxForm.monomial(size, (0,) * size, Poly.one())
            for i, e in enumerate(exps):
                if e:
                    term = term * lin[i].pow(e)
            term = term.scale_poly(coef.subs_zpow(Bsys.q) * a_extra)
            out = out + term
        form = out
    return form


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    first_mismatch: int | None
    order: int

    def __bool__(self) -> bool:
        return self.ok


def check_iterate_identity(
    R: AuxForm,
    R_k: AuxForm,
    ctx: "SiegelContext",
    k: int,
    order: int,
    N: int,
) -> IdentityCheck:
    """Truncated test of R_k(z, vec(z)) = a_k(z)^N R(z^(q^k), vec(z^(q^k)))
    with a_k(z) = a(z) a(z^q) ... a(z^(q^(k-1))).
    """
    vec = ctx.vector_series(order)
    size = len(vec)
    lhs = R_k.pad_vars(size).evaluate_series(vec)
    g = R.pad_vars(size).evaluate_series(vec)
    qk = ctx.eq.q**k
    rhs = g.subs_zpow(qk, order=order)
    a_k = Poly.one()
    for j in range(k):
        a_k = a_k * ctx.a.subs_zpow(ctx.eq.q**j)
    rhs = rhs.mul_poly(a_k**N)
    n = min(lhs.guaranteed_order, rhs.guaranteed_order, order)
    for i in range(n):
        if lhs.coeffs[i] != rhs.coeffs[i]:
            return IdentityCheck(False, i, n)
    return IdentityCheck(True, None, n)


class SiegelContext:
    """Equation-bound context: expansion cache, augmented system, clearing a(z)."""

    def __init__(self, eq: MahlerEquation):
        self.eq = eq
        self.B = augmented_system(eq)
        self.a = clearing_poly(self.B)
        self._cache: dict[int, TruncatedSeries] = {}

    def f(self, order: int) -> TruncatedSeries:
        got = self._cache.get(order)
        if got is None:
            got = expand_series(self.eq, order)
            self._cache[order] = got
        return got

    def funcs_series(self, order: int) -> list[TruncatedSeries]:
        """The [f_1..f_t] list for aux_form (t = 1: the solution itself)."""
        return [self.f(order)]

    def vector_series(self, order: int) -> list[TruncatedSeries]:
        """(1, f(z), f(z^q), ..., f(z^(q^(m-1)))) as truncated series."""
        m = self.B.structure.order
        f = self.f(order)
        vec = [TruncatedSeries.one(order), f]
        for j in range(1, m):
            vec.append(f.subs_zpow(self.eq.q**j, order=order))
        return vec


# -- multiplicity experiment --------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityRow:
    M: int
    N: int
    achieved_val: int
    ratio: Fraction
    flagged: bool = False


@dataclass(frozen=True)
class TrialRecord:
    M: int
    N: int
    trial: int
    seed: int
    achieved_val: int | None
    ratio: Fraction | None
    flag: str  # '' | 'zero-composition'


@dataclass(frozen=True)
class MultiplicityScan:
    rows: list[MultiplicityRow]
    trials: list[TrialRecord]
    c_fit: Fraction | None

    def max_ratio(self) -> Fraction | None:
        return self.c_fit


def random_form(rng, t: int, M: int, N: int, coeff_bound: int = 9) -> AuxForm:
    """Random nonzero homogeneous form, deg_X = N, deg_z <= M."""
    monos = monomials_of_degree(t + 1, N)
    while True:
        terms = {}
        for exps in monos:
            coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in range(M + 1)]
            p = Poly(coeffs)
            if not p.is_zero:
                terms[exps] = p
        if terms:
            return AuxForm(t + 1, terms)


def _measure_cell(args):
    eq_doc, M, N, trial, master, coeff_bound, window_cap = args
    eq = MahlerEquation.from_json_dict(eq_doc)
    t = 1
    seed = derive_seed(master, "multiplicity", M, N, trial)
    rng = derive_rng(master, "multiplicity", M, N, trial)
    form = random_form(rng, t, M, N, coeff_bound)
    window = 64 + 8 * M * N**t
    while True:
        series = [expand_series(eq, window)]
        val = achieved_valuation(form, series)
        if val is not math.inf:
            ratio = Fraction(val, M * N**t)
            return TrialRecord(M, N, trial, seed, val, ratio, "")
        if window >= window_cap:
            return TrialRecord(M, N, trial, seed, None, None, "zero-composition")
        window = min(window * 2, window_cap)


def multiplicity_scan(
    eq: MahlerEquation,
    Mmax: int,
    Nmax: int,
    trials: int,
    seed: int = 0,
    coeff_bound: int = 9,
    window_cap: int = 4096,
    workers: int = 1,
) -> MultiplicityScan:
    """Measure val_z of random-form compositions over the (M, N) grid.

    Cells are independent; the per-trial RNG is derived from (seed, M, N,
    trial) so the outcome never depends on sharding.  Cells whose every
    trial composes to zero through the window cap are flagged, never
    fabricated.
    """
    eq_doc = eq.to_json_dict()
    jobs = [
        (eq_doc, M, N, trial, seed, coeff_bound, window_cap)
        for M in range(1, Mmax + 1)
        for N in range(1, Nmax + 1)
        for trial in range(trials)
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_measure_cell, jobs))
    else:
        records = [_measure_cell(j) for j in jobs]
    records.sort(key=lambda r: (r.M, r.N, r.trial))

    rows: list[MultiplicityRow] = []
    for M in range(1, Mmax + 1):
        for N in range(1, Nmax + 1):
            cell = [r for r in records if r.M == M and r.N == N]
            vals = [r.achieved_val for r in cell if r.achieved_val is not None]
            if vals:
                best = max(vals)
                rows.append(MultiplicityRow(M, N, best, Fraction(best, M * N), False))
            else:
                rows.append(MultiplicityRow(M, N, 0, Fraction(0), True))
    ratios = [r.ratio for r in rows if not r.flagged]
    c_fit = max(ratios) if ratios else None
    return MultiplicityScan(rows, records, c_fit)


def mixed_base_guard(eqs: Sequence[MahlerEquation]):
    """Functions entering one construction must share the Mahler base."""
    qs = {eq.q for eq in eqs}
    if len(qs) > 1:
        raise MixedBase(f"mixed Mahler bases {sorted(qs)}")
