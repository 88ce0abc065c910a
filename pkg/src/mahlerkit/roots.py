"""Certified projective root enclosures for binary forms.

Float eigenvalue seeds (numpy) are refined by exact complex-rational
Newton steps; each refined center x gets the classical containment disk of
radius deg * |p(x)/p'(x)| (p'/p = sum 1/(x - r_i), so the nearest root is
within that distance).  Radii are computed as exact rationals, boxes are
pairwise disjoint, and the squarefree part guarantees one simple root per
box.  numpy is a seed heuristic only; certification never relies on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dyadic import UP, Dyadic
from .enclosure import BoxC, Enclosure
from .errors import PrecisionExhausted, ZeroForm
from .forms import AuxForm, binary_form_coeffs
from .poly import Poly

_CQ = tuple[Fraction, Fraction]  # complex rational (re, im)


def _c_add(a: _CQ, b: _CQ) -> _CQ:
    return (a[0] + b[0], a[1] + b[1])


def _c_sub(a: _CQ, b: _CQ) -> _CQ:
    return (a[0] - b[0], a[1] - b[1])


def _c_mul(a: _CQ, b: _CQ) -> _CQ:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _c_div(a: _CQ, b: _CQ) -> _CQ:
    d = b[0] * b[0] + b[1] * b[1]
    if d == 0:
        raise ZeroDivisionError
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def _c_abs2(a: _CQ) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def _c_trim(a: _CQ, bits: int) -> _CQ:
    lim = 1 << bits
    return (a[0].limit_denominator(lim), a[1].limit_denominator(lim))


def _poly_eval_c(coeffs: list[Fraction], x: _CQ) -> _CQ:
    acc: _CQ = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = _c_mul(acc, x)
        acc = (acc[0] + c, acc[1])
    return acc


@dataclass(frozen=True)
class ProjRootBox:
    """One projective root of a binary form, as a pair of complex boxes.

    Finite roots are normalized to (1, t); the root at infinity is (0, 1).
    center/radius describe the certified containment disk of the affine
    coordinate t (radius 0 and center None for the infinite root).
    """

    coords: tuple[BoxC, BoxC]
    center: _CQ | None
    radius_sq: Fraction | None

    @property
    def is_infinite(self) -> bool:
        return self.center is None


def _newton_refine(
    sf: list[Fraction], dsf: list[Fraction], seed: complex, target_r2: Fraction, deg: int
) -> tuple[_CQ, Fraction]:
    """Refine one seed; returns (center, radius^2) with radius^2 <= target."""
    x: _CQ = (Fraction(seed.real).limit_denominator(1 << 60), Fraction(seed.imag).limit_denominator(1 << 60))
    bits = 128
    n2 = Fraction(deg * deg)
    for _ in range(80):
        px = _poly_eval_c(sf, x)
        dpx = _poly_eval_c(dsf, x)
        d2 = _c_abs2(dpx)
        if d2 == 0:
            x = (x[0] + Fraction(1, 997), x[1] + Fraction(1, 1009))
            continue
        r2 = n2 * _c_abs2(px) / d2
        if r2 <= target_r2:
            return x, r2
        x = _c_trim(_c_sub(x, _c_div(px, dpx)), bits)
        bits = min(bits * 2, 1 << 20)
    raise PrecisionExhausted("Newton refinement did not reach the requested width")


def _boxes_disjoint(a: ProjRootBox, b: ProjRootBox) -> bool:
    if a.is_infinite or b.is_infinite:
        return not (a.is_infinite and b.is_infinite)
    # compare squared center distance against (r_a + r_b)^2 via
    # |c|^2 > (ra+rb)^2  <=  |c|^2 > 2(ra^2+rb^2)  (since (x+y)^2 <= 2x^2+2y^2)
    d2 = _c_abs2(_c_sub(a.center, b.center))
    return d2 > 2 * (a.radius_sq + b.radius_sq)


def _disk_box(center: _CQ, radius_sq: Fraction, prec: int) -> BoxC:
    h = Dyadic.from_fraction(radius_sq, prec, UP).sqrt_dir(prec, UP)
    slack = Enclosure(-h, h, prec)
    re = Enclosure.from_fraction(center[0], prec) + slack
    im = Enclosure.from_fraction(center[1], prec) + slack
    return BoxC(re, im)


def binary_form_roots(form: AuxForm, prec: int = 64) -> list[ProjRootBox]:
    """All projective roots of a z-free binary form, one disjoint box each.

    Boxes have half-width at most 2^-prec; call again with larger prec to
    refine (the computation is deterministic).
    """
    coeffs = binary_form_coeffs(form)  # raises ZeroForm / arity errors
    d = len(coeffs) - 1
    if d == 0:
        return []  # nonzero constant form: empty variety
    # affine part f(t) = F(1, t)
    f = Poly(coeffs)
    out: list[ProjRootBox] = []
    point_prec = max(prec, 32)
    if f.degree < d:
        inf_coords = (
            BoxC.point_fraction(0, 0, point_prec),
            BoxC.point_fraction(1, 0, point_prec),
        )
        out.append(ProjRootBox(inf_coords, None, None))
    if f.degree >= 1:
        sf_poly = f.squarefree()
        sf = list(sf_poly.coeffs)
        dsf = list(sf_poly.derivative().coeffs)
        target_r2 = Fraction(1, 1 << (2 * prec + 4))
        scale = max(abs(c) for c in sf)
        arr = np.array([float(c / scale) for c in reversed(sf)], dtype=np.float64)
        seeds = [complex(r) for r in np.roots(arr)]
        deg = sf_poly.degree
        attempt_r2 = target_r2
        for _attempt in range(6):
            refined = [
                _newton_refine(sf, dsf, s, attempt_r2, deg) for s in seeds
            ]
            roots = []
            one = BoxC.point_fraction(1, 0, point_prec)
            for center, r2 in refined:
                roots.append(
                    ProjRootBox((one, _disk_box(center, r2, prec + 8)), center, r2)
                )
            ok = all(
                _boxes_disjoint(roots[i], roots[j])
                for i in range(len(roots))
                for j in range(i + 1, len(roots))
            )
            if len(roots) == deg and ok:
                out.extend(roots)
                break
            attempt_r2 = attempt_r2 / (1 << 64)
        else:
            raise PrecisionExhausted("could not isolate the roots into disjoint boxes")
    out.sort(key=lambda r: (0, Fraction(0), Fraction(0)) if r.is_infinite else (1, r.center[0], r.center[1]))
    return out


def count_finite_and_infinite(roots: list[ProjRootBox]) -> tuple[int, int]:
    inf = sum(1 for r in roots if r.is_infinite)
    return len(roots) - inf, inf
