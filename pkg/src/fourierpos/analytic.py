"""Lower bounds on the analytic continuation of f to complex rays.

A nonnegative transform makes f(ir) (1D) or f(ix) (2D) an average of
cosh(sr) resp. I0(kx) against a probability density, so Jensen's inequality
pins it above the same kernel evaluated at the mean momentum.  Combinations
of f over eighth roots of unity isolate the mod-8 subseries of cosh, each a
convex nonnegative kernel giving its own bound.  Any violation anywhere is a
conclusive negativity certificate.

Every mean momentum used here comes from the subtracted r-space integral, so
none of these tests ever looks at the transform itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import AssociateSet, GaussPoly, convolve_gauss
from .bessel import bessel_i0
from .moments import mu0, mu1_r_space

# imaginary-axis scan: r in [0, 6] step 0.01; both sides of the bounds span
# about e^18 across it for unit-width functions, past that only overflow
DEFAULT_IM_GRID = (0.0, 6.0, 0.01)
EPS_REL = 1e-9
IMAG_RESIDUE_TOL = 1e-10

SQRT_HALF = math.sqrt(0.5)


class NegativeMeanMomentum(Exception):
    """A bound component has mu1 < 0: negativity already established."""

    def __init__(self, tag: str, value: float):
        super().__init__(f"component {tag} has negative first moment {value}")
        self.tag = tag
        self.value = value


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    margin_curve: tuple[tuple[float, float], ...]
    first_violation: float | None
    mean_s_used: tuple[float, ...]
    flags: tuple[str, ...] = ()


def im_grid_points(grid=DEFAULT_IM_GRID) -> np.ndarray:
    r_min, r_max, step = grid
    count = int(round((r_max - r_min) / step)) + 1
    return np.linspace(r_min, r_max, count)


def first_violation(r: np.ndarray, margin: np.ndarray, lhs: np.ndarray) -> float | None:
    """Earliest r with margin < -eps_rel * max(1, |lhs|); non-finite points
    carry no information and never count as violations."""
    with np.errstate(invalid="ignore"):
        bad = margin < -EPS_REL * np.maximum(1.0, np.abs(lhs))
    bad &= np.isfinite(margin)
    idx = np.nonzero(bad)[0]
    return float(r[idx[0]]) if len(idx) else None


def _report(bound_id, r, lhs, rhs, means, flags=()) -> BoundReport:
    with np.errstate(invalid="ignore"):
        margin = lhs - rhs
    return BoundReport(
        bound_id=bound_id,
        margin_curve=tuple(zip(r.tolist(), margin.tolist())),
        first_violation=first_violation(r, margin, lhs),
        mean_s_used=tuple(float(m) for m in means),
        flags=tuple(flags),
    )


def cosh_bound(f: GaussPoly, mean_s: float, grid=DEFAULT_IM_GRID) -> BoundReport:
    """f(ir) >= f(0) cosh(mean_s r), margin anchored to 0 at r=0."""
    if f.dim != 1:
        raise ValueError("cosh bound applies to dim 1")
    r = im_grid_points(grid)
    lhs = f.eval_imag(r)
    with np.errstate(invalid="ignore", over="ignore"):
        rhs = f.coeffs[0] * np.cosh(mean_s * r)
    return _report("cosh", r, lhs, rhs, (mean_s,))


def i0_bound(f: GaussPoly, mean_k: float, grid=DEFAULT_IM_GRID) -> BoundReport:
    """f(ix) >= f(0) I0(mean_k x), the 2D analogue of the cosh bound."""
    if f.dim != 2:
        raise ValueError("I0 bound applies to dim 2")
    x = im_grid_points(grid)
    lhs = f.eval_imag(x)
    with np.errstate(invalid="ignore", over="ignore"):
        rhs = f.coeffs[0] * bessel_i0(mean_k * x)
    return _report("I0", x, lhs, rhs, (mean_k,))


def cosh_cos_bounds(f: GaussPoly, mean_s: float, grid=DEFAULT_IM_GRID):
    """The pair from the fourth roots of unity, normalized by f(0):

      f(r) + f(ir) >= f(0) [cos(sr) + cosh(sr)]
      f(ir) - f(r) >= f(0) [cosh(sr) - cos(sr)]

    Margins are oriented so violation = negative; their sum reproduces twice
    the plain cosh margin.
    """
    if f.dim != 1:
        raise ValueError("cosh/cos bounds apply to dim 1")
    r = im_grid_points(grid)
    re = f.eval(r)
    im = f.eval_imag(r)
    f0 = f.coeffs[0]
    with np.errstate(invalid="ignore", over="ignore"):
        x = mean_s * r
        rhs_sum = f0 * (np.cos(x) + np.cosh(x))
        rhs_diff = f0 * (np.cosh(x) - np.cos(x))
    rep_sum = _report("sum4", r, re + im, rhs_sum, (mean_s,))
    rep_diff = _report("diff4", r, im - re, rhs_diff, (mean_s,))
    return rep_sum, rep_diff


def _mod8_kernels(x: np.ndarray):
    # Subseries of cosh by power mod 8: c_j = sum_{2n = j mod 8} x^{2n}/(2n)!
    # via the discrete average of exp over eighth roots of unity.
    with np.errstate(invalid="ignore", over="ignore"):
        ch, c = np.cosh(x), np.cos(x)
        xh = SQRT_HALF * x
        cross_even = np.cos(xh) * np.cosh(xh)
        cross_odd = np.sin(xh) * np.sinh(xh)
        c0 = 0.25 * (ch + c + 2.0 * cross_even)
        c2 = 0.25 * (ch - c + 2.0 * cross_odd)
        c4 = 0.25 * (ch + c - 2.0 * cross_even)
        c6 = 0.25 * (ch - c - 2.0 * cross_odd)
    return c0, c2, c4, c6


def omega8_bounds(f: GaussPoly, mean_s: float, grid=DEFAULT_IM_GRID):
    """Four bounds from the eighth roots of unity.  With w = exp(i pi/4):

      f(r) + f(ir) + [f(wr) + f(w^3 r)]    >= 4 f(0) c0(sr)
      f(r) + f(ir) - [f(wr) + f(w^3 r)]    >= 4 f(0) c4(sr)
      f(ir) - f(r) + i [f(wr) - f(w^3 r)]  >= 4 f(0) c2(sr)
      f(ir) - f(r) - i [f(wr) - f(w^3 r)]  >= 4 f(0) c6(sr)

    The left sides are real up to rounding; a residue above 1e-10 of scale
    raises a flag on the report instead of silently truncating.
    """
    if f.dim != 1:
        raise ValueError("eighth-root bounds apply to dim 1")
    r = im_grid_points(grid)
    a0 = f.eval(r).astype(np.complex128)
    a2 = f.eval_imag(r).astype(np.complex128)
    a1 = f.eval_complex_ray(r, 1)
    a3 = f.eval_complex_ray(r, 3)
    with np.errstate(invalid="ignore"):
        c0, c2, c4, c6 = _mod8_kernels(mean_s * r)
    f0 = 4.0 * f.coeffs[0]
    combos = (
        ("omega8_1", a0 + a2 + (a1 + a3), f0 * c0),
        ("omega8_2", a0 + a2 - (a1 + a3), f0 * c4),
        ("omega8_3", a2 - a0 + 1j * (a1 - a3), f0 * c2),
        ("omega8_4", a2 - a0 - 1j * (a1 - a3), f0 * c6),
    )
    out = []
    for bound_id, lhs_c, rhs in combos:
        lhs = lhs_c.real
        scale = np.maximum(1.0, np.abs(lhs))
        residue = np.abs(lhs_c.imag)
        finite = np.isfinite(lhs)
        flags = ()
        if np.any(residue[finite] > IMAG_RESIDUE_TOL * scale[finite]):
            flags = ("imag_residue",)
        out.append(_report(bound_id, r, lhs, rhs, (mean_s,), flags))
    return tuple(out)


def multicomponent_bound(
    f: GaussPoly, widths, weights, grid=DEFAULT_IM_GRID
) -> BoundReport:
    """Split f into convolution components plus a complement and bound f(ir)
    by the weighted sum of per-component cosh kernels:

      f(ir) >= sum_i w_i g_i(0) cosh(<s>_i r) + h(0) cosh(<s>_h r)

    with g_i the width-b_i convolution associates, h = f - sum_i w_i g_i.
    Component moments come from linearity of mu0/mu1; the complement never
    needs its own closed form.  Sharper than the plain cosh bound whenever
    the transform is nonnegative.
    """
    if f.dim != 1:
        raise ValueError("multicomponent bound applies to dim 1")
    widths = tuple(float(b) for b in widths)
    weights = tuple(float(w) for w in weights)
    if len(widths) != len(weights):
        raise ValueError("one weight per width")
    if any(w <= 0 for w in weights) or sum(weights) > 1.0 + 1e-12:
        raise ValueError("weights must be positive with sum <= 1")

    comps = [convolve_gauss(f, b) for b in widths]
    mu0_f, mu1_f = mu0(f), mu1_r_space(f)
    mu0_c, mu1_c = mu0_f, mu1_f
    terms = []  # (value at 0, mean_s)
    means = []
    for b, w, g in zip(widths, weights, comps):
        m0, m1 = mu0(g), mu1_r_space(g)
        if m1 < 0:
            raise NegativeMeanMomentum(f"conv_b={b:g}", m1)
        mu0_c -= w * m0
        mu1_c -= w * m1
        mean = m1 / m0
        means.append(mean)
        terms.append((w * g.coeffs[0], mean))

    if mu1_c < 0 and abs(mu1_c) > 1e-12 * (1.0 + abs(mu1_f)):
        raise NegativeMeanMomentum("complement", mu1_c)
    h0 = f.coeffs[0] - sum(w * g.coeffs[0] for w, g in zip(weights, comps))
    mean_c = mu1_c / mu0_c if abs(mu0_c) > 1e-13 * abs(mu0_f) else 0.0
    means.append(mean_c)
    terms.append((h0, mean_c))

    r = im_grid_points(grid)
    lhs = f.eval_imag(r)
    rhs = np.zeros_like(r)
    for v0, mean in terms:
        rhs += v0 * np.cosh(mean * r)
    return _report("multicomponent", r, lhs, rhs, means)


def analytic_suite(s: AssociateSet, grid=DEFAULT_IM_GRID) -> list:
    """Dimension's Jensen bound (cosh or I0) on every associate, own mean
    momentum each.  A negative mu1 is a detection for the odd-moment-sign
    test upstream; here both kernels are even, so the bound itself is still
    evaluated with |mean|."""
    from .criteria import TestVerdict, Witness

    bound_id = "cosh" if s.base.dim == 1 else "I0"
    r = im_grid_points(grid)
    out = []
    for tag, g in s.entries:
        try:
            m0, m1 = mu0(g), mu1_r_space(g)
        except Exception:
            out.append(TestVerdict(bound_id, False, None, cost=len(r)))
            continue
        if not math.isfinite(m1) or m0 <= 0:
            out.append(TestVerdict(bound_id, False, None, cost=len(r)))
            continue
        mean = abs(m1) / m0
        lhs = g.eval_imag(r)
        if g.dim == 1:
            rhs = g.coeffs[0] * np.cosh(mean * r)
        else:
            with np.errstate(over="ignore"):
                rhs = g.coeffs[0] * bessel_i0(mean * r)
        margin = lhs - rhs
        first = first_violation(r, margin, lhs)
        if first is None:
            out.append(TestVerdict(bound_id, False, None, cost=len(r)))
        else:
            i = int(np.searchsorted(r, first))
            w = Witness(tag=tag, r=first, margin=float(margin[i]))
            out.append(TestVerdict(bound_id, True, w, cost=len(r)))
    return out
