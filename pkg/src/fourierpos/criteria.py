"""The necessary-condition checklist, folded to uniform verdicts.

Each criterion is a pure function of the tested function (and its associate
family) returning detected/undetected plus a witness.  All criteria are
necessary for a nonnegative transform, so a single violation anywhere is
conclusive; the converse never holds and no criterion here claims it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic, toeplitz
from .algebra import AssociateSet, GaussPoly, convolve_gauss, derivative_2q
from .moments import _mu1_r_space_counted, _tail_cut, mu0

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

CRITERIA_1D = (
    "maximality",
    "even_moments",
    "odd_moment_sign",
    "toeplitz",
    "cosh",
    "cosh_cos",
    "omega8",
    "multicomponent",
)
CRITERIA_2D = ("maximality", "even_moments", "odd_moment_sign", "toeplitz", "I0")


@dataclass(frozen=True)
class Witness:
    tag: str
    r: float
    margin: float


@dataclass(frozen=True)
class TestVerdict:
    __test__ = False  # not a pytest class, despite the name

    criterion_id: str
    detected: bool
    witness: Witness | None
    cost: int = 0


def _golden_max(f: GaussPoly, lo: float, hi: float, iters: int = 60):
    # golden-section refinement of a local maximum of f on [lo, hi]
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def maximality_test(f: GaussPoly, grid=None, tag: str = "psi") -> TestVerdict:
    """Detects f(r) > f(0) anywhere: the origin must be the global maximum.

    Coarse grid scan out to where the Gaussian envelope is negligible, then
    golden-section refinement around the worst grid point.
    """
    if grid is None:
        grid = (0.025, 10.0, 0.025)
    step = grid[2]
    end = max(grid[1], _tail_cut(f))
    pts = np.arange(grid[0], end + 0.5 * step, step)
    vals = f.eval(pts)
    worst = int(np.argmax(vals))
    lo = max(pts[worst] - step, 0.0)
    hi = pts[worst] + step
    r_star, f_star = _golden_max(f, lo, hi)
    if vals[worst] > f_star:
        r_star, f_star = float(pts[worst]), float(vals[worst])
    f0 = float(f.coeffs[0])
    eps = 1e-12 * abs(f0)
    cost = len(pts) + 122
    if f_star > f0 + eps:
        return TestVerdict("maximality", True, Witness(tag, float(r_star), f0 - f_star), cost)
    return TestVerdict("maximality", False, None, cost)


def build_associates(f: GaussPoly, b=None, qmax: int = 4) -> AssociateSet:
    """The associate family {psi} + derivatives + convolutions + both.

    Every entry is a positivity-preserving image of f: if the transform of f
    is nonnegative, so is every entry's.  qmax=4 with one width gives the
    ten-member family."""
    if qmax < 0:
        raise ValueError("qmax must be nonnegative")
    entries = [("psi", f)]
    for q in range(1, qmax + 1):
        entries.append((f"psi_{2 * q}", derivative_2q(f, q)))
    if b:
        fb = convolve_gauss(f, float(b))
        entries.append(("psi_b", fb))
        for q in range(1, qmax + 1):
            entries.append((f"psi_b{2 * q}", derivative_2q(fb, q)))
    return AssociateSet(entries=tuple(entries), b=float(b) if b else 0.0, qmax=qmax)


def _fold(criterion_id: str, verdicts) -> TestVerdict:
    # OR-combine per-associate verdicts; first witness wins
    cost = sum(v.cost for v in verdicts)
    for v in verdicts:
        if v.detected:
            return TestVerdict(criterion_id, True, v.witness, cost)
    return TestVerdict(criterion_id, False, None, cost)


def _moments_table(s: AssociateSet):
    out = []
    for tag, g in s.entries:
        try:
            m1, cost = _mu1_r_space_counted(g)
        except Exception:
            m1, cost = math.nan, 0
        out.append((tag, g, mu0(g), m1, cost))
    return out


def even_moments_test(s: AssociateSet) -> TestVerdict:
    """Origin value of every associate must be positive (each is, up to a
    constant, an even moment of the base transform)."""
    scale = 1.0 + abs(float(s.base.coeffs[0]))
    for tag, g in s.entries:
        v = float(g.coeffs[0])
        if v < -1e-12 * scale:
            return TestVerdict("even_moments", True, Witness(tag, 0.0, v), len(s.entries))
    return TestVerdict("even_moments", False, None, len(s.entries))


def odd_moment_sign_test(table) -> TestVerdict:
    cost = sum(t[4] for t in table)
    for tag, _g, _m0, m1, _c in table:
        if math.isfinite(m1) and m1 < 0:
            return TestVerdict("odd_moment_sign", True, Witness(tag, 0.0, m1), cost)
    return TestVerdict("odd_moment_sign", False, None, cost)


def _bound_verdict(criterion_id, reports_by_tag, cost) -> TestVerdict:
    for tag, rep in reports_by_tag:
        if rep.first_violation is not None:
            r = rep.first_violation
            margin = next(m for rr, m in rep.margin_curve if rr == r)
            return TestVerdict(criterion_id, True, Witness(tag, r, margin), cost)
    return TestVerdict(criterion_id, False, None, cost)


def run_checklist(
    f: GaussPoly,
    selection=None,
    *,
    b=None,
    qmax: int = 0,
    orders=(3,),
    im_grid=analytic.DEFAULT_IM_GRID,
    toeplitz_grid=toeplitz.DEFAULT_GRID,
    mc_widths=(1.0,),
    mc_weights=(0.5,),
    early_exit: bool = False,
) -> list[TestVerdict]:
    """Run the selected criteria in cheap-to-expensive order.

    Default is the full tally (every criterion evaluated) so campaign
    statistics count per-criterion detections; early_exit stops at the first
    detection and returns the verdicts gathered so far.

    Defaults test the bare function; campaigns opt into the associate family
    via b and qmax (b=1, qmax=4 gives the ten-member family).
    """
    allowed = CRITERIA_1D if f.dim == 1 else CRITERIA_2D
    if selection is None:
        selection = allowed
    unknown = set(selection) - set(allowed)
    if unknown:
        raise ValueError(f"criteria not applicable to dim {f.dim}: {sorted(unknown)}")

    s = build_associates(f, b=b, qmax=qmax)
    table = None
    n_im = len(analytic.im_grid_points(im_grid))
    out: list[TestVerdict] = []

    def emit(v: TestVerdict) -> bool:
        out.append(v)
        return early_exit and v.detected

    if "maximality" in selection:
        v = _fold("maximality", [maximality_test(g, tag=tag) for tag, g in s.entries])
        if emit(v):
            return out
    if "even_moments" in selection:
        if emit(even_moments_test(s)):
            return out
    if "odd_moment_sign" in selection:
        table = _moments_table(s)
        if emit(odd_moment_sign_test(table)):
            return out
    if "toeplitz" in selection:
        for n in orders:
            v = _fold(f"toeplitz{n}", toeplitz.toeplitz_suite(s, n, toeplitz_grid))
            if emit(v):
                return out

    needs_means = {"cosh", "I0", "cosh_cos", "omega8"} & set(selection)
    if needs_means and table is None:
        table = _moments_table(s)

    # even kernels: evaluated at |mean|; a negative first moment is the
    # odd_moment_sign test's detection, not a reason to skip the bound
    def usable(m0_val, m1_val):
        return math.isfinite(m1_val) and m0_val > 0

    if "cosh" in selection or "I0" in selection:
        v = _fold(
            "cosh" if f.dim == 1 else "I0",
            analytic.analytic_suite(s, im_grid),
        )
        if emit(v):
            return out
    if "cosh_cos" in selection:
        reports = []
        for tag, g, m0_val, m1_val, _c in table:
            if not usable(m0_val, m1_val):
                continue
            for rep in analytic.cosh_cos_bounds(g, abs(m1_val) / m0_val, im_grid):
                reports.append((tag, rep))
        if emit(_bound_verdict("cosh_cos", reports, 2 * n_im * len(table))):
            return out
    if "omega8" in selection:
        reports = []
        for tag, g, m0_val, m1_val, _c in table:
            if not usable(m0_val, m1_val):
                continue
            for rep in analytic.omega8_bounds(g, abs(m1_val) / m0_val, im_grid):
                reports.append((tag, rep))
        if emit(_bound_verdict("omega8", reports, 4 * n_im * len(table))):
            return out
    if "multicomponent" in selection:
        try:
            rep = analytic.multicomponent_bound(f, mc_widths, mc_weights, im_grid)
            emit(_bound_verdict("multicomponent", [("psi", rep)], n_im))
        except analytic.NegativeMeanMomentum as exc:
            out.append(
                TestVerdict(
                    "multicomponent", True, Witness(exc.tag, 0.0, exc.value), n_im
                )
            )
    return out
