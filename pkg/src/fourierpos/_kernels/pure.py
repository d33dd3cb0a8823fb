"""Pure-numpy kernels: the fallback backend when the compiled extension is
unavailable.  Mirrors the API of `fourierpos._kernels._hot` exactly.

Hot paths: Gaussian-polynomial evaluation (real axis and imaginary axis),
batched cyclic-Jacobi eigenvalues for the Toeplitz scans, and the adaptive
Gauss-Legendre integral behind the r-space first-moment formula.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

# Frozen 15-point Gauss-Legendre rule on [-1, 1].
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)

# Below this radius the mu1 integrand switches to its Taylor form.
_TAYLOR_SWITCH = 1e-4

# Jacobi sweep control: tighter than the 1e-13*||M|| contract so interlacing
# holds with slack at 1e-12.
_JACOBI_TOL = 1e-15
_JACOBI_MAX_SWEEPS = 40


def eval_real(a, p, r):
    """exp(-a r^2) * Q(r^2) elementwise, Horner in t = r^2 with extended-
    precision accumulation."""
    r = np.asarray(r, dtype=np.float64)
    t = np.square(r.astype(np.longdouble))
    acc = np.full_like(t, np.longdouble(p[-1]))
    for k in range(len(p) - 2, -1, -1):
        acc = acc * t + np.longdouble(p[k])
    out = np.exp(-np.float64(a) * t.astype(np.float64)) * acc.astype(np.float64)
    return out


def eval_imag(a, p, r):
    """psi(i r) = exp(+a r^2) * Q(-r^2); saturates to +-inf on exp overflow
    so bound comparisons stay ordered."""
    r = np.asarray(r, dtype=np.float64)
    t = np.square(r.astype(np.longdouble))
    acc = np.full_like(t, np.longdouble(p[-1]))
    for k in range(len(p) - 2, -1, -1):
        acc = acc * (-t) + np.longdouble(p[k])
    q = acc.astype(np.float64)
    expo = np.float64(a) * t.astype(np.float64)
    with np.errstate(over="ignore"):
        out = np.where(expo > 700.0, np.sign(q) * np.inf, np.exp(np.minimum(expo, 700.0)) * q)
    return out


def jacobi_eigvals_batch(mats):
    """All eigenvalues (ascending) of a batch of symmetric matrices via
    cyclic Jacobi sweeps in a fixed (p, q) order."""
    a = np.array(mats, dtype=np.float64)
    if a.ndim == 2:
        a = a[None, :, :]
    m, n, n2 = a.shape
    if n != n2:
        raise ValueError("matrices must be square")
    norms = np.sqrt(np.sum(a * a, axis=(1, 2)))
    thresh = _JACOBI_TOL * np.maximum(norms, 1e-300)
    idx = np.arange(m)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2, axis=(1, 2)))
        if np.all(off <= thresh):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                live = np.abs(apq) > 1e-300
                if not live.any():
                    continue
                app = a[:, p, p]
                aqq = a[:, q, q]
                with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                    theta = np.where(live, (aqq - app) / (2.0 * apq), 0.0)
                    # theta -> +-inf collapses to t = 0, the no-rotation limit
                    t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                t = np.where(theta == 0.0, np.where(live, 1.0, 0.0), t)
                t = np.where(live, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, :, p].copy()
                col_q = a[:, :, q].copy()
                a[:, :, p] = c[:, None] * col_p - s[:, None] * col_q
                a[:, :, q] = s[:, None] * col_p + c[:, None] * col_q
                row_p = a[:, p, :].copy()
                row_q = a[:, q, :].copy()
                a[:, p, :] = c[:, None] * row_p - s[:, None] * row_q
                a[:, q, :] = s[:, None] * row_p + c[:, None] * row_q
                a[idx[live], p, q] = 0.0
                a[idx[live], q, p] = 0.0
    eig = np.diagonal(a, axis1=1, axis2=2).copy()
    eig.sort(axis=1)
    return eig


def sym_eigvals(mat):
    """Eigenvalues (ascending) of one symmetric matrix."""
    return jacobi_eigvals_batch(np.asarray(mat, dtype=np.float64)[None, :, :])[0]


def toeplitz_scan_eigs(a, p, r_grid, n):
    """Eigenvalues of the order-n Toeplitz matrices T(r)_{ij} = psi(|i-j| r)
    for every r in the grid.  Returns an (len(grid), n) ascending array."""
    r_grid = np.asarray(r_grid, dtype=np.float64)
    k = np.arange(n, dtype=np.float64)
    samples = eval_real(a, p, np.outer(r_grid, k).ravel()).reshape(len(r_grid), n)
    ii, jj = np.indices((n, n))
    mats = samples[:, np.abs(ii - jj)]
    return jacobi_eigvals_batch(mats)


def _mu1_integrand(a, p, r):
    t = r * r
    g = np.empty_like(r)
    small = r < _TAYLOR_SWITCH
    if small.any():
        p1 = p[1] if len(p) > 1 else 0.0
        p2 = p[2] if len(p) > 2 else 0.0
        c0 = a * p[0] - p1
        c1 = a * p1 - p2 - 0.5 * a * a * p[0]
        g[small] = c0 + c1 * t[small]
    big = ~small
    if big.any():
        g[big] = (p[0] - eval_real(a, p, r[big])) / t[big]
    return g


def _gl_panel(a, p, lo, hi):
    half = 0.5 * (hi - lo)
    pts = 0.5 * (hi + lo) + half * _GL_NODES
    return half * float(np.dot(_GL_WEIGHTS, _mu1_integrand(a, p, pts)))


def mu1_integral(a, p, r_max, tol):
    """Adaptive Gauss-Legendre value of int_0^R [psi(0) - psi(r)] / r^2 dr.

    Bisects panels until the two-half refinement of each panel agrees with
    the whole-panel estimate within the width-proportional share of `tol`.
    Returns (value, evaluation_count).
    """
    p = np.asarray(p, dtype=np.float64)
    width_total = float(r_max)
    stack = [(0.0, width_total, _gl_panel(a, p, 0.0, width_total), 0)]
    total = 0.0
    n_eval = 15
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gl_panel(a, p, lo, mid)
        right = _gl_panel(a, p, mid, hi)
        n_eval += 30
        refined = left + right
        if (
            abs(refined - whole) <= tol * (hi - lo) / width_total
            or depth >= 48
            or (hi - lo) <= 1e-9 * width_total
        ):
            total += refined
        else:
            # Push right first so the left half is resolved first and the
            # accumulation order stays left-to-right (deterministic).
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return total, n_eval
