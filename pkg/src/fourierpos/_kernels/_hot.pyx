# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: API mirror of `fourierpos._kernels.pure`.

Scalar loops in C with long-double Horner accumulation; the cyclic Jacobi
eigensolver and the adaptive Gauss-Legendre quadrature run without the GIL.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, exp, fabs, sqrt

cnp.import_array()

BACKEND = "compiled"

DEF MAX_ORDER = 16
DEF MAX_STACK = 160

cdef double GL_NODES[15]
cdef double GL_WEIGHTS[15]

_nodes, _weights = np.polynomial.legendre.leggauss(15)
for _i in range(15):
    GL_NODES[_i] = _nodes[_i]
    GL_WEIGHTS[_i] = _weights[_i]
del _nodes, _weights, _i


cdef inline double _eval_real_scalar(double a, const double* p, Py_ssize_t m, double r) nogil:
    cdef long double t = <long double> r * r
    cdef long double acc = p[m - 1]
    cdef Py_ssize_t k
    for k in range(m - 2, -1, -1):
        acc = acc * t + p[k]
    return exp(-a * <double> t) * <double> acc


cdef inline double _eval_imag_scalar(double a, const double* p, Py_ssize_t m, double r) nogil:
    cdef long double t = <long double> r * r
    cdef long double acc = p[m - 1]
    cdef Py_ssize_t k
    cdef double q, expo
    for k in range(m - 2, -1, -1):
        acc = acc * (-t) + p[k]
    q = <double> acc
    expo = a * <double> t
    if expo > 700.0:
        if q > 0.0:
            return INFINITY
        if q < 0.0:
            return -INFINITY
        return 0.0
    return exp(expo) * q


def eval_real(double a, p, r):
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef double[::1] rv = np.ascontiguousarray(r, dtype=np.float64)
    out = np.empty(rv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = rv.shape[0], m = pv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _eval_real_scalar(a, &pv[0], m, rv[i])
    return out


def eval_imag(double a, p, r):
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef double[::1] rv = np.ascontiguousarray(r, dtype=np.float64)
    out = np.empty(rv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = rv.shape[0], m = pv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _eval_imag_scalar(a, &pv[0], m, rv[i])
    return out


cdef void _jacobi(double* A, int n, double* eig) nogil:
    """Cyclic Jacobi on a row-major symmetric n x n matrix (destroyed).
    Deterministic (p, q) sweep order; stops when the off-diagonal norm
    falls below 1e-15 of the original Frobenius norm."""
    cdef double norm = 0.0, off, app, aqq, apq, theta, t, c, s, aip, aiq, thresh, key
    cdef int i, j, p, q, sweep
    for i in range(n * n):
        norm += A[i] * A[i]
    norm = sqrt(norm)
    thresh = 1e-15 * norm
    if thresh < 1e-300:
        thresh = 1e-300
    for sweep in range(40):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * A[i * n + j] * A[i * n + j]
        off = sqrt(off)
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p * n + q]
                if fabs(apq) <= 1e-300:
                    continue
                app = A[p * n + p]
                aqq = A[q * n + q]
                theta = (aqq - app) / (2.0 * apq)
                if fabs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip = A[i * n + p]
                    aiq = A[i * n + q]
                    A[i * n + p] = c * aip - s * aiq
                    A[i * n + q] = s * aip + c * aiq
                for i in range(n):
                    aip = A[p * n + i]
                    aiq = A[q * n + i]
                    A[p * n + i] = c * aip - s * aiq
                    A[q * n + i] = s * aip + c * aiq
                A[p * n + q] = 0.0
                A[q * n + p] = 0.0
    for i in range(n):
        eig[i] = A[i * n + i]
    for i in range(1, n):
        key = eig[i]
        j = i - 1
        while j >= 0 and eig[j] > key:
            eig[j + 1] = eig[j]
            j -= 1
        eig[j + 1] = key


def jacobi_eigvals_batch(mats):
    a = np.ascontiguousarray(mats, dtype=np.float64)
    if a.ndim == 2:
        a = a[None, :, :]
    cdef Py_ssize_t nmat = a.shape[0]
    cdef int n = a.shape[1]
    if a.shape[1] != a.shape[2]:
        raise ValueError("matrices must be square")
    if n > MAX_ORDER:
        raise ValueError(f"compiled Jacobi kernel supports order <= {MAX_ORDER}")
    cdef double[:, :, ::1] av = a
    out = np.empty((nmat, n), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef double A[MAX_ORDER * MAX_ORDER]
    cdef Py_ssize_t k
    cdef int i, j
    with nogil:
        for k in range(nmat):
            for i in range(n):
                for j in range(n):
                    A[i * n + j] = av[k, i, j]
            _jacobi(A, n, &ov[k, 0])
    return out


def sym_eigvals(mat):
    return jacobi_eigvals_batch(np.asarray(mat, dtype=np.float64)[None, :, :])[0]


def toeplitz_scan_eigs(double a, p, r_grid, int n):
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef double[::1] gv = np.ascontiguousarray(r_grid, dtype=np.float64)
    if n > MAX_ORDER:
        raise ValueError(f"compiled Jacobi kernel supports order <= {MAX_ORDER}")
    cdef Py_ssize_t ng = gv.shape[0], m = pv.shape[0], g
    out = np.empty((ng, n), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef double A[MAX_ORDER * MAX_ORDER]
    cdef double samples[MAX_ORDER]
    cdef int i, j
    with nogil:
        for g in range(ng):
            for i in range(n):
                samples[i] = _eval_real_scalar(a, &pv[0], m, i * gv[g])
            for i in range(n):
                for j in range(n):
                    A[i * n + j] = samples[i - j if i >= j else j - i]
            _jacobi(A, n, &ov[g, 0])
    return out


cdef inline double _mu1_g(double a, const double* p, Py_ssize_t m, double r) nogil:
    cdef double t = r * r
    cdef double p1 = p[1] if m > 1 else 0.0
    cdef double p2 = p[2] if m > 2 else 0.0
    if r < 1e-4:
        return (a * p[0] - p1) + (a * p1 - p2 - 0.5 * a * a * p[0]) * t
    return (p[0] - _eval_real_scalar(a, p, m, r)) / t


cdef inline double _gl_panel(double a, const double* p, Py_ssize_t m, double lo, double hi) nogil:
    cdef double half = 0.5 * (hi - lo)
    cdef double mid = 0.5 * (hi + lo)
    cdef double acc = 0.0
    cdef int i
    for i in range(15):
        acc += GL_WEIGHTS[i] * _mu1_g(a, p, m, mid + half * GL_NODES[i])
    return half * acc


def mu1_integral(double a, p, double r_max, double tol):
    """Adaptive bisection with 15-point Gauss kernels on [0, r_max].
    Returns (value, evaluation_count)."""
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef Py_ssize_t m = pv.shape[0]
    cdef double lo_s[MAX_STACK]
    cdef double hi_s[MAX_STACK]
    cdef double whole_s[MAX_STACK]
    cdef int depth_s[MAX_STACK]
    cdef int top = 0, depth
    cdef double total = 0.0, lo, hi, whole, mid, left, right, refined
    cdef long n_eval = 15
    lo_s[0] = 0.0
    hi_s[0] = r_max
    whole_s[0] = _gl_panel(a, &pv[0], m, 0.0, r_max)
    depth_s[0] = 0
    top = 1
    with nogil:
        while top > 0:
            top -= 1
            lo = lo_s[top]
            hi = hi_s[top]
            whole = whole_s[top]
            depth = depth_s[top]
            mid = 0.5 * (lo + hi)
            left = _gl_panel(a, &pv[0], m, lo, mid)
            right = _gl_panel(a, &pv[0], m, mid, hi)
            n_eval += 30
            refined = left + right
            if (fabs(refined - whole) <= tol * (hi - lo) / r_max
                    or depth >= 48
                    or (hi - lo) <= 1e-9 * r_max
                    or top + 2 > MAX_STACK):
                total += refined
            else:
                lo_s[top] = mid
                hi_s[top] = hi
                whole_s[top] = right
                depth_s[top] = depth + 1
                top += 1
                lo_s[top] = lo
                hi_s[top] = mid
                whole_s[top] = left
                depth_s[top] = depth + 1
                top += 1
    return total, n_eval
