import math

import mpmath as mp
import numpy as np
import pytest

from fourierpos import _kernels
from fourierpos._kernels import pure

mp.mp.dps = 30

needs_compiled = pytest.mark.skipif(
    not _kernels.HAVE_COMPILED, reason="compiled backend not built"
)

if _kernels.HAVE_COMPILED:
    from fourierpos._kernels import _hot as hot


def test_backend_flags():
    assert _kernels.BACKEND in ("compiled", "pure")
    assert (_kernels.BACKEND == "compiled") == _kernels.HAVE_COMPILED
    assert pure.BACKEND == "pure"


def test_eval_real_formula():
    a, p = 0.8, np.array([1.0, -0.4, 0.05])
    r = np.array([0.0, 0.7, 2.1])
    out = pure.eval_real(a, p, r)
    for ri, oi in zip(r, out):
        t = ri * ri
        want = math.exp(-a * t) * (1.0 - 0.4 * t + 0.05 * t * t)
        assert oi == pytest.approx(want, rel=1e-14)


def test_eval_imag_formula_and_saturation():
    a, p = 0.8, np.array([1.0, -0.4, 0.05])
    out = pure.eval_imag(a, p, np.array([0.7]))
    t = 0.49
    assert out[0] == pytest.approx(math.exp(a * t) * (1.0 + 0.4 * t + 0.05 * t * t), rel=1e-14)
    big = pure.eval_imag(a, p, np.array([100.0]))
    assert big[0] == math.inf
    neg = pure.eval_imag(a, np.array([-1.0]), np.array([100.0]))
    assert neg[0] == -math.inf


def test_jacobi_matches_eigvalsh():
    rng = np.random.default_rng(11)
    mats = rng.normal(size=(25, 7, 7))
    mats = mats + mats.transpose(0, 2, 1)
    got = pure.jacobi_eigvals_batch(mats)
    want = np.linalg.eigvalsh(mats)
    np.testing.assert_allclose(got, want, rtol=1e-11, atol=1e-11)


def test_jacobi_rejects_nonsquare():
    with pytest.raises(ValueError):
        pure.jacobi_eigvals_batch(np.zeros((2, 3, 4)))


def test_sym_eigvals_single():
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(pure.sym_eigvals(m), [1.0, 3.0], atol=1e-13)


def test_toeplitz_scan_structure():
    # at r=0 every entry is psi(0): eigenvalues are (0,...,0, n psi(0))
    a, p = 0.5, np.array([2.0])
    eigs = pure.toeplitz_scan_eigs(a, p, np.array([0.0, 1.0]), 4)
    np.testing.assert_allclose(eigs[0], [0.0, 0.0, 0.0, 8.0], atol=1e-13)
    # r=1 row matches a directly built matrix
    n = 4
    samples = np.array([math.exp(-a * k * k) * 2.0 for k in range(n)])
    ii, jj = np.indices((n, n))
    want = np.linalg.eigvalsh(samples[np.abs(ii - jj)])
    np.testing.assert_allclose(eigs[1], want, atol=1e-12)


def test_mu1_integral_against_quadrature():
    a, p = 0.7, np.array([1.0, -0.4, 0.05])

    def integrand(r):
        t = r * r
        return (p[0] - mp.exp(-a * t) * (p[0] + p[1] * t + p[2] * t * t)) / t

    want = float(mp.quad(integrand, [0, 8]))
    got, n_eval = pure.mu1_integral(a, p, 8.0, 1e-10)
    assert got == pytest.approx(want, rel=1e-9)
    assert n_eval >= 15


def test_mu1_integral_deterministic():
    a, p = 0.7, np.array([1.0, -0.4, 0.05])
    first = pure.mu1_integral(a, p, 8.0, 1e-10)
    second = pure.mu1_integral(a, p, 8.0, 1e-10)
    assert first == second


@needs_compiled
def test_parity_eval_real():
    a, p = 0.7, np.array([1.0, -0.4, 0.05])
    r = np.linspace(0.0, 30.0, 500)
    np.testing.assert_allclose(hot.eval_real(a, p, r), pure.eval_real(a, p, r), rtol=1e-14, atol=1e-300)


@needs_compiled
def test_parity_eval_imag():
    a, p = 0.7, np.array([1.0, -0.4, 0.05])
    r = np.linspace(0.0, 60.0, 500)
    h = hot.eval_imag(a, p, r)
    q = pure.eval_imag(a, p, r)
    fin = np.isfinite(q)
    np.testing.assert_allclose(h[fin], q[fin], rtol=1e-13)
    np.testing.assert_array_equal(h[~fin], q[~fin])


@needs_compiled
def test_parity_eigvals():
    rng = np.random.default_rng(13)
    mats = rng.normal(size=(20, 6, 6))
    mats = mats + mats.transpose(0, 2, 1)
    np.testing.assert_allclose(
        hot.jacobi_eigvals_batch(mats), pure.jacobi_eigvals_batch(mats), rtol=1e-12, atol=1e-12
    )
    m = mats[0]
    np.testing.assert_allclose(hot.sym_eigvals(m), pure.sym_eigvals(m), rtol=1e-12, atol=1e-12)


@needs_compiled
def test_parity_toeplitz_scan():
    a, p = 0.7, np.array([1.0, -0.4, 0.05])
    grid = np.linspace(0.025, 3.5, 140)
    np.testing.assert_allclose(
        hot.toeplitz_scan_eigs(a, p, grid, 4),
        pure.toeplitz_scan_eigs(a, p, grid, 4),
        rtol=1e-12,
        atol=1e-13,
    )


@needs_compiled
def test_parity_mu1_integral():
    a, p = 0.7, np.array([1.0, -0.4, 0.05])
    vh, nh = hot.mu1_integral(a, p, 8.0, 1e-10)
    vp, np_ = pure.mu1_integral(a, p, 8.0, 1e-10)
    assert vh == pytest.approx(vp, rel=1e-12)
    assert nh == np_
