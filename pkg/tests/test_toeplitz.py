import numpy as np
import pytest

from fourierpos.algebra import GaussPoly, exact_transform
from fourierpos.criteria import build_associates
from fourierpos.toeplitz import (
    DEFAULT_GRID,
    EPS_DETECT_REL,
    ToeplitzScan,
    grid_points,
    min_eigenvalue,
    scan_min_eigs,
    toeplitz_matrix,
    toeplitz_scan,
    toeplitz_suite,
)

# transform exp(-s^2/2)(1 - s^2) dips negative past s=1
F_NEG = exact_transform(GaussPoly(0.5, (1.0, -1.0), dim=1))
# transform exp(-s^2/2)(1 + s^2) stays positive
F_POS = exact_transform(GaussPoly(0.5, (1.0, 1.0), dim=1))


def test_grid_points_default():
    pts = grid_points(DEFAULT_GRID)
    assert len(pts) == 140
    assert pts[0] == pytest.approx(0.025)
    assert pts[-1] == pytest.approx(3.5)
    np.testing.assert_allclose(np.diff(pts), 0.025, rtol=1e-12)


def test_grid_points_validation():
    with pytest.raises(ValueError):
        grid_points((0.0, 1.0, 0.1))
    with pytest.raises(ValueError):
        grid_points((1.0, 0.5, 0.1))


def test_toeplitz_matrix_structure():
    f = GaussPoly(0.5, (1.0, -0.2))
    m = toeplitz_matrix(f, 4, 0.3)
    assert m.shape == (4, 4)
    np.testing.assert_array_equal(m, m.T)
    for i in range(4):
        for j in range(4):
            assert m[i, j] == f.eval(abs(i - j) * 0.3)


def test_toeplitz_matrix_validation():
    f = GaussPoly(0.5, (1.0,))
    with pytest.raises(ValueError):
        toeplitz_matrix(f, 1, 0.3)
    with pytest.raises(ValueError):
        toeplitz_matrix(f, 3, 0.0)


def test_min_eigenvalue_matches_eigvalsh():
    rng = np.random.default_rng(21)
    for _ in range(20):
        m = rng.normal(size=(6, 6))
        m = m + m.T
        assert min_eigenvalue(m) == pytest.approx(np.linalg.eigvalsh(m)[0], rel=1e-11, abs=1e-11)


def test_min_eigenvalue_validation():
    with pytest.raises(ValueError):
        min_eigenvalue(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        min_eigenvalue(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_scan_detects_known_negative():
    for n in (3, 4, 5, 6):
        scan = toeplitz_scan(F_NEG, n)
        assert isinstance(scan, ToeplitzScan)
        assert scan.order == n
        assert scan.first_violation is not None


def test_scan_clean_on_known_positive():
    for n in (3, 4, 5, 6):
        scan = toeplitz_scan(F_POS, n)
        assert scan.first_violation is None
        eps = EPS_DETECT_REL * abs(F_POS.coeffs[0])
        assert min(v for _, v in scan.min_eig) >= -eps


def test_scan_sound_on_gaussians():
    # any true gaussian has a nonnegative transform at every width
    for a in (0.2, 0.5, 2.0):
        f = GaussPoly(a, (1.0,), dim=1)
        for n in (3, 5):
            assert toeplitz_scan(f, n).first_violation is None


def test_first_violation_is_first_grid_hit():
    scan = toeplitz_scan(F_NEG, 4)
    pts = grid_points(DEFAULT_GRID)
    lam = scan_min_eigs(F_NEG, 4, pts)
    eps = EPS_DETECT_REL * abs(F_NEG.coeffs[0])
    assert scan.first_violation == pts[np.nonzero(lam < -eps)[0][0]]


def test_scan_min_eigs_matches_report():
    pts = grid_points(DEFAULT_GRID)
    lam = scan_min_eigs(F_NEG, 3, pts)
    scan = toeplitz_scan(F_NEG, 3)
    np.testing.assert_allclose(lam, [v for _, v in scan.min_eig], rtol=0, atol=0)


def test_eigenvalue_interlacing(mixes_1d):
    # leading principal submatrix: lam_k(T_{n+1}) <= lam_k(T_n) <= lam_{k+1}(T_{n+1})
    for f in mixes_1d[:20]:
        for r in (0.2, 0.8, 1.9):
            for n in range(3, 7):
                a = np.sort(np.linalg.eigvalsh(toeplitz_matrix(f, n, r)))
                b = np.sort(np.linalg.eigvalsh(toeplitz_matrix(f, n + 1, r)))
                tol = 1e-12 * max(1.0, abs(f.coeffs[0]))
                for k in range(n):
                    assert b[k] <= a[k] + tol
                    assert a[k] <= b[k + 1] + tol


def test_det_exponent_unit_gaussian():
    # det T_n(r) ~ r^(n(n-1)) as r -> 0
    f = GaussPoly(0.5, (1.0,), dim=1)
    for n in (3, 4, 5):
        scan = toeplitz_scan(f, n)
        assert scan.det_small_r_exponent == pytest.approx(n * (n - 1), abs=0.1)


def test_suite_verdicts(mixes_1d):
    s = build_associates(F_NEG, b=1.0, qmax=1)
    verdicts = toeplitz_suite(s, 4)
    assert len(verdicts) == len(s.entries)
    assert all(v.criterion_id == "toeplitz4" for v in verdicts)
    base = verdicts[0]
    assert base.detected and base.witness.tag == s.entries[0][0]
    assert base.witness.margin < 0.0
    assert base.cost == 140 * 4
    clean = toeplitz_suite(build_associates(F_POS, b=1.0, qmax=0), 4)
    assert not clean[0].detected and clean[0].witness is None
