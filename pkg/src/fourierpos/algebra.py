"""Closed algebra of even Gaussian-polynomial functions.

Every function handled by this package has the exact form

    f(r) = exp(-a r^2) * Q(r^2),    Q a real polynomial, a > 0,

in one of two ambient dimensions: dim 1 pairs f with its Fourier-cosine
transform phi(s) = sqrt(2/pi) int_0^inf cos(s r) f(r) dr, dim 2 with its
Fourier-Bessel (Hankel) transform phi(k) = int_0^inf x dx J0(k x) f(x).
Both transforms, even derivatives, Gaussian convolutions, and analytic
continuation to the imaginary axis stay inside the family, so all of them
are computed on coefficients with no quadrature anywhere.

Nonnegativity of f itself reduces to nonnegativity of Q on t >= 0, decided
by companion-matrix root isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels

_SQRT_PI = math.sqrt(math.pi)

# Transform eigenvalues of the even oscillator basis, both dims.
BASIS_EIGENVALUES = (1.0, -1.0, 1.0, -1.0, 1.0)

# Even (physicists') Hermite polynomials H_{2j} as coefficients in t = r^2.
_EVEN_HERMITE_T = (
    (1.0,),
    (-2.0, 4.0),
    (12.0, -48.0, 16.0),
    (-120.0, 720.0, -480.0, 64.0),
    (1680.0, -13440.0, 13440.0, -3584.0, 256.0),
)

# 2D basis: sqrt(2) e^{-x^2/2} L_j(x^2) with Laguerre polynomials L_j.
_LAGUERRE_T = (
    (1.0,),
    (1.0, -1.0),
    (1.0, -2.0, 0.5),
    (1.0, -3.0, 1.5, -1.0 / 6.0),
    (1.0, -4.0, 3.0, -2.0 / 3.0, 1.0 / 24.0),
)


@dataclass(frozen=True)
class GaussPoly:
    """exp(-a r^2) * sum_k p_k r^(2k) in ambient dimension dim."""

    a: float
    coeffs: tuple
    dim: int = 1

    def __post_init__(self):
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise ValueError(f"width must be positive and finite, got {self.a}")
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        cs = tuple(float(c) for c in self.coeffs)
        if not cs:
            raise ValueError("empty coefficient sequence")
        if any(not math.isfinite(c) for c in cs):
            raise ValueError("non-finite coefficient")
        # Trailing-coefficient invariant: trim exact zeros, keep one entry.
        n = len(cs)
        while n > 1 and cs[n - 1] == 0.0:
            n -= 1
        object.__setattr__(self, "coeffs", cs[:n])

    @cached_property
    def _p(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.float64)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, r):
        """Value on the real axis (scalar in, scalar out; array in, array
        out)."""
        out = _kernels.eval_real(self.a, self._p, np.asarray(r, dtype=np.float64).ravel())
        return float(out[0]) if np.isscalar(r) or np.ndim(r) == 0 else out.reshape(np.shape(r))

    __call__ = eval

    def eval_imag(self, r):
        """Analytic continuation f(i r) = exp(+a r^2) * Q(-r^2), exactly real.

        Saturates to a signed infinity past the exp range so comparisons
        against bound curves remain well ordered.
        """
        out = _kernels.eval_imag(self.a, self._p, np.asarray(r, dtype=np.float64).ravel())
        return float(out[0]) if np.isscalar(r) or np.ndim(r) == 0 else out.reshape(np.shape(r))

    def eval_complex_ray(self, r, root: int):
        """f(omega^root * r) for the eighth root omega = exp(i pi/4),
        root in {0, 1, 2, 3} standing for {1, omega, i, omega*i}."""
        if root not in (0, 1, 2, 3):
            raise ValueError("root index must be in {0, 1, 2, 3}")
        if root == 0:
            val = self.eval(r)
            return complex(val) if np.ndim(r) == 0 else val.astype(np.complex128)
        if root == 2:
            val = self.eval_imag(r)
            return complex(val) if np.ndim(r) == 0 else val.astype(np.complex128)
        z2 = 1j if root == 1 else -1j  # omega^2 = i, (omega i)^2 = -i
        t = np.square(np.asarray(r, dtype=np.float64))
        zt = z2 * t
        acc = np.full_like(zt, self.coeffs[-1])
        for k in range(len(self.coeffs) - 2, -1, -1):
            acc = acc * zt + self.coeffs[k]
        out = np.exp(-self.a * zt) * acc
        return complex(out) if np.ndim(r) == 0 else out

    def scaled(self, factor: float) -> "GaussPoly":
        return GaussPoly(self.a, tuple(factor * c for c in self.coeffs), self.dim)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "a": self.a, "p": list(self.coeffs)}

    @staticmethod
    def from_dict(d: dict) -> "GaussPoly":
        return GaussPoly(a=float(d["a"]), coeffs=tuple(d["p"]), dim=int(d["dim"]))


@dataclass(frozen=True)
class BasisMix:
    """Coefficients over the first len(c) even basis functions of one
    dimension."""

    dim: int
    c: tuple
    normalized: bool = field(init=False)

    def __post_init__(self):
        cs = tuple(float(x) for x in self.c)
        if len(cs) > 5:
            raise ValueError("at most five basis coefficients supported")
        if not any(cs):
            raise ValueError("all-zero coefficient vector")
        object.__setattr__(self, "c", cs)
        norm = math.sqrt(sum(x * x for x in cs))
        object.__setattr__(self, "normalized", abs(norm - 1.0) < 1e-12)


@dataclass(frozen=True)
class AssociateSet:
    """The base function together with its positivity-preserving images:
    sign-weighted even derivatives and Gaussian convolutions thereof.

    entries is a tuple of (tag, GaussPoly); tags follow the naming
    psi, psi_2, ..., psi_b, psi_b2, ... so census rows stay auditable.
    """

    entries: tuple
    b: float
    qmax: int

    @property
    def base(self) -> GaussPoly:
        return self.entries[0][1]

    def tags(self):
        return tuple(tag for tag, _ in self.entries)

    def functions(self):
        return tuple(fn for _, fn in self.entries)


def basis_function(dim: int, index: int) -> GaussPoly:
    """Orthonormal even basis function: 1D Hermite xi_{2j}, 2D the
    Laguerre-type functions; both are transform eigenfunctions with
    eigenvalue (-1)^j."""
    if index not in range(5):
        raise ValueError(f"basis index out of range (0..4): {index}")
    if dim == 1:
        h = _EVEN_HERMITE_T[index]
        norm = math.pi ** (-0.25) / math.sqrt(2.0 ** (2 * index) * math.factorial(2 * index))
        return GaussPoly(0.5, tuple(norm * c for c in h), dim=1)
    if dim == 2:
        lag = _LAGUERRE_T[index]
        return GaussPoly(0.5, tuple(math.sqrt(2.0) * c for c in lag), dim=2)
    raise ValueError(f"dim must be 1 or 2, got {dim}")


def mix(bm: BasisMix) -> GaussPoly:
    """Exact linear combination of basis functions (common width 1/2)."""
    deg = len(bm.c)
    acc = np.zeros(deg)
    for j, cj in enumerate(bm.c):
        if cj == 0.0:
            continue
        base = basis_function(bm.dim, j)
        acc[: len(base.coeffs)] += cj * base._p
    return GaussPoly(0.5, tuple(acc), dim=bm.dim)


def _cosine_transform_coeffs(a, p):
    """Closed form of the cosine transform of exp(-a r^2) sum p_k r^(2k):
    returns (a2, p2).  Built from (-d/da)^k of the Gaussian transform;
    g[k, m] = (k + m - 1/2) g[k-1, m] - g[k-1, m-1] collects the polynomial
    part in u = s^2/4."""
    p = np.asarray(p, dtype=np.float64)
    deg = len(p) - 1
    g = np.zeros((deg + 1, deg + 1))
    g[0, 0] = 1.0
    for k in range(1, deg + 1):
        for m in range(k + 1):
            g[k, m] = (k + m - 0.5) * g[k - 1, m]
            if m > 0:
                g[k, m] -= g[k - 1, m - 1]
    p2 = np.zeros(deg + 1)
    pref = 1.0 / math.sqrt(2.0 * a)
    for m in range(deg + 1):
        s = 0.0
        for k in range(m, deg + 1):
            s += p[k] * g[k, m] * a ** (-(k + m))
        p2[m] = pref * s / 4.0**m
    return 1.0 / (4.0 * a), p2


def exact_transform(f: GaussPoly) -> GaussPoly:
    """The exact cosine (dim 1) or Bessel-J0 (dim 2) transform, itself a
    GaussPoly.  An involution in both dimensions."""
    if f.dim == 1:
        a2, p2 = _cosine_transform_coeffs(f.a, f._p)
    else:
        from .bessel import hankel_coeffs

        a2, p2 = hankel_coeffs(f.a, f._p)
    return GaussPoly(a2, tuple(p2), dim=f.dim)


def _second_derivative_neg_coeffs(a, p):
    # -(d^2/dr^2) exp(-a t) Q(t), t = r^2, as new polynomial coefficients.
    deg = len(p) - 1
    out = np.zeros(deg + 2)
    for j in range(deg + 2):
        v = 0.0
        if j + 1 <= deg:
            v -= (j + 1.0) * (4.0 * j + 2.0) * p[j + 1]
        if j <= deg:
            v += (8.0 * a * j + 2.0 * a) * p[j]
        if 1 <= j <= deg + 1:
            v -= 4.0 * a * a * p[j - 1]
        out[j] = v
    return out


def derivative_2q(f: GaussPoly, q: int) -> GaussPoly:
    """Sign-weighted even derivative: dim 1 gives (-1)^q d^(2q)f/dr^(2q),
    dim 2 gives q applications of the radial Laplacian.  In transform space
    both multiply phi by s^(2q)."""
    if q < 0:
        raise ValueError("derivative order must be nonnegative")
    if q == 0:
        return f
    p = f._p
    if f.dim == 1:
        for _ in range(q):
            p = _second_derivative_neg_coeffs(f.a, p)
    else:
        from .bessel import laplacian_coeffs

        for _ in range(q):
            p = laplacian_coeffs(f.a, p)
    return GaussPoly(f.a, tuple(p), dim=f.dim)


def convolve_gauss(f: GaussPoly, b: float) -> GaussPoly:
    """Gaussian-convolution associate psi_b: the function whose transform is
    exp(-s^2/(2 b^2)) * phi.  Computed entirely in transform space (multiply,
    then transform back); the real-space convolution integral exists only as
    a test oracle."""
    if not b > 0.0:
        raise ValueError(f"convolution width must be positive, got {b}")
    phi = exact_transform(f)
    damped = GaussPoly(phi.a + 0.5 / (b * b), phi.coeffs, dim=f.dim)
    return exact_transform(damped)


class NonnegResult(NamedTuple):
    ok: bool
    witness: Optional[float]  # an r with f(r) < 0, when ok is False


def is_nonneg(f: GaussPoly) -> NonnegResult:
    """Decide f >= 0 on [0, inf).

    The Gaussian factor is positive, so only Q(t) >= 0 for t >= 0 matters:
    isolate the real roots of Q via companion-matrix eigenvalues, then sign-
    sample Q at t = 0, between consecutive roots, and beyond the last one.
    Boundary ties within eps = 1e-12 * max|p_k| count as nonnegative.
    """
    p = f._p
    scale = float(np.max(np.abs(p)))
    if scale == 0.0:
        return NonnegResult(True, None)
    eps = 1e-12 * scale
    # Coefficients below eps are treated as zero for the tail behavior.
    deg = len(p) - 1
    while deg > 0 and abs(p[deg]) <= eps:
        deg -= 1
    q = p[: deg + 1]
    if q[0] < -eps:
        return NonnegResult(False, 0.0)
    if deg == 0:
        return NonnegResult(True, None)
    roots = np.roots(q[::-1])
    real = roots[np.abs(roots.imag) <= 1e-8 * (1.0 + np.abs(roots))].real
    pos = np.sort(real[real > 0.0])
    # Sign samples: midpoints of the intervals cut by the positive roots,
    # then one point past the last root (where the leading term dominates).
    edges = np.concatenate(([0.0], pos))
    samples = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        samples.append(0.5 * (lo + hi))
    samples.append(2.0 * edges[-1] + 1.0)
    tvals = np.asarray(samples)
    vals = np.polynomial.polynomial.polyval(tvals, q)
    bad = vals < -eps
    if bad.any():
        t_bad = float(tvals[np.argmax(bad)])
        return NonnegResult(False, math.sqrt(t_bad))
    if q[deg] < -eps:
        # Negative leading coefficient: walk outward until the sign shows.
        t = 2.0 * edges[-1] + 1.0
        for _ in range(200):
            t *= 2.0
            if np.polynomial.polynomial.polyval(t, q) < -eps:
                return NonnegResult(False, math.sqrt(t))
        return NonnegResult(False, math.sqrt(t))
    return NonnegResult(True, None)


def inner(f: GaussPoly, g: GaussPoly) -> float:
    """Closed-form inner product under the dimension's measure: the even
    extension line integral (dim 1) or int_0^inf x dx (dim 2)."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    prod = np.convolve(f._p, g._p)
    c = f.a + g.a
    if f.dim == 1:
        return float(
            sum(prod[k] * math.gamma(k + 0.5) / c ** (k + 0.5) for k in range(len(prod)))
        )
    return float(sum(prod[k] * math.factorial(k) / (2.0 * c ** (k + 1)) for k in range(len(prod))))


def norm_sq(f: GaussPoly) -> float:
    return inner(f, f)
