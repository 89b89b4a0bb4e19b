"""Vector-valued trigonometric polynomials on the circle and their analytic part.

Every function here has finitely many nonzero Fourier coefficients, so statements that hold
almost everywhere on the circle become exact identities between coefficient arrays. A
series with ``kmin >= 0`` is an element of the Hardy space H^2 and may also be evaluated
inside the disc. On the circle z**k with k < 0 means conj(z)**|k|.

Products, wedges and symbols extend the degree range additively and never truncate;
``VecTrigPoly.truncate`` is the only operation that drops coefficients.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import unitary_group

from . import settings
from .exceptions import CapabilityError, DimensionError, DomainError, PreconditionError
from .wedge_core import _index_table, wedge_dimension

LOGGER = logging.getLogger(__name__)


def _convolve(a: np.ndarray, b: np.ndarray, product=np.multiply) -> np.ndarray:
    """Schoolbook convolution along axis 0: out[i + j] += product(a[i], b[j])."""
    first = product(a[0], b[0])
    out = np.zeros((len(a) + len(b) - 1,) + np.shape(first), dtype=complex)
    for i, row in enumerate(a):
        for j, col in enumerate(b):
            out[i + j] += product(row, col)
    return out


def _on_circle(z: complex) -> bool:
    return abs(abs(z) - 1.0) <= settings.UNIT_CIRCLE_TOL


@dataclass(frozen=True, eq=False)
class VecTrigPoly:
    """f(z) = sum_{k=kmin}^{kmax} c_k z^k with c_k in C^m.

    ``coeffs`` has shape (kmax - kmin + 1, m); row r holds c_{kmin + r}.
    """

    kmin: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.ndim == 1:
            coeffs = coeffs.reshape(-1, 1)
        if coeffs.ndim != 2 or coeffs.shape[0] == 0:
            raise DimensionError(f"coefficients must be a nonempty (n, m) array, got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise PreconditionError("series coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "kmin", int(self.kmin))
        object.__setattr__(self, "coeffs", coeffs)

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, valdim: int, kmin: int = 0, kmax: int | None = None) -> VecTrigPoly:
        kmax = kmin if kmax is None else kmax
        return cls(kmin, np.zeros((kmax - kmin + 1, valdim), dtype=complex))

    @classmethod
    def constant(cls, vector) -> VecTrigPoly:
        return cls(0, np.asarray(vector, dtype=complex).reshape(1, -1))

    @classmethod
    def monomial(cls, k: int, vector) -> VecTrigPoly:
        """z^k * vector."""
        return cls(k, np.asarray(vector, dtype=complex).reshape(1, -1))

    @classmethod
    def from_components(cls, *components: Sequence, kmin: int = 0) -> VecTrigPoly:
        """Build from scalar coefficient lists, one per component, all starting at kmin.

        ``VecTrigPoly.from_components([1], [0, 1])`` is z -> (1, z).
        """
        length = max(len(c) for c in components)
        coeffs = np.zeros((length, len(components)), dtype=complex)
        for j, component in enumerate(components):
            coeffs[: len(component), j] = component
        return cls(kmin, coeffs)

    # -- shape ---------------------------------------------------------------

    @property
    def valdim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def kmax(self) -> int:
        return self.kmin + self.coeffs.shape[0] - 1

    @property
    def degrees(self) -> np.ndarray:
        return np.arange(self.kmin, self.kmax + 1)

    @property
    def bandwidth(self) -> int:
        return self.kmax - self.kmin + 1

    @property
    def is_analytic(self) -> bool:
        return self.kmin >= 0

    @property
    def is_trivial(self) -> bool:
        """Values lie in the zero space: value dimension 0, as for a wedge of more than d factors."""
        return self.valdim == 0

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def coefficient(self, k: int) -> np.ndarray:
        if self.kmin <= k <= self.kmax:
            return self.coeffs[k - self.kmin].copy()
        return np.zeros(self.valdim, dtype=complex)

    def restrict(self, kmin: int, kmax: int) -> VecTrigPoly:
        """The same coefficients on the range [kmin, kmax], zero padded or cropped."""
        out = np.zeros((kmax - kmin + 1, self.valdim), dtype=complex)
        lo, hi = max(kmin, self.kmin), min(kmax, self.kmax)
        if lo <= hi:
            out[lo - kmin : hi - kmin + 1] = self.coeffs[lo - self.kmin : hi - self.kmin + 1]
        return VecTrigPoly(kmin, out)

    def truncate(self, degree: int) -> VecTrigPoly:
        """Drop every coefficient above ``degree``."""
        return self.restrict(min(self.kmin, degree), degree)

    def trimmed(self) -> VecTrigPoly:
        """Drop zero coefficients at both ends of the support."""
        nonzero = np.flatnonzero(np.any(self.coeffs != 0, axis=1))
        if len(nonzero) == 0:
            return VecTrigPoly.zeros(self.valdim)
        return VecTrigPoly(self.kmin + nonzero[0], self.coeffs[nonzero[0] : nonzero[-1] + 1])

    # -- arithmetic ----------------------------------------------------------

    def _check_valdim(self, other: VecTrigPoly) -> None:
        if self.valdim != other.valdim:
            raise DimensionError(f"value dimensions differ: {self.valdim} vs {other.valdim}")

    def __add__(self, other: VecTrigPoly) -> VecTrigPoly:
        self._check_valdim(other)
        kmin, kmax = min(self.kmin, other.kmin), max(self.kmax, other.kmax)
        return VecTrigPoly(kmin, self.restrict(kmin, kmax).coeffs + other.restrict(kmin, kmax).coeffs)

    def __sub__(self, other: VecTrigPoly) -> VecTrigPoly:
        return self + (-other)

    def __mul__(self, scalar) -> VecTrigPoly:
        return VecTrigPoly(self.kmin, scalar * self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> VecTrigPoly:
        return VecTrigPoly(self.kmin, self.coeffs / scalar)

    def __neg__(self) -> VecTrigPoly:
        return VecTrigPoly(self.kmin, -self.coeffs)

    def shift(self, k: int) -> VecTrigPoly:
        """z^k f."""
        return VecTrigPoly(self.kmin + k, self.coeffs)

    def conj(self) -> VecTrigPoly:
        """The pointwise conjugate z -> conj(f(z)) on the circle."""
        return VecTrigPoly(-self.kmax, self.coeffs[::-1].conj())

    def allclose(self, other: VecTrigPoly, atol: float = settings.EXACT_TOL) -> bool:
        return max_deviation(self, other) <= atol

    # -- values ----------------------------------------------------------------

    def eval(self, z: complex) -> np.ndarray:
        z = complex(z)
        if abs(z) > 1.0 + settings.UNIT_CIRCLE_TOL:
            raise DomainError(f"|z| = {abs(z):.6g} lies outside the closed disc")
        if not _on_circle(z) and not self.is_analytic:
            raise DomainError("a series with negative frequencies is only defined on the circle")
        return np.power(z, self.degrees) @ self.coeffs

    def sample(self, count: int) -> np.ndarray:
        """Values at the ``count`` points exp(2 pi i n / count), shape (count, m)."""
        theta = 2 * np.pi * np.arange(count) / count
        return np.exp(1j * np.outer(theta, self.degrees)) @ self.coeffs

    # -- coefficient spaces --------------------------------------------------

    def to_vector(self, degree: int) -> np.ndarray:
        """Coefficients of an element of H^2_degree, degree-major then component."""
        if not self.is_analytic:
            raise DomainError("only analytic series have coordinates in H^2_N")
        if self.kmax > degree and np.any(self.coeffs[max(degree - self.kmin + 1, 0) :]):
            raise DimensionError(f"series has degree {self.kmax} > {degree}")
        return self.restrict(0, degree).coeffs.reshape(-1)

    @classmethod
    def from_vector(cls, vector, valdim: int) -> VecTrigPoly:
        vector = np.asarray(vector, dtype=complex)
        return cls(0, vector.reshape(-1, valdim))

    def __repr__(self):
        return f"VecTrigPoly(valdim={self.valdim}, kmin={self.kmin}, kmax={self.kmax})"


def max_deviation(f: VecTrigPoly, g: VecTrigPoly) -> float:
    """Largest coefficient difference over the union of the two supports."""
    f._check_valdim(g)
    kmin, kmax = min(f.kmin, g.kmin), max(f.kmax, g.kmax)
    diff = f.restrict(kmin, kmax).coeffs - g.restrict(kmin, kmax).coeffs
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def l2_inner(f: VecTrigPoly, g: VecTrigPoly) -> complex:
    """(1/2pi) int <f, g> dtheta, computed as sum_k <c_k(f), c_k(g)>."""
    f._check_valdim(g)
    lo, hi = max(f.kmin, g.kmin), min(f.kmax, g.kmax)
    if lo > hi:
        return 0j
    a = f.coeffs[lo - f.kmin : hi - f.kmin + 1]
    b = g.coeffs[lo - g.kmin : hi - g.kmin + 1]
    return complex(np.vdot(b, a))


def l2_norm(f: VecTrigPoly) -> float:
    return float(np.linalg.norm(f.coeffs))


def riesz_project(f: VecTrigPoly) -> VecTrigPoly:
    """Keep the coefficients of nonnegative frequency."""
    if f.kmax < 0:
        return VecTrigPoly.zeros(f.valdim)
    return f.restrict(max(f.kmin, 0), f.kmax)


def pointwise_inner(f: VecTrigPoly, g: VecTrigPoly) -> VecTrigPoly:
    """The scalar series z -> <f(z), g(z)> on the circle."""
    f._check_valdim(g)
    gbar = g.conj()
    product = _convolve(f.coeffs, gbar.coeffs, lambda a, b: np.sum(a * b))
    return VecTrigPoly(f.kmin + gbar.kmin, product.reshape(-1, 1))


def scalar_multiply(s: VecTrigPoly, f: VecTrigPoly) -> VecTrigPoly:
    """z -> s(z) f(z) for a scalar series s."""
    if s.valdim != 1:
        raise DimensionError(f"expected a scalar series, got valdim {s.valdim}")
    return VecTrigPoly(s.kmin + f.kmin, _convolve(s.coeffs[:, 0], f.coeffs))


def pointwise_wedge(fs: Sequence[VecTrigPoly]) -> VecTrigPoly:
    """z -> f_0(z) ^ ... ^ f_{q-1}(z) as a series with values in the q-th exterior power.

    Coefficient k is the sum of wedge(c_{k_0}(f_0), ..., c_{k_{q-1}}(f_{q-1})) over
    k_0 + ... + k_{q-1} = k. When q exceeds d the exterior power is {0} and the result is
    the zero series of value dimension 0, reported by ``is_trivial``.
    """
    fs = list(fs)
    if not fs:
        raise DimensionError("need at least one factor")
    dim = fs[0].valdim
    for f in fs[1:]:
        fs[0]._check_valdim(f)
    grade = len(fs)
    kmin = sum(f.kmin for f in fs)
    kmax = sum(f.kmax for f in fs)
    out = np.zeros((kmax - kmin + 1, wedge_dimension(dim, grade)), dtype=complex)
    if grade > dim:
        LOGGER.debug("wedge of %d factors over C^%d is identically zero", grade, dim)
        return VecTrigPoly(kmin, out)
    grids = np.meshgrid(*(np.arange(f.bandwidth) for f in fs), indexing="ij")
    combos = np.stack([g.reshape(-1) for g in grids], axis=1)
    # columns[n] is the d x q matrix of the coefficient vectors picked by combo n
    columns = np.stack([f.coeffs[combos[:, i]] for i, f in enumerate(fs)], axis=2)
    minors = np.linalg.det(columns[:, _index_table(dim, grade), :])
    np.add.at(out, combos.sum(axis=1), minors)
    return VecTrigPoly(kmin, out)


def pointwise_linearly_dependent(fs: Sequence[VecTrigPoly], tol: float = settings.DET_TOL) -> bool:
    """Whether f_0(z), ..., f_{n-1}(z) are linearly dependent for almost every z on the circle.

    The minors of the wedge are trigonometric polynomials, so they vanish almost everywhere
    exactly when every coefficient of ``pointwise_wedge(fs)`` is zero. For analytic series
    the same test decides dependence at every point of the disc. ``tol`` is relative to the
    product of the L^2 norms.
    """
    product = pointwise_wedge(fs)
    if product.is_trivial:
        return True
    scale = math.prod(l2_norm(f) for f in fs)
    return float(np.max(np.abs(product.coeffs))) <= tol * max(scale, 1.0)


def derivative(f: VecTrigPoly) -> VecTrigPoly:
    """f' for analytic f: coefficient k of the result is (k + 1) c_{k+1}."""
    if not f.is_analytic:
        raise DomainError("only analytic series can be differentiated")
    if f.kmax == 0:
        return VecTrigPoly.zeros(f.valdim)
    full = f.restrict(0, f.kmax).coeffs
    scaled = full[1:] * np.arange(1, f.kmax + 1)[:, None]
    return VecTrigPoly(0, scaled).restrict(max(f.kmin - 1, 0), f.kmax - 1)


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------

def minimum_samples(f: VecTrigPoly) -> int:
    return settings.SAMPLE_FACTOR * f.bandwidth


def lp_norm(f: VecTrigPoly, p, samples: int | None = None) -> float:
    """The L^p(T) norm for p in {1, 2, inf}.

    p = 2 is exact by Parseval. p = 1 is the mean and p = inf the maximum of ||f|| over
    ``samples`` uniform points; ``samples`` defaults to, and must be at least,
    SAMPLE_FACTOR * (kmax - kmin + 1). The sampled maximum undershoots the true sup norm
    by at most the factor returned by ``sup_norm_bound``; the sampled mean of ||f|| is a
    periodic trapezoid rule and converges faster than any power of ``samples``.
    """
    if p == 2:
        return l2_norm(f)
    if p not in (1, math.inf):
        raise CapabilityError(f"L^p norms are implemented for p in (1, 2, inf), got {p!r}")
    needed = minimum_samples(f)
    samples = needed if samples is None else samples
    if samples < needed:
        raise PreconditionError(f"{samples} samples is below the minimum {needed}", needed - samples)
    norms = np.linalg.norm(f.sample(samples), axis=1)
    return float(norms.mean() if p == 1 else norms.max())


def sup_norm_bound(f: VecTrigPoly, samples: int | None = None) -> float:
    """Upper bound for the true sup norm from the sampled one (Bernstein's inequality)."""
    samples = minimum_samples(f) if samples is None else samples
    sampled = lp_norm(f, math.inf, samples)
    width = f.kmax - f.kmin
    return sampled / (1.0 - math.pi * width / samples)


# ---------------------------------------------------------------------------
# Inner functions and pointwise orthonormal families
# ---------------------------------------------------------------------------

def _delta_deviation(series: VecTrigPoly, value: float) -> float:
    """max_k |s_k - value * [k == 0]| for a scalar series."""
    target = VecTrigPoly.constant([value])
    return max_deviation(series, target)


def inner_deviation(xi: VecTrigPoly) -> float:
    """How far the autocorrelation z -> ||xi(z)||^2 is from the constant 1."""
    return _delta_deviation(pointwise_inner(xi, xi), 1.0)


def is_inner(xi: VecTrigPoly, tol: float = settings.DET_TOL) -> bool:
    """Whether xi is analytic with ||xi(z)|| = 1 on the circle, decided on coefficients."""
    return xi.is_analytic and inner_deviation(xi) <= tol


def orthonormality_deviation(xis: Sequence[VecTrigPoly]) -> float:
    """max over pairs of the distance of z -> <xi_i(z), xi_j(z)> from delta_ij."""
    worst = 0.0
    for i, xi in enumerate(xis):
        for j, other in enumerate(xis[i:], start=i):
            worst = max(worst, _delta_deviation(pointwise_inner(xi, other), float(i == j)))
    return worst


def is_pointwise_orthonormal(xis: Sequence[VecTrigPoly], tol: float = settings.DET_TOL) -> bool:
    return all(xi.is_analytic for xi in xis) and orthonormality_deviation(xis) <= tol


def random_series(valdim: int, kmin: int, kmax: int, rng: np.random.Generator) -> VecTrigPoly:
    shape = (kmax - kmin + 1, valdim)
    return VecTrigPoly(kmin, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_inner(dim: int, degree: int, rng: np.random.Generator) -> VecTrigPoly:
    """xi(z) = sum_i c_i z^{k_i} u_i with orthonormal u_i and sum |c_i|^2 = 1."""
    basis = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.eye(1, dtype=complex)
    count = int(rng.integers(1, dim + 1))
    weights = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    weights /= np.linalg.norm(weights)
    shifts = rng.integers(0, degree + 1, size=count)
    xi = VecTrigPoly.zeros(dim)
    for weight, shift, column in zip(weights, shifts, basis.T):
        xi = xi + VecTrigPoly.monomial(int(shift), weight * column)
    return xi.trimmed()


def monomial_family(
    dim: int, count: int, rng: np.random.Generator, max_shift: int = 2
) -> list[VecTrigPoly]:
    """xi_i(z) = z^{k_i} u_i with u_i the first ``count`` columns of a random unitary."""
    if count > dim:
        raise DimensionError(f"cannot fit {count} orthonormal vectors in C^{dim}")
    basis = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.eye(1, dtype=complex)
    shifts = rng.integers(0, max_shift + 1, size=count)
    return [VecTrigPoly.monomial(int(k), basis[:, i]) for i, k in enumerate(shifts)]


def block_family() -> list[VecTrigPoly]:
    """xi_0 = (1, z, 0, 0)/sqrt2 and xi_1 = (0, 0, 1, z)/sqrt2 in C^4."""
    root = math.sqrt(2.0)
    return [
        VecTrigPoly.from_components([1], [0, 1], [], []) / root,
        VecTrigPoly.from_components([], [], [1], [0, 1]) / root,
    ]


# ---------------------------------------------------------------------------
# Matrix symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatSymbol:
    """G(z) = sum_k G_k z^k with G_k in C^{rows x cols}; ``coeffs`` has shape (n, rows, cols)."""

    kmin: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.ndim != 3 or coeffs.shape[0] == 0:
            raise DimensionError(f"symbol coefficients must be (n, rows, cols), got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise PreconditionError("symbol coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "kmin", int(self.kmin))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def constant(cls, matrix) -> MatSymbol:
        return cls(0, np.asarray(matrix, dtype=complex)[None])

    @classmethod
    def identity(cls, dim: int) -> MatSymbol:
        return cls.constant(np.eye(dim))

    @property
    def rows(self) -> int:
        return self.coeffs.shape[1]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[2]

    @property
    def kmax(self) -> int:
        return self.kmin + self.coeffs.shape[0] - 1

    def coefficient(self, k: int) -> np.ndarray:
        if self.kmin <= k <= self.kmax:
            return self.coeffs[k - self.kmin].copy()
        return np.zeros((self.rows, self.cols), dtype=complex)

    def restrict(self, kmin: int, kmax: int) -> MatSymbol:
        return MatSymbol(kmin, np.stack([self.coefficient(k) for k in range(kmin, kmax + 1)]))

    def eval(self, z: complex) -> np.ndarray:
        z = complex(z)
        if not _on_circle(z) and self.kmin < 0:
            raise DomainError("a symbol with negative frequencies is only defined on the circle")
        powers = np.power(z, np.arange(self.kmin, self.kmax + 1))
        return np.tensordot(powers, self.coeffs, axes=1)

    def apply(self, f: VecTrigPoly) -> VecTrigPoly:
        """The product z -> G(z) f(z)."""
        if f.valdim != self.cols:
            raise DimensionError(f"symbol has {self.cols} columns, series has valdim {f.valdim}")
        return VecTrigPoly(self.kmin + f.kmin, _convolve(self.coeffs, f.coeffs, np.matmul))

    def adjoint(self) -> MatSymbol:
        """G*: its coefficient k is (G_{-k})^H."""
        return MatSymbol(-self.kmax, np.conj(np.transpose(self.coeffs[::-1], (0, 2, 1))))

    def __add__(self, other: MatSymbol) -> MatSymbol:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("symbols of different shapes")
        kmin, kmax = min(self.kmin, other.kmin), max(self.kmax, other.kmax)
        return MatSymbol(kmin, self.restrict(kmin, kmax).coeffs + other.restrict(kmin, kmax).coeffs)

    def __neg__(self) -> MatSymbol:
        return MatSymbol(self.kmin, -self.coeffs)

    def __sub__(self, other: MatSymbol) -> MatSymbol:
        return self + (-other)

    def __mul__(self, scalar) -> MatSymbol:
        return MatSymbol(self.kmin, scalar * self.coeffs)

    __rmul__ = __mul__

    def __repr__(self):
        return f"MatSymbol({self.rows}x{self.cols}, kmin={self.kmin}, kmax={self.kmax})"


def rank_one_symbol(xi: VecTrigPoly, eta: VecTrigPoly) -> MatSymbol:
    """The symbol (xi eta*)(z) x = <x, eta(z)> xi(z); G_k = sum_j xi_j (eta_{j-k})^H."""
    xi._check_valdim(eta)
    etabar = eta.conj()
    return MatSymbol(xi.kmin + etabar.kmin, _convolve(xi.coeffs, etabar.coeffs, np.outer))
