"""Dense matrices of Toeplitz and creation operators on truncated Hardy spaces.

H^2_N(C^m) is the space of analytic polynomials of degree at most N with values in C^m;
its basis z^k e_i is ordered degree-major (k outer, i inner). These bases are orthonormal
in L^2 of the circle, so the adjoint of an operator is the conjugate transpose of its
matrix.

A creation operator maps H^2_N into H^2_{N + deg xi} without truncation, which makes
C*C the exact compression of the infinite-dimensional C*C to H^2_N.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg

from . import settings
from .exceptions import CapabilityError, DimensionError, DomainError, PreconditionError
from .hardy import (
    MatSymbol,
    VecTrigPoly,
    inner_deviation,
    l2_norm,
    orthonormality_deviation,
    pointwise_inner,
    pointwise_wedge,
    random_series,
    rank_one_symbol,
    riesz_project,
    scalar_multiply,
)
from .wedge_core import wedge, wedge_dimension

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpaceDescriptor:
    """H^2_degree with values in a space of dimension ``valdim``.

    ``grade`` is a label: 1 for E itself, p for the p-th exterior power of E (whose
    ``valdim`` is then C(d, p)).
    """

    valdim: int
    degree: int
    grade: int = 1

    def __post_init__(self):
        if self.valdim < 1 or self.degree < 0:
            raise DimensionError(f"invalid space: valdim={self.valdim}, degree={self.degree}")

    @property
    def dimension(self) -> int:
        return self.valdim * (self.degree + 1)

    def index(self, k: int, i: int) -> int:
        return k * self.valdim + i

    def labels(self) -> list[tuple[int, int]]:
        return [(k, i) for k in range(self.degree + 1) for i in range(self.valdim)]

    def up_to(self, degree: int) -> slice:
        """Positions of the basis vectors of degree at most ``degree``."""
        return slice(0, self.valdim * (degree + 1))

    def element(self, vector) -> VecTrigPoly:
        return VecTrigPoly.from_vector(vector, self.valdim)

    def coordinates(self, f: VecTrigPoly) -> np.ndarray:
        if f.valdim != self.valdim:
            raise DimensionError(f"series has valdim {f.valdim}, space has {self.valdim}")
        return f.to_vector(self.degree)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    domain: SpaceDescriptor
    codomain: SpaceDescriptor
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        expected = (self.codomain.dimension, self.domain.dimension)
        if entries.shape != expected:
            raise DimensionError(f"operator entries have shape {entries.shape}, expected {expected}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, space: SpaceDescriptor) -> OperatorMatrix:
        return cls(space, space, np.eye(space.dimension))

    def adjoint(self) -> OperatorMatrix:
        return OperatorMatrix(self.codomain, self.domain, self.entries.conj().T)

    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix:
        if other.codomain != self.domain:
            raise DimensionError(f"cannot compose {self.domain} with {other.codomain}")
        return OperatorMatrix(other.domain, self.codomain, self.entries @ other.entries)

    def _check_same_spaces(self, other: OperatorMatrix) -> None:
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise DimensionError("operators act between different spaces")

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check_same_spaces(other)
        return OperatorMatrix(self.domain, self.codomain, self.entries + other.entries)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check_same_spaces(other)
        return OperatorMatrix(self.domain, self.codomain, self.entries - other.entries)

    def __mul__(self, scalar) -> OperatorMatrix:
        return OperatorMatrix(self.domain, self.codomain, scalar * self.entries)

    __rmul__ = __mul__

    def apply(self, f: VecTrigPoly) -> VecTrigPoly:
        return self.codomain.element(self.entries @ self.domain.coordinates(f))

    def norm(self) -> float:
        """Operator norm, the largest singular value."""
        if self.entries.size == 0:
            return 0.0
        return float(linalg.svdvals(self.entries)[0])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries))) if self.entries.size else 0.0

    def restrict_domain(self, degree: int) -> OperatorMatrix:
        """The operator on the subspace of inputs of degree at most ``degree``."""
        domain = SpaceDescriptor(self.domain.valdim, degree, self.domain.grade)
        return OperatorMatrix(domain, self.codomain, self.entries[:, self.domain.up_to(degree)])

    def nullspace(self, rtol: float = settings.NULLSPACE_RTOL) -> SubspaceBasis:
        vectors = linalg.null_space(self.entries, rcond=rtol)
        LOGGER.debug("nullspace of a %s matrix has dimension %d", self.entries.shape, vectors.shape[1])
        return SubspaceBasis(self.domain, vectors)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal columns spanning a subspace of ``space``."""

    space: SpaceDescriptor
    vectors: np.ndarray
    degenerate: bool = False

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def elements(self) -> list[VecTrigPoly]:
        return [self.space.element(column) for column in self.vectors.T]

    def project(self, f: VecTrigPoly) -> VecTrigPoly:
        coords = self.space.coordinates(f)
        return self.space.element(self.vectors @ (self.vectors.conj().T @ coords))

    def residual(self, f: VecTrigPoly) -> float:
        """Distance from f to the subspace."""
        return l2_norm(f - self.project(f))

    def random_element(self, rng: np.random.Generator) -> VecTrigPoly:
        weights = rng.standard_normal(self.dimension) + 1j * rng.standard_normal(self.dimension)
        return self.space.element(self.vectors @ weights)


def full_space(space: SpaceDescriptor, degenerate: bool = True) -> SubspaceBasis:
    return SubspaceBasis(space, np.eye(space.dimension, dtype=complex), degenerate)


# ---------------------------------------------------------------------------
# Toeplitz and creation operators
# ---------------------------------------------------------------------------

def _check_symbol_degree(xis: Sequence[VecTrigPoly]) -> None:
    top = max(xi.kmax for xi in xis)
    if top > settings.MAX_SYMBOL_DEGREE:
        raise CapabilityError(
            f"symbol degree {top} exceeds the limit {settings.MAX_SYMBOL_DEGREE}"
        )


def toeplitz(symbol: MatSymbol, degree: int) -> OperatorMatrix:
    """T_G h = P_+(G h) compressed to H^2_degree; block (r, c) is G_{r-c}."""
    domain = SpaceDescriptor(symbol.cols, degree)
    codomain = SpaceDescriptor(symbol.rows, degree)
    blocks = [[symbol.coefficient(r - c) for c in range(degree + 1)] for r in range(degree + 1)]
    return OperatorMatrix(domain, codomain, np.block(blocks))


def multi_creation(xis: Sequence[VecTrigPoly], degree: int) -> OperatorMatrix:
    """The matrix of f -> xi_0 ^ ... ^ xi_j ^ f from H^2_degree into the exact range space."""
    xis = list(xis)
    if not xis:
        raise DimensionError("need at least one symbol")
    if not all(xi.is_analytic for xi in xis):
        raise DomainError("creation symbols must be analytic")
    _check_symbol_degree(xis)
    dim = xis[0].valdim
    grade = len(xis) + 1
    if grade > dim:
        raise DimensionError(f"the grade {grade} exterior power of C^{dim} is trivial")
    top = sum(xi.kmax for xi in xis)
    domain = SpaceDescriptor(dim, degree)
    codomain = SpaceDescriptor(wedge_dimension(dim, grade), degree + top, grade)
    entries = np.zeros((codomain.dimension, domain.dimension), dtype=complex)
    for i in range(dim):
        image = pointwise_wedge(xis + [VecTrigPoly.constant(np.eye(dim)[i])])
        block = image.restrict(0, top).coeffs.reshape(-1)
        for k in range(degree + 1):
            start = codomain.index(k, 0)
            entries[start : start + block.size, domain.index(k, i)] = block
    LOGGER.debug("creation matrix %s for %d symbol(s)", entries.shape, len(xis))
    return OperatorMatrix(domain, codomain, entries)


def creation(xi: VecTrigPoly, degree: int) -> OperatorMatrix:
    """C_xi f = xi ^ f from H^2_degree(E) to H^2_{degree + deg xi}(wedge^2 E)."""
    return multi_creation([xi], degree)


def verify_toeplitz_identity(xi: VecTrigPoly, degree: int, tol: float = settings.DET_TOL) -> float:
    """max |C*C - (I - T_{xi xi*})| over the compression to H^2_degree."""
    deviation = inner_deviation(xi)
    if not xi.is_analytic or deviation > tol:
        raise PreconditionError(f"symbol is not inner (deviation {deviation:.3e})", deviation)
    c = creation(xi, degree)
    t = toeplitz(rank_one_symbol(xi, xi), degree)
    return ((c.adjoint() @ c) - (OperatorMatrix.identity(c.domain) - t)).max_abs()


def adjoint_on_wedge(
    xi: VecTrigPoly, f: VecTrigPoly, g: VecTrigPoly, degree: int | None = None
) -> VecTrigPoly:
    """C_xi*(f ^ g) = P_+ alpha with alpha = <f, xi> g - <g, xi> f.

    With ``degree`` the result is compressed to H^2_degree, which is what the adjoint of
    ``creation(xi, degree)`` computes; f ^ g must then lie in its range space.
    """
    if not (xi.is_analytic and f.is_analytic and g.is_analytic):
        raise DomainError("symbol and both factors must be analytic")
    alpha = scalar_multiply(pointwise_inner(f, xi), g) - scalar_multiply(pointwise_inner(g, xi), f)
    projected = riesz_project(alpha)
    if degree is None:
        return projected
    if f.kmax + g.kmax > degree + xi.kmax:
        raise DimensionError(
            f"f ^ g has degree {f.kmax + g.kmax}, beyond the range degree {degree + xi.kmax}"
        )
    return projected.truncate(degree).restrict(0, degree)


# ---------------------------------------------------------------------------
# Pointwise orthogonal complements and kernels
# ---------------------------------------------------------------------------

def pointwise_inner_matrix(xis: Sequence[VecTrigPoly], degree: int) -> np.ndarray:
    """The map h -> stacked coefficients of z -> <h(z), xi_i(z)>, on H^2_degree."""
    space = SpaceDescriptor(xis[0].valdim, degree)
    blocks = []
    for xi in xis:
        lo, hi = -xi.kmax, degree - xi.kmin
        columns = [
            pointwise_inner(VecTrigPoly.monomial(k, np.eye(space.valdim)[i]), xi).restrict(lo, hi).coeffs[:, 0]
            for k, i in space.labels()
        ]
        blocks.append(np.column_stack(columns))
    return np.vstack(blocks)


def poc_basis(
    xis: Sequence[VecTrigPoly], degree: int, tol: float = settings.NULLSPACE_RTOL, dim: int | None = None
) -> SubspaceBasis:
    """Orthonormal basis of the h in H^2_degree with <h(z), xi_i(z)> = 0 on the circle.

    An empty family, or one that is identically zero, leaves the whole space; the result
    is then flagged degenerate. ``dim`` is only needed for an empty family.
    """
    xis = list(xis)
    if not xis:
        if dim is None:
            raise DimensionError("an empty family needs an explicit dim")
        return full_space(SpaceDescriptor(dim, degree))
    if not all(xi.is_analytic for xi in xis):
        raise DomainError("symbols must be analytic")
    _check_symbol_degree(xis)
    space = SpaceDescriptor(xis[0].valdim, degree)
    if all(xi.is_zero for xi in xis):
        LOGGER.debug("pointwise orthogonal complement of the zero family")
        return full_space(space)
    matrix = pointwise_inner_matrix(xis, degree)
    vectors = linalg.null_space(matrix, rcond=tol)
    LOGGER.debug("pointwise orthogonal complement in H^2_%d has dimension %d", degree, vectors.shape[1])
    return SubspaceBasis(space, vectors)


@dataclass(frozen=True, eq=False)
class KernelReport:
    """A basis of ker C_xi and how far each member is from pointwise parallel to xi.

    The deviations are max ||xi(z) ^ h(z)|| over sampled z, separately on the circle and
    inside the disc.
    """

    basis: SubspaceBasis
    circle_deviation: float
    disc_deviation: float

    @property
    def dimension(self) -> int:
        return self.basis.dimension


def _sample_points(rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray]:
    theta = rng.uniform(0, 2 * np.pi, count)
    radius = np.sqrt(rng.uniform(0, 1, count)) * (1 - 1e-9)
    return np.exp(1j * theta), radius * np.exp(1j * rng.uniform(0, 2 * np.pi, count))


def _parallel_deviation(xi: VecTrigPoly, hs: Sequence[VecTrigPoly], points) -> float:
    worst = 0.0
    for h in hs:
        for z in points:
            worst = max(worst, wedge([xi.eval(z), h.eval(z)]).norm())
    return worst


def kernel_creation(
    xi: VecTrigPoly,
    degree: int,
    tol: float = settings.NULLSPACE_RTOL,
    rng: np.random.Generator | None = None,
) -> KernelReport:
    rng = np.random.default_rng(settings.DEFAULT_SEED) if rng is None else rng
    if xi.is_zero:
        basis = full_space(SpaceDescriptor(xi.valdim, degree))
    else:
        basis = creation(xi, degree).nullspace(tol)
    circle, disc = _sample_points(rng, settings.PLS_SAMPLES)
    members = basis.elements()
    return KernelReport(
        basis=basis,
        circle_deviation=_parallel_deviation(xi, members, circle),
        disc_deviation=_parallel_deviation(xi, members, disc),
    )


# ---------------------------------------------------------------------------
# Isometry checks
# ---------------------------------------------------------------------------

@dataclass
class IsometryReport:
    """Outcome of comparing ||W h|| with ||h|| on sampled inputs.

    ``equality_deviation`` is the worst | ||W h|| - ||h|| | over inputs in the pointwise
    orthogonal complement, ``min_margin`` the smallest ||h|| - ||W h|| over the others,
    ``contraction_excess`` the worst ||W h|| - ||h|| over all inputs and
    ``residual_deviation`` the worst error in
    ||h||^2 - ||W h||^2 = sum_i ||<h, xi_i>||^2.
    """

    poc_dimension: int
    trials: int = 0
    misclassified: int = 0
    equality_deviation: float = 0.0
    min_margin: float = math.inf
    contraction_excess: float = -math.inf
    residual_deviation: float = 0.0
    details: list = field(default_factory=list)

    def record(self, in_poc: bool, isometric: bool, norm_h: float, norm_wh: float) -> None:
        self.trials += 1
        if in_poc != isometric:
            self.misclassified += 1
        if in_poc:
            self.equality_deviation = max(self.equality_deviation, abs(norm_wh - norm_h))
        else:
            self.min_margin = min(self.min_margin, norm_h - norm_wh)
        self.contraction_excess = max(self.contraction_excess, norm_wh - norm_h)
        self.details.append({"in_poc": in_poc, "isometric": isometric, "norm": norm_h, "image_norm": norm_wh})


def _run_isometry_trials(
    xis: list[VecTrigPoly], degree: int, trials: int, rng: np.random.Generator, tol: float
) -> IsometryReport:
    operator = multi_creation(xis, degree)
    poc = poc_basis(xis, degree)
    report = IsometryReport(poc_dimension=poc.dimension)
    for trial in range(trials):
        if trial % 2 == 0 and poc.dimension:
            h = poc.random_element(rng)
        else:
            h = random_series(xis[0].valdim, 0, degree, rng)
        norm_h = l2_norm(h)
        norm_wh = l2_norm(operator.apply(h))
        in_poc = poc.residual(h) <= tol * max(1.0, norm_h)
        isometric = abs(norm_wh - norm_h) <= tol * max(1.0, norm_h)
        report.record(in_poc, isometric, norm_h, norm_wh)
        deficit = norm_h**2 - norm_wh**2
        expected = sum(l2_norm(pointwise_inner(h, xi)) ** 2 for xi in xis)
        report.residual_deviation = max(report.residual_deviation, abs(deficit - expected))
    return report


def isometry_set_check(
    xi: VecTrigPoly,
    degree: int,
    trials: int,
    rng: np.random.Generator | None = None,
    tol: float = settings.DET_TOL,
) -> IsometryReport:
    """||C_xi h|| = ||h|| exactly on the pointwise orthogonal complement of an inner xi."""
    deviation = inner_deviation(xi)
    if not xi.is_analytic or deviation > tol:
        raise PreconditionError(f"symbol is not inner (deviation {deviation:.3e})", deviation)
    rng = np.random.default_rng(settings.DEFAULT_SEED) if rng is None else rng
    return _run_isometry_trials([xi], degree, trials, rng, tol)


def multiwedge_isometry_check(
    xis: Sequence[VecTrigPoly],
    degree: int,
    trials: int,
    rng: np.random.Generator | None = None,
    tol: float = settings.DET_TOL,
) -> IsometryReport:
    """f -> xi_0 ^ ... ^ xi_j ^ f is isometric on the complement and contracts elsewhere."""
    xis = list(xis)
    deviation = orthonormality_deviation(xis)
    if not all(xi.is_analytic for xi in xis) or deviation > tol:
        raise PreconditionError(f"family is not pointwise orthonormal (deviation {deviation:.3e})", deviation)
    rng = np.random.default_rng(settings.DEFAULT_SEED) if rng is None else rng
    return _run_isometry_trials(xis, degree, trials, rng, tol)


# ---------------------------------------------------------------------------
# The shift example: C*C for xi = (1, z)/sqrt2 is not a projection
# ---------------------------------------------------------------------------

def shift_matrix(degree: int) -> np.ndarray:
    """S on scalar H^2_degree, z^k -> z^{k+1}, with z^degree sent out of the space."""
    return np.eye(degree + 1, k=-1)


def p0_matrix(degree: int) -> np.ndarray:
    """P_0, the projection onto the constants."""
    p0 = np.zeros((degree + 1, degree + 1))
    p0[0, 0] = 1.0
    return p0


def block_operator(blocks) -> np.ndarray:
    """A 2 x 2 block operator on H^2_N(C) + H^2_N(C) in the degree-major basis of H^2_N(C^2)."""
    out = 0
    for i, row in enumerate(blocks):
        for j, block in enumerate(row):
            unit = np.zeros((2, 2))
            unit[i, j] = 1.0
            out = out + np.kron(block, unit)
    return out


def shift_example_symbol() -> VecTrigPoly:
    """xi(z) = (1, z)/sqrt2."""
    return VecTrigPoly.from_components([1], [0, 1]) / math.sqrt(2.0)


@dataclass(frozen=True)
class ShiftReport:
    """Deviations of A = C*C from the two shift-operator formulas, on degree < N inputs.

    ``defect_norm`` is ||A^2 - A|| there; it is 1/4, so A is not a projection.
    """

    degree: int
    a_deviation: float
    a_squared_deviation: float
    defect_deviation: float
    defect_norm: float
    hermitian_deviation: float
    min_eigenvalue: float
    max_eigenvalue: float


def partial_isometry_counterexample(degree: int) -> ShiftReport:
    if degree < 2:
        raise DimensionError(f"the shift example needs degree >= 2, got {degree}")
    c = creation(shift_example_symbol(), degree)
    a = (c.adjoint() @ c).entries
    s, p0, one = shift_matrix(degree), p0_matrix(degree), np.eye(degree + 1)
    zero = np.zeros_like(one)
    expected_a = block_operator([[one, -s.T], [-s, one]]) / 2
    expected_a2 = block_operator([[one, -s.T], [-s, one - p0 / 2]]) / 2
    expected_defect = block_operator([[zero, zero], [zero, -p0 / 2]]) / 2
    kept = c.domain.up_to(degree - 1)
    defect = a @ a - a
    eigenvalues = linalg.eigvalsh(a)
    return ShiftReport(
        degree=degree,
        a_deviation=float(np.max(np.abs(a[:, kept] - expected_a[:, kept]))),
        a_squared_deviation=float(np.max(np.abs((a @ a)[:, kept] - expected_a2[:, kept]))),
        defect_deviation=float(np.max(np.abs(defect[:, kept] - expected_defect[:, kept]))),
        defect_norm=float(linalg.svdvals(defect[:, kept])[0]),
        hermitian_deviation=float(np.max(np.abs(a - a.conj().T))),
        min_eigenvalue=float(eigenvalues[0]),
        max_eigenvalue=float(eigenvalues[-1]),
    )
