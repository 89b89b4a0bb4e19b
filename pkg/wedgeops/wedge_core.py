"""Exterior powers of E = C^d.

Tensors of grade p carry the p!-scaled inner product

    <x_1 (x) ... (x) x_p, y_1 (x) ... (x) y_p> = p! <x_1, y_1> ... <x_p, y_p>,

under which the wedges e_I = e_{i_1} ^ ... ^ e_{i_p} of the standard basis, I strictly
increasing, are orthonormal. ``WedgeVector`` stores coordinates in that basis with the
multi-indices in lexicographic order; the coordinate of x_1 ^ ... ^ x_p at I is the p x p
minor of the column matrix [x_1 ... x_p] on rows I. Libraries that drop the p! factor
differ from these numbers by exactly p!.

``FullTensor`` is the dense d**p representation and only exists as an oracle for the
minor arithmetic; it refuses grades above ``settings.MAX_GRADE`` and more than
``settings.MAX_TENSOR_ENTRIES`` entries.

Indices are zero-based throughout.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, NamedTuple, Sequence

import numpy as np
from scipy import linalg

from . import settings
from .exceptions import CapabilityError, DimensionError, PreconditionError

LOGGER = logging.getLogger(__name__)


def inner(x, y) -> complex:
    """<x, y>_E, linear in x and conjugate-linear in y."""
    return complex(np.vdot(y, x))


def _as_columns(vectors, dim=None) -> np.ndarray:
    """Stack vectors as the columns of a d x p complex matrix."""
    if len(vectors) == 0:
        raise DimensionError("need at least one vector")
    columns = [np.asarray(v, dtype=complex) for v in vectors]
    lengths = {c.shape for c in columns}
    if len(lengths) != 1 or columns[0].ndim != 1:
        raise DimensionError(f"vectors must share one length, got shapes {sorted(lengths)}")
    if dim is not None and columns[0].shape[0] != dim:
        raise DimensionError(f"vectors have length {columns[0].shape[0]}, expected {dim}")
    return np.column_stack(columns)


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., p-1}.

    It acts on tensors by S(x_0 (x) ... (x) x_{p-1}) = x_{s(0)} (x) ... (x) x_{s(p-1)}.
    This is a right action, so ``a.compose(b)`` is defined as the permutation whose
    action is ``b`` first and then ``a``:

        permute(a.compose(b), u) == permute(a, permute(b, u))
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise DimensionError(f"{images} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, size: int) -> Permutation:
        return cls(tuple(range(size)))

    @classmethod
    def transposition(cls, size: int, i: int, j: int) -> Permutation:
        images = list(range(size))
        images[i], images[j] = images[j], images[i]
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    @property
    def signature(self) -> int:
        inversions = sum(
            1
            for a, b in itertools.combinations(range(self.size), 2)
            if self.images[a] > self.images[b]
        )
        return -1 if inversions % 2 else 1

    def __call__(self, k: int) -> int:
        return self.images[k]

    def inverse(self) -> Permutation:
        inverse = [0] * self.size
        for k, image in enumerate(self.images):
            inverse[image] = k
        return Permutation(tuple(inverse))

    def compose(self, other: Permutation) -> Permutation:
        if other.size != self.size:
            raise DimensionError(f"cannot compose sizes {self.size} and {other.size}")
        return Permutation(tuple(other.images[k] for k in self.images))

    def __str__(self):
        return "(" + " ".join(str(i) for i in self.images) + ")"


def all_permutations(size: int) -> Iterator[Permutation]:
    """Every element of the symmetric group on {0..size-1}."""
    for images in itertools.permutations(range(size)):
        yield Permutation(images)


# ---------------------------------------------------------------------------
# Dense tensors
# ---------------------------------------------------------------------------

def _check_capacity(dim: int, grade: int) -> None:
    if grade > settings.MAX_GRADE:
        raise CapabilityError(f"grade {grade} exceeds the limit {settings.MAX_GRADE}")
    if dim**grade > settings.MAX_TENSOR_ENTRIES:
        raise CapabilityError(
            f"{dim}**{grade} entries exceeds the limit {settings.MAX_TENSOR_ENTRIES}"
        )


@dataclass(frozen=True, eq=False)
class FullTensor:
    """An element of the p-fold tensor power of C^d, stored densely.

    ``entries`` has shape (d,) * p; entries[i_0, ..., i_{p-1}] is the coefficient of
    e_{i_0} (x) ... (x) e_{i_{p-1}}.
    """

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim == 0:
            raise DimensionError("a tensor needs grade at least 1")
        if len(set(entries.shape)) != 1:
            raise DimensionError(f"tensor axes must share one length, got {entries.shape}")
        _check_capacity(entries.shape[0], entries.ndim)
        if not np.all(np.isfinite(entries)):
            raise PreconditionError("tensor entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def grade(self) -> int:
        return self.entries.ndim

    @classmethod
    def zeros(cls, dim: int, grade: int) -> FullTensor:
        _check_capacity(dim, grade)
        return cls(np.zeros((dim,) * grade, dtype=complex))

    @classmethod
    def elementary(cls, vectors: Sequence) -> FullTensor:
        """x_0 (x) x_1 (x) ... (x) x_{p-1}."""
        columns = _as_columns(vectors)
        _check_capacity(columns.shape[0], columns.shape[1])
        return cls(reduce(np.multiply.outer, columns.T))

    def _check_compatible(self, other: FullTensor) -> None:
        if self.entries.shape != other.entries.shape:
            raise DimensionError(
                f"tensor shapes differ: {self.entries.shape} vs {other.entries.shape}"
            )

    def __add__(self, other: FullTensor) -> FullTensor:
        self._check_compatible(other)
        return FullTensor(self.entries + other.entries)

    def __sub__(self, other: FullTensor) -> FullTensor:
        self._check_compatible(other)
        return FullTensor(self.entries - other.entries)

    def __mul__(self, scalar) -> FullTensor:
        return FullTensor(scalar * self.entries)

    __rmul__ = __mul__

    def __neg__(self) -> FullTensor:
        return FullTensor(-self.entries)

    def norm(self) -> float:
        return math.sqrt(max(tensor_inner(self, self).real, 0.0))

    def __repr__(self):
        return f"FullTensor(dim={self.dim}, grade={self.grade})"


def tensor_inner(u: FullTensor, v: FullTensor) -> complex:
    """The p!-scaled inner product of two tensors of the same dim and grade."""
    u._check_compatible(v)
    return math.factorial(u.grade) * complex(np.vdot(v.entries, u.entries))


def permute(sigma: Permutation, u: FullTensor) -> FullTensor:
    if sigma.size != u.grade:
        raise DimensionError(f"permutation of size {sigma.size} on a grade {u.grade} tensor")
    return FullTensor(np.transpose(u.entries, sigma.images))


def _average_over_group(u: FullTensor, signed: bool) -> FullTensor:
    if u.grade > settings.MAX_GRADE:
        raise CapabilityError(f"grade {u.grade} exceeds the limit {settings.MAX_GRADE}")
    total = np.zeros_like(u.entries)
    for sigma in all_permutations(u.grade):
        weight = sigma.signature if signed else 1
        total += weight * np.transpose(u.entries, sigma.images)
    return FullTensor(total / math.factorial(u.grade))


def antisymmetrize(u: FullTensor) -> FullTensor:
    """Orthogonal projection onto the antisymmetric tensors, (1/p!) sum sgn(s) S_s u."""
    return _average_over_group(u, signed=True)


def symmetrize(u: FullTensor) -> FullTensor:
    """Orthogonal projection onto the symmetric tensors, (1/p!) sum S_s u."""
    return _average_over_group(u, signed=False)


def antisymmetrizer_matrix(dim: int, grade: int) -> np.ndarray:
    """Matrix of ``antisymmetrize`` on the row-major d**p basis (column c = image of e_c)."""
    _check_capacity(dim, grade)
    n = dim**grade
    if n * n > settings.MAX_TENSOR_ENTRIES:
        raise CapabilityError(f"a {n} x {n} antisymmetrizer matrix is too large")
    basis = np.eye(n, dtype=complex).reshape((dim,) * grade + (n,))
    total = np.zeros_like(basis)
    for sigma in all_permutations(grade):
        total += sigma.signature * np.transpose(basis, sigma.images + (grade,))
    return total.reshape(n, n) / math.factorial(grade)


# ---------------------------------------------------------------------------
# Wedge coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiIndex:
    """A strictly increasing tuple of basis labels, naming e_{i_0} ^ ... ^ e_{i_{p-1}}."""

    dim: int
    indices: tuple[int, ...]

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise DimensionError(f"multi-index {indices} is not strictly increasing")
        if indices and (indices[0] < 0 or indices[-1] >= self.dim):
            raise DimensionError(f"multi-index {indices} is out of range for dim {self.dim}")
        object.__setattr__(self, "indices", indices)

    @property
    def grade(self) -> int:
        return len(self.indices)

    def __str__(self):
        return "^".join(f"e{i}" for i in self.indices)


@lru_cache(maxsize=None)
def _index_table(dim: int, grade: int) -> np.ndarray:
    table = np.array(list(itertools.combinations(range(dim), grade)), dtype=int)
    return table.reshape(-1, grade)


def multi_indices(dim: int, grade: int) -> list[MultiIndex]:
    """All C(d, p) multi-indices in lexicographic order."""
    return [MultiIndex(dim, tuple(row)) for row in _index_table(dim, grade)]


def wedge_dimension(dim: int, grade: int) -> int:
    return math.comb(dim, grade)


@dataclass(frozen=True, eq=False)
class WedgeVector:
    """An element of the p-th exterior power of C^d in the multi-index basis."""

    dim: int
    grade: int
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=complex).reshape(-1)
        expected = wedge_dimension(self.dim, self.grade)
        if coords.shape[0] != expected:
            raise DimensionError(
                f"a grade {self.grade} wedge over C^{self.dim} has {expected} coordinates, "
                f"got {coords.shape[0]}"
            )
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def basis(self) -> list[MultiIndex]:
        return multi_indices(self.dim, self.grade)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coords)

    def inner(self, other: WedgeVector) -> complex:
        if (self.dim, self.grade) != (other.dim, other.grade):
            raise DimensionError("wedge vectors of different dim or grade")
        return complex(np.vdot(other.coords, self.coords))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def __neg__(self) -> WedgeVector:
        return WedgeVector(self.dim, self.grade, -self.coords)

    def to_tensor(self) -> FullTensor:
        """The antisymmetric tensor with these coordinates."""
        tensor = np.zeros((self.dim,) * self.grade, dtype=complex)
        scale = math.factorial(self.grade)
        for row, coord in zip(_index_table(self.dim, self.grade), self.coords):
            for sigma in all_permutations(self.grade):
                tensor[tuple(row[list(sigma.images)])] = sigma.signature * coord / scale
        return FullTensor(tensor)

    @classmethod
    def from_tensor(cls, u: FullTensor) -> WedgeVector:
        """Coordinates of an antisymmetric tensor; antisymmetrize general tensors first."""
        table = _index_table(u.dim, u.grade)
        coords = math.factorial(u.grade) * u.entries[tuple(table.T)] if len(table) else []
        return cls(u.dim, u.grade, coords)


def wedge(xs: Sequence) -> WedgeVector:
    """x_0 ^ ... ^ x_{p-1}; coordinates are the p x p minors of [x_0 ... x_{p-1}]."""
    columns = _as_columns(xs)
    dim, grade = columns.shape
    table = _index_table(dim, grade)
    if grade > dim:
        return WedgeVector(dim, grade, [])
    return WedgeVector(dim, grade, np.linalg.det(columns[table]))


def gram_matrix(xs: Sequence, ys: Sequence) -> np.ndarray:
    """The p x p matrix with (i, j) entry <x_i, y_j>."""
    x = _as_columns(xs)
    y = _as_columns(ys, dim=x.shape[0])
    if x.shape != y.shape:
        raise DimensionError(f"grades differ: {x.shape[1]} vs {y.shape[1]}")
    return x.T @ y.conj()


def gram_inner(xs: Sequence, ys: Sequence) -> complex:
    """<x_0 ^ ... ^ x_{p-1}, y_0 ^ ... ^ y_{p-1}> as the Gram determinant."""
    return complex(linalg.det(gram_matrix(xs, ys)))


def leibniz_inner(xs: Sequence, ys: Sequence) -> complex:
    """The Gram determinant by the permutation sum, sum sgn(s) prod <x_i, y_s(i)>."""
    gram = gram_matrix(xs, ys)
    grade = gram.shape[0]
    total = 0j
    for sigma in all_permutations(grade):
        total += sigma.signature * np.prod(gram[np.arange(grade), list(sigma.images)])
    return complex(total)


def residual_norm_check(us: Sequence, x, tol: float = settings.DET_TOL) -> tuple[float, float]:
    """Both sides of ||u_1 ^ ... ^ u_j ^ x|| = ||x - sum <x, u_i> u_i|| for orthonormal u.

    Returns ``(lhs, rhs)``.
    """
    x = np.asarray(x, dtype=complex)
    if len(us) == 0:
        norm = float(np.linalg.norm(x))
        return norm, norm
    u = _as_columns(us, dim=x.shape[0])
    deviation = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1]))))
    if deviation > tol:
        raise PreconditionError(
            f"vectors are not orthonormal (max Gram deviation {deviation:.3e})", deviation
        )
    lhs = wedge(list(u.T) + [x]).norm()
    rhs = float(np.linalg.norm(x - u @ (u.conj().T @ x)))
    return lhs, rhs


class HadamardBounds(NamedTuple):
    determinant: float
    column_bound: float
    row_bound: float


def hadamard_bounds(matrix) -> HadamardBounds:
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"Hadamard's inequality needs a square matrix, got {a.shape}")
    return HadamardBounds(
        determinant=float(abs(linalg.det(a))),
        column_bound=float(np.prod(np.linalg.norm(a, axis=0))),
        row_bound=float(np.prod(np.linalg.norm(a, axis=1))),
    )


def hadamard_check(matrix, slack: float = settings.EXACT_TOL) -> bool:
    """|det A| is at most the product of the column norms and of the row norms."""
    bounds = hadamard_bounds(matrix)
    return all(
        bounds.determinant <= bound + slack * max(1.0, bound)
        for bound in (bounds.column_bound, bounds.row_bound)
    )


class LambdaBound(NamedTuple):
    """Bounds on ||x_1 ^ ... ^ x_p||^2.

    ``hadamard`` is prod ||x_j||^2, ``corrected`` is prod ||x_j|| * (sum ||x_i||^2)^(p/2)
    and both hold everywhere. ``printed`` uses the exponent 1/2 instead of p/2; it only
    holds on the unit ball of E^p, which ``in_unit_ball`` reports.
    """

    lhs: float
    hadamard: float
    corrected: float
    printed: float
    in_unit_ball: bool


def lambda_bound_check(xs: Sequence) -> LambdaBound:
    columns = _as_columns(xs)
    norms = np.linalg.norm(columns, axis=0)
    grade = columns.shape[1]
    total = float(np.sum(norms**2))
    return LambdaBound(
        lhs=wedge(list(columns.T)).norm() ** 2,
        hadamard=float(np.prod(norms**2)),
        corrected=float(np.prod(norms)) * total ** (grade / 2),
        printed=float(np.prod(norms)) * math.sqrt(total),
        in_unit_ball=total <= 1.0,
    )
