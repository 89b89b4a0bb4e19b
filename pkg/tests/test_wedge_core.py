import math

import numpy as np
import pytest
from hypothesis import given, seed, settings as hypothesis_settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose
from scipy import linalg

from wedgeops import settings
from wedgeops.exceptions import CapabilityError, DimensionError, PreconditionError
from wedgeops.wedge_core import (
    FullTensor,
    MultiIndex,
    Permutation,
    WedgeVector,
    all_permutations,
    antisymmetrize,
    antisymmetrizer_matrix,
    gram_inner,
    hadamard_bounds,
    hadamard_check,
    inner,
    lambda_bound_check,
    leibniz_inner,
    multi_indices,
    permute,
    residual_norm_check,
    symmetrize,
    tensor_inner,
    wedge,
    wedge_dimension,
)

from .factories import FullTensorFactory, gaussian

bounded = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def unit_vectors(rng, dim, count):
    xs = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return list(xs / np.linalg.norm(xs, axis=1, keepdims=True))


class TestPermutation:

    def test_identity_is_even(self):
        assert Permutation.identity(4).signature == 1

    def test_transposition_is_odd(self):
        assert Permutation.transposition(4, 1, 3).signature == -1

    def test_rejects_non_bijection(self):
        with pytest.raises(DimensionError):
            Permutation((0, 0, 2))

    def test_symmetric_group_has_p_factorial_elements(self):
        group = list(all_permutations(4))
        assert len(group) == 24
        assert sum(sigma.signature for sigma in group) == 0

    def test_inverse_composes_to_identity(self):
        sigma = Permutation((2, 0, 3, 1))
        assert sigma.compose(sigma.inverse()) == Permutation.identity(4)
        assert sigma.inverse().compose(sigma) == Permutation.identity(4)

    def test_compose_acts_second_argument_first(self):
        u = FullTensorFactory(dim=2, grade=3)
        a, b = Permutation((1, 2, 0)), Permutation((1, 0, 2))
        assert_allclose(permute(a.compose(b), u).entries, permute(a, permute(b, u)).entries)

    def test_signature_is_multiplicative(self):
        for a in all_permutations(3):
            for b in all_permutations(3):
                assert a.compose(b).signature == a.signature * b.signature

    def test_permute_swaps_tensor_factors(self):
        x, y = np.array([1, 2j]), np.array([3, -1])
        swapped = permute(Permutation((1, 0)), FullTensor.elementary([x, y]))
        assert_allclose(swapped.entries, FullTensor.elementary([y, x]).entries)

    def test_permute_is_unitary(self):
        u, v = FullTensorFactory(dim=3, grade=3), FullTensorFactory(dim=3, grade=3)
        sigma = Permutation((2, 0, 1))
        assert abs(tensor_inner(permute(sigma, u), v) - tensor_inner(u, permute(sigma.inverse(), v))) < 1e-12
        assert abs(permute(sigma, u).norm() - u.norm()) < 1e-12

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            permute(Permutation.identity(2), FullTensorFactory(dim=2, grade=3))


class TestFullTensor:

    def test_inner_product_is_p_factorial_scaled(self):
        x, y, u, v = (gaussian(3) for _ in range(4))
        lhs = tensor_inner(FullTensor.elementary([x, y]), FullTensor.elementary([u, v]))
        assert abs(lhs - 2 * inner(x, u) * inner(y, v)) < 1e-12

    def test_grade_limit(self):
        with pytest.raises(CapabilityError):
            FullTensor.zeros(2, settings.MAX_GRADE + 1)

    def test_entry_limit(self):
        with pytest.raises(CapabilityError):
            FullTensor.zeros(40, 4)

    def test_shapes_must_match(self):
        with pytest.raises(DimensionError):
            FullTensorFactory(dim=2, grade=2) + FullTensorFactory(dim=3, grade=2)

    def test_rejects_non_finite_entries(self):
        with pytest.raises(PreconditionError):
            FullTensor(np.array([1.0, np.nan]))

    def test_arithmetic(self):
        u = FullTensorFactory(dim=2, grade=2)
        assert_allclose((u + u - 2 * u).entries, 0)
        assert_allclose((-u).entries, -u.entries)


class TestAntisymmetrizer:

    def setup_method(self):
        self.u = FullTensorFactory(dim=3, grade=3)
        self.v = FullTensorFactory(dim=3, grade=3)

    def test_idempotent(self):
        pu = antisymmetrize(self.u)
        assert (antisymmetrize(pu) - pu).norm() < 1e-12

    def test_self_adjoint(self):
        lhs = tensor_inner(antisymmetrize(self.u), self.v)
        rhs = tensor_inner(self.u, antisymmetrize(self.v))
        assert abs(lhs - rhs) < 1e-12

    def test_output_is_alternating(self):
        pu = antisymmetrize(self.u)
        for sigma in all_permutations(3):
            assert (permute(sigma, pu) * sigma.signature - pu).norm() < 1e-12

    def test_orthogonal_to_symmetric_tensors(self):
        assert abs(tensor_inner(symmetrize(self.u), antisymmetrize(self.v))) < 1e-12
        assert (symmetrize(symmetrize(self.u)) - symmetrize(self.u)).norm() < 1e-12

    def test_grade_one_is_identity(self):
        u = FullTensorFactory(dim=3, grade=1)
        assert_allclose(antisymmetrize(u).entries, u.entries)

    @pytest.mark.parametrize('dim,grade', [(3, 2), (4, 2), (3, 3), (4, 3), (2, 3)])
    def test_matrix_rank_is_binomial(self, dim, grade):
        singular = linalg.svdvals(antisymmetrizer_matrix(dim, grade))
        assert int(np.sum(singular > 1e-8)) == wedge_dimension(dim, grade)

    def test_matrix_matches_projection(self):
        matrix = antisymmetrizer_matrix(3, 3)
        assert_allclose(matrix @ self.u.entries.reshape(-1), antisymmetrize(self.u).entries.reshape(-1), atol=1e-12)

    def test_matrix_size_limit(self):
        with pytest.raises(CapabilityError):
            antisymmetrizer_matrix(6, 4)


class TestWedge:

    def test_standard_basis(self):
        e = np.eye(3)
        assert_allclose(wedge([e[0], e[1]]).coords, [1, 0, 0])
        assert_allclose(wedge([e[1], e[2]]).coords, [0, 0, 1])

    def test_multi_indices_are_lexicographic(self):
        labels = [str(index) for index in multi_indices(4, 2)]
        assert labels == ['e0^e1', 'e0^e2', 'e0^e3', 'e1^e2', 'e1^e3', 'e2^e3']

    def test_multi_index_must_increase(self):
        with pytest.raises(DimensionError):
            MultiIndex(4, (2, 1))
        with pytest.raises(DimensionError):
            MultiIndex(2, (0, 2))

    def test_swap_negates(self):
        x, y, w = gaussian(4), gaussian(4), gaussian(4)
        assert_allclose(wedge([y, x, w]).coords, -wedge([x, y, w]).coords, atol=1e-12)

    def test_repeated_factor_vanishes(self):
        x, y = gaussian(3), gaussian(3)
        assert wedge([x, y, x]).norm() < 1e-12

    def test_grade_above_dim_is_zero(self):
        w = wedge([gaussian(2) for _ in range(3)])
        assert w.coords.shape == (0,)
        assert w.is_zero
        assert w.norm() == 0.0
        assert gram_inner([gaussian(2) for _ in range(3)], [gaussian(2) for _ in range(3)]) == pytest.approx(0, abs=1e-10)

    def test_two_vector_norm(self):
        x, y = gaussian(3), gaussian(3)
        expected = np.linalg.norm(x) ** 2 * np.linalg.norm(y) ** 2 - abs(inner(x, y)) ** 2
        assert wedge([x, y]).norm() ** 2 == pytest.approx(expected, rel=1e-10)

    def test_coordinate_count_is_checked(self):
        with pytest.raises(DimensionError):
            WedgeVector(4, 2, np.zeros(5))

    def test_mixed_lengths_rejected(self):
        with pytest.raises(DimensionError):
            wedge([np.ones(2), np.ones(3)])

    def test_tensor_embedding_matches_antisymmetrizer(self):
        xs = [gaussian(3) for _ in range(2)]
        w = wedge(xs)
        projected = antisymmetrize(FullTensor.elementary(xs))
        assert (w.to_tensor() - projected).norm() < 1e-12
        assert_allclose(WedgeVector.from_tensor(projected).coords, w.coords, atol=1e-12)
        assert projected.norm() == pytest.approx(w.norm(), rel=1e-12)

    def test_inner_routes_agree(self):
        xs, ys = [gaussian(4) for _ in range(3)], [gaussian(4) for _ in range(3)]
        value = gram_inner(xs, ys)
        assert leibniz_inner(xs, ys) == pytest.approx(value, rel=1e-10)
        assert wedge(xs).inner(wedge(ys)) == pytest.approx(value, rel=1e-10)

    def test_gram_grades_must_match(self):
        with pytest.raises(DimensionError):
            gram_inner([gaussian(3)], [gaussian(3), gaussian(3)])

    @seed(7)
    @hypothesis_settings(deadline=None, max_examples=50)
    @given(
        xs=arrays(np.float64, (3, 2), elements=bounded),
        ys=arrays(np.float64, (3, 2), elements=bounded),
    )
    def test_gram_determinant_equals_minor_sum(self, xs, ys):
        value = gram_inner(list(xs.T), list(ys.T))
        minors = wedge(list(xs.T)).inner(wedge(list(ys.T)))
        assert abs(value - minors) <= 1e-9 * max(1.0, abs(value))

    @seed(11)
    @hypothesis_settings(deadline=None, max_examples=50)
    @given(xs=arrays(np.float64, (3, 3), elements=bounded))
    def test_gram_determinant_is_nonnegative(self, xs):
        value = gram_inner(list(xs.T), list(xs.T))
        scale = max(1.0, float(np.prod(np.linalg.norm(xs, axis=0) ** 2)))
        assert abs(value.imag) <= 1e-9 * scale
        assert value.real >= -1e-9 * scale

    def test_inner_routes_agree_on_many_instances(self, rng):
        for _ in range(200):
            dim, grade = int(rng.integers(1, 6)), int(rng.integers(1, 5))
            xs, ys = unit_vectors(rng, dim, grade), unit_vectors(rng, dim, grade)
            value = gram_inner(xs, ys)
            via_tensors = tensor_inner(
                antisymmetrize(FullTensor.elementary(xs)), antisymmetrize(FullTensor.elementary(ys))
            )
            assert abs(leibniz_inner(xs, ys) - value) <= 1e-10
            assert abs(via_tensors - value) <= 1e-10


class TestInequalities:

    def test_residual_norm_identity(self, rng):
        q, _ = linalg.qr(rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2)), mode='economic')
        lhs, rhs = residual_norm_check(list(q.T), gaussian(4))
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_residual_norm_identity_on_many_instances(self, rng):
        for _ in range(200):
            dim = int(rng.integers(1, 7))
            count = int(rng.integers(1, min(dim, 4) + 1))
            raw = rng.standard_normal((dim, count)) + 1j * rng.standard_normal((dim, count))
            q, _ = linalg.qr(raw, mode='economic')
            lhs, rhs = residual_norm_check(list(q.T), rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
            assert abs(lhs - rhs) <= 1e-10

    def test_residual_norm_without_vectors(self):
        x = np.array([3.0, 4.0])
        assert residual_norm_check([], x) == (5.0, 5.0)

    def test_residual_norm_needs_orthonormal_vectors(self):
        with pytest.raises(PreconditionError) as excinfo:
            residual_norm_check([np.array([1.0, 0.0]), np.array([1.0, 1.0])], np.array([0.0, 1.0]))
        assert excinfo.value.deviation > 0

    def test_hadamard_on_random_matrices(self):
        for _ in range(10):
            assert hadamard_check(gaussian((4, 4)))

    def test_hadamard_on_many_matrices(self, rng):
        violations = sum(
            not hadamard_check(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
            for _ in range(1000)
        )
        assert violations == 0

    def test_hadamard_equality_for_orthogonal_columns(self):
        bounds = hadamard_bounds(np.diag([2.0, 3.0, -1.0]))
        assert bounds.determinant == pytest.approx(6.0)
        assert bounds.column_bound == pytest.approx(6.0)
        assert bounds.row_bound == pytest.approx(6.0)

    def test_hadamard_needs_square_matrix(self):
        with pytest.raises(DimensionError):
            hadamard_bounds(np.ones((2, 3)))

    def test_unit_exponent_bound_fails_for_large_vectors(self):
        bound = lambda_bound_check([np.array([10.0, 0.0]), np.array([0.0, 10.0])])
        assert bound.lhs == pytest.approx(1e4)
        assert bound.printed == pytest.approx(100 * math.sqrt(200))
        assert bound.lhs > bound.printed
        assert not bound.in_unit_ball
        assert bound.lhs <= bound.hadamard * (1 + 1e-12)
        assert bound.corrected == pytest.approx(2e4)

    def test_unit_exponent_bound_holds_in_unit_ball(self):
        bound = lambda_bound_check([np.array([0.5, 0.0]), np.array([0.0, 0.5])])
        assert bound.in_unit_ball
        assert bound.lhs == pytest.approx(0.0625)
        assert bound.lhs <= bound.printed

    def test_corrected_bound_on_random_vectors(self):
        for _ in range(10):
            bound = lambda_bound_check([gaussian(4) for _ in range(3)])
            assert bound.lhs <= bound.hadamard * (1 + 1e-12)
            assert bound.lhs <= bound.corrected * (1 + 1e-12)

    def test_lambda_bounds_on_many_tuples(self, rng):
        violations = 0
        for trial in range(200):
            dim, grade = int(rng.integers(1, 6)), int(rng.integers(1, 5))
            xs = rng.standard_normal((grade, dim)) + 1j * rng.standard_normal((grade, dim))
            # every other tuple is scaled into the unit ball of E^p
            xs *= rng.uniform(0.1, 1.0) / np.linalg.norm(xs) if trial % 2 else rng.uniform(0.5, 20.0)
            bound = lambda_bound_check(list(xs))
            slack = 1 + 1e-12
            violations += bound.lhs > bound.hadamard * slack or bound.lhs > bound.corrected * slack
            violations += bound.in_unit_ball and bound.lhs > bound.printed * slack
        assert violations == 0
