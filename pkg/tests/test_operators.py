import math
import time

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wedgeops import settings
from wedgeops.exceptions import CapabilityError, DimensionError, DomainError, PreconditionError
from wedgeops.hardy import (
    MatSymbol,
    VecTrigPoly,
    l2_norm,
    max_deviation,
    monomial_family,
    pointwise_inner,
    pointwise_linearly_dependent,
    pointwise_wedge,
    random_inner,
    riesz_project,
)
from wedgeops.operators import (
    OperatorMatrix,
    SpaceDescriptor,
    SubspaceBasis,
    adjoint_on_wedge,
    block_operator,
    creation,
    isometry_set_check,
    kernel_creation,
    multi_creation,
    multiwedge_isometry_check,
    p0_matrix,
    partial_isometry_counterexample,
    poc_basis,
    shift_matrix,
    toeplitz,
    verify_toeplitz_identity,
)

from .factories import AnalyticSeriesFactory, SeriesFactory, SymbolFactory, gaussian


class TestSpaces:

    def test_degree_major_layout(self):
        space = SpaceDescriptor(3, 2)
        assert space.dimension == 9
        assert space.index(1, 2) == 5
        assert space.labels()[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
        assert space.up_to(0) == slice(0, 3)

    def test_invalid_space(self):
        with pytest.raises(DimensionError):
            SpaceDescriptor(0, 2)
        with pytest.raises(DimensionError):
            SpaceDescriptor(2, -1)

    def test_coordinates_check_valdim(self):
        with pytest.raises(DimensionError):
            SpaceDescriptor(2, 3).coordinates(VecTrigPoly.constant([1, 2, 3]))

    def test_operator_shape_is_checked(self):
        space = SpaceDescriptor(2, 1)
        with pytest.raises(DimensionError):
            OperatorMatrix(space, space, np.eye(3))

    def test_composition_checks_spaces(self):
        a = OperatorMatrix.identity(SpaceDescriptor(2, 1))
        b = OperatorMatrix.identity(SpaceDescriptor(2, 2))
        with pytest.raises(DimensionError):
            a @ b
        with pytest.raises(DimensionError):
            a + b

    def test_subspace_projection(self, rng):
        space = SpaceDescriptor(2, 2)
        q, _ = np.linalg.qr(gaussian((space.dimension, 3)))
        basis = SubspaceBasis(space, q)
        f = AnalyticSeriesFactory(valdim=2, length=3)
        projected = basis.project(f)
        assert basis.residual(projected) < 1e-12
        assert max_deviation(basis.project(projected), projected) < 1e-12
        assert basis.residual(basis.random_element(rng)) < 1e-10


class TestToeplitz:

    def test_compresses_the_product(self):
        g = SymbolFactory(rows=2, cols=3)
        h = AnalyticSeriesFactory(valdim=3, length=3)
        expected = riesz_project(g.apply(h)).truncate(4).restrict(0, 4)
        assert max_deviation(toeplitz(g, 4).apply(h), expected) < 1e-12

    def test_linear_in_symbol(self):
        g, other = SymbolFactory(rows=2, cols=2), SymbolFactory(rows=2, cols=2)
        combined = toeplitz(g + other * 3, 3)
        assert (combined - toeplitz(g, 3) - toeplitz(other, 3) * 3).max_abs() < 1e-12

    def test_constant_symbol_is_block_diagonal(self):
        matrix = gaussian((2, 3))
        assert_allclose(toeplitz(MatSymbol.constant(matrix), 3).entries, np.kron(np.eye(4), matrix))

    def test_adjoint_symbol_gives_adjoint_operator(self):
        g = SymbolFactory(rows=2, cols=2)
        assert_allclose(toeplitz(g.adjoint(), 3).entries, toeplitz(g, 3).adjoint().entries, atol=1e-12)


class TestCreation:

    def test_matrix_matches_pointwise_wedge(self):
        xi = AnalyticSeriesFactory(valdim=3, length=2)
        h = AnalyticSeriesFactory(valdim=3, length=3)
        c = creation(xi, 2)
        assert max_deviation(c.apply(h), pointwise_wedge([xi, h])) < 1e-12

    def test_adjoint_consistency(self):
        xi = AnalyticSeriesFactory(valdim=3, length=3)
        c = creation(xi, 4)
        h, w = gaussian(c.domain.dimension), gaussian(c.codomain.dimension)
        assert abs(np.vdot(w, c.entries @ h) - np.vdot(c.adjoint().entries @ w, h)) < 1e-12 * max(
            1.0, np.linalg.norm(h) * np.linalg.norm(w) * c.norm()
        )

    def test_needs_two_dimensions(self):
        with pytest.raises(DimensionError):
            creation(VecTrigPoly.constant([1]), 2)

    def test_needs_analytic_symbol(self):
        with pytest.raises(DomainError):
            creation(VecTrigPoly.monomial(-1, [1, 0]), 2)

    def test_input_beyond_domain_degree(self, shift_xi):
        with pytest.raises(DimensionError):
            creation(shift_xi, 2).apply(VecTrigPoly(5, [[1, 0], [0, 0], [0, 0]]))

    def test_symbol_degree_is_capped(self):
        xi = VecTrigPoly.monomial(settings.MAX_SYMBOL_DEGREE + 1, [1, 0])
        with pytest.raises(CapabilityError):
            creation(xi, 2)
        with pytest.raises(CapabilityError):
            poc_basis([xi], 2)

    def test_inner_symbol_gives_a_contraction(self, shift_xi):
        assert creation(shift_xi, 5).norm() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize('degree', [0, 1, 4, 8])
    def test_toeplitz_identity_for_shift_symbol(self, shift_xi, degree):
        assert verify_toeplitz_identity(shift_xi, degree) < 1e-12

    def test_toeplitz_identity_sweep(self, rng):
        start = time.perf_counter()
        worst = 0.0
        for _ in range(20):
            dim, degree = int(rng.integers(2, 5)), int(rng.integers(0, 13))
            xi = random_inner(dim, int(rng.integers(0, 4)), rng)
            worst = max(worst, verify_toeplitz_identity(xi, degree))
        assert worst <= 1e-12
        assert time.perf_counter() - start < 10

    def test_toeplitz_identity_needs_inner_symbol(self, shift_xi):
        with pytest.raises(PreconditionError) as excinfo:
            verify_toeplitz_identity(shift_xi * 2, 3)
        assert excinfo.value.deviation == pytest.approx(3.0)

    def test_multi_creation_grade(self, c4_family):
        operator = multi_creation(c4_family, 2)
        assert operator.codomain.grade == 3
        assert operator.codomain.valdim == 4
        with pytest.raises(DimensionError):
            multi_creation([VecTrigPoly.constant([1, 0])] * 2, 1)
        with pytest.raises(DimensionError):
            multi_creation([], 1)


class TestAdjointOnWedge:

    def test_constant_input(self, shift_xi):
        expected = VecTrigPoly.from_components([1], [1, -1]) / 2
        h = VecTrigPoly.constant([1, 1])
        assert max_deviation(adjoint_on_wedge(shift_xi, shift_xi, h), expected) < 1e-12
        c = creation(shift_xi, 2)
        assert max_deviation((c.adjoint() @ c).apply(h), expected) < 1e-12

    def test_image_is_not_pointwise_orthogonal(self, shift_xi):
        image = adjoint_on_wedge(shift_xi, shift_xi, VecTrigPoly.constant([1, 1]))
        pairing = pointwise_inner(image, shift_xi)
        expected = VecTrigPoly.monomial(-1, [1 / (2 * math.sqrt(2))])
        assert max_deviation(pairing, expected) < 1e-12

    def test_matches_adjoint_matrix(self):
        xi = AnalyticSeriesFactory(valdim=3, length=2)
        f, g = AnalyticSeriesFactory(valdim=3, length=2), AnalyticSeriesFactory(valdim=3, length=3)
        adjoint = creation(xi, 4).adjoint()
        via_matrix = adjoint.apply(pointwise_wedge([f, g]).restrict(0, adjoint.domain.degree))
        assert max_deviation(adjoint_on_wedge(xi, f, g, 4), via_matrix) < 1e-12

    def test_alternating(self):
        xi, f = AnalyticSeriesFactory(valdim=3), AnalyticSeriesFactory(valdim=3)
        assert l2_norm(adjoint_on_wedge(xi, f, f)) < 1e-12

    def test_degree_must_cover_the_wedge(self, shift_xi):
        f = VecTrigPoly.monomial(3, [1, 0])
        with pytest.raises(DimensionError):
            adjoint_on_wedge(shift_xi, f, f, 1)

    def test_needs_analytic_inputs(self, shift_xi):
        with pytest.raises(DomainError):
            adjoint_on_wedge(shift_xi, VecTrigPoly.monomial(-1, [1, 0]), shift_xi)


class TestPointwiseOrthogonalComplement:

    @pytest.mark.parametrize('degree', [0, 1, 4, 7])
    def test_dimension_for_shift_symbol(self, shift_xi, degree):
        poc = poc_basis([shift_xi], degree)
        assert poc.dimension == degree
        assert not poc.degenerate
        for h in poc.elements():
            for k in range(degree):
                assert h.coefficient(k + 1)[1] == pytest.approx(-h.coefficient(k)[0], abs=1e-10)

    def test_basis_is_orthonormal(self, shift_xi):
        vectors = poc_basis([shift_xi], 4).vectors
        assert_allclose(vectors.conj().T @ vectors, np.eye(4), atol=1e-12)

    def test_constant_symbol(self):
        poc = poc_basis([VecTrigPoly.constant([1, 0])], 0)
        assert poc.dimension == 1
        assert abs(poc.elements()[0].coefficient(0)[1]) == pytest.approx(1.0)

    def test_disc_counterexample(self, disc_pair):
        g, f = disc_pair
        assert poc_basis([g], 3).residual(f) < 1e-10
        assert abs(np.vdot(g.eval(0.5), f.eval(0.5))) == pytest.approx(0.375, abs=1e-12)

    def test_empty_and_zero_families_are_degenerate(self):
        empty = poc_basis([], 2, dim=3)
        assert empty.degenerate
        assert empty.dimension == 9
        zero = poc_basis([VecTrigPoly.zeros(2)], 2)
        assert zero.degenerate
        assert zero.dimension == 6
        with pytest.raises(DimensionError):
            poc_basis([], 2)

    def test_needs_analytic_symbols(self):
        with pytest.raises(DomainError):
            poc_basis([SeriesFactory(valdim=2, kmin=-2)], 2)

    def test_orthogonal_to_kernel(self):
        xi = AnalyticSeriesFactory(valdim=3, length=2)
        poc = poc_basis([xi], 4)
        kernel = kernel_creation(xi, 4).basis
        assert np.max(np.abs(poc.vectors.conj().T @ kernel.vectors)) < 1e-10


class TestKernel:

    def test_shift_symbol_kernel(self, shift_xi, rng):
        report = kernel_creation(shift_xi, 4, rng=rng)
        assert report.dimension == 4
        assert report.circle_deviation < 1e-10
        assert report.disc_deviation < 1e-10
        for h in report.basis.elements():
            for k in range(4):
                assert h.coefficient(k + 1)[1] == pytest.approx(h.coefficient(k)[0], abs=1e-10)

    def test_random_symbol_members_are_parallel(self, rng):
        xi = AnalyticSeriesFactory(valdim=3, length=2)
        report = kernel_creation(xi, 3, rng=rng)
        assert report.dimension >= 1
        assert report.circle_deviation < 1e-8
        assert report.disc_deviation < 1e-8

    def test_members_are_pointwise_dependent_on_symbol(self, shift_xi, rng):
        members = kernel_creation(shift_xi, 4, rng=rng).basis.elements()
        assert all(pointwise_linearly_dependent([shift_xi, h]) for h in members)
        outside = poc_basis([shift_xi], 4).elements()
        assert not any(pointwise_linearly_dependent([shift_xi, h]) for h in outside)

    def test_zero_symbol_kernel_is_everything(self):
        report = kernel_creation(VecTrigPoly.zeros(2), 2)
        assert report.basis.degenerate
        assert report.dimension == 6
        assert report.circle_deviation == 0.0


class TestIsometry:

    def test_dichotomy_for_shift_symbol(self, shift_xi, rng):
        report = isometry_set_check(shift_xi, 5, 100, rng)
        assert report.trials == 100
        assert report.misclassified == 0
        assert report.equality_deviation < 1e-10
        assert report.min_margin > 0
        assert report.contraction_excess < 1e-10
        assert report.residual_deviation < 1e-10

    def test_needs_inner_symbol(self, rng):
        with pytest.raises(PreconditionError):
            isometry_set_check(VecTrigPoly.from_components([1], [0, 1]), 3, 4, rng)

    def test_block_family(self, c4_family, rng):
        report = multiwedge_isometry_check(c4_family, 4, 100, rng)
        assert report.poc_dimension > 0
        assert report.misclassified == 0
        assert report.equality_deviation < 1e-10
        assert report.contraction_excess < 1e-10

    def test_monomial_family(self, rng):
        report = multiwedge_isometry_check(monomial_family(3, 2, rng), 3, 20, rng)
        assert report.misclassified == 0
        assert report.residual_deviation < 1e-10

    def test_needs_orthonormal_family(self, shift_xi, rng):
        with pytest.raises(PreconditionError):
            multiwedge_isometry_check([shift_xi, shift_xi], 2, 4, rng)


class TestShiftExample:

    def test_shift_and_p0(self):
        s = shift_matrix(3)
        assert_allclose(s @ s.T + p0_matrix(3), np.eye(4))
        assert_allclose(s.T @ s, np.diag([1, 1, 1, 0]))

    def test_block_operator_layout(self):
        one, zero = np.eye(2), np.zeros((2, 2))
        swap = block_operator([[zero, one], [one, zero]])
        assert_allclose(swap @ [1, 2, 3, 4], [2, 1, 4, 3])

    @pytest.mark.parametrize('degree', [2, 3, 6, 10])
    def test_not_a_projection(self, degree):
        report = partial_isometry_counterexample(degree)
        assert report.a_deviation < 1e-12
        assert report.a_squared_deviation < 1e-12
        assert report.defect_deviation < 1e-12
        assert report.defect_norm == pytest.approx(0.25, abs=1e-12)
        assert report.hermitian_deviation < 1e-12
        assert report.min_eigenvalue > -1e-12
        assert report.max_eigenvalue < 1 + 1e-12

    def test_defect_on_second_constant(self, shift_xi):
        c = creation(shift_xi, 3)
        a = (c.adjoint() @ c).entries
        h = c.domain.coordinates(VecTrigPoly.constant([0, 1]))
        defect = c.domain.element((a @ a - a) @ h)
        assert max_deviation(defect, VecTrigPoly.constant([0, -0.25])) < 1e-12

    def test_needs_degree_two(self):
        with pytest.raises(DimensionError):
            partial_isometry_counterexample(1)
