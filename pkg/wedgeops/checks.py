"""Seeded verification checks: the property suite and the worked examples.

Every check is a function ``(config, rng) -> Outcome`` registered under a dotted
``check_id``. ``run_suite`` gives each check its own generator derived from the run seed
and the check's position in the sorted registry, so results do not depend on which other
checks ran or in which order.
"""
from __future__ import annotations

import json
import logging
import math
from typing import Callable, Literal, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import linalg

from . import settings
from .exceptions import WedgeOpsError
from .hardy import (
    MatSymbol,
    VecTrigPoly,
    block_family,
    derivative,
    is_inner,
    l2_inner,
    l2_norm,
    lp_norm,
    max_deviation,
    minimum_samples,
    monomial_family,
    pointwise_inner,
    pointwise_linearly_dependent,
    pointwise_wedge,
    random_inner,
    random_series,
    rank_one_symbol,
    riesz_project,
    scalar_multiply,
    sup_norm_bound,
)
from .operators import (
    adjoint_on_wedge,
    creation,
    isometry_set_check,
    kernel_creation,
    multiwedge_isometry_check,
    partial_isometry_counterexample,
    poc_basis,
    shift_example_symbol,
    toeplitz,
    verify_toeplitz_identity,
)
from .serializers import dump_series, load_series, read_series
from .wedge_core import (
    FullTensor,
    Permutation,
    antisymmetrize,
    antisymmetrizer_matrix,
    gram_inner,
    lambda_bound_check,
    leibniz_inner,
    hadamard_bounds,
    permute,
    residual_norm_check,
    symmetrize,
    tensor_inner,
    wedge,
    wedge_dimension,
)

LOGGER = logging.getLogger(__name__)


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: int = Field(default=3, ge=1)
    degree: int = Field(default=6, ge=0, le=settings.MAX_SYMBOL_DEGREE)
    grade: int = Field(default=3, ge=1)
    trials: int = Field(default=20, ge=1)
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0)
    tol: float | None = Field(default=None, gt=0)
    xi_files: list[str] = Field(default_factory=list)


class CheckResult(BaseModel):
    check_id: str
    status: Literal["pass", "fail", "degenerate"]
    measured: float | None
    tolerance: float
    details: str = ""
    seed: int

    @model_validator(mode="after")
    def status_matches_measurement(self):
        if self.status != "degenerate":
            passed = self.measured is not None and self.measured <= self.tolerance
            if passed != (self.status == "pass"):
                raise ValueError(f"status {self.status} contradicts {self.measured} vs {self.tolerance}")
        return self


class Report(BaseModel):
    command: str
    config: RunConfig | None = None
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    def to_json(self) -> str:
        payload = self.model_dump()
        payload["passed"] = self.passed
        return json_dumps(payload)

    def to_text(self) -> str:
        lines = []
        for check in self.checks:
            measured = "n/a" if check.measured is None else f"{check.measured:.3e}"
            lines.append(
                f"{check.status.upper():<10} {check.check_id:<40} "
                f"measured={measured} tol={check.tolerance:.1e}  {check.details}".rstrip()
            )
        lines.append("PASSED" if self.passed else "FAILED")
        return "\n".join(lines)


def json_dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


class Outcome(NamedTuple):
    measured: float
    tolerance: float
    details: str = ""
    degenerate: bool = False


Check = Callable[[RunConfig, np.random.Generator], Outcome]
CHECKS: dict[str, Check] = {}


def check(check_id: str):
    def register(func: Check) -> Check:
        CHECKS[check_id] = func
        return func

    return register


def judge(check_id: str, outcome: Outcome, seed: int, tol_override: float | None = None) -> CheckResult:
    tolerance = outcome.tolerance if tol_override is None else tol_override
    measured = float(outcome.measured)
    if outcome.degenerate:
        status = "degenerate"
    elif math.isfinite(measured) and measured <= tolerance:
        status = "pass"
    else:
        status = "fail"
    return CheckResult(
        check_id=check_id,
        status=status,
        measured=measured if math.isfinite(measured) else None,
        tolerance=tolerance,
        details=outcome.details,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

def random_vectors(rng, dim, count):
    return list(rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim)))


def random_tensor(rng, dim, grade) -> FullTensor:
    shape = (dim,) * grade
    u = FullTensor(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return u * (1.0 / u.norm())


def random_unit_series(rng, valdim, kmin, kmax) -> VecTrigPoly:
    f = random_series(valdim, kmin, kmax, rng)
    return f / l2_norm(f)


def _oracle_too_large(cfg: RunConfig) -> Outcome | None:
    if cfg.grade > settings.MAX_GRADE or cfg.dim**cfg.grade > settings.ORACLE_MAX_ENTRIES:
        return Outcome(0.0, settings.EXACT_TOL, f"d**p = {cfg.dim}**{cfg.grade} beyond the dense oracle", True)
    return None


# ---------------------------------------------------------------------------
# Exterior algebra
# ---------------------------------------------------------------------------

@check("wedge.permutation_action")
def check_permutation_action(cfg, rng):
    skipped = _oracle_too_large(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(cfg.trials):
        sigma = Permutation(rng.permutation(cfg.grade))
        tau = Permutation(rng.permutation(cfg.grade))
        u, v = random_tensor(rng, cfg.dim, cfg.grade), random_tensor(rng, cfg.dim, cfg.grade)
        adjoint = tensor_inner(permute(sigma, u), v) - tensor_inner(u, permute(sigma.inverse(), v))
        isometry = tensor_inner(permute(sigma, u), permute(sigma, v)) - tensor_inner(u, v)
        composed = permute(sigma.compose(tau), u) - permute(sigma, permute(tau, u))
        signature = sigma.compose(tau).signature - sigma.signature * tau.signature
        worst = max(worst, abs(adjoint), abs(isometry), composed.norm(), abs(signature))
    return Outcome(worst, settings.EXACT_TOL, "adjoint, isometry and composition laws")


@check("wedge.antisymmetrizer_projection")
def check_antisymmetrizer_projection(cfg, rng):
    skipped = _oracle_too_large(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(cfg.trials):
        u, v = random_tensor(rng, cfg.dim, cfg.grade), random_tensor(rng, cfg.dim, cfg.grade)
        pu = antisymmetrize(u)
        idempotent = (antisymmetrize(pu) - pu).norm()
        self_adjoint = abs(tensor_inner(pu, v) - tensor_inner(u, antisymmetrize(v)))
        sigma = Permutation(rng.permutation(cfg.grade))
        fixed = (permute(sigma, pu) * sigma.signature - pu).norm()
        worst = max(worst, idempotent, self_adjoint, fixed)
    return Outcome(worst, settings.EXACT_TOL, "P^2 = P, P* = P, sgn(s) S_s P = P")


@check("wedge.symmetric_orthogonality")
def check_symmetric_orthogonality(cfg, rng):
    skipped = _oracle_too_large(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(cfg.trials):
        u, v = random_tensor(rng, cfg.dim, cfg.grade), random_tensor(rng, cfg.dim, cfg.grade)
        su = symmetrize(u)
        worst = max(worst, abs(tensor_inner(su, antisymmetrize(v))), (symmetrize(su) - su).norm())
    return Outcome(worst, settings.EXACT_TOL, "symmetric and antisymmetric tensors are orthogonal")


@check("wedge.antisymmetrizer_rank")
def check_antisymmetrizer_rank(cfg, rng):
    skipped = _oracle_too_large(cfg)
    if skipped:
        return skipped
    singular = linalg.svdvals(antisymmetrizer_matrix(cfg.dim, cfg.grade))
    rank = int(np.sum(singular > 1e-8))
    expected = wedge_dimension(cfg.dim, cfg.grade)
    return Outcome(abs(rank - expected), 0.0, f"rank {rank}, C(d,p) = {expected}")


@check("wedge.gram_routes")
def check_gram_routes(cfg, rng):
    tensor_route = _oracle_too_large(cfg) is None
    worst = 0.0
    for _ in range(cfg.trials):
        xs, ys = random_vectors(rng, cfg.dim, cfg.grade), random_vectors(rng, cfg.dim, cfg.grade)
        value = gram_inner(xs, ys)
        scale = max(1.0, abs(value))
        worst = max(worst, abs(value - leibniz_inner(xs, ys)) / scale)
        worst = max(worst, abs(value - wedge(xs).inner(wedge(ys))) / scale)
        if tensor_route:
            via_tensors = tensor_inner(
                antisymmetrize(FullTensor.elementary(xs)), antisymmetrize(FullTensor.elementary(ys))
            )
            worst = max(worst, abs(value - via_tensors) / scale)
    degenerate = cfg.grade > cfg.dim
    return Outcome(worst, settings.DET_TOL, "determinant, Leibniz sum, minors, tensors", degenerate)


@check("wedge.alternating")
def check_alternating(cfg, rng):
    if cfg.grade < 2 or cfg.grade > cfg.dim:
        return Outcome(0.0, settings.EXACT_TOL, "needs 2 <= p <= d", True)
    worst = 0.0
    for _ in range(cfg.trials):
        xs = random_vectors(rng, cfg.dim, cfg.grade)
        i, j = sorted(rng.choice(cfg.grade, size=2, replace=False))
        swapped = list(xs)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        repeated = list(xs)
        repeated[j] = repeated[i]
        base = wedge(xs)
        scale = max(1.0, base.norm())
        worst = max(
            worst,
            float(np.max(np.abs(wedge(swapped).coords + base.coords))) / scale,
            wedge(repeated).norm() / scale,
        )
    return Outcome(worst, settings.EXACT_TOL, "swap negates, repeat vanishes")


@check("wedge.gram_nonnegative")
def check_gram_nonnegative(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        xs = random_vectors(rng, cfg.dim, cfg.grade)
        value = gram_inner(xs, xs)
        scale = max(1.0, abs(value))
        worst = max(worst, abs(value.imag) / scale, -value.real / scale)
    return Outcome(worst, settings.EXACT_TOL, "Gram determinants are real and nonnegative", cfg.grade > cfg.dim)


@check("wedge.two_vector_norm")
def check_two_vector_norm(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        x, y = random_vectors(rng, cfg.dim, 2)
        x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
        expected = 1.0 - abs(np.vdot(y, x)) ** 2
        worst = max(worst, abs(wedge([x, y]).norm() ** 2 - expected))
    return Outcome(worst, settings.EXACT_TOL, "||x^y||^2 = ||x||^2||y||^2 - |<x,y>|^2", cfg.dim < 2)


@check("wedge.tensor_embedding")
def check_tensor_embedding(cfg, rng):
    skipped = _oracle_too_large(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(cfg.trials):
        xs = random_vectors(rng, cfg.dim, cfg.grade)
        w = wedge(xs)
        projected = antisymmetrize(FullTensor.elementary(xs))
        scale = max(1.0, w.norm())
        worst = max(worst, (w.to_tensor() - projected).norm() / scale)
        if len(w.coords):
            extracted = type(w).from_tensor(projected)
            worst = max(worst, float(np.max(np.abs(extracted.coords - w.coords))) / scale)
        worst = max(worst, abs(projected.norm() - w.norm()) / scale)
    return Outcome(worst, settings.DET_TOL, "minor coordinates match the antisymmetrizer", cfg.grade > cfg.dim)


@check("wedge.residual_norm")
def check_residual_norm(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        count = int(rng.integers(0, cfg.dim))
        x = random_vectors(rng, cfg.dim, 1)[0]
        if count:
            raw = np.column_stack(random_vectors(rng, cfg.dim, count))
            q, _ = linalg.qr(raw, mode="economic")
            us = list(q.T)
        else:
            us = []
        lhs, rhs = residual_norm_check(us, x)
        worst = max(worst, abs(lhs - rhs))
    return Outcome(worst, settings.DET_TOL, "||u_1^...^u_j^x|| = ||x - sum <x,u_i>u_i||")


@check("wedge.hadamard")
def check_hadamard(cfg, rng):
    worst = -math.inf
    size = max(cfg.dim, 2)
    for _ in range(cfg.trials):
        a = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        bounds = hadamard_bounds(a)
        for bound in (bounds.column_bound, bounds.row_bound):
            worst = max(worst, (bounds.determinant - bound) / max(1.0, bound))
    return Outcome(max(worst, 0.0), settings.EXACT_TOL, f"{cfg.trials} random {size}x{size} matrices")


@check("wedge.lambda_bound")
def check_lambda_bound(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        xs = random_vectors(rng, cfg.dim, cfg.grade)
        bound = lambda_bound_check(xs)
        worst = max(worst, bound.lhs - bound.hadamard * (1 + 1e-12), bound.lhs - bound.corrected * (1 + 1e-12))
        shrink = 1.0 / (math.sqrt(sum(np.linalg.norm(x) ** 2 for x in xs)) * (1 + rng.uniform()))
        small = lambda_bound_check([x * shrink for x in xs])
        worst = max(worst, small.lhs - small.printed)
    return Outcome(worst, settings.EXACT_TOL, "Hadamard, corrected and unit-ball bounds on ||Lambda||")


# ---------------------------------------------------------------------------
# Hardy space
# ---------------------------------------------------------------------------

def quadrature_l2(f: VecTrigPoly, points: int = settings.QUADRATURE_POINTS) -> float:
    return float(np.mean(np.sum(np.abs(f.sample(points)) ** 2, axis=1)))


def _random_band(rng, cfg, analytic=False):
    kmin = 0 if analytic else int(rng.integers(-cfg.degree, 1))
    return kmin, kmin + cfg.degree


@check("hardy.parseval")
def check_parseval(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        f = random_series(cfg.dim, *_random_band(rng, cfg), rng)
        energy = l2_inner(f, f)
        exact = float(np.sum(np.abs(f.coeffs) ** 2))
        worst = max(worst, abs(energy - exact), abs(energy.real - quadrature_l2(f)) / max(1.0, exact))
    return Outcome(worst, settings.QUADRATURE_TOL, "Parseval against 4096-point quadrature")


@check("hardy.riesz_projection")
def check_riesz_projection(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        f = random_unit_series(rng, cfg.dim, *_random_band(rng, cfg))
        g = random_unit_series(rng, cfg.dim, *_random_band(rng, cfg))
        pf = riesz_project(f)
        worst = max(
            worst,
            max_deviation(riesz_project(pf), pf),
            abs(l2_inner(pf, g) - l2_inner(f, riesz_project(g))),
        )
    return Outcome(worst, settings.EXACT_TOL, "P+ is idempotent and self-adjoint")


@check("hardy.wedge_commutes_with_eval")
def check_wedge_eval(cfg, rng):
    if cfg.grade > cfg.dim:
        return Outcome(0.0, settings.DET_TOL, "p > d: the wedge is identically zero", True)
    worst = 0.0
    span = min(cfg.degree, 4)
    for _ in range(max(1, cfg.trials // 5)):
        fs = [random_unit_series(rng, cfg.dim, -1, span - 1) for _ in range(cfg.grade)]
        product = pointwise_wedge(fs)
        for z in np.exp(2j * np.pi * rng.uniform(size=settings.PLS_SAMPLES)):
            direct = wedge([f.eval(z) for f in fs]).coords
            worst = max(worst, float(np.max(np.abs(product.eval(z) - direct))))
    return Outcome(worst, settings.DET_TOL, "(f^g)(z) = f(z)^g(z) at sampled z")


@check("hardy.product_rule")
def check_product_rule(cfg, rng):
    if cfg.dim < 2:
        return Outcome(0.0, settings.DET_TOL, "needs d >= 2", True)
    worst = 0.0
    for _ in range(cfg.trials):
        f = random_unit_series(rng, cfg.dim, 0, cfg.degree)
        g = random_unit_series(rng, cfg.dim, 0, cfg.degree)
        lhs = derivative(pointwise_wedge([f, g]))
        rhs = pointwise_wedge([derivative(f), g]) + pointwise_wedge([f, derivative(g)])
        scale = max(1.0, float(np.max(np.abs(lhs.coeffs))))
        worst = max(worst, max_deviation(lhs, rhs) / scale)
    return Outcome(worst, settings.DET_TOL, "(f^g)' = f'^g + f^g'")


@check("hardy.pointwise_dependence")
def check_pointwise_dependence(cfg, rng):
    """Multiples and kernel members of C_xi are pointwise dependent on xi, generic pairs are not.

    Returns:
        Outcome whose measurement is the largest wedge coefficient or sampled smallest
        singular value over the dependent families, plus 1 for every misclassified family.
    """
    if cfg.dim < 2:
        return Outcome(0.0, settings.DET_TOL, "needs d >= 2", True)
    worst = 0.0
    misclassified = 0
    circle = np.exp(2j * np.pi * rng.uniform(size=settings.PLS_SAMPLES))
    for trial in range(max(1, cfg.trials // 5)):
        xi = random_unit_series(rng, cfg.dim, 0, min(cfg.degree, 3))
        q = random_series(1, 0, 2, rng)
        dependent = [[xi, scalar_multiply(q, xi)]]
        if trial == 0:
            dependent += [[xi, h] for h in kernel_creation(xi, cfg.degree, rng=rng).basis.elements()]
        for fs in dependent:
            misclassified += not pointwise_linearly_dependent(fs)
            worst = max(worst, float(np.max(np.abs(pointwise_wedge(fs).coeffs))))
            for z in circle:
                values = np.column_stack([f.eval(z) for f in fs])
                worst = max(worst, float(linalg.svdvals(values)[-1]))
        f = random_unit_series(rng, cfg.dim, 0, cfg.degree)
        g = random_unit_series(rng, cfg.dim, 0, cfg.degree)
        misclassified += pointwise_linearly_dependent([f, g])
        extra = [random_unit_series(rng, cfg.dim, 0, 1) for _ in range(cfg.dim + 1)]
        misclassified += not pointwise_linearly_dependent(extra)
    return Outcome(worst + misclassified, settings.DET_TOL, f"{misclassified} misclassified families")


@check("hardy.rank_one_symbol")
def check_rank_one_symbol(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        xi = random_unit_series(rng, cfg.dim, *_random_band(rng, cfg))
        eta = random_unit_series(rng, cfg.dim, *_random_band(rng, cfg))
        symbol = rank_one_symbol(xi, eta)
        x = random_vectors(rng, cfg.dim, 1)[0]
        z = np.exp(2j * np.pi * rng.uniform())
        expected = np.vdot(eta.eval(z), x) * xi.eval(z)
        worst = max(
            worst,
            float(np.max(np.abs(symbol.eval(z) @ x - expected))),
            float(np.max(np.abs(symbol.adjoint().eval(z) - symbol.eval(z).conj().T))),
        )
    return Outcome(worst, settings.DET_TOL, "(xi eta*)(z)x = <x, eta(z)> xi(z)")


def _wedge_norm_excess(cfg, rng, analytic, sup_norm):
    worst = -math.inf
    for _ in range(cfg.trials):
        x = random_series(cfg.dim, *_random_band(rng, cfg, analytic), rng)
        y = random_series(cfg.dim, *_random_band(rng, cfg, analytic), rng)
        product = pointwise_wedge([x, y])
        samples = max(minimum_samples(product), minimum_samples(y))
        if sup_norm:
            lhs = l2_norm(product)
            rhs = sup_norm_bound(y, samples) * l2_norm(x)
        else:
            lhs = lp_norm(product, 1, samples)
            rhs = l2_norm(x) * l2_norm(y)
        worst = max(worst, (lhs - rhs) / max(1.0, rhs))
    return max(worst, 0.0)


@check("hardy.l1_wedge_bound")
def check_l1_wedge_bound(cfg, rng):
    if cfg.dim < 2:
        return Outcome(0.0, settings.QUADRATURE_TOL, "needs d >= 2", True)
    excess = _wedge_norm_excess(cfg, rng, analytic=False, sup_norm=False)
    return Outcome(excess, settings.QUADRATURE_TOL, "||x^y||_1 <= ||x||_2 ||y||_2 on L^2")


@check("hardy.h1_wedge_bound")
def check_h1_wedge_bound(cfg, rng):
    if cfg.dim < 2:
        return Outcome(0.0, settings.QUADRATURE_TOL, "needs d >= 2", True)
    excess = _wedge_norm_excess(cfg, rng, analytic=True, sup_norm=False)
    return Outcome(excess, settings.QUADRATURE_TOL, "||x^y||_H1 <= ||x||_H2 ||y||_H2")


@check("hardy.h2_wedge_bound")
def check_h2_wedge_bound(cfg, rng):
    if cfg.dim < 2:
        return Outcome(0.0, settings.QUADRATURE_TOL, "needs d >= 2", True)
    excess = _wedge_norm_excess(cfg, rng, analytic=True, sup_norm=True)
    return Outcome(excess, settings.QUADRATURE_TOL, "||x^y||_H2 <= ||y||_inf ||x||_H2")


@check("hardy.orthonormal_family_contraction")
def check_orthonormal_family(cfg, rng):
    if cfg.dim < 2:
        return Outcome(0.0, settings.DET_TOL, "needs d >= 2", True)
    worst = 0.0
    count = min(max(cfg.grade - 1, 1), cfg.dim - 1)
    for _ in range(cfg.trials):
        family = monomial_family(cfg.dim, count, rng)
        x = random_unit_series(rng, cfg.dim, *_random_band(rng, cfg))
        wedged = l2_norm(pointwise_wedge(family + [x])) ** 2
        lost = sum(l2_norm(pointwise_inner(x, xi)) ** 2 for xi in family)
        orthogonal = x
        for xi in family:
            orthogonal = orthogonal - scalar_multiply(pointwise_inner(x, xi), xi)
        equality = abs(l2_norm(pointwise_wedge(family + [orthogonal])) - l2_norm(orthogonal))
        worst = max(worst, abs(wedged - (1.0 - lost)), wedged - 1.0, equality)
    return Outcome(worst, settings.DET_TOL, f"families of {count}, contraction and equality case")


@check("hardy.inner_criterion")
def check_inner_criterion(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        xi = random_inner(cfg.dim, min(cfg.degree, 3), rng)
        values = np.linalg.norm(xi.sample(minimum_samples(xi)), axis=1)
        misjudged = (not is_inner(xi)) or is_inner(xi * 2)
        worst = max(worst, float(np.max(np.abs(values - 1.0))), float(misjudged))
    return Outcome(worst, settings.DET_TOL, "autocorrelation criterion agrees with sampled norms")


@check("hardy.serialization")
def check_serialization(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        f = random_series(cfg.dim, *_random_band(rng, cfg), rng)
        back = load_series(dump_series(f))
        exact = back.kmin == f.kmin and np.array_equal(back.coeffs, f.coeffs)
        worst = max(worst, 0.0 if exact else 1.0)
    return Outcome(worst, 0.0, "JSON round trip is bit-exact")


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------

def _needs_wedge_square(cfg):
    if cfg.dim < 2:
        return Outcome(0.0, settings.EXACT_TOL, "the second exterior power of C^1 is trivial", True)
    return None


def _inner_symbols(cfg, rng):
    """Inner test symbols: the shift example, z*u, and random rotations of z^k mixtures."""
    symbols = []
    if cfg.dim == 2:
        symbols.append(shift_example_symbol())
    u = random_vectors(rng, cfg.dim, 1)[0]
    symbols.append(VecTrigPoly.monomial(1, u / np.linalg.norm(u)))
    while len(symbols) < cfg.trials:
        symbols.append(random_inner(cfg.dim, min(cfg.degree, 3), rng))
    return symbols[: cfg.trials]


@check("operators.adjoint_consistency")
def check_adjoint_consistency(cfg, rng):
    skipped = _needs_wedge_square(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(cfg.trials):
        xi = random_unit_series(rng, cfg.dim, 0, min(cfg.degree, 3))
        c = creation(xi, cfg.degree)
        h = rng.standard_normal(c.domain.dimension) + 1j * rng.standard_normal(c.domain.dimension)
        w = rng.standard_normal(c.codomain.dimension) + 1j * rng.standard_normal(c.codomain.dimension)
        h, w = h / np.linalg.norm(h), w / np.linalg.norm(w)
        lhs = np.vdot(w, c.entries @ h)
        rhs = np.vdot(c.adjoint().entries @ w, h)
        worst = max(worst, abs(lhs - rhs))
    return Outcome(worst, 1e-13, "<Ch, w> = <h, C*w>")


@check("operators.toeplitz_identity")
def check_toeplitz_identity(cfg, rng):
    skipped = _needs_wedge_square(cfg)
    if skipped:
        return skipped
    worst = max(verify_toeplitz_identity(xi, cfg.degree) for xi in _inner_symbols(cfg, rng))
    return Outcome(worst, settings.EXACT_TOL, "C*C = I - T_{xi xi*} for inner xi")


@check("operators.toeplitz_definition")
def check_toeplitz_definition(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        rows = int(rng.integers(1, cfg.dim + 1))
        kmin, kmax = _random_band(rng, cfg)
        shape = (kmax - kmin + 1, rows, cfg.dim)
        g = MatSymbol(kmin, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
        other = MatSymbol(kmin, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
        h = random_unit_series(rng, cfg.dim, 0, cfg.degree)
        expected = riesz_project(g.apply(h)).truncate(cfg.degree).restrict(0, cfg.degree)
        linear = toeplitz(g + other, cfg.degree) - toeplitz(g, cfg.degree) - toeplitz(other, cfg.degree)
        constant = g.coefficient(0)
        block_diagonal = toeplitz(MatSymbol.constant(constant), cfg.degree).entries - np.kron(
            np.eye(cfg.degree + 1), constant
        )
        worst = max(
            worst,
            max_deviation(toeplitz(g, cfg.degree).apply(h), expected),
            linear.max_abs(),
            float(np.max(np.abs(block_diagonal))),
        )
    return Outcome(worst, settings.EXACT_TOL, "T_G h = P+(Gh), linear in G, constant symbols block-diagonal")


def _small_analytic(cfg, rng):
    return random_unit_series(rng, cfg.dim, 0, max(cfg.degree // 2, 0))


@check("operators.poc_orthogonal_to_kernel")
def check_poc_kernel(cfg, rng):
    skipped = _needs_wedge_square(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(max(1, cfg.trials // 5)):
        xi = _small_analytic(cfg, rng)
        poc = poc_basis([xi], cfg.degree)
        kernel = kernel_creation(xi, cfg.degree, rng=rng).basis
        if poc.dimension and kernel.dimension:
            worst = max(worst, float(np.max(np.abs(poc.vectors.conj().T @ kernel.vectors))))
    return Outcome(worst, settings.DET_TOL, "Poc is orthogonal to ker C_xi")


@check("operators.kernel_pls_circle")
def check_kernel_pls_circle(cfg, rng):
    skipped = _needs_wedge_square(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(max(1, cfg.trials // 5)):
        worst = max(worst, kernel_creation(_small_analytic(cfg, rng), cfg.degree, rng=rng).circle_deviation)
    return Outcome(worst, settings.QUADRATURE_TOL, "kernel members are parallel to xi on the circle")


@check("operators.kernel_pls_disc")
def check_kernel_pls_disc(cfg, rng):
    skipped = _needs_wedge_square(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(max(1, cfg.trials // 5)):
        worst = max(worst, kernel_creation(_small_analytic(cfg, rng), cfg.degree, rng=rng).disc_deviation)
    return Outcome(worst, settings.QUADRATURE_TOL, "kernel members are parallel to xi inside the disc")


def poc_disc_counterexample(degree: int) -> Outcome:
    g = VecTrigPoly.from_components([0, 1], [0, 0, 1])
    f = VecTrigPoly.from_components([1], [0, -1])
    residual = poc_basis([g], max(degree, 1)).residual(f)
    value = complex(np.vdot(g.eval(0.5), f.eval(0.5)))
    deviation = max(residual, abs(abs(value) - 0.375))
    return Outcome(deviation, settings.EXACT_TOL, f"f in Poc({{g}}), |<f(1/2), g(1/2)>| = {abs(value):.6f}")


@check("operators.poc_not_orthogonal_in_disc")
def check_poc_disc(cfg, rng):
    return poc_disc_counterexample(cfg.degree)


@check("operators.isometry_dichotomy")
def check_isometry_dichotomy(cfg, rng):
    skipped = _needs_wedge_square(cfg)
    if skipped:
        return skipped
    xi = shift_example_symbol() if cfg.dim == 2 else random_inner(cfg.dim, min(cfg.degree, 2), rng)
    report = isometry_set_check(xi, cfg.degree, 2 * cfg.trials, rng)
    margin_ok = report.min_margin > 0
    measured = report.equality_deviation if (report.misclassified == 0 and margin_ok) else math.inf
    return Outcome(
        measured,
        settings.DET_TOL,
        f"{report.trials} trials, {report.misclassified} misclassified, min margin {report.min_margin:.3e}",
    )


@check("operators.multiwedge_isometry")
def check_multiwedge_isometry(cfg, rng):
    families = [block_family()]
    if cfg.dim >= 3:
        families.append(monomial_family(cfg.dim, cfg.dim - 2 if cfg.dim > 3 else 2, rng))
    worst = 0.0
    for family in families:
        report = multiwedge_isometry_check(family, min(cfg.degree, 4), cfg.trials, rng)
        if report.misclassified:
            return Outcome(math.inf, settings.DET_TOL, f"{report.misclassified} misclassified")
        worst = max(worst, report.equality_deviation, report.contraction_excess, report.residual_deviation)
    return Outcome(worst, settings.DET_TOL, f"{len(families)} pointwise orthonormal families")


@check("operators.shift_formula")
def check_shift_formula(cfg, rng):
    report = partial_isometry_counterexample(max(cfg.degree, 2))
    return Outcome(_shift_deviation(report), settings.EXACT_TOL, f"||A^2 - A|| = {report.defect_norm:.15f}")


@check("operators.adjoint_on_wedge")
def check_adjoint_on_wedge(cfg, rng):
    skipped = _needs_wedge_square(cfg)
    if skipped:
        return skipped
    worst = 0.0
    for _ in range(cfg.trials):
        a, b, c = (int(rng.integers(0, max(cfg.degree // 2, 0) + 1)) for _ in range(3))
        xi = random_unit_series(rng, cfg.dim, 0, a)
        f = random_unit_series(rng, cfg.dim, 0, b)
        g = random_unit_series(rng, cfg.dim, 0, c)
        degree = max(b + c - a, 0) + int(rng.integers(0, 3))
        adjoint = creation(xi, degree).adjoint()
        via_matrix = adjoint.apply(pointwise_wedge([f, g]).restrict(0, adjoint.domain.degree))
        worst = max(
            worst,
            max_deviation(adjoint_on_wedge(xi, f, g, degree), via_matrix),
            l2_norm(adjoint_on_wedge(xi, f, f)),
        )
    return Outcome(worst, settings.EXACT_TOL, "C*(f^g) = P+ alpha_f by coefficients and by matrix")


@check("operators.external_symbols")
def check_external_symbols(cfg, rng):
    if not cfg.xi_files:
        return Outcome(0.0, settings.EXACT_TOL, "no --xi symbols given", True)
    worst = 0.0
    notes = []
    for path in cfg.xi_files:
        xi = read_series(path)
        if xi.valdim < 2 or not xi.is_analytic:
            notes.append(f"{path}: skipped")
            continue
        if is_inner(xi):
            worst = max(worst, verify_toeplitz_identity(xi, cfg.degree))
            notes.append(f"{path}: inner")
        poc = poc_basis([xi], cfg.degree)
        kernel = kernel_creation(xi, cfg.degree, rng=rng).basis
        if poc.dimension and kernel.dimension and not poc.degenerate:
            worst = max(worst, float(np.max(np.abs(poc.vectors.conj().T @ kernel.vectors))))
    return Outcome(worst, settings.DET_TOL, "; ".join(notes))


# ---------------------------------------------------------------------------
# Worked examples
# ---------------------------------------------------------------------------

def _shift_deviation(report) -> float:
    return max(
        report.a_deviation,
        report.a_squared_deviation,
        report.defect_deviation,
        abs(report.defect_norm - 0.25),
        report.hermitian_deviation,
        max(-report.min_eigenvalue, report.max_eigenvalue - 1.0, 0.0),
    )


def example_adjoint_of_constant() -> Outcome:
    """C*C h for xi = (1, z)/sqrt2 and h = (1, 1), by both routes.

    Returns:
        Outcome with the worst deviation from (1, 1 - z)/2.
    """
    xi = shift_example_symbol()
    h = VecTrigPoly.constant([1, 1])
    expected = VecTrigPoly.from_components([1], [1, -1]) / 2
    c = creation(xi, 2)
    via_matrix = (c.adjoint() @ c).apply(h)
    via_alpha = adjoint_on_wedge(xi, xi, h)
    deviation = max(max_deviation(via_matrix, expected), max_deviation(via_alpha, expected))
    return Outcome(deviation, settings.EXACT_TOL, "C*C(1,1) = (1, 1-z)/2")


def example_image_not_in_poc() -> Outcome:
    """<(C*C h)(z), xi(z)> has the single coefficient 1/(2 sqrt2) at frequency -1.

    Returns:
        Outcome with the worst coefficient error.
    """
    xi = shift_example_symbol()
    image = adjoint_on_wedge(xi, xi, VecTrigPoly.constant([1, 1]))
    pairing = pointwise_inner(image, xi)
    expected = VecTrigPoly.monomial(-1, [1 / (2 * math.sqrt(2))])
    return Outcome(max_deviation(pairing, expected), settings.EXACT_TOL, "<P+ alpha, xi> = conj(z)/(2 sqrt2)")


def example_shift_formula() -> Outcome:
    """A = C*C against the shift formulas for N = 2..10.

    Returns:
        Outcome with the worst deviation, including | ||A^2 - A|| - 1/4 |.
    """
    worst = max(_shift_deviation(partial_isometry_counterexample(n)) for n in range(2, 11))
    return Outcome(worst, settings.EXACT_TOL, "A = (1/2)[[1,-S*],[-S,1]], ||A^2 - A|| = 1/4")


def example_block_family(trials: int = 50) -> Outcome:
    """The C^4 family (1, z, 0, 0)/sqrt2, (0, 0, 1, z)/sqrt2.

    Returns:
        Outcome with the worst isometry or contraction error over ``trials`` inputs.
    """
    report = multiwedge_isometry_check(block_family(), 4, 2 * trials, np.random.default_rng(0))
    if report.misclassified:
        return Outcome(math.inf, settings.DET_TOL, f"{report.misclassified} misclassified")
    worst = max(report.equality_deviation, report.contraction_excess, report.residual_deviation)
    return Outcome(worst, settings.DET_TOL, f"Poc dimension {report.poc_dimension}")


def example_isometry_dichotomy(trials: int = 100) -> Outcome:
    """||C_xi h|| = ||h|| exactly on Poc for xi = (1, z)/sqrt2, strictly less elsewhere.

    Returns:
        Outcome; the measurement is infinite when any input is misclassified.
    """
    report = isometry_set_check(shift_example_symbol(), 5, trials, np.random.default_rng(0))
    ok = report.misclassified == 0 and report.min_margin > 0
    return Outcome(
        report.equality_deviation if ok else math.inf,
        settings.DET_TOL,
        f"{report.misclassified} misclassified, min margin {report.min_margin:.3e}",
    )


WORKED_EXAMPLES: dict[str, Callable[[], Outcome]] = {
    "example.adjoint_of_constant": example_adjoint_of_constant,
    "example.block_family_isometry": example_block_family,
    "example.image_not_in_poc": example_image_not_in_poc,
    "example.isometry_dichotomy": example_isometry_dichotomy,
    "example.poc_not_orthogonal_in_disc": lambda: poc_disc_counterexample(3),
    "example.shift_formula": example_shift_formula,
}


def run_worked_examples() -> Report:
    results = [judge(check_id, WORKED_EXAMPLES[check_id](), seed=0) for check_id in sorted(WORKED_EXAMPLES)]
    return Report(command="paper-examples", checks=results)


def run_check(check_id: str, cfg: RunConfig, index: int) -> CheckResult:
    rng = np.random.default_rng([cfg.seed, index])
    try:
        outcome = CHECKS[check_id](cfg, rng)
    except WedgeOpsError as exc:
        LOGGER.warning("check %s raised: %s", check_id, exc)
        outcome = Outcome(math.inf, settings.EXACT_TOL, f"error: {exc}")
    return judge(check_id, outcome, cfg.seed, cfg.tol)


def run_suite(cfg: RunConfig) -> Report:
    """Run every registered check with the given configuration.

    Args:
        cfg: validated run configuration.

    Returns:
        Report with one result per check, sorted by check_id.
    """
    results = []
    for index, check_id in enumerate(sorted(CHECKS)):
        LOGGER.debug("running %s", check_id)
        results.append(run_check(check_id, cfg, index))
    return Report(command="suite", config=cfg, checks=results)
