import warnings

import numpy as np
import pytest

from app.core.fields import BoundarySpec, Field
from app.core.problems import HeatProblem
from app.solvers.heat import (
    SchemeKind,
    Stability,
    StabilityWarning,
    adi_advance_array,
    adi_step_2d,
    crank_nicolson_step_1d,
    explicit_step_1d,
    heat_advance,
    heat_solve_1d,
    heat_solve_2d,
    implicit_step_1d,
    stability_classify,
)
from app.solvers.laplace import dirichlet_mask, laplace_boundary_field, laplace_solve_2d
from app.solvers.oracles import dense_adi_step_2d, dense_crank_nicolson_step_1d, dense_implicit_step_1d


@pytest.mark.parametrize(
    "scheme, lam, expected",
    [
        (SchemeKind.EXPLICIT, 0.5, Stability.STABLE),
        (SchemeKind.EXPLICIT, 0.51, Stability.CONDITIONALLY_UNSTABLE),
        (SchemeKind.IMPLICIT, 100.0, Stability.STABLE),
        (SchemeKind.CRANK_NICOLSON, 100.0, Stability.STABLE),
        (SchemeKind.ADI, 100.0, Stability.STABLE),
        (SchemeKind.BURGERS_UPWIND, 1.0, Stability.STABLE),
        (SchemeKind.BURGERS_UPWIND, 1.2, Stability.CONDITIONALLY_UNSTABLE),
        (SchemeKind.LAPLACE_ITERATIVE, 3.0, Stability.STABLE),
    ],
)
def test_stability_classify(scheme, lam, expected):
    assert stability_classify(scheme, lam) is expected


def test_stability_classify_negative_lambda():
    with pytest.raises(ValueError):
        stability_classify(SchemeKind.EXPLICIT, -0.1)


def test_explicit_warns_beyond_bound():
    with pytest.warns(StabilityWarning):
        explicit_step_1d(np.ones(5), 0.0, 0.0, 0.6)


def test_explicit_no_warning_at_bound():
    with warnings.catch_warnings():
        warnings.simplefilter("error", StabilityWarning)
        explicit_step_1d(np.ones(5), 0.0, 0.0, 0.5)


@pytest.mark.parametrize("step", ["explicit", "implicit", "cn"])
def test_linear_profile_is_steady(step):
    # Линейный профиль между концами 0 и 10: стационарное решение
    interior = np.linspace(0.0, 10.0, 11)[1:-1]
    if step == "explicit":
        result = explicit_step_1d(interior, 0.0, 10.0, 0.4)
    elif step == "implicit":
        result = implicit_step_1d(interior, 0.0, 10.0, 2.0)
    else:
        result = crank_nicolson_step_1d(interior, 0.0, 0.0, 10.0, 10.0, 2.0)
    np.testing.assert_allclose(result, interior, atol=1e-12)


def test_implicit_and_cn_match_dense_assembly(rng):
    for _ in range(30):
        m = int(rng.integers(1, 51))
        lam = float(rng.uniform(0.01, 3.0))
        values = rng.uniform(0, 100, m)
        a, b, c, d = rng.uniform(0, 100, 4)
        np.testing.assert_allclose(
            implicit_step_1d(values, a, b, lam), dense_implicit_step_1d(values, a, b, lam), atol=1e-10
        )
        np.testing.assert_allclose(
            crank_nicolson_step_1d(values, a, b, c, d, lam),
            dense_crank_nicolson_step_1d(values, a, b, c, d, lam),
            atol=1e-10,
        )


def test_explicit_unstable_growth():
    ic = np.where(np.arange(19) % 2 == 0, 1.0, -1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StabilityWarning)
        history = heat_solve_1d(ic, BoundarySpec.uniform(0.0), 0.6, 200, SchemeKind.EXPLICIT)
    assert np.max(np.abs(history[-1])) > 10 * np.max(np.abs(ic))


def test_explicit_bounded_at_limit():
    ic = np.where(np.arange(19) % 2 == 0, 1.0, -1.0)
    history = heat_solve_1d(ic, BoundarySpec.uniform(0.0), 0.5, 200, SchemeKind.EXPLICIT)
    assert history.max() <= 1.0 + 1e-9
    assert history.min() >= -1.0 - 1e-9


def test_implicit_maximum_principle(rng):
    ic = rng.uniform(0, 1, 30)
    history = heat_solve_1d(ic, BoundarySpec(0, 0, 0.2, 0.9), 5.0, 50, SchemeKind.IMPLICIT)
    assert history.min() >= -1e-9
    assert history.max() <= 1.0 + 1e-9


def test_schemes_agree_as_lambda_shrinks():
    m = 19
    x = np.arange(1, m + 1) / (m + 1)
    ic = np.sin(np.pi * x)
    boundary = BoundarySpec.uniform(0.0)
    gaps = []
    for lam in (0.4, 0.2, 0.1, 0.05):
        steps = int(round(20 / lam))
        implicit = heat_solve_1d(ic, boundary, lam, steps, SchemeKind.IMPLICIT)[-1]
        cn = heat_solve_1d(ic, boundary, lam, steps, SchemeKind.CRANK_NICOLSON)[-1]
        explicit = heat_solve_1d(ic, boundary, lam, steps, SchemeKind.EXPLICIT)[-1]
        gaps.append(max(np.max(np.abs(implicit - cn)), np.max(np.abs(explicit - cn))))
    assert all(earlier > later for earlier, later in zip(gaps, gaps[1:]))


def test_time_varying_endpoints():
    boundary = BoundarySpec(0, 0, 0, 0, f0=lambda l: float(l), fm1=lambda l: 2.0 * l)
    ic = np.zeros(4)
    history = heat_solve_1d(ic, boundary, 0.3, 3, SchemeKind.IMPLICIT)
    assert history.shape == (4, 4)
    np.testing.assert_allclose(history[1], implicit_step_1d(ic, 1.0, 2.0, 0.3))


def test_heat_solve_1d_rejects_2d_scheme():
    with pytest.raises(ValueError):
        heat_solve_1d(np.zeros(3), BoundarySpec.uniform(0.0), 0.3, 1, SchemeKind.ADI)


def test_adi_matches_dense(rng):
    boundary = BoundarySpec(600, 500, 194, 248)
    for shape in [(3, 3), (9, 7), (12, 12)]:
        field = Field(rng.uniform(0, 600, shape))
        np.testing.assert_allclose(
            adi_step_2d(field, boundary, 0.27047).values, dense_adi_step_2d(field, boundary, 0.27047), atol=1e-9
        )


def test_adi_uniform_fixed_point():
    problem = HeatProblem((8, 8), BoundarySpec.uniform(5.0), 5.0, 0.7)
    result = heat_advance(problem.initial_field(), problem.boundary, problem.lam, 20)
    np.testing.assert_allclose(result.values, 5.0, atol=1e-12)


def test_adi_zero_lambda_is_identity(rng, small_problem):
    field = small_problem.with_ic(Field(rng.uniform(0, 10, small_problem.shape))).initial_field()
    assert adi_step_2d(field, small_problem.boundary, 0.0) == field


def test_adi_keeps_edges_and_bounds(reference_problem):
    trajectory = heat_solve_2d(reference_problem, 100)
    assert len(trajectory) == 101
    assert trajectory.times == tuple(range(101))
    assert trajectory.state_at(0) == reference_problem.initial_field()
    for state in trajectory.states:
        assert np.all(state.values[0, 1:-1] == 600.0)
        assert np.all(state.values[:, 0] == 194.0)
        assert state.values.min() >= 194.0 - 1e-9
        assert state.values.max() <= 600.0 + 1e-9


def test_adi_is_linear_with_zero_edges(rng):
    boundary = BoundarySpec.uniform(0.0)
    u, v = rng.normal(size=(9, 7)), rng.normal(size=(9, 7))
    a, b = 2.5, -1.3
    step = lambda values: adi_step_2d(Field(values), boundary, 0.27047).values
    combined = step(a * u + b * v)
    separate = a * step(u) + b * step(v)
    np.testing.assert_allclose(combined, separate, atol=1e-12, rtol=0)


def test_adi_random_problems_stay_within_bounds(rng):
    for _ in range(20):
        shape = (int(rng.integers(3, 11)), int(rng.integers(3, 11)))
        edges = [float(e) for e in rng.uniform(0, 100, 4)]
        ic = float(rng.uniform(0, 100))
        lam = float(rng.uniform(0.05, 0.95))
        problem = HeatProblem(shape, BoundarySpec(*edges), ic, lam)
        lo, hi = min(*edges, ic), max(*edges, ic)
        for state in heat_solve_2d(problem, 30).states:
            assert state.values.min() >= lo - 1e-9
            assert state.values.max() <= hi + 1e-9


def test_batched_advance_matches_single(rng, reference_problem):
    batch = rng.uniform(0, 600, (3, 12, 12))
    advanced = adi_advance_array(batch, reference_problem.boundary, reference_problem.lam, 5)
    for k in range(3):
        single = heat_advance(Field(batch[k]), reference_problem.boundary, reference_problem.lam, 5)
        np.testing.assert_allclose(advanced[k], single.values, rtol=1e-14, atol=0)


def test_heat_advance_zero_steps(reference_problem):
    field = reference_problem.initial_field()
    assert heat_advance(field, reference_problem.boundary, reference_problem.lam, 0) == field
    with pytest.raises(ValueError):
        heat_advance(field, reference_problem.boundary, reference_problem.lam, -1)


@pytest.mark.slow
def test_adi_converges_to_laplace():
    boundary = BoundarySpec(600, 500, 194, 248)
    problem = HeatProblem((24, 24), boundary, 0.0, 1.0)
    adi = heat_advance(problem.initial_field(), boundary, problem.lam, 2000)
    laplace = laplace_solve_2d(laplace_boundary_field((24, 24), boundary), dirichlet_mask((24, 24)))
    assert laplace.converged
    assert np.max(np.abs(adi.values - laplace.field.values)) < 1e-6
