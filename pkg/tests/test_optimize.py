import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wyskew.bounds import gen_ghz_value, two_qubit_pure_value, werner_closed_form
from wyskew.errors import NonQubitSite, ValidationError
from wyskew.observables import PAULIS, local_sum_operator, observables_from_axes
from wyskew.optimize import (
    OptimizerConfig,
    bloch_from_angles,
    evaluate_at,
    nonlocal_skew_information,
    skew_quadratic_form,
)
from wyskew.skew import skew_information
from wyskew.states import (
    PureState,
    WernerGhzParams,
    generalized_ghz,
    ghz_state,
    maximally_mixed,
    product_pure,
    random_density,
    random_pure,
    schmidt_decompose_two_qubit,
    werner_ghz,
)


def two_qubit_grid_max(psi, step_deg=2):
    """Max over a (theta, phi) grid on both sites of
    I = 2 + 2 a.T b - (a.r1 + b.r2)^2, with T and r read off the state."""
    v = psi.amplitudes
    exp = lambda op: np.vdot(v, op @ v).real
    r1 = np.array([exp(np.kron(p, np.eye(2))) for p in PAULIS])
    r2 = np.array([exp(np.kron(np.eye(2), p)) for p in PAULIS])
    t = np.array([[exp(np.kron(p, q)) for q in PAULIS] for p in PAULIS])
    th = np.radians(np.arange(0, 181, step_deg))
    ph = np.radians(np.arange(0, 360, step_deg))
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    pts = np.stack([np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], -1).reshape(-1, 3)
    u, w = pts @ r1, pts @ r2
    best = -np.inf
    for i in range(0, len(pts), 512):
        a = pts[i : i + 512]
        vals = 2 + 2 * (a @ t) @ pts.T - (u[i : i + 512, None] + w[None, :]) ** 2
        best = max(best, vals.max())
    return best


def test_evaluate_at_examples():
    rho = ghz_state(3).density()
    assert evaluate_at(rho, [0, 0] * 3) == pytest.approx(9, abs=1e-12)
    direct = skew_information(rho, local_sum_operator(observables_from_axes("xxx"))).value
    assert evaluate_at(rho, [np.pi / 2, 0] * 3) == pytest.approx(direct, abs=1e-12)
    rng = np.random.default_rng(0)
    assert evaluate_at(maximally_mixed([2] * 3), rng.uniform(0, 3, 6)) == pytest.approx(0, abs=1e-12)
    with pytest.raises(ValidationError):
        evaluate_at(rho, [0, 0])


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 4))
def test_quadratic_form_matches_direct_evaluation(seed, n):
    rng = np.random.default_rng(seed)
    rho = random_density([2] * n, rank=int(rng.integers(1, 2**n + 1)), seed=rng)
    angles = rng.uniform(-4, 4, 2 * n)
    a = bloch_from_angles(angles)
    q = skew_quadratic_form(rho)
    assert np.array_equal(q, q.T)
    assert a @ q @ a == pytest.approx(evaluate_at(rho, angles), abs=1e-10)


def test_non_qubit_rejected():
    with pytest.raises(NonQubitSite):
        nonlocal_skew_information(maximally_mixed([3]))


def test_config_validation():
    with pytest.raises(ValidationError):
        OptimizerConfig(grid_resolution=1)
    with pytest.raises(ValidationError):
        OptimizerConfig(convergence_tolerance=0)


def test_ghz3_reaches_nine():
    res = nonlocal_skew_information(ghz_state(3))
    assert res.value == pytest.approx(9, abs=1e-6)
    assert res.converged
    assert len(res.trace) == res.starts_evaluated == 32
    angles = np.concatenate([b.angles() for b in res.best_observables])
    assert evaluate_at(ghz_state(3).density(), angles) == pytest.approx(res.value, abs=1e-8)


def test_random_product_reaches_n():
    rng = np.random.default_rng(4)
    psi = product_pure([random_pure([2], rng) for _ in range(2)])
    assert nonlocal_skew_information(psi).value == pytest.approx(2, abs=1e-6)


def test_schmidt_state_value_and_grid_oracle():
    psi = PureState([0.8, 0, 0, 0.6], (2, 2))
    grid = two_qubit_grid_max(psi)
    assert grid == pytest.approx(3.92, abs=1e-12)  # optimum lies on the grid
    assert nonlocal_skew_information(psi).value == pytest.approx(3.92, abs=1e-6)


def test_two_qubit_random_states_match_2_plus_4pq():
    rng = np.random.default_rng(8)
    for _ in range(3):
        psi = random_pure([2, 2], rng)
        s = schmidt_decompose_two_qubit(psi)
        value = nonlocal_skew_information(psi).value
        assert value == pytest.approx(two_qubit_pure_value(s.p, s.q), abs=1e-6)
        assert two_qubit_grid_max(psi, step_deg=3) <= value + 1e-9


def test_deterministic_per_seed():
    rho = random_density([2, 2, 2], rank=2, seed=5)
    cfg = OptimizerConfig(restarts=6, seed=17)
    a, b = nonlocal_skew_information(rho, cfg), nonlocal_skew_information(rho, cfg)
    assert a.value == b.value
    assert a.trace == b.trace
    np.testing.assert_array_equal(a.best_angles, b.best_angles)


def test_monotone_in_restarts():
    rho = random_density([2, 2, 2], rank=2, seed=6)
    values = [nonlocal_skew_information(rho, OptimizerConfig(restarts=r, seed=3)).value for r in range(1, 9)]
    assert all(b >= a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("n, lam", [(2, 0.3), (2, 0.9), (3, 0.5), (3, 0.8)])
def test_werner_ceiling(n, lam):
    rho = werner_ghz(WernerGhzParams(n, lam))
    closed = werner_closed_form(n, lam)
    assert evaluate_at(rho, [0, 0] * n) == pytest.approx(closed, abs=1e-10)
    value = nonlocal_skew_information(rho).value
    assert closed - 1e-6 <= value <= closed + 1e-6


@pytest.mark.parametrize("alpha", [0.95, 0.8, 0.3])
def test_gen_ghz_both_branches(alpha):
    beta = math.sqrt(1 - alpha * alpha)
    value = nonlocal_skew_information(generalized_ghz(alpha, beta)).value
    assert value == pytest.approx(gen_ghz_value(alpha, beta), abs=1e-5)
