import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgflux.errors import ConfigError, InadmissibleStateError
from dgflux.models.base import DEMAND, SUPPLY
from dgflux.models.traffic import RIEMANN_CASES, TrafficModel

THETA3 = np.array([1.0, 0.5, 0.75, 1.0])  # lane count a, speed factors b_1..b_3


def jacobian(model, u, theta):
    """Analytic flux Jacobian, assembled independently of the model code."""
    a = theta[0]
    b = theta[1:]
    rho = u.sum() / a
    v = model.free_flow_speed * (1.0 - rho / model.rho_jam)
    dv = -model.free_flow_speed / model.rho_jam
    return np.diag(b * v) + np.outer(b * u * dv / a, np.ones(u.size))


def test_velocity_law():
    model = TrafficModel()
    assert model.velocity(0.0) == pytest.approx(40.0)
    assert model.velocity(0.5) == pytest.approx(20.0)
    assert model.velocity(1.0) == pytest.approx(0.0)
    assert model.rho_crit == pytest.approx(0.5)
    assert model.q_max == pytest.approx(10.0)


def test_flux_componentwise():
    model = TrafficModel()
    u = np.array([0.1, 0.2, 0.1])  # conserved lane-scaled densities, a = 1
    f = model.flux(u, THETA3)
    v = model.velocity(0.4)
    assert np.allclose(f, [0.5 * 0.1 * v, 0.75 * 0.2 * v, 1.0 * 0.1 * v], atol=1e-14)


def test_eigen_bounds_contain_jacobian_spectrum():
    model = TrafficModel()
    rng = np.random.default_rng(11)
    for _ in range(300):
        a = rng.uniform(0.5, 4.0)
        b = np.sort(rng.uniform(0.05, 1.0, size=3))
        while len(set(b)) < 3:
            b = np.sort(rng.uniform(0.05, 1.0, size=3))
        theta = np.concatenate([[a], b])
        rho_parts = rng.uniform(0.0, 0.3, size=3)
        u = a * rho_parts
        lower, upper = model.eigen_bounds(u, theta)
        lams = np.linalg.eigvals(jacobian(model, u, theta)).real
        assert lams.min() >= lower - 1e-10
        assert lams.max() <= upper + 1e-10


def test_single_class_eigenvalue_is_tight():
    model = TrafficModel(n_classes=1, free_flow_speed=1.0)
    theta = np.array([1.0, 0.8])
    u = np.array([0.3])
    lower, upper = model.eigen_bounds(u, theta)
    exact = np.linalg.eigvals(jacobian(model, u, theta)).real[0]
    # for one class the lower bound is the exact characteristic speed
    assert lower == pytest.approx(exact, abs=1e-14)
    assert upper >= exact


def test_lambda1_sign():
    model = TrafficModel()
    assert model.lambda1_sign(np.array([0.1, 0.1, 0.1]), THETA3) > 0
    assert model.lambda1_sign(np.array([0.3, 0.3, 0.1]), THETA3) < 0
    assert model.lambda1_sign(np.array([0.2, 0.2, 0.1]), THETA3) == 0


def test_delta_map_reference_example():
    # one class, lane-capacity ratio 2, upstream density 0.3
    model = TrafficModel(n_classes=1, free_flow_speed=1.0, rho_jam=1.0)
    theta_from = np.array([2.0, 0.5])
    theta_to = np.array([1.0, 0.5])
    u = np.array([2.0 * 0.3])
    mapped, gamma = model.delta_map(u, theta_from, theta_to, DEMAND)
    assert gamma == pytest.approx(25.0 / 42.0, abs=1e-14)
    assert mapped[0] == pytest.approx(0.5, abs=1e-12)
    # mapped flow equals the admitted fraction of the upstream flow
    f_from = model.flux(u, theta_from)
    f_mapped = model.flux(mapped, theta_to)
    assert f_mapped[0] == pytest.approx(gamma * f_from[0], abs=1e-14)


def brute_force_gamma(model, u, theta_from, theta_to, n_grid=200001):
    a_from, b_from = theta_from[0], theta_from[1:]
    a_to, b_to = theta_to[0], theta_to[1:]
    rho = u.sum() / a_from
    v_from = model.velocity(rho)
    alpha = (b_from * a_from) / (b_to * a_to)
    inflow = v_from * float(alpha @ (u / a_from))
    if inflow <= 0:
        return 1.0
    grid = np.linspace(0.0, model.rho_jam, n_grid)
    achievable = grid * model.velocity(grid) / inflow
    return float(min(1.0, achievable.max()))


def test_delta_map_gamma_matches_brute_force():
    model = TrafficModel()
    rng = np.random.default_rng(3)
    for _ in range(50):
        a_from = rng.uniform(0.5, 3.0)
        a_to = rng.uniform(0.5, 3.0)
        b_from = np.sort(rng.uniform(0.1, 1.0, size=3))
        b_to = np.sort(rng.uniform(0.1, 1.0, size=3))
        theta_from = np.concatenate([[a_from], b_from])
        theta_to = np.concatenate([[a_to], b_to])
        u = a_from * rng.uniform(0.0, 0.32, size=3)
        _, gamma = model.delta_map(u, theta_from, theta_to, DEMAND)
        oracle = brute_force_gamma(model, u, theta_from, theta_to)
        assert gamma == pytest.approx(oracle, abs=1e-9)


@given(
    rho=st.lists(st.floats(0.001, 0.3), min_size=3, max_size=3),
    a_from=st.floats(0.5, 3.0),
    a_to=st.floats(0.5, 3.0),
    side=st.sampled_from([DEMAND, SUPPLY]),
)
@settings(max_examples=150, deadline=None)
def test_delta_map_flux_identity(rho, a_from, a_to, side):
    model = TrafficModel()
    theta_from = np.array([a_from, 0.5, 0.75, 1.0])
    theta_to = np.array([a_to, 0.25, 0.375, 0.5])
    u = a_from * np.asarray(rho)
    mapped, gamma = model.delta_map(u, theta_from, theta_to, side)
    f_from = model.flux(u, theta_from)
    f_mapped = model.flux(mapped, theta_to)
    # each class carries exactly the admitted flow fraction
    assert np.allclose(f_mapped, gamma * f_from, atol=1e-12)
    total = mapped.sum() / a_to
    assert -1e-12 <= total <= model.rho_jam + 1e-12


def test_delta_map_root_choice_preserves_wave_direction():
    model = TrafficModel()
    theta_from = np.array([2.0, 0.5, 0.75, 1.0])
    theta_to = np.array([1.0, 0.5, 0.75, 1.0])
    # free-flowing state keeps a free-flowing image, congested keeps congested
    free = 2.0 * np.array([0.02, 0.03, 0.01])
    congested = 2.0 * np.array([0.25, 0.2, 0.25])
    for u, expect in ((free, 1), (congested, -1)):
        if model.lambda1_sign(u, theta_from) != expect:
            continue
        mapped, gamma = model.delta_map(u, theta_from, theta_to, SUPPLY)
        if gamma == 1.0:
            total = mapped.sum() / theta_to[0]
            assert np.sign(model.rho_crit - total) == expect


def test_delta_map_tie_rule_at_capacity():
    # when the admitted flow hits capacity the image sits at critical density
    model = TrafficModel(n_classes=1, free_flow_speed=1.0, rho_jam=1.0)
    theta_from = np.array([2.0, 0.5])
    theta_to = np.array([1.0, 0.5])
    u = np.array([2.0 * 0.3])
    for side in (DEMAND, SUPPLY):
        mapped, gamma = model.delta_map(u, theta_from, theta_to, side)
        assert gamma < 1.0
        assert mapped[0] == pytest.approx(model.rho_crit, abs=1e-12)


def test_delta_map_jammed_road():
    model = TrafficModel()
    theta_from = np.array([1.0, 0.5, 0.75, 1.0])
    theta_to = np.array([2.0, 0.25, 0.375, 0.5])
    u = np.array([0.5, 0.3, 0.2])  # total density exactly rho_jam
    mapped, gamma = model.delta_map(u, theta_from, theta_to, SUPPLY)
    assert gamma == 1.0
    total = mapped.sum() / theta_to[0]
    assert total == pytest.approx(model.rho_jam, abs=1e-14)
    # continuity: a slightly unjammed road maps almost identically
    u_near = u * (1.0 - 1e-9)
    mapped_near, _ = model.delta_map(u_near, theta_from, theta_to, SUPPLY)
    assert np.allclose(mapped_near, mapped, atol=1e-4)


def test_delta_map_empty_road():
    model = TrafficModel()
    u = np.zeros(3)
    theta_to = np.array([2.0, 0.25, 0.375, 0.5])
    mapped, gamma = model.delta_map(u, THETA3, theta_to, DEMAND)
    assert np.array_equal(mapped, np.zeros(3))
    assert gamma == 1.0


def test_delta_map_identity_when_parameters_match():
    model = TrafficModel()
    u = np.array([0.11, 0.07, 0.05])
    mapped, gamma = model.delta_map(u, THETA3, THETA3.copy(), DEMAND)
    assert np.array_equal(mapped, u)
    assert gamma == 1.0


def test_check_theta_rejects_bad_parameters():
    model = TrafficModel()
    with pytest.raises(ConfigError):
        model.check_theta(np.array([[1.0, 0.5, 0.75]]))  # wrong arity
    with pytest.raises(ConfigError):
        model.check_theta(np.array([[1.0, 0.75, 0.5, 1.0]]))  # not increasing
    with pytest.raises(ConfigError):
        model.check_theta(np.array([[1.0, 0.5, 0.75, 1.5]]))  # factor above 1
    with pytest.raises(ConfigError):
        model.check_theta(np.array([[-1.0, 0.5, 0.75, 1.0]]))  # lane count
    model.check_theta(THETA3[None, :])


def test_check_states_enforces_density_range():
    model = TrafficModel()
    theta = THETA3[None, :]
    with pytest.raises(InadmissibleStateError):
        model.check_states(np.array([[-0.01, 0.1, 0.1]]), theta)
    with pytest.raises(InadmissibleStateError):
        model.check_states(np.array([[0.5, 0.5, 0.2]]), theta)
    # tiny negative undershoot within tolerance is accepted
    model.check_states(np.array([[-1e-13, 0.1, 0.1]]), theta)


def test_riemann_case_table():
    assert set(RIEMANN_CASES) == {"4a", "4b", "5a", "5b"}
    case = RIEMANN_CASES["4a"]
    assert case.lane_ratio == 2.0
    assert case.x0_fraction == pytest.approx(0.3)
    assert case.theta_bar_rule == "right"
    assert RIEMANN_CASES["4b"].theta_bar_rule == "left"


def test_observables_are_lane_densities():
    model = TrafficModel()
    theta = np.array([[2.0, 0.5, 0.75, 1.0]])
    u = np.array([[0.2, 0.4, 0.6]])
    obs = model.observables(u, theta)
    assert np.allclose(obs, [[0.1, 0.2, 0.3]])
    assert model.observable_names == ("rho_1", "rho_2", "rho_3")
