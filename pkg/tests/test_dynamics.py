import math

import numpy as np
import pytest

from dicke_sim.dynamics.analytic import (
    analytic_trajectory,
    asymptotic_state,
    evolve_analytic,
    single_excitation_elements,
)
from dicke_sim.dynamics.lindblad import (
    collective_rates,
    evolve_exact,
    evolve_numeric,
    evolve_numeric_batch,
    lindblad_rhs,
    liouvillian,
    rk4_step,
)
from dicke_sim.dynamics.models import DecayParams, Trajectory
from dicke_sim.dynamics.propagate import evolve, numeric_sampling, uniform_times
from dicke_sim.errors import DomainError, IntegrationError, StateClassError
from dicke_sim.qstate.models import StateClass, TwoQubitState
from dicke_sim.qstate.states import (
    class12_state,
    class22_state,
    classify,
    random_class12_state,
    random_class22_state,
)


def random_general_state(rng) -> TwoQubitState:
    ginibre = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = ginibre @ ginibre.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return TwoQubitState(rho / np.trace(rho).real)


def doubly_excited() -> TwoQubitState:
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    return TwoQubitState(rho)


class TestDecayParams:
    """Tests for the decay parameters."""

    @pytest.mark.parametrize("kwargs", [
        {"g": 1.0},
        {"g": 1.5},
        {"g": -0.1},
        {"g": math.nan},
        {"gamma0": 0.0},
        {"gamma0": -1.0},
    ])
    def test_rejects_out_of_domain(self, kwargs):
        with pytest.raises(DomainError):
            DecayParams(**kwargs)

    def test_time_scaling(self):
        """API times are gamma0*t unless absolute_time is set."""
        scaled = DecayParams(gamma0=2.0, g=0.5)
        absolute = DecayParams(gamma0=2.0, g=0.5, absolute_time=True)
        assert scaled.scaled(1.5) == 1.5
        assert absolute.scaled(1.5) == 3.0
        assert absolute.api_time(3.0) == 1.5
        assert absolute.gamma == 1.0

    def test_dict_round_trip(self):
        params = DecayParams(gamma0=2.0, g=0.25, absolute_time=True)
        assert DecayParams.from_dict(params.to_dict()) == params


class TestLindbladGenerator:
    """Tests for the master-equation right-hand side."""

    def test_ground_state_is_stationary(self, ground, half_coupled):
        assert np.allclose(lindblad_rhs(ground, half_coupled), 0.0, atol=1e-15)

    def test_doubly_excited_decays_at_twice_gamma0(self):
        for g in (0.0, 0.5):
            rhs = lindblad_rhs(doubly_excited(), DecayParams(gamma0=1.0, g=g))
            assert rhs[0, 0].real == pytest.approx(-2.0)

    def test_symmetric_coherence_rate(self, psi_plus, half_coupled):
        """d rho23/dt of Psi+ at g = 0.5 is -(1 + g)/2."""
        assert lindblad_rhs(psi_plus, half_coupled)[1, 2] == pytest.approx(-0.75)

    def test_traceless_and_hermitian(self, rng, half_coupled):
        rhs = lindblad_rhs(random_general_state(rng), half_coupled)
        assert abs(np.trace(rhs)) < 1e-14
        assert np.allclose(rhs, rhs.conj().T, atol=1e-14)

    def test_liouvillian_matches_rhs(self, rng, half_coupled):
        rho = random_general_state(rng)
        generator = liouvillian(half_coupled)
        assert np.allclose(generator @ rho.elements.reshape(16),
                           lindblad_rhs(rho, half_coupled).reshape(16), atol=1e-14)

    def test_collective_rates(self):
        assert collective_rates(DecayParams(gamma0=2.0, g=0.5)) == (3.0, 1.0)

    def test_rk4_step_scalar(self):
        """One step of y' = -y agrees with exp(-h) to fifth order."""
        y = rk4_step(lambda v: -v, np.array([1.0]), 0.1)
        assert y[0] == pytest.approx(math.exp(-0.1), abs=1e-7)


class TestNumericPropagator:
    """Tests for the RK4 integrator."""

    def test_ground_state_constant(self, ground, half_coupled):
        trajectory = evolve_numeric(ground, half_coupled, t_end=2.0, n_steps=200)
        assert all(s.allclose(ground, atol=1e-15) for s in trajectory.states)
        assert trajectory.method == "numeric"

    def test_psi_plus_matches_exponential(self, psi_plus, half_coupled):
        """rho23 = exp(-1.5)/2 and rho44 = 1 - exp(-1.5) at t = 1, g = 0.5."""
        final = evolve_numeric(psi_plus, half_coupled, t_end=1.0, n_steps=1000).final_state
        assert final.rho23 == pytest.approx(0.5 * math.exp(-1.5), abs=1e-10)
        assert final.rho23.real == pytest.approx(0.1115651, abs=1e-7)
        assert final.rho44 == pytest.approx(0.7768698, abs=1e-7)

    def test_preserves_trace_and_class(self, rng, half_coupled):
        rho0 = random_class22_state(rng)
        trajectory = evolve_numeric(rho0, half_coupled, t_end=5.0, n_steps=5000, sample_every=50)
        assert trajectory.max_trace_error() <= 1e-9
        assert trajectory.min_eigenvalue() >= -1e-8
        assert all(classify(s) == StateClass.CLASS22 for s in trajectory.states)

    def test_general_state_relaxes_to_ground(self, rng):
        params = DecayParams(g=0.0)
        rho0 = random_general_state(rng)
        final = evolve_numeric(rho0, params, t_end=40.0, n_steps=40000,
                               sample_every=40000).final_state
        assert final.allclose(asymptotic_state(params), atol=1e-8)

    def test_batch_sampling(self, psi_plus, ground, half_coupled):
        """Samples every third step plus the final step."""
        times, states = evolve_numeric_batch([psi_plus, ground], half_coupled,
                                             t_end=1.0, n_steps=10, sample_every=3)
        assert states.shape == (5, 2, 4, 4)
        assert times == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])

    def test_batch_argument_checks(self, psi_plus, half_coupled):
        with pytest.raises(ValueError):
            evolve_numeric_batch([psi_plus], half_coupled, t_end=1.0, n_steps=0)
        with pytest.raises(ValueError):
            evolve_numeric_batch([psi_plus], half_coupled, t_end=0.0, n_steps=10)

    def test_step_too_large(self, psi_plus, half_coupled):
        """A single step of length 10 leaves the state space."""
        with pytest.raises(IntegrationError):
            evolve_numeric(psi_plus, half_coupled, t_end=10.0, n_steps=1)

    def test_absolute_time(self, psi_plus):
        """gamma0 = 2 at raw time 0.5 is gamma0*t = 1."""
        raw = DecayParams(gamma0=2.0, g=0.5, absolute_time=True)
        scaled = DecayParams(gamma0=1.0, g=0.5)
        a = evolve_numeric(psi_plus, raw, t_end=0.5, n_steps=500).final_state
        b = evolve_numeric(psi_plus, scaled, t_end=1.0, n_steps=500).final_state
        assert a.allclose(b, atol=1e-12)

    def test_default_step_from_config(self, psi_plus, half_coupled, monkeypatch):
        monkeypatch.setenv("DICKE_RK4_STEP", "0.01")
        trajectory = evolve_numeric(psi_plus, half_coupled, t_end=1.0)
        assert len(trajectory) == 101


class TestAnalyticPropagator:
    """Tests for the closed-form single-excitation solution."""

    def test_zero_time_returns_input(self, psi_plus, half_coupled):
        assert evolve_analytic(psi_plus, half_coupled, 0.0) is psi_plus

    def test_antisymmetric_state(self, psi_minus):
        """Psi- decays at gamma0 - gamma."""
        rho = evolve_analytic(psi_minus, DecayParams(g=0.75), 2.0)
        assert rho.rho23 == pytest.approx(-0.5 * math.exp(-0.5), abs=1e-14)
        assert rho.rho44 == pytest.approx(1.0 - math.exp(-0.5), abs=1e-14)

    def test_matches_numeric(self, half_coupled):
        rho0 = class22_state(0.7, 0.1, 0.2, 0.2j)
        analytic = evolve_analytic(rho0, half_coupled, 0.8)
        numeric = evolve_numeric(rho0, half_coupled, t_end=0.8, n_steps=8000).final_state
        assert analytic.allclose(numeric, atol=1e-8)

    def test_matches_exact_for_random_states(self, rng):
        params = DecayParams(gamma0=1.0, g=0.8)
        for _ in range(10):
            rho0 = random_class12_state(rng)
            for t in (0.3, 1.7, 6.0):
                assert evolve_analytic(rho0, params, t).allclose(
                    evolve_exact(rho0, params, t), atol=1e-10)

    def test_ground_coherences(self):
        """rho24 and rho34 follow the half-rate solution."""
        params = DecayParams(g=0.6)
        rho0 = class12_state(0.3, 0.3, 0.4, 0.1, rho24=0.1, rho34=-0.1j)
        assert evolve_analytic(rho0, params, 1.2).allclose(
            evolve_exact(rho0, params, 1.2), atol=1e-10)

    def test_semigroup(self, rng, half_coupled):
        rho0 = random_class12_state(rng)
        stepped = evolve_analytic(evolve_analytic(rho0, half_coupled, 0.7), half_coupled, 1.3)
        assert stepped.allclose(evolve_analytic(rho0, half_coupled, 2.0), atol=1e-10)

    def test_uncoupled_atoms(self):
        """At g = 0 the coherence decays as exp(-t)."""
        rho0 = class22_state(0.4, 0.4, 0.2, 0.15 + 0.2j)
        rho = evolve_analytic(rho0, DecayParams(g=0.0), 1.3)
        assert rho.rho23 == pytest.approx(math.exp(-1.3) * (0.15 + 0.2j), abs=1e-15)

    def test_long_time_limit(self, rng):
        params = DecayParams(g=0.25)
        rho = evolve_analytic(random_class12_state(rng), params, 30.0)
        assert rho.rho44 >= 1.0 - 1e-8

    def test_rejects_general_state(self, rng, half_coupled):
        with pytest.raises(StateClassError):
            evolve_analytic(random_general_state(rng), half_coupled, 1.0)
        with pytest.raises(StateClassError):
            analytic_trajectory(doubly_excited(), half_coupled, [0.0, 1.0])

    def test_rejects_negative_time(self, psi_plus):
        with pytest.raises(ValueError):
            single_excitation_elements(psi_plus.elements, -1.0, 0.5)

    def test_asymptotic_state(self, half_coupled):
        assert asymptotic_state(half_coupled).rho44 == 1.0


class TestAnalyticLongTimes:
    """Closed-form evolution far out on the subradiant tail."""

    @pytest.mark.parametrize("t", [800.0, 1000.0])
    def test_antisymmetric_tail_is_finite(self, psi_minus, t):
        params = DecayParams(g=0.99)
        rho = evolve_analytic(psi_minus, params, t)
        assert np.all(np.isfinite(rho.elements))
        expected = 0.5 * math.exp(-0.01 * t)
        assert rho.element(2, 2).real == pytest.approx(expected, rel=1e-12)
        assert rho.rho23 == pytest.approx(-expected, rel=1e-12)

    def test_symmetric_pair_has_no_noise_floor(self, psi_plus):
        """Psi+ populations keep relative accuracy after decaying far below 1e-16."""
        params = DecayParams(g=0.5)
        rho = evolve_analytic(psi_plus, params, 40.0)
        assert rho.element(2, 2).real == pytest.approx(0.5 * math.exp(-60.0), rel=1e-12)
        assert rho.element(3, 3).real == pytest.approx(0.5 * math.exp(-60.0), rel=1e-12)


class TestExactPropagator:
    """Tests for the matrix-exponential propagator."""

    def test_matches_numeric_for_general_state(self, rng, half_coupled):
        rho0 = random_general_state(rng)
        numeric = evolve_numeric(rho0, half_coupled, t_end=1.5, n_steps=3000).final_state
        assert evolve_exact(rho0, half_coupled, 1.5).allclose(numeric, atol=1e-8)

    def test_doubly_excited_population(self, half_coupled):
        rho = evolve_exact(doubly_excited(), half_coupled, 0.4)
        assert rho.element(1, 1).real == pytest.approx(math.exp(-0.8), abs=1e-12)


class TestTrajectory:
    """Tests for sampled trajectories and method selection."""

    def test_times_must_start_at_zero(self, psi_plus, half_coupled):
        with pytest.raises(ValueError):
            Trajectory(params=half_coupled, times=[0.5], states=[psi_plus])

    def test_times_must_increase(self, psi_plus, half_coupled):
        with pytest.raises(ValueError):
            Trajectory(params=half_coupled, times=[0.0, 0.0], states=[psi_plus, psi_plus])

    def test_samples_carry_scalars(self, psi_plus, half_coupled):
        trajectory = analytic_trajectory(psi_plus, half_coupled, [0.0, 1.0])
        first, last = trajectory.samples
        assert first.concurrence == pytest.approx(1.0, abs=1e-12)
        assert first.m == pytest.approx(2.0, abs=1e-12)
        assert last.concurrence == pytest.approx(math.exp(-1.5), abs=1e-12)
        assert trajectory.element_series(4, 4)[1].real == pytest.approx(1.0 - math.exp(-1.5))

    def test_dict_round_trip(self, psi_plus, half_coupled):
        trajectory = analytic_trajectory(psi_plus, half_coupled, [0.0, 0.5, 1.0])
        restored = Trajectory.from_dict(trajectory.to_dict())
        assert restored.method == "analytic"
        assert restored.times == trajectory.times
        assert restored.final_state.allclose(trajectory.final_state, atol=0.0)

    def test_uniform_times(self):
        assert uniform_times(1.0, 3) == [0.0, 0.5, 1.0]
        with pytest.raises(ValueError):
            uniform_times(1.0, 1)
        with pytest.raises(ValueError):
            uniform_times(-1.0, 10)

    def test_numeric_sampling(self, half_coupled):
        assert numeric_sampling(half_coupled, 10.0, 1001) == (10000, 10)

    def test_auto_method(self, rng, psi_plus, half_coupled):
        assert evolve(psi_plus, half_coupled, 1.0, 11).method == "analytic"
        assert evolve(random_general_state(rng), half_coupled, 1.0, 11).method == "numeric"
        with pytest.raises(ValueError):
            evolve(psi_plus, half_coupled, 1.0, 11, method="euler")

    def test_forced_numeric_agrees_with_analytic(self, psi_plus, half_coupled):
        analytic = evolve(psi_plus, half_coupled, 2.0, 21, method="analytic")
        numeric = evolve(psi_plus, half_coupled, 2.0, 21, method="numeric")
        assert len(numeric) == 21
        for a, b in zip(analytic.states, numeric.states):
            assert a.allclose(b, atol=1e-10)
