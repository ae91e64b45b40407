import math

import numpy as np
import pytest

from matterwave import dynamics as dyn

FC = dyn.ForceCoefficients


def params(C=0.0, D=0.0, omega=1.0, Q0=1.0):
    return dyn.OscillatorParams(omega=omega, Q0=Q0, coeffs=FC(C, D))


FIG1 = params(C=0.01)
FIG2 = params(C=0.1)


class TestAcceleration:
    def test_rest_at_equilibrium(self):
        assert dyn.acceleration(1.0, params()) == 0.0

    def test_fig1_value(self):
        assert dyn.acceleration(1.0, FIG1) == pytest.approx(0.01, rel=1e-15)

    def test_cancellation(self):
        p = params(C=8.0, D=-4.0, omega=0.0, Q0=2.0)
        assert dyn.acceleration(2.0, p) == pytest.approx(0.0, abs=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            dyn.acceleration(0.0, FIG1)


class TestEffectivePotential:
    def test_zero_at_equilibrium(self):
        assert dyn.effective_potential(1.0, params()) == 0.0

    def test_fig2_start(self):
        assert dyn.effective_potential(1.8, FIG2) == pytest.approx(0.335432, abs=1e-6)

    def test_gradient_matches_acceleration(self):
        rng = np.random.default_rng(2)
        h = 1e-6
        for _ in range(50):
            p = params(C=float(rng.uniform(0, 1)), D=float(rng.uniform(-1, 1)),
                       omega=float(rng.uniform(0.1, 2)), Q0=float(rng.uniform(0.5, 3)))
            Q = float(rng.uniform(0.3, 5.0))
            fd = -(dyn.effective_potential(Q + h, p)
                   - dyn.effective_potential(Q - h, p)) / (2 * h)
            assert abs(fd - dyn.acceleration(Q, p)) < 1e-8 * max(1.0, abs(fd))


class TestIntegrate:
    def test_pure_harmonic(self):
        tr = dyn.integrate(dyn.WallState(0.0, 1.1, 0.0), params(), 20 * math.pi, 1e-10)
        exact = 1.0 + 0.1 * np.cos(tr.t)
        assert np.max(np.abs(tr.Q - exact)) < 1e-8

    def test_fig1_statistics(self):
        tr = dyn.integrate(dyn.WallState(0.0, 1.1, 0.0), FIG1, 50.0, 1e-10)
        assert tr.stats.q_max == 1.1
        assert tr.stats.q_min == pytest.approx(0.9195, abs=1e-3)
        assert tr.stats.midpoint == pytest.approx(1.0097, abs=1e-3)
        assert tr.stats.midpoint > 1.0

    def test_fig2_statistics(self):
        tr = dyn.integrate(dyn.WallState(0.0, 1.8, 0.0), FIG2, 50.0, 1e-10)
        assert tr.stats.q_min == pytest.approx(0.4921, abs=1e-3)

    def test_energy_drift_contract(self):
        for p, Qi in [(FIG1, 1.1), (FIG2, 1.8),
                      (params(C=0.01, D=2.0, Q0=3.0), 3.1),
                      (params(C=0.01, D=-2.0, Q0=3.0), 3.1),
                      (params(C=0.1, omega=0.1, Q0=3.0), 3.1)]:
            tr = dyn.integrate(dyn.WallState(0.0, Qi, 0.0), p, 100.0, 1e-10)
            assert tr.stats.energy_drift < 100 * 1e-10

    def test_time_reversal(self):
        tr = dyn.integrate(dyn.WallState(0.0, 1.1, 0.0), FIG1, 50.0, 1e-10)
        back = dyn.integrate(
            dyn.WallState(0.0, float(tr.Q[-1]), -float(tr.Qdot[-1])),
            FIG1, 50.0, 1e-10)
        assert abs(float(back.Q[-1]) - 1.1) < 1e-6
        assert abs(float(back.Qdot[-1])) < 1e-6

    def test_sampling_grid(self):
        tr = dyn.integrate(dyn.WallState(0.0, 1.1, 0.0), FIG1, 1.0, 1e-10,
                           sample_dt=0.25)
        np.testing.assert_allclose(tr.t, [0.0, 0.25, 0.5, 0.75, 1.0], atol=0)

    def test_trajectory_invariants(self):
        tr = dyn.integrate(dyn.WallState(0.0, 1.8, 0.0), FIG2, 30.0, 1e-10)
        assert np.all(np.diff(tr.t) > 0)
        assert np.all(tr.Q > 0)

    def test_singularity_abort(self):
        # free oscillator with amplitude crossing zero
        with pytest.raises(dyn.SingularityError) as exc:
            dyn.integrate(dyn.WallState(0.0, 3.0, 0.0), params(), 50.0, 1e-10)
        assert exc.value.last_state.Q > 0.0
        assert 0.0 < exc.value.last_state.t < 50.0

    def test_bad_args(self):
        with pytest.raises(ValueError):
            dyn.integrate(dyn.WallState(0.0, 1.0, 0.0), FIG1, 0.0, 1e-10)
        with pytest.raises(ValueError):
            dyn.integrate(dyn.WallState(0.0, 1.0, 0.0), FIG1, 1.0, -1e-10)


class TestEquilibrium:
    def test_fig1(self):
        q = dyn.equilibrium(FIG1)
        assert q == pytest.approx(1.0097, abs=1e-3)
        assert abs(dyn.acceleration(q, FIG1)) < 1e-12

    def test_fig5_repulsive(self):
        q = dyn.equilibrium(params(C=0.01, D=2.0, Q0=3.0))
        assert q == pytest.approx(3.1961, abs=1e-3)

    def test_fig5_attractive(self):
        q = dyn.equilibrium(params(C=0.01, D=-2.0, Q0=3.0))
        assert q == pytest.approx(2.7327, abs=1e-3)
        assert q < 3.0

    def test_monotone_in_D(self):
        roots = [dyn.equilibrium(params(C=0.01, D=d, Q0=3.0))
                 for d in (-2.0, -0.5, 0.0, 0.5, 2.0)]
        assert all(a < b for a, b in zip(roots, roots[1:]))

    def test_Q0_scale_effect(self):
        # same drive, larger box: smaller equilibrium shift
        shift1 = dyn.equilibrium(params(C=0.1, omega=0.1, Q0=1.0)) - 1.0
        shift3 = dyn.equilibrium(params(C=0.1, omega=0.1, Q0=3.0)) - 3.0
        assert 0.0 < shift3 < shift1

    def test_no_stable_root(self):
        with pytest.raises(dyn.NoStableRootError):
            dyn.equilibrium(params(C=0.0, D=-50.0, Q0=1.0))

    def test_pure_harmonic(self):
        assert dyn.equilibrium(params()) == 1.0


class TestTurningPoints:
    def test_harmonic_exact(self):
        p = params(omega=2.0, Q0=1.5)
        e = dyn.energy(1.8, 0.0, p)
        lo, hi = dyn.turning_points(e, p)
        assert lo == pytest.approx(1.2, abs=1e-12)
        assert hi == pytest.approx(1.8, abs=1e-12)

    def test_fig1_energy(self):
        e = dyn.energy(1.1, 0.0, FIG1)
        lo, hi = dyn.turning_points(e, FIG1)
        assert lo == pytest.approx(0.9195, abs=1e-3)
        assert hi == pytest.approx(1.1, abs=1e-12)
        assert abs(dyn.effective_potential(lo, FIG1) - e) < 1e-12

    def test_fig2_energy(self):
        e = dyn.energy(1.8, 0.0, FIG2)
        lo, hi = dyn.turning_points(e, FIG2)
        assert lo == pytest.approx(0.4921, abs=1e-3)
        assert hi == pytest.approx(1.8, abs=1e-12)

    def test_below_minimum(self):
        with pytest.raises(ValueError):
            dyn.turning_points(-1.0, FIG1)
