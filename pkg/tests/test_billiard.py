import math

import numpy as np
import pytest

from matterwave import billiard as bl

FIG4 = dict(m=1.0, M=1000.0, omega=math.sqrt(0.06))


def fig4_setup(Q0):
    p = bl.BilliardParams(Q0=Q0, **FIG4)
    init = bl.BilliardState(t=0.0, q=0.0, v=25.0, Q=Q0 + 0.1, V=0.0)
    return p, init


class TestCollide:
    def test_equal_mass_exchange(self):
        assert bl.collide(1.0, 0.0, 1.0, 1.0) == (0.0, 1.0)

    def test_heavy_wall(self):
        v2, V2 = bl.collide(25.0, 0.0, 1.0, 1000.0)
        assert v2 == pytest.approx(-24.950050, abs=1e-6)
        assert V2 == pytest.approx(0.049950, abs=1e-6)

    def test_zero_relative_velocity(self):
        assert bl.collide(-3.0, -3.0, 2.0, 17.0) == (-3.0, -3.0)

    def test_conservation_random(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            v, V = rng.uniform(-30, 30, size=2)
            m, M = rng.uniform(0.1, 100, size=2)
            v2, V2 = bl.collide(v, V, m, M)
            assert m * v + M * V == pytest.approx(m * v2 + M * V2, rel=1e-12, abs=1e-12)
            ke = 0.5 * m * v**2 + 0.5 * M * V**2
            assert ke == pytest.approx(0.5 * m * v2**2 + 0.5 * M * V2**2, rel=1e-12)


class TestSimulate:
    def test_static_wall_limit(self):
        # huge mass ratio: speed stays constant, impacts land every 2 Q / v
        p = bl.BilliardParams(m=1.0, M=1e9, omega=5.0, Q0=1.0)
        init = bl.BilliardState(t=0.0, q=0.0, v=10.0, Q=1.0, V=0.0)
        tr = bl.simulate(init, p, 100 * 2 * 1.0 / 10.0, sample_dt=None)
        impacts = [ev for ev in tr.events if ev.kind == "impact"]
        assert len(impacts) >= 100
        speeds = [abs(ev.v_after) for ev in tr.events]
        assert (max(speeds) - min(speeds)) / 10.0 < 1e-6
        gaps = np.diff([ev.t for ev in impacts])
        np.testing.assert_allclose(gaps, 2 * 1.0 / 10.0, rtol=1e-6)

    def test_fig4b_energy_and_shift(self):
        p, init = fig4_setup(1.0)
        tr = bl.simulate(init, p, 100.0, sample_dt=0.01)
        assert tr.energy_drift < 1e-9
        # pressure pushes the oscillation center right of Q0
        assert float(tr.Q.mean()) > p.Q0

    def test_per_event_conservation(self):
        p, init = fig4_setup(1.0)
        tr = bl.simulate(init, p, 50.0, sample_dt=None)
        assert tr.n_impacts > 100
        for ev in tr.events:
            if ev.kind != "impact":
                continue
            mom_b = p.m * ev.v_before + p.M * ev.V_before
            mom_a = p.m * ev.v_after + p.M * ev.V_after
            ke_b = 0.5 * p.m * ev.v_before**2 + 0.5 * p.M * ev.V_before**2
            ke_a = 0.5 * p.m * ev.v_after**2 + 0.5 * p.M * ev.V_after**2
            assert abs(mom_a - mom_b) <= 1e-12 * max(abs(mom_b), 1.0)
            assert abs(ke_a - ke_b) <= 1e-12 * ke_b

    def test_ordering_invariant(self):
        p, init = fig4_setup(3.0)
        tr = bl.simulate(init, p, 50.0, sample_dt=0.01)
        assert np.all(tr.q >= 0.0)
        assert np.all(tr.q <= tr.Q + 1e-9)
        assert np.all(tr.Q > 0.0)

    def test_post_impact_speeds_match_collide(self):
        p, init = fig4_setup(1.0)
        tr = bl.simulate(init, p, 5.0, sample_dt=None)
        ev = next(e for e in tr.events if e.kind == "impact")
        v2, V2 = bl.collide(ev.v_before, ev.V_before, p.m, p.M)
        assert ev.v_after == v2
        assert ev.V_after == V2

    def test_event_budget_error(self):
        p, init = fig4_setup(1.0)
        with pytest.raises(bl.EventLimitError) as exc:
            bl.simulate(init, p, 100.0, sample_dt=None, max_events=10)
        st = exc.value.last_state
        assert 0.0 <= st.q <= st.Q

    def test_bad_args(self):
        p, init = fig4_setup(1.0)
        with pytest.raises(ValueError):
            bl.simulate(init, p, 0.0)
        with pytest.raises(ValueError):
            bl.BilliardState(t=0.0, q=2.0, v=1.0, Q=1.0, V=0.0)
        with pytest.raises(ValueError):
            bl.BilliardParams(m=1.0, M=0.0, omega=1.0, Q0=1.0)


class TestFixedWallPressure:
    def test_converges_to_analytic(self):
        horizon = 1000 * 2 * 3.0 / 25.0
        val = bl.fixed_wall_pressure(25.0, 3.0, 1.0, horizon)
        assert val == pytest.approx(625.0 / 3.0, rel=5e-3)

    def test_inverse_Q_scaling(self):
        a = bl.fixed_wall_pressure(25.0, 3.0, 1.0, 1e5)
        b = bl.fixed_wall_pressure(25.0, 6.0, 1.0, 1e5)
        assert b / a == pytest.approx(0.5, rel=1e-3)

    def test_speed_squared_scaling(self):
        a = bl.fixed_wall_pressure(10.0, 3.0, 1.0, 1e5)
        b = bl.fixed_wall_pressure(20.0, 3.0, 1.0, 1e5)
        assert b / a == pytest.approx(4.0, rel=1e-3)

    def test_error_within_one_impact_share(self):
        v, Q, m, horizon = 7.0, 2.0, 1.5, 123.4
        val = bl.fixed_wall_pressure(v, Q, m, horizon)
        assert abs(val - m * v * v / Q) <= 2 * m * v / horizon
