"""Acceptance suite: one test per criterion, each printing a pass/fail
line (run with ``pytest tests/test_acceptance.py -v -s``)."""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from matterwave import atom_box as ab
from matterwave import billiard as bl
from matterwave import dynamics as dyn
from matterwave import gp_modes as gp
from matterwave import scenario as sc
from matterwave import specfun as sf


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number:2d}: {description}")
        raise
    print(f"[PASS] criterion {number:2d}: {description}")


def test_criterion_01_special_function_suite():
    with criterion(1, "special-function identities and oracles (< 5 s)"):
        t0 = time.perf_counter()
        rng = np.random.default_rng(101)

        for m in rng.uniform(1e-6, 1 - 1e-6, size=64):
            legendre = (sf.ellip_E(m) * sf.ellip_K(1 - m)
                        + sf.ellip_E(1 - m) * sf.ellip_K(m)
                        - sf.ellip_K(m) * sf.ellip_K(1 - m))
            assert abs(legendre - math.pi / 2) < 1e-12

        ms = rng.uniform(0.0, 0.9999, size=1000)
        zs = rng.uniform(-15.0, 15.0, size=1000)
        for z, m in zip(zs, ms):
            sn, cn, dn = sf.jacobi_sn_cn_dn(z, m)
            assert abs(sn * sn + cn * cn - 1.0) < 1e-12
            assert abs(dn * dn + m * sn * sn - 1.0) < 1e-12

        for _ in range(128):
            m = float(rng.uniform(0.01, 0.98))
            z = float(rng.uniform(-4.0, 4.0))
            per = 4.0 * sf.ellip_K(m)
            assert abs(sf.jacobi_sn_cn_dn(z + per, m)[0]
                       - sf.jacobi_sn_cn_dn(z, m)[0]) < 1e-10

        kinds = {"sn2": (0, 2), "sn4": (0, 4), "cn2": (1, 2), "cn4": (1, 4)}
        for m in [0.01] + [0.1 * k for k in range(1, 10)] + [0.99]:
            K = sf.ellip_K(m)
            for kind, (comp, power) in kinds.items():
                numeric = sf.quad(
                    lambda z: sf.jacobi_sn_cn_dn(z, m)[comp] ** power,
                    0.0, K, 1e-11)
                assert abs(sf.power_integral(kind, m) - numeric) < 1e-10

        elapsed = time.perf_counter() - t0
        assert elapsed < 5.0, f"special-function suite took {elapsed:.2f} s"


def test_criterion_02_gp_convention_validation():
    with criterion(2, "condensate modes: normalization, boundary, residual"):
        for g in (1.0, -1.0, 5.0, -5.0):
            for j in (1, 2, 3):
                for Q in (1.0, 3.0):
                    mode = gp.build_mode(g, Q, j)
                    assert abs(gp.normalization(mode) - 1.0) < 1e-10
                    assert abs(gp.wavefunction(mode, 0.0)) < 1e-10
                    assert abs(gp.wavefunction(mode, Q)) < 1e-10
                    assert gp.gp_residual(mode) < 1e-8


def test_criterion_03_linear_limit_recovery():
    with criterion(3, "drive coefficients recover j^2 pi^2 and D -> 0 as g -> 0"):
        for j in (1, 2, 3):
            for sign in (1.0, -1.0):
                fc = gp.force_coefficients(sign * 1e-6, 1.0, j)
                assert abs(fc.C / (j * j * math.pi**2) - 1.0) < 1e-4
                assert abs(fc.D) < 1e-6


def test_criterion_04_atom_dynamics_fig1():
    with criterion(4, "fig1 preset: window, midpoint shift, drift, runtime"):
        t0 = time.perf_counter()
        tr = dyn.integrate(
            dyn.WallState(0.0, 1.1, 0.0),
            dyn.OscillatorParams(1.0, 1.0, dyn.ForceCoefficients(0.01, 0.0)),
            50.0, 1e-10)
        elapsed = time.perf_counter() - t0
        assert tr.stats.q_max == 1.1
        assert abs(tr.stats.q_min - 0.9195) < 1e-3
        assert abs(tr.stats.midpoint - 1.0097) < 1e-3
        assert tr.stats.midpoint > 1.0
        assert tr.stats.energy_drift < 1e-8
        assert elapsed < 1.0, f"fig1 integration took {elapsed:.2f} s"


def test_criterion_05_amplitude_effect_fig2():
    with criterion(5, "fig2b preset: sharpened dip above the harmonic mirror"):
        tr = dyn.integrate(
            dyn.WallState(0.0, 1.8, 0.0),
            dyn.OscillatorParams(1.0, 1.0, dyn.ForceCoefficients(0.1, 0.0)),
            50.0, 1e-10)
        assert abs(tr.stats.q_min - 0.4921) < 1e-3
        assert tr.stats.q_min > 0.2


def test_criterion_06_Q0_effect_fig3():
    with criterion(6, "equilibrium shift shrinks with the box size"):
        shifts = {}
        for q0 in (1.0, 3.0):
            p = dyn.OscillatorParams(0.1, q0, dyn.ForceCoefficients(0.1, 0.0))
            root = dyn.equilibrium(p)
            assert abs(dyn.acceleration(root, p)) < 1e-12
            shifts[q0] = root - q0
        assert 0.0 < shifts[3.0] < shifts[1.0]


def test_criterion_07_bec_equilibria_fig5():
    with criterion(7, "fig5 equilibria move with the interaction sign"):
        roots = {}
        for d in (2.0, 0.5, 0.0, -0.5, -2.0):
            p = dyn.OscillatorParams(1.0, 3.0, dyn.ForceCoefficients(0.01, d))
            roots[d] = dyn.equilibrium(p)
        assert abs(roots[2.0] - 3.1961) < 1e-3
        assert abs(roots[-2.0] - 2.7327) < 1e-3
        assert roots[-2.0] < roots[-0.5] < roots[0.0] < roots[0.5] < roots[2.0]


def _run_billiard_until(preset_name: str, min_impacts: int):
    cfg = sc.get_preset(preset_name)
    p = bl.BilliardParams(m=cfg.m_atom, M=cfg.M_wall, omega=cfg.omega,
                          Q0=cfg.Q0)
    state = bl.BilliardState(t=0.0, q=cfg.q_init, v=cfg.v_init,
                             Q=cfg.Q_init, V=cfg.Qdot_init)
    e0 = bl.total_energy(state, p)
    events = []
    drift = 0.0
    n_impacts = 0
    while n_impacts < min_impacts:
        offset = abs(bl.total_energy(state, p) - e0) / e0
        tr = bl.simulate(state, p, state.t + 1000.0, sample_dt=None)
        events.extend(tr.events)
        state = tr.final
        n_impacts += tr.n_impacts
        drift = max(drift, offset + tr.energy_drift)
    return p, events, drift


def test_criterion_08_billiard_conservation():
    with criterion(8, "billiard: 1e4 collisions, per-event and global conservation"):
        for name in ("fig4a", "fig4b"):
            p, events, drift = _run_billiard_until(name, 10_000)
            impacts = [ev for ev in events if ev.kind == "impact"]
            assert len(impacts) >= 10_000
            assert drift < 1e-9
            for ev in impacts:
                mom_b = p.m * ev.v_before + p.M * ev.V_before
                mom_a = p.m * ev.v_after + p.M * ev.V_after
                ke_b = 0.5 * p.m * ev.v_before**2 + 0.5 * p.M * ev.V_before**2
                ke_a = 0.5 * p.m * ev.v_after**2 + 0.5 * p.M * ev.V_after**2
                assert abs(mom_a - mom_b) <= 1e-12 * max(abs(mom_b), 1.0)
                assert abs(ke_a - ke_b) <= 1e-12 * ke_b

        horizon = 1000 * 2 * 3.0 / 25.0
        pressure = bl.fixed_wall_pressure(25.0, 3.0, 1.0, horizon)
        assert abs(pressure - 625.0 / 3.0) / (625.0 / 3.0) < 5e-3


def test_criterion_09_force_derivation_equivalence():
    with criterion(9, "energy-gradient force vs probability-current force"):
        rng = np.random.default_rng(909)
        P = ab.BoxParams()
        h = 1e-6
        for _ in range(100):
            ns = rng.choice(np.arange(1, 12), size=int(rng.integers(1, 5)),
                            replace=False)
            ws = rng.uniform(0.1, 1.0, size=len(ns))
            pop = ab.QuantumPopulations.from_weights(
                zip((int(n) for n in ns), ws))
            Q = float(rng.uniform(0.1, 10.0))
            f_grad = ab.force_energy_gradient(pop, Q, P)
            f_curr = ab.force_probability_current(pop, Q, P)
            assert abs(f_grad - f_curr) <= 1e-12 * f_grad
            etot = lambda q: sum(pw * ab.energy_level(n, q, P)
                                 for n, pw in pop.weights)
            fd = -(etot(Q + h) - etot(Q - h)) / (2 * h)
            assert abs(fd - f_grad) <= 1e-6 * f_grad
            assert abs(fd - f_curr) <= 1e-6 * f_curr


def test_criterion_10_determinism(tmp_path):
    with criterion(10, "identical preset runs produce byte-identical CSV"):
        for name in ("fig1", "fig4b", "fig5-D-2"):
            a = sc.run_scenario(sc.get_preset(name), out_dir=tmp_path / "a")
            b = sc.run_scenario(sc.get_preset(name), out_dir=tmp_path / "b")
            assert a.csv_path.read_bytes() == b.csv_path.read_bytes()
