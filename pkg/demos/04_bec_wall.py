"""Interacting condensate in the box: stationary modes, the (C, D) wall
drive they generate, and the fig5 equilibrium family.

Repulsive coupling (g > 0) adds a positive 1/Q^2 force that pushes the
wall further right; attractive coupling pulls it left.
"""

from pathlib import Path

import numpy as np

from matterwave import dynamics as dyn
from matterwave import gp_modes as gp
from matterwave.scenario import get_preset, run_scenario

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

print("stationary modes at Q = 1 (residual of the stationary equation):")
modes = {}
for g in (8.0, 1e-9, -8.0):
    mode = gp.build_mode(g, 1.0, 1)
    modes[g] = mode
    print(f"  g={g:+.0e}: branch={mode.branch:10s} m={mode.m_param:.5f} "
          f"u={mode.u:8.4f} residual={gp.gp_residual(mode):.1e}")

print("\ndrive coefficients at Q_ref = 1 (j = 1):")
print(f"{'g':>8} {'C':>12} {'D':>12}")
for g in (-5.0, -1.0, -1e-3, 1e-3, 1.0, 5.0):
    fc = gp.force_coefficients(g, 1.0, 1)
    print(f"{g:8.3f} {fc.C:12.6f} {fc.D:12.6f}")
print(f"   g->0 : {np.pi**2:12.6f} {0.0:12.6f}   (single-particle limit)")

print("\nfig5 equilibria (C=0.01, Q0=3):")
for name in ("fig5-D+2", "fig5-D+0.5", "fig5-D0", "fig5-D-0.5", "fig5-D-2"):
    res = run_scenario(get_preset(name), out_dir=out)
    print(f"  {name:12s}: equilibrium = {res.summary['equilibrium']:.4f}  "
          f"midpoint = {res.summary['midpoint']:.4f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    x = np.linspace(0.0, 1.0, 400)
    for g, style in ((8.0, "r-"), (1e-9, "k--"), (-8.0, "b-")):
        axes[0].plot(x, gp.wavefunction(modes[g], x), style,
                     label=f"g={g:+.0e}")
    axes[0].set_xlabel("x")
    axes[0].set_ylabel("mode amplitude")
    axes[0].set_title("ground mode vs coupling (flattens / peaks)")
    axes[0].legend()
    for name, style in (("fig5-D+2", "r-"), ("fig5-D0", "g-"),
                        ("fig5-D-2", "b-")):
        cfg = get_preset(name)
        p = dyn.OscillatorParams(cfg.omega, cfg.Q0,
                                 dyn.ForceCoefficients(cfg.C, cfg.D))
        tr = dyn.integrate(dyn.WallState(0.0, cfg.Q_init, 0.0), p, 30.0, 1e-10)
        axes[1].plot(tr.t, tr.Q, style, label=f"D={cfg.D:+g}")
    axes[1].axhline(3.0, color="gray", lw=0.5)
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("Q")
    axes[1].set_title("wall motion: interaction sign moves the center")
    axes[1].legend()
    fig.tight_layout()
    fig.savefig(out / "04_bec_wall.png", dpi=120)
    print(f"\nplot written to {out / '04_bec_wall.png'}")
