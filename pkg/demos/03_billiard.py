"""Classical counterpart: a point particle bouncing elastically between
a fixed wall and the harmonically bound moving wall (fig4 scenarios).

The bouncing particle delivers an average force m v^2 / Q, so the wall
again sits right of its bare equilibrium; unlike the quantum 1/Q^3
pressure the classical average force scales as 1/Q.
"""

from pathlib import Path

from matterwave import billiard as bl
from matterwave.scenario import get_preset, run_scenario

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

runs = {}
for name in ("fig4a", "fig4b"):
    res = run_scenario(get_preset(name), out_dir=out)
    runs[name] = res
    s = res.summary
    print(f"{name}: impacts={s['impacts']} reflections={s['reflections']} "
          f"wall range [{s['Q_min']:.3f}, {s['Q_max']:.3f}]  "
          f"drift={s['energy_drift']:.1e}")

# pinned-wall pressure converges to m v^2 / Q
v, Q, m = 25.0, 3.0, 1.0
print("\npinned-wall pressure (impulse counting):")
for bounces in (10, 100, 1000):
    horizon = bounces * 2 * Q / v
    val = bl.fixed_wall_pressure(v, Q, m, horizon)
    print(f"  {bounces:5d} bounces: {val:10.4f}   (m v^2 / Q = {m*v*v/Q:.4f})")

print("\nhalving the box doubles the average force:")
print(f"  Q=3: {bl.fixed_wall_pressure(v, 3.0, m, 1e5):.4f}")
print(f"  Q=6: {bl.fixed_wall_pressure(v, 6.0, m, 1e5):.4f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    for ax, name in zip(axes, ("fig4a", "fig4b")):
        tr = runs[name].trajectory
        ax.plot(tr.t, tr.Q, "g-", lw=2, label="wall Q")
        ax.plot(tr.t, tr.q, "b-", lw=0.4, label="particle q")
        ax.set_ylabel("position")
        ax.set_title(f"{name}: Q0 = {runs[name].config.Q0:g}")
        ax.legend(loc="upper right")
    axes[1].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(out / "03_billiard.png", dpi=120)
    print(f"\nplot written to {out / '03_billiard.png'}")
