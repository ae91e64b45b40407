"""Scenario configs, figure presets, and trajectory/summary output.

A scenario bundles one run of the wall dynamics: the subsystem kind
(``quantum_atom``, ``bec`` or ``classical_billiard``), its physical
parameters, oscillator and initial conditions, integrator settings and
output paths.  Configs serialize to INI files with sections [system],
[oscillator], [initial], [integrator], [output]; trajectories are
written as CSV with 17-significant-digit floats so identical configs
produce byte-identical files.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass
from pathlib import Path

from . import atom_box, billiard, dynamics, gp_modes

__all__ = [
    "KIND_ATOM",
    "KIND_BEC",
    "KIND_BILLIARD",
    "ConfigError",
    "ScenarioConfig",
    "RunResult",
    "list_presets",
    "get_preset",
    "run_scenario",
    "write_config",
    "read_config",
]

KIND_ATOM = "quantum_atom"
KIND_BEC = "bec"
KIND_BILLIARD = "classical_billiard"
_KINDS = (KIND_ATOM, KIND_BEC, KIND_BILLIARD)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    """Scenario configuration is incomplete or inconsistent."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one run."""

    kind: str
    omega: float
    Q0: float
    Q_init: float
    Qdot_init: float = 0.0
    # quantum_atom: direct B, or populations to compute it from
    B: float | None = None
    levels: tuple[int, ...] | None = None
    weights: tuple[float, ...] | None = None
    # bec: direct (C, D), or coupling/mode index to compute them from
    C: float | None = None
    D: float | None = None
    g: float | None = None
    j: int | None = None
    Q_ref: float | None = None
    # masses and hbar (billiard masses; atom/bec coefficient prefactors)
    m_atom: float = 1.0
    M_wall: float = 1.0
    hbar: float = 1.0
    # billiard initial particle state
    q_init: float = 0.0
    v_init: float = 0.0
    # integrator
    tol: float = 1e-10
    t_end: float = 50.0
    sample_dt: float = 0.01
    # output
    label: str = "scenario"
    out_dir: str | None = None
    fmt: str = "csv"

    def validate(self) -> None:
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown scenario kind {self.kind!r}")
        if self.tol <= 0.0 or self.sample_dt <= 0.0 or self.t_end <= 0.0:
            raise ConfigError("tol, sample_dt and t_end must be positive")
        if self.omega < 0.0 or self.Q0 <= 0.0 or self.Q_init <= 0.0:
            raise ConfigError("need omega >= 0, Q0 > 0 and Q(0) > 0")
        if self.fmt != "csv":
            raise ConfigError(f"unsupported output format {self.fmt!r}")
        if min(self.m_atom, self.M_wall, self.hbar) <= 0.0:
            raise ConfigError("masses and hbar must be positive")
        if self.kind == KIND_ATOM:
            if self.B is None and (self.levels is None or self.weights is None):
                raise ConfigError("quantum_atom needs B or levels+weights")
            if self.levels is not None and self.weights is not None \
                    and len(self.levels) != len(self.weights):
                raise ConfigError("levels and weights lengths differ")
        elif self.kind == KIND_BEC:
            direct = self.C is not None and self.D is not None
            solved = self.g is not None and self.j is not None
            if not (direct or solved):
                raise ConfigError("bec needs (C, D) or (g, j)")
        else:
            if self.omega <= 0.0:
                raise ConfigError("classical_billiard needs omega > 0")
            if not 0.0 <= self.q_init <= self.Q_init:
                raise ConfigError("billiard particle must start inside [0, Q(0)]")

    def resolve_coefficients(self) -> dynamics.ForceCoefficients:
        """Drive coefficients (C, D) for the wall equation of this run."""
        if self.kind == KIND_ATOM:
            if self.B is not None:
                return dynamics.ForceCoefficients(C=self.B, D=0.0)
            pop = atom_box.QuantumPopulations.from_weights(
                zip(self.levels, self.weights))
            params = atom_box.BoxParams(self.m_atom, self.M_wall, self.hbar)
            return atom_box.coefficient_B(pop, params)
        if self.kind == KIND_BEC:
            if self.C is not None and self.D is not None:
                return dynamics.ForceCoefficients(C=self.C, D=self.D)
            q_ref = self.Q0 if self.Q_ref is None else self.Q_ref
            return gp_modes.force_coefficients(
                self.g, q_ref, self.j, M_wall=self.M_wall,
                m_atom=self.m_atom, hbar=self.hbar)
        raise ConfigError("billiard scenarios have no reduced coefficients")


def _presets() -> dict[str, ScenarioConfig]:
    atom = lambda label, B, omega, Q0, Q_init: ScenarioConfig(
        kind=KIND_ATOM, B=B, omega=omega, Q0=Q0, Q_init=Q_init, label=label)
    table = {
        "fig1": atom("fig1", 0.01, 1.0, 1.0, 1.1),
        "fig2a": atom("fig2a", 0.1, 1.0, 1.0, 1.1),
        "fig2b": atom("fig2b", 0.1, 1.0, 1.0, 1.8),
        "fig3a": atom("fig3a", 0.1, 0.1, 3.0, 3.1),
        "fig3b": atom("fig3b", 0.1, 0.1, 1.0, 1.1),
    }
    for q0 in (3.0, 1.0):
        name = "fig4a" if q0 == 3.0 else "fig4b"
        # M omega^2 = 60 and M/m = 1000 with unit particle mass
        table[name] = ScenarioConfig(
            kind=KIND_BILLIARD, omega=math.sqrt(0.06), Q0=q0, Q_init=q0 + 0.1,
            m_atom=1.0, M_wall=1000.0, q_init=0.0, v_init=25.0, label=name)
    fig5 = {"fig5-D+2": 2.0, "fig5-D+0.5": 0.5, "fig5-D0": 0.0,
            "fig5-D-0.5": -0.5, "fig5-D-2": -2.0}
    for name, d in fig5.items():
        table[name] = ScenarioConfig(
            kind=KIND_BEC, C=0.01, D=d, omega=1.0, Q0=3.0, Q_init=3.1,
            label=name)
    return table


_ALIASES = {"fig5-repulsive": "fig5-D+2", "fig5-attractive": "fig5-D-2"}


def list_presets() -> dict[str, ScenarioConfig]:
    """All figure presets, keyed by name."""
    return _presets()


def get_preset(name: str) -> ScenarioConfig:
    table = _presets()
    name = _ALIASES.get(name, name)
    if name not in table:
        raise ConfigError(f"unknown preset {name!r} "
                          f"(available: {', '.join(sorted(table))})")
    return table[name]


# ---------------------------------------------------------------------------
# INI serialization

def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_config(cfg: ScenarioConfig, path: str | Path | None = None) -> str:
    """Serialize a config to INI text (and optionally a file)."""
    cp = configparser.ConfigParser()
    cp.optionxform = str  # keep key case, so B and D round-trip literally
    sys_items: dict[str, str] = {"kind": cfg.kind}
    if cfg.kind == KIND_ATOM:
        if cfg.B is not None:
            sys_items["B"] = _fmt(cfg.B)
        if cfg.levels is not None:
            sys_items["levels"] = " ".join(str(n) for n in cfg.levels)
            sys_items["weights"] = " ".join(_fmt(w) for w in cfg.weights)
    elif cfg.kind == KIND_BEC:
        if cfg.C is not None:
            sys_items["C"] = _fmt(cfg.C)
        if cfg.D is not None:
            sys_items["D"] = _fmt(cfg.D)
        if cfg.g is not None:
            sys_items["g"] = _fmt(cfg.g)
        if cfg.j is not None:
            sys_items["j"] = str(cfg.j)
        if cfg.Q_ref is not None:
            sys_items["Q_ref"] = _fmt(cfg.Q_ref)
    sys_items["m_atom"] = _fmt(cfg.m_atom)
    sys_items["M_wall"] = _fmt(cfg.M_wall)
    sys_items["hbar"] = _fmt(cfg.hbar)
    cp["system"] = sys_items
    cp["oscillator"] = {"omega": _fmt(cfg.omega), "Q0": _fmt(cfg.Q0)}
    initial = {"Q": _fmt(cfg.Q_init), "Qdot": _fmt(cfg.Qdot_init)}
    if cfg.kind == KIND_BILLIARD:
        initial["q"] = _fmt(cfg.q_init)
        initial["v"] = _fmt(cfg.v_init)
    cp["initial"] = initial
    cp["integrator"] = {"tol": _fmt(cfg.tol), "t_end": _fmt(cfg.t_end),
                        "sample_dt": _fmt(cfg.sample_dt)}
    out: dict[str, str] = {"format": cfg.fmt, "label": cfg.label}
    if cfg.out_dir is not None:
        out["path"] = cfg.out_dir
    cp["output"] = out

    buf = io.StringIO()
    cp.write(buf)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_config(source: str | Path) -> ScenarioConfig:
    """Parse an INI config file (or raw INI text) into a ScenarioConfig."""
    cp = configparser.ConfigParser()
    cp.optionxform = str
    text = None
    if isinstance(source, Path) or "\n" not in str(source):
        p = Path(source)
        if not p.is_file():
            raise ConfigError(f"config file not found: {source!s}")
        text = p.read_text()
    else:
        text = str(source)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc

    def need(section: str) -> configparser.SectionProxy:
        if not cp.has_section(section):
            raise ConfigError(f"missing [{section}] section")
        return cp[section]

    sys_sec = need("system")
    osc = need("oscillator")
    initial = need("initial")

    def fget(sec, key, default=None):
        if key not in sec:
            if default is None:
                raise ConfigError(f"missing key {key!r} in [{sec.name}]")
            return default
        try:
            return float(sec[key])
        except ValueError as exc:
            raise ConfigError(f"bad float for {key!r}: {sec[key]!r}") from exc

    kind = sys_sec.get("kind", "")
    levels = weights = None
    if "levels" in sys_sec:
        try:
            levels = tuple(int(tok) for tok in sys_sec["levels"].split())
            weights = tuple(float(tok) for tok in sys_sec.get("weights", "").split())
        except ValueError as exc:
            raise ConfigError(f"bad levels/weights: {exc}") from exc

    integ = cp["integrator"] if cp.has_section("integrator") else {}
    out = cp["output"] if cp.has_section("output") else {}

    cfg = ScenarioConfig(
        kind=kind,
        omega=fget(osc, "omega"),
        Q0=fget(osc, "Q0"),
        Q_init=fget(initial, "Q"),
        Qdot_init=fget(initial, "Qdot", 0.0),
        B=fget(sys_sec, "B") if "B" in sys_sec else None,
        levels=levels,
        weights=weights,
        C=fget(sys_sec, "C") if "C" in sys_sec else None,
        D=fget(sys_sec, "D") if "D" in sys_sec else None,
        g=fget(sys_sec, "g") if "g" in sys_sec else None,
        j=int(sys_sec["j"]) if "j" in sys_sec else None,
        Q_ref=fget(sys_sec, "Q_ref") if "Q_ref" in sys_sec else None,
        m_atom=fget(sys_sec, "m_atom", 1.0),
        M_wall=fget(sys_sec, "M_wall", 1.0),
        hbar=fget(sys_sec, "hbar", 1.0),
        q_init=fget(initial, "q", 0.0),
        v_init=fget(initial, "v", 0.0),
        tol=fget(integ, "tol", 1e-10) if integ else 1e-10,
        t_end=fget(integ, "t_end", 50.0) if integ else 50.0,
        sample_dt=fget(integ, "sample_dt", 0.01) if integ else 0.01,
        label=out.get("label", "scenario") if out else "scenario",
        out_dir=out.get("path") if out else None,
        fmt=out.get("format", "csv") if out else "csv",
    )
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# running

def _f17(x: float) -> str:
    return f"{x:.17g}"


def _wall_csv(traj: dynamics.Trajectory) -> str:
    lines = ["t,Q,Qdot"]
    for ti, qi, vi in zip(traj.t, traj.Q, traj.Qdot):
        lines.append(f"{_f17(ti)},{_f17(qi)},{_f17(vi)}")
    return "\n".join(lines) + "\n"


def _billiard_csv(traj: billiard.BilliardTrajectory) -> str:
    lines = ["t,Q,Qdot,q,v"]
    for ti, Qi, Vi, qi, vi in zip(traj.t, traj.Q, traj.V, traj.q, traj.v):
        lines.append(f"{_f17(ti)},{_f17(Qi)},{_f17(Vi)},{_f17(qi)},{_f17(vi)}")
    return "\n".join(lines) + "\n"


@dataclass
class RunResult:
    exit_code: int
    config: ScenarioConfig
    summary: dict
    csv_path: Path | None
    summary_path: Path | None
    trajectory: object


def _summary_text(summary: dict) -> str:
    lines = [f"{key} = {_f17(val) if isinstance(val, float) else val}"
             for key, val in summary.items()]
    return "\n".join(lines) + "\n"


def run_scenario(cfg: ScenarioConfig, out_dir: str | Path | None = None) -> RunResult:
    """Run one scenario and write its trajectory CSV and summary block.

    Raises :class:`ConfigError` on invalid configuration and propagates
    numerical errors (singularity, non-convergence); the CLI maps these
    to exit codes 2 and 3.
    """
    cfg.validate()
    target = out_dir if out_dir is not None else cfg.out_dir
    out_path = Path(target) if target is not None else None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)

    summary: dict = {"label": cfg.label, "kind": cfg.kind}

    if cfg.kind == KIND_BILLIARD:
        params = billiard.BilliardParams(m=cfg.m_atom, M=cfg.M_wall,
                                         omega=cfg.omega, Q0=cfg.Q0)
        init = billiard.BilliardState(t=0.0, q=cfg.q_init, v=cfg.v_init,
                                      Q=cfg.Q_init, V=cfg.Qdot_init)
        traj = billiard.simulate(init, params, cfg.t_end,
                                 sample_dt=cfg.sample_dt)
        q_min, q_max = float(traj.Q.min()), float(traj.Q.max())
        summary.update({
            "Q_min": q_min,
            "Q_max": q_max,
            "midpoint": 0.5 * (q_min + q_max),
            "mean_Q": float(traj.Q.mean()),
            "energy_drift": traj.energy_drift,
            "impacts": traj.n_impacts,
            "reflections": traj.n_reflections,
            "rows": len(traj.t),
        })
        csv_text = _billiard_csv(traj)
    else:
        coeffs = cfg.resolve_coefficients()
        params = dynamics.OscillatorParams(omega=cfg.omega, Q0=cfg.Q0,
                                           coeffs=coeffs)
        init = dynamics.WallState(t=0.0, Q=cfg.Q_init, Qdot=cfg.Qdot_init)
        traj = dynamics.integrate(init, params, cfg.t_end, cfg.tol,
                                  sample_dt=cfg.sample_dt)
        summary.update({
            "C": coeffs.C,
            "D": coeffs.D,
            "Q_min": traj.stats.q_min,
            "Q_max": traj.stats.q_max,
            "midpoint": traj.stats.midpoint,
            "mean_Q": traj.stats.mean_q,
            "energy_drift": traj.stats.energy_drift,
            "rows": len(traj.t),
        })
        if cfg.omega > 0.0:
            summary["equilibrium"] = dynamics.equilibrium(params)
        csv_text = _wall_csv(traj)

    csv_path = summary_path = None
    if out_path is not None:
        csv_path = out_path / f"{cfg.label}.csv"
        csv_path.write_text(csv_text)
        summary_path = out_path / f"{cfg.label}_summary.txt"
        summary_path.write_text(_summary_text(summary))

    return RunResult(exit_code=EXIT_OK, config=cfg, summary=summary,
                     csv_path=csv_path, summary_path=summary_path,
                     trajectory=traj)
