"""Dynamics of a harmonically bound wall driven by the pressure of a
confined matter wave, with a classical elastic-billiard counterpart.

Subpackages by capability:

- :mod:`matterwave.specfun`: elliptic integrals, Jacobi elliptic
  functions, quarter-period power integrals, adaptive quadrature.
- :mod:`matterwave.atom_box`: particle-in-a-box levels, pressure force
  and the wall drive coefficient B, with SI conversion helpers.
- :mod:`matterwave.gp_modes`: stationary condensate box modes and the
  (C, D) drive coefficients of the interacting case.
- :mod:`matterwave.dynamics`: the wall equation of motion, adaptive
  Runge-Kutta integration, equilibrium and turning-point solvers.
- :mod:`matterwave.billiard`: event-driven classical particle/wall
  simulation with exact elastic collisions.
- :mod:`matterwave.scenario` / :mod:`matterwave.cli`: figure presets,
  INI configs, CSV trajectories and the command line.
"""

from .specfun import (
    QuadratureError,
    ellip_E,
    ellip_K,
    jacobi_sn_cn_dn,
    power_integral,
    quad,
)
from .atom_box import (
    HBAR_SI,
    LENGTH_UNIT_M,
    TIME_UNIT_S,
    BoxParams,
    PhysicalEstimate,
    QuantumPopulations,
    coefficient_B,
    energy_level,
    force_energy_gradient,
    force_probability_current,
    physical_estimate,
    pressure_force,
    verify_vector_potential_zero,
)
from .gp_modes import (
    ATTRACTIVE,
    REPULSIVE,
    GpMode,
    ParameterSolveError,
    build_mode,
    chemical_potential,
    force_coefficients,
    gp_residual,
    hamiltonian_closed_form,
    hamiltonian_functional,
    solve_parameter,
    wavefunction,
)
from .dynamics import (
    ForceCoefficients,
    NoStableRootError,
    OscillatorParams,
    SingularityError,
    Trajectory,
    TrajectoryStats,
    WallState,
    acceleration,
    effective_potential,
    energy,
    equilibrium,
    integrate,
    turning_points,
)
from .billiard import (
    BilliardEvent,
    BilliardParams,
    BilliardState,
    BilliardTrajectory,
    EventLimitError,
    collide,
    fixed_wall_pressure,
    simulate,
    total_energy,
)
from .scenario import (
    ConfigError,
    RunResult,
    ScenarioConfig,
    get_preset,
    list_presets,
    read_config,
    run_scenario,
    write_config,
)

__version__ = "0.1.0"
