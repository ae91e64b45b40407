"""Stationary box modes of the 1-D cubic nonlinear Schroedinger (mean
field) equation and the wall-drive coefficients they generate.

In the dimensionless form used throughout,

    -psi'' + g psi^3 = u psi,   psi(0) = psi(Q) = 0,   int |psi|^2 = 1,

the repulsive-branch (g > 0) modes are b*sn(a x | m) and the attractive
ones (g < 0) are b*cn(a x - K(m) | m).  Boundary and normalization
conditions pin

    a = 2 j K(m) / Q,
    b^2 = m K / ((K - E) Q)            repulsive,
    b^2 = m K / ((E + (m-1) K) Q)      attractive,

and the amplitude condition m = b^2 |g| / (2 a^2) closes the system
into a single root equation for m:

    8 j^2 K (K - E)         = |g| Q    repulsive,
    8 j^2 K (E + (m-1) K)   = |g| Q    attractive.

The chemical potential follows as u = a^2 (1 + m) on the repulsive
branch and u = a^2 (1 - 2m) on the attractive one.

The wall feels the gradient of the mode energy functional

    H1 = int psi (-(hbar^2/2m) d_xx + g/2 psi^2) psi dx,

evaluated at frozen m, which yields the constants C (from the kinetic
1/Q^2 term) and D (from the interaction 1/Q term) of the wall equation
Qddot = C/Q^3 + D/Q^2 - omega^2 (Q - Q0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import ForceCoefficients
from .rootfind import brent
from .specfun import _agm, jacobi_sn_cn_dn, quad

__all__ = [
    "REPULSIVE",
    "ATTRACTIVE",
    "GpMode",
    "ParameterSolveError",
    "solve_parameter",
    "build_mode",
    "wavefunction",
    "chemical_potential",
    "gp_residual",
    "hamiltonian_functional",
    "hamiltonian_closed_form",
    "force_coefficients",
]

REPULSIVE = "repulsive"
ATTRACTIVE = "attractive"

# ratio of finite-difference stencil step to the mode wavelength scale;
# balances O(h^8) truncation against the eps/h^2 rounding floor
_STENCIL_SCALE = 0.05
_SECOND_DIFF_WEIGHTS = (-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72,
                        8 / 5, -1 / 5, 8 / 315, -1 / 560)


class ParameterSolveError(RuntimeError):
    """The elliptic-parameter root equation could not be bracketed."""


@dataclass(frozen=True)
class GpMode:
    """One stationary condensate mode of the boxed system.

    ``m_param`` is the elliptic parameter, ``a`` the wavenumber,
    ``b`` the amplitude, ``delta`` the phase shift (0 on the repulsive
    branch, -K(m) on the attractive one), and ``u`` the chemical
    potential.
    """

    branch: str
    j: int
    m_param: float
    a: float
    b: float
    delta: float
    g: float
    Q: float
    u: float


def _root_lhs(m: float, j: int, repulsive: bool) -> float:
    K, _, s = _agm(m)
    # K - E = K*s; E + (m-1)K = K*(m - s)
    return 8.0 * j * j * K * K * (s if repulsive else m - s)


def solve_parameter(g: float, Q: float, j: int) -> float:
    """Elliptic parameter m in (0, 1) solving the branch root equation.

    The left-hand side runs monotonically from 0 to its float-range
    ceiling, so a sign-change bracket always exists for reachable
    |g| Q; beyond it a :class:`ParameterSolveError` is raised.
    """
    if g == 0.0:
        raise ValueError("coupling g must be nonzero")
    if Q <= 0.0 or j < 1:
        raise ValueError("need Q > 0 and j >= 1")
    target = abs(g) * Q
    repulsive = g > 0.0
    f = lambda m: _root_lhs(m, j, repulsive) - target

    lo, hi = 1e-308, 1.0 - 1e-15
    flo, fhi = f(lo), f(hi)
    if flo > 0.0 or fhi < 0.0:
        raise ParameterSolveError(
            f"root equation not bracketed for |g|Q={target!r}, j={j}")
    return brent(f, lo, hi, fa=flo, fb=fhi)


def build_mode(g: float, Q: float, j: int) -> GpMode:
    """Solve for m and assemble the full mode record."""
    m = solve_parameter(g, Q, j)
    K, _, s = _agm(m)
    a = 2.0 * j * K / Q
    if g > 0.0:
        b = math.sqrt(m / (s * Q))            # b^2 = m K / ((K-E) Q)
        return GpMode(REPULSIVE, j, m, a, b, 0.0, g, Q, a * a * (1.0 + m))
    b = math.sqrt(m / ((m - s) * Q))          # b^2 = m K / ((E+(m-1)K) Q)
    return GpMode(ATTRACTIVE, j, m, a, b, -K, g, Q, a * a * (1.0 - 2.0 * m))


def _psi(mode: GpMode, x):
    """Mode profile, valid for any real x (the closed form solves the
    stationary equation on the whole line)."""
    sn, cn, _ = jacobi_sn_cn_dn(mode.a * np.asarray(x, dtype=float) + mode.delta,
                                mode.m_param)
    return mode.b * (sn if mode.branch == REPULSIVE else cn)


def wavefunction(mode: GpMode, x):
    """Mode profile on the box, b*sn(ax|m) or b*cn(ax - K|m)."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0) or np.any(x_arr > mode.Q):
        raise ValueError("wavefunction argument outside [0, Q]")
    val = _psi(mode, x_arr)
    return float(val) if np.ndim(x) == 0 else val


def _second_derivative(mode: GpMode, x: np.ndarray) -> np.ndarray:
    h = _STENCIL_SCALE / mode.a
    acc = np.zeros_like(x)
    for k, w in zip(range(-4, 5), _SECOND_DIFF_WEIGHTS):
        acc += w * _psi(mode, x + k * h)
    return acc / (h * h)


def _interior_grid(mode: GpMode, n_points: int) -> np.ndarray:
    # n_points interior nodes, two cells clear of each boundary
    nodes = np.linspace(0.0, mode.Q, n_points + 4)
    return nodes[2:-2]


def gp_residual(mode: GpMode, n_points: int = 4096) -> float:
    """Stationary-equation residual max |-psi'' + g psi^3 - u psi| / max(|u|, 1).

    Second derivatives come from a 6th-order central stencil on an
    interior grid of ``n_points`` nodes; an exact mode sits at the
    rounding floor, orders of magnitude below 1e-8.
    """
    x = _interior_grid(mode, n_points)
    psi = _psi(mode, x)
    res = -_second_derivative(mode, x) + mode.g * psi**3 - mode.u * psi
    return float(np.max(np.abs(res))) / max(abs(mode.u), 1.0)


def _simpson(values: np.ndarray, dx: float) -> float:
    return float(dx / 3.0 * (values[0] + values[-1]
                             + 4.0 * np.sum(values[1:-1:2])
                             + 2.0 * np.sum(values[2:-1:2])))


def chemical_potential(mode: GpMode, n_points: int = 4096) -> float:
    """Rayleigh quotient int psi (-psi'' + g psi^3) dx / int psi^2 dx.

    Fully numerical (grid Laplacian plus Simpson weights); agrees with
    the analytic ``mode.u`` to better than 1e-8 relative.
    """
    n = n_points + (n_points % 2)  # Simpson needs an even interval count
    x = np.linspace(0.0, mode.Q, n + 1)
    psi = _psi(mode, x)
    num = psi * (-_second_derivative(mode, x) + mode.g * psi**3)
    dx = mode.Q / n
    return _simpson(num, dx) / _simpson(psi * psi, dx)


def hamiltonian_functional(mode: GpMode, n_points: int = 4096) -> float:
    """Quadrature of the mode energy int psi (-psi''/2 + g/2 psi^2 psi) dx.

    The kinetic weight is hbar^2/2m = 1/2 in code units and the
    interaction enters with g/2, so in the linear limit this reduces to
    the box level j^2 pi^2 / (2 Q^2).
    """
    n = n_points + (n_points % 2)
    x = np.linspace(0.0, mode.Q, n + 1)
    psi = _psi(mode, x)
    integrand = psi * (-0.5 * _second_derivative(mode, x)
                       + 0.5 * mode.g * psi**3)
    return _simpson(integrand, mode.Q / n)


def _power_integrals(m: float) -> tuple[float, float, float, float]:
    """Quarter-period integrals (sn2, sn4, cn2, cn4) via the AGM remainder."""
    K, _, s = _agm(m)
    sn2 = K * s / m
    sn4 = K * (2.0 * (1.0 + m) * s - m) / (3.0 * m * m)
    cn2 = K * (m - s) / m
    cn4 = K * (m - 2.0 * s) / m + sn4
    return sn2, sn4, cn2, cn4


def _closed_form_terms(branch: str, m: float, g: float, j: int,
                       Q: float) -> tuple[float, float]:
    """Closed-form (kinetic, interaction) pieces of the energy functional.

    kinetic     = (1/2) * a b^2 * int over the full period of psi(-psi'')
                = j m K^2 I1 / ((K or Delta) Q^2)
    interaction = (g/2) * b^4/a * full-period quartic integral

    Both are evaluated at the given Q with m held frozen, which is what
    the force coefficients differentiate.
    """
    K, _, s = _agm(m)
    sn2, sn4, cn2, cn4 = _power_integrals(m)
    if branch == REPULSIVE:
        denom = K * s                       # K - E
        i1 = 2.0 * j * ((1.0 + m) * sn2 - 2.0 * m * sn4)
        i2 = 2.0 * j * sn4
    else:
        denom = K * (m - s)                 # E + (m-1) K
        i1 = 2.0 * j * ((1.0 - 2.0 * m) * cn2 + 2.0 * m * cn4)
        i2 = 2.0 * j * cn4
    kinetic = j * m * K * K * i1 / (denom * Q * Q)
    interaction = 0.5 * g * m * m * K * i2 / (2.0 * j * denom * denom * Q)
    return kinetic, interaction


def hamiltonian_closed_form(mode: GpMode, at_Q: float | None = None) -> float:
    """Closed form of the mode energy functional.

    With ``at_Q`` set, the expression is evaluated at that box width
    while keeping the elliptic parameter frozen at the mode's value,
    which is the quantity whose negative Q-gradient defines the force
    coefficients.
    """
    Q = mode.Q if at_Q is None else at_Q
    kinetic, interaction = _closed_form_terms(mode.branch, mode.m_param,
                                              mode.g, mode.j, Q)
    return kinetic + interaction


def force_coefficients(g: float, Q_ref: float, j: int, M_wall: float = 1.0,
                       m_atom: float = 1.0, hbar: float = 1.0) -> ForceCoefficients:
    """Wall-drive constants (C, D) for the mode solved at Q_ref.

    C and D are the coefficients of 1/Q^3 and 1/Q^2 in
    -(1/M) dH1/dQ at frozen elliptic parameter:

        C = 2 j hbar^2 m K^2 I1 / (M m_atom Delta),
        D = g m^2 K I2 / (4 j M Delta^2),

    with Delta = K - E (repulsive) or E + (m-1)K (attractive), I1 the
    full-period quadratic-minus-quartic integral and I2 the full-period
    quartic one.  C > 0 always; D carries the sign of g.  As g -> 0,
    C -> j^2 pi^2 hbar^2 / (M m_atom) and D -> 0.
    """
    m = solve_parameter(g, Q_ref, j)
    K, _, s = _agm(m)
    sn2, sn4, cn2, cn4 = _power_integrals(m)
    if g > 0.0:
        denom = K * s
        i1 = 2.0 * j * ((1.0 + m) * sn2 - 2.0 * m * sn4)
        i2 = 2.0 * j * sn4
    else:
        denom = K * (m - s)
        i1 = 2.0 * j * ((1.0 - 2.0 * m) * cn2 + 2.0 * m * cn4)
        i2 = 2.0 * j * cn4
    C = 2.0 * j * hbar**2 * m * K * K * i1 / (M_wall * m_atom * denom)
    D = g * m * m * K * i2 / (4.0 * j * M_wall * denom * denom)
    return ForceCoefficients(C=C, D=D)


def normalization(mode: GpMode, tol: float = 1e-12) -> float:
    """Adaptive quadrature of int_0^Q |psi|^2 dx (should be 1)."""
    return quad(lambda x: _psi(mode, x) ** 2, 0.0, mode.Q, tol=tol)
