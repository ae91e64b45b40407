"""Dynamics of the oscillating wall: Qddot = C/Q^3 + D/Q^2 - omega^2 (Q - Q0).

The 1/Q^3 term is the pressure of a confined quantum particle on the
wall; the 1/Q^2 term appears when the confined system is an interacting
condensate.  Both arrive pre-divided by the wall mass, which therefore
never enters the reduced equation of motion.

Integration uses an embedded Dormand-Prince 5(4) pair with PI step-size
control and 4th-order dense output.  The conserved energy
``e = Qdot^2/2 + U(Q)`` with ``U = C/(2 Q^2) + D/Q + omega^2 (Q-Q0)^2/2``
is tracked as a drift diagnostic, and equilibrium / turning-point
solvers provide the reference points the trajectory statistics are
compared against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rootfind import brent

__all__ = [
    "ForceCoefficients",
    "OscillatorParams",
    "WallState",
    "Trajectory",
    "TrajectoryStats",
    "SingularityError",
    "NoStableRootError",
    "acceleration",
    "effective_potential",
    "energy",
    "integrate",
    "equilibrium",
    "turning_points",
]


@dataclass(frozen=True)
class ForceCoefficients:
    """Drive constants of the wall equation: C/Q^3 + D/Q^2."""

    C: float
    D: float = 0.0


@dataclass(frozen=True)
class OscillatorParams:
    """Harmonic wall parameters plus the pressure coefficients."""

    omega: float
    Q0: float
    coeffs: ForceCoefficients = ForceCoefficients(0.0, 0.0)

    def __post_init__(self):
        if self.omega < 0.0:
            raise ValueError("omega must be >= 0")
        if self.Q0 <= 0.0:
            raise ValueError("Q0 must be positive")


@dataclass(frozen=True)
class WallState:
    """Wall phase-space point (t, Q, Qdot)."""

    t: float
    Q: float
    Qdot: float

    def __post_init__(self):
        if self.Q <= 0.0:
            raise ValueError("wall position Q must be positive")


@dataclass(frozen=True)
class TrajectoryStats:
    q_min: float
    q_max: float
    midpoint: float
    mean_q: float
    energy_drift: float
    n_steps: int
    n_rejected: int


@dataclass
class Trajectory:
    """Sampled wall trajectory with summary statistics."""

    t: np.ndarray
    Q: np.ndarray
    Qdot: np.ndarray
    stats: TrajectoryStats

    def states(self):
        for ti, qi, vi in zip(self.t, self.Q, self.Qdot):
            yield WallState(float(ti), float(qi), float(vi))


class SingularityError(RuntimeError):
    """Integration hit the Q -> 0 singularity; carries the last good state."""

    def __init__(self, message: str, state: WallState):
        super().__init__(message)
        self.last_state = state


class NoStableRootError(RuntimeError):
    """No stable equilibrium could be bracketed."""


def acceleration(Q: float, p: OscillatorParams) -> float:
    """Right-hand side C/Q^3 + D/Q^2 - omega^2 (Q - Q0)."""
    if Q <= 0.0:
        raise ValueError("acceleration needs Q > 0")
    c = p.coeffs
    return c.C / Q**3 + c.D / Q**2 - p.omega**2 * (Q - p.Q0)


def effective_potential(Q: float, p: OscillatorParams) -> float:
    """U(Q) = C/(2 Q^2) + D/Q + omega^2 (Q - Q0)^2 / 2, so -U' = acceleration."""
    if Q <= 0.0:
        raise ValueError("effective_potential needs Q > 0")
    c = p.coeffs
    return 0.5 * c.C / Q**2 + c.D / Q + 0.5 * (p.omega * (Q - p.Q0)) ** 2


def energy(Q: float, Qdot: float, p: OscillatorParams) -> float:
    """Conserved energy per unit mass, Qdot^2/2 + U(Q)."""
    return 0.5 * Qdot * Qdot + effective_potential(Q, p)


# Dormand-Prince 5(4) tableau.  The last coefficient row equals the
# 5th-order weights, so stage 7 doubles as the first stage of the next
# step (FSAL).
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)
_DP_D = (
    -12715105075 / 11282082432,
    0.0,
    87487479700 / 32700410799,
    -10690763975 / 1880347072,
    701980252875 / 199316789632,
    -1453857185 / 822651844,
    69997945 / 29380423,
)


class _StageBlowup(Exception):
    pass


def _dense_eval(theta, y0, rcont):
    r1, r2, r3, r4, r5 = rcont
    return r1 + theta * (r2 + (1.0 - theta) * (r3 + theta * (r4 + (1.0 - theta) * r5)))


def integrate(init: WallState, p: OscillatorParams, t_end: float, tol: float = 1e-10,
              *, sample_dt: float = 0.01, q_guard: float = 1e-6) -> Trajectory:
    """Integrate the wall from ``init`` to ``t_end``.

    Local error is controlled at ``tol`` (used as both absolute and
    relative weight, with an internal safety margin so the conserved
    energy drifts by well under 100*tol over the run); samples are
    produced every ``sample_dt`` by dense output, always including the
    initial and final times.  The run aborts with
    :class:`SingularityError` if Q drops below ``q_guard`` or the step
    size underflows while approaching Q = 0.
    """
    if t_end <= init.t:
        raise ValueError("t_end must lie after the initial time")
    if tol <= 0.0 or sample_dt <= 0.0:
        raise ValueError("tol and sample_dt must be positive")
    tol = 0.02 * tol  # energy drift accumulates over ~1e3 steps

    c = p.coeffs
    w2 = p.omega**2
    Q0 = p.Q0

    def rhs(y):
        q = y[0]
        if q <= 0.0:
            raise _StageBlowup
        return np.array([y[1], c.C / q**3 + c.D / q**2 - w2 * (q - Q0)])

    t = init.t
    y = np.array([init.Q, init.Qdot])
    f0 = rhs(y)

    # standard two-sided heuristic for the first step
    scale = tol + tol * np.abs(y)
    d0 = math.sqrt(float(np.mean((y / scale) ** 2)))
    d1 = math.sqrt(float(np.mean((f0 / scale) ** 2)))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y + h0 * f0
    try:
        f1 = rhs(y1)
        d2 = math.sqrt(float(np.mean(((f1 - f0) / scale) ** 2))) / h0
    except _StageBlowup:
        d2 = 1.0 / h0
    dmax = max(d1, d2)
    h1 = max(1e-6, (0.01 / dmax) ** 0.2) if dmax > 1e-15 else h0 * 100.0
    h = min(100.0 * h0, h1, t_end - t)

    ts = [t]
    qs = [y[0]]
    vs = [y[1]]
    next_k = 1
    t0 = init.t

    k = [f0] + [None] * 6
    facold = 1e-4
    safety, beta, expo = 0.9, 0.04, 0.2 - 0.04 * 0.75
    n_steps = 0
    n_rejected = 0

    def last_state():
        return WallState(float(t), float(y[0]), float(y[1]))

    while t < t_end:
        h = min(h, t_end - t)
        if h < 1e-14 * max(1.0, abs(t)):
            raise SingularityError(
                f"step size underflow at t={t!r} (Q={y[0]!r})", last_state())
        try:
            for i in range(1, 7):
                yi = y + h * sum(_DP_A[i][j] * k[j] for j in range(i))
                k[i] = rhs(yi)
        except _StageBlowup:
            n_rejected += 1
            h *= 0.5
            continue
        y_new = yi  # stage 7 argument equals the 5th-order solution
        err_vec = h * sum(_DP_E[i] * k[i] for i in range(7))
        sc = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
        err = math.sqrt(float(np.mean((err_vec / sc) ** 2)))

        if err > 1.0:
            n_rejected += 1
            fac = max(0.2, safety * err**-expo)
            h *= min(1.0, fac)
            continue

        # accepted: dense output over [t, t+h]
        ydiff = y_new - y
        bspl = h * k[0] - ydiff
        rcont = (
            y,
            ydiff,
            bspl,
            ydiff - h * k[6] - bspl,
            h * sum(_DP_D[i] * k[i] for i in range(7)),
        )
        t_new = t + h
        while True:
            t_s = t0 + next_k * sample_dt
            if t_s > t_new or t_s > t_end:
                break
            y_s = _dense_eval((t_s - t) / h, y, rcont)
            ts.append(t_s)
            qs.append(y_s[0])
            vs.append(y_s[1])
            next_k += 1

        t, y = t_new, y_new
        k[0] = k[6]
        n_steps += 1
        if y[0] < q_guard:
            raise SingularityError(
                f"Q fell below guard {q_guard!r} at t={t!r}", last_state())

        fac = safety * facold**beta * err**-expo if err > 0.0 else 10.0
        h *= min(10.0, max(0.2, fac))
        facold = max(err, 1e-4)

    if ts[-1] < t_end:
        ts.append(t_end)
        qs.append(y[0])
        vs.append(y[1])

    t_arr = np.array(ts)
    q_arr = np.array(qs)
    v_arr = np.array(vs)

    e_arr = 0.5 * v_arr**2 + (0.5 * c.C / q_arr**2 + c.D / q_arr
                              + 0.5 * (p.omega * (q_arr - Q0)) ** 2)
    e0 = e_arr[0]
    drift = float(np.max(np.abs(e_arr - e0)) / max(abs(e0), 1e-300))
    q_min = float(q_arr.min())
    q_max = float(q_arr.max())
    mean_q = float(np.trapezoid(q_arr, t_arr) / (t_arr[-1] - t_arr[0]))
    stats = TrajectoryStats(
        q_min=q_min,
        q_max=q_max,
        midpoint=0.5 * (q_min + q_max),
        mean_q=mean_q,
        energy_drift=drift,
        n_steps=n_steps,
        n_rejected=n_rejected,
    )
    return Trajectory(t=t_arr, Q=q_arr, Qdot=v_arr, stats=stats)


def _scan_bracket(f, x0: float, factor: float, max_steps: int):
    """March x0 * factor^k until f changes sign; returns (a, b, fa, fb)."""
    x_prev, f_prev = x0, f(x0)
    x = x0
    for _ in range(max_steps):
        x = x * factor
        fx = f(x)
        if (fx > 0.0) != (f_prev > 0.0) or fx == 0.0:
            lo, hi = (x_prev, x) if x_prev < x else (x, x_prev)
            flo, fhi = (f_prev, fx) if x_prev < x else (fx, f_prev)
            return lo, hi, flo, fhi
        x_prev, f_prev = x, fx
    return None


def equilibrium(p: OscillatorParams) -> float:
    """Stable root of acceleration(Q) = 0, found by expansion from Q0.

    Marches in the direction the net force pushes, so the first sign
    change is a potential minimum.  Raises :class:`NoStableRootError`
    when no bracket is found (possible for strongly negative D with
    C = 0).
    """
    if p.omega <= 0.0:
        raise ValueError("equilibrium needs omega > 0")
    f = lambda q: acceleration(q, p)
    a0 = f(p.Q0)
    if a0 == 0.0:
        return p.Q0
    factor = 1.01 if a0 > 0.0 else 1.0 / 1.01
    found = _scan_bracket(f, p.Q0, factor, 5000)
    if found is None:
        raise NoStableRootError(
            f"no stable equilibrium bracketed from Q0={p.Q0!r}")
    lo, hi, flo, fhi = found
    root = brent(f, lo, hi, fa=flo, fb=fhi)
    c = p.coeffs
    curvature = 3.0 * c.C / root**4 + 2.0 * c.D / root**3 + p.omega**2
    if curvature <= 0.0:
        raise NoStableRootError(f"bracketed root at Q={root!r} is unstable")
    return root


def turning_points(e: float, p: OscillatorParams) -> tuple[float, float]:
    """Both roots of U(Q) = e around the stable equilibrium."""
    q_star = equilibrium(p)
    if e <= effective_potential(q_star, p):
        raise ValueError("energy does not exceed the potential minimum")
    g = lambda q: effective_potential(q, p) - e
    left = _scan_bracket(g, q_star, 1.0 / 1.01, 5000)
    right = _scan_bracket(g, q_star, 1.01, 5000)
    if left is None or right is None:
        raise NoStableRootError("turning point bracket not found")
    q_lo = brent(g, left[0], left[1], fa=left[2], fb=left[3])
    q_hi = brent(g, right[0], right[1], fa=right[2], fb=right[3])
    return q_lo, q_hi
