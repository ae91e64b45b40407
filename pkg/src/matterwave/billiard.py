"""Event-driven simulation of a classical point particle bouncing
elastically between a fixed wall at q = 0 and a harmonically bound
moving wall.

Between events the particle flies freely and the wall follows its
spring analytically, so the only numerical work is locating impact and
reflection times (sign-change scan plus bisection to 1e-12 in time) and
resolving elastic collisions.  Total energy, including the spring term,
is then conserved to rounding accuracy over arbitrarily many events.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BilliardParams",
    "BilliardState",
    "BilliardEvent",
    "BilliardTrajectory",
    "EventLimitError",
    "collide",
    "simulate",
    "fixed_wall_pressure",
    "total_energy",
]

_TIME_TOL = 1e-12          # bisection width for event times
_PUSH_OFF = 1e-12          # particle-wall separation applied after impact
_MIN_REL_SPEED = 1e-12     # below this an impact transfers nothing


@dataclass(frozen=True)
class BilliardParams:
    """Masses, wall frequency and wall equilibrium; all positive."""

    m: float
    M: float
    omega: float
    Q0: float

    def __post_init__(self):
        if min(self.m, self.M, self.omega, self.Q0) <= 0.0:
            raise ValueError("BilliardParams entries must be positive")


@dataclass(frozen=True)
class BilliardState:
    """Particle (q, v) and wall (Q, V) at time t, with 0 <= q <= Q."""

    t: float
    q: float
    v: float
    Q: float
    V: float

    def __post_init__(self):
        if self.Q <= 0.0:
            raise ValueError("wall position must be positive")
        if not 0.0 <= self.q <= self.Q:
            raise ValueError("particle must sit inside [0, Q]")


@dataclass(frozen=True)
class BilliardEvent:
    t: float
    kind: str          # "impact" or "reflection"
    q: float
    v_before: float
    v_after: float
    V_before: float
    V_after: float


@dataclass
class BilliardTrajectory:
    t: np.ndarray
    q: np.ndarray
    v: np.ndarray
    Q: np.ndarray
    V: np.ndarray
    events: list
    n_impacts: int
    n_reflections: int
    energy_drift: float
    final: BilliardState


class EventLimitError(RuntimeError):
    """Too many events or grazing chatter; carries the last good state."""

    def __init__(self, message: str, state: BilliardState):
        super().__init__(message)
        self.last_state = state


def collide(v: float, V: float, m: float, M: float) -> tuple[float, float]:
    """Elastic collision: momentum and kinetic energy are both conserved.

    Returns (v', V') with v' = ((m-M) v + 2 M V)/(m+M) and
    V' = ((M-m) V + 2 m v)/(m+M).
    """
    inv = 1.0 / (m + M)
    return ((m - M) * v + 2.0 * M * V) * inv, ((M - m) * V + 2.0 * m * v) * inv


def total_energy(state: BilliardState, p: BilliardParams) -> float:
    """Kinetic energies plus the wall spring energy."""
    spring = state.Q - p.Q0
    return (0.5 * p.m * state.v**2 + 0.5 * p.M * state.V**2
            + 0.5 * p.M * (p.omega * spring) ** 2)


class _Wall:
    """Analytic spring propagation anchored at the last event."""

    def __init__(self, t: float, Q: float, V: float, p: BilliardParams):
        self.t0 = t
        self.dQ = Q - p.Q0
        self.V0 = V
        self.w = p.omega
        self.Q0 = p.Q0

    def pos(self, t: float) -> float:
        ph = self.w * (t - self.t0)
        return self.Q0 + self.dQ * math.cos(ph) + (self.V0 / self.w) * math.sin(ph)

    def vel(self, t: float) -> float:
        ph = self.w * (t - self.t0)
        return -self.dQ * self.w * math.sin(ph) + self.V0 * math.cos(ph)


def _next_impact(wall: _Wall, t: float, q: float, v: float,
                 horizon: float) -> float | None:
    """Earliest s in (t, horizon] where q + v (s - t) meets the wall."""
    gap = lambda s: q + v * (s - t) - wall.pos(s)
    step = (2.0 * math.pi / wall.w) / 64.0
    a, fa = t, gap(t)
    while a < horizon:
        b = min(a + step, horizon)
        fb = gap(b)
        if fb >= 0.0:
            # bisect the sign change to _TIME_TOL in time
            lo, hi = a, b
            while hi - lo > _TIME_TOL:
                mid = 0.5 * (lo + hi)
                if gap(mid) >= 0.0:
                    hi = mid
                else:
                    lo = mid
            return hi
        a, fa = b, fb
    return None


def simulate(init: BilliardState, p: BilliardParams, t_end: float,
             sample_dt: float | None = 0.01,
             max_events: int = 10**9) -> BilliardTrajectory:
    """Run the billiard from ``init`` to ``t_end``.

    Samples are taken every ``sample_dt`` (None disables sampling) and
    every impact/reflection is logged with pre/post velocities.  Raises
    :class:`EventLimitError` on event overflow or when inter-event
    times underflow (grazing chatter).
    """
    if t_end <= init.t:
        raise ValueError("t_end must lie after the initial time")

    t, q, v = init.t, init.q, init.v
    wall = _Wall(init.t, init.Q, init.V, p)
    V = init.V

    ts, qs, vs, Qs, Vs = [], [], [], [], []
    next_k = 0
    t0 = init.t

    def emit_until(limit: float):
        nonlocal next_k
        if sample_dt is None:
            return
        while True:
            t_s = t0 + next_k * sample_dt
            if t_s > limit or t_s > t_end:
                return
            ts.append(t_s)
            qs.append(q + v * (t_s - t))
            vs.append(v)
            Qs.append(wall.pos(t_s))
            Vs.append(wall.vel(t_s))
            next_k += 1

    events: list[BilliardEvent] = []
    n_impacts = n_reflections = 0
    e0 = total_energy(init, p)
    e_extreme = e0
    tiny_streak = 0

    def current_state(at: float) -> BilliardState:
        qq = min(max(q + v * (at - t), 0.0), wall.pos(at))
        return BilliardState(at, qq, v, wall.pos(at), wall.vel(at))

    while t < t_end:
        if len(events) >= max_events:
            raise EventLimitError(
                f"event budget {max_events} exhausted at t={t!r}",
                current_state(t))

        t_refl = t - q / v if (v < 0.0 and q > 0.0) else math.inf
        horizon = min(t_refl, t_end)
        t_hit = _next_impact(wall, t, q, v, horizon)

        if t_hit is None and t_refl > t_end:
            emit_until(t_end)
            break

        t_ev = t_hit if t_hit is not None else t_refl
        emit_until(min(t_ev, t_end))
        if t_ev > t_end:
            break
        if t_ev - t < 1e-14 * max(1.0, abs(t_ev)):
            tiny_streak += 1
            if tiny_streak > 100:
                raise EventLimitError(
                    f"inter-event time underflow at t={t!r}", current_state(t))
        else:
            tiny_streak = 0

        if t_hit is not None and t_hit <= t_refl:
            Q_ev = wall.pos(t_ev)
            V_ev = wall.vel(t_ev)
            if v - V_ev > _MIN_REL_SPEED:
                v_new, V_new = collide(v, V_ev, p.m, p.M)
                events.append(BilliardEvent(t_ev, "impact", Q_ev, v, v_new,
                                            V_ev, V_new))
                n_impacts += 1
                v, V = v_new, V_new
                wall = _Wall(t_ev, Q_ev, V_new, p)
            else:
                # grazing touch: no momentum exchange
                wall = _Wall(t_ev, Q_ev, V_ev, p)
                V = V_ev
            q = max(Q_ev - _PUSH_OFF, 0.0)
            t = t_ev
        else:
            t = t_ev
            q = 0.0
            events.append(BilliardEvent(t, "reflection", 0.0, v, -v,
                                        wall.vel(t), wall.vel(t)))
            n_reflections += 1
            v = -v

        e_now = total_energy(current_state(t), p)
        if abs(e_now - e0) > abs(e_extreme - e0):
            e_extreme = e_now

    final = current_state(min(t, t_end)) if t <= t_end else current_state(t_end)
    if sample_dt is not None and (not ts or ts[-1] < t_end):
        ts.append(t_end)
        qs.append(final.q)
        vs.append(final.v)
        Qs.append(final.Q)
        Vs.append(final.V)
    drift = abs(e_extreme - e0) / max(abs(e0), 1e-300)
    return BilliardTrajectory(
        t=np.array(ts), q=np.array(qs), v=np.array(vs),
        Q=np.array(Qs), V=np.array(Vs),
        events=events, n_impacts=n_impacts, n_reflections=n_reflections,
        energy_drift=drift, final=final)


def fixed_wall_pressure(v: float, Q: float, m: float, horizon: float) -> float:
    """Time-averaged momentum transfer rate to a wall pinned at Q.

    Starting from q = 0 with speed v, impacts land at Q/v and then every
    2 Q/v, each delivering impulse 2 m v; the average converges to
    m v^2 / Q with an error of at most one impact's share.
    """
    if min(v, Q, m, horizon) <= 0.0:
        raise ValueError("all fixed_wall_pressure inputs must be positive")
    period = 2.0 * Q / v
    first = Q / v
    n = 0 if horizon < first else 1 + int(math.floor((horizon - first) / period))
    return 2.0 * m * v * n / horizon
