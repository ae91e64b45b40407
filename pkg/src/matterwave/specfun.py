"""Complete elliptic integrals, Jacobi elliptic functions, and the
adaptive quadrature that serves as their independent cross-check.

Every function takes the elliptic *parameter* ``m`` (the squared
modulus), not the modulus itself.  ``ellip_K`` and ``ellip_E`` run the
arithmetic-geometric mean iteration; ``jacobi_sn_cn_dn`` descends a
Landen ladder and finishes with the circular closed form once the
transformed parameter drops below 1e-14.  The quarter-period power
integrals have closed forms in K and E, written here in a
cancellation-free arrangement so they stay accurate down to tiny m,
and ``quad`` can verify each of them numerically.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "QuadratureError",
    "ellip_K",
    "ellip_E",
    "jacobi_sn_cn_dn",
    "power_integral",
    "quad",
]

_EPS = float(np.finfo(float).eps)
_LANDEN_CUTOFF = 1e-14

POWER_INTEGRAL_KINDS = ("sn2", "sn4", "cn2", "cn4")


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget.

    The running estimate at the time of failure is kept in
    ``best_estimate``.
    """

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


def _agm(m: float) -> tuple[float, float, float]:
    """One AGM pass returning ``(K, E, s)`` where ``s = 1 - E/K``.

    ``s`` is accumulated as a positive-term series, so the combinations
    ``K - E = K*s`` and ``E - (1-m)*K = K*(m - s)`` can be formed
    without the catastrophic cancellation that direct subtraction
    suffers at small m.
    """
    a, b = 1.0, math.sqrt(1.0 - m)
    s = 0.5 * m
    f = 0.5
    for _ in range(64):
        if abs(a - b) <= _EPS * a:
            break
        c = 0.5 * (a - b)
        f *= 2.0
        s += f * c * c
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    K = math.pi / (2.0 * a)
    return K, K * (1.0 - s), s


def ellip_K(m: float) -> float:
    """Complete elliptic integral of the first kind, K(m) with m = k**2."""
    if not 0.0 <= m < 1.0:
        raise ValueError(f"ellip_K needs 0 <= m < 1, got m={m!r}")
    return _agm(m)[0]


def ellip_E(m: float) -> float:
    """Complete elliptic integral of the second kind, E(m) with m = k**2."""
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"ellip_E needs 0 <= m <= 1, got m={m!r}")
    if m == 1.0:
        return 1.0
    return _agm(m)[1]


def jacobi_sn_cn_dn(z, m: float):
    """Jacobi elliptic sn, cn, dn at argument ``z`` and parameter ``m``.

    ``z`` may be a scalar or an ndarray; the three results match its
    shape.  Valid for 0 <= m <= 1 (m = 1 uses the hyperbolic limit).
    """
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"jacobi_sn_cn_dn needs 0 <= m <= 1, got m={m!r}")
    z_arr = np.asarray(z, dtype=float)

    if m == 1.0:
        sn = np.tanh(z_arr)
        cn = 1.0 / np.cosh(z_arr)
        dn = np.array(cn, copy=True)
    else:
        # descending Landen ladder: each step maps m -> ((1-k')/(1+k'))^2
        ladder = []
        mu = m
        while mu > _LANDEN_CUTOFF:
            kp = math.sqrt(1.0 - mu)
            k1 = (1.0 - kp) / (1.0 + kp)
            ladder.append(k1)
            mu = k1 * k1

        u = z_arr
        for k1 in ladder:
            u = u / (1.0 + k1)

        # circular limit with first-order correction in the residual mu
        t = u - np.sin(u) * np.cos(u)
        sn = np.sin(u) - 0.25 * mu * t * np.cos(u)
        cn = np.cos(u) + 0.25 * mu * t * np.sin(u)

        for k1 in reversed(ladder):
            d = np.sqrt(np.maximum(1.0 - (k1 * k1) * sn * sn, 0.0))
            den = 1.0 + k1 * sn * sn
            sn, cn = (1.0 + k1) * sn / den, cn * d / den
        dn = np.sqrt(np.maximum(1.0 - m * sn * sn, 0.0))

    if np.ndim(z) == 0:
        return float(sn), float(cn), float(dn)
    return sn, cn, dn


def power_integral(kind: str, m: float) -> float:
    """Closed form of ``integral_0^K(m) f(z|m) dz`` for f in sn2/sn4/cn2/cn4.

    sn2 = (K-E)/m and sn4 = ((2+m)K - 2(1+m)E)/(3 m^2); the cn variants
    follow from cn^2 = 1 - sn^2.  Each expression is rearranged through
    the AGM remainder ``s`` so no leading-order cancellation occurs.
    """
    if kind not in POWER_INTEGRAL_KINDS:
        raise ValueError(f"unknown power integral kind {kind!r}")
    if not 0.0 < m < 1.0:
        raise ValueError(f"power_integral needs 0 < m < 1, got m={m!r}")
    K, _, s = _agm(m)
    sn2 = K * s / m
    if kind == "sn2":
        return sn2
    sn4 = K * (2.0 * (1.0 + m) * s - m) / (3.0 * m * m)
    if kind == "sn4":
        return sn4
    if kind == "cn2":
        return K * (m - s) / m
    return K * (m - 2.0 * s) / m + sn4  # cn4 = K - 2*sn2 + sn4


def _eval_batch(f, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x), dtype=float)
    if y.ndim == 0:
        y = np.full_like(x, float(y))
    return y


def quad(f, a: float, b: float, tol: float, max_intervals: int = 1_000_000) -> float:
    """Adaptive Simpson integral of ``f`` over [a, b].

    The estimated absolute error is kept below ``tol`` by bisecting
    intervals whose Richardson error estimate exceeds their
    width-proportional share of the budget.  ``f`` must accept numpy
    arrays.  Raises :class:`QuadratureError` carrying the best estimate
    if more than ``max_intervals`` subintervals are needed.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if a > b:
        raise ValueError("quad needs a <= b")
    if a == b:
        return 0.0

    # seed with 8 panels so symmetric integrands cannot fool the estimate
    edges = np.linspace(a, b, 9)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    flo = _eval_batch(f, lo)
    fmid = _eval_batch(f, mid)
    fhi = _eval_batch(f, hi)
    S = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    span = b - a
    acc = 0.0
    n_intervals = 8
    while lo.size:
        if n_intervals > max_intervals:
            best = acc + float(np.sum(S))
            raise QuadratureError(
                f"quad did not converge within {max_intervals} subintervals "
                f"(best estimate {best!r})",
                best,
            )
        ml = 0.5 * (lo + mid)
        mr = 0.5 * (mid + hi)
        fml = _eval_batch(f, ml)
        fmr = _eval_batch(f, mr)
        Sl = (mid - lo) / 6.0 * (flo + 4.0 * fml + fmid)
        Sr = (hi - mid) / 6.0 * (fmid + 4.0 * fmr + fhi)
        err = (Sl + Sr - S) / 15.0
        done = np.abs(err) <= tol * (hi - lo) / span
        acc += float(np.sum(Sl[done] + Sr[done] + err[done]))

        keep = ~done
        n_new = int(np.count_nonzero(keep))
        n_intervals += 2 * n_new
        lo, hi, mid, S = (
            np.concatenate([lo[keep], mid[keep]]),
            np.concatenate([mid[keep], hi[keep]]),
            np.concatenate([ml[keep], mr[keep]]),
            np.concatenate([Sl[keep], Sr[keep]]),
        )
        flo, fhi, fmid = (
            np.concatenate([flo[keep], fmid[keep]]),
            np.concatenate([fmid[keep], fhi[keep]]),
            np.concatenate([fml[keep], fmr[keep]]),
        )
    return acc
