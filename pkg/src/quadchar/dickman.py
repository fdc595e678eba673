"""Dickman-de Bruijn rho: table construction, integrals, the smooth
harmonic-sum comparison and the tail-threshold solver."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .constants import EXP_GAMMA


@dataclass(frozen=True)
class RhoTable:
    u_max: float
    step: float
    values: np.ndarray          # rho on the uniform grid
    integral_values: np.ndarray  # int_0^u rho on the same grid


def _build(u_max: float, step: float) -> RhoTable:
    """Integrate u*rho(u) = int_{u-1}^u rho with 4th-order closed rules.

    The window integral advances incrementally (Adams-Moulton head,
    centered-cubic tail) and is re-anchored by a fresh composite Simpson
    pass once per unit interval so float drift cannot accumulate.
    """
    win = round(1.0 / step)
    n = round(u_max / step) + 1
    u = np.arange(n) * step
    rho = np.zeros(n)
    # analytic pieces: 1 on [0,1], 1 - log u on [1,2]
    rho[: win + 1] = 1.0
    seg = u[win : 2 * win + 1]
    rho[win : 2 * win + 1] = 1.0 - np.log(seg)
    if n <= 2 * win + 1:
        return _finish(u_max, step, u, rho)
    iw = 2.0 - 2.0 * math.log(2.0)  # int_1^2 (1 - log t) dt
    c9, c19, c5, c1 = 9.0 / 24.0, 19.0 / 24.0, 5.0 / 24.0, 1.0 / 24.0
    for i in range(2 * win + 1, n):
        if (i - 1) % win == 0:
            # composite Simpson re-anchor of int over [u_{i-1}-1, u_{i-1}]
            lo = i - 1 - win
            acc = rho[lo] + rho[i - 1]
            s4 = 0.0
            for j in range(lo + 1, i - 1, 2):
                s4 += rho[j]
            s2 = 0.0
            for j in range(lo + 2, i - 1, 2):
                s2 += rho[j]
            iw = step / 3.0 * (acc + 4.0 * s4 + 2.0 * s2)
        lead_known = c19 * rho[i - 1] - c5 * rho[i - 2] + c1 * rho[i - 3]
        t0 = i - win - 2
        trail = (-rho[t0] + 13.0 * rho[t0 + 1] + 13.0 * rho[t0 + 2] - rho[t0 + 3]) / 24.0
        rhs = iw + step * (lead_known - trail)
        rho[i] = rhs / (u[i] - step * c9)
        iw = rhs + step * c9 * rho[i]
    return _finish(u_max, step, u, rho)


def _finish(u_max, step, u, rho) -> RhoTable:
    n = len(u)
    win = round(1.0 / step)
    integral = np.zeros(n)
    # analytic through u = 2: u on [0,1], 2u - u log u - 1 on [1,2]
    top = min(win, n - 1)
    integral[: top + 1] = u[: top + 1]
    if n > win:
        hi = min(2 * win, n - 1)
        seg = u[win : hi + 1]
        integral[win : hi + 1] = 2.0 * seg - seg * np.log(seg) - 1.0
    c9, c19, c5, c1 = 9.0 / 24.0, 19.0 / 24.0, 5.0 / 24.0, 1.0 / 24.0
    for i in range(min(2 * win, n - 1) + 1, n):
        inc = step * (c9 * rho[i] + c19 * rho[i - 1] - c5 * rho[i - 2] + c1 * rho[i - 3])
        integral[i] = integral[i - 1] + inc
    return RhoTable(u_max=u_max, step=step, values=rho, integral_values=integral)


@lru_cache(maxsize=4)
def rho_table(u_max: float = 20.0, step: float = 1e-4) -> RhoTable:
    return _build(u_max, step)


def _interp_cubic(grid_vals: np.ndarray, step: float, u: float) -> float:
    """4-point Lagrange interpolation on the uniform grid."""
    n = len(grid_vals)
    x = u / step
    i = int(x)
    i = max(1, min(i, n - 3))
    t = x - i
    f0, f1, f2, f3 = grid_vals[i - 1], grid_vals[i], grid_vals[i + 1], grid_vals[i + 2]
    return float(
        f0 * (-t * (t - 1) * (t - 2) / 6.0)
        + f1 * ((t + 1) * (t - 1) * (t - 2) / 2.0)
        + f2 * (-(t + 1) * t * (t - 2) / 2.0)
        + f3 * ((t + 1) * t * (t - 1) / 6.0)
    )


def rho(u: float, table: RhoTable | None = None) -> float:
    """Dickman rho; exact on [0,2], table-interpolated beyond."""
    if u < 0:
        raise ValueError(f"rho needs u >= 0, got {u}")
    if u <= 1.0:
        return 1.0
    if u <= 2.0:
        return 1.0 - math.log(u)
    if table is None:
        table = rho_table()
    if u >= table.u_max:
        return 0.0
    return _interp_cubic(table.values, table.step, u)


def rho_integral(u: float, table: RhoTable | None = None) -> float:
    """int_0^u rho(t) dt."""
    if u < 0:
        raise ValueError(f"rho_integral needs u >= 0, got {u}")
    if u <= 1.0:
        return u
    if u <= 2.0:
        return 2.0 * u - u * math.log(u) - 1.0
    if table is None:
        table = rho_table()
    if u >= table.u_max:
        return float(table.integral_values[-1])
    return _interp_cubic(table.integral_values, table.step, u)


def rho_tail(u: float, table: RhoTable | None = None) -> float:
    """int_u^inf rho = e^gamma - int_0^u rho (e^gamma pinned, not derived)."""
    return EXP_GAMMA - rho_integral(u, table)


def smooth_harmonic(y: float, u: float, limit_cap: int = 10**8):
    """Exact sum_{n <= y^u, P+(n) <= y} 1/n against its rho prediction.

    Returns (exact, prediction, gap) with prediction = log(y) * int_0^u rho.
    """
    if y < 2:
        raise ValueError(f"y must be >= 2, got {y}")
    limit = y**u
    if limit > limit_cap:
        raise ValueError(f"y^u = {limit:.3g} exceeds enumerable cap {limit_cap}")
    from .arith import sieve_primes

    ps = sieve_primes(max(int(y), 2)).primes
    ps = ps[ps <= y].astype(np.float64)
    exact = float(_kernels.smooth_harmonic_sum(ps, float(math.floor(limit))))
    pred = math.log(y) * rho_integral(u)
    return exact, pred, exact - pred


def solve_u0(y: float, C: float = 1.0, tol: float = 1e-10) -> float:
    """Solve int_{u0}^inf rho = C * log log y / log y by bisection."""
    if y < 16:
        raise ValueError(f"y must be >= 16, got {y}")
    target = C * math.log(math.log(y)) / math.log(y)
    if target >= EXP_GAMMA:
        raise ValueError(
            f"target {target:.6f} >= e^gamma = {EXP_GAMMA:.6f}: no solution"
        )
    table = rho_table()
    lo, hi = 0.0, table.u_max
    if rho_tail(hi, table) > target:
        raise ValueError(f"target {target:.3g} below the table tail at u={hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if rho_tail(mid, table) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
