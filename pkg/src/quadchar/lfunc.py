"""Exact and series evaluation of L(1, chi_d) and the chi_{-3}-twisted
values, plus Euler products over initial prime segments."""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .arith import FundamentalDiscriminant, PrimeTable, is_fundamental, kronecker
from .charsum import character_values


@dataclass(frozen=True)
class LValue:
    d: int
    twist: str          # "none" or "chi-3"
    value: float        # modulus of the twisted value; plain value otherwise
    method: str         # "identity" | "closed-form" | "series"
    error_bound: float


CHI3 = np.array([0, 1, -1], dtype=np.int8)  # non-principal character mod 3


def l1_identity_odd(d: int) -> LValue:
    """L(1, chi_d) for d < 0 from the finite half-period character sum.

    The half sum equals (2 - chi_d(2)) * sqrt(|d|) * L(1, chi_d) / pi,
    so the L-value is exact up to float rounding.
    """
    fd = FundamentalDiscriminant(int(d))
    if fd.d > 0:
        raise ValueError(f"identity evaluation needs d < 0, got {d}")
    q = fd.q
    vals = character_values(fd.d, q // 2)
    s = int(vals.sum())
    chi2 = kronecker(fd.d, 2)
    value = math.pi * s / ((2 - chi2) * math.sqrt(q))
    return LValue(d=fd.d, twist="none", value=value, method="identity",
                  error_bound=1e-14 * max(1.0, abs(value)))


def l1_closed_even(d: int) -> LValue:
    """L(1, chi_d) for d > 0 via the finite log-sin evaluation.

    Uses the reflection a <-> d-a (chi_d even, sin symmetric) to halve the
    work and cancel rounding.
    """
    fd = FundamentalDiscriminant(int(d))
    if fd.d < 0:
        raise ValueError(f"closed-form evaluation needs d > 0, got {d}")
    q = fd.q
    vals = character_values(fd.d, (q - 1) // 2).astype(np.float64)
    a = np.arange((q - 1) // 2 + 1)
    logs = np.zeros_like(vals)
    nz = vals != 0
    logs[nz] = np.log(np.sin(math.pi * a[nz] / q))
    value = -2.0 / math.sqrt(q) * float(np.dot(vals, logs))
    return LValue(d=fd.d, twist="none", value=value, method="closed-form",
                  error_bound=1e-12 * max(1.0, abs(value)))


def product_period(d: int, twist: str) -> np.ndarray:
    """One full period of chi_d (twist="none") or chi_d * chi_{-3}."""
    q = abs(d)
    if twist == "none":
        return character_values(d, q - 1)
    if twist != "chi-3":
        raise ValueError(f"unknown twist {twist!r}")
    period = q if q % 3 == 0 else 3 * q
    vals = character_values(d, period - 1)
    n = np.arange(period)
    return (vals * CHI3[n % 3]).astype(np.int8)


def l1_series(d: int, twist: str = "none", N: int = 0) -> LValue:
    """Partial sum of sum chi(n)/n with an Abel-summation tail bound.

    The bound uses the observed prefix-sum extremes of the actual period,
    not the worst-case Polya-Vinogradov constant: the tail past N is at
    most max_r |S(r) - S(N mod P)| / (N + 1).
    """
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    period = product_period(d, twist)
    P = len(period)
    if N <= 0:
        N = 10 * P
    total = _kernels.series_over_n(period, P, int(N))
    S = np.cumsum(period.astype(np.int64))
    tail = float(np.max(np.abs(S - S[N % P]))) / (N + 1)
    return LValue(d=int(d), twist=twist, value=float(abs(total)) if twist != "none" else float(total),
                  method="series", error_bound=tail)


def l1_twisted_exact(d: int) -> float:
    """|L(1, chi_d * chi_{-3})| for d > 0 through the exact odd evaluators.

    For 3 | d the product character is imprimitive; its value is the
    primitive one with the Euler factor at 3 removed.
    """
    if d <= 0 or not is_fundamental(d):
        raise ValueError(f"need a positive fundamental discriminant, got {d}")
    if d % 3 != 0:
        return abs(l1_identity_odd(-3 * d).value)
    dp = -(d // 3)
    base = l1_identity_odd(dp).value
    return abs(base * (1.0 - kronecker(dp, 3) / 3.0))


def euler_product_smooth(d: int, y: float, table: PrimeTable) -> float:
    """prod_{q <= y} (1 - chi_d(q)/q)^(-1) over the prime table."""
    out = 1.0
    for p in table.primes:
        p = int(p)
        if p > y:
            break
        out /= 1.0 - kronecker(d, p) / p
    return out


def mertens_product(y: float, table: PrimeTable) -> float:
    """prod_{p <= y} (1 - 1/p)^(-1); tracks e^gamma log y for large y."""
    if y < 2:
        return 1.0
    out = 1.0
    for p in table.primes:
        p = int(p)
        if p > y:
            break
        out /= 1.0 - 1.0 / p
    return out
