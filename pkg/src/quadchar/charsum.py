"""Character tables over one period, prefix-sum extremes M(chi_d) and the
normalized maximum m(chi_d), plus parallel batch scans over families."""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .arith import FundamentalDiscriminant, enumerate_fundamental, kronecker, sieve_primes
from .constants import EXP_MINUS_GAMMA


@dataclass(frozen=True)
class CharacterTable:
    """chi_d over one full period: values[n] = chi_d(n) for 0 <= n < |d|."""

    d: int
    values: np.ndarray

    @property
    def q(self) -> int:
        return abs(self.d)


@dataclass(frozen=True)
class PrefixSumStats:
    d: int
    M: int
    argmax_t: int
    min_prefix: int
    max_prefix: int
    m: float


def character_table(d, validate: bool = True) -> CharacterTable:
    """Build chi_d over one period by a multiplicative sieve fill.

    Rejects non-fundamental d.  With validate=True, 64 random positions
    are checked against the direct Kronecker symbol.
    """
    if isinstance(d, FundamentalDiscriminant):
        d = d.d
    fd = FundamentalDiscriminant(int(d))
    q = fd.q
    values = np.zeros(q, dtype=np.int8)
    _kernels.char_fill(fd.d, values)
    if validate:
        rng = np.random.default_rng(q)
        for n in rng.integers(0, q, size=64):
            if int(values[n]) != kronecker(fd.d, int(n)):
                raise AssertionError(
                    f"character table self-check failed at d={fd.d}, n={int(n)}"
                )
    return CharacterTable(d=fd.d, values=values)


def character_values(d: int, nmax: int) -> np.ndarray:
    """chi_d(n) for 0 <= n <= nmax (periodic extension past |d|)."""
    q = abs(d)
    if nmax < q:
        out = np.zeros(nmax + 1, dtype=np.int8)
        _kernels.char_fill(d, out)
        return out
    period = np.zeros(q, dtype=np.int8)
    _kernels.char_fill(d, period)
    reps = nmax // q + 1
    return np.tile(period, reps)[: nmax + 1]


def m_value(d: int, M: int) -> float:
    """Normalized maximum: e^-gamma * pi * M / sqrt(|d|)."""
    return EXP_MINUS_GAMMA * math.pi * M / math.sqrt(abs(d))


def prefix_extrema(table: CharacterTable) -> PrefixSumStats:
    """Exact running extremes of S(t) = sum_{n<=t} chi_d(n) over t in [1, |d|]."""
    ds = np.array([table.d], dtype=np.int64)
    M, am, mn, mx = _kernels.scan_chunk(ds)
    return PrefixSumStats(
        d=table.d,
        M=int(M[0]),
        argmax_t=int(am[0]),
        min_prefix=int(mn[0]),
        max_prefix=int(mx[0]),
        m=m_value(table.d, int(M[0])),
    )


def prefix_extrema_naive(table: CharacterTable) -> PrefixSumStats:
    """Independent full-period recomputation (oracle for the scan kernel)."""
    S = np.cumsum(table.values.astype(np.int64))
    A = np.abs(S[1:])
    M = int(A.max())
    argmax_t = int(np.flatnonzero(A == M)[0] + 1)
    return PrefixSumStats(
        d=table.d,
        M=M,
        argmax_t=argmax_t,
        min_prefix=int(min(S.min(), 0)),
        max_prefix=int(max(S.max(), 0)),
        m=m_value(table.d, M),
    )


def family_discriminants(x: int, sign: int, family: str = "all") -> np.ndarray:
    """Discriminants of the requested family, sorted by |d|.

    family="all": every fundamental d of the sign; family="prime":
    prime |d| = p only (p = 1 mod 4 gives d = p, p = 3 mod 4 gives d = -p).
    """
    if family == "all":
        return enumerate_fundamental(x, sign)
    if family == "prime":
        primes = sieve_primes(max(x, 3)).primes
        if sign > 0:
            sel = primes[primes % 4 == 1]
            return sel.astype(np.int64)
        sel = primes[primes % 4 == 3]
        return (-sel).astype(np.int64)
    raise ValueError(f"unknown family {family!r}")


def _scan_worker(ds: np.ndarray):
    try:
        return _kernels.scan_chunk(ds)
    except Exception as exc:  # pragma: no cover - defensive
        lo, hi = int(ds[0]), int(ds[-1])
        raise RuntimeError(f"scan worker failed on chunk d={lo}..{hi}: {exc}") from exc


def scan_stats_arrays(ds: np.ndarray, workers: int = 0):
    """Columnar prefix stats (d, M, argmax, min, max, m) for a discriminant set.

    Output order follows ds regardless of worker count.
    """
    ds = np.asarray(ds, dtype=np.int64)
    if workers <= 0:
        workers = min(os.cpu_count() or 1, 8)
    if len(ds) == 0:
        z = np.zeros(0, dtype=np.int64)
        return ds, z, z, z, z, np.zeros(0)
    if workers == 1 or len(ds) < 64:
        M, am, mn, mx = _scan_worker(ds)
    else:
        # contiguous |d| ranges so each worker's table scratch stays small
        nchunks = min(workers * 4, max(1, len(ds) // 16))
        chunks = np.array_split(ds, nchunks)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_worker, chunks))
        M = np.concatenate([p[0] for p in parts])
        am = np.concatenate([p[1] for p in parts])
        mn = np.concatenate([p[2] for p in parts])
        mx = np.concatenate([p[3] for p in parts])
    m = EXP_MINUS_GAMMA * math.pi * M / np.sqrt(np.abs(ds).astype(np.float64))
    return ds, M, am, mn, mx, m


def batch_scan(
    x: int,
    sign: int,
    family: str = "all",
    workers: int = 0,
) -> Iterator[PrefixSumStats]:
    """Scan every family member with 3 <= |d| <= x; yields records by |d|."""
    if x < 3:
        raise ValueError(f"x must be >= 3, got {x}")
    ds = family_discriminants(x, sign, family)
    ds, M, am, mn, mx, m = scan_stats_arrays(ds, workers)
    for i in range(len(ds)):
        yield PrefixSumStats(
            d=int(ds[i]),
            M=int(M[i]),
            argmax_t=int(am[i]),
            min_prefix=int(mn[i]),
            max_prefix=int(mx[i]),
            m=float(m[i]),
        )
