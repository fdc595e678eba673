"""Integer arithmetic primitives: sieves, Kronecker symbol, fundamental
discriminants, smoothness queries and divisor functions."""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class PrimeTable:
    """Primes up to `limit` plus a least-prime-factor array.

    smallest_factor[n] is the least prime factor of n (0 for n < 2,
    1 for n = 1); smallest_factor[p] == p exactly when p is prime.
    Immutable and safe to share across workers.
    """

    limit: int
    primes: np.ndarray
    smallest_factor: np.ndarray

    def is_prime(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            raise ValueError(f"n={n} outside table range [2, {self.limit}]")
        return int(self.smallest_factor[n]) == n

    def pi(self, x: float) -> int:
        """Number of primes <= x."""
        if x > self.limit:
            raise ValueError(f"x={x} beyond table limit {self.limit}")
        return int(np.searchsorted(self.primes, int(x), side="right"))


def sieve_primes(limit: int) -> PrimeTable:
    """Build a PrimeTable covering [2, limit]."""
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    lpf = _kernels.lpf_sieve(limit)
    idx = np.flatnonzero(lpf[2:] == np.arange(2, limit + 1, dtype=np.int32))
    primes = (idx + 2).astype(np.int64)
    return PrimeTable(limit=limit, primes=primes, smallest_factor=lpf)


def primes_in_range(lo: int, hi: int, segment: int = 1 << 22) -> np.ndarray:
    """Primes in (lo, hi] via a segmented sieve; no factor table kept."""
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    base_limit = int(math.isqrt(hi)) + 1
    base = sieve_primes(max(base_limit, 2)).primes
    out = []
    start = max(lo + 1, 2)
    while start <= hi:
        end = min(start + segment - 1, hi)
        mask = np.ones(end - start + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > end:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            mask[first - start::p] = False
        if start <= 1:
            mask[: 2 - start] = False
        seg = np.flatnonzero(mask) + start
        out.append(seg)
        start = end + 1
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), completely multiplicative in n.

    Binary-reciprocity algorithm, O(log^2) word operations.  Handles
    n = 0 ((a|0) = 1 iff a = +-1) and either sign of a or n.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        z = 0
        while n % 2 == 0:
            n //= 2
            z += 1
        if z % 2 == 1 and a % 8 in (3, 5):
            res = -res
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    i = 2
    while i * i <= n:
        if n % (i * i) == 0:
            return False
        i += 1
    return True


def is_fundamental(d: int) -> bool:
    """True iff d is a fundamental discriminant (d = 1 excluded)."""
    if d == 0:
        raise ValueError("d = 0 is not a discriminant")
    if d == 1:
        return False
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


@dataclass(frozen=True)
class FundamentalDiscriminant:
    """Validated fundamental discriminant with |d| >= 3."""

    d: int
    sign: int = field(init=False)
    parity: str = field(init=False)

    def __post_init__(self):
        if not is_fundamental(self.d):
            raise ValueError(f"{self.d} is not a fundamental discriminant")
        if abs(self.d) < 3:
            raise ValueError(f"|d| must be >= 3, got {self.d}")
        object.__setattr__(self, "sign", 1 if self.d > 0 else -1)
        object.__setattr__(self, "parity", "even" if self.d > 0 else "odd")

    @property
    def q(self) -> int:
        return abs(self.d)


def _squarefree_mask(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for i in range(2, int(math.isqrt(limit)) + 1):
        mask[i * i :: i * i] = False
    return mask


def enumerate_fundamental(x: int, sign: int) -> np.ndarray:
    """All fundamental discriminants d of the given sign with 3 <= |d| <= x.

    Returns a signed int64 array sorted by |d|.  d = 1 never appears.
    """
    if x < 3:
        raise ValueError(f"x must be >= 3, got {x}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    sf = _squarefree_mask(x)
    ns = np.arange(x + 1)
    if sign > 0:
        a = ns[(ns % 4 == 1) & sf & (ns >= 5)]
        m = ns[(ns % 4 == 2) | (ns % 4 == 3)]
        b = 4 * m[sf[m] & (4 * m <= x)]
        out = np.concatenate([a, b])
    else:
        a = ns[(ns % 4 == 3) & sf & (ns >= 3)]
        # d = 4m with m < 0 and m = 2, 3 (mod 4) <=> |m| = 1, 2 (mod 4)
        m = ns[(ns % 4 == 1) | (ns % 4 == 2)]
        b = 4 * m[sf[m] & (4 * m <= x) & (m >= 1)]
        out = -np.concatenate([a, b])
    order = np.argsort(np.abs(out), kind="stable")
    return out[order].astype(np.int64)


def factorize(n: int, table: PrimeTable | None = None) -> dict[int, int]:
    """Prime factorization {p: exponent} of n >= 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out: dict[int, int] = {}
    if table is not None and n <= table.limit:
        lpf = table.smallest_factor
        while n > 1:
            p = int(lpf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return out
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    f = 3
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def largest_prime_factor(n: int, table: PrimeTable | None = None) -> int:
    """P+(n) for n >= 2."""
    if n < 2:
        raise ValueError(f"largest_prime_factor needs n >= 2, got {n}")
    return max(factorize(n, table))


def smallest_prime_factor(n: int, table: PrimeTable | None = None) -> int:
    """P-(n) for n >= 2."""
    if n < 2:
        raise ValueError(f"smallest_prime_factor needs n >= 2, got {n}")
    if table is not None and n <= table.limit:
        return int(table.smallest_factor[n])
    return min(factorize(n))


def is_smooth(n: int, y: float, table: PrimeTable | None = None) -> bool:
    """True iff P+(n) <= y; n = 1 is smooth for every y."""
    if n == 1:
        return True
    return largest_prime_factor(n, table) <= y


def divisor_fn(k: int, n: int, table: PrimeTable | None = None) -> int:
    """d_k(n): ordered k-factorizations of n; d_k(p^a) = C(a+k-1, k-1)."""
    if k < 1 or n < 1:
        raise ValueError("divisor_fn requires k >= 1 and n >= 1")
    out = 1
    for _, a in factorize(n, table).items():
        out *= math.comb(a + k - 1, k - 1)
    return out


def smooth_mask(limit: int, y: float) -> np.ndarray:
    """Boolean array: mask[n] = True iff n is y-smooth (n = 0 excluded)."""
    gpf = _kernels.gpf_sieve(limit)
    mask = gpf <= y
    mask[0] = False
    return mask
