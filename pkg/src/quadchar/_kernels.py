"""Numba kernels for the sieving/scanning hot paths.

Everything here is deliberately allocation-light and single-threaded;
parallelism happens one level up via process pools so results stay
deterministic for any worker count.
"""

import numpy as np
from numba import njit

MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True)
def lpf_sieve(limit):
    """Least-prime-factor table: lpf[n] = smallest prime factor of n, lpf[1]=1."""
    lpf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        lpf[1] = 1
    for i in range(2, limit + 1, 2):
        lpf[i] = 2
    for p in range(3, limit + 1, 2):
        if lpf[p] == 0:
            lpf[p] = p
            for m in range(p * p, limit + 1, 2 * p):
                if lpf[m] == 0:
                    lpf[m] = p
    for p in range(3, limit + 1, 2):
        if lpf[p] == 0:
            lpf[p] = p
    return lpf


@njit(cache=True)
def gpf_sieve(limit):
    """Greatest-prime-factor table; gpf[1] = 1."""
    gpf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        gpf[1] = 1
    for p in range(2, limit + 1):
        if gpf[p] == 0:
            for m in range(p, limit + 1, p):
                gpf[m] = p
    return gpf


@njit(cache=True)
def qr_table(ell):
    """Legendre symbol table mod an odd prime: t[n] = (n|ell)."""
    t = np.zeros(ell, dtype=np.int8)
    half = (ell - 1) // 2
    r = 0
    d = 1
    for _ in range(half):
        r += d
        d += 2
        if r >= ell:
            r -= ell
        if r >= ell:
            r -= ell
        t[r] = 1
    eps = np.int8(1) if ell % 4 == 1 else np.int8(-1)
    for v in range(1, half + 1):
        if t[v] == 1:
            t[ell - v] = eps
        else:
            t[v] = -1
            t[ell - v] = -eps
    return t


# Character tables for the prime discriminants at 2: chi_{-4}, chi_8, chi_{-8}.
TAB_M4 = np.array([0, 1, 0, -1], dtype=np.int8)
TAB_P8 = np.array([0, 1, 0, -1, 0, -1, 0, 1], dtype=np.int8)
TAB_M8 = np.array([0, 1, 0, 1, 0, -1, 0, -1], dtype=np.int8)


@njit(cache=True)
def factor_tables(d, scratch, mods, offs):
    """Decompose fundamental d into prime-discriminant factor tables.

    Writes concatenated per-factor value tables into `scratch` and the
    moduli/offsets into `mods`/`offs`.  Returns the factor count.
    chi_d(n) = prod_j scratch[offs[j] + (n mod mods[j])].
    """
    q = -d if d < 0 else d
    odd = q
    while odd % 2 == 0:
        odd //= 2
    nf = 0
    pos = 0
    # odd prime factors: chi at each is the Legendre symbol table
    dodd = 1
    m = odd
    f = 3
    while f * f <= m:
        if m % f == 0:
            t = qr_table(f)
            for i in range(f):
                scratch[pos + i] = t[i]
            mods[nf] = f
            offs[nf] = pos
            pos += f
            nf += 1
            m //= f
            dodd *= f if f % 4 == 1 else -f
        f += 2
    if m > 1:
        t = qr_table(m)
        for i in range(m):
            scratch[pos + i] = t[i]
        mods[nf] = m
        offs[nf] = pos
        pos += m
        nf += 1
        dodd *= m if m % 4 == 1 else -m
    two = d // dodd  # one of 1, -4, 8, -8
    if two == -4:
        for i in range(4):
            scratch[pos + i] = TAB_M4[i]
        mods[nf] = 4
        offs[nf] = pos
        nf += 1
    elif two == 8:
        for i in range(8):
            scratch[pos + i] = TAB_P8[i]
        mods[nf] = 8
        offs[nf] = pos
        nf += 1
    elif two == -8:
        for i in range(8):
            scratch[pos + i] = TAB_M8[i]
        mods[nf] = 8
        offs[nf] = pos
        nf += 1
    return nf


@njit(cache=True)
def char_fill(d, out):
    """Fill out[n] = chi_d(n) for 0 <= n < len(out)."""
    q = -d if d < 0 else d
    scratch = np.zeros(q + 16, dtype=np.int8)
    mods = np.zeros(10, dtype=np.int64)
    offs = np.zeros(10, dtype=np.int64)
    nf = factor_tables(d, scratch, mods, offs)
    n_out = out.shape[0]
    idx = np.zeros(10, dtype=np.int64)
    out[0] = 0
    for n in range(1, n_out):
        v = np.int8(1)
        for j in range(nf):
            idx[j] += 1
            if idx[j] == mods[j]:
                idx[j] = 0
            v *= scratch[offs[j] + idx[j]]
        out[n] = v
    if n_out > 0:
        out[0] = 0
    return out


@njit(cache=True)
def scan_chunk(ds):
    """Prefix-sum extremes for a chunk of fundamental discriminants.

    Scans only half the period; the reflection chi_d(q-n) = sgn(d)*chi_d(n)
    supplies the other half.  Returns (M, argmax, min_prefix, max_prefix)
    arrays aligned with ds.
    """
    nd = ds.shape[0]
    out_M = np.zeros(nd, dtype=np.int64)
    out_am = np.zeros(nd, dtype=np.int64)
    out_mn = np.zeros(nd, dtype=np.int64)
    out_mx = np.zeros(nd, dtype=np.int64)
    qmax = 0
    for k in range(nd):
        q = -ds[k] if ds[k] < 0 else ds[k]
        if q > qmax:
            qmax = q
    scratch = np.zeros(qmax + 16, dtype=np.int8)
    mods = np.zeros(10, dtype=np.int64)
    offs = np.zeros(10, dtype=np.int64)
    idx = np.zeros(10, dtype=np.int64)
    for k in range(nd):
        d = ds[k]
        q = -d if d < 0 else d
        nf = factor_tables(d, scratch, mods, offs)
        for j in range(nf):
            idx[j] = 0
        hl = q // 2
        s = 0
        M = 0
        am = 0
        mn = 0
        mx = 0
        if nf == 1:
            t0 = offs[0]
            m0 = mods[0]
            i0 = 0
            for t in range(1, hl + 1):
                i0 += 1
                if i0 == m0:
                    i0 = 0
                s += scratch[t0 + i0]
                if s > mx:
                    mx = s
                elif s < mn:
                    mn = s
                a = s if s >= 0 else -s
                if a > M:
                    M = a
                    am = t
        elif nf == 2:
            t0 = offs[0]
            m0 = mods[0]
            t1 = offs[1]
            m1 = mods[1]
            i0 = 0
            i1 = 0
            for t in range(1, hl + 1):
                i0 += 1
                if i0 == m0:
                    i0 = 0
                i1 += 1
                if i1 == m1:
                    i1 = 0
                s += scratch[t0 + i0] * scratch[t1 + i1]
                if s > mx:
                    mx = s
                elif s < mn:
                    mn = s
                a = s if s >= 0 else -s
                if a > M:
                    M = a
                    am = t
        else:
            for t in range(1, hl + 1):
                v = np.int8(1)
                for j in range(nf):
                    idx[j] += 1
                    if idx[j] == mods[j]:
                        idx[j] = 0
                    v *= scratch[offs[j] + idx[j]]
                s += v
                if s > mx:
                    mx = s
                elif s < mn:
                    mn = s
                a = s if s >= 0 else -s
                if a > M:
                    M = a
                    am = t
        if d > 0:
            # upper half prefix sums are the negatives of the lower half
            nmn = mn if mn < -mx else -mx
            nmx = mx if mx > -mn else -mn
            mn = nmn
            mx = nmx
        if mn > 0:
            mn = 0  # S(q) = 0 is always in range
        if mx < 0:
            mx = 0
        out_M[k] = M
        out_am[k] = am
        out_mn[k] = mn
        out_mx[k] = mx
    return out_M, out_am, out_mn, out_mx


@njit(cache=True)
def lambda_chunk(ps):
    """Positivity counts for Legendre prefix sums, one prime per entry.

    Returns (npos, nzero) arrays: npos[k] = #{0 <= n < p : S_p(n) > 0},
    nzero[k] = #{S_p(n) = 0}.  Scans half the period and uses the
    reflection S(p-1-n) = +-S(n); the inner scan skips whole 64-bit words
    while |S| stays clear of zero.
    """
    np_ = ps.shape[0]
    out_pos = np.zeros(np_, dtype=np.int64)
    out_zero = np.zeros(np_, dtype=np.int64)
    pmax = 0
    for k in range(np_):
        if ps[k] > pmax:
            pmax = ps[k]
    nw_max = ((pmax - 1) // 2 >> 6) + 2
    bits = np.zeros(nw_max, dtype=np.uint64)
    for k in range(np_):
        p = ps[k]
        half = (p - 1) // 2
        nw = (half >> 6) + 1
        for w in range(nw):
            bits[w] = 0
        p1mod4 = (p & 3) == 1
        r = 0
        dstep = 1
        if p1mod4:
            for _ in range(half):
                r += dstep
                dstep += 2
                if r >= p:
                    r -= p
                if r >= p:
                    r -= p
                v = r
                if v > half:
                    v = p - v
                bits[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
        else:
            for _ in range(half):
                r += dstep
                dstep += 2
                if r >= p:
                    r -= p
                if r >= p:
                    r -= p
                if r <= half:
                    bits[r >> 6] |= np.uint64(1) << np.uint64(r & 63)
        s = 0
        pos_half = 0   # over n in [1, half-1]
        zero_half = 0
        mid_pos = 0
        mid_zero = 0
        n = 1
        while n <= half:
            hi = (((n >> 6) + 1) << 6) - 1
            if hi > half:
                hi = half
            span = hi - n + 1
            if s - span > 0 or s + span < 0:
                word = bits[n >> 6]
                pc = 0
                for b in range(n & 63, (n & 63) + span):
                    pc += int((word >> np.uint64(b)) & np.uint64(1))
                if s - span > 0:
                    if hi < half:
                        pos_half += span
                    else:
                        pos_half += span - 1
                        mid_pos = 1
                s += 2 * pc - span
                n = hi + 1
                continue
            word = bits[n >> 6]
            for m in range(n, hi + 1):
                bit = int((word >> np.uint64(m & 63)) & np.uint64(1))
                s += 2 * bit - 1
                if m < half:
                    if s > 0:
                        pos_half += 1
                    elif s == 0:
                        zero_half += 1
                else:
                    mid_pos = 1 if s > 0 else 0
                    mid_zero = 1 if s == 0 else 0
            n = hi + 1
        if p1mod4:
            # odd symmetry: S(p-1-n) = -S(n); middle value is 0, n=0 pairs n=p-1
            nzero = 2 * (zero_half + 1) + 1
            out_zero[k] = nzero
            out_pos[k] = (p - nzero) // 2
        else:
            # even symmetry: S(p-1-n) = S(n)
            out_pos[k] = 2 * pos_half + mid_pos
            out_zero[k] = 2 * (zero_half + 1) + mid_zero
    return out_pos, out_zero


@njit(cache=True)
def series_over_n(values, q, nmax):
    """sum_{n<=nmax} chi(n)/n for a periodic table, Kahan-compensated."""
    total = 0.0
    comp = 0.0
    r = 0
    for n in range(1, nmax + 1):
        r += 1
        if r == q:
            r = 0
        v = values[r]
        if v != 0:
            term = v / n
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
    return total


@njit(cache=True)
def residue_harmonic_weights(q, nmax):
    """w[r] = sum_{n<=nmax, n= r mod q} 1/n (compensated per bucket)."""
    w = np.zeros(q, dtype=np.float64)
    c = np.zeros(q, dtype=np.float64)
    r = 0
    for n in range(1, nmax + 1):
        r += 1
        if r == q:
            r = 0
        term = 1.0 / n
        y = term - c[r]
        t = w[r] + y
        c[r] = (t - w[r]) - y
        w[r] = t
    return w


@njit(cache=True)
def multiplicative_fill(prime_vals, lpf, out):
    """Extend a completely multiplicative function from its prime values.

    prime_vals[p] must hold the value at each prime p <= len(out)-1;
    composite entries are ignored.  out is int8.
    """
    n_out = out.shape[0]
    if n_out > 0:
        out[0] = 0
    if n_out > 1:
        out[1] = 1
    for n in range(2, n_out):
        p = lpf[n]
        if p == n:
            out[n] = prime_vals[n]
        else:
            out[n] = out[p] * out[n // p]
    return out


@njit(cache=True)
def smooth_harmonic_sum(primes, limit):
    """sum of 1/n over n <= limit whose prime factors all lie in `primes`."""
    npr = primes.shape[0]
    total = 1.0  # n = 1
    # DFS over canonical factorizations: frame = (value n, next prime index)
    stack_n = np.zeros(64, dtype=np.float64)
    stack_j = np.zeros(64, dtype=np.int64)
    top = 0
    stack_n[0] = 1.0
    stack_j[0] = 0
    while top >= 0:
        n = stack_n[top]
        j = stack_j[top]
        stack_j[top] += 1
        if j >= npr or n * primes[j] > limit:
            top -= 1
            continue
        m = n * primes[j]
        total += 1.0 / m
        top += 1
        stack_n[top] = m
        stack_j[top] = j  # same prime again allowed (exponent bump)
    return total


@njit(cache=True)
def smooth_harmonic_range_sum(primes, lo, hi):
    """sum of 1/n over smooth n with lo < n <= hi."""
    npr = primes.shape[0]
    total = 0.0
    stack_n = np.zeros(64, dtype=np.float64)
    stack_j = np.zeros(64, dtype=np.int64)
    top = 0
    stack_n[0] = 1.0
    stack_j[0] = 0
    while top >= 0:
        n = stack_n[top]
        j = stack_j[top]
        stack_j[top] += 1
        if j >= npr or n * primes[j] > hi:
            top -= 1
            continue
        m = n * primes[j]
        if m > lo:
            total += 1.0 / m
        top += 1
        stack_n[top] = m
        stack_j[top] = j
    return total


@njit(cache=True)
def rough_divisor_square_sum(primes, k, nmax, theta):
    """sum d_k(n^2)/n^2 over n composed only of `primes` (all > y).

    nmax <= 0 means unbounded; a branch is abandoned once its own term
    drops below theta (every descendant term is strictly smaller).
    Returns (sum, explored node count).  The n=1 term (=1) is included.
    """
    npr = primes.shape[0]
    total = 1.0
    comp = 0.0
    nodes = 1
    # frame iterates children m = n * primes[j]^a, canonical factorizations:
    # a child fixes the exponent of primes[j] and recurses with j+1.
    stack_n = np.zeros(128, dtype=np.float64)
    stack_dk = np.zeros(128, dtype=np.float64)
    stack_j = np.zeros(128, dtype=np.int64)   # prime index being iterated
    stack_pa = np.zeros(128, dtype=np.float64)  # primes[j]^a for current a
    stack_a = np.zeros(128, dtype=np.int64)   # exponent last tried (0 = none)
    top = 0
    stack_n[0] = 1.0
    stack_dk[0] = 1.0
    stack_j[0] = 0
    stack_pa[0] = 1.0
    stack_a[0] = 0
    while top >= 0:
        j = stack_j[top]
        if j >= npr:
            top -= 1
            continue
        if stack_a[top] == 0:
            a = 1
            pa = float(primes[j])
        else:
            a = stack_a[top] + 1
            pa = stack_pa[top] * primes[j]
        m = stack_n[top] * pa
        # d_k(p^{2a}) = C(2a + k - 1, k - 1)
        b = 1.0
        for i in range(1, k):
            b *= (2.0 * a + i) / i
        dkc = stack_dk[top] * b
        term = dkc / (m * m)
        if (nmax > 0 and m > nmax) or term < theta:
            if a == 1:
                # larger primes give smaller terms still: frame exhausted
                top -= 1
            else:
                stack_j[top] = j + 1
                stack_a[top] = 0
            continue
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        nodes += 1
        stack_a[top] = a
        stack_pa[top] = pa
        top += 1
        stack_n[top] = m
        stack_dk[top] = dkc
        stack_j[top] = j + 1
        stack_pa[top] = 1.0
        stack_a[top] = 0
    return total, nodes


@njit(cache=True)
def splitmix64(z):
    z = (z + np.uint64(0x9E3779B97F4A7C15)) & MASK64
    z = ((z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)) & MASK64
    z = ((z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)) & MASK64
    return (z ^ (z >> np.uint64(31))) & MASK64


@njit(cache=True)
def prime_sign(seed, p):
    """Deterministic fair sign at prime p for a given seed (counter RNG)."""
    h = splitmix64(np.uint64(seed) ^ (np.uint64(p) * np.uint64(0xA24BAED4963EE407)))
    return 1 if (h >> np.uint64(63)) == np.uint64(0) else -1


@njit(cache=True)
def rough_sum_eval(inv_n, offsets, pidx, signs):
    """sum X(n)/n given CSR (offsets, pidx) of odd-exponent prime indices."""
    total = 0.0
    comp = 0.0
    for i in range(inv_n.shape[0]):
        s = 1
        for j in range(offsets[i], offsets[i + 1]):
            s *= signs[pidx[j]]
        term = s * inv_n[i]
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total
