"""Pure-Python integer kernels for the check evaluators.

The harness keeps its own small-scale routines on plain int lists so the
identity checks are bignum-exact with no vectorization layer in the
trust path; the numpy implementations elsewhere are cross-checked
against these in the test suite.  Everything here is sized for the
sweep regime (n up to ~10), where list arithmetic also happens to be
faster than tiny-array numpy calls.
"""

from __future__ import annotations

from functools import lru_cache


def fwht(vals: list) -> list:
    """Unnormalized Walsh-Hadamard transform of a length-2^n list."""
    a = list(vals)
    size = len(a)
    h = 1
    while h < size:
        for i in range(0, size, 2 * h):
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
        h *= 2
    return a


def zeta_superset(vals: list) -> list:
    """Superset sums: out[s] = sum of vals[t] over t containing s."""
    z = list(vals)
    size = len(z)
    b = 1
    while b < size:
        for s in range(size):
            if not s & b:
                z[s] += z[s | b]
        b *= 2
    return z


@lru_cache(maxsize=32)
def popcounts(n: int) -> tuple:
    return tuple(i.bit_count() for i in range(1 << n))


def signs_from_bits(bits: int, n: int) -> list:
    return [-1 if (bits >> i) & 1 else 1 for i in range(1 << n)]


def pivotal_masks(signs: list, n: int) -> list:
    """Pivotal-coordinate mask at every point."""
    size = 1 << n
    piv = [0] * size
    for k in range(n):
        b = 1 << k
        for x in range(size):
            if not x & b and signs[x] != signs[x | b]:
                piv[x] |= b
                piv[x | b] |= b
    return piv


def is_monotone_signs(signs: list, n: int) -> bool:
    size = 1 << n
    for k in range(n):
        b = 1 << k
        for x in range(size):
            # x | b is the endpoint with coordinate k equal to -1
            if x & b and signs[x] > signs[x ^ b]:
                return False
    return True


def derivative_tables(signs: list, n: int) -> list:
    """2^|S| times the order-|S| derivative for every mask S.

    Entry S is a 2^n list, built by one-coordinate differencing from a
    parent with one fewer bit; only function values enter, so this is
    the combinatorial route, independent of any transform.
    """
    size = 1 << n
    tables = [None] * size
    tables[0] = list(signs)
    for s in range(1, size):
        b = s & -s
        parent = tables[s ^ b]
        cur = [0] * size
        for x in range(size):
            cur[x] = parent[x] - parent[x ^ b]
        tables[s] = cur
    return tables


def restriction_square_sums(signs: list, n: int, free_mask: int) -> list:
    """For each free coordinate k, the integer restriction invariant side.

    Returns acc with acc[k] = sum over pinned assignments x of
    sum_{S containing k} (2^j * restricted fhat(S))^2, for k iterating
    bit positions of ``free_mask`` (others 0); j = popcount(free_mask).
    """
    free = [k for k in range(n) if (free_mask >> k) & 1]
    pinned = [k for k in range(n) if not (free_mask >> k) & 1]
    j = len(free)
    sub_size = 1 << j
    acc = [0] * n
    for a in range(1 << len(pinned)):
        base = 0
        for i, k in enumerate(pinned):
            if (a >> i) & 1:
                base |= 1 << k
        sub = [0] * sub_size
        for y in range(sub_size):
            idx = base
            for i, k in enumerate(free):
                if (y >> i) & 1:
                    idx |= 1 << k
            sub[y] = signs[idx]
        coef = fwht(sub)
        for i, k in enumerate(free):
            kb = 1 << i
            acc[k] += sum(coef[t] * coef[t] for t in range(sub_size) if t & kb)
    return acc
