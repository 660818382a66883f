"""Shared brute-force oracles.

Everything here computes from first principles: coordinate tuples and
explicit products/sums with Fraction arithmetic, no bit tricks, no fast
transforms.  Oracles must stay independent of the code paths they
check.
"""

from fractions import Fraction

import pytest

from boolcube import TruthTable

CRITERION_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in CRITERION_RESULTS:
            terminalreporter.write_line(line)


def point_coords(index: int, n: int) -> tuple:
    """Coordinates (x_1..x_n) of a point index, +1/-1."""
    return tuple(-1 if (index >> (k - 1)) & 1 else 1 for k in range(1, n + 1))


def mask_coords(mask: int, n: int) -> tuple:
    """1-based coordinates selected by a subset mask."""
    return tuple(k for k in range(1, n + 1) if (mask >> (k - 1)) & 1)


def naive_char(mask: int, index: int, n: int) -> int:
    x = point_coords(index, n)
    out = 1
    for k in mask_coords(mask, n):
        out *= x[k - 1]
    return out


def naive_transform(f: TruthTable) -> list:
    """All Fourier coefficients by the defining double loop, O(4^n)."""
    n, size = f.n, f.size
    out = []
    for mask in range(size):
        acc = 0
        for x in range(size):
            acc += f.sign(x) * naive_char(mask, x, n)
        out.append(Fraction(acc, size))
    return out


def naive_influence(f: TruthTable, k: int) -> Fraction:
    """P(coordinate k pivotal) by flip counting, 1-based k."""
    bit = 1 << (k - 1)
    count = sum(1 for x in range(f.size) if f.sign(x) != f.sign(x ^ bit))
    return Fraction(count, f.size)


def naive_pair_influence(f: TruthTable, k: int, l: int) -> Fraction:
    bk, bl = 1 << (k - 1), 1 << (l - 1)
    count = sum(
        1 for x in range(f.size)
        if f.sign(x) != f.sign(x ^ bk) and f.sign(x) != f.sign(x ^ bl)
    )
    return Fraction(count, f.size)


def naive_derivative_value(f: TruthTable, mask: int, x: int) -> Fraction:
    """Signed average over sub-flips, straight from the definition."""
    coords = mask_coords(mask, f.n)
    total = Fraction(0)
    for pick in range(1 << len(coords)):
        flip_mask = 0
        sign = 1
        for i, k in enumerate(coords):
            if (pick >> i) & 1:
                flip_mask |= 1 << (k - 1)
                sign = -sign
        total += sign * f.sign(x ^ flip_mask)
    return total / (1 << len(coords))


def naive_is_monotone(f: TruthTable) -> bool:
    """All-pairs comparability check (not edge-based)."""
    size = f.size
    for x in range(size):
        for y in range(size):
            # y dominates x coordinatewise iff y's -1 set is a subset of x's
            if (y & x) == y and f.sign(x) > f.sign(y):
                return False
    return True


def naive_biased_mean(f: TruthTable, bias) -> Fraction:
    """Sum over points of P(y = x) f(x) with independent biased bits."""
    total = Fraction(0)
    for x in range(f.size):
        coords = point_coords(x, f.n)
        p = Fraction(1)
        for xi, pi in zip(coords, bias):
            p *= Fraction(1 + xi * Fraction(pi), 2)
        total += p * f.sign(x)
    return total


def naive_restricted_coef(f: TruthTable, free_mask: int, pinned_point: int,
                          submask: int) -> Fraction:
    """Coefficient of one restriction by the defining sum.

    ``submask`` indexes the free coordinates in increasing original
    order; ``pinned_point`` supplies every pinned coordinate.
    """
    free = mask_coords(free_mask, f.n)
    j = len(free)
    acc = 0
    for y in range(1 << j):
        idx = pinned_point & ~free_mask
        for i, k in enumerate(free):
            if (y >> i) & 1:
                idx |= 1 << (k - 1)
        chi = 1
        for i, k in enumerate(free):
            if (submask >> i) & 1 and (y >> i) & 1:
                chi = -chi
        acc += f.sign(idx) * chi
    return Fraction(acc, 1 << j)


def enumerate_monotone(n: int) -> list:
    """Every monotone table at dimension n, by filtering all tables."""
    out = []
    for bits in range(1 << (1 << n)):
        t = TruthTable(n, bits)
        if naive_is_monotone(t):
            out.append(t)
    return out


@pytest.fixture(scope="session")
def monotone_n3() -> list:
    return enumerate_monotone(3)


@pytest.fixture(scope="session")
def monotone_n4() -> list:
    return enumerate_monotone(4)
