"""Constructors for the named function families and block composition.

All constructors return immutable :class:`~boolcube.core.TruthTable`
values in the package's packed encoding (see :mod:`boolcube.core`).
Coordinates are 1-based to match the usual mathematical indexing.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    PseudoBooleanFunction,
    TruthTable,
    _check_dimension,
    popcount_array,
)


def make_and(n: int) -> TruthTable:
    """Conjunction: +1 exactly at the all-(+1) point (index 0)."""
    _check_dimension(n)
    return TruthTable(n, ((1 << (1 << n)) - 1) & ~1)


def make_or(n: int) -> TruthTable:
    """Disjunction: -1 exactly at the all-(-1) point (last index)."""
    _check_dimension(n)
    return TruthTable(n, 1 << ((1 << n) - 1))


def make_parity(n: int, mask: int) -> TruthTable:
    """The character X_S itself, S given as a nonempty coordinate mask."""
    _check_dimension(n)
    if mask == 0:
        raise ValueError("parity requires a nonempty coordinate set")
    if not 0 < mask < (1 << n):
        raise ValueError(f"mask {mask} does not fit in {n} coordinates")
    idx = np.arange(1 << n, dtype=np.int64)
    par = np.zeros(1 << n, dtype=np.int64)
    k = 0
    m = mask
    while m:
        if m & 1:
            par ^= (idx >> k) & 1
        m >>= 1
        k += 1
    return TruthTable.from_signs_array(1 - 2 * par)


def make_dictator(n: int, k: int) -> TruthTable:
    """Projection onto coordinate k (1-based)."""
    _check_dimension(n)
    if not 1 <= k <= n:
        raise ValueError(f"coordinate k={k} out of range [1, {n}]")
    # Packed table is the periodic pattern: 2^(k-1) zeros then 2^(k-1) ones.
    p = 1 << (k - 1)
    size = 1 << n
    pattern = ((1 << p) - 1) << p
    repeat = ((1 << size) - 1) // ((1 << (2 * p)) - 1)
    return TruthTable(n, pattern * repeat)


def make_majority(n: int) -> TruthTable:
    """Sign of the coordinate sum; defined for odd n only."""
    _check_dimension(n)
    if n % 2 == 0:
        raise ValueError("majority requires odd dimension")
    negatives = popcount_array(n)
    return TruthTable.from_signs_array(np.where(negatives > n // 2, -1, 1))


def default_tribe_count(m: int) -> int:
    """Largest N with (1 - 2^-m)^N >= 1/2, so the mean is closest to zero.

    Computed with an exact big-integer comparison around a floating
    estimate; the floor-of-log form is fragile exactly at the boundary.
    """
    if m < 1:
        raise ValueError("tribe width must be >= 1")
    if m == 1:
        return 1
    est = int(math.log(0.5) / math.log1p(-(2.0 ** -m)))
    best = 1
    for cand in range(max(1, est - 2), est + 3):
        # (1 - 2^-m)^N >= 1/2  <=>  2 * (2^m - 1)^N >= 2^(m*N)
        if 2 * (2 ** m - 1) ** cand >= 1 << (m * cand):
            best = cand
    return best


@dataclass(frozen=True)
class TribesParams:
    """Width-m tribes, N of them; ``with_default_count`` balances the mean.

    The closed-form quantities below hold for any (m, N) and need no
    table, so they are usable beyond the dimension cap; only
    :func:`make_tribes` requires m * N to fit.
    """

    m: int
    count: int

    def __post_init__(self):
        if self.m < 1 or self.count < 1:
            raise ValueError("tribe width and count must be >= 1")

    @classmethod
    def with_default_count(cls, m: int) -> "TribesParams":
        return cls(m, default_tribe_count(m))

    @property
    def n(self) -> int:
        return self.m * self.count

    def failure_probability(self) -> Fraction:
        """P(f = -1): every tribe misses its all-(+1) pattern."""
        return Fraction(2 ** self.m - 1, 2 ** self.m) ** self.count

    def mean(self) -> Fraction:
        return 1 - 2 * self.failure_probability()

    def per_bit_influence(self) -> Fraction:
        """Exact influence of any single coordinate."""
        q = Fraction(2 ** self.m - 1, 2 ** self.m)
        return q ** (self.count - 1) * Fraction(1, 2 ** (self.m - 1))

    def pair_influence(self, same_tribe: bool) -> Fraction:
        """Exact second-order influence of a coordinate pair.

        Cross-tribe pairs pick up 2^-m from each tribe: the partner
        tribe must sit one flip below its all-(+1) pattern, and the own
        tribe must as well since both tribes have to be down for either
        coordinate to matter.
        """
        q = Fraction(2 ** self.m - 1, 2 ** self.m)
        if same_tribe:
            return q ** (self.count - 1) * Fraction(1, 2 ** self.m)
        if self.count < 2:
            raise ValueError("cross-tribe pair needs at least two tribes")
        return q ** (self.count - 2) * Fraction(1, 4 ** self.m)


def make_tribes(params: TribesParams) -> TruthTable:
    """OR of ``count`` disjoint width-m ANDs over consecutive blocks."""
    n = params.n
    _check_dimension(n)
    idx = np.arange(1 << n, dtype=np.int64)
    block_mask = (1 << params.m) - 1
    some_tribe_up = np.zeros(1 << n, dtype=bool)
    for j in range(params.count):
        some_tribe_up |= ((idx >> (j * params.m)) & block_mask) == 0
    return TruthTable.from_signs_array(np.where(some_tribe_up, 1, -1))


def compose(outer: TruthTable, inner: TruthTable) -> TruthTable:
    """Block composition: block j of width inner.n feeds outer's input j."""
    n1, n2 = outer.n, inner.n
    n = n1 * n2
    _check_dimension(n)
    idx = np.arange(1 << n, dtype=np.int64)
    inner_neg = inner.signs_array() == -1
    block_mask = (1 << n2) - 1
    outer_idx = np.zeros(1 << n, dtype=np.int64)
    for j in range(n1):
        block = (idx >> (j * n2)) & block_mask
        outer_idx |= inner_neg[block].astype(np.int64) << j
    return TruthTable.from_signs_array(outer.signs_array()[outer_idx])


def iterate_compose(h: TruthTable, depth: int) -> TruthTable:
    """depth-fold self-composition; depth 1 is h itself."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    _check_dimension(h.n ** depth)
    f = h
    for _ in range(depth - 1):
        f = compose(f, h)
    return f


def make_example_h() -> TruthTable:
    """The 3-variable function that is -1 exactly at (1,-1,-1) and (-1,1,1).

    Degree 2 yet sensitive to every coordinate; the canonical seed for
    low-degree iterated compositions.
    """
    return TruthTable.from_signs(3, [1, -1, 1, 1, 1, 1, -1, 1])


def make_random(n: int, seed: int) -> TruthTable:
    """Uniformly random truth table; deterministic for a given seed."""
    _check_dimension(n)
    rng = random.Random(seed)
    return TruthTable(n, rng.getrandbits(1 << n))


def make_random_real(n: int, seed: int, distribution: str = "uniform") -> PseudoBooleanFunction:
    """Random real table, entries iid uniform[-1,1] or standard normal."""
    _check_dimension(n)
    rng = np.random.Generator(np.random.PCG64(seed))
    if distribution == "uniform":
        values = rng.uniform(-1.0, 1.0, size=1 << n)
    elif distribution == "normal":
        values = rng.standard_normal(1 << n)
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    return PseudoBooleanFunction(n, values)
