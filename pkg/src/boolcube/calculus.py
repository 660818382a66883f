"""Operators on hypercube functions and the influence machinery.

Discrete derivatives, pivotal sets, influences of every order, the noise
operator, restrictions, and restricted-coefficient moments.  Everything
sourced from a truth table is carried as exact integers scaled by 2^n
(coefficients) or 4^n (squared weights); floats only appear where a
quantity is genuinely real (noise output, fractional-power moments).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .core import AnyFunction, PseudoBooleanFunction, TruthTable, popcount_array
from .spectrum import (
    Spectrum,
    inverse,
    superset_weight_sums,
    transform,
    weight_by_size_num,
)


def pivotal_set(f: TruthTable, index: int) -> int:
    """Mask of coordinates whose single flip changes f at this point."""
    if not 0 <= index < f.size:
        raise ValueError(f"point index {index} out of range [0, 2^{f.n})")
    bits = f.bits
    mask = 0
    for k in range(f.n):
        if ((bits >> index) ^ (bits >> (index ^ (1 << k)))) & 1:
            mask |= 1 << k
    return mask


def pivotal_sizes(f: TruthTable) -> np.ndarray:
    """|pivotal set| at every point, as one int64 vector."""
    s = f.signs_array()
    acc = np.zeros(f.size, dtype=np.int64)
    h = 1
    while h < f.size:
        v = s.reshape(-1, 2, h)
        neq = (v[:, 0, :] != v[:, 1, :]).astype(np.int64)
        a = acc.reshape(-1, 2, h)
        a[:, 0, :] += neq
        a[:, 1, :] += neq
        h *= 2
    return acc


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def derivative(f: AnyFunction, mask: int) -> PseudoBooleanFunction:
    """Signed average of f over all sub-flips of ``mask``.

    The empty mask returns f itself (as a real table).  Output values of
    a Boolean input are dyadic rationals, exact in float64.
    """
    if isinstance(f, TruthTable):
        values = f.signs_array().astype(np.float64)
    else:
        values = f.values
    if mask == 0:
        return PseudoBooleanFunction(f.n, values, allow_zero_dim=(f.n == 0))
    if mask >> f.n:
        raise ValueError(f"mask {mask} does not fit in {f.n} coordinates")
    idx = np.arange(f.size, dtype=np.intp)
    acc = np.zeros(f.size, dtype=np.float64)
    for sub in _submasks(mask):
        sign = -1.0 if sub.bit_count() & 1 else 1.0
        acc += sign * values[idx ^ sub]
    return PseudoBooleanFunction(f.n, acc / (1 << mask.bit_count()))


def _derivative_scaled_int(f: TruthTable, mask: int) -> np.ndarray:
    """2^|mask| times the derivative of a truth table, exact int64."""
    values = f.signs_array().astype(np.int64)
    idx = np.arange(f.size, dtype=np.intp)
    acc = np.zeros(f.size, dtype=np.int64)
    for sub in _submasks(mask):
        if sub.bit_count() & 1:
            acc -= values[idx ^ sub]
        else:
            acc += values[idx ^ sub]
    return acc


def influence(f: TruthTable, mask: int, method: str = "spectral") -> Fraction:
    """High-order influence of a nonempty coordinate set, exact.

    ``spectral`` sums squared coefficients over supersets; the
    ``combinatorial`` route takes the mean square of the derivative.
    Both agree exactly on every input.
    """
    if mask == 0:
        raise ValueError("influence requires a nonempty coordinate set")
    if mask >> f.n:
        raise ValueError(f"mask {mask} does not fit in {f.n} coordinates")
    if method == "spectral":
        z = superset_weight_sums(transform(f))
        return Fraction(int(z[mask]), 4 ** f.n)
    if method == "combinatorial":
        g = _derivative_scaled_int(f, mask)
        if f.n + 2 * mask.bit_count() >= 62:
            num = int((g.astype(object) * g.astype(object)).sum())
        else:
            num = int(g @ g)
        return Fraction(num, (1 << f.n) * 4 ** mask.bit_count())
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class InfluenceProfile:
    """Every influence-flavored quantity of one truth table, exact.

    ``per_bit[k-1]`` is the influence of coordinate k; ``by_degree[m-1]``
    the total influence at exactly order m and ``cumulative[m-1]`` up to
    order m; ``second_order`` maps 1-based pairs (k, l), k < l.
    """

    n: int
    per_bit: tuple
    total: Fraction
    second_order: dict
    by_degree: tuple
    cumulative: tuple
    sample_size_mean: Fraction
    sample_size_second_moment: Fraction


def build_profile(f: TruthTable) -> InfluenceProfile:
    """Assemble the profile, cross-checking pivotal counts against the
    spectral sums before returning; a mismatch is an implementation bug.
    """
    n = f.n
    den = 4 ** n
    spec = transform(f)
    z = superset_weight_sums(spec)
    bins = weight_by_size_num(spec)

    per_bit = tuple(Fraction(int(z[1 << k]), den) for k in range(n))
    total = Fraction(sum(t * w for t, w in enumerate(bins)), den)
    second = {}
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            m = (1 << (k - 1)) | (1 << (l - 1))
            second[(k, l)] = Fraction(int(z[m]), den)

    by_degree = tuple(
        Fraction(sum(math.comb(t, m) * w for t, w in enumerate(bins)), den)
        for m in range(1, n + 1)
    )
    cumulative = []
    running = Fraction(0)
    for v in by_degree:
        running += v
        cumulative.append(running)

    m1 = Fraction(sum(t * w for t, w in enumerate(bins)), den)
    m2 = Fraction(sum(t * t * w for t, w in enumerate(bins)), den)

    # Pivotal-set side of the moment identities, exact integer compare.
    sizes = pivotal_sizes(f)
    size = f.size
    checks = [
        (int(sizes.sum()) * size, m1 * den, "mean pivotal size"),
        (int((sizes * (sizes - 1) // 2).sum()) * size,
         by_degree[1] * den if n >= 2 else 0, "order-2 influence"),
        (int((sizes * (sizes + 1) // 2).sum()) * size,
         cumulative[1] * den if n >= 2 else (cumulative[0] if n == 1 else 0) * den,
         "orders up to 2"),
        (int((sizes * sizes).sum()) * size, m2 * den, "second moment"),
    ]
    for lhs, rhs, label in checks:
        if lhs != rhs:
            raise AssertionError(
                f"internal identity failure ({label}): {lhs} != {rhs}"
            )
    if sum(per_bit) != total:
        raise AssertionError("internal identity failure (total vs per-bit)")
    if n >= 1 and by_degree[0] != total:
        raise AssertionError("internal identity failure (first-degree total)")
    if any(not 0 <= v <= 1 for v in per_bit):
        raise AssertionError("per-bit influence outside [0, 1]")
    if m2 != 2 * (by_degree[1] if n >= 2 else Fraction(0)) + total:
        raise AssertionError("internal identity failure (second-moment law)")

    return InfluenceProfile(
        n=n,
        per_bit=per_bit,
        total=total,
        second_order=second,
        by_degree=by_degree,
        cumulative=tuple(cumulative),
        sample_size_mean=m1,
        sample_size_second_moment=m2,
    )


def noise(f: AnyFunction, rho: float) -> PseudoBooleanFunction:
    """Attenuate each coefficient by rho^|S| (spectral implementation)."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho={rho} outside [0, 1]")
    spec = transform(f if isinstance(f, PseudoBooleanFunction)
                     else PseudoBooleanFunction(f.n, f.signs_array()))
    factors = np.power(rho, popcount_array(spec.n).astype(np.float64))
    damped = Spectrum(spec.n, spec.scaled * factors, exact=False)
    out = inverse(damped)
    assert isinstance(out, PseudoBooleanFunction)
    return out


@dataclass(frozen=True)
class RestrictionContext:
    """Coordinates to keep free, plus pinned values for the rest.

    ``assignment`` maps each 1-based coordinate outside ``free_mask`` to
    +1 or -1 and must cover that complement exactly.
    """

    free_mask: int
    assignment: Mapping[int, int]

    def validate(self, n: int) -> None:
        if self.free_mask >> n:
            raise ValueError(f"free mask does not fit in {n} coordinates")
        pinned = {k for k in range(1, n + 1)
                  if not (self.free_mask >> (k - 1)) & 1}
        given = set(self.assignment)
        if given != pinned:
            missing = sorted(pinned - given)
            extra = sorted(given - pinned)
            raise ValueError(
                f"assignment must cover exactly the pinned coordinates; "
                f"missing {missing}, unexpected {extra}"
            )
        for k, v in self.assignment.items():
            if v not in (1, -1):
                raise ValueError(f"assignment[{k}]={v!r}, expected +1 or -1")

    @classmethod
    def from_point(cls, free_mask: int, index: int, n: int) -> "RestrictionContext":
        """Pin the complement of ``free_mask`` to the coordinates of a point."""
        assignment = {
            k: -1 if (index >> (k - 1)) & 1 else 1
            for k in range(1, n + 1)
            if not (free_mask >> (k - 1)) & 1
        }
        return cls(free_mask, assignment)


def restrict(f: TruthTable, ctx: RestrictionContext) -> TruthTable:
    """Pin the complement of ``ctx.free_mask``; free coordinates are
    renumbered in increasing original order.  Restricting away every
    coordinate yields the one-point dimension-0 table.
    """
    ctx.validate(f.n)
    free = [k for k in range(f.n) if (ctx.free_mask >> k) & 1]
    base = 0
    for k, v in ctx.assignment.items():
        if v == -1:
            base |= 1 << (k - 1)
    j = len(free)
    bits = 0
    for y in range(1 << j):
        idx = base
        for i, k in enumerate(free):
            if (y >> i) & 1:
                idx |= 1 << k
        if (f.bits >> idx) & 1:
            bits |= 1 << y
    return TruthTable(j, bits, allow_zero_dim=(j == 0))


def restricted_scaled_tables(f: TruthTable, free_mask: int) -> np.ndarray:
    """Scaled spectra of every restriction at once.

    Returns an int64 array of shape (2^(n-j), 2^j), j = popcount of the
    free mask; row a holds 2^j * fhat of the restriction whose pinned
    coordinates follow assignment a (bits of a in increasing pinned
    order, set bit meaning -1).
    """
    if free_mask >> f.n:
        raise ValueError(f"free mask does not fit in {f.n} coordinates")
    free = [k for k in range(f.n) if (free_mask >> k) & 1]
    pinned = [k for k in range(f.n) if not (free_mask >> k) & 1]
    j = len(free)
    rows = np.zeros(1 << len(pinned), dtype=np.intp)
    for i, k in enumerate(pinned):
        rows |= ((np.arange(1 << len(pinned), dtype=np.intp) >> i) & 1) << k
    cols = np.zeros(1 << j, dtype=np.intp)
    for i, k in enumerate(free):
        cols |= ((np.arange(1 << j, dtype=np.intp) >> i) & 1) << k
    table = f.signs_array().astype(np.int64)[rows[:, None] | cols[None, :]]
    h = 1
    size = 1 << j
    while h < size:
        v = table.reshape(table.shape[0], -1, 2, h)
        a = v[:, :, 0, :].copy()
        b = v[:, :, 1, :]
        v[:, :, 0, :] = a + b
        v[:, :, 1, :] = a - b
        h *= 2
    return table


def restricted_moment(f: TruthTable, free_mask: int, eps: float) -> float:
    """Mean over pinnings of sum_S |restricted fhat(S)|^(2(1+eps)).

    eps must lie in [0, 1/2).  Zero coefficients contribute zero; the
    squared coefficients are exact dyadics, so only the fractional power
    itself is inexact.
    """
    if not 0.0 <= eps < 0.5:
        raise ValueError(f"eps={eps} outside [0, 1/2)")
    tables = restricted_scaled_tables(f, free_mask)
    j = free_mask.bit_count()
    sq = tables.astype(np.float64) ** 2 / float(4 ** j)
    powered = np.power(sq, 1.0 + eps)
    return float(powered.sum()) / tables.shape[0]


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator,
            "dec": format(float(x), ".12g")}


def profile_to_json(p: InfluenceProfile) -> dict:
    return {
        "per_bit": [_frac_json(v) for v in p.per_bit],
        "total": _frac_json(p.total),
        "second_order": {f"{k},{l}": _frac_json(v)
                         for (k, l), v in sorted(p.second_order.items())},
        "by_degree": [_frac_json(v) for v in p.by_degree],
        "cumulative": [_frac_json(v) for v in p.cumulative],
        "sample_size_mean": _frac_json(p.sample_size_mean),
        "sample_size_second_moment": _frac_json(p.sample_size_second_moment),
    }
