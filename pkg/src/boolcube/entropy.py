"""Spectral entropy, concentration sets, and conjecture observables.

Entropy is reported in bits (base 2).  The natural-log quantity
sum_k -I_k ln I_k lives in a separately named field so the two bases can
never be silently confused; 0 * log 0 is 0 throughout.  Ratio fields
tied to open conjectures are observables, never assertions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from .calculus import InfluenceProfile
from .core import popcount_array
from .spectrum import Spectrum


def as_fraction(x: Union[Fraction, int, float, str]) -> Fraction:
    """Exact parameter intake; floats go through their decimal rendering."""
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def _weights(spec: Spectrum) -> np.ndarray:
    if spec.exact:
        return spec.squared_weights_num().astype(np.float64) / float(4 ** spec.n)
    w = (spec.scaled.astype(np.float64) / spec.size) ** 2
    total = float(w.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"non-normalized spectrum: weights sum to {total}")
    return w


def entropy_bits(spec: Spectrum) -> float:
    """Shannon entropy (base 2) of the squared-coefficient distribution.

    Summed in two different orders (ascending mask, then descending
    mass) as a guard against accumulation error; the orders must agree
    to 1e-12.
    """
    w = _weights(spec)
    w = w[w > 0.0]
    terms = -(w * np.log2(w))
    ascending = float(terms.sum())
    descending = float(np.sort(terms)[::-1].sum())
    if abs(ascending - descending) > 1e-12 * max(1.0, abs(ascending)):
        raise AssertionError("entropy summation orders disagree beyond 1e-12")
    return ascending


def min_entropy(spec: Spectrum) -> Tuple[Union[Fraction, float], int]:
    """Largest |fhat(S)| with its witness mask; ties go to the smallest mask."""
    mags = np.abs(spec.scaled)
    mask = int(np.argmax(mags))
    if spec.exact:
        return Fraction(int(mags[mask]), spec.size), mask
    return float(mags[mask]) / spec.size, mask


@dataclass(frozen=True)
class EntropyReport:
    """Entropy-flavored observables of one spectrum."""

    ent_bits: float
    max_coef: Fraction
    argmax_mask: int
    fei_ratio: Optional[float]
    fmei_exponent: Optional[float]
    plogp_sum_nat: float


def build_entropy_report(spec: Spectrum, profile: InfluenceProfile) -> EntropyReport:
    ent = entropy_bits(spec)
    max_coef, argmax = min_entropy(spec)
    total = profile.total
    fei = float(ent / float(total)) if total > 0 else None
    fmei = (
        -math.log(float(max_coef) ** 2) / (2.0 * float(total))
        if total > 0
        else None
    )
    plogp = -sum(
        float(v) * math.log(float(v)) for v in profile.per_bit if v > 0
    )
    return EntropyReport(
        ent_bits=ent,
        max_coef=max_coef,
        argmax_mask=argmax,
        fei_ratio=fei,
        fmei_exponent=fmei,
        plogp_sum_nat=plogp,
    )


@dataclass(frozen=True)
class JuntaSet:
    """High-influence coordinate set and its concentration family.

    The family is every subset of ``coords_mask`` of size at most
    ``degree_cap``; ``leaked_weight`` is the exact spectral mass outside
    it.  The concentration theorem promises leaked_weight <= 2 eps; the
    verification harness asserts that, not this constructor.
    """

    eps: Fraction
    coords_mask: int
    threshold: float
    degree_cap: Fraction
    leaked_weight: Fraction


def junta_set(spec: Spectrum, profile: InfluenceProfile,
              eps: Union[Fraction, float, str]) -> JuntaSet:
    """Coordinates whose influence clears the concentration threshold.

    The threshold is transcendental, so membership is decided in floats
    with a tiny inclusive bias; enlarging the set only strengthens the
    concentration property.  Undefined for constant functions.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    total = profile.total
    if total == 0:
        raise ValueError("junta set undefined for constant functions")
    ratio = float(eps / total)
    exponent = float(total / eps)
    threshold = (ratio * 4.0 ** (-exponent)) ** (5.0 / 3.0)
    coords = 0
    for k, infl in enumerate(profile.per_bit, start=1):
        if float(infl) >= threshold * (1.0 - 1e-12):
            coords |= 1 << (k - 1)
    cap = total / eps
    leaked = concentration_check(spec, coords_mask=coords, degree_cap=cap)
    return JuntaSet(
        eps=eps,
        coords_mask=coords,
        threshold=threshold,
        degree_cap=cap,
        leaked_weight=leaked,
    )


def concentration_check(spec: Spectrum, masks: Optional[Iterable[int]] = None,
                        *, coords_mask: Optional[int] = None,
                        degree_cap: Optional[Union[Fraction, int, float]] = None,
                        ) -> Fraction:
    """Exact spectral mass outside a family of subsets.

    The family is either an explicit mask iterable or the subsets of
    ``coords_mask`` with size at most ``degree_cap``.
    """
    if not spec.exact:
        raise ValueError("concentration mass is exact for Boolean sources only")
    den = 4 ** spec.n
    sq = spec.squared_weights_num()
    if masks is not None:
        inside = sum(int(sq[m]) for m in set(masks))
        return Fraction(den - inside, den)
    if coords_mask is None or degree_cap is None:
        raise ValueError("need explicit masks or coords_mask with degree_cap")
    cap = as_fraction(degree_cap)
    all_masks = np.arange(spec.size, dtype=np.int64)
    pc = popcount_array(spec.n)
    floor_cap = -1 if cap < 0 else min(int(cap), spec.n)
    in_family = ((all_masks & ~np.int64(coords_mask)) == 0) & (pc <= floor_cap)
    inside = int(sq[in_family].sum())
    return Fraction(den - inside, den)


def markov_tail(spec: Spectrum, profile: InfluenceProfile) -> Tuple[Fraction, Fraction]:
    """Mass above twice the total influence, with the threshold itself."""
    threshold = 2 * profile.total
    sq = spec.squared_weights_num()
    pc = popcount_array(spec.n)
    den = 4 ** spec.n
    tail = sum(int(sq[pc == t].sum()) for t in range(spec.n + 1)
               if Fraction(t) > threshold)
    return Fraction(tail, den), threshold


def entropy_report_to_json(r: EntropyReport) -> dict:
    return {
        "ent_bits": r.ent_bits,
        "max_coef": {"num": r.max_coef.numerator, "den": r.max_coef.denominator,
                     "dec": format(float(r.max_coef), ".12g")},
        "argmax_mask": r.argmax_mask,
        "fei_ratio": r.fei_ratio,
        "fmei_exponent": r.fmei_exponent,
        "plogp_sum_nat": r.plogp_sum_nat,
    }
