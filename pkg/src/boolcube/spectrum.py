"""Exact Fourier-Walsh analysis of packed truth tables.

For a Boolean table the transform stays in integers: the stored vector
holds 2^n * fhat(S) for every mask S, so Parseval and the influence
identities downstream are integer statements with no tolerances.  With
the package encoding the kernel is (-1)^popcount(mask & index), i.e. the
plain Walsh-Hadamard butterfly in natural order.

Real-valued inputs use the same butterfly in float64; quantities derived
from them carry explicit tolerances instead.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .core import (
    AnyFunction,
    PseudoBooleanFunction,
    TruthTable,
    popcount_array,
)

# Zero threshold on real-mode coefficients; float64 round-off of the
# butterfly stays orders of magnitude below this for O(1) inputs at any
# dimension under the cap.
REAL_COEF_EPS = 1e-12


def _fwht_inplace(vec: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform, standard radix-2 butterfly."""
    size = vec.shape[0]
    h = 1
    while h < size:
        v = vec.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = a + b
        v[:, 1, :] = a - b
        h *= 2
    return vec


class Spectrum:
    """The 2^n Fourier coefficients of a function, scaled by 2^n.

    ``exact`` marks integer mode (Boolean source).  In exact mode entry s
    equals 2^n * fhat(S) as an int64; in real mode it is the same value
    as a float64.
    """

    __slots__ = ("n", "scaled", "exact")

    def __init__(self, n: int, scaled: np.ndarray, exact: bool):
        if scaled.shape != (1 << n,):
            raise ValueError("scaled vector length must be 2^n")
        scaled = scaled.copy()
        scaled.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "scaled", scaled)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("Spectrum is immutable")

    @property
    def size(self) -> int:
        return 1 << self.n

    def coefficient(self, mask: int) -> Union[Fraction, float]:
        """fhat(S); exact Fraction in integer mode, float otherwise."""
        if not 0 <= mask < self.size:
            raise ValueError(f"mask {mask} out of range [0, 2^{self.n})")
        if self.exact:
            return Fraction(int(self.scaled[mask]), self.size)
        return float(self.scaled[mask]) / self.size

    def squared_weights_num(self) -> np.ndarray:
        """int64 vector of 4^n * fhat(S)^2 (exact mode only)."""
        if not self.exact:
            raise ValueError("exact weights require a Boolean-source spectrum")
        s = self.scaled.astype(np.int64)
        return s * s

    def weight_total_num(self) -> int:
        return int(self.squared_weights_num().sum())

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "real"
        return f"Spectrum(n={self.n}, {mode})"


def transform(f: AnyFunction) -> Spectrum:
    """Forward transform in O(n 2^n); exact integers for truth tables.

    The exact path asserts Parseval on construction: any residue is an
    implementation bug, not data-dependent noise.
    """
    if isinstance(f, TruthTable):
        vec = f.signs_array().astype(np.int64)
        _fwht_inplace(vec)
        spec = Spectrum(f.n, vec, exact=True)
        total = spec.weight_total_num()
        if total != 4 ** f.n:
            raise AssertionError(
                f"Parseval violated internally: {total} != 4^{f.n}"
            )
        return spec
    vec = f.values.astype(np.float64)
    _fwht_inplace(vec)
    spec = Spectrum(f.n, vec, exact=False)
    size = float(1 << f.n)
    coef_norm = float((vec / size) @ (vec / size))
    fn_norm = float(f.values @ f.values) / size
    if abs(coef_norm - fn_norm) > 1e-9 * max(1.0, abs(fn_norm)):
        raise AssertionError("real-mode Parseval drift beyond 1e-9 relative")
    return spec


def inverse(spec: Spectrum) -> AnyFunction:
    """Reconstruct the function table; exact round-trip in integer mode."""
    if spec.exact:
        vec = spec.scaled.astype(np.int64).copy()
        _fwht_inplace(vec)
        size = spec.size
        if np.any(vec % size):
            raise ValueError("spectrum is not 2^n times an integer table")
        signs = vec // size
        return TruthTable.from_signs_array(signs)
    vec = spec.scaled.astype(np.float64).copy()
    _fwht_inplace(vec)
    return PseudoBooleanFunction(spec.n, vec / spec.size)


def degree(spec: Spectrum) -> int:
    """Largest |S| carrying a nonzero coefficient; 0 for constants."""
    if spec.exact:
        nz = np.nonzero(spec.scaled)[0]
    else:
        nz = np.nonzero(np.abs(spec.scaled) > REAL_COEF_EPS * spec.size)[0]
    if nz.size == 0:
        return 0
    return int(popcount_array(spec.n)[nz].max())


def superset_weight_sums(spec: Spectrum) -> np.ndarray:
    """For every mask S, 4^n times sum of fhat(T)^2 over supersets T of S.

    One zeta transform in O(n 2^n); entry at a singleton mask is the
    scaled influence of that coordinate, entry at S the scaled
    high-order influence.
    """
    z = spec.squared_weights_num().copy()
    size = spec.size
    h = 1
    while h < size:
        v = z.reshape(-1, 2, h)
        v[:, 0, :] += v[:, 1, :]
        h *= 2
    return z


class SpectralSampleDist:
    """The spectral sample: P(S) = fhat(S)^2, with exact integer CDF."""

    __slots__ = ("n", "num", "den", "_cum")

    def __init__(self, n: int, num: np.ndarray, den: int):
        if int(num.sum()) != den:
            raise ValueError("spectral weights must sum to one")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_cum", np.cumsum(num))

    def __setattr__(self, name, value):
        raise AttributeError("SpectralSampleDist is immutable")

    @classmethod
    def from_spectrum(cls, spec: Spectrum) -> "SpectralSampleDist":
        if not spec.exact:
            raise ValueError(
                "spectral sampling needs an exact Boolean-source spectrum; "
                "real-mode weights are not necessarily normalized"
            )
        return cls(spec.n, spec.squared_weights_num(), 4 ** spec.n)

    def probability(self, mask: int) -> Fraction:
        return Fraction(int(self.num[mask]), self.den)

    def draw(self, seed: int, count: int) -> list:
        """CDF inversion with integer thresholds; deterministic per seed."""
        if count < 0:
            raise ValueError("count must be >= 0")
        rng = random.Random(seed)
        cum = self._cum
        return [int(np.searchsorted(cum, rng.randrange(self.den), side="right"))
                for _ in range(count)]


def draw_sample(dist: SpectralSampleDist, seed: int, count: int) -> list:
    return dist.draw(seed, count)


def weight_by_size_num(spec: Spectrum) -> list:
    """Exact 4^n-scaled spectral mass per subset size, indices 0..n."""
    if not spec.exact:
        raise ValueError("exact weights require a Boolean-source spectrum")
    sq = spec.squared_weights_num()
    pc = popcount_array(spec.n)
    return [int(sq[pc == t].sum()) for t in range(spec.n + 1)]


def sample_moments(spec: Spectrum, k: int) -> Fraction:
    """E|S_f|^k as an exact rational with denominator 4^n.

    Spectral-side definition for any k >= 1; only k = 1, 2 have pivotal
    counterparts elsewhere.
    """
    if k < 1:
        raise ValueError("moment order must be >= 1")
    bins = weight_by_size_num(spec)
    num = sum(t ** k * w for t, w in enumerate(bins))
    return Fraction(num, 4 ** spec.n)


def biased_expectation(spec: Spectrum, bias: Sequence[float]) -> float:
    """Mean of f under independent bits with per-coordinate means ``bias``.

    Evaluates sum_S fhat(S) * prod_{i in S} bias_i by folding one
    coordinate per pass, highest bit first, in O(2^n) total.
    """
    if len(bias) != spec.n:
        raise ValueError(f"need {spec.n} bias entries, got {len(bias)}")
    for i, p in enumerate(bias):
        if not -1.0 <= p <= 1.0:
            raise ValueError(f"bias[{i}]={p} outside [-1, 1]")
    acc = spec.scaled.astype(np.float64)
    for k in range(spec.n - 1, -1, -1):
        v = acc.reshape(2, -1)
        acc = v[0] + float(bias[k]) * v[1]
    return float(acc[0]) / spec.size


def russo_derivative(spec: Spectrum) -> Fraction:
    """Sum of the singleton coefficients, the p-derivative of P(f=1) at 1/2."""
    if not spec.exact:
        raise ValueError("russo derivative is defined for Boolean tables")
    num = sum(int(spec.scaled[1 << k]) for k in range(spec.n))
    return Fraction(num, spec.size)


def spectrum_to_json(spec: Spectrum) -> dict:
    """Decimal-string mask -> {num, den} with num = 2^n * fhat(S)."""
    if not spec.exact:
        raise ValueError("JSON export is defined for exact spectra")
    den = spec.size
    return {str(mask): {"num": int(v), "den": den}
            for mask, v in enumerate(spec.scaled.tolist())}
