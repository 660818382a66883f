import random
import warnings
from fractions import Fraction

import numpy as np
import pytest

from boolcube import (
    PseudoBooleanFunction,
    SpectralSampleDist,
    TruthTable,
    biased_expectation,
    build_profile,
    degree,
    draw_sample,
    inverse,
    make_and,
    make_dictator,
    make_example_h,
    make_majority,
    make_parity,
    make_random,
    make_random_real,
    russo_derivative,
    sample_moments,
    spectrum_to_json,
    transform,
    weight_by_size_num,
)
from conftest import naive_biased_mean, naive_transform


class TestTransform:
    def test_matches_naive_oracle(self):
        rng = random.Random(1)
        for _ in range(50):
            n = rng.randint(1, 8)
            t = TruthTable(n, rng.getrandbits(1 << n))
            spec = transform(t)
            oracle = naive_transform(t)
            for mask in range(1 << n):
                assert spec.coefficient(mask) == oracle[mask]

    def test_and3_scaled_values(self):
        s = transform(make_and(3))
        assert int(s.scaled[0]) == -6
        assert all(int(v) == 2 for v in s.scaled[1:])

    def test_parity_is_basis_vector(self):
        s = transform(make_parity(4, 0b1010))
        assert s.coefficient(0b1010) == 1
        assert sum(abs(int(v)) for v in s.scaled) == 1 << 4

    def test_inverse_round_trip_exact(self):
        rng = random.Random(2)
        for n in range(1, 9):
            t = TruthTable(n, rng.getrandbits(1 << n))
            assert inverse(transform(t)) == t

    def test_parseval_random_large(self):
        rng = random.Random(3)
        for i in range(1000):
            n = 5 + (i % 6)
            t = make_random(n, rng.getrandbits(32))
            spec = transform(t)  # Parseval asserted on construction
            assert spec.weight_total_num() == 4 ** n

    def test_real_mode_round_trip(self):
        f = make_random_real(6, 4, "normal")
        spec = transform(f)
        back = inverse(spec)
        assert np.allclose(back.values, f.values, atol=1e-9)

    def test_variance_decomposition_exact(self):
        # sum of nonempty squared weights equals 1 - (mean)^2
        rng = random.Random(6)
        for _ in range(50):
            n = rng.randint(1, 6)
            spec = transform(TruthTable(n, rng.getrandbits(1 << n)))
            sq = spec.squared_weights_num()
            den = 4 ** n
            var = Fraction(int(sq[1:].sum()), den)
            assert var == 1 - Fraction(int(sq[0]), den)

    def test_real_mode_example_from_singletons(self):
        # coefficients 1/sqrt(n) on singletons only
        n = 4
        scaled = np.zeros(1 << n)
        for k in range(n):
            scaled[1 << k] = (1 << n) * n ** -0.5
        from boolcube.spectrum import Spectrum

        f = inverse(Spectrum(n, scaled, exact=False))
        spec2 = transform(f)
        for k in range(n):
            assert spec2.coefficient(1 << k) == pytest.approx(n ** -0.5, abs=1e-12)


class TestDegree:
    def test_examples(self):
        assert degree(transform(make_parity(5, 0b11111))) == 5
        assert degree(transform(TruthTable.from_signs(2, [1, 1, 1, 1]))) == 0
        assert degree(transform(make_example_h())) == 2

    def test_real_threshold(self):
        vals = np.full(8, 0.5)
        spec = transform(PseudoBooleanFunction(3, vals))
        assert degree(spec) == 0


class TestSampling:
    def test_moments_point_mass(self):
        for n in (2, 4, 6):
            s = transform(make_parity(n, (1 << n) - 1))
            assert sample_moments(s, 1) == n
            assert sample_moments(s, 2) == n * n

    def test_first_moment_is_influence(self):
        rng = random.Random(9)
        for _ in range(100):
            n = rng.randint(1, 6)
            t = TruthTable(n, rng.getrandbits(1 << n))
            assert sample_moments(transform(t), 1) == build_profile(t).total

    def test_weight_bins_sum(self):
        t = make_majority(3)
        bins = weight_by_size_num(transform(t))
        assert sum(bins) == 4 ** 3
        assert bins == [0, 3 * 16, 0, 16]

    def test_draw_deterministic(self):
        dist = SpectralSampleDist.from_spectrum(transform(make_majority(3)))
        assert dist.draw(7, 20) == dist.draw(7, 20)
        assert draw_sample(dist, 8, 5) != dist.draw(9, 5)

    def test_draw_frequencies_majority3_warn_only(self):
        dist = SpectralSampleDist.from_spectrum(transform(make_majority(3)))
        draws = dist.draw(123, 100_000)
        counts = {m: 0 for m in range(8)}
        for m in draws:
            counts[m] += 1
        for mask in range(8):
            p = float(dist.probability(mask))
            sigma = (p * (1 - p) / 100_000) ** 0.5
            if abs(counts[mask] / 100_000 - p) > 5 * sigma + 1e-12:
                warnings.warn(f"mask {mask} frequency off by more than 5 sigma")

    def test_point_mass_draws(self):
        dist = SpectralSampleDist.from_spectrum(transform(make_parity(3, 0b111)))
        assert dist.draw(0, 10) == [7] * 10

    def test_real_mode_rejected(self):
        spec = transform(make_random_real(3, 0))
        with pytest.raises(ValueError):
            SpectralSampleDist.from_spectrum(spec)
        with pytest.raises(ValueError):
            sample_moments(spec, 1)


class TestBiasedMean:
    def test_degenerate_biases(self):
        t = make_majority(3)
        s = transform(t)
        assert biased_expectation(s, [0, 0, 0]) == pytest.approx(
            float(s.coefficient(0)), abs=1e-12)
        assert biased_expectation(s, [1, 1, 1]) == pytest.approx(
            t.sign(0), abs=1e-12)

    def test_and3_half_bias(self):
        val = biased_expectation(transform(make_and(3)), [0.5, 0.5, 0.5])
        assert val == pytest.approx(-5 / 32, abs=1e-12)
        assert val == pytest.approx(2 * (3 / 4) ** 3 - 1, abs=1e-12)

    def test_matches_enumeration_oracle(self):
        rng = random.Random(13)
        for _ in range(20):
            n = rng.randint(1, 5)
            t = TruthTable(n, rng.getrandbits(1 << n))
            bias = [Fraction(rng.randint(-4, 4), 4) for _ in range(n)]
            got = biased_expectation(transform(t), [float(b) for b in bias])
            assert got == pytest.approx(float(naive_biased_mean(t, bias)),
                                        abs=1e-12)

    def test_bias_validation(self):
        s = transform(make_and(2))
        with pytest.raises(ValueError):
            biased_expectation(s, [0.5])
        with pytest.raises(ValueError):
            biased_expectation(s, [0.5, 1.5])


class TestRusso:
    def test_and3(self):
        assert russo_derivative(transform(make_and(3))) == Fraction(3, 4)

    def test_parity_no_singleton_mass(self):
        assert russo_derivative(transform(make_parity(2, 0b11))) == 0

    def test_monotone_matches_influence_exhaustive_n3(self, monotone_n3):
        for t in monotone_n3:
            assert russo_derivative(transform(t)) == build_profile(t).total


class TestExport:
    def test_json_shape(self):
        out = spectrum_to_json(transform(make_dictator(2, 1)))
        assert out["1"] == {"num": 4, "den": 4}
        assert out["0"] == {"num": 0, "den": 4}
        assert len(out) == 4

    def test_real_mode_rejected(self):
        with pytest.raises(ValueError):
            spectrum_to_json(transform(make_random_real(2, 0)))
