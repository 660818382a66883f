import random
import warnings
from fractions import Fraction

import pytest

from boolcube import (
    TribesParams,
    TruthTable,
    build_profile,
    compose,
    default_tribe_count,
    degree,
    entropy_bits,
    iterate_compose,
    make_and,
    make_dictator,
    make_example_h,
    make_majority,
    make_or,
    make_parity,
    make_random,
    make_random_real,
    make_tribes,
    pivotal_set,
    transform,
)
from conftest import naive_influence, naive_pair_influence, naive_transform


class TestBasicFamilies:
    def test_and_closed_form_spectrum(self):
        # scaled coefficients: 2 - 2^n at the empty set, 2 elsewhere
        for n in range(2, 11):
            s = transform(make_and(n))
            assert s.coefficient(0) == Fraction(2 - (1 << n), 1 << n)
            scaled = s.scaled
            assert int(scaled[0]) == 2 - (1 << n)
            assert all(int(v) == 2 for v in scaled[1:])

    def test_and_total_influence(self):
        for n in range(2, 11):
            assert build_profile(make_and(n)).total == Fraction(n, 1 << (n - 1))

    def test_or_is_negated_and_of_negated_input(self):
        for n in range(1, 5):
            f_or, f_and = make_or(n), make_and(n)
            full = (1 << n) - 1
            for x in range(1 << n):
                assert f_or.sign(x) == -f_and.sign(x ^ full)

    def test_parity_prefix_degree_and_influence(self):
        for k in range(1, 6):
            t = make_parity(5, (1 << k) - 1)
            s = transform(t)
            assert degree(s) == k
            assert build_profile(t).total == k

    def test_parity_requires_nonempty(self):
        with pytest.raises(ValueError):
            make_parity(3, 0)
        with pytest.raises(ValueError):
            make_parity(3, 0b1000)

    def test_dictator(self):
        t = make_dictator(4, 2)
        prof = build_profile(t)
        assert prof.per_bit == (0, 1, 0, 0)
        assert entropy_bits(transform(t)) == 0.0
        with pytest.raises(ValueError):
            make_dictator(4, 5)

    def test_majority3_spectrum_from_oracle(self):
        t = make_majority(3)
        coefs = naive_transform(t)
        s = transform(t)
        for mask in range(8):
            assert s.coefficient(mask) == coefs[mask]
        assert coefs[0b001] == Fraction(1, 2)
        assert coefs[0b111] == Fraction(-1, 2)
        assert entropy_bits(s) == pytest.approx(2.0, abs=1e-12)

    def test_majority_needs_odd(self):
        with pytest.raises(ValueError):
            make_majority(4)


class TestTribes:
    def test_default_count_values(self):
        assert default_tribe_count(2) == 2
        assert [default_tribe_count(m) for m in range(2, 7)] == [2, 5, 10, 21, 44]

    def test_default_count_boundary_exact(self):
        for m in range(1, 9):
            count = default_tribe_count(m)
            q = Fraction(2 ** m - 1, 2 ** m)
            assert q ** count >= Fraction(1, 2)
            assert q ** (count + 1) < Fraction(1, 2)

    def test_mean_bound_closed_form(self):
        for m in range(2, 7):
            tp = TribesParams.with_default_count(m)
            assert abs(tp.mean()) <= Fraction(1, 1 << (m - 1))

    def test_table_mean_matches_closed_form(self):
        for m, count in [(2, 2), (2, 3), (3, 2), (3, 5)]:
            tp = TribesParams(m, count)
            t = make_tribes(tp)
            assert transform(t).coefficient(0) == tp.mean()

    def test_influence_formulas_against_brute_force(self):
        for m, count in [(2, 2), (2, 3), (3, 2)]:
            tp = TribesParams(m, count)
            t = make_tribes(tp)
            assert naive_influence(t, 1) == tp.per_bit_influence()
            assert naive_pair_influence(t, 1, 2) == tp.pair_influence(True)
            assert naive_pair_influence(t, 1, m + 1) == tp.pair_influence(False)

    def test_param_validation(self):
        with pytest.raises(ValueError):
            TribesParams(0, 2)
        with pytest.raises(ValueError):
            TribesParams(2, 0)
        with pytest.raises(ValueError):
            TribesParams(2, 1).pair_influence(False)


class TestComposition:
    def test_identity_outer_is_inner(self):
        g = make_majority(3)
        assert compose(make_dictator(1, 1), g) == g

    def test_parity_of_parities(self):
        pp = compose(make_parity(2, 0b11), make_parity(2, 0b11))
        assert pp == make_parity(4, 0b1111)
        assert degree(transform(pp)) == 4

    def test_degree_multiplicative_on_random_pairs(self):
        rng = random.Random(20)
        done = 0
        while done < 20:
            n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
            f = TruthTable(n1, rng.getrandbits(1 << n1))
            g = TruthTable(n2, rng.getrandbits(1 << n2))
            df, dg = degree(transform(f)), degree(transform(g))
            if df == 0 or dg == 0:
                continue
            assert degree(transform(compose(f, g))) == df * dg
            done += 1

    def test_iterate_base_case(self):
        h = make_example_h()
        assert iterate_compose(h, 1) == h
        with pytest.raises(ValueError):
            iterate_compose(h, 0)

    def test_iterate_dimension_guard(self):
        with pytest.raises(ValueError):
            iterate_compose(make_example_h(), 4)  # 3^4 = 81 over the cap


class TestExampleH:
    def test_table_and_top_coefficient(self):
        h = make_example_h()
        assert [h.sign(x) for x in range(8)] == [1, -1, 1, 1, 1, 1, -1, 1]
        s = transform(h)
        assert s.coefficient(0b111) == 0
        assert s.coefficient(0) == Fraction(1, 2)
        assert degree(s) == 2

    def test_every_coordinate_has_a_pivot(self):
        h = make_example_h()
        hit = 0
        for x in range(8):
            hit |= pivotal_set(h, x)
        assert hit == 0b111

    def test_squared_iterate_degree_and_sensitivity(self):
        f2 = iterate_compose(make_example_h(), 2)
        assert f2.n == 9
        assert degree(transform(f2)) == 4
        prof = build_profile(f2)
        assert all(v > 0 for v in prof.per_bit)


class TestRandomSources:
    def test_boolean_determinism(self):
        assert make_random(6, 42) == make_random(6, 42)
        assert make_random(6, 42) != make_random(6, 43)

    def test_real_determinism_and_dists(self):
        a = make_random_real(5, 7, "uniform")
        b = make_random_real(5, 7, "uniform")
        assert a == b
        assert abs(a.values).max() <= 1.0
        c = make_random_real(5, 7, "normal")
        assert a != c
        with pytest.raises(ValueError):
            make_random_real(5, 7, "cauchy")

    def test_mean_coefficient_sanity_warn_only(self):
        # CLT-level sanity on the empty coefficient; warn, never fail
        n, count = 6, 1000
        total = 0.0
        for i in range(count):
            t = make_random(n, 1000 + i)
            total += sum(t.signs()) / (1 << n)
        mean = total / count
        bound = 3 * (2 ** (-n / 2)) / count ** 0.5
        if abs(mean) > bound:
            warnings.warn(
                f"empty-coefficient mean {mean} outside the {bound} CLT band"
            )
