import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolcube import (
    BFN1Error,
    PseudoBooleanFunction,
    TruthTable,
    char_sign,
    evaluate,
    flip,
    is_monotone,
    make_and,
    make_parity,
    make_tribes,
    parse,
    serialize,
    TribesParams,
)
from conftest import naive_char, naive_is_monotone


class TestEncodings:
    def test_char_sign_matches_product_definition(self):
        for n in range(1, 5):
            for mask in range(1 << n):
                for idx in range(1 << n):
                    assert char_sign(mask, idx) == naive_char(mask, idx, n)

    def test_char_flip_identity(self):
        # chi_S(x) * chi_S(flip_T(x)) = (-1)^|S cap T|
        for n in range(1, 5):
            for s in range(1 << n):
                for t in range(1 << n):
                    for x in range(1 << n):
                        lhs = char_sign(s, x) * char_sign(s, flip(x, t))
                        assert lhs == (-1) ** ((s & t).bit_count() & 1)

    def test_flip_examples(self):
        assert flip(0, 0b101) == 0b101
        assert flip(0b011, 0) == 0b011

    def test_flip_involution_exhaustive_n3(self):
        for t in range(8):
            seen = set()
            for x in range(8):
                assert flip(flip(x, t), t) == x
                seen.add(flip(x, t))
            assert len(seen) == 8  # bijection for every fixed T

    @given(st.integers(1, 10), st.data())
    @settings(max_examples=50, deadline=None)
    def test_flip_involution_property(self, n, data):
        x = data.draw(st.integers(0, (1 << n) - 1))
        t = data.draw(st.integers(0, (1 << n) - 1))
        assert flip(flip(x, t), t) == x


class TestTables:
    def test_evaluate_examples(self):
        f = make_and(3)
        assert evaluate(f, 0) == 1
        assert evaluate(f, 5) == -1
        par = make_parity(2, 0b11)
        assert evaluate(par, 1) == -1  # x = (-1, +1)

    def test_evaluate_out_of_range(self):
        f = make_and(3)
        with pytest.raises(ValueError):
            evaluate(f, 8)
        with pytest.raises(ValueError):
            evaluate(f, -1)

    def test_from_signs_round_trip(self):
        rng = random.Random(3)
        for n in range(1, 7):
            signs = [rng.choice((1, -1)) for _ in range(1 << n)]
            t = TruthTable.from_signs(n, signs)
            assert t.signs() == signs
            assert list(t.signs_array()) == signs

    def test_entry_validation(self):
        with pytest.raises(ValueError):
            TruthTable.from_signs(1, [1, 0])
        with pytest.raises(ValueError):
            TruthTable.from_signs(2, [1, 1, 1])  # wrong length
        with pytest.raises(ValueError):
            TruthTable(0, 0)  # zero-dim rejected publicly
        with pytest.raises(ValueError):
            TruthTable(25, 0)  # above the cap

    def test_immutability(self):
        t = make_and(2)
        with pytest.raises(AttributeError):
            t.n = 3

    def test_real_table_validation(self):
        with pytest.raises(ValueError):
            PseudoBooleanFunction(2, [1.0, 2.0, float("nan"), 0.0])
        with pytest.raises(ValueError):
            PseudoBooleanFunction(2, [1.0, 2.0])


class TestMonotone:
    def test_examples(self):
        assert is_monotone(make_and(4))
        assert not is_monotone(make_parity(2, 0b11))
        assert is_monotone(make_tribes(TribesParams(2, 2)))

    def test_against_all_pairs_oracle(self):
        rng = random.Random(11)
        for n in range(1, 5):
            for _ in range(40):
                t = TruthTable(n, rng.getrandbits(1 << n))
                assert is_monotone(t) == naive_is_monotone(t)

    def test_restrictions_stay_monotone(self, monotone_n4):
        from boolcube import RestrictionContext, restrict

        for t in monotone_n4:
            for free_mask in range(1 << 4):
                for point in range(0, 16, 5):  # a few pinned assignments
                    ctx = RestrictionContext.from_point(free_mask, point, 4)
                    assert is_monotone(restrict(t, ctx))


class TestBFN1:
    def test_and_2_exact_bytes(self):
        assert serialize(make_and(2)) == b"BFN1 n=2\n0E\n"

    def test_round_trip_random(self):
        rng = random.Random(5)
        for n in range(1, 11):
            for _ in range(10):
                t = TruthTable(n, rng.getrandbits(1 << n))
                assert parse(serialize(t)) == t

    def test_parse_accepts_str(self):
        t = make_and(3)
        assert parse(serialize(t).decode()) == t

    def test_length_errors(self):
        parse(b"BFN1 n=3\n0F\n")  # one byte is exactly right for n=3
        with pytest.raises(BFN1Error):
            parse(b"BFN1 n=4\n0F\n")  # n=4 needs two bytes
        with pytest.raises(BFN1Error):
            parse(b"BFN1 n=3\n0F00\n")

    def test_header_errors(self):
        with pytest.raises(BFN1Error):
            parse(b"BFN2 n=3\n0F\n")
        with pytest.raises(BFN1Error):
            parse(b"BFN1 n=x\n0F\n")
        with pytest.raises(BFN1Error):
            parse(b"no header at all")
        with pytest.raises(BFN1Error):
            parse(b"BFN1 n=0\n0F\n")

    def test_padding_and_hex_errors(self):
        with pytest.raises(BFN1Error):
            parse(b"BFN1 n=2\nFF\n")  # bits beyond 2^2 entries
        with pytest.raises(BFN1Error):
            parse(b"BFN1 n=3\nZZ\n")

    @given(st.integers(1, 8), st.data())
    @settings(max_examples=60, deadline=None)
    def test_round_trip_property(self, n, data):
        bits = data.draw(st.integers(0, (1 << (1 << n)) - 1))
        t = TruthTable(n, bits)
        assert parse(serialize(t)) == t

    def test_signs_array_is_read_only(self):
        arr = make_and(3).signs_array()
        with pytest.raises(ValueError):
            arr[0] = 5
        assert arr.dtype == np.int8
