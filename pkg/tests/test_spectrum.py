from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings

from entexchange import (EmptySpectrum, GroupedSpectrum, NegativeEntry, SumNotOne,
                         largest_value, parse_spectrum, tensor_power, tensor_product,
                         to_grouped, uniform)
from entexchange.oracle import naive_tensor_power, naive_tensor_product
from entexchange.spectrum import PRODUCT, max_group_count

from conftest import spectra


def G(*pairs):
    return GroupedSpectrum(tuple((F(v), m) for v, m in pairs))


class TestParse:
    def test_decimal_strings_are_exact(self):
        s = parse_spectrum(["0.5", "0.25", "0.25"])
        assert s.probs == (F(1, 2), F(1, 4), F(1, 4))

    def test_point_distribution(self):
        assert parse_spectrum(["1"]).probs == (F(1),)

    def test_sum_not_one(self):
        with pytest.raises(SumNotOne) as info:
            parse_spectrum(["0.4", "0.7"])
        assert info.value.deficit == F(-1, 10)

    def test_no_silent_renormalisation(self):
        with pytest.raises(SumNotOne):
            parse_spectrum(["0.4", "0.4", "0.1", "0.1", "0.01"])
        s = parse_spectrum(["40/101", "40/101", "10/101", "10/101", "1/101"])
        assert sum(s.probs) == 1

    def test_zeros_stripped_and_sorted(self):
        s = parse_spectrum(["0.1", "0", "0.9", "0.0"])
        assert s.probs == (F(9, 10), F(1, 10))

    def test_negative(self):
        with pytest.raises(NegativeEntry):
            parse_spectrum(["1.5", "-0.5"])

    @pytest.mark.parametrize("entries", [[], ["0"]])
    def test_empty(self, entries):
        with pytest.raises((EmptySpectrum, SumNotOne)):
            parse_spectrum(entries)

    def test_rejects_binary_floats(self):
        with pytest.raises(TypeError):
            parse_spectrum([0.5, 0.5])

    def test_garbage(self):
        with pytest.raises(ValueError):
            parse_spectrum(["half", "0.5"])


class TestGrouping:
    @pytest.mark.parametrize("entries, expected", [
        (["0.4", "0.4", "0.2"], [("2/5", 2), ("1/5", 1)]),
        (["1/2", "1/4", "1/4"], [("1/2", 1), ("1/4", 2)]),
        (["1/3", "1/3", "1/3"], [("1/3", 3)]),
    ])
    def test_merge(self, entries, expected):
        assert to_grouped(parse_spectrum(entries)) == G(*expected)

    @given(spectra)
    def test_round_trip(self, s):
        assert to_grouped(s.expand()) == s

    def test_constructor_validates(self):
        with pytest.raises(ValueError):
            G(("1/4", 2), ("1/2", 1))
        with pytest.raises(SumNotOne):
            G(("1/2", 1), ("1/4", 1))


class TestTensor:
    def test_identity(self, ex2):
        assert tensor_product(PRODUCT, ex2[0]) == ex2[0]
        assert tensor_product(ex2[1], G(("1", 1))) == ex2[1]

    def test_uniform_times_uniform(self):
        assert tensor_product(uniform(2), uniform(2)) == G(("1/4", 4))

    def test_square_matches_enumeration(self):
        a = G(("2/5", 2), ("1/5", 1))
        dense = naive_tensor_product([F(2, 5), F(2, 5), F(1, 5)], [F(2, 5), F(2, 5), F(1, 5)])
        assert to_grouped(parse_spectrum(list(dense))) == G(("4/25", 4), ("2/25", 4), ("1/25", 1))
        assert tensor_product(a, a) == G(("4/25", 4), ("2/25", 4), ("1/25", 1))

    def test_power_one(self, ex2):
        assert tensor_power(ex2[0], 1) == ex2[0]

    def test_power_zero_rejected(self, ex2):
        with pytest.raises(ValueError):
            tensor_power(ex2[0], 0)

    def test_power_100_closed_form(self):
        a = G(("2/5", 2), ("1/5", 1))
        p = tensor_power(a, 100)
        expected = G(*[(F(2, 5) ** (100 - c) * F(1, 5) ** c, comb(100, c) * 2 ** (100 - c))
                       for c in range(101)])
        assert len(p) == 101
        assert p == expected
        assert p.total_mass() == 1

    def test_power_3_matches_27_terms(self):
        a = G(("1/2", 1), ("1/4", 2))
        dense = naive_tensor_power([F(1, 2), F(1, 4), F(1, 4)], 3)
        assert len(dense) == 27
        assert tensor_power(a, 3) == to_grouped(parse_spectrum(list(dense)))
        assert tensor_power(a, 3) == G(("1/8", 1), ("1/16", 6), ("1/32", 12), ("1/64", 8))

    @given(spectra, spectra)
    def test_commutative(self, a, b):
        assert tensor_product(a, b) == tensor_product(b, a)

    @settings(max_examples=50)
    @given(spectra, spectra, spectra)
    def test_associative(self, a, b, c):
        assert tensor_product(tensor_product(a, b), c) == tensor_product(a, tensor_product(b, c))

    @settings(max_examples=50)
    @given(spectra)
    def test_power_additive_in_exponent(self, a):
        for p, q in [(1, 1), (2, 3), (4, 1)]:
            assert tensor_power(a, p + q) == tensor_product(tensor_power(a, p), tensor_power(a, q))

    @settings(max_examples=50)
    @given(spectra)
    def test_power_equals_repeated_product(self, a):
        acc = a
        for m in range(2, 6):
            acc = tensor_product(acc, a)
            assert tensor_power(a, m) == acc
            assert acc.total_mass() == 1

    @given(spectra)
    def test_group_count_bound(self, a):
        for m in (2, 5, 9):
            assert len(tensor_power(a, m)) <= max_group_count(len(a), m)


class TestLargest:
    def test_values(self, ex4):
        assert largest_value(G(("1/2", 1), ("1/4", 2))) == F(1, 2)
        assert largest_value(uniform(7)) == F(1, 7)
        assert largest_value(tensor_power(ex4[0], 9)) == F(2, 5) ** 9
