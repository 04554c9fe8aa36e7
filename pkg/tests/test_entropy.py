import math
import random

import pytest
from hypothesis import given, settings

from entexchange import (INFINITY, ONE, ZERO, EntropyRatioResult, ProductState, RenyiOrder,
                         asymptotic_rate, entropy_ratio, grouped, majorizes, renyi, renyi_power,
                         tensor_power, tensor_product, uniform)
from entexchange.entropy import endpoint_ratios

from conftest import entangled_spectra, random_spectrum, spectra

ORDERS = [ZERO, ONE, INFINITY] + [RenyiOrder.finite(t) for t in (0.3, 0.5, 2.0, 3.7, 10.0)]


def shannon_direct(probs):
    return -sum(p * math.log2(p) for p in probs)


@pytest.mark.parametrize("k", [2, 3, 7])
@pytest.mark.parametrize("order", ORDERS, ids=str)
def test_uniform_all_orders(k, order):
    assert renyi(uniform(k), order) == pytest.approx(math.log2(k), rel=1e-12)


def test_shannon_three_level():
    s = grouped(["0.4", "0.4", "0.2"])
    expected = shannon_direct([0.4, 0.4, 0.2])
    assert renyi(s, ONE) == pytest.approx(expected, rel=1e-12)
    assert renyi(s, ONE) == pytest.approx(1.5219, abs=1e-4)


def test_example2_order_two(ex2):
    a, b = ex2
    sa = renyi(a, RenyiOrder.finite(2))
    sb = renyi(b, RenyiOrder.finite(2))
    assert sa == pytest.approx(-math.log2(0.3192), rel=1e-12)
    assert sb == pytest.approx(-math.log2(0.375), rel=1e-12)
    assert sa / sb == pytest.approx(1.1643, abs=5e-5)


def test_limits_are_continuous(ex2):
    a = ex2[0]
    assert renyi(a, RenyiOrder.finite(1e-6)) == pytest.approx(renyi(a, ZERO), rel=1e-5)
    assert renyi(a, RenyiOrder.finite(1 + 1e-6)) == pytest.approx(renyi(a, ONE), rel=1e-5)
    assert renyi(a, RenyiOrder.finite(1 - 1e-6)) == pytest.approx(renyi(a, ONE), rel=1e-5)
    assert renyi(a, RenyiOrder.finite(1e6)) == pytest.approx(renyi(a, INFINITY), rel=1e-5)


def test_near_one_uses_shannon(ex2):
    a = ex2[0]
    assert renyi(a, RenyiOrder.finite(1 + 1e-7)) == renyi(a, ONE)


def test_large_power_does_not_underflow(ex4):
    a = ex4[0]
    big = tensor_power(a, 400)
    for order in ORDERS:
        assert renyi(big, order) == pytest.approx(renyi_power(a, 400, order), rel=1e-9)


def test_order_parsing():
    assert RenyiOrder.parse("inf") == INFINITY
    assert RenyiOrder.parse("0") == ZERO
    assert RenyiOrder.parse("1") == ONE
    assert RenyiOrder.parse("2.5") == RenyiOrder.finite(2.5)
    for bad in ("-1", "x", "nan"):
        with pytest.raises(ValueError):
            RenyiOrder.parse(bad)
    with pytest.raises(ValueError):
        RenyiOrder.finite(1.0)


@settings(max_examples=100)
@given(spectra, spectra)
def test_additive(a, b):
    ab = tensor_product(a, b)
    for order in ORDERS:
        assert renyi(ab, order) == pytest.approx(renyi(a, order) + renyi(b, order), rel=1e-9, abs=1e-12)


@settings(max_examples=100)
@given(spectra, spectra)
def test_schur_concave(a, b):
    if majorizes(a, b).holds:
        for order in ORDERS:
            assert renyi(a, order) >= renyi(b, order) - 1e-12


class TestEntropyRatio:
    def test_identical(self, ex2):
        r = entropy_ratio(ex2[0], ex2[0])
        assert r.ratio == pytest.approx(1.0, abs=1e-12)

    def test_example4_is_one_at_order_zero(self, ex4):
        r = entropy_ratio(*ex4)
        assert r.ratio == pytest.approx(1.0, abs=1e-12)
        assert r.order == ZERO

    def test_example2_below_order_two_value(self, ex2):
        r = entropy_ratio(*ex2)
        assert r.ratio <= 1.1643
        assert r.ratio <= renyi(ex2[0], RenyiOrder.finite(2)) / renyi(ex2[1], RenyiOrder.finite(2))

    def test_example2_matches_dense_scan(self, ex2):
        # independent check: brute-force scan over tau on a log grid
        a, b = ex2
        taus = [10 ** (k / 400) for k in range(-1600, 1601)]
        brute = min(renyi(a, RenyiOrder.finite(t)) / renyi(b, RenyiOrder.finite(t))
                    for t in taus if abs(t - 1) > 1e-6)
        r = entropy_ratio(a, b)
        assert r.ratio <= brute + 1e-12
        assert r.ratio == pytest.approx(brute, abs=1e-6)

    def test_product_state_rejected(self, ex2):
        with pytest.raises(ProductState):
            entropy_ratio(ex2[0], grouped(["1"]))

    def test_json_round_trip(self, ex2):
        r = entropy_ratio(*ex2)
        d = r.to_dict()
        assert d["u"] == pytest.approx(r.order.tau / (1 + r.order.tau), abs=1e-11)
        back = EntropyRatioResult.from_dict(d)
        assert back.ratio == pytest.approx(r.ratio, rel=1e-11)
        assert back.order.tau == pytest.approx(r.order.tau, rel=1e-12)

    def test_infinity_order_serialises(self):
        r = entropy_ratio(grouped(["0.9", "0.1"]), grouped(["0.81", "0.19"]))
        assert r.order == INFINITY
        assert r.to_dict()["tau"] == "inf" and r.to_dict()["u"] == 1.0

    @settings(max_examples=60, deadline=None)
    @given(entangled_spectra, entangled_spectra)
    def test_below_endpoints(self, a, b):
        r = entropy_ratio(a, b)
        assert r.ratio <= min(endpoint_ratios(a, b).values()) + 1e-12
        assert r.ratio > 0

    @settings(max_examples=40, deadline=None)
    @given(entangled_spectra, entangled_spectra)
    def test_reciprocal_product_at_most_one(self, a, b):
        assert entropy_ratio(a, b).ratio * entropy_ratio(b, a).ratio <= 1 + 1e-9


def test_lemma3_both_at_least_one_only_if_equal():
    rng = random.Random(5)
    for _ in range(100):
        a = random_spectrum(rng, min_len=2)
        b = random_spectrum(rng, min_len=2)
        both = entropy_ratio(a, b).ratio >= 1 and entropy_ratio(b, a).ratio >= 1
        assert both == (a == b)


class TestAsymptotic:
    def test_identical(self, ex2):
        assert asymptotic_rate(ex2[0], ex2[0]) == pytest.approx(1.0)

    @pytest.mark.parametrize("k1, k2", [(2, 3), (4, 2), (5, 7)])
    def test_uniform(self, k1, k2):
        assert asymptotic_rate(uniform(k1), uniform(k2)) == pytest.approx(math.log(k1) / math.log(k2))

    def test_example4(self, ex4):
        expected = shannon_direct([0.4, 0.4, 0.2]) / shannon_direct([0.5, 0.25, 0.25])
        assert asymptotic_rate(*ex4) == pytest.approx(expected, rel=1e-12)
        assert asymptotic_rate(*ex4) == pytest.approx(1.0146, abs=1e-4)

    def test_product_target(self, ex4):
        with pytest.raises(ProductState):
            asymptotic_rate(ex4[0], grouped(["1"]))
