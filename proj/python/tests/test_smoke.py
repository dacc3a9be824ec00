from fractions import Fraction
import json

import pytest

import krbenes


def test_benes_route_verifies():
    net = krbenes.build_benes(8)
    p = krbenes.Permutation.parse("4,5,0,6,1,2,7,3")
    plan = krbenes.looping_route(net, p)
    assert plan.cost["terminal_visits"] == 8 * 5
    report = krbenes.verify_plan(net, plan, p)
    assert report.ok
    assert report.delivered == p.images()


def test_kr_route_all_bounded_n8():
    net = krbenes.build_kr_benes(8)
    for k in (1, 2, 4):
        for p in krbenes.enumerate_k_bounded(8, k):
            plan = krbenes.kr_benes_route(net, p)
            assert krbenes.verify_plan(net, plan, p).ok


def test_flipped_switch_is_caught():
    net = krbenes.build_k_benes(16, 2)
    p = krbenes.gen_pi1(16, 2)
    plan = krbenes.k_benes_route(net, p)
    col = next(c for c, row in enumerate(plan.settings) if "cross" in row)
    idx = plan.settings[col].index("cross")
    bad = krbenes.flip_switch(plan, col, idx)
    report = krbenes.verify_plan(net, bad, p)
    assert not report.ok
    assert report.violations


def test_counts_are_python_ints():
    assert krbenes.count_k_bounded_formula(4, 2) == 18
    assert krbenes.count_k_bounded_formula(8, 2) == 1458
    assert krbenes.count_k_bounded_exhaustive(8, 2) == 400
    big = krbenes.count_k_bounded_formula(1024, 2)
    assert isinstance(big, int) and big.bit_length() > 64


def test_average_complexity_is_fraction():
    printed, normalized = krbenes.average_control_complexity(8)
    assert isinstance(normalized, Fraction)
    assert normalized == Fraction(1575761, 40320)
    assert normalized <= 8 * 5


def test_errors_map_to_exceptions():
    with pytest.raises(krbenes.InvalidSize):
        krbenes.build_benes(6)
    with pytest.raises(krbenes.NotKBounded):
        krbenes.k_benes_route(krbenes.build_k_benes(16, 2), krbenes.Permutation.reversal(16))
    assert issubclass(krbenes.ParseError, krbenes.Error)


def test_json_round_trip():
    net = krbenes.build_kr_benes(16)
    assert krbenes.Network.from_json(net.to_json()) == net
    p = krbenes.gen_random_k_bounded(16, 4, 7)
    plan = krbenes.kr_benes_route(net, p)
    again = krbenes.RoutePlan.from_json(plan.to_json())
    assert again.settings == plan.settings
    assert json.loads(plan.to_json())["k_used"] == plan.k_used


def test_compatibility_graph_labels():
    g = krbenes.build_compatibility_graph(krbenes.Permutation.parse("4,5,0,6,1,2,7,3"), 4)
    edges = {(e["u"], e["v"]): (e["kind"], e["labels"]) for e in g["edges"]}
    assert edges[(3, 4)] == ("cross", "0")
    assert edges[(0, 1)] == ("straight", "01")
