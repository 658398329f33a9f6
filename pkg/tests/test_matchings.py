import itertools
import json
from math import factorial

import pytest
from hypothesis import given, strategies as st

from jacklab import partitions as P
from jacklab.coefficients import coeff_table
from jacklab.matchings import (BudgetExceeded, LabelledMatching, OutOfScope, all_matchings,
                               b_matching, base_weights, census_G, class_algebra_c, cycle_type,
                               delete_edges_stepwise, delete_vertices, edge_delete,
                               matchings_of_type,
                               enumerate_G, enumerate_labelled, from_pairs, g_matching,
                               in_scope, is_bipartite, labelled_count_factor, pairs,
                               placement_table, single_cycle_matchings, weight_sum_check,
                               union_cycles, vertex_name, weight, weight_polynomial)


def v(name):
    """'3' -> vertex of 3, '3^' -> vertex of 3 hat."""
    return 2 * (int(name.rstrip("^")) - 1) + name.endswith("^")


def matching(*prs):
    return from_pairs([(v(a), v(b)) for a, b in prs])


# three squares 1^2 3^4, 2^3 6^5 and 4^1 5^6 over lam = (4, 2)
SQUARES = matching(("2", "3^"), ("4", "1^"), ("3", "6^"), ("5", "2^"), ("1", "5^"), ("6", "4^"))


def double_factorial(n):
    return factorial(2 * n) // (2 ** n * factorial(n))


def test_vertex_names():
    assert [vertex_name(x) for x in range(4)] == ["1", "1^", "2", "2^"]
    assert v("2^") == 3


def test_canonical_matchings():
    assert g_matching(2) == (1, 0, 3, 2)
    b = b_matching((2, 1))
    assert pairs(b) == [(0, 3), (1, 2), (4, 5)]
    assert cycle_type(g_matching(5), b_matching((3, 2))) == (3, 2)
    assert is_bipartite(b_matching((4, 2)))


def test_matching_counts():
    for n in range(1, 6):
        assert sum(1 for _ in all_matchings(n)) == double_factorial(n)
        # single cycle with g: 2^(n-1) (n-1)!
        assert sum(1 for _ in single_cycle_matchings(n)) == 2 ** (n - 1) * factorial(n - 1)
    for d in single_cycle_matchings(4):
        assert cycle_type(g_matching(4), d) == (4,)


def test_matchings_of_type_against_filtering():
    for n in range(1, 6):
        for lam in P.partitions_of(n):
            ref = b_matching(lam)
            by_type = {}
            for d in all_matchings(n):
                by_type.setdefault(cycle_type(ref, d), set()).add(d)
            for nu in P.partitions_of(n):
                got = list(matchings_of_type(ref, nu))
                assert len(got) == len(set(got))
                assert set(got) == by_type.get(nu, set())
    with pytest.raises(ValueError):
        list(matchings_of_type(g_matching(2), (3,)))


def test_from_pairs_rejects_partial():
    with pytest.raises(ValueError):
        from_pairs([(0, 1)], n=2)


def test_squares_example():
    lm = LabelledMatching((4, 2), SQUARES)
    assert lm.nu == (2, 2, 2)
    assert lm.bipartite
    assert cycle_type(g_matching(6), SQUARES) == (6,)
    assert weight(lm) == 0
    names = [sorted(vertex_name(x) for x in c) for c in lm.cycles]
    assert sorted(["1^", "2", "3^", "4"]) in names


def test_squares_deletion_shapes():
    # a square whose black edges lie in one cycle splits it; across two cycles merges them
    inside = [v(x) for x in ("1^", "2", "3^", "4")]
    lam2, d2, new = delete_vertices((4, 2), SQUARES, inside)
    assert lam2 == (2, 1, 1)
    assert cycle_type(b_matching(lam2), d2) == (2, 2)
    assert cycle_type(g_matching(4), d2) == (4,)
    across = [v(x) for x in ("2^", "3", "5", "6^")]
    lam2, d2, new = delete_vertices((4, 2), SQUARES, across)
    assert lam2 == (4,)
    assert cycle_type(b_matching(lam2), d2) == (2, 2)
    assert len(new) == 8


def test_edge_delete_uses_greatest_label():
    for labels in itertools.permutations((1, 2, 3)):
        lm = LabelledMatching((4, 2), SQUARES, labels)
        target = lm.cycles[labels.index(3)]
        res, removed = edge_delete(lm)
        assert removed == frozenset(target)
        assert res.nu == (2, 2)
        assert sorted(res.labels) == [1, 2]


def test_deletion_order_independence():
    lam = (4, 2)
    for cyc in union_cycles(b_matching(lam), SQUARES):
        edges = [(x, SQUARES[x]) for x in cyc if x < SQUARES[x]]
        results = set()
        for order in itertools.permutations(edges):
            g, b = delete_edges_stepwise(lam, SQUARES, order)
            results.add((tuple(sorted(g.items())), tuple(sorted(b.items()))))
        assert len(results) == 1


@given(st.sampled_from([(3, 2, 1), (4, 2), (3, 3), (2, 2, 2), (5, 1), (4, 1, 1)]), st.data())
def test_deletion_order_independence_random(lam, data):
    n = sum(lam)
    delta = data.draw(st.sampled_from(list(single_cycle_matchings(n))))
    cycles = union_cycles(b_matching(lam), delta)
    cyc = data.draw(st.sampled_from(cycles))
    edges = [(x, delta[x]) for x in cyc if x < delta[x]]
    perm = data.draw(st.permutations(edges))
    assert delete_edges_stepwise(lam, delta, edges) == delete_edges_stepwise(lam, delta, perm)


def test_i2_weight_is_nonbipartite_indicator():
    for n in range(3, 7):
        for lam in P.partitions_of(n):
            for key, w in placement_table(lam, 2).items():
                bip = all((a ^ b) & 1 for a, b in key)
                assert w == (0 if bip else 1)


def test_base_weights_match_single_cycle_coefficients():
    for n in range(1, 6):
        for lam in P.partitions_of(n):
            ws = base_weights(lam)
            poly = [0] * (max(ws.values(), default=0) + 1)
            for w in ws.values():
                poly[w] += 1
            want = [int(c) for c in coeff_table("a", n, (n,))[lam].to_beta().coeffs]
            assert poly == want
            for d, w in ws.items():
                assert (w == 0) == is_bipartite(d)


def test_weight_polynomial_example():
    poly, count, bad_zero, too_big = weight_polynomial((3,), (3,))
    assert poly == [1, 1, 2]
    assert count == 4
    assert not bad_zero and not too_big


def test_weight_sums_small():
    for n in range(1, 6):
        for nu in P.partitions_of(n):
            if in_scope(nu):
                r = weight_sum_check(n, nu)
                assert r["ok"], [x for x in r["rows"] if not x["ok"]]


def test_out_of_scope():
    assert not in_scope((4, 4))
    with pytest.raises(OutOfScope):
        weight_sum_check(8, (4, 4))
    lm = LabelledMatching((4, 4), b_matching((4, 4)))
    assert lm.nu == (1,) * 8
    with pytest.raises(OutOfScope):
        weight(LabelledMatching((8,), next(d for d, _ in enumerate_G((8,), (8,), (4, 4)))))


def test_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_G((9,), (9,), (9,)))
    with pytest.raises(BudgetExceeded):
        census_G(9)
    with pytest.raises(BudgetExceeded):
        class_algebra_c((8,), (8,), (8,))


def test_labelled_counts():
    for n in range(1, 6):
        census = census_G(n)
        for nu in P.partitions_of(n):
            f = labelled_count_factor(nu)
            for lam in P.partitions_of(n):
                raw = census.get((lam, nu), (0, 0))[0]
                assert sum(1 for _ in enumerate_labelled(lam, nu)) == f * raw


def test_class_algebra_small():
    # two transpositions multiply to the identity in exactly one way per fixed one
    assert class_algebra_c((1, 1), (2,), (2,)) == 1
    assert class_algebra_c((2,), (2,), (2,)) == 0
    # a 3-cycle is a product of two transpositions in 3 ways
    assert class_algebra_c((3,), (2, 1), (2, 1)) == 3


def test_census_against_direct_enumeration():
    for n in range(1, 5):
        census = census_G(n)
        for lam in P.partitions_of(n):
            for nu in P.partitions_of(n):
                got = list(enumerate_G(lam, (n,), nu))
                want = census.get((lam, nu), (0, 0))
                assert (len(got), sum(b for _, b in got)) == want


def test_witness_json():
    lm = LabelledMatching((4, 2), SQUARES)
    doc = json.loads(lm.to_json(weight=0))
    assert doc["lambda"] == [4, 2]
    assert doc["nu"] == [2, 2, 2]
    assert doc["wt"] == 0
    assert len(doc["pairs"]) == 6
    assert sorted(x["label"] for x in doc["labels"]) == [1, 2, 3]


@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.sampled_from(list(P.partitions_of(n))),
                        st.sampled_from([nu for nu in P.partitions_of(n) if in_scope(nu)]))),
    st.data())
def test_weight_zero_exactly_on_bipartite(shape, data):
    lam, nu = shape
    items = list(enumerate_labelled(lam, nu))
    if not items:
        return
    lm = data.draw(st.sampled_from(items))
    w = weight(lm)
    assert (w == 0) == lm.bipartite
    assert 0 <= w <= sum(nu) - len(nu)
