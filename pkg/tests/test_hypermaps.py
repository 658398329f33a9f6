import json
from collections import Counter
from math import factorial

import pytest
from hypothesis import given, strategies as st

from jacklab import partitions as P
from jacklab.coefficients import coeff_table
from jacklab.hypermaps import (BORDER, CROSS_BORDER, HANDLE, LEAF, Monopole, StarHypermap,
                               census_rows, classify_root, delete_root, enumerate_labelled,
                               enumerate_monopoles, hypermap_to_monopole, labelled_count_formula,
                               monopole_census, monopole_theta, rectangle_census, theta_sum_check,
                               theta, twist_root, witness)

SHAPES = [(1, 4), (2, 2), (3, 1), (4, 1), (2, 3), (3, 2)]


def total_count(k, m):
    n = k * m
    return factorial(n - 1) * factorial(k - 1) ** m * 2 ** (n - m)


def flip(M, blocks):
    """Flip the listed black vertices: reverse rotation, toggle edge twists."""
    black = [list(r) for r in M.black]
    tw = list(M.twist)
    start = 0
    for i, d in enumerate(M.degs):
        if i in blocks:
            black[i].reverse()
            for e in range(start, start + d):
                tw[e] ^= 1
        start += d
    return StarHypermap(M.degs, M.white, black, tw)


def test_single_edge():
    M = StarHypermap((1,), (0,), [(0,)], (0,))
    assert M.face_degrees() == (1,)
    assert M.is_orientable()
    assert M.euler_characteristic() == 2
    assert classify_root(M) == LEAF
    assert theta(M) == 0


def test_two_edges_one_black_vertex():
    plain = StarHypermap((2,), (0, 1), [(0, 1)], (0, 0))
    twisted = StarHypermap((2,), (0, 1), [(0, 1)], (0, 1))
    assert plain.face_degrees() == (1, 1)
    assert twisted.face_degrees() == (2,)
    assert plain.is_orientable() and not twisted.is_orientable()
    assert classify_root(plain) == BORDER
    assert classify_root(twisted) == CROSS_BORDER
    assert theta(plain) == 0 and theta(twisted) == 1


def test_canonical_form():
    M = StarHypermap((2,), (1, 0), [(1, 0)], (1, 1))
    assert M.twist == (0, 0)
    assert M.white[0] == 0
    assert M == StarHypermap((2,), (0, 1), [(0, 1)], (0, 0))
    with pytest.raises(ValueError):
        StarHypermap((2,), (0, 0), [(0, 1)], (0, 0))
    with pytest.raises(ValueError):
        StarHypermap((2,), (0, 1), [(0, 2)], (0, 0))


@pytest.mark.parametrize("k,m", SHAPES)
def test_enumeration_size(k, m):
    maps = list(enumerate_labelled(k * m, (k,) * m))
    assert len(maps) == total_count(k, m)
    assert len(set(maps)) == len(maps)


@pytest.mark.parametrize("k,m", SHAPES)
def test_invariants_on_all_maps(k, m):
    n = k * m
    for M in enumerate_labelled(n, (k,) * m):
        chi = M.euler_characteristic()
        assert chi == 1 + m - n + len(M.face_degrees())
        assert chi <= 2
        if M.is_orientable():
            assert chi % 2 == 0
        assert sum(M.face_degrees()) == n
        t = theta(M)
        assert (t == 0) == M.is_orientable()
        assert 0 <= t <= n + 1 - len(M.face_degrees()) - m
        assert delete_root(twist_root(M, check=False)) == delete_root(M)
        if classify_root(M) == HANDLE:
            # exactly one of a handle pair carries the extra unit
            T = twist_root(M)
            assert theta(M) - theta(delete_root(M)) + theta(T) - theta(delete_root(T)) == 1


def test_twist_root_requires_handle():
    M = StarHypermap((2,), (0, 1), [(0, 1)], (0, 0))
    with pytest.raises(ValueError):
        twist_root(M)


def test_one_part_rows():
    # k = 1: every map is a plane tree with one face
    for m in range(1, 6):
        polys, orient = rectangle_census(1, m)
        assert dict(polys) == {(m,): Counter({0: factorial(m - 1)})}
        assert orient[(m,)] == factorial(m - 1)


def test_orientable_counts_match_alpha_one():
    for k, m in SHAPES:
        n = k * m
        table = coeff_table("h~", n, (k,) * m)
        _, orient = rectangle_census(k, m)
        for lam in P.partitions_of(n):
            assert table[lam](1) == orient[lam]


def test_theta_sums_small():
    for k, m in SHAPES:
        r = theta_sum_check(k, m)
        assert r["ok"], r["rows"]


def test_count_formula():
    for k, m in [(1, 3), (2, 2), (3, 1), (2, 3)]:
        polys, _ = rectangle_census(k, m)
        for lam in P.partitions_of(k * m):
            assert sum(polys.get(lam, Counter()).values()) == labelled_count_formula(lam, k, m)


def mirror(M):
    return StarHypermap(M.degs, list(reversed(M.white)), [list(reversed(r)) for r in M.black],
                        M.twist)


def test_counting_convention_has_no_mirror_quotient():
    # identifying a map with its mirror image would break the count identity
    for k, m in [(2, 2), (3, 1), (2, 3)]:
        maps = list(enumerate_labelled(k * m, (k,) * m))
        formula = sum(labelled_count_formula(lam, k, m) for lam in P.partitions_of(k * m))
        assert len(maps) == formula
        assert len({min(M, mirror(M)) for M in maps}) != formula


def test_monopoles_match_two_regular_hypermaps():
    for m in range(1, 4):
        mono = monopole_census(m)
        polys, _ = rectangle_census(2, m)
        assert {lam: dict(c) for lam, c in mono.items()} == {lam: dict(c) for lam, c in polys.items()}
        for M in enumerate_labelled(2 * m, (2,) * m):
            W = hypermap_to_monopole(M)
            assert W.face_degrees() == M.face_degrees()
            assert W.is_orientable() == M.is_orientable()
            assert monopole_theta(W) == theta(M)


def test_monopole_basics():
    assert sum(1 for _ in enumerate_monopoles(2)) == factorial(3) * 4
    W = Monopole((0, 1), (0,))
    assert W.face_degrees() == (1, 1)
    assert monopole_theta(W) == 0
    assert monopole_theta(W.twist_root()) == 1
    with pytest.raises(ValueError):
        hypermap_to_monopole(StarHypermap((3,), (0, 1, 2), [(0, 1, 2)], (0, 0, 0)))


def test_census_rows_and_witness():
    rows = census_rows(2, 2)
    assert [r[2] for r in rows] == list(P.partitions_of(4))
    for k, m, lam, poly, orient, total in rows:
        assert total == sum(poly)
        assert orient == (poly[0] if poly else 0)
    M = StarHypermap((2,), (0, 1), [(0, 1)], (0, 1))
    doc = json.loads(witness(M))
    assert doc["theta"] == 1 and doc["orientable"] is False
    assert doc["trace"] == [CROSS_BORDER, LEAF]
    assert StarHypermap.from_dict(doc) == M


@st.composite
def hypermaps(draw):
    k, m = draw(st.sampled_from([(2, 2), (3, 2), (2, 3), (4, 1), (3, 1)]))
    n = k * m
    rest = draw(st.permutations(range(1, n)))
    black = []
    for j in range(m):
        black.append(draw(st.permutations(range(j * k, (j + 1) * k))))
    tw = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return StarHypermap((k,) * m, (0,) + tuple(rest), black, tw)


@given(hypermaps(), st.sets(st.integers(0, 2)))
def test_flips_do_not_change_the_map(M, blocks):
    F = flip(M, {b for b in blocks if b < len(M.degs)})
    assert F == M
    assert F.face_degrees() == M.face_degrees()
    assert StarHypermap.from_dict(M.to_dict()) == M


@given(hypermaps())
def test_theta_properties(M):
    t = theta(M)
    trace = []
    assert theta(M, trace) == t
    assert len(trace) == M.n
    assert (t == 0) == M.is_orientable()
    assert delete_root(twist_root(M, check=False)) == delete_root(M)
