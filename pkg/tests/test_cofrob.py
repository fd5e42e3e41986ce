from fractions import Fraction
from math import factorial

import pytest

from weylprop.cofrob import (
    _route_bottom, _route_top, arrangement_count, arrangement_count_enumerated,
    check_coassoc, check_coassoc_factored, coefficient_pair,
    composite_sides_equal, counit_check, decompose, genus_of, is_valid_piece,
    piece_weight, set_partitions, validate_two_level,
)


def test_validity_examples():
    assert is_valid_piece(1, 1, 0)
    assert is_valid_piece(2, 1, 1)
    assert not is_valid_piece(2, 1, 0)     # parity
    assert not is_valid_piece(1, 1, -2)    # lower bound
    assert not is_valid_piece(0, 1, 1)


def test_genus_examples():
    assert genus_of(1, 1, 0) == 0
    assert genus_of(2, 1, 1) == 0
    assert genus_of(1, 1, 2) == 1
    assert piece_weight(2, 1, 0) == 1
    with pytest.raises(ValueError):
        genus_of(2, 1, 0)


def test_set_partitions_counts():
    # Bell numbers
    assert [len(set_partitions(range(k))) for k in range(6)] == [1, 1, 2, 5, 15, 52]


def test_decompose_smallest_piece():
    out = decompose(1, 1, 0)
    assert len(out) == 1
    graph, coeff = out[0]
    assert coeff == 1
    assert graph == (((0,),), ((0,),), ((1,),), (0,), (0,))


def test_decompose_one_loop_piece():
    out = decompose(1, 1, 2)
    assert len(out) == 3
    by_edges = {}
    for graph, coeff in out:
        edges = graph[2][0][0]
        by_edges.setdefault(edges, []).append((graph, coeff))
    # one edge with the weight on either side, two parallel edges with 1/2
    assert sorted(c for g, c in by_edges[1]) == [1, 1]
    assert [c for g, c in by_edges[2]] == [Fraction(1, 2)]


def test_every_emission_is_structurally_valid():
    for (m, n, chi) in [(1, 1, 0), (1, 1, 2), (2, 1, 1), (2, 2, 2), (3, 2, 3),
                        (2, 2, 4)]:
        for graph, coeff in decompose(m, n, chi):
            assert validate_two_level(graph, m, n, chi)
            # positive coefficient whose denominator is the edge factorial
            # product
            denom = 1
            for row in graph[2]:
                for e in row:
                    denom *= factorial(e)
            assert coeff == Fraction(1, denom)


def test_parallel_edge_factor():
    for graph, coeff in decompose(2, 2, 4):
        twos = [e for row in graph[2] for e in row if e >= 2]
        if twos:
            assert coeff.denominator % 2 == 0


def test_counit_examples():
    assert counit_check(1, 1, 0)
    assert counit_check(2, 1, 1)
    assert counit_check(3, 2, 5)


def test_counit_grid_small():
    # the full grid m,n <= 4, genus <= 2 runs in the acceptance suite
    for m in range(1, 4):
        for n in range(1, 4):
            for g in range(0, 2):
                assert counit_check(m, n, piece_weight(m, n, g))


def test_coassoc_examples():
    assert check_coassoc(1, 1, 0)
    assert check_coassoc(1, 1, 2)
    assert check_coassoc(2, 2, 2)


def test_coassoc_budget_error():
    with pytest.raises(RuntimeError):
        check_coassoc(2, 2, 2, projection_budget=3)


def test_vertex_reordering_carries_no_sign():
    # the pieces are even objects, so the vertex order is pure bookkeeping:
    # every coefficient is positive and the canonical block order (by block
    # minimum) is the only order the decomposition ever produces
    for piece in [(2, 2, 2), (3, 2, 3), (2, 2, 4)]:
        for graph, coeff in decompose(*piece):
            assert coeff > 0
            tops, bots, _e, _tw, _bw = graph
            assert [min(b) for b in tops] == sorted(min(b) for b in tops)
            assert [min(b) for b in bots] == sorted(min(b) for b in bots)


def test_coefficient_pair_matches_literal_expansion():
    for piece in [(1, 1, 2), (2, 1, 3), (2, 2, 2), (2, 2, 4), (3, 2, 3)]:
        lower, upper = {}, {}
        state = [0, None]
        _route_bottom(*piece, lower, state)
        _route_top(*piece, upper, state)
        assert set(lower) == set(upper)
        for key, value in lower.items():
            ca, cb = coefficient_pair(key)
            assert ca == value
            assert cb == upper[key]
            assert composite_sides_equal(key[1]) == (ca == cb)


def test_arrangement_count_against_enumeration():
    import random
    rng = random.Random(77)
    for _ in range(200):
        a = rng.randint(1, 3)
        n_mid = rng.randint(1, 3)
        attach = [[rng.randint(0, 2) for _ in range(n_mid)] for _ in range(a)]
        for w in range(n_mid):
            if all(attach[u][w] == 0 for u in range(a)):
                attach[rng.randrange(a)][w] = 1
        slots = [sum(attach[u][w] for w in range(n_mid)) for u in range(a)]
        ident = {}
        labels = []
        for w in range(n_mid):
            key = (tuple(attach[u][w] for u in range(a)), rng.randint(0, 1))
            ident.setdefault(key, 0)
            ident[key] += 1
            labels.append(key)
        label_ids = {key: i for i, key in enumerate(sorted(set(labels)))}
        class_of = [label_ids[key] for key in labels]
        assert arrangement_count(slots, attach, ident.values()) == \
            arrangement_count_enumerated(slots, attach, class_of)


def test_factored_matches_literal_verdicts():
    for piece in [(1, 1, 0), (1, 1, 2), (2, 1, 1), (2, 2, 2), (2, 1, 3),
                  (2, 2, 4), (3, 1, 2), (1, 3, 2)]:
        assert check_coassoc(*piece)
        assert check_coassoc_factored(*piece)


def test_coassoc_invalid_piece():
    with pytest.raises(ValueError):
        check_coassoc(2, 1, 0)
    with pytest.raises(ValueError):
        decompose(0, 1, 1)
