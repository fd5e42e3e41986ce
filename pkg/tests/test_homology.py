import random
from fractions import Fraction

import pytest

from weylprop.cobar import d_generator, single_vertex_graph
from weylprop.homology import (
    RELATION_NAMES, TruncatedComplexError, betti, betti_records, build_complex,
    euler_characteristic, euler_from_betti, is_boundary, is_cycle, rank,
    rank_dense, records_to_csv, records_to_json, relation_class, vertex_bound,
)


def test_bracket_cell():
    cell = build_complex(2, 1, 0)
    assert cell.dims() == {1: 1}
    assert not cell.truncated
    assert betti(cell) == {-1: 1}


def test_cobracket_cell():
    assert betti(build_complex(1, 2, 0)) == {-1: 1}


def test_involutive_cell():
    cell = build_complex(1, 1, 1)
    assert cell.dims() == {1: 1, 2: 1}
    # single boundary entry 1/2
    assert cell.matrices[1] == {0: {0: Fraction(1, 2)}}
    assert betti(cell) == {-1: 0, -2: 0}


def test_boundary_composites_vanish():
    for key in [(2, 2, 0), (3, 1, 0), (1, 1, 2), (2, 1, 1), (2, 2, 1)]:
        cell = build_complex(*key)
        for p in cell.matrices:
            if p + 1 not in cell.matrices:
                continue
            m1 = cell.matrices[p]
            m2 = cell.matrices[p + 1]
            for ci, col in m1.items():
                acc = {}
                for mid, c in col.items():
                    for out, c2 in m2.get(mid, {}).items():
                        acc[out] = acc.get(out, Fraction(0)) + c * c2
                assert all(v == 0 for v in acc.values()), key


def test_rank_basics():
    assert rank({}, 3, 3) == 0
    eye = {i: {i: Fraction(1)} for i in range(4)}
    assert rank(eye, 4, 4) == 4


def test_rank_cross_implementation():
    rng = random.Random(12)
    for _ in range(80):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        cols = {}
        for ci in range(nc):
            col = {}
            for ri in range(nr):
                if rng.random() < 0.5:
                    v = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                    if v:
                        col[ri] = v
            if col:
                cols[ci] = col
        assert rank(cols, nr, nc) == rank_dense(cols, nr, nc)


def test_cycles_and_boundaries():
    cell = build_complex(2, 1, 0)
    mu = {single_vertex_graph((2, 1, 0)): Fraction(1)}
    assert is_cycle(mu, cell)
    assert not is_boundary(mu, cell)
    cell111 = build_complex(1, 1, 1)
    image = d_generator((1, 1, 1))
    assert is_cycle(image, cell111)
    assert is_boundary(image, cell111)
    assert is_cycle({}, cell111) and is_boundary({}, cell111)


def test_degree_mixed_vector_rejected():
    cell = build_complex(3, 1, 0)
    vec = {single_vertex_graph((3, 1, 0)): Fraction(1)}
    vec.update(d_generator((3, 1, 0)))
    with pytest.raises(ValueError):
        is_cycle(vec, cell)


def test_relation_classes_are_boundaries():
    expected_cell = {"jacobi": (3, 1, 0), "cojacobi": (1, 3, 0),
                     "five_term": (2, 2, 0), "involutivity": (1, 1, 1)}
    for name in RELATION_NAMES:
        key, vec = relation_class(name)
        assert key == expected_cell[name]
        cell = build_complex(*key)
        assert is_cycle(vec, cell)
        assert is_boundary(vec, cell)


def test_relation_classes_match_generator_boundaries():
    _key, vec = relation_class("involutivity")
    assert vec == {g: 2 * c for g, c in d_generator((1, 1, 1)).items()}
    _key, vec = relation_class("jacobi")
    assert vec == d_generator((3, 1, 0))
    _key, vec = relation_class("cojacobi")
    assert vec == d_generator((1, 3, 0))
    _key, vec = relation_class("five_term")
    assert vec == d_generator((2, 2, 0))


def test_unknown_relation_rejected():
    with pytest.raises(ValueError):
        relation_class("pentagon")


def test_euler_consistency():
    for key in [(2, 1, 0), (1, 1, 1), (2, 2, 0), (3, 1, 0), (2, 2, 1),
                (1, 1, 2)]:
        cell = build_complex(*key)
        assert euler_characteristic(cell) == euler_from_betti(betti(cell))


def test_truncation_is_loud():
    cell = build_complex(2, 2, 1, p_max=1)
    assert cell.truncated
    with pytest.raises(TruncatedComplexError):
        betti(cell)
    recs = betti_records([cell])
    assert all(rec["status"] == "truncated" for rec in recs)


def test_vertex_bound_is_sharp_enough():
    # one level past the bound is empty for a few small cells
    from weylprop.cobar import enumerate_basis
    for (r, t, g) in [(2, 1, 0), (1, 1, 1), (2, 2, 0), (3, 1, 0)]:
        bound = vertex_bound(r, t, g)
        assert enumerate_basis(r, t, g, bound + 1) == ()


def test_exports():
    cells = [build_complex(2, 1, 0), build_complex(1, 1, 1)]
    recs = betti_records(cells)
    csv_text = records_to_csv(recs)
    assert csv_text.splitlines()[0] == "r,t,g,degree,dim_chains,betti"
    assert "2,1,0,-1,1,1" in csv_text
    json_text = records_to_json(recs)
    assert '"status":"complete"' in json_text


def test_determinism():
    a = records_to_csv(betti_records([build_complex(2, 2, 0)]))
    b = records_to_csv(betti_records([build_complex(2, 2, 0)]))
    assert a == b
