import random
from fractions import Fraction

import pytest

from weylprop.graded import GradedBasis, act, all_perms
from weylprop.weyl import (
    SpecError, SymOp, UnreducedError, WeylElement, square_zero_report,
)
from weylprop.correspondence import (
    StructureFamily, check_relations, family_to_weyl, relation_sum,
    relation_verdicts, square_verdicts, weyl_to_family,
)
from weylprop.verify import random_basis, random_reduced_weyl, run_theorem

TWO_STEP = GradedBasis([("a", 0), ("b", 1), ("c", 2)])


def _differential_element(square_zero=True):
    if square_zero:
        basis = GradedBasis([("x", 0), ("y", 1)])
        d = SymOp(basis, 1, 1, -1, {(1,): {(0,): Fraction(1)}})
    else:
        basis = TWO_STEP
        d = SymOp(basis, 1, 1, -1, {(2,): {(1,): Fraction(1)},
                                    (1,): {(0,): Fraction(1)}})
    return WeylElement(basis, {(0, 1, 1): d}, -1)


def test_roundtrip_from_element():
    rng = random.Random(101)
    done = 0
    while done < 25:
        basis = random_basis(rng)
        h = random_reduced_weyl(rng, basis)
        if h.is_zero():
            continue
        fam = weyl_to_family(h)
        assert family_to_weyl(fam) == h
        assert weyl_to_family(family_to_weyl(fam)) == fam
        done += 1


def test_differential_slot():
    h = _differential_element()
    fam = weyl_to_family(h)
    assert set(fam.entries) == {(1, 1, 0)}
    # output arity one, so the packaging scale is trivial here
    assert fam.entries[(1, 1, 0)] == h.component(0, 1, 1)


def test_family_rejects_bad_entries():
    basis = GradedBasis([("x", 0), ("y", 1)])
    wrong_degree = SymOp(basis, 1, 1, 0, {(0,): {(0,): Fraction(1)}})
    with pytest.raises(SpecError):
        StructureFamily(basis, {(1, 1, 0): wrong_degree})
    d = SymOp(basis, 1, 1, -1, {(1,): {(0,): Fraction(1)}})
    with pytest.raises(SpecError):
        StructureFamily(basis, {(2, 1, 0): d})


def test_weyl_to_family_rejects_unreduced():
    basis = GradedBasis([("x", 1)])
    cup = SymOp(basis, 0, 1, -1, {})
    cup = SymOp(basis, 0, 1, 1, {(): {(0,): Fraction(1)}})
    h = WeylElement(basis, {(0, 0, 1): cup}, 1)
    with pytest.raises(UnreducedError):
        weyl_to_family(h)


def test_tensor_rows_are_symmetric():
    rng = random.Random(55)
    done = 0
    while done < 15:
        basis = random_basis(rng, max_dim=2)
        h = random_reduced_weyl(rng, basis, arity_max=2)
        if h.is_zero():
            continue
        fam = weyl_to_family(h)
        for key in fam.entries:
            r, t, _g = key
            for word in basis.words(r):
                base = fam.tensor_row(key, word)
                for perm in all_perms(r):
                    pw, sign = act(basis, perm, word)
                    moved = {ow: sign * c
                             for ow, c in fam.tensor_row(key, pw).items()}
                    assert moved == base
                for perm in all_perms(t):
                    moved = {}
                    for ow, c in base.items():
                        nw, sign = act(basis, perm, ow)
                        moved[nw] = moved.get(nw, 0) + sign * c
                    assert {k: v for k, v in moved.items() if v} == base
        done += 1


def test_relations_for_square_zero_differential():
    h = _differential_element(square_zero=True)
    fam = weyl_to_family(h)
    report = check_relations(fam, 2, 2, 1)
    assert report.is_zero
    assert square_zero_report(h, 3, 5).is_zero


def test_relation_1_1_0_is_d_squared():
    h = _differential_element(square_zero=False)
    fam = weyl_to_family(h)
    value = relation_sum(fam, 1, 1, 0)
    # d(c) = b, d(b) = a: the only relation failure is d^2(c) = a
    assert value == {(2,): {(0,): Fraction(1)}}
    report = check_relations(fam, 1, 1, 1)
    assert not report.is_zero
    assert report.witness[0] == (1, 1, 0)


def test_square_zero_matches_relations_with_witness():
    # a generic non-square-zero element with a bracket and a cobracket
    basis = GradedBasis([("u", 0), ("v", 1)])
    mu = SymOp(basis, 2, 1, -1, {(0, 1): {(0,): Fraction(1)}})
    delta = SymOp(basis, 1, 2, -1, {(1,): {(0, 0): Fraction(1)}})
    h = WeylElement(basis, {(0, 2, 1): mu, (1, 1, 2): delta}, -1)
    sq = square_verdicts(h, 3, 3, 3)
    fam = weyl_to_family(h)
    rel = relation_verdicts(fam, 3, 3, 2)
    for (r, t, g), zero in rel.items():
        assert zero == sq[(r, t, g + 1)], (r, t, g)
    # hbar^0 components vanish by graded commutativity of the degree -1 cup
    assert all(sq[(r, t, 0)] for r in range(1, 4) for t in range(1, 4))


def test_theorem_equivalence_randomized():
    results = run_theorem(count=15, seed=31)
    assert all(ok for _case, ok in results)
