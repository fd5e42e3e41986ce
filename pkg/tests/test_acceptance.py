"""Acceptance criteria, one test per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see one pass/fail line
per criterion.  Everything is exact rational arithmetic: every assertion is
a zero-tolerance equality.

Criterion 9 (the full homology reference grid with six legs up to genus
two) is implemented faithfully and fails honestly in this environment: its
five largest cells have chain groups with hundreds of thousands of basis
graphs per degree (measured level sizes are printed), and exact ranks at
that size are out of reach here.  The test computes and emits every
feasible cell first, so the reference table it produces is complete except
for those five cells.
"""

import random
import time
from fractions import Fraction
from math import comb

import pytest

from weylprop.graded import (
    GradedBasis, act, add_scaled, add_term, all_perms, project_word, scaled,
    shuffle_sum, symmetrize, unshuffle_sum,
)
from weylprop.cobar import enumerate_basis
from weylprop.homology import (
    RELATION_NAMES, betti, betti_records, build_complex, euler_characteristic,
    euler_from_betti, is_boundary, is_cycle, records_to_csv, relation_class,
)
from weylprop.verify import (
    DEFAULT_SEED, run_coassoc, run_compare_circ_k, run_dsq, run_star_oracle,
    run_theorem,
)

MIX = GradedBasis([("e", 0), ("o", 1)])


def _report(num, ok, detail):
    print("[criterion %d] %s: %s" % (num, "PASS" if ok else "FAIL", detail))
    return ok


def test_criterion_1_star_oracle():
    t0 = time.time()
    results = run_star_oracle(count=200, seed=DEFAULT_SEED, g_max=2)
    bad = [case for case, ok in results if not ok]
    ok = _report(1, not bad,
                 "coordinate-free star equals the normal-ordering product "
                 "through hbar^2 on %d random pairs (%.1fs)%s"
                 % (len(results), time.time() - t0,
                    "" if not bad else "; failing: %s" % bad[:3]))
    assert ok


def test_criterion_2_tensor_symmetric_comparison():
    t0 = time.time()
    results = run_compare_circ_k(arity_max=3, seed=DEFAULT_SEED)
    bad = [case for case, ok in results if not ok]
    ok = _report(2, not bad,
                 "lifted gluing comparison exact on exhaustive bases, "
                 "arities <= 3, every k, %d cases (%.1fs)%s"
                 % (len(results), time.time() - t0,
                    "" if not bad else "; failing: %s" % bad[:3]))
    assert ok


def test_criterion_3_symmetrization_lemmas():
    t0 = time.time()
    cases = 0
    # partial symmetrization collapses under the full projection
    for k in range(1, 5):
        for word in MIX.words(k):
            target = {}
            proj = project_word(MIX, word)
            if proj is not None:
                add_term(target, proj[0], Fraction(proj[1]))
            for l in range(k + 1):
                got = {}
                tp = project_word(MIX, word[k - l:])
                if tp is not None:
                    for tw, tc in symmetrize(MIX, tp[0]).items():
                        p = project_word(MIX, word[:k - l] + tw)
                        if p is not None:
                            add_term(got, p[0], tp[1] * tc * p[1])
                assert got == target
                cases += 1
    # both shuffle-sum diagrams commute
    def split_project(vec, l):
        out = {}
        for word, c in vec.items():
            p1 = project_word(MIX, word[:l])
            p2 = project_word(MIX, word[l:])
            if p1 is not None and p2 is not None:
                add_term(out, (p1[0], p2[0]), c * p1[1] * p2[1])
        return out

    for k in range(1, 5):
        for l in range(k + 1):
            for word in MIX.words(k):
                lhs = split_project(unshuffle_sum(MIX, word, l), l)
                rhs = {}
                proj = project_word(MIX, word)
                if proj is not None:
                    emb = symmetrize(MIX, proj[0])
                    rhs = split_project(
                        scaled(emb, Fraction(proj[1] * comb(k, l))), l)
                assert lhs == rhs
                cases += 1
            for mu in MIX.monomials(l):
                for mv in MIX.monomials(k - l):
                    pair = {}
                    for wu, cu in symmetrize(MIX, mu).items():
                        for wv, cv in symmetrize(MIX, mv).items():
                            add_term(pair, wu + wv, cu * cv)
                    lhs = {}
                    for word, c in pair.items():
                        add_scaled(lhs, shuffle_sum(MIX, word, l), c)
                    rhs = {}
                    for word, c in pair.items():
                        proj = project_word(MIX, word)
                        if proj is not None:
                            add_scaled(rhs, symmetrize(MIX, proj[0]),
                                       c * proj[1] * comb(k, l))
                    assert lhs == rhs
                    cases += 1
    assert _report(3, True,
                   "partial-symmetrization and shuffle-factor lemmas exact "
                   "for word lengths <= 4, %d cases (%.1fs)"
                   % (cases, time.time() - t0))


def test_criterion_4_coassociativity_and_counit_grid():
    t0 = time.time()
    results = run_coassoc(m_max=4, n_max=4, genus_max=2)
    bad = [case for case, ok in results if not ok]
    ok = _report(4, not bad,
                 "counit and coassociativity exact for all pieces with "
                 "m,n <= 4, genus <= 2, %d checks (%.0fs)%s"
                 % (len(results), time.time() - t0,
                    "" if not bad else "; failing: %s" % bad[:3]))
    assert ok


def test_criterion_5_differential_squares_to_zero():
    t0 = time.time()
    results = run_dsq(rt_max=6, g_max=2, p_max=3)
    bad = [case for case, ok in results if not ok]
    ok = _report(5, not bad,
                 "d^2 = 0 on every generator and basis graph with "
                 "r+t <= 6, g <= 2, p <= 3, %d checks (%.0fs)%s"
                 % (len(results), time.time() - t0,
                    "" if not bad else "; failing: %s" % bad[:3]))
    assert ok


def test_criterion_6_square_zero_equivalence():
    t0 = time.time()
    results = run_theorem(count=50, seed=DEFAULT_SEED, arity_max=3, g_max=2)
    bad = [case for case, ok in results if not ok]
    ok = _report(6, not bad,
                 "square-zero verdict matches the coherence relations "
                 "component by component, and both roundtrips are exact, "
                 "on %d random reduced elements (%.1fs)%s"
                 % (len(results), time.time() - t0,
                    "" if not bad else "; failing: %s" % bad[:3]))
    assert ok


def test_criterion_7_homology_facts():
    t0 = time.time()
    ok = True
    cell21 = build_complex(2, 1, 0)
    cell12 = build_complex(1, 2, 0)
    ok = ok and betti(cell21) == {-1: 1}
    ok = ok and betti(cell12) == {-1: 1}
    for name in RELATION_NAMES:
        key, vec = relation_class(name)
        cell = build_complex(*key)
        ok = ok and is_cycle(vec, cell) and is_boundary(vec, cell)
    cell111 = build_complex(1, 1, 1)
    ok = ok and all(v == 0 for v in betti(cell111).values())
    assert _report(7, ok,
                   "both binary generators survive, all four compatibility "
                   "classes bound, the genus-one cell is acyclic (%.1fs)"
                   % (time.time() - t0))


GRID8 = [(r, t, g)
         for r in range(1, 5) for t in range(1, 5) for g in range(3)]


def _complete_in_grid8(key):
    r, t, g = key
    return g == 0 or r + t <= 5


def test_criterion_8_euler_consistency_and_determinism(tmp_path):
    t0 = time.time()
    cells = []
    for key in GRID8:
        p_max = None if _complete_in_grid8(key) else 2
        cells.append(build_complex(*key, p_max=p_max))
    completed = [cell for cell in cells if not cell.truncated]
    ok = True
    for cell in completed:
        ok = ok and euler_characteristic(cell) == euler_from_betti(betti(cell))
    # identical tables across parallelism settings, truncated cells marked
    import os
    from weylprop.cli import main
    out1 = os.path.join(str(tmp_path), "grid1.csv")
    out2 = os.path.join(str(tmp_path), "grid2.csv")
    args = ["homology", "--grid", "--rmax", "4", "--tmax", "4",
            "--genusmax", "2", "--pmax", "2", "--allow-truncated",
            "--format", "csv"]
    assert main(args + ["--out", out1, "--jobs", "1"]) == 0
    assert main(args + ["--out", out2, "--jobs", "2"]) == 0
    with open(out1, "rb") as fh:
        bytes1 = fh.read()
    with open(out2, "rb") as fh:
        bytes2 = fh.read()
    ok = ok and bytes1 == bytes2
    assert _report(8, ok,
                   "Euler characteristic consistent on all %d completed "
                   "cells of the r,t <= 4, g <= 2 grid; tables byte-identical "
                   "across parallelism (%.0fs)"
                   % (len(completed), time.time() - t0))


GRID9 = sorted((r, t, g)
               for r in range(1, 6) for t in range(1, 6) for g in range(3)
               if r + t <= 6)

# exact ranks for these five cells need chain groups with 1e5..1e6 basis
# graphs per degree (measured: (5,1,2) levels p=4..7 hold 39319, 158043,
# 318630, 312510 graphs; (3,3,2) holds 392409 already at p=5), which is
# beyond an exact single-core budget; they are built truncated and reported
BLOCKED9 = {(3, 3, 2), (4, 2, 2), (2, 4, 2), (5, 1, 2), (1, 5, 2)}


def test_criterion_9_reference_grid(tmp_path):
    t0 = time.time()
    cells = []
    for key in GRID9:
        p_max = 2 if key in BLOCKED9 else None
        cell = build_complex(*key, p_max=p_max)
        cells.append(cell)
        status = "truncated" if cell.truncated else "complete"
        print("  cell %s: %s, dims %s (%.0fs elapsed)"
              % (key, status, cell.dims(), time.time() - t0))
    records = betti_records(cells)
    table = records_to_csv(records)
    import os
    path = os.path.join(str(tmp_path), "reference_grid.csv")
    with open(path, "w") as fh:
        fh.write(table)
    print(table)
    truncated = sorted(cell.key for cell in cells if cell.truncated)
    _report(9, not truncated,
            "homology grid r+t <= 6, g <= 2: %d of %d cells complete "
            "(%.0fs); blocked by exact-rank cost at this scale: %s"
            % (len(cells) - len(truncated), len(cells), time.time() - t0,
               truncated))
    assert not truncated, (
        "the reference grid cannot complete in this environment: cells %s "
        "have chain groups with 1e5..1e6 basis graphs per degree (measured "
        "sizes in the ledger) and exact sparse ranks at that scale exceed "
        "any single-core rational-arithmetic budget; all remaining %d cells "
        "are computed exactly and emitted above"
        % (truncated, len(cells) - len(truncated)))
