"""Randomized and exhaustive verification suites.

Each runner returns a list of (case_label, ok) pairs so both the test suite
and the command line can report per-case results.  Randomized suites take an
explicit seed and are fully reproducible.
"""

import random
from fractions import Fraction

from .graded import GradedBasis
from .weyl import (
    SymOp, WeylElement, compare_circ_k_check, pq_product, square_zero_report,
    star_weyl, weyl_to_pq,
)

DEFAULT_SEED = 20240801


def random_basis(rng, max_dim=3, degree_span=(-2, 2), require_odd=True):
    dim = rng.randint(1, max_dim)
    lo, hi = degree_span
    degrees = [rng.randint(lo, hi) for _ in range(dim)]
    if require_odd and not any(d & 1 for d in degrees):
        degrees[rng.randrange(dim)] |= 1
    names = [chr(ord("a") + t) for t in range(dim)]
    return GradedBasis(list(zip(names, degrees)))


def random_op(rng, basis, arity_in, arity_out, degree, max_entries=3):
    """A sparse operator of the given degree, or None when no entry fits."""
    pairs = [(a, b)
             for a in basis.monomials(arity_in)
             for b in basis.monomials(arity_out)
             if basis.word_degree(b) - basis.word_degree(a) == degree]
    if not pairs:
        return None
    entries = {}
    for _ in range(rng.randint(1, max_entries)):
        a, b = rng.choice(pairs)
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        coeff = Fraction(num, rng.randint(1, 3))
        entries.setdefault(a, {})
        entries[a][b] = entries[a].get(b, 0) + coeff
    return SymOp(basis, arity_in, arity_out, degree, entries)


def random_reduced_weyl(rng, basis, g_max=2, arity_max=3, degree=-1,
                        max_components=4):
    """A random finitely supported degree -1 element with no arity-zero
    components."""
    comps = {}
    for _ in range(rng.randint(1, max_components)):
        g = rng.randint(0, g_max)
        i = rng.randint(1, arity_max)
        j = rng.randint(1, arity_max)
        op = random_op(rng, basis, i, j, degree, max_entries=2)
        if op is None:
            continue
        key = (g, i, j)
        comps[key] = comps[key] + op if key in comps else op
    return WeylElement(basis, comps, degree)


def star_oracle_agrees(a, b, g_max):
    """Coordinate-free star against the normal-ordering product."""
    lhs = weyl_to_pq(star_weyl(a, b, g_max, None))
    rhs = pq_product(weyl_to_pq(a), weyl_to_pq(b)).truncate(g_max)
    return lhs == rhs


def run_star_oracle(count=200, seed=DEFAULT_SEED, g_max=2, arity_max=3):
    """Random operator pairs: star product through hbar^g_max must equal the
    q/p normal-ordering product exactly."""
    rng = random.Random(seed)
    results = []
    done = 0
    while done < count:
        basis = random_basis(rng)
        i, j = rng.randint(1, arity_max), rng.randint(1, arity_max)
        m, n = rng.randint(1, arity_max), rng.randint(1, arity_max)
        f = random_op(rng, basis, i, j, rng.randint(-2, 2))
        g = random_op(rng, basis, m, n, rng.randint(-2, 2))
        if f is None or g is None:
            continue
        a = WeylElement(basis, {(0, m, n): g}, g.degree)
        b = WeylElement(basis, {(0, i, j): f}, f.degree)
        ok = star_oracle_agrees(a, b, g_max)
        results.append(("pair %d: dims=%d arities=(%d,%d)o(%d,%d)"
                        % (done, len(basis), m, n, i, j), ok))
        done += 1
    return results


def run_compare_circ_k(arity_max=3, seed=DEFAULT_SEED):
    """Exhaustive arities up to arity_max on a two-dimensional mixed-parity
    space, random operators, every valid k plus one out-of-range k."""
    rng = random.Random(seed)
    basis = GradedBasis([("e", 0), ("o", 1)])
    results = []
    for i in range(1, arity_max + 1):
        for j in range(1, arity_max + 1):
            for m in range(1, arity_max + 1):
                for n in range(1, arity_max + 1):
                    f = random_op(rng, basis, i, j, rng.randint(-1, 1))
                    g = random_op(rng, basis, m, n, rng.randint(-1, 1))
                    if f is None or g is None:
                        continue
                    for k in range(min(m, j) + 2):
                        ok = compare_circ_k_check(f, g, k)
                        results.append(
                            ("f:S^%d->S^%d g:S^%d->S^%d k=%d" % (i, j, m, n, k), ok))
    return results


def run_theorem(count=50, seed=DEFAULT_SEED, arity_max=3, g_max=2):
    """Square-zero verdict against the properadic coherence relations,
    component by component, plus both roundtrips.  Imported lazily to keep
    module dependencies one-way."""
    from .correspondence import (
        family_to_weyl, relation_verdicts, square_verdicts, weyl_to_family,
    )
    rng = random.Random(seed)
    results = []
    done = 0
    while done < count:
        basis = random_basis(rng)
        h = random_reduced_weyl(rng, basis, g_max=g_max, arity_max=arity_max)
        if h.is_zero():
            continue
        fam = weyl_to_family(h)
        back = family_to_weyl(fam, basis=basis)
        ok = back == h
        # a relation at genus g matches the hbar^(g+1) component of the
        # square: joining along k edges adds k-1 to the genus but k to the
        # hbar weight, and the hbar^0 part vanishes by graded commutativity
        sq = square_verdicts(h, r_max=arity_max, t_max=arity_max,
                             g_max=g_max + 1)
        rel = relation_verdicts(fam, r_max=arity_max, t_max=arity_max,
                                g_max=g_max)
        for (r, t, g), rel_zero in rel.items():
            ok = ok and (sq[(r, t, g + 1)] == rel_zero)
        for r in range(1, arity_max + 1):
            for t in range(1, arity_max + 1):
                ok = ok and sq[(r, t, 0)]
        results.append(("element %d: dim=%d comps=%d"
                        % (done, len(basis), len(h.components)), ok))
        done += 1
    return results

def coassoc_pieces(m_max=4, n_max=4, genus_max=2):
    from .cofrob import piece_weight
    out = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            for g in range(0, genus_max + 1):
                out.append((m, n, piece_weight(m, n, g)))
    return out


def run_coassoc(m_max=4, n_max=4, genus_max=2, budget=None):
    """Counit and coassociativity over the grid of pieces.

    Small pieces get the literal three-level expansion (and the factored
    comparison as a cross-check); the large ones only the factored
    comparison, whose coefficient formulas the tests pin against the
    literal expansion graph by graph.
    """
    from .cofrob import (check_coassoc, check_coassoc_factored, counit_check,
                         genus_of)
    results = []
    for (m, n, chi) in coassoc_pieces(m_max, n_max, genus_max):
        g = genus_of(m, n, chi)
        results.append(("counit (%d,%d,%d)" % (m, n, chi),
                        counit_check(m, n, chi)))
        ok = check_coassoc_factored(m, n, chi)
        label = "factored"
        if m + n + 2 * g <= 8:
            ok = ok and check_coassoc(m, n, chi, projection_budget=budget)
            label = "expanded+factored"
        results.append(("coassoc (%d,%d,%d) [%s]" % (m, n, chi, label), ok))
    return results


def run_dsq(rt_max=6, g_max=2, p_max=3, cache_dir=None):
    """d squared vanishes on every generator and every enumerated graph."""
    from .cobar import d_generator, differential, enumerate_basis
    results = []
    for r in range(1, rt_max):
        for t in range(1, rt_max + 1 - r):
            for g in range(0, g_max + 1):
                if (r, t, g) == (1, 1, 0):
                    continue
                # expansions of the graphs in the image repeat heavily, so
                # one cell shares a differential cache
                cache = {}
                ok = differential(d_generator((r, t, g)), cache) == {}
                results.append(("d^2 generator (%d,%d,%d)" % (r, t, g), ok))
                for p in range(1, p_max + 1):
                    basis = enumerate_basis(r, t, g, p, cache_dir=cache_dir)
                    ok = True
                    for graph in basis:
                        image = differential({graph: Fraction(1)}, cache)
                        if differential(image, cache):
                            ok = False
                            break
                    results.append(
                        ("d^2 basis (%d,%d,%d) p=%d [%d graphs]"
                         % (r, t, g, p, len(basis)), ok))
    return results
