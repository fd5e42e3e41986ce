"""The two directions of the square-zero correspondence.

A structure family packages degree -1 symmetric tensor maps, one per
(inputs r, outputs t, genus g); dividing each by t! gives the components of
an element of the Weyl algebra, and multiplying by t! recovers them.  The
family satisfies the coherence relations (one per triple, summing the
shuffled two-vertex composites with coefficient 1/k!) exactly when the Weyl
element squares to zero, with the genus of a relation one below the hbar
weight of the matching star component because joining two vertices along k
edges adds k - 1 to the graph genus but k to the hbar weight.
"""

from fractions import Fraction
from itertools import combinations
from math import factorial

from .graded import act, add_term
from .weyl import SpecError, SymOp, UnreducedError, WeylElement, star_weyl


class StructureFamily:
    """Map (r, t, g) -> symmetric-side operator of degree -1.

    Entries are stored as operators between symmetric powers; the honest
    tensor maps are their lifts, symmetric under pre- and post-composition
    with all leg permutations by construction.
    """

    __slots__ = ("basis", "entries")

    def __init__(self, basis, entries):
        self.basis = basis
        self.entries = {}
        for (r, t, g), op in entries.items():
            if op.is_zero():
                continue
            if r < 1 or t < 1 or g < 0:
                raise SpecError("invalid family key (%d, %d, %d)" % (r, t, g))
            if (op.arity_in, op.arity_out) != (r, t):
                raise SpecError("entry (%d, %d, %d) has mismatched arities"
                                % (r, t, g))
            if op.degree != -1:
                raise SpecError("family entries must have degree -1")
            self.entries[(r, t, g)] = op

    def get(self, key):
        return self.entries.get(key)

    def tensor_row(self, key, word):
        """Row of the tensor map phi_{r,t,g} at a word."""
        op = self.entries.get(key)
        if op is None:
            return {}
        return op.t_row(word)

    def __eq__(self, other):
        return (isinstance(other, StructureFamily)
                and self.basis == other.basis
                and self.entries == other.entries)

    def __repr__(self):
        return "StructureFamily(%s)" % sorted(self.entries)


def family_to_weyl(family, basis=None):
    """Package a family as a reduced Weyl element, one component per entry
    scaled by 1/t!."""
    basis = family.basis if basis is None else basis
    comps = {}
    for (r, t, g), op in family.entries.items():
        comps[(g, r, t)] = op.scale(Fraction(1, factorial(t)))
    return WeylElement(basis, comps, -1)


def weyl_to_family(h):
    """Unpack a reduced degree -1 Weyl element, scaling each component by
    the factorial of its output arity."""
    if not h.is_reduced():
        raise UnreducedError("element has an arity-zero component")
    entries = {}
    for (g, r, t), op in h.components.items():
        entries[(r, t, g)] = op.scale(factorial(t))
    return StructureFamily(h.basis, entries)


# ---------------------------------------------------------------------------
# the coherence relations

def _extraction_perm(total, chosen):
    """Permutation moving the chosen positions to the tail, both blocks in
    their original relative order."""
    chosen = sorted(chosen)
    rest = [x for x in range(total) if x not in chosen]
    perm = [0] * total
    for new, old in enumerate(rest):
        perm[old] = new
    offset = len(rest)
    for new, old in enumerate(chosen):
        perm[old] = offset + new
    return tuple(perm)


def _placement_perm(total, chosen):
    """Permutation sending the leading block to the complement of the chosen
    positions and the tail block onto them, preserving relative orders."""
    chosen = sorted(chosen)
    rest = [x for x in range(total) if x not in chosen]
    perm = [0] * total
    for idx, target in enumerate(rest):
        perm[idx] = target
    for idx, target in enumerate(chosen):
        perm[len(rest) + idx] = target
    return tuple(perm)


def relation_sum(family, r, t, g):
    """The full shuffled relation at (r, t, g) as a map on the tensor basis.

    Sums over the edge count k, both vertex labels, and the leg splittings;
    the upper operator takes the chosen input legs, feeds its first k
    outputs to the lower one, and the placement permutation scatters both
    output blocks onto the chosen output legs, all with Koszul signs.
    """
    basis = family.basis
    result = {}
    words = basis.words(r)
    for k in range(1, g + 2):
        coeff_k = Fraction(1, factorial(k))
        for i in range(1, r + 1):
            for j in range(k, t + k):
                m, n = r - i + k, t - j + k
                if n < 1:
                    continue
                for g1 in range(0, g + 2 - k):
                    g2 = g + 1 - k - g1
                    upper = family.get((i, j, g1))
                    lower = family.get((m, n, g2))
                    if upper is None or lower is None:
                        continue
                    for in_slots in combinations(range(r), i):
                        perm_in = _extraction_perm(r, in_slots)
                        for out_slots in combinations(range(t), j - k):
                            perm_out = _placement_perm(t, out_slots)
                            _add_composite(basis, result, words, coeff_k,
                                           upper, lower, k, m,
                                           perm_in, perm_out)
    return {w: row for w, row in result.items() if row}


def _add_composite(basis, result, words, coeff, upper, lower, k, m,
                   perm_in, perm_out):
    for w in words:
        w1, s1 = act(basis, perm_in, w)
        w_low, w_up = w1[:m - k], w1[m - k:]
        sign = s1 if not basis.word_parity(w_low) else -s1
        row = result.setdefault(w, {})
        for cword, c_up in upper.t_row(w_up).items():
            c1, c2 = cword[:k], cword[k:]
            for dword, c_low in lower.t_row(w_low + c1).items():
                w2, s3 = act(basis, perm_out, dword + c2)
                add_term(row, w2, coeff * sign * s3 * c_up * c_low)


def relation_verdicts(family, r_max, t_max, g_max):
    """Zero-or-not of every relation within the bounds."""
    out = {}
    for r in range(1, r_max + 1):
        for t in range(1, t_max + 1):
            for g in range(0, g_max + 1):
                out[(r, t, g)] = not relation_sum(family, r, t, g)
    return out


def square_verdicts(h, r_max, t_max, g_max):
    """Zero-or-not of every component of H * H within the bounds."""
    square = star_weyl(h, h, g_max, None)
    out = {}
    for r in range(1, r_max + 1):
        for t in range(1, t_max + 1):
            for g in range(0, g_max + 1):
                comp = square.component(g, r, t)
                out[(r, t, g)] = comp is None or comp.is_zero()
    return out


class RelationReport:
    """check_relations outcome: either all zero or the first witness."""

    __slots__ = ("is_zero", "bounds", "witness")

    def __init__(self, is_zero, bounds, witness=None):
        self.is_zero = is_zero
        self.bounds = bounds
        # witness: ((r, t, g), word, {word: coeff})
        self.witness = witness

    def __bool__(self):
        return self.is_zero


def check_relations(family, r_max, t_max, g_max):
    """Evaluate every relation within the bounds; report the first nonzero
    one in (r, t, g) order with an input word witnessing it."""
    for r in range(1, r_max + 1):
        for t in range(1, t_max + 1):
            for g in range(0, g_max + 1):
                value = relation_sum(family, r, t, g)
                if value:
                    word = min(value)
                    return RelationReport(False, (r_max, t_max, g_max),
                                          ((r, t, g), word, value[word]))
    return RelationReport(True, (r_max, t_max, g_max))
