"""The free properad on the reduced cofrobenius generators, as a chain complex
of decorated graphs.

A basis element is a connected directed acyclic graph whose vertices carry
generator labels (inputs r >= 1, outputs t >= 1, genus g >= 0, never the
counit label (1,1,0)), with labelled external input and output legs.  Stored
form:

    (labels, emat, in_legs, out_legs)

labels[v] = (r_v, t_v, g_v) in vertex order, emat[u][v] the number of edges
from u's outputs into v's inputs, in_legs[leg] / out_legs[leg] the vertex
carrying each external leg (legs 0-based).  Flags at a vertex carry no order
(the symmetric actions on the generators are trivial), but the vertices do:
every generator sits in homological degree -1, so reordering the vertex list
by a permutation multiplies the element by the sign of the permutation, and
a graph with an odd automorphism is zero.

The total genus of a graph is the sum of the vertex genera plus its first
Betti number; the differential splits one vertex into two joined by k edges,
carrying 1/k! and preserving arity and genus while adding a vertex.
"""

import json
import os
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .graded import add_scaled, add_term

CACHE_FORMAT = 1
COUNIT = (1, 1, 0)


def valid_label(label):
    r, t, g = label
    return r >= 1 and t >= 1 and g >= 0 and label != COUNIT


class GraphError(ValueError):
    """Structurally invalid decorated graph."""


def graph_genus(graph):
    labels, emat, _in, _out = graph
    p = len(labels)
    edges = sum(sum(row) for row in emat)
    return sum(g for (_r, _t, g) in labels) + edges - p + 1


def validate_graph(graph):
    labels, emat, in_legs, out_legs = graph
    p = len(labels)
    if p == 0:
        raise GraphError("empty graph")
    for label in labels:
        if not valid_label(label):
            raise GraphError("invalid vertex label %r" % (label,))
    if len(emat) != p or any(len(row) != p for row in emat):
        raise GraphError("edge matrix shape mismatch")
    for v in range(p):
        indeg = sum(emat[u][v] for u in range(p)) + sum(1 for x in in_legs if x == v)
        outdeg = sum(emat[v][w] for w in range(p)) + sum(1 for x in out_legs if x == v)
        if indeg != labels[v][0] or outdeg != labels[v][1]:
            raise GraphError("vertex %d arity mismatch" % v)
    # acyclicity by depth-first search
    state = [0] * p

    def visit(v):
        state[v] = 1
        for w in range(p):
            if emat[v][w]:
                if state[w] == 1:
                    raise GraphError("directed cycle")
                if state[w] == 0:
                    visit(w)
        state[v] = 2

    for v in range(p):
        if state[v] == 0:
            visit(v)
    # connectivity on the underlying undirected graph
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in range(p):
            if (emat[v][w] or emat[w][v]) and w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != p:
        raise GraphError("graph is not connected")
    return True


def _relabel(graph, perm):
    """Apply a vertex relabelling, perm[old] = new position."""
    labels, emat, in_legs, out_legs = graph
    p = len(labels)
    new_labels = [None] * p
    for v in range(p):
        new_labels[perm[v]] = labels[v]
    new_emat = [[0] * p for _ in range(p)]
    for u in range(p):
        row = emat[u]
        for v in range(p):
            if row[v]:
                new_emat[perm[u]][perm[v]] = row[v]
    return (tuple(new_labels), tuple(tuple(r) for r in new_emat),
            tuple(perm[v] for v in in_legs), tuple(perm[v] for v in out_legs))


def _perm_parity(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def canonicalize(graph, check=True):
    """Canonical representative of the isomorphism class with the vertex
    reordering sign, or None when an odd automorphism kills the class.

    Vertices are ordered by an iterated neighbourhood refinement; positions
    the refinement cannot separate are resolved by minimizing over their
    permutations, which also exposes the automorphism signs.
    """
    if check:
        validate_graph(graph)
    labels, emat, in_legs, out_legs = graph
    p = len(labels)
    # longest-path depth orders the vertices along the flow direction
    depth = [0] * p
    changed = True
    while changed:
        changed = False
        for u in range(p):
            for v in range(p):
                if emat[u][v] and depth[v] < depth[u] + 1:
                    depth[v] = depth[u] + 1
                    changed = True
    ins = [tuple(sorted(x for x, v in enumerate(in_legs) if v == u)) for u in range(p)]
    outs = [tuple(sorted(x for x, v in enumerate(out_legs) if v == u)) for u in range(p)]
    base = [(depth[v], labels[v], ins[v], outs[v]) for v in range(p)]
    ranks = {c: i for i, c in enumerate(sorted(set(base)))}
    colors = [ranks[c] for c in base]
    for _ in range(p):
        refined = [
            (colors[v],
             tuple(sorted((colors[u], emat[u][v]) for u in range(p) if emat[u][v])),
             tuple(sorted((colors[w], emat[v][w]) for w in range(p) if emat[v][w])))
            for v in range(p)]
        ranks = {c: i for i, c in enumerate(sorted(set(refined)))}
        new_colors = [ranks[c] for c in refined]
        if new_colors == colors:
            break
        colors = new_colors
    order = sorted(range(p), key=lambda v: (colors[v], v))
    groups = []
    at = 0
    while at < len(order):
        to = at
        while to < len(order) and colors[order[to]] == colors[order[at]]:
            to += 1
        groups.append(order[at:to])
        at = to
    best = None
    best_key = None
    best_signs = set()
    for arrangement in _group_arrangements(groups):
        perm = [0] * p
        for new_pos, old in enumerate(arrangement):
            perm[old] = new_pos
        candidate = _relabel(graph, perm)
        key = _struct_key(candidate)
        if best is None or key < best_key:
            best = candidate
            best_key = key
            best_signs = {_perm_parity(perm)}
        elif key == best_key:
            best_signs.add(_perm_parity(perm))
    if len(best_signs) == 2:
        return None
    return best, best_signs.pop()


def _struct_key(graph):
    """Comparison key preferring earlier edges, so canonical vertex order
    follows the flow direction when labels tie."""
    labels, emat, in_legs, out_legs = graph
    neg = tuple(tuple(-x for x in row) for row in emat)
    return (labels, neg, in_legs, out_legs)


def _group_arrangements(groups):
    """All orderings refining the colour groups (permutations within each)."""
    if not groups:
        yield []
        return
    head, rest = groups[0], groups[1:]
    for tail in _group_arrangements(rest):
        for perm in permutations(head):
            yield list(perm) + tail


def single_vertex_graph(label):
    r, t, _g = label
    return ((label,), ((0,),), (0,) * r, (0,) * t)


# ---------------------------------------------------------------------------
# the differential

@lru_cache(maxsize=None)
def _split_choices(label):
    """The vertex splittings the differential sums over, for one generator.

    Each choice is (coefficient, upper label, lower label, k, upper input
    slots, upper output slots): the upper vertex takes the chosen input
    slots and output slots of the original vertex, feeds k new edges into
    the lower vertex, and the lower vertex keeps the rest; both labels are
    valid generators (splittings with a counit factor are dropped).
    """
    from itertools import combinations
    r, t, g = label
    out = []
    for k in range(1, g + 2):
        for i in range(1, r + 1):
            for j in range(k, t + k):
                m, n = r - i + k, t - j + k
                if n < 1:
                    continue
                for g1 in range(0, g + 2 - k):
                    g2 = g + 1 - k - g1
                    upper = (i, j, g1)
                    lower = (m, n, g2)
                    if upper == COUNIT or lower == COUNIT:
                        continue
                    coeff = Fraction(1, factorial(k))
                    for in_slots in combinations(range(r), i):
                        for out_slots in combinations(range(t), j - k):
                            out.append((coeff, upper, lower, k,
                                        in_slots, out_slots))
    return tuple(out)


def _splice(graph, a, choice):
    """Replace vertex a by the two-vertex splitting; the upper vertex takes
    position a and the lower vertex position a+1 (flow order)."""
    coeff, upper, lower, k, in_slots, out_slots = choice
    labels, emat, in_legs, out_legs = graph
    p = len(labels)

    def shift(v):
        return v if v < a else v + 1

    upper_pos, lower_pos = a, a + 1
    new_labels = [None] * (p + 1)
    for v in range(p):
        if v != a:
            new_labels[shift(v)] = labels[v]
    new_labels[lower_pos] = lower
    new_labels[upper_pos] = upper
    new_emat = [[0] * (p + 1) for _ in range(p + 1)]
    for u in range(p):
        if u == a:
            continue
        for v in range(p):
            if v != a and emat[u][v]:
                new_emat[shift(u)][shift(v)] = emat[u][v]
    new_emat[upper_pos][lower_pos] = k
    # walk the original in-connections in a fixed order: legs by label, then
    # edges by source vertex
    in_conns = [("leg", x) for x, v in enumerate(in_legs) if v == a]
    for u in range(p):
        if u != a:
            in_conns.extend([("v", u)] * emat[u][a])
    out_conns = [("leg", x) for x, v in enumerate(out_legs) if v == a]
    for w in range(p):
        if w != a:
            out_conns.extend([("v", w)] * emat[a][w])
    new_in = list(in_legs)
    new_out = list(out_legs)
    for x, v in enumerate(in_legs):
        if v != a:
            new_in[x] = shift(v)
    for x, v in enumerate(out_legs):
        if v != a:
            new_out[x] = shift(v)
    in_set = set(in_slots)
    for slot, conn in enumerate(in_conns):
        target = upper_pos if slot in in_set else lower_pos
        if conn[0] == "leg":
            new_in[conn[1]] = target
        else:
            new_emat[shift(conn[1])][target] += 1
    out_set = set(out_slots)
    for slot, conn in enumerate(out_conns):
        source = upper_pos if slot in out_set else lower_pos
        if conn[0] == "leg":
            new_out[conn[1]] = source
        else:
            new_emat[source][shift(conn[1])] += 1
    return (tuple(new_labels), tuple(tuple(r) for r in new_emat),
            tuple(new_in), tuple(new_out))


def differential_graph(graph, cache=None):
    """Differential of a single canonical graph; ``cache`` (a dict) lets
    repeated applications share the per-graph expansions."""
    if cache is not None:
        hit = cache.get(graph)
        if hit is not None:
            return hit
    out = {}
    labels = graph[0]
    for a, label in enumerate(labels):
        sign = -1 if a % 2 else 1
        for choice in _split_choices(label):
            spliced = _splice(graph, a, choice)
            res = canonicalize(spliced, check=False)
            if res is not None:
                add_term(out, res[0], choice[0] * sign * res[1])
    if cache is not None:
        cache[graph] = out
    return out


def differential(vec, cache=None):
    """Extend the vertex splitting as a derivation; all vertices are odd, so
    splitting the vertex in position a carries the sign (-1)^a."""
    out = {}
    for graph, coeff in vec.items():
        add_scaled(out, differential_graph(graph, cache), coeff)
    return out


def d_generator(label):
    """Differential of a single generator."""
    if not valid_label(label):
        raise GraphError("invalid generator label %r" % (label,))
    return differential({single_vertex_graph(label): Fraction(1)})


# ---------------------------------------------------------------------------
# basis enumeration

def _label_tuples(p, rsum, tsum, gsum):
    """Ordered tuples of p valid generator labels with the given sums."""
    out = []

    def rec(pos, r_left, t_left, g_left, acc):
        if pos == p:
            if r_left == 0 and t_left == 0 and g_left == 0:
                out.append(tuple(acc))
            return
        slots_after = p - pos - 1
        for lr in range(1, r_left - slots_after + 1):
            for lt in range(1, t_left - slots_after + 1):
                for lg in range(0, g_left + 1):
                    if (lr, lt, lg) == COUNIT:
                        continue
                    acc.append((lr, lt, lg))
                    rec(pos + 1, r_left - lr, t_left - lt, g_left - lg, acc)
                    acc.pop()

    rec(0, rsum, tsum, gsum, [])
    return out


def _dag_matrices(labels, e_total):
    """Strictly upper triangular edge matrices with the given total, row
    sums within the out-arities and column sums within the in-arities."""
    p = len(labels)
    out_cap = [t for (_r, t, _g) in labels]
    in_cap = [r for (r, _t, _g) in labels]
    col_used = [0] * p
    mat = [[0] * p for _ in range(p)]
    results = []
    suffix_out = [0] * (p + 1)
    for u in range(p - 1, -1, -1):
        suffix_out[u] = suffix_out[u + 1] + out_cap[u]

    def fill_row(u, remaining):
        if u == p:
            if remaining == 0:
                results.append(tuple(tuple(row) for row in mat))
            return
        if remaining > suffix_out[u]:
            return

        def place(v, emitted):
            if v == p:
                fill_row(u + 1, remaining - emitted)
                return
            cap = min(out_cap[u] - emitted, in_cap[v] - col_used[v],
                      remaining - emitted)
            for x in range(cap + 1):
                mat[u][v] = x
                col_used[v] += x
                place(v + 1, emitted + x)
                col_used[v] -= x
            mat[u][v] = 0

        place(u + 1, 0)

    fill_row(0, e_total)
    return results


def _connected_undirected(emat, p):
    if p == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in range(p):
            if (emat[v][w] or emat[w][v]) and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == p


def _leg_assignments(count, slacks):
    out = []
    remaining = list(slacks)

    def rec(i, acc):
        if i == count:
            out.append(tuple(acc))
            return
        for v in range(len(remaining)):
            if remaining[v]:
                remaining[v] -= 1
                acc.append(v)
                rec(i + 1, acc)
                acc.pop()
                remaining[v] += 1

    rec(0, [])
    return out


_BASIS_CACHE = {}


def enumerate_basis(r, t, g, p, cache_dir=None):
    """All canonical nonzero classes with p vertices, total arity (r, t) and
    total genus g, in sorted order."""
    if r < 1 or t < 1 or g < 0 or p < 1:
        raise ValueError("invalid basis key (%d, %d, %d, %d)" % (r, t, g, p))
    key = (r, t, g, p)
    hit = _BASIS_CACHE.get(key)
    if hit is not None:
        if cache_dir is not None and not os.path.exists(_cache_path(cache_dir, key)):
            save_basis_cache(cache_dir, key, hit)
        return hit
    if cache_dir is not None:
        disk = load_basis_cache(cache_dir, key)
        if disk is not None:
            _BASIS_CACHE[key] = disk
            return disk
    found = set()
    for e_total in range(max(p - 1, 0), g + p):
        b1 = e_total - p + 1
        gsum = g - b1
        if gsum < 0:
            continue
        for labels in _label_tuples(p, r + e_total, t + e_total, gsum):
            in_cap = [lr for (lr, _t2, _g2) in labels]
            out_cap = [lt for (_r2, lt, _g2) in labels]
            for emat in _dag_matrices(labels, e_total):
                if not _connected_undirected(emat, p):
                    continue
                in_slack = [in_cap[v] - sum(emat[u][v] for u in range(p))
                            for v in range(p)]
                out_slack = [out_cap[v] - sum(emat[v][w] for w in range(p))
                             for v in range(p)]
                if any(x < 0 for x in in_slack) or any(x < 0 for x in out_slack):
                    continue
                for in_legs in _leg_assignments(r, in_slack):
                    for out_legs in _leg_assignments(t, out_slack):
                        res = canonicalize((labels, emat, in_legs, out_legs),
                                           check=False)
                        if res is not None:
                            found.add(res[0])
    basis = tuple(sorted(found))
    _BASIS_CACHE[key] = basis
    if cache_dir is not None:
        save_basis_cache(cache_dir, key, basis)
    return basis


def enumerate_basis_naive(r, t, g, p):
    """Independent enumeration oracle: generate every edge matrix (both
    triangles, explicit acyclicity test) and deduplicate by pairwise
    isomorphism search over all vertex permutations, discarding classes
    with an odd automorphism."""
    raw = []
    for e_total in range(max(p - 1, 0), g + p):
        b1 = e_total - p + 1
        gsum = g - b1
        if gsum < 0:
            continue
        for labels in _label_tuples(p, r + e_total, t + e_total, gsum):
            for emat in _all_matrices(labels, e_total):
                in_slack = [labels[v][0] - sum(emat[u][v] for u in range(p))
                            for v in range(p)]
                out_slack = [labels[v][1] - sum(emat[v][w] for w in range(p))
                             for v in range(p)]
                if any(x < 0 for x in in_slack + out_slack):
                    continue
                for in_legs in _leg_assignments(r, in_slack):
                    for out_legs in _leg_assignments(t, out_slack):
                        graph = (labels, emat, in_legs, out_legs)
                        try:
                            validate_graph(graph)
                        except GraphError:
                            continue
                        raw.append(graph)
    classes = []
    for graph in raw:
        placed = False
        for cls in classes:
            if _isomorphic(cls[0], graph):
                placed = True
                break
        if not placed:
            classes.append([graph])
    count = 0
    for cls in classes:
        signs = _automorphism_signs(cls[0])
        if -1 not in signs:
            count += 1
    return count


def _all_matrices(labels, e_total):
    p = len(labels)
    cells = [(u, v) for u in range(p) for v in range(p) if u != v]
    results = []
    mat = [[0] * p for _ in range(p)]

    def rec(i, left):
        if i == len(cells):
            if left == 0:
                results.append(tuple(tuple(row) for row in mat))
            return
        u, v = cells[i]
        for x in range(left + 1):
            mat[u][v] = x
            rec(i + 1, left - x)
        mat[u][v] = 0

    rec(0, e_total)
    return results


def _isomorphic(g1, g2):
    p = len(g1[0])
    if len(g2[0]) != p:
        return False
    for perm in permutations(range(p)):
        if _relabel(g1, perm) == g2:
            return True
    return False


def _automorphism_signs(graph):
    p = len(graph[0])
    signs = set()
    for perm in permutations(range(p)):
        if _relabel(graph, perm) == graph:
            signs.add(_perm_parity(perm))
    return signs


# ---------------------------------------------------------------------------
# disk cache

def _cache_path(cache_dir, key):
    return os.path.join(cache_dir, "basis-r%d-t%d-g%d-p%d.json" % key)


def save_basis_cache(cache_dir, key, basis):
    os.makedirs(cache_dir, exist_ok=True)
    records = []
    for labels, emat, in_legs, out_legs in basis:
        p = len(labels)
        edges = [[u, v, emat[u][v]] for u in range(p) for v in range(p)
                 if emat[u][v]]
        records.append({"labels": [list(l) for l in labels], "edges": edges,
                        "in_legs": list(in_legs), "out_legs": list(out_legs)})
    payload = json.dumps({"format": CACHE_FORMAT, "key": list(key),
                          "graphs": records},
                         sort_keys=True, separators=(",", ":"))
    path = _cache_path(cache_dir, key)
    tmp = path + ".tmp.%d" % os.getpid()
    with open(tmp, "w") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def load_basis_cache(cache_dir, key):
    path = _cache_path(cache_dir, key)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    if data.get("format") != CACHE_FORMAT or tuple(data.get("key", ())) != key:
        return None
    basis = []
    for rec in data["graphs"]:
        labels = tuple(tuple(l) for l in rec["labels"])
        p = len(labels)
        emat = [[0] * p for _ in range(p)]
        for u, v, mult in rec["edges"]:
            emat[u][v] = mult
        basis.append((labels, tuple(tuple(row) for row in emat),
                      tuple(rec["in_legs"]), tuple(rec["out_legs"])))
    return tuple(basis)
