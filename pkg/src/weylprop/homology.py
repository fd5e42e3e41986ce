"""Exact chain complexes of decorated graphs and their Betti numbers.

One cell per (inputs r, outputs t, genus g): the basis in homological degree
-p is the canonical graph list with p vertices, the boundary matrix from
degree -p to degree -(p+1) expands the differential column by column.  All
linear algebra is exact over the rationals; ranks come from an integer
row-elimination with a dense Fraction elimination as an independent check.
"""

import json
from fractions import Fraction
from math import gcd

from .cobar import canonicalize, d_generator, differential, enumerate_basis
from .graded import add_term

# p <= r + t + 2g - 2 for every nonzero cell: each extra vertex costs arity
# or genus, so enumeration past this bound is provably empty
def vertex_bound(r, t, g):
    return r + t + 2 * g - 2


class TruncatedComplexError(RuntimeError):
    """A chain cell was cut off before its basis was exhausted."""


class ChainCell:
    """Bases and boundary matrices of one (r, t, g) cell.

    matrices[p] maps the degree -p basis into the degree -(p+1) basis as a
    dict column -> {row: coefficient}, indices into the stored bases.
    """

    __slots__ = ("key", "bases", "matrices", "truncated", "p_top")

    def __init__(self, key, bases, matrices, truncated, p_top):
        self.key = key
        self.bases = bases
        self.matrices = matrices
        self.truncated = truncated
        self.p_top = p_top

    def dims(self):
        return {p: len(basis) for p, basis in self.bases.items() if basis}

    def index_of(self, p, graph):
        return self.bases[p].index(graph)


def build_complex(r, t, g, p_max=None, cache_dir=None):
    """Assemble the cell; enumeration stops at the provable vertex bound or
    at p_max, whichever is smaller (stopping early marks the cell
    truncated unless the basis is already exhausted)."""
    bound = vertex_bound(r, t, g)
    limit = bound if p_max is None else min(p_max, bound)
    bases = {}
    p = 1
    while p <= limit:
        basis = enumerate_basis(r, t, g, p, cache_dir=cache_dir)
        if not basis:
            break
        bases[p] = basis
        p += 1
    truncated = p > limit and limit < bound and p_max is not None
    if truncated:
        p_top = limit
    else:
        p_top = p - 1
    matrices = {}
    for q in sorted(bases):
        if q + 1 not in bases:
            matrices[q] = {}
            continue
        index = {graph: i for i, graph in enumerate(bases[q + 1])}
        cols = {}
        for ci, graph in enumerate(bases[q]):
            image = differential({graph: Fraction(1)})
            col = {}
            for out_graph, coeff in image.items():
                ri = index.get(out_graph)
                if ri is None:
                    raise RuntimeError(
                        "differential left the enumerated basis at %r" % (graph,))
                col[ri] = coeff
            if col:
                cols[ci] = col
        matrices[q] = cols
    return ChainCell((r, t, g), bases, matrices, truncated, p_top)


# ---------------------------------------------------------------------------
# exact rank

def rank(columns, n_rows, n_cols):
    """Rank of a sparse exact matrix {col: {row: Fraction}} by fraction-free
    elimination: rows are cleared to integers, combined integrally and kept
    reduced by their content."""
    rows = {}
    for ci, col in columns.items():
        for ri, c in col.items():
            rows.setdefault(ri, {})[ci] = c
    work = []
    for ri, row in rows.items():
        denom = 1
        for c in row.values():
            denom = denom * c.denominator // gcd(denom, c.denominator)
        ints = {ci: int(c * denom) for ci, c in row.items()}
        content = 0
        for v in ints.values():
            content = gcd(content, v)
        if content:
            work.append({ci: v // content for ci, v in ints.items()})
    rk = 0
    while work:
        # shortest row as pivot keeps fill-in low; deterministic tie-break
        work.sort(key=lambda row: (len(row), min(row)))
        pivot = work.pop(0)
        rk += 1
        pc = min(pivot)
        pv = pivot[pc]
        reduced = []
        for row in work:
            rv = row.get(pc)
            if rv is None:
                reduced.append(row)
                continue
            new = {}
            for ci, v in row.items():
                new[ci] = v * pv
            for ci, v in pivot.items():
                new[ci] = new.get(ci, 0) - v * rv
            new = {ci: v for ci, v in new.items() if v}
            if new:
                content = 0
                for v in new.values():
                    content = gcd(content, v)
                reduced.append({ci: v // content for ci, v in new.items()})
        work = reduced
    return rk


def rank_dense(columns, n_rows, n_cols):
    """Independent second implementation: dense Gaussian elimination over
    Fractions with first-nonzero pivoting."""
    mat = [[Fraction(0)] * n_cols for _ in range(n_rows)]
    for ci, col in columns.items():
        for ri, c in col.items():
            mat[ri][ci] = c
    rk = 0
    row_at = 0
    for col in range(n_cols):
        pivot = None
        for ri in range(row_at, n_rows):
            if mat[ri][col]:
                pivot = ri
                break
        if pivot is None:
            continue
        mat[row_at], mat[pivot] = mat[pivot], mat[row_at]
        pv = mat[row_at][col]
        for ri in range(row_at + 1, n_rows):
            if mat[ri][col]:
                factor = mat[ri][col] / pv
                for cj in range(col, n_cols):
                    mat[ri][cj] -= factor * mat[row_at][cj]
        row_at += 1
        rk += 1
    return rk


def betti(cell):
    """Betti number per homological degree; refuses truncated cells."""
    if cell.truncated:
        raise TruncatedComplexError(
            "cell %r is truncated; Betti numbers would be partial" % (cell.key,))
    dims = {p: len(basis) for p, basis in cell.bases.items()}
    ranks = {p: rank(cell.matrices.get(p, {}), dims.get(p + 1, 0), dims[p])
             for p in dims}
    table = {}
    for p in sorted(dims):
        incoming = ranks.get(p - 1, 0)
        table[-p] = dims[p] - ranks[p] - incoming
    return table


def euler_characteristic(cell):
    chi_dims = sum((-1) ** p * len(basis) for p, basis in cell.bases.items())
    return chi_dims


def euler_from_betti(table):
    return sum((-1) ** (-deg) * b for deg, b in table.items())


# ---------------------------------------------------------------------------
# cycles and boundaries

def _vector_in_degree(x, cell):
    degrees = {len(graph[0]) for graph in x}
    if len(degrees) != 1:
        raise ValueError("vector is not degree-homogeneous: %s" % sorted(degrees))
    p = degrees.pop()
    if p not in cell.bases:
        raise ValueError("degree -%d is outside the cell" % p)
    return p


def is_cycle(x, cell):
    if not x:
        return True
    _vector_in_degree(x, cell)
    return differential(x) == {}


def is_boundary(x, cell):
    """Exact solvability of d y = x inside the cell."""
    if not x:
        return True
    p = _vector_in_degree(x, cell)
    if cell.truncated:
        raise TruncatedComplexError("cell %r is truncated" % (cell.key,))
    if p == 1 or p - 1 not in cell.bases:
        return False
    source = cell.bases[p - 1]
    target_index = {graph: i for i, graph in enumerate(cell.bases[p])}
    n_rows = len(cell.bases[p])
    n_cols = len(source)
    columns = cell.matrices.get(p - 1, {})
    rhs = [Fraction(0)] * n_rows
    for graph, coeff in x.items():
        ri = target_index.get(graph)
        if ri is None:
            raise ValueError("vector leaves the cell basis")
        rhs[ri] = coeff
    # consistency of the linear system by comparing ranks
    plain = rank(columns, n_rows, n_cols)
    augmented = {ci: dict(col) for ci, col in columns.items()}
    augmented[n_cols] = {ri: c for ri, c in enumerate(rhs) if c}
    return rank(augmented, n_rows, n_cols + 1) == plain


# ---------------------------------------------------------------------------
# the homology relations of the two binary generators

def _two_vertex_graph(upper, lower, k, upper_ins, upper_outs, r, t):
    """Canonical two-vertex composite: the upper generator takes the listed
    external inputs and outputs, k internal edges join it to the lower one."""
    in_legs = [1] * r
    for leg in upper_ins:
        in_legs[leg] = 0
    out_legs = [1] * t
    for leg in upper_outs:
        out_legs[leg] = 0
    graph = ((upper, lower), ((0, k), (0, 0)), tuple(in_legs), tuple(out_legs))
    return canonicalize(graph)


MU = (2, 1, 0)
DELTA = (1, 2, 0)


def relation_class(name):
    """The named compatibility class as a canonical graph vector, together
    with its cell key (r, t, g)."""
    vec = {}
    if name == "jacobi":
        key = (3, 1, 0)
        for pair in ((0, 1), (0, 2), (1, 2)):
            graph, sign = _two_vertex_graph(MU, MU, 1, pair, (), 3, 1)
            add_term(vec, graph, Fraction(sign))
    elif name == "cojacobi":
        key = (1, 3, 0)
        for leg in (0, 1, 2):
            graph, sign = _two_vertex_graph(DELTA, DELTA, 1, (0,), (leg,), 1, 3)
            add_term(vec, graph, Fraction(sign))
    elif name == "five_term":
        key = (2, 2, 0)
        graph, sign = _two_vertex_graph(MU, DELTA, 1, (0, 1), (), 2, 2)
        add_term(vec, graph, Fraction(sign))
        for leg_in in (0, 1):
            for leg_out in (0, 1):
                graph, sign = _two_vertex_graph(DELTA, MU, 1, (leg_in,),
                                                (leg_out,), 2, 2)
                add_term(vec, graph, Fraction(sign))
    elif name == "involutivity":
        key = (1, 1, 1)
        graph, sign = _two_vertex_graph(DELTA, MU, 2, (0,), (), 1, 1)
        add_term(vec, graph, Fraction(sign))
    else:
        raise ValueError("unknown relation class %r" % (name,))
    return key, vec


RELATION_NAMES = ("jacobi", "cojacobi", "five_term", "involutivity")


# ---------------------------------------------------------------------------
# table export

def betti_records(cells):
    """Rows (r, t, g, degree, dim_chains, betti, status) for export."""
    records = []
    for cell in cells:
        r, t, g = cell.key
        if cell.truncated:
            for p in sorted(cell.bases):
                records.append({"r": r, "t": t, "g": g, "degree": -p,
                                "dim_chains": len(cell.bases[p]),
                                "betti": None, "status": "truncated"})
            continue
        table = betti(cell)
        for p in sorted(cell.bases):
            records.append({"r": r, "t": t, "g": g, "degree": -p,
                            "dim_chains": len(cell.bases[p]),
                            "betti": table[-p], "status": "complete"})
    return records


def records_to_csv(records):
    lines = ["r,t,g,degree,dim_chains,betti"]
    for rec in records:
        betti_txt = "" if rec["betti"] is None else str(rec["betti"])
        lines.append("%d,%d,%d,%d,%d,%s" % (
            rec["r"], rec["t"], rec["g"], rec["degree"], rec["dim_chains"],
            betti_txt))
    return "\n".join(lines) + "\n"


def records_to_json(records):
    return json.dumps({"format": 1, "records": records},
                      sort_keys=True, separators=(",", ":")) + "\n"
