"""Operators between symmetric powers and the star product.

Operators are stored on the symmetric side as sparse matrices over canonical
monomials (`SymOp`).  The partial composition ``g o_k f`` glues the first k
outputs of f onto the last k inputs of g after lifting both operators to the
tensor side, with the binomial prefactor that makes the gluing compatible
with the symmetrized picture:

    g o_k f = binom(m+i-k, i) binom(j, k) s((iota g s) o_k (iota f s)) iota

The star product is the hbar-graded sum of the partial compositions; its
independent oracle is normal ordering in the q/p coordinate picture, where q
is multiplication, p the dual derivation, and commuting p past its own q
produces a contraction weighted by one power of hbar.
"""

from fractions import Fraction
from math import comb, factorial

from .graded import (
    act, add_scaled, add_term, project_word, shuffles, symmetrize, unshuffles,
)


class UnreducedError(ValueError):
    """A Weyl element has a component with input or output arity zero."""


class SpecError(ValueError):
    """Malformed operator data."""


class SymOp:
    """Degree-homogeneous linear map S^m V -> S^n V with exact entries.

    entries: {in_monomial: {out_monomial: Fraction}}, zero rows and zero
    coefficients never stored.  Instances are treated as immutable.
    """

    __slots__ = ("basis", "arity_in", "arity_out", "degree", "entries", "_lift")

    def __init__(self, basis, arity_in, arity_out, degree, entries, check=True):
        self.basis = basis
        self.arity_in = arity_in
        self.arity_out = arity_out
        self.degree = degree
        cleaned = {}
        for mon, row in entries.items():
            row = {out: c for out, c in row.items() if c}
            if row:
                cleaned[mon] = row
        self.entries = cleaned
        self._lift = {}
        if check:
            self._validate()

    def _validate(self):
        basis = self.basis
        for mon, row in self.entries.items():
            if len(mon) != self.arity_in:
                raise SpecError("input monomial %r has size != %d" % (mon, self.arity_in))
            if project_word(basis, mon) != (mon, 1):
                raise SpecError("input monomial %r is not canonical" % (mon,))
            for out in row:
                if len(out) != self.arity_out:
                    raise SpecError("output monomial %r has size != %d" % (out, self.arity_out))
                if project_word(basis, out) != (out, 1):
                    raise SpecError("output monomial %r is not canonical" % (out,))
                if basis.word_degree(out) - basis.word_degree(mon) != self.degree:
                    raise SpecError("entry %r -> %r violates degree %d"
                                    % (mon, out, self.degree))

    def is_zero(self):
        return not self.entries

    def apply(self, mon):
        return self.entries.get(mon, {})

    def t_row(self, word):
        """Row of the tensor lift iota . self . s at a tensor word."""
        row = self._lift.get(word)
        if row is None:
            row = {}
            proj = project_word(self.basis, word)
            if proj is not None:
                mon, sign = proj
                for out_mon, c in self.entries.get(mon, {}).items():
                    add_scaled(row, symmetrize(self.basis, out_mon), sign * c)
            self._lift[word] = row
        return row

    def __eq__(self, other):
        return (isinstance(other, SymOp)
                and self.basis == other.basis
                and self.arity_in == other.arity_in
                and self.arity_out == other.arity_out
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.arity_in, self.arity_out,
                     tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.entries.items()))))

    def __add__(self, other):
        if (self.arity_in, self.arity_out) != (other.arity_in, other.arity_out):
            raise SpecError("arity mismatch in operator sum")
        entries = {mon: dict(row) for mon, row in self.entries.items()}
        for mon, row in other.entries.items():
            dst = entries.setdefault(mon, {})
            for out, c in row.items():
                add_term(dst, out, c)
        return SymOp(self.basis, self.arity_in, self.arity_out, self.degree,
                     entries, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return SymOp(self.basis, self.arity_in, self.arity_out, self.degree,
                         {}, check=False)
        entries = {mon: {out: v * c for out, v in row.items()}
                   for mon, row in self.entries.items()}
        return SymOp(self.basis, self.arity_in, self.arity_out, self.degree,
                     entries, check=False)

    def __repr__(self):
        return "SymOp(%d->%d, deg %d, %d entries)" % (
            self.arity_in, self.arity_out, self.degree,
            sum(len(r) for r in self.entries.values()))


def zero_op(basis, arity_in, arity_out, degree=0):
    return SymOp(basis, arity_in, arity_out, degree, {}, check=False)


def identity_op(basis, k):
    entries = {mon: {mon: Fraction(1)} for mon in basis.monomials(k)}
    return SymOp(basis, k, k, 0, entries, check=False)


def op_from_entries(basis, degree, records):
    """Assemble SymOps (one per arity pair) from (in_mon, out_mon, coeff) records."""
    grouped = {}
    for in_mon, out_mon, coeff in records:
        key = (len(in_mon), len(out_mon))
        grouped.setdefault(key, {}).setdefault(tuple(in_mon), {})
        add_term(grouped[key][tuple(in_mon)], tuple(out_mon), Fraction(coeff))
    return {key: SymOp(basis, key[0], key[1], degree, entries)
            for key, entries in grouped.items()}


# ---------------------------------------------------------------------------
# partial compositions

def tensor_circ_row(basis, m, g_row, i, j, f_row, f_degree, k, word):
    """Row at ``word`` of the tensor-side gluing of row functions.

    The gluing feeds the last i letters to f, then the first k letters of
    f's output together with the leading m-k letters to g; it is zero when
    k exceeds either m or j.
    """
    if k > m or k > j:
        return {}
    a, b = word[:m - k], word[m - k:]
    sign_a = -1 if (f_degree & 1) and basis.word_parity(a) else 1
    out = {}
    for c_word, c_coeff in f_row(b).items():
        c1, c2 = c_word[:k], c_word[k:]
        for d_word, d_coeff in g_row(a + c1).items():
            add_term(out, d_word + c2, sign_a * c_coeff * d_coeff)
    return out


def sym_circ_k_literal(g, f, k):
    """Reference implementation of g o_k f: the defining formula with full
    symmetrization sums.  Exponentially slow; kept as a cross-check."""
    basis = g.basis
    m, n = g.arity_in, g.arity_out
    i, j = f.arity_in, f.arity_out
    degree = g.degree + f.degree
    if k > m or k > j:
        return zero_op(basis, m + i - k, n + j - k, degree)
    big_n = m + i - k
    scale = Fraction(comb(big_n, i) * comb(j, k))
    entries = {}
    for v in basis.monomials(big_n):
        row = {}
        for w, cw in symmetrize(basis, v).items():
            mid = tensor_circ_row(basis, m, g.t_row, i, j, f.t_row, f.degree, k, w)
            for out_word, c in mid.items():
                proj = project_word(basis, out_word)
                if proj is not None:
                    add_term(row, proj[0], scale * cw * c * proj[1])
        if row:
            entries[v] = row
    return SymOp(basis, big_n, n + j - k, degree, entries, check=False)


def sym_circ_k(g, f, k):
    """g o_k f on the symmetric side.

    Same map as ``sym_circ_k_literal``: the full symmetrization sums collapse
    against the block invariance of the lifted operators, leaving one
    unshuffle sum on the input and one on f's output, and the binomial
    prefactors cancel exactly.
    """
    basis = g.basis
    m, n = g.arity_in, g.arity_out
    i, j = f.arity_in, f.arity_out
    degree = g.degree + f.degree
    if k > m or k > j:
        return zero_op(basis, m + i - k, n + j - k, degree)
    big_n = m + i - k
    unsh_in = unshuffles(big_n, m - k)
    unsh_out = unshuffles(j, k)
    f_odd = f.degree & 1
    entries = {}
    for v in basis.monomials(big_n):
        row = {}
        for rho in unsh_in:
            u, s_rho = act(basis, rho, v)
            a, b = u[:m - k], u[m - k:]
            pb = project_word(basis, b)
            if pb is None:
                continue
            frow = f.entries.get(pb[0])
            if not frow:
                continue
            sign1 = s_rho * pb[1]
            if f_odd and basis.word_parity(a):
                sign1 = -sign1
            for gamma, cf in frow.items():
                for rho2 in unsh_out:
                    cw, s2 = act(basis, rho2, gamma)
                    c1, c2 = cw[:k], cw[k:]
                    pa = project_word(basis, a + c1)
                    if pa is None:
                        continue
                    grow = g.entries.get(pa[0])
                    if not grow:
                        continue
                    sign2 = sign1 * s2 * pa[1] * cf
                    for delta, cg in grow.items():
                        po = project_word(basis, delta + c2)
                        if po is not None:
                            add_term(row, po[0], sign2 * cg * po[1])
        if row:
            entries[v] = row
    return SymOp(basis, big_n, n + j - k, degree, entries, check=False)


# ---------------------------------------------------------------------------
# Weyl elements and the star product

class WeylElement:
    """Finitely supported element of the Weyl algebra.

    components: {(genus, arity_in, arity_out): SymOp}.  hbar is a grading
    index, never a symbolic variable; truncation bounds are supplied to the
    operations that need them.
    """

    __slots__ = ("basis", "components", "degree")

    def __init__(self, basis, components, degree):
        self.basis = basis
        self.degree = degree
        self.components = {key: op for key, op in components.items()
                           if not op.is_zero()}
        for (g, i, j), op in self.components.items():
            if g < 0:
                raise SpecError("negative genus %d" % g)
            if (op.arity_in, op.arity_out) != (i, j):
                raise SpecError("component key %r does not match operator arities" % ((g, i, j),))

    def component(self, g, i, j):
        return self.components.get((g, i, j))

    def is_reduced(self):
        return all(i > 0 and j > 0 for (_, i, j) in self.components)

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        return (isinstance(other, WeylElement)
                and self.basis == other.basis
                and self.components == other.components)

    def __repr__(self):
        return "WeylElement(deg %d, components %s)" % (
            self.degree, sorted(self.components))


def star(g, f, g_max):
    """Star product of two single-arity operators, truncated above g_max."""
    comps = {}
    for k in range(g_max + 1):
        op = sym_circ_k(g, f, k)
        if not op.is_zero():
            comps[(k, op.arity_in, op.arity_out)] = op
    return WeylElement(g.basis, comps, g.degree + f.degree)


def star_weyl(a, b, g_max, arity_max=None):
    """Star product of Weyl elements; hbar weights of the components and of
    the gluings add, everything above the bounds is dropped."""
    if a.basis != b.basis:
        raise SpecError("star of operators over different bases")
    comps = {}
    for (g1, m, n), op_a in sorted(a.components.items()):
        for (g2, i, j), op_b in sorted(b.components.items()):
            for k in range(min(m, j) + 1):
                genus = g1 + g2 + k
                if genus > g_max:
                    break
                ni, nj = m + i - k, n + j - k
                if arity_max is not None and (ni > arity_max or nj > arity_max):
                    continue
                op = sym_circ_k(op_a, op_b, k)
                if op.is_zero():
                    continue
                key = (genus, ni, nj)
                comps[key] = comps[key] + op if key in comps else op
    comps = {key: op for key, op in comps.items() if not op.is_zero()}
    return WeylElement(a.basis, comps, a.degree + b.degree)


class SquareZeroReport:
    """Outcome of checking H * H = 0 within truncation bounds."""

    __slots__ = ("is_zero", "g_max", "arity_max", "witness")

    def __init__(self, is_zero, g_max, arity_max, witness=None):
        self.is_zero = is_zero
        self.g_max = g_max
        self.arity_max = arity_max
        # witness: ((genus, i, j), in_monomial, {out_monomial: coeff})
        self.witness = witness

    def __bool__(self):
        return self.is_zero

    def describe(self, basis):
        if self.is_zero:
            return "zero up to (g_max=%d, arity_max=%s)" % (self.g_max, self.arity_max)
        (g, i, j), mon, row = self.witness
        name = lambda m: "1" if not m else "*".join(basis.names[x] for x in m)
        out = ", ".join("%s -> %s" % (c, name(o)) for o, c in sorted(row.items()))
        return ("nonzero at hbar^%d, (i,j)=(%d,%d): input %s gives %s"
                % (g, i, j, name(mon), out))


def square_zero_report(h, g_max, arity_max):
    """Compute H * H within the truncation and report the first nonzero
    component in (arity_in, arity_out, genus) scan order."""
    for (g, i, j) in h.components:
        if i == 0 or j == 0:
            raise UnreducedError(
                "component (g=%d, i=%d, j=%d) has arity zero" % (g, i, j))
    square = star_weyl(h, h, g_max, arity_max)
    for key in sorted(square.components, key=lambda t: (t[1], t[2], t[0])):
        op = square.components[key]
        mon = min(op.entries)
        return SquareZeroReport(False, g_max, arity_max,
                                witness=(key, mon, dict(op.entries[mon])))
    return SquareZeroReport(True, g_max, arity_max)


# ---------------------------------------------------------------------------
# the q/p coordinate picture

class PQExpression:
    """Normal-ordered polynomial in the q and p variables with hbar powers.

    terms: {(q_indices, p_indices, genus): Fraction} with both index tuples
    canonically sorted; a repeated odd index kills the term.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis, terms):
        self.basis = basis
        self.terms = {key: c for key, c in terms.items() if c}

    @classmethod
    def build(cls, basis, raw_terms):
        """Normalize raw (qs, ps, genus, coeff) data."""
        terms = {}
        for qs, ps, genus, coeff in raw_terms:
            pq = project_word(basis, tuple(qs))
            if pq is None:
                continue
            pp = project_word(basis, tuple(ps))
            if pp is None:
                continue
            add_term(terms, (pq[0], pp[0], genus), Fraction(coeff) * pq[1] * pp[1])
        return cls(basis, terms)

    def truncate(self, g_max):
        return PQExpression(self.basis,
                            {key: c for key, c in self.terms.items() if key[2] <= g_max})

    def scale(self, c):
        c = Fraction(c)
        return PQExpression(self.basis, {k: v * c for k, v in self.terms.items()})

    def __add__(self, other):
        terms = dict(self.terms)
        for key, c in other.terms.items():
            add_term(terms, key, c)
        return PQExpression(self.basis, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, PQExpression)
                and self.basis == other.basis and self.terms == other.terms)

    def __repr__(self):
        return "PQExpression(%d terms)" % len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.basis.names
        parts = []
        for (qs, ps, genus) in sorted(self.terms,
                                      key=lambda t: (t[2], len(t[0]), t[0], len(t[1]), t[1])):
            c = self.terms[(qs, ps, genus)]
            factors = []
            if genus:
                factors.append("h" if genus == 1 else "h^%d" % genus)
            factors += ["q_%s" % names[x] for x in qs]
            factors += ["p_%s" % names[x] for x in ps]
            body = " ".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(body)
            elif c == -1 and factors:
                parts.append("-" + body)
            else:
                parts.append("%s %s" % (c, body) if factors else str(c))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def pq_product(x, y):
    """Concatenate and rewrite to normal order.

    Each p of the left factor is pushed right through the q block of the
    right factor, the leftmost-innermost p first; passing q_l with p^l also
    branches into a contraction carrying one power of hbar.
    """
    basis = x.basis
    out = {}
    for (qa, pa, ha), ca in x.terms.items():
        for (qb, pb, hb), cb in y.terms.items():
            # state: (remaining middle q word, surviving ps, extra hbar, sign)
            states = [(qb, (), 0, 1)]
            for p_idx in reversed(pa):
                p_odd = basis.is_odd(p_idx)
                new_states = []
                for qmid, col, h, sgn in states:
                    run = sgn
                    for pos, q_idx in enumerate(qmid):
                        if q_idx == p_idx:
                            new_states.append(
                                (qmid[:pos] + qmid[pos + 1:], col, h + 1, run))
                        if p_odd and basis.is_odd(q_idx):
                            run = -run
                    # p passes the whole q block; it lands left of the ps
                    # that were pushed through before it
                    new_states.append((qmid, (p_idx,) + col, h, run))
                states = new_states
            for qmid, col, h, sgn in states:
                raw_q = qa + qmid
                raw_p = col + pb
                nq = project_word(basis, raw_q)
                if nq is None:
                    continue
                np_ = project_word(basis, raw_p)
                if np_ is None:
                    continue
                add_term(out, (nq[0], np_[0], ha + hb + h),
                         ca * cb * sgn * nq[1] * np_[1])
    return PQExpression(basis, out)

def _derivation(basis, p_idx, vec):
    """Apply the graded derivation dual to q_{p_idx} to a monomial vector."""
    out = {}
    p_odd = basis.is_odd(p_idx)
    for mon, c in vec.items():
        run = c
        for pos, idx in enumerate(mon):
            if idx == p_idx:
                add_term(out, mon[:pos] + mon[pos + 1:], run)
            if p_odd and basis.is_odd(idx):
                run = -run
    return out


def pq_term_scalar(basis, ps, mon):
    """Value on ``mon`` of the functional given by the p word ``ps``.

    The word acts as a composition, rightmost letter first, so the
    coordinate coefficients come out with the standard reversed-order signs.
    """
    vec = {mon: Fraction(1)}
    for p_idx in reversed(ps):
        vec = _derivation(basis, p_idx, vec)
        if not vec:
            return Fraction(0)
    return vec.get((), Fraction(0))


def op_to_pq(f, genus=0):
    """Write a single-arity operator in normal-ordered coordinates.

    On inputs of its own arity the p word of each normal-ordered term is a
    functional that vanishes off the matching monomial, so the coefficient
    extraction is a diagonal division.
    """
    terms = {}
    for in_mon, row in f.entries.items():
        kappa = pq_term_scalar(f.basis, in_mon, in_mon)
        for out_mon, c in row.items():
            add_term(terms, (out_mon, in_mon, genus), c / kappa)
    return PQExpression(f.basis, terms)


def weyl_to_pq(h):
    terms = {}
    for (g, _i, _j), op in h.components.items():
        for key, c in op_to_pq(op, g).terms.items():
            add_term(terms, key, c)
    return PQExpression(h.basis, terms)


def pq_to_weyl(expr, degree=None):
    """Back from coordinates: each normal-ordered term becomes the operator
    component at its minimal arity (p count in, q count out)."""
    basis = expr.basis
    comps = {}
    degrees = set()
    for (qs, ps, genus), c in expr.terms.items():
        kappa = pq_term_scalar(basis, ps, ps)
        key = (genus, len(ps), len(qs))
        d = basis.word_degree(qs) - basis.word_degree(ps)
        degrees.add(d)
        entry = {ps: {qs: c * kappa}}
        op = SymOp(basis, len(ps), len(qs), d, entry, check=False)
        comps[key] = comps[key] + op if key in comps else op
    if degree is None:
        if len(degrees) > 1:
            raise SpecError("terms of mixed operator degree: %s" % sorted(degrees))
        degree = degrees.pop() if degrees else 0
    return WeylElement(basis, comps, degree)


# ---------------------------------------------------------------------------
# tensor-side comparison of the symmetric partial composition

def compare_circ_k_check(f, g, k):
    """Check, on the full tensor basis, that the symmetric gluing matches the
    shuffle-summed tensor gluing of the lifted operators:

        (j+n-k)! k! / (n! j!) iota (g o_k f) s
            = sum_{unshuffles, shuffles} tau ((iota g s) o_k (iota f s)) sigma

    with f: S^i -> S^j, g: S^m -> S^n.
    """
    basis = f.basis
    i, j = f.arity_in, f.arity_out
    m, n = g.arity_in, g.arity_out
    n_in, n_out = i + m - k, j + n - k
    if n_in < 0 or n_out < 0:
        return True
    gf = sym_circ_k(g, f, k)
    scale = Fraction(factorial(n_out) * factorial(k),
                     factorial(n) * factorial(j))
    unsh = unshuffles(n_in, max(m - k, 0)) if k <= m else []
    shuf = shuffles(n_out, n) if k <= j else []
    for word in basis.words(n_in):
        lhs = {}
        proj = project_word(basis, word)
        if proj is not None:
            for out_mon, c in gf.entries.get(proj[0], {}).items():
                add_scaled(lhs, symmetrize(basis, out_mon), scale * proj[1] * c)
        rhs = {}
        for sigma in unsh:
            w1, s1 = act(basis, sigma, word)
            mid = tensor_circ_row(basis, m, g.t_row, i, j, f.t_row, f.degree, k, w1)
            for mw, mc in mid.items():
                for tau in shuf:
                    w2, s2 = act(basis, tau, mw)
                    add_term(rhs, w2, s1 * s2 * mc)
        if lhs != rhs:
            return False
    return True
