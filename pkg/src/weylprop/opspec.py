"""Reading and writing operators and structure families as JSON.

Operator file: {"basis": [{"name": .., "degree": ..}, ..], "degree": int,
"reduced": bool, "components": [{"g": int, "in": [names], "out": [names],
"coeff": "num/den"}, ..]}.  Each record is one matrix entry between
canonically sorted monomials; a duplicate (g, in, out) key is an error.

Family file: {"basis": [..], "entries": [{"r": .., "t": .., "g": ..,
"in": [names], "out": [names], "coeff": "num/den"}, ..]} with tensor words
instead of monomials; the assembled maps must be symmetric under leg
permutations.
"""

import json
from fractions import Fraction

from .graded import GradedBasis, act, all_perms
from .weyl import SpecError, SymOp, WeylElement
from .correspondence import StructureFamily


def _load(source):
    if isinstance(source, dict):
        return source
    with open(source) as fh:
        return json.load(fh)


def parse_basis(data):
    try:
        elements = [(rec["name"], int(rec["degree"])) for rec in data["basis"]]
    except (KeyError, TypeError) as exc:
        raise SpecError("malformed basis section: %s" % exc)
    return GradedBasis(elements)


def _parse_coeff(text):
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError("bad coefficient %r: %s" % (text, exc))


def _parse_monomial(basis, names, what):
    try:
        mon = tuple(basis.index(name) for name in names)
    except KeyError as exc:
        raise SpecError("unknown basis name %s in %s" % (exc, what))
    if list(mon) != sorted(mon):
        raise SpecError("%s monomial %r is not in canonical order" % (what, names))
    return mon


def load_operator(source):
    """Read a Weyl element from a spec file or an already-parsed dict."""
    data = _load(source)
    basis = parse_basis(data)
    degree = int(data.get("degree", 0))
    reduced = bool(data.get("reduced", False))
    seen = set()
    grouped = {}
    for rec in data.get("components", []):
        g = int(rec["g"])
        if g < 0:
            raise SpecError("negative genus %d" % g)
        in_mon = _parse_monomial(basis, rec["in"], "input")
        out_mon = _parse_monomial(basis, rec["out"], "output")
        key = (g, tuple(rec["in"]), tuple(rec["out"]))
        if key in seen:
            raise SpecError("duplicate component record %r" % (key,))
        seen.add(key)
        coeff = _parse_coeff(rec["coeff"])
        comp_key = (g, len(in_mon), len(out_mon))
        grouped.setdefault(comp_key, {}).setdefault(in_mon, {})
        row = grouped[comp_key][in_mon]
        row[out_mon] = row.get(out_mon, Fraction(0)) + coeff
    comps = {}
    for (g, i, j), entries in grouped.items():
        comps[(g, i, j)] = SymOp(basis, i, j, degree, entries)
    element = WeylElement(basis, comps, degree)
    if reduced and not element.is_reduced():
        raise SpecError("spec declares reduced but has an arity-zero component")
    return element, reduced


def dump_operator(element, reduced=None):
    basis = element.basis
    records = []
    for (g, _i, _j), op in sorted(element.components.items()):
        for in_mon in sorted(op.entries):
            for out_mon in sorted(op.entries[in_mon]):
                coeff = op.entries[in_mon][out_mon]
                records.append({
                    "g": g,
                    "in": [basis.names[x] for x in in_mon],
                    "out": [basis.names[x] for x in out_mon],
                    "coeff": "%d/%d" % (coeff.numerator, coeff.denominator),
                })
    return {
        "basis": [{"name": n, "degree": d}
                  for n, d in zip(basis.names, basis.degrees)],
        "degree": element.degree,
        "reduced": element.is_reduced() if reduced is None else reduced,
        "components": records,
    }


def load_family(source):
    """Read a structure family given by tensor-basis entries; the assembled
    maps must be invariant under pre- and post-permutation of the legs."""
    data = _load(source)
    basis = parse_basis(data)
    tables = {}
    for rec in data.get("entries", []):
        key = (int(rec["r"]), int(rec["t"]), int(rec["g"]))
        try:
            in_word = tuple(basis.index(x) for x in rec["in"])
            out_word = tuple(basis.index(x) for x in rec["out"])
        except KeyError as exc:
            raise SpecError("unknown basis name %s" % exc)
        if (len(in_word), len(out_word)) != (key[0], key[1]):
            raise SpecError("entry words do not match key %r" % (key,))
        coeff = _parse_coeff(rec["coeff"])
        row = tables.setdefault(key, {}).setdefault(in_word, {})
        row[out_word] = row.get(out_word, Fraction(0)) + coeff
    entries = {}
    for key, table in tables.items():
        entries[key] = _symmetric_table_to_op(basis, key, table)
    return StructureFamily(basis, entries)


def _symmetric_table_to_op(basis, key, table):
    """Validate leg symmetry of a tensor table and store its symmetric side."""
    r, t, g = key
    def row_of(word):
        out = {}
        for ow, c in table.get(word, {}).items():
            if c:
                out[ow] = c
        return out

    for word in basis.words(r):
        base_row = row_of(word)
        for perm in all_perms(r):
            pw, sign = act(basis, perm, word)
            permuted = {ow: sign * c for ow, c in row_of(pw).items()}
            if permuted != base_row:
                raise SpecError(
                    "family entry %r is not symmetric in its inputs" % (key,))
        for perm in all_perms(t):
            moved = {}
            for ow, c in base_row.items():
                nw, sign = act(basis, perm, ow)
                moved[nw] = moved.get(nw, Fraction(0)) + sign * c
            moved = {k: v for k, v in moved.items() if v}
            if moved != base_row:
                raise SpecError(
                    "family entry %r is not symmetric in its outputs" % (key,))
    # project the symmetric tensor map to the symmetric side
    from .graded import project_word, symmetrize, add_scaled
    entries = {}
    for mon in basis.monomials(r):
        out_row = {}
        for word, c in symmetrize(basis, mon).items():
            for ow, cw in row_of(word).items():
                proj = project_word(basis, ow)
                if proj is not None:
                    out_row[proj[0]] = out_row.get(proj[0], Fraction(0)) \
                        + c * cw * proj[1]
        out_row = {k: v for k, v in out_row.items() if v}
        if out_row:
            entries[mon] = out_row
    return SymOp(basis, r, t, -1, entries)


def dump_family(family):
    basis = family.basis
    records = []
    for (r, t, g), op in sorted(family.entries.items()):
        for word in basis.words(r):
            for out_word, coeff in sorted(op.t_row(word).items()):
                records.append({
                    "r": r, "t": t, "g": g,
                    "in": [basis.names[x] for x in word],
                    "out": [basis.names[x] for x in out_word],
                    "coeff": "%d/%d" % (coeff.numerator, coeff.denominator),
                })
    return {
        "basis": [{"name": n, "degree": d}
                  for n, d in zip(basis.names, basis.degrees)],
        "degree": -1,
        "entries": records,
    }
