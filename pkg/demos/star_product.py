"""Star products on a small graded space, next to their coordinate form.

Builds two operators on a two-dimensional space with one odd direction,
multiplies them with the exact star product, and prints the hbar-graded
components together with the normal-ordered polynomial the q/p picture
assigns to the same product.
"""

from fractions import Fraction

from weylprop.graded import GradedBasis
from weylprop.weyl import (
    SymOp, WeylElement, identity_op, pq_product, star, star_weyl, weyl_to_pq,
)

basis = GradedBasis([("u", 0), ("v", 1)])

# a bracket-like map S^2 -> S^1 and a cobracket-like map S^1 -> S^2
bracket = SymOp(basis, 2, 1, -1, {(0, 1): {(0,): Fraction(1)}})
cobracket = SymOp(basis, 1, 2, -1, {(1,): {(0, 0): Fraction(1, 2)}})

print("bracket in coordinates:   ", weyl_to_pq(
    WeylElement(basis, {(0, 2, 1): bracket}, -1)))
print("cobracket in coordinates: ", weyl_to_pq(
    WeylElement(basis, {(0, 1, 2): cobracket}, -1)))

product = star(bracket, cobracket, g_max=2)
print("\nbracket * cobracket, components (genus, in, out):")
for (g, i, j), op in sorted(product.components.items()):
    for mon, row in sorted(op.entries.items()):
        for out, c in sorted(row.items()):
            name = lambda m: "*".join(basis.names[x] for x in m) or "1"
            print("  hbar^%d  S^%d->S^%d  %s -> %s %s" % (g, i, j, name(mon), c, name(out)))

print("\nsame product, normal ordered:", weyl_to_pq(product))

a = WeylElement(basis, {(0, 2, 1): bracket}, -1)
b = WeylElement(basis, {(0, 1, 2): cobracket}, -1)
lhs = weyl_to_pq(star_weyl(a, b, 2, None))
rhs = pq_product(weyl_to_pq(a), weyl_to_pq(b)).truncate(2)
print("oracle agreement:", lhs == rhs)

one = identity_op(GradedBasis([("q", 0)]), 1)
print("\n(qp) * (qp) =", weyl_to_pq(star(one, one, 1)))
