"""The graph complex on the reduced cofrobenius generators.

Enumerates small bases, applies the differential, and shows the square of
the differential vanishing; the two binary generators are closed, and the
genus-one generator bounds the loop joining them.
"""

from fractions import Fraction

from weylprop.cobar import (
    d_generator, differential, enumerate_basis, single_vertex_graph,
)

print("d of the bracket generator:   ", d_generator((2, 1, 0)))
print("d of the cobracket generator: ", d_generator((1, 2, 0)))

print("\nd of the genus-one generator:")
for graph, coeff in d_generator((1, 1, 1)).items():
    print("  %s  *  %s" % (coeff, (graph,)))

print("\nd of the three-input generator (the three planted trees):")
for graph, coeff in sorted(d_generator((3, 1, 0)).items()):
    print("  %s  *  %s" % (coeff, (graph,)))

for key in [(2, 1, 0, 2), (3, 1, 0, 2), (2, 2, 0, 2), (1, 1, 2, 2)]:
    print("\nbasis%s has %d graphs" % (key, len(enumerate_basis(*key))))

print("\nd^2 on every generator with up to five legs and genus two:")
ok = True
for r in range(1, 5):
    for t in range(1, 6 - r):
        for g in range(0, 3):
            if (r, t, g) == (1, 1, 0):
                continue
            ok = ok and differential(d_generator((r, t, g))) == {}
print("  all zero:", ok)
