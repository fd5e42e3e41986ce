"""Square-zero elements against the coherence relations.

Packs a random degree -1 element into a structure family and back, and
compares the square's components with the relation family: the relation at
genus g matches the hbar^(g+1) part of the square, while the hbar^0 part
dies by graded commutativity.
"""

import random

from weylprop.correspondence import (
    family_to_weyl, relation_verdicts, square_verdicts, weyl_to_family,
)
from weylprop.verify import random_basis, random_reduced_weyl

rng = random.Random(2024)
basis = random_basis(rng)
element = random_reduced_weyl(rng, basis)
print("basis:", basis)
print("element components:", sorted(element.components))

family = weyl_to_family(element)
print("family keys:", sorted(family.entries))
print("roundtrip exact:", family_to_weyl(family) == element)

squares = square_verdicts(element, 3, 3, 3)
relations = relation_verdicts(family, 3, 3, 2)
agree = all(squares[(r, t, g + 1)] == zero
            for (r, t, g), zero in relations.items())
print("componentwise verdict agreement:", agree)
nonzero = sorted(k for k, zero in relations.items() if not zero)
print("failing relations (generic element):", nonzero[:6], "...")
