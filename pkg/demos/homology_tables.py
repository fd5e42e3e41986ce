"""Betti tables and the four compatibility classes.

The two binary generators survive in homology; the Jacobi, co-Jacobi,
five-term and involutivity combinations all bound, which is the involutive
bialgebra structure on the homology of any representation of the complex.
"""

from weylprop.homology import (
    RELATION_NAMES, betti, betti_records, build_complex, is_boundary,
    is_cycle, records_to_csv, relation_class,
)

cells = [build_complex(r, t, g)
         for (r, t, g) in [(2, 1, 0), (1, 2, 0), (1, 1, 1), (3, 1, 0),
                           (1, 3, 0), (2, 2, 0), (2, 2, 1)]]
print(records_to_csv(betti_records(cells)))

for name in RELATION_NAMES:
    key, vec = relation_class(name)
    cell = build_complex(*key)
    print("%-12s cell %s: %d graphs, cycle %s, boundary %s"
          % (name, key, len(vec), is_cycle(vec, cell), is_boundary(vec, cell)))
