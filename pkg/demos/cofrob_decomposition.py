"""Decomposing cofrobenius pieces over connected two-level graphs.

Each summand carries the product of inverse factorials of its parallel edge
counts; the counit composites recover the piece itself and the two ways of
decomposing twice agree, which is checked here by full expansion.
"""

from weylprop.cofrob import (
    check_coassoc, check_coassoc_factored, counit_check, decompose, genus_of,
)

for piece in [(1, 1, 0), (1, 1, 2), (2, 1, 1)]:
    print("piece (m, n, weight) = %s, genus %d:" % (piece, genus_of(*piece)))
    for graph, coeff in decompose(*piece):
        tops, bots, emat, tw, bw = graph
        print("  coefficient %-4s tops %s %s bottoms %s %s edges %s"
              % (coeff, tops, tw, bots, bw, emat))

for piece in [(1, 1, 2), (2, 2, 2), (3, 2, 3)]:
    print("piece %s: counit laws %s, coassociative (expanded) %s,"
          " coassociative (factored) %s"
          % (piece, counit_check(*piece), check_coassoc(*piece),
             check_coassoc_factored(*piece)))
