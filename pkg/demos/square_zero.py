"""Square-zero elements and their failure modes.

A differential alone squares to zero; the identity operator does not, and
the report pins down the first nonzero component of the square with a
witness monomial.
"""

from fractions import Fraction

from weylprop.graded import GradedBasis
from weylprop.weyl import SymOp, WeylElement, identity_op, square_zero_report

basis = GradedBasis([("x", 0), ("y", 1)])
d = SymOp(basis, 1, 1, -1, {(1,): {(0,): Fraction(1)}})
h = WeylElement(basis, {(0, 1, 1): d}, -1)
report = square_zero_report(h, g_max=3, arity_max=5)
print("differential d(y) = x:", report.describe(basis))

even = GradedBasis([("q", 0)])
counter = WeylElement(even, {(0, 1, 1): identity_op(even, 1)}, 0)
report = square_zero_report(counter, g_max=2, arity_max=4)
print("identity operator qp: ", report.describe(even))
