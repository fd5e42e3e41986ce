"""Exact computation with the Weyl algebra of a graded vector space and the
cobar complex of the cofrobenius coproperad.

Everything is carried out over the rationals with exact arithmetic, so the
structural identities the package verifies (oracle agreement for the star
product, coassociativity, d^2 = 0, the square-zero correspondence, the
homology relations) hold or fail with zero tolerance.
"""

from .graded import GradedBasis

__version__ = "0.1.0"

__all__ = ["GradedBasis", "__version__"]
