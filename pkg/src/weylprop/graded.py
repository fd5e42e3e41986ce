"""Graded linear algebra over exact rationals.

A word in a tensor power is a tuple of basis indices; a monomial in a
symmetric power is the same kind of tuple kept in canonical sorted order.
Linear combinations are plain dicts mapping such keys to nonzero Fractions,
so every identity in this package can be tested with zero tolerance.

All signs follow the Koszul rule: transposing two odd-degree entries costs
a factor of -1.  Permutations are stored in one-line notation as tuples,
``perm[i]`` being the target position of the entry currently at position
``i``; acting with ``perm`` on a word therefore places ``word[i]`` at slot
``perm[i]``, which makes ``act(compose(p, q), w) == act(p, act(q, w))`` hold
literally.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial


class GradedBasis:
    """Ordered homogeneous basis of a finite-dimensional graded vector space.

    The construction order is fixed forever; it defines the canonical sorted
    form of symmetric monomials.
    """

    __slots__ = ("names", "degrees", "_index")

    def __init__(self, elements):
        names = tuple(str(name) for name, _ in elements)
        if len(set(names)) != len(names):
            raise ValueError("basis names must be distinct")
        self.names = names
        self.degrees = tuple(int(degree) for _, degree in elements)
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, GradedBasis)
                and self.names == other.names and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        inner = ", ".join("%s:%d" % (n, d) for n, d in zip(self.names, self.degrees))
        return "GradedBasis(%s)" % inner

    def index(self, name):
        return self._index[name]

    def degree(self, i):
        return self.degrees[i]

    def parity(self, i):
        return self.degrees[i] & 1

    def is_odd(self, i):
        return self.degrees[i] & 1 == 1

    def word_degree(self, word):
        return sum(self.degrees[i] for i in word)

    def word_parity(self, word):
        return self.word_degree(word) & 1

    def words(self, k):
        """All tensor words of length k, in lexicographic order."""
        return [tuple(w) for w in product(range(len(self.names)), repeat=k)]

    def monomials(self, k):
        """All nonzero canonical monomials of size k (odd repeats excluded)."""
        out = []
        for mon in combinations_with_replacement(range(len(self.names)), k):
            if any(mon[a] == mon[a + 1] and self.is_odd(mon[a])
                   for a in range(k - 1)):
                continue
            out.append(mon)
        return out


# ---------------------------------------------------------------------------
# permutations

def identity_perm(k):
    return tuple(range(k))


def compose(p, q):
    """(p o q)[i] = p[q[i]]: first q, then p."""
    return tuple(p[q[i]] for i in range(len(q)))


def invert(p):
    inv = [0] * len(p)
    for i, t in enumerate(p):
        inv[t] = i
    return tuple(inv)


def perm_sign(p):
    n = len(p)
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] > p[j]:
                sign = -sign
    return sign


def all_perms(k):
    return [tuple(p) for p in permutations(range(k))]


def koszul_sign(basis, perm, word):
    """Sign picked up by the odd entries of ``word`` under ``perm``.

    Each pair of entries whose relative order flips contributes -1 when both
    are odd; this agrees with decomposing the permutation into adjacent
    transpositions.
    """
    if len(perm) != len(word):
        raise ValueError("permutation length %d does not match word length %d"
                         % (len(perm), len(word)))
    sign = 1
    k = len(word)
    for i in range(k):
        if not basis.is_odd(word[i]):
            continue
        for j in range(i + 1, k):
            if perm[i] > perm[j] and basis.is_odd(word[j]):
                sign = -sign
    return sign


def act(basis, perm, word):
    """Signed left action on a tensor word; returns (new_word, sign)."""
    if len(perm) != len(word):
        raise ValueError("permutation length %d does not match word length %d"
                         % (len(perm), len(word)))
    new = [0] * len(word)
    for i, entry in enumerate(word):
        new[perm[i]] = entry
    return tuple(new), koszul_sign(basis, perm, word)


def act_vector(basis, perm, vec):
    """Linear extension of ``act`` to a dict word -> coefficient."""
    out = {}
    for word, coeff in vec.items():
        new, sign = act(basis, perm, word)
        add_term(out, new, sign * coeff)
    return out


def reversal_sign(basis, word):
    """Sign of fully reversing a word; depends only on the odd count mod 4."""
    odd = sum(1 for i in word if basis.is_odd(i))
    return 1 if odd % 4 in (0, 1) else -1


def shuffles(k, l):
    """Permutations increasing on the first l and on the last k-l positions."""
    if not 0 <= l <= k:
        raise ValueError("shuffle type (%d, %d) out of range" % (k, l))
    out = []
    for targets in combinations(range(k), l):
        rest = [t for t in range(k) if t not in targets]
        out.append(tuple(targets) + tuple(rest))
    return out


def unshuffles(k, l):
    return [invert(s) for s in shuffles(k, l)]


# ---------------------------------------------------------------------------
# formal vectors: plain dicts key -> Fraction, zero coefficients never stored

def add_term(vec, key, coeff):
    cur = vec.get(key)
    if cur is None:
        if coeff:
            vec[key] = coeff
    else:
        cur = cur + coeff
        if cur:
            vec[key] = cur
        else:
            del vec[key]


def add_scaled(vec, other, coeff=1):
    for key, c in other.items():
        add_term(vec, key, c * coeff)


def scaled(vec, coeff):
    if not coeff:
        return {}
    return {key: c * coeff for key, c in vec.items()}


# ---------------------------------------------------------------------------
# between tensor and symmetric powers

def project_word(basis, word):
    """Project a word to its canonical monomial: (monomial, sign) or None.

    None means the class is zero because an odd-degree index repeats.
    """
    k = len(word)
    sign = 1
    for i in range(k):
        oi = basis.is_odd(word[i])
        for j in range(i + 1, k):
            if word[i] > word[j]:
                if oi and basis.is_odd(word[j]):
                    sign = -sign
            elif word[i] == word[j] and oi:
                return None
    return tuple(sorted(word)), sign


def project_vector(basis, vec):
    out = {}
    for word, coeff in vec.items():
        proj = project_word(basis, word)
        if proj is not None:
            add_term(out, proj[0], proj[1] * coeff)
    return out


def symmetrize(basis, mon):
    """Embed a monomial as the average of its permuted words (the section of
    project_word; composing the two in either order is the identity)."""
    k = len(mon)
    out = {}
    coeff = Fraction(1, factorial(k))
    for perm in permutations(range(k)):
        word, sign = act(basis, perm, mon)
        add_term(out, word, sign * coeff)
    return out


def unshuffle_sum(basis, word, l):
    """Sum of the signed actions of all (k, l) unshuffles on ``word``."""
    out = {}
    for perm in unshuffles(len(word), l):
        new, sign = act(basis, perm, word)
        add_term(out, new, Fraction(sign))
    return out


def shuffle_sum(basis, word, l):
    """Sum of the signed actions of all (k, l) shuffles on ``word``."""
    out = {}
    for perm in shuffles(len(word), l):
        new, sign = act(basis, perm, word)
        add_term(out, new, Fraction(sign))
    return out
