"""Cylinder detection: factor out variables a divisor does not use.

A divisor whose equation omits a variable is a product of a lower
dimensional divisor with a line, and every deformation-theoretic
quantity computed here is unchanged by that product. Splitting first
keeps the later stages small.
"""

from .poly import Polynomial


class CylinderSplit:
    """Result of dropping unused variables from a polynomial.

    ``poly`` lives in the reduced ring ``ring`` (the kept variable
    names, original order). ``kept`` and ``dropped`` are index tuples
    into the original ring. ``embed`` undoes the reduction.
    """

    __slots__ = ("original_ring", "ring", "poly", "kept", "dropped")

    def __init__(self, original_ring, ring, poly, kept, dropped):
        self.original_ring = original_ring
        self.ring = ring
        self.poly = poly
        self.kept = kept
        self.dropped = dropped

    @property
    def is_identity(self):
        return not self.dropped

    def embed(self, p):
        """Map a polynomial over the reduced ring back to the original ring."""
        if self.is_identity:
            return p
        n = len(self.original_ring)
        terms = {}
        for m, c in p.terms.items():
            e = [0] * n
            for pos, orig in enumerate(self.kept):
                e[orig] = m[pos]
            terms[tuple(e)] = c
        return Polynomial(self.original_ring, terms)


def split_cylindrical(f):
    """Drop every variable absent from f (equivalently: zero partial).

    Returns the maximal split; the identity split when every variable
    occurs. The reduced polynomial uses all of its variables.
    """
    if f.is_zero():
        raise ValueError("cannot split the zero polynomial")
    n = len(f.ring)
    used = [False] * n
    for m in f.terms:
        for i, e in enumerate(m):
            if e:
                used[i] = True
    kept = tuple(i for i in range(n) if used[i])
    dropped = tuple(i for i in range(n) if not used[i])
    if not dropped:
        return CylinderSplit(f.ring, f.ring, f, kept, dropped)
    ring = tuple(f.ring[i] for i in kept)
    pos = {orig: k for k, orig in enumerate(kept)}
    terms = {}
    for m, c in f.terms.items():
        e = [0] * len(kept)
        for i, a in enumerate(m):
            if a:
                e[pos[i]] = a
        terms[tuple(e)] = c
    return CylinderSplit(f.ring, ring, Polynomial(ring, terms), kept, dropped)
