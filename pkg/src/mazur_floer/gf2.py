"""Small dense linear algebra over F_2 with vectors packed into Python ints.

Bit ``i`` of a vector is the coefficient of basis element ``i``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def vec(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def support(v: int) -> list[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


class Span:
    """Incrementally built row-echelon basis of a subspace of F_2^n.

    Pivots are the lowest set bit, so elimination prefers low indices.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self._rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            low = v & -v
            row = self._rows.get(low)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        low = r & -r
        # keep rows fully reduced against the new pivot
        for k, row in self._rows.items():
            if row & low:
                self._rows[k] = row ^ r
        self._rows[low] = r
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self._rows)

    def basis(self) -> list[int]:
        return [self._rows[k] for k in sorted(self._rows)]


def rank(vectors: Iterable[int]) -> int:
    return len(Span(vectors))


def apply(columns: Sequence[int], v: int) -> int:
    """Image of ``v`` under the map whose ``i``-th column is ``columns[i]``."""
    out = 0
    for i in support(v):
        out ^= columns[i]
    return out


def kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the kernel of the map with the given columns."""
    # eliminate on augmented pairs (image, preimage)
    pivots: dict[int, tuple[int, int]] = {}
    ker = []
    for i, col in enumerate(columns):
        img, pre = col, 1 << i
        while img:
            low = img & -img
            if low not in pivots:
                pivots[low] = (img, pre)
                break
            pimg, ppre = pivots[low]
            img ^= pimg
            pre ^= ppre
        if not img:
            ker.append(pre)
    return ker


def homology_basis(dcols: Sequence[int]) -> list[int]:
    """Cycles whose classes form a basis of ``ker d / im d``.

    ``dcols[i]`` is ``d`` of basis element ``i``.  Cycles are reduced against
    the boundaries so the choice is deterministic (lowest index first).
    """
    bound = Span(dcols)
    reps = []
    quotient = Span(bound.basis())
    for z in kernel(dcols):
        if quotient.add(z):
            reps.append(bound.reduce(z))
    return reps
