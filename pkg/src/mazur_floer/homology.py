"""Alexander-graded complexes over F_2[U] and their homology.

Matrix entries are F_2[U] polynomials packed into ints (bit ``p`` is the
coefficient of ``U^p``).  In an Alexander-graded complex every nonzero entry
is a single monomial, which is what makes minimal-power cancellation exact.
"""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping


class ReductionError(ValueError):
    pass


def poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def monomial_power(poly: int) -> int:
    """Exponent of a monomial entry; raises on zero or a genuine polynomial."""
    if poly <= 0 or poly & (poly - 1):
        raise ReductionError(f"entry {bin(poly)} is not a U-monomial")
    return poly.bit_length() - 1


@dataclass
class GradedUComplex:
    """Free F_2[U]-complex with optional Alexander gradings.

    ``arrows[(s, t)]`` is the polynomial coefficient of ``t`` in ``d(s)``.
    Grading convention: an arrow ``s -> U^p t`` has ``A(t) = A(s) + p``.
    """

    gens: list[Hashable]
    arrows: dict[tuple[Hashable, Hashable], int] = field(default_factory=dict)
    grading: dict[Hashable, int | None] = field(default_factory=dict)

    def add(self, s, t, power: int) -> None:
        key = (s, t)
        val = self.arrows.get(key, 0) ^ (1 << power)
        if val:
            self.arrows[key] = val
        else:
            del self.arrows[key]

    def monomial_arrows(self) -> Iterable[tuple[Hashable, Hashable, int]]:
        for (s, t), poly in self.arrows.items():
            p = 0
            while poly:
                if poly & 1:
                    yield s, t, p
                poly >>= 1
                p += 1

    def out_map(self) -> dict[Hashable, dict[Hashable, int]]:
        rows: dict[Hashable, dict[Hashable, int]] = defaultdict(dict)
        for (s, t), poly in self.arrows.items():
            rows[s][t] = poly
        return rows

    def d_squared(self) -> dict[tuple[Hashable, Hashable], int]:
        """Nonzero entries of d∘d; empty means d^2 = 0."""
        rows = self.out_map()
        out: dict[tuple[Hashable, Hashable], int] = {}
        for s, row in rows.items():
            acc: dict[Hashable, int] = defaultdict(int)
            for t, c1 in row.items():
                for k, c2 in rows.get(t, {}).items():
                    acc[k] ^= poly_mul(c1, c2)
            for k, v in acc.items():
                if v:
                    out[(s, k)] = v
        return out

    def grading_violations(self) -> list[tuple[Hashable, Hashable, int]]:
        bad = []
        for s, t, p in self.monomial_arrows():
            a, b = self.grading.get(s), self.grading.get(t)
            if a is not None and b is not None and b != a + p:
                bad.append((s, t, p))
        return bad

    def unassigned(self) -> list[Hashable]:
        return [g for g in self.gens if self.grading.get(g) is None]


@dataclass(frozen=True)
class Decomposition:
    free: tuple[int, ...]
    torsion: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": [{"A": a, "p": p} for a, p in self.torsion]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Decomposition":
        return cls(tuple(data["free"]), tuple((t["A"], t["p"]) for t in data["torsion"]))


def _relative_gradings(c: GradedUComplex) -> dict[Hashable, int]:
    """Gradings used during reduction: assigned ones, else propagated.

    Components without any assigned generator get an arbitrary anchor; their
    gradings are only meaningful relatively.
    """
    nbrs: dict[Hashable, list[tuple[Hashable, int]]] = defaultdict(list)
    for s, t, p in c.monomial_arrows():
        nbrs[s].append((t, p))
        nbrs[t].append((s, -p))
    grading: dict[Hashable, int] = {g: a for g, a in c.grading.items() if a is not None}
    order = [g for g in c.gens if g in grading] + [g for g in c.gens if g not in grading]
    for root in order:
        if root not in grading:
            grading[root] = 0
        stack = [root]
        while stack:
            g = stack.pop()
            for h, p in nbrs[g]:
                if h not in grading:
                    grading[h] = grading[g] + p
                    stack.append(h)
    return grading


def reduce(c: GradedUComplex, order_key=None, survivors: list | None = None) -> Decomposition:
    """Decompose ``H_*(c)`` into free and torsion summands by cancellation.

    Repeatedly picks an arrow ``g -> U^p h`` of minimal ``p`` (ties broken by
    generator position, or by ``order_key`` if given), clears the rest of
    row ``g`` and column ``h``, and splits off the pair.  If ``survivors``
    is given, the generators carrying the free summands are appended to it.
    """
    index = {g: i for i, g in enumerate(c.gens)}
    key = order_key or index.__getitem__
    grading = _relative_gradings(c)
    rows: dict[Hashable, dict[Hashable, int]] = defaultdict(dict)
    cols: dict[Hashable, dict[Hashable, int]] = defaultdict(dict)
    heap: list = []

    def push(s, t, poly):
        p = monomial_power(poly)
        if s == t:
            # a diagonal entry is never a pivot; d^2 = 0 then guarantees an
            # off-diagonal unit entry in its row, which clears it
            return
        heapq.heappush(heap, (p, key(s), key(t), s, t))

    def setentry(s, t, poly):
        if poly:
            rows[s][t] = poly
            cols[t][s] = poly
            push(s, t, poly)
        else:
            rows[s].pop(t, None)
            cols[t].pop(s, None)

    for (s, t), poly in c.arrows.items():
        if poly:
            setentry(s, t, poly)

    alive = set(c.gens)
    torsion: list[tuple[int, int]] = []
    while heap:
        p, _, _, g, h = heapq.heappop(heap)
        poly = rows[g].get(h)
        if poly is None or g not in alive or h not in alive or monomial_power(poly) != p:
            continue
        # rows x -> h, x != g: x' = x + U^(a-p) g
        for x, cx in list(cols[h].items()):
            if x == g:
                continue
            shift = monomial_power(cx) - p
            for k, cgk in list(rows[g].items()):
                setentry(x, k, rows[x].get(k, 0) ^ (cgk << shift))
        # columns g -> k, k != h: h' = h + U^(b-p) k; row of h' is dropped
        for k, cgk in list(rows[g].items()):
            if k == h:
                continue
            setentry(g, k, 0)
        if rows[g].get(h) != poly or len(cols[h]) != 1:
            raise ReductionError(f"cancellation of {g} -> {h} left stray entries")
        for t in list(rows[h]):
            setentry(h, t, 0)
        for x in list(cols[g]):
            setentry(x, g, 0)
        setentry(g, h, 0)
        alive.discard(g)
        alive.discard(h)
        if p > 0:
            torsion.append((grading[h], p))

    for g in alive:
        if any(t in alive for t in rows[g]):
            raise ReductionError(f"arrows left among surviving generators at {g} (is d^2 = 0?)")
    if survivors is not None:
        survivors.extend(g for g in c.gens if g in alive)
    free = sorted(grading[g] for g in alive)
    return Decomposition(tuple(free), tuple(sorted(torsion)))


def tau_from_decomposition(d: Decomposition) -> int:
    if len(d.free) != 1:
        raise ReductionError(f"expected free rank 1, got {len(d.free)}")
    return -d.free[0]


def top_nonzero_grading(d: Decomposition) -> int:
    gradings = list(d.free) + [a for a, _ in d.torsion]
    if not gradings:
        raise ReductionError("empty decomposition")
    return max(gradings)


def truncated_dimensions(d: Decomposition, n: int) -> Counter:
    """dim over F_2 of H(C ⊗ F_2[U]/U^n), per Alexander grading.

    A free summand at grading ``a`` contributes ``U^j`` at ``a - j`` for
    ``j < n``.  A torsion summand ``F_2[U]/U^p`` at ``a`` (with its generator
    in grading ``a``) contributes the truncation kernel and cokernel of ``U^p``.
    """
    dims: Counter = Counter()
    for a in d.free:
        for j in range(n):
            dims[a - j] += 1
    for a, p in d.torsion:
        q = min(p, n)
        # cokernel: F[U]/(U^p, U^n) generated at a
        for j in range(q):
            dims[a - j] += 1
        # kernel of U^p on F[U]/U^n lifted to the source one degree up
        src = a - p
        for j in range(q):
            dims[src - (n - q) - j] += 1
    return +dims
