"""Random graded F_2[U]-complexes and a brute-force homology oracle.

Random complexes are direct sums of free generators and torsion pairs
``g -> U^p h``, scrambled by homogeneous changes of basis, so the true
decomposition is known in advance.  The oracle computes
``dim H(C ⊗ F_2[U]/U^N)`` per Alexander grading by plain F_2 linear algebra,
independently of the cancellation algorithm.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict

from . import gf2
from .homology import Decomposition, GradedUComplex


def random_graded_complex(rng: random.Random, max_gens: int = 8, scramble: int = 12) -> tuple[GradedUComplex, Decomposition]:
    gens: list[str] = []
    grading: dict[str, int] = {}
    rows: dict[str, dict[str, int]] = defaultdict(dict)
    free, torsion = [], []
    while True:
        room = max_gens - len(gens)
        if room <= 0 or (gens and rng.random() < 0.15):
            break
        a = rng.randint(-3, 3)
        if room >= 2 and rng.random() < 0.7:
            p = rng.randint(0, 3)
            g, h = f"g{len(gens)}", f"g{len(gens) + 1}"
            gens += [g, h]
            grading[g], grading[h] = a, a + p
            rows[g][h] = 1 << p
            if p:
                torsion.append((a + p, p))
        else:
            g = f"g{len(gens)}"
            gens.append(g)
            grading[g] = a
            free.append(a)
    for _ in range(scramble):
        x, y = rng.sample(gens, 2) if len(gens) > 1 else (None, None)
        if x is None:
            break
        k = grading[y] - grading[x]
        if k < 0:
            continue
        # new basis element x' = x + U^k y
        for t, c in list(rows[y].items()):
            _xor(rows[x], t, c << k)
        for z in gens:
            c = rows[z].get(x)
            if c:
                _xor(rows[z], y, c << k)
    order = gens[:]
    rng.shuffle(order)
    c = GradedUComplex(gens=order, grading=dict(grading))
    for s, row in rows.items():
        for t, poly in row.items():
            if poly:
                c.arrows[(s, t)] = poly
    return c, Decomposition(tuple(sorted(free)), tuple(sorted(torsion)))


def _xor(row: dict[str, int], key: str, value: int) -> None:
    v = row.get(key, 0) ^ value
    if v:
        row[key] = v
    else:
        row.pop(key, None)


def brute_force_truncated(c: GradedUComplex, n: int) -> Counter:
    """dim_F2 H_a(C ⊗ F_2[U]/U^n) for every grading a (zeros dropped)."""
    basis = [(g, j) for g in c.gens for j in range(n)]
    index = {b: i for i, b in enumerate(basis)}
    by_grading: dict[int, list[int]] = defaultdict(list)
    for (g, j), i in index.items():
        by_grading[c.grading[g] - j].append(i)
    images: dict[int, int] = {}
    for (g, j), i in index.items():
        img = 0
        for (s, t), poly in c.arrows.items():
            if s != g:
                continue
            p = 0
            while poly:
                if poly & 1 and j + p < n:
                    img ^= 1 << index[(t, j + p)]
                poly >>= 1
                p += 1
        images[i] = img
    out: Counter = Counter()
    for a, idx in by_grading.items():
        # d preserves the grading, so H_a = dim - rank(d_a) - rank(d_a)
        r = gf2.rank(images[i] for i in idx)
        dim = len(idx) - 2 * r
        if dim:
            out[a] = dim
    return out
