"""Knot Floer complexes over R = F_2[U,V]/(UV), tau and epsilon extraction.

An arrow ``g -> U^u V^v h`` satisfies ``A(h) = A(g) + u - v``; since
``UV = 0`` at most one of ``u``, ``v`` is positive.  Arrows with ``v > 0``
form the vertical complex, arrows with ``u > 0`` the horizontal complex.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import gf2
from .homology import GradedUComplex, reduce


class CfkError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    id: str
    A: int
    M: int | None = None


@dataclass(frozen=True)
class Arrow:
    src: str
    tgt: str
    u: int = 0
    v: int = 0


@dataclass(frozen=True)
class CfkComplex:
    generators: tuple[Generator, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            raise CfkError("duplicate generator ids")

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.generators]

    def grading(self) -> dict[str, int]:
        return {g.id: g.A for g in self.generators}

    def to_json(self) -> dict:
        return {
            "generators": [{"id": g.id, "A": g.A, "M": g.M} for g in self.generators],
            "arrows": [{"from": a.src, "to": a.tgt, "u": a.u, "v": a.v} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CfkComplex":
        gens = tuple(Generator(g["id"], int(g["A"]), g.get("M")) for g in data["generators"])
        arrows = tuple(Arrow(a["from"], a["to"], int(a["u"]), int(a["v"])) for a in data["arrows"])
        return cls(gens, arrows)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def subcomplex(self, ids: Iterable[str]) -> "CfkComplex":
        """Induced complex on ``ids``; they must span a subcomplex."""
        keep = set(ids)
        for a in self.arrows:
            if a.src in keep and a.tgt not in keep:
                raise CfkError(f"{sorted(keep)} is not closed under d ({a.src} -> {a.tgt})")
        gens = tuple(g for g in self.generators if g.id in keep)
        return CfkComplex(gens, tuple(a for a in self.arrows if a.src in keep))


def validate(c: CfkComplex, reduced: bool = False) -> list[str]:
    """Return a list of human-readable invariant violations (empty if valid)."""
    problems = []
    A = c.grading()
    for a in c.arrows:
        if a.src not in A or a.tgt not in A:
            problems.append(f"arrow {a.src}->{a.tgt} references an unknown generator")
            continue
        if a.u < 0 or a.v < 0:
            problems.append(f"arrow {a.src}->{a.tgt} has a negative power")
        if a.u > 0 and a.v > 0:
            problems.append(f"UV term on arrow {a.src}->{a.tgt} (u={a.u}, v={a.v})")
        if A[a.tgt] != A[a.src] + a.u - a.v:
            problems.append(
                f"grading mismatch on {a.src}->{a.tgt}: A={A[a.src]}->{A[a.tgt]} with u={a.u}, v={a.v}"
            )
        if reduced and a.u == 0 and a.v == 0:
            problems.append(f"unreduced arrow {a.src}->{a.tgt}")
    if problems:
        return problems
    # d^2 over R: compose arrows, drop anything with both U and V
    out = defaultdict(list)
    for a in c.arrows:
        out[a.src].append(a)
    for g in c.ids:
        acc: dict[tuple[str, int, int], int] = defaultdict(int)
        for a in out[g]:
            for b in out[a.tgt]:
                u, v = a.u + b.u, a.v + b.v
                if u and v:
                    continue
                acc[(b.tgt, u, v)] ^= 1
        for (k, u, v), bit in sorted(acc.items()):
            if bit:
                problems.append(f"d^2 != 0: {g} -> U^{u}V^{v} {k}")
    return problems


def mirror(c: CfkComplex) -> CfkComplex:
    """Dual complex: arrows reversed, Alexander gradings negated."""
    problems = validate(c)
    if problems:
        raise CfkError("; ".join(problems))
    gens = tuple(Generator(g.id, -g.A, None if g.M is None else -g.M) for g in c.generators)
    arrows = tuple(Arrow(a.tgt, a.src, a.u, a.v) for a in c.arrows)
    return CfkComplex(gens, arrows)


def elementary_change(c: CfkComplex, x: str, y: str) -> CfkComplex:
    """Change of basis ``x' = x + y`` for generators in the same grading.

    The new generator keeps the id ``x``.  Entries stay monomial because a
    homogeneous entry of R in a fixed degree is unique.  Intended for reduced
    complexes (no arrows between equal gradings).
    """
    A = c.grading()
    if x == y or A[x] != A[y]:
        raise CfkError("elementary_change needs distinct generators of equal grading")
    entries: dict[tuple[str, str], tuple[int, int]] = {}
    count: dict[tuple[str, str], int] = defaultdict(int)
    for a in c.arrows:
        count[(a.src, a.tgt)] ^= 1
        entries[(a.src, a.tgt)] = (a.u, a.v)

    def toggle(s, t, uv):
        if (s, t) in entries and count[(s, t)] and entries[(s, t)] != uv:
            raise CfkError("non-monomial entry after basis change")
        entries[(s, t)] = uv
        count[(s, t)] ^= 1

    rows = defaultdict(dict)
    for (s, t), bit in count.items():
        if bit:
            rows[s][t] = entries[(s, t)]
    # d(x') = d(x) + d(y)
    for t, uv in list(rows[y].items()):
        toggle(x, t, uv)
    # old x = x' + y: every entry s -> x also lands on y
    for s in list(rows):
        if x in rows[s]:
            toggle(s, y, rows[s][x])
    arrows = tuple(
        Arrow(s, t, *entries[(s, t)]) for (s, t), bit in sorted(count.items()) if bit
    )
    return CfkComplex(c.generators, arrows)


def random_filtered_change(c: CfkComplex, steps: int, rng: random.Random) -> CfkComplex:
    by_grading = defaultdict(list)
    for g in c.generators:
        by_grading[g.A].append(g.id)
    pools = [ids for ids in by_grading.values() if len(ids) > 1]
    for _ in range(steps):
        if not pools:
            break
        x, y = rng.sample(rng.choice(pools), 2)
        c = elementary_change(c, x, y)
    return c


# --- tau and epsilon ------------------------------------------------------


def _specialized(c: CfkComplex, which: str) -> list[int]:
    """Columns of the vertical (``"v"``) or horizontal (``"u"``) differential
    over F_2, with the other variable set to zero and this one to one."""
    pos = {g: i for i, g in enumerate(c.ids)}
    cols = [0] * len(pos)
    for a in c.arrows:
        if (which == "v" and a.u == 0) or (which == "u" and a.v == 0):
            cols[pos[a.src]] ^= 1 << pos[a.tgt]
    return cols


def tau_from_cfk(c: CfkComplex) -> int:
    """tau as the grading of the V-free generator of the U = 0 complex.

    The vertical complex over F_2[V] is fed to the U-complex reducer with
    gradings negated (a V-arrow lowers A, a U-arrow raises it).
    """
    uc = GradedUComplex(gens=c.ids, grading={g.id: -g.A for g in c.generators})
    for a in c.arrows:
        if a.u == 0:
            uc.add(a.src, a.tgt, a.v)
    d = reduce(uc)
    if len(d.free) != 1:
        raise CfkError(f"vertical homology has rank {len(d.free)}, expected 1")
    return -d.free[0]


def _distinguished(c: CfkComplex, which: str) -> frozenset[str]:
    cols = _specialized(c, which)
    reps = gf2.homology_basis(cols)
    if len(reps) != 1:
        name = "horizontal" if which == "u" else "vertical"
        raise CfkError(f"{name} homology has rank {len(reps)}, expected 1")
    ids = c.ids
    return frozenset(ids[i] for i in gf2.support(reps[0]))


def horizontal_distinguished(c: CfkComplex) -> frozenset[str]:
    """A cycle (set of generator ids) generating horizontal homology."""
    return _distinguished(c, "u")


def vertical_distinguished(c: CfkComplex) -> frozenset[str]:
    return _distinguished(c, "v")


def vertical_classify(c: CfkComplex, e: Iterable[str]) -> int:
    """Vertical position of the horizontal class of ``e``.

    +1: some representative ``e + d_h(z)`` is a vertical boundary;
    -1: every representative has nonzero vertical differential;
     0: otherwise.
    """
    pos = {g: i for i, g in enumerate(c.ids)}
    ev = gf2.vec(pos[g] for g in e)
    dv = _specialized(c, "v")
    dh = _specialized(c, "u")
    if ev in gf2.Span(dv + dh):
        return 1
    dv_e = gf2.apply(dv, ev)
    if dv_e in gf2.Span(gf2.apply(dv, col) for col in dh):
        return 0
    return -1


def epsilon_from_cfk(c: CfkComplex) -> int:
    return vertical_classify(c, horizontal_distinguished(c))


# --- simultaneously simplified models --------------------------------------


@dataclass(frozen=True)
class SimplifiedModel:
    """A complex whose generators form one basis that is both vertically and
    horizontally simplified.

    ``xi`` lists the generators as xi_0, ..., xi_2n so that the vertical
    arrows are xi_{2j-1} -> xi_{2j}; ``eta`` does the same for horizontal
    arrows.  ``vertical[j-1]`` and ``horizontal[j-1]`` hold the lengths.
    """

    name: str
    complex: CfkComplex
    xi: tuple[str, ...]
    eta: tuple[str, ...]
    vertical: tuple[int, ...]
    horizontal: tuple[int, ...]
    tau: int
    epsilon: int

    @property
    def n(self) -> int:
        return len(self.vertical)


def simplify(c: CfkComplex, name: str = "") -> SimplifiedModel:
    """Read off xi/eta orderings; rejects complexes outside the supported class."""
    problems = validate(c, reduced=True)
    if problems:
        raise CfkError("; ".join(problems))
    v_arrows = sorted((a for a in c.arrows if a.v > 0), key=lambda a: (a.src, a.tgt))
    h_arrows = sorted((a for a in c.arrows if a.u > 0), key=lambda a: (a.src, a.tgt))

    def order(arrows):
        seen = []
        for a in arrows:
            seen += [a.src, a.tgt]
        if len(set(seen)) != len(seen):
            raise CfkError(f"{name or 'complex'}: basis is not simultaneously simplified")
        free = [g for g in c.ids if g not in seen]
        if len(free) != 1:
            raise CfkError(f"{name or 'complex'}: {len(free)} unpaired generators, expected 1")
        return tuple(free + seen)

    xi = order(v_arrows)
    eta = order(h_arrows)
    tau = c.grading()[xi[0]]
    if c.grading()[eta[0]] != -tau:
        raise CfkError(f"{name or 'complex'}: A(eta_0) != -tau")
    if eta[0] == xi[0]:
        eps = 0
    elif any(a.tgt == eta[0] for a in v_arrows):
        eps = 1
    else:
        eps = -1
    return SimplifiedModel(
        name=name,
        complex=c,
        xi=xi,
        eta=eta,
        vertical=tuple(a.v for a in v_arrows),
        horizontal=tuple(a.u for a in h_arrows),
        tau=tau,
        epsilon=eps,
    )


def _complex(gradings: Mapping[str, int], arrows: Sequence[tuple[str, str, int, int]]) -> CfkComplex:
    return CfkComplex(
        tuple(Generator(g, a) for g, a in gradings.items()),
        tuple(Arrow(*a) for a in arrows),
    )


def staircase(steps: Sequence[int]) -> CfkComplex:
    """Staircase with alternating horizontal/vertical step lengths.

    ``steps = (h1, v1, h2, v2, ...)``; the top generator ``s0`` sits at
    half the total length and is the vertical survivor, the last one is the
    horizontal survivor.
    """
    total = sum(steps)
    if len(steps) % 2 or total % 2:
        raise CfkError("staircase needs an even number of steps and even total length")
    a = total // 2
    grading = {"s0": a}
    arrows = []
    for i, length in enumerate(steps):
        a -= length
        grading[f"s{i + 1}"] = a
        if i % 2 == 0:
            arrows.append((f"s{i + 1}", f"s{i}", length, 0))
        else:
            arrows.append((f"s{i}", f"s{i + 1}", 0, length))
    return _complex(grading, arrows)


def box(shift: int = 0, prefix: str = "b") -> CfkComplex:
    """The 1x1 box of the figure-eight knot, top-right corner at A = shift."""
    g = {f"{prefix}a": shift, f"{prefix}b": shift + 1, f"{prefix}c": shift - 1, f"{prefix}d": shift}
    arrows = [
        (f"{prefix}a", f"{prefix}b", 1, 0),
        (f"{prefix}a", f"{prefix}c", 0, 1),
        (f"{prefix}b", f"{prefix}d", 0, 1),
        (f"{prefix}c", f"{prefix}d", 1, 0),
    ]
    return _complex(g, arrows)


def direct_sum(*parts: CfkComplex) -> CfkComplex:
    gens = tuple(g for p in parts for g in p.generators)
    arrows = tuple(a for p in parts for a in p.arrows)
    return CfkComplex(gens, arrows)


def _mixed(tau: int) -> CfkComplex:
    """A model with tau > 0 and epsilon = -1.

    ``a`` (at A = tau) is the vertical survivor and the source of a
    horizontal arrow, ``c`` (at A = -tau) is the horizontal survivor and the
    source of a vertical arrow, as for genuine knot complexes with eps = -1.
    """
    if tau <= 0:
        raise CfkError("mixed model needs tau > 0")
    g = {"a": tau, "b": tau + 1, "e": -tau, "c": -tau, "d": -tau - 1}
    arrows = [("a", "b", 1, 0), ("b", "e", 0, 2 * tau + 1), ("c", "d", 0, 1), ("d", "e", 1, 0)]
    return _complex(g, arrows)


def _unknot() -> CfkComplex:
    return _complex({"x0": 0}, [])


def _t23() -> CfkComplex:
    return _complex({"a": 0, "b": 1, "c": -1}, [("a", "b", 1, 0), ("a", "c", 0, 1)])


def _figure8() -> CfkComplex:
    return direct_sum(_complex({"x0": 0}, []), box())


LIBRARY = {
    "unknot": _unknot,
    "T23": _t23,
    "mT23": lambda: mirror(_t23()),
    "figure8": _figure8,
    "T25": lambda: staircase([1, 1, 1, 1]),
    "mT25": lambda: mirror(staircase([1, 1, 1, 1])),
    "T27": lambda: staircase([1, 1, 1, 1, 1, 1]),
    "mT27": lambda: mirror(staircase([1, 1, 1, 1, 1, 1])),
}

# expected (tau, epsilon) for every library entry
LIBRARY_INVARIANTS = {
    "unknot": (0, 0),
    "T23": (1, 1),
    "mT23": (-1, -1),
    "figure8": (0, 0),
    "T25": (2, 1),
    "mT25": (-2, -1),
    "T27": (3, 1),
    "mT27": (-3, -1),
}


def _zero_tau() -> CfkComplex:
    """tau = 0, epsilon = 1: both survivors sit at A = 0 and are targets,
    ``a`` of a horizontal arrow and ``e`` of a vertical one."""
    g = {"a": 0, "b": -1, "e": 0, "f": 1, "g": 0}
    arrows = [("b", "a", 1, 0), ("f", "e", 0, 1), ("g", "b", 0, 1), ("g", "f", 1, 0)]
    return _complex(g, arrows)


def synthetic_complex(tau: int, eps: int) -> CfkComplex:
    """A formal complex with the given (tau, epsilon).

    Staircases cover eps = sign(tau), the zig-zags above cover the remaining
    branches with tau >= 0, and mirrors supply the rest.
    """
    if eps not in (-1, 0, 1):
        raise CfkError("epsilon must be -1, 0 or 1")
    if eps == 0:
        if tau != 0:
            raise CfkError("epsilon = 0 forces tau = 0")
        return _figure8()
    if tau == 0:
        return _zero_tau() if eps == 1 else mirror(_zero_tau())
    if eps == (1 if tau > 0 else -1):
        c = staircase([1] * (2 * abs(tau)))
        return c if tau > 0 else mirror(c)
    return _mixed(tau) if tau > 0 else mirror(_mixed(-tau))


SYNTHETIC_GRID = [
    (t, e) for t in range(-2, 3) for e in (-1, 0, 1) if not (e == 0 and t != 0)
]


def model(name: str) -> SimplifiedModel:
    """Look up a library companion or a synthetic ``syn(tau,eps)`` model."""
    if name in LIBRARY:
        return simplify(LIBRARY[name](), name)
    if name.startswith("syn(") and name.endswith(")"):
        tau, eps = (int(s) for s in name[4:-1].split(","))
        return simplify(synthetic_complex(tau, eps), name)
    raise CfkError(f"unknown companion {name!r}")


def synthetic_name(tau: int, eps: int) -> str:
    return f"syn({tau},{eps})"


# --- satellite subcomplex fixtures ------------------------------------------


def _propagate(nodes: Sequence[str], arrows: Sequence[tuple[str, str, int, int]], root: str) -> dict[str, int]:
    nbrs = defaultdict(list)
    for s, t, u, v in arrows:
        nbrs[s].append((t, u - v))
        nbrs[t].append((s, v - u))
    grading = {root: 0}
    stack = [root]
    while stack:
        g = stack.pop()
        for h, d in nbrs[g]:
            if h not in grading:
                grading[h] = grading[g] + d
                stack.append(h)
            elif grading[h] != grading[g] + d:
                raise CfkError(f"inconsistent fixture gradings at {h}")
    for g in nodes:
        grading.setdefault(g, 0)
    return {g: grading[g] for g in nodes}


def _zigzag_up(m: int, n: int, first: int) -> list[tuple[str, str, int, int]]:
    """x_odd -> x_even zig-zag: x_{2k+1} -> U^m x_{2k+2}, x_{2k+1} -> U^n x_{2k}."""
    arrows = []
    for k in range(n + 1):
        odd = f"x{2 * k + 1}"
        if k < n:
            arrows.append((odd, f"x{2 * k + 2}", first if k == 0 else m, 0))
        if k > 0:
            arrows.append((odd, f"x{2 * k}", n, 0))
    return arrows


def _zigzag_down(m: int, n: int) -> list[tuple[str, str, int, int]]:
    """x_even -> x_odd zig-zag: x_{2k} -> U^n x_{2k-1}, x_{2k} -> U^m x_{2k+1}."""
    arrows = []
    for k in range(1, n + 1):
        arrows.append((f"x{2 * k}", f"x{2 * k - 1}", n, 0))
        arrows.append((f"x{2 * k}", f"x{2 * k + 1}", m, 0))
    return arrows


def fixture(name: str, m: int, n: int, k: int = 1) -> CfkComplex:
    """Relevant subcomplexes of CFK_R(Q_{m,n}(K)) for the four (tau, eps) cases.

    ``fig25``: tau>0, eps=1; ``fig27``: tau>=0, eps=-1; ``fig29``: tau<=0,
    eps=1 (``k`` sets the length of the y-chain); ``fig31``: tau<0, eps=-1.
    Gradings are relative (anchored at x1 = 0).  Arrows drawn with both a U
    and a V power vanish in R and are dropped.
    """
    if m < n or n < 1:
        raise CfkError("fixtures need m >= n >= 1")
    xs = [f"x{i}" for i in range(1, 2 * n + 2)]
    if name in ("fig25", "fig27"):
        ys = [f"y{2 * i + 1}" for i in range(n + 1)]
        arrows = _zigzag_up(m, n, m if name == "fig25" else m - 1)
        arrows += [(f"y{2 * i + 1}", f"x{2 * i + 1}", 0, 1) for i in range(n + 1)]
    elif name == "fig29":
        if k < 0:
            raise CfkError("fig29 needs k >= 0")
        ys = [f"y{i}" for i in range(1, 2 * k + 2)]
        arrows = _zigzag_down(m, n)
        arrows.append(("y1", f"x{2 * n + 1}", 0, n))
        for i in range(1, k + 1):
            arrows.append((f"y{2 * i + 1}", f"y{2 * i}", 0, n))
        for i in range(0, k):
            arrows.append((f"y{2 * i + 1}", f"y{2 * i + 2}", m - n, n - 1))
    elif name == "fig31":
        ys = ["y1"]
        arrows = _zigzag_down(m, n) + [("y1", f"x{2 * n - 1}", 0, 1)]
    else:
        raise CfkError(f"unknown fixture {name!r}")
    nodes = xs + ys
    grading = _propagate(nodes, arrows, "x1")
    kept = [a for a in arrows if not (a[2] > 0 and a[3] > 0)]
    return _complex(grading, kept)


FIXTURE_CYCLES = {
    # the horizontal cycle each case singles out, as a function of n
    "fig25": lambda n: [f"x{2 * i + 1}" for i in range(n + 1)],
    "fig27": lambda n: [f"x{2 * i + 1}" for i in range(n + 1)],
    "fig29": lambda n: [f"x{2 * n + 1}"],
    "fig31": lambda n: [f"x{2 * n - 1}"],
}


def fixture_x_part(name: str, m: int, n: int, k: int = 1) -> CfkComplex:
    """The x-generators of a fixture, which span a subcomplex."""
    c = fixture(name, m, n, k)
    return c.subcomplex(g for g in c.ids if g.startswith("x"))
