"""Type D structures of knot complements, built from simplified CFK models."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import Alg, idempotent_pair, multiply
from .cfk import SimplifiedModel


class CfdError(ValueError):
    pass


@dataclass(frozen=True)
class DGen:
    id: str
    iota: int
    A: int | None = None


@dataclass(frozen=True)
class Edge:
    src: str
    tgt: str
    label: Alg


@dataclass(frozen=True)
class TypeDStructure:
    gens: tuple[DGen, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        ids = [g.id for g in self.gens]
        if len(set(ids)) != len(ids):
            raise CfdError("duplicate generator ids")

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.gens]

    def gen(self, gid: str) -> DGen:
        for g in self.gens:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def by_iota(self, iota: int) -> list[DGen]:
        return [g for g in self.gens if g.iota == iota]

    def out_edges(self) -> dict[str, list[Edge]]:
        out: dict[str, list[Edge]] = defaultdict(list)
        for e in self.edges:
            out[e.src].append(e)
        return out

    def to_json(self) -> dict:
        return {
            "gens": [{"id": g.id, "iota": g.iota, "A": g.A} for g in self.gens],
            "edges": [{"from": e.src, "to": e.tgt, "label": e.label.label} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TypeDStructure":
        gens = tuple(DGen(g["id"], int(g["iota"]), g.get("A")) for g in data["gens"])
        edges = tuple(Edge(e["from"], e["to"], Alg.parse(e["label"])) for e in data["edges"])
        return cls(gens, edges)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_cfd(model: SimplifiedModel) -> TypeDStructure:
    """Type D structure of the 0-framed complement from a simplified model.

    Every vertical arrow ``xi_{2j-1} -> V^k xi_{2j}`` gives a kappa chain of
    length ``k``, every horizontal arrow ``eta_{2j-1} -> U^l eta_{2j}`` a
    lambda chain of length ``l``, and the survivors are joined by an
    unstable chain of length ``2|tau|``.
    """
    A = model.complex.grading()
    # the xi labels name the iota_0 generators; eta is a relabeling
    xi_name = {g: f"xi{i}" for i, g in enumerate(model.xi)}
    gens = [DGen(xi_name[g], 0, A[g]) for g in model.xi]
    edges: list[Edge] = []

    def chain(prefix: str, length: int) -> list[str]:
        names = [f"{prefix}_{i}" for i in range(1, length + 1)]
        gens.extend(DGen(nm, 1) for nm in names)
        for a, b in zip(names, names[1:]):
            edges.append(Edge(a, b, Alg.R23))
        return names

    for j, k in enumerate(model.vertical, start=1):
        if k < 1:
            raise CfdError("vertical arrow of length 0 (model is not reduced)")
        ka = chain(f"ka{j}", k)
        edges.append(Edge(xi_name[model.xi[2 * j]], ka[0], Alg.R123))
        edges.append(Edge(xi_name[model.xi[2 * j - 1]], ka[-1], Alg.R1))
    for j, l in enumerate(model.horizontal, start=1):
        if l < 1:
            raise CfdError("horizontal arrow of length 0 (model is not reduced)")
        la = chain(f"la{j}", l)
        edges.append(Edge(xi_name[model.eta[2 * j - 1]], la[0], Alg.R3))
        edges.append(Edge(la[-1], xi_name[model.eta[2 * j]], Alg.R2))
    xi0, eta0 = xi_name[model.xi[0]], xi_name[model.eta[0]]
    s = 2 * abs(model.tau)
    if model.tau > 0:
        mu = chain("mu", s)
        edges.append(Edge(eta0, mu[0], Alg.R3))
        edges.append(Edge(xi0, mu[-1], Alg.R1))
    elif model.tau == 0:
        edges.append(Edge(xi0, eta0, Alg.R12))
    else:
        mu = chain("mu", s)
        edges.append(Edge(xi0, mu[0], Alg.R123))
        edges.append(Edge(mu[-1], eta0, Alg.R2))
    return TypeDStructure(tuple(gens), tuple(edges))


def check_typeD_relation(d: TypeDStructure) -> list[str]:
    """Diagnostics for idempotent typing and the type D relation.

    With zero differential on the algebra the relation says that the sum
    of ``label1 * label2 (x) k`` over two-step paths ``g -> h -> k`` vanishes.
    """
    problems = []
    iota = {g.id: g.iota for g in d.gens}
    for e in d.edges:
        if e.src not in iota or e.tgt not in iota:
            problems.append(f"edge {e.src}->{e.tgt} references an unknown generator")
            continue
        if not e.label.is_reeb:
            problems.append(f"edge {e.src}->{e.tgt} is unlabeled or idempotent")
            continue
        left, right = idempotent_pair(e.label)
        if (iota[e.src], iota[e.tgt]) != (int(left.value[1]), int(right.value[1])):
            problems.append(
                f"edge {e.src}->{e.tgt} labeled {e.label.label} joins iota_{iota[e.src]} to iota_{iota[e.tgt]}"
            )
    if problems:
        return problems
    out = d.out_edges()
    for g in d.ids:
        acc: dict[tuple[Alg, str], int] = defaultdict(int)
        for e1 in out[g]:
            for e2 in out[e1.tgt]:
                prod = multiply(e1.label, e2.label)
                if prod is not Alg.ZERO:
                    acc[(prod, e2.tgt)] ^= 1
        for (prod, k), bit in sorted(acc.items(), key=lambda kv: (kv[0][0].value, kv[0][1])):
            if bit:
                problems.append(f"type D relation fails: {g} -> {prod.label} (x) {k}")
    return problems


def paths_with_labels(d: TypeDStructure, start: str, labels: Sequence[Alg | str | int]) -> list[str]:
    """End points of directed paths from ``start`` with exactly these labels.

    Multiplicities are taken mod 2; the result is sorted by generator order.
    """
    seq = [a if isinstance(a, Alg) else Alg.parse(a) for a in labels]
    if not seq:
        raise CfdError("paths_with_labels needs a nonempty label sequence")
    return _paths(d.out_edges(), start, tuple(seq), {g: i for i, g in enumerate(d.ids)})


def _paths(out: Mapping[str, list[Edge]], start: str, seq: tuple[Alg, ...], order: Mapping[str, int]) -> list[str]:
    frontier = {start: 1}
    for lab in seq:
        nxt: dict[str, int] = defaultdict(int)
        for g, mult in frontier.items():
            for e in out.get(g, ()):
                if e.label is lab:
                    nxt[e.tgt] ^= mult
        frontier = {g: 1 for g, m in nxt.items() if m}
        if not frontier:
            return []
    return sorted(frontier, key=order.__getitem__)


class PathIndex:
    """Memoized ``paths_with_labels`` for repeated box tensor queries."""

    def __init__(self, d: TypeDStructure):
        self._out = d.out_edges()
        self._order = {g: i for i, g in enumerate(d.ids)}
        self._cache: dict[tuple[str, tuple[Alg, ...]], list[str]] = {}

    def __call__(self, start: str, seq: tuple[Alg, ...]) -> list[str]:
        key = (start, seq)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = _paths(self._out, start, seq, self._order)
        return hit
