"""The A-infinity module CFA^-(V, Q_{m,n}) of a generalized Mazur pattern.

Generators are ``x1 .. x_{2m+1}`` (idempotent iota_0) and
``y1 .. y_{2m+2n+2mn-2}`` (iota_1).  An operation ``m_{k+1}(a, r_1..r_k) =
U^u b`` is stored as ``Op(a, (r_1, .., r_k), b, u)``.

The module is produced from a small set of generating operations (the
"train" of m squares, the bottom chain, the isolated components and the
chain family linking them) and closed under merges: whenever
``m(a, .., r) = b`` and ``m(b, s, ..) = c`` with ``r * s != 0``, the A-infinity
relation forces ``m(a, .., r*s, ..) = c``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .algebra import REEB, Alg, chains, idempotent_pair, multiply


class CfaError(ValueError):
    pass


@dataclass(frozen=True)
class AGen:
    id: str
    iota: int
    role: str


@dataclass(frozen=True, order=True)
class Op:
    src: str
    rhos: tuple[Alg, ...]
    tgt: str
    u: int = 0

    def key(self) -> tuple[str, tuple[str, ...], str, int]:
        return (self.src, tuple(r.label for r in self.rhos), self.tgt, self.u)

    def __str__(self) -> str:
        args = "".join(f",r{r.label}" for r in self.rhos)
        coeff = "" if self.u == 0 else ("U" if self.u == 1 else f"U^{self.u}")
        return f"m{len(self.rhos) + 1}({self.src}{args}) = {coeff}{self.tgt}"


def _iota(gid: str) -> int:
    return 0 if gid.startswith("x") else 1


def op(src: str, rhos: Iterable[str | Alg], tgt: str, u: int = 0) -> Op:
    return Op(src, tuple(r if isinstance(r, Alg) else Alg.parse(r) for r in rhos), tgt, u)


@dataclass(frozen=True)
class AInftyModule:
    m: int
    n: int
    gens: tuple[AGen, ...]
    ops: tuple[Op, ...]

    @cached_property
    def order(self) -> dict[str, int]:
        return {g.id: i for i, g in enumerate(self.gens)}

    def sorted(self) -> "AInftyModule":
        o = self.order
        ops = sorted(set(self.ops), key=lambda p: (o[p.src], tuple(r.label for r in p.rhos), o[p.tgt], p.u))
        return AInftyModule(self.m, self.n, self.gens, tuple(ops))

    def op_keys(self) -> set[tuple]:
        return {p.key() for p in self.ops}

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "gens": [{"id": g.id, "iota": g.iota, "role": g.role} for g in self.gens],
            "ops": [
                {"in": p.src, "rhos": [r.label for r in p.rhos], "out": p.tgt, "u": p.u} for p in self.ops
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "AInftyModule":
        gens = tuple(AGen(g["id"], int(g["iota"]), g["role"]) for g in data["gens"])
        ops = tuple(op(p["in"], p["rhos"], p["out"], int(p["u"])) for p in data["ops"])
        return cls(int(data["m"]), int(data["n"]), gens, ops)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def generators(m: int, n: int) -> tuple[AGen, ...]:
    lay = Layout(m, n)
    xs = tuple(AGen(f"x{i}", 0, "x") for i in range(1, 2 * m + 2))
    ys = tuple(AGen(f"y{j}", 1, "y") for j in range(1, lay.N + 1))
    return xs + ys


@dataclass(frozen=True)
class Layout:
    """Index bookkeeping for the y-generators.

    ``top(r)``/``bot(r)`` are the two y-corners of square ``r``; ``w`` sits
    below the first square.  For ``n >= 2``, ``a(k) = y_{(2m+1)(k+1)}``
    (``k = 0..n-2``) is a chain hanging off ``x_{2m+1}`` and ``b(k) = y_{w-k}``
    is the descending bottom chain starting at ``b(0) = w``.
    """

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise CfaError("m and n must be positive")

    @property
    def N(self) -> int:
        return 2 * self.m + 2 * self.n + 2 * self.m * self.n - 2

    @property
    def w(self) -> int:
        return 2 * self.n + 2 * self.m * self.n - 2

    def top(self, r: int) -> int:
        return self.N - r + 1

    def bot(self, r: int) -> int:
        return self.w + r

    def a(self, k: int) -> int:
        return (2 * self.m + 1) * (k + 1)

    def b(self, k: int) -> int:
        return self.w - k

    @cached_property
    def main(self) -> frozenset[str]:
        """Generators of the component carrying the F[U]-tower."""
        m, n = self.m, self.n
        ids = {f"x{i}" for i in range(1, 2 * m + 2)}
        ids |= {f"y{self.top(r)}" for r in range(1, m + 1)}
        ids |= {f"y{self.bot(r)}" for r in range(1, m + 1)}
        if n >= 2:
            ids |= {f"y{self.a(k)}" for k in range(n - 1)}
            ids |= {f"y{self.b(k)}" for k in range(n - 1)}
        return frozenset(ids)

    @cached_property
    def isolated(self) -> frozenset[str]:
        return frozenset(f"y{j}" for j in range(1, self.N + 1)) - self.main


def base_ops(m: int, n: int, triple_family: bool = True) -> list[Op]:
    """Generating operations before merge closure.

    ``triple_family`` adds the ops ``x_j -> U rho3 rho2 rho1 y_j`` that the
    change of basis later removes.
    """
    lay = Layout(m, n)
    N, w = lay.N, lay.w
    X = "x{}".format
    Y = "y{}".format
    ops: list[Op] = []

    def add(src, rhos, tgt, u=0):
        ops.append(op(src, rhos, tgt, u))

    # isolated components: nested U-pairs inside each block
    for l in ((0,) if n == 1 else (0, 1)):
        for j in range(1, m + 1):
            add(Y((2 * m + 1) * l + j), [], Y((2 * m + 1) * (l + 1) - j), 1)
    for l in range(2, n):
        for j in range(2, m + 2):
            add(Y((2 * m + 1) * l + j - 1), [], Y((2 * m + 1) * (l + 1) - (j - 1)), 1)

    # the squares
    for r in range(1, m + 1):
        add(X(r), ["1"], Y(lay.top(r)))
        add(X(r), [], X(2 * m - r + 1), 1)
        add(Y(lay.top(r)), [], Y(lay.bot(r)), m - r + 1)
        add(Y(lay.top(r)), ["2"], X(2 * m - r + 2))
    add(X(1), ["123"], Y(w + 1), n)
    add(Y(N), ["23"], Y(w + 1), n)
    add(X(2 * m + 1), ["3"], Y(w + 1), n)
    for r in range(m):
        add(X(r + 1), ["12"], X(2 * m - r + 1))
    for r in range(2, m + 1):
        add(Y(lay.bot(r)), ["2", "1"], Y(lay.bot(r - 1)))
    for r in range(1, m + 1):
        add(X(2 * m - r + 1), ["1"], Y(lay.bot(r)), m - r)

    if n >= 2:
        add(X(2 * m + 1), ["3", "2", "1"], Y(2 * m + 1), 1)
        add(X(2 * m + 1), ["1"], Y(w), m)
        add(Y(w + 1), ["2", "1"], Y(w))
        # a(k) -> U^{n-1-k} b(k); a(0) -> U^{n-1} w is the first of these
        for k in range(n - 1):
            add(Y(lay.a(k)), [], Y(lay.b(k)), n - 1 - k)
        for k in range(n - 2):
            add(Y(lay.b(k)), ["2", "1"], Y(lay.b(k + 1)))
        for j in range(1, 2 * m * n + n - 2 * m - 1):
            add(Y(j), ["2", "1"], Y(2 * m + 1 + j), 1)

    if triple_family:
        for j in range(1, 2 * m + 1):
            add(X(j), ["3", "2", "1"], Y(j), 1)
    return ops


def merge_closure(ops: Iterable[Op], max_rounds: int = 100) -> list[Op]:
    """Add every merge composite ``(.., r*s, ..)`` until nothing new appears."""
    result = list(dict.fromkeys(ops))
    seen = set(result)
    frontier = list(result)
    for _ in range(max_rounds):
        by_src: dict[str, list[Op]] = defaultdict(list)
        by_tgt: dict[str, list[Op]] = defaultdict(list)
        for p in result:
            by_src[p.src].append(p)
            by_tgt[p.tgt].append(p)
        new: list[Op] = []

        def consider(first: Op, second: Op):
            if not first.rhos or not second.rhos:
                return
            prod = multiply(first.rhos[-1], second.rhos[0])
            if prod is Alg.ZERO:
                return
            c = Op(first.src, first.rhos[:-1] + (prod,) + second.rhos[1:], second.tgt, first.u + second.u)
            if c not in seen:
                seen.add(c)
                new.append(c)

        for p in frontier:
            for q in by_src[p.tgt]:
                consider(p, q)
            for q in by_tgt[p.src]:
                consider(q, p)
        if not new:
            return result
        result.extend(new)
        frontier = new
    raise CfaError("merge closure did not terminate")


def build_cfa(m: int, n: int, triple_family: bool = True) -> AInftyModule:
    """CFA^-(V, Q_{m,n}) in the basis before the simplifying change of basis."""
    if m < 1 or n < 1:
        raise CfaError("m and n must be positive (the cable case m = 0 or n = 0 is excluded)")
    ops = merge_closure(base_ops(m, n, triple_family))
    return AInftyModule(m, n, generators(m, n), tuple(ops)).sorted()


def change_of_basis(module: AInftyModule) -> AInftyModule:
    """Split off the isolated components.

    Substituting ``x'_{2m-j+1} = x_{2m-j+1} + rho_3 rho_2 rho_1 y_j`` (and the
    analogous substitutions for the chain family) removes every operation
    from the main component into an isolated one.  Operations inside either
    part are untouched, so the result is again an A-infinity module.
    """
    lay = Layout(module.m, module.n)
    main, iso = lay.main, lay.isolated
    ops = tuple(p for p in module.ops if not (p.src in main and p.tgt in iso))
    return AInftyModule(module.m, module.n, module.gens, ops)


def validate(module: AInftyModule) -> list[str]:
    """Idempotent-chain diagnostics for every operation."""
    problems = []
    iota = {g.id: g.iota for g in module.gens}
    for p in module.ops:
        if p.src not in iota or p.tgt not in iota:
            problems.append(f"{p}: unknown generator")
            continue
        if p.u < 0:
            problems.append(f"{p}: negative U power")
        if not p.rhos:
            if iota[p.src] != iota[p.tgt]:
                problems.append(f"{p}: m1 joins different idempotents")
            continue
        if any(not r.is_reeb for r in p.rhos):
            problems.append(f"{p}: non-Reeb input")
            continue
        first_left = idempotent_pair(p.rhos[0])[0]
        last_right = idempotent_pair(p.rhos[-1])[1]
        if _alg_iota(first_left) != iota[p.src]:
            problems.append(f"{p}: first chord does not start at the input idempotent")
        if not chains(p.rhos):
            problems.append(f"{p}: consecutive chords do not chain")
        if _alg_iota(last_right) != iota[p.tgt]:
            problems.append(f"{p}: last chord does not end at the output idempotent")
    return problems


def _alg_iota(a: Alg) -> int:
    return 0 if a is Alg.I0 else 1


_FACTORIZATIONS: dict[Alg, list[tuple[Alg, Alg]]] = defaultdict(list)
for _a in REEB:
    for _b in REEB:
        _p = multiply(_a, _b)
        if _p is not Alg.ZERO:
            _FACTORIZATIONS[_p].append((_a, _b))


def ainfinity_violations(module: AInftyModule, max_len: int | None = None) -> list[str]:
    """Nonvanishing terms of the A-infinity relations.

    With zero differential on the algebra the relation for ``(x; a_1..a_k)``
    is ``sum m(m(x, a_1..a_i), a_{i+1}..a_k) + sum m(x, .., a_j a_{j+1}, ..) = 0``.
    Only sequences that can carry a nonzero term are enumerated: splits of
    two composable operations and factorizations of one chord of a single
    operation.  ``max_len`` optionally bounds the sequence length.
    """
    table: dict[tuple[str, tuple[Alg, ...]], dict[tuple[str, int], int]] = defaultdict(lambda: defaultdict(int))
    by_src: dict[str, list[Op]] = defaultdict(list)
    for p in module.ops:
        table[(p.src, p.rhos)][(p.tgt, p.u)] ^= 1
        by_src[p.src].append(p)

    candidates: set[tuple[str, tuple[Alg, ...]]] = set()
    for p in module.ops:
        for q in by_src[p.tgt]:
            candidates.add((p.src, p.rhos + q.rhos))
        for j, r in enumerate(p.rhos):
            for a, b in _FACTORIZATIONS.get(r, ()):
                candidates.add((p.src, p.rhos[:j] + (a, b) + p.rhos[j + 1 :]))

    problems = []
    for x, seq in sorted(candidates, key=lambda c: (c[0], tuple(r.label for r in c[1]))):
        if max_len is not None and len(seq) > max_len:
            continue
        acc: dict[tuple[str, int], int] = defaultdict(int)
        for i in range(len(seq) + 1):
            for (y, u), bit in table.get((x, seq[:i]), {}).items():
                if not bit:
                    continue
                for (z, v), bit2 in table.get((y, seq[i:]), {}).items():
                    if bit2:
                        acc[(z, u + v)] ^= 1
        for j in range(len(seq) - 1):
            prod = multiply(seq[j], seq[j + 1])
            if prod is Alg.ZERO:
                continue
            merged = seq[:j] + (prod,) + seq[j + 2 :]
            for (z, v), bit in table.get((x, merged), {}).items():
                if bit:
                    acc[(z, v)] ^= 1
        for (z, v), bit in sorted(acc.items()):
            if bit:
                labels = ",".join(r.label for r in seq)
                problems.append(f"relation ({x}; {labels}) leaves U^{v} {z}")
    return problems


# --- hand-computed examples ------------------------------------------------

_Q31 = [
    ("x1", [], "x6", 1), ("x1", ["1"], "y12", 0), ("x1", ["12"], "x7", 0), ("x1", ["123"], "y7", 1),
    ("x1", ["3", "2", "1"], "y1", 1),
    ("x2", [], "x5", 1), ("x2", ["1"], "y11", 0), ("x2", ["12"], "x6", 0),
    ("x2", ["123", "2", "1"], "y6", 1), ("x2", ["3", "2", "1"], "y2", 1),
    ("x3", [], "x4", 1), ("x3", ["1"], "y10", 0), ("x3", ["12"], "x5", 0),
    ("x3", ["123", "2", "1"], "y5", 1), ("x3", ["3", "2", "1"], "y3", 1),
    ("x4", ["1"], "y9", 0), ("x4", ["12", "1"], "y8", 0), ("x4", ["12", "12", "1"], "y7", 0),
    ("x4", ["3", "2", "1"], "y4", 1),
    ("x5", ["1"], "y8", 1), ("x5", ["12", "1"], "y7", 1), ("x5", ["3", "2", "1"], "y5", 1),
    ("x6", ["1"], "y7", 2), ("x6", ["3", "2", "1"], "y6", 1),
    ("x7", ["3"], "y7", 1),
    ("y1", [], "y6", 1), ("y2", [], "y5", 1), ("y3", [], "y4", 1),
    ("y8", ["2", "1"], "y7", 0),
    ("y9", ["2", "1"], "y8", 0), ("y9", ["2", "12", "1"], "y7", 0),
    ("y10", ["2"], "x5", 0), ("y10", ["23", "2", "1"], "y5", 1), ("y10", [], "y9", 1),
    ("y11", ["2"], "x6", 0), ("y11", ["23", "2", "1"], "y6", 1), ("y11", [], "y8", 2),
    ("y12", ["2"], "x7", 0), ("y12", ["23"], "y7", 1), ("y12", [], "y7", 3),
]

_Q12 = [
    ("x1", [], "x2", 1), ("x1", ["1"], "y8", 0), ("x2", ["1"], "y7", 0), ("x1", ["12"], "x3", 0),
    ("x1", ["123"], "y7", 2), ("x3", ["3"], "y7", 2), ("y8", ["2"], "x3", 0), ("y8", ["23"], "y7", 2),
    ("y8", [], "y7", 2), ("x1", ["123", "2", "1"], "y3", 1), ("x1", ["3", "2", "1"], "y1", 1),
    ("x1", ["3", "2", "12", "1"], "y4", 2), ("x2", ["12", "1"], "y6", 0), ("x2", ["3", "2", "1"], "y2", 1),
    ("x2", ["3", "2", "12", "1"], "y5", 2), ("x3", ["1"], "y6", 1), ("x3", ["3", "2", "1"], "y3", 1),
    ("y1", [], "y2", 1), ("y3", [], "y6", 1), ("y4", [], "y5", 1), ("y7", ["2", "1"], "y6", 0),
    ("y8", ["23", "2", "1"], "y3", 1), ("y1", ["2", "1"], "y4", 1), ("y2", ["2", "1"], "y5", 1),
]

# the drawn part of CFA^-(V, Q_{2,3}); isolated components are omitted there
_Q23_PARTIAL = [
    ("y5", ["2", "1"], "y10", 1), ("y10", [], "y15", 1), ("y5", [], "y16", 2),
    ("x5", ["3", "2", "1"], "y5", 1), ("x5", ["1"], "y16", 2), ("x5", ["3"], "y17", 3),
    ("y20", ["2"], "x5", 0), ("y20", [], "y17", 2), ("y20", ["23"], "y17", 3),
    ("x1", ["123"], "y17", 3), ("x1", ["1"], "y20", 0), ("x1", ["12"], "x5", 0), ("x1", [], "x4", 1),
    ("x1", ["123", "2", "1"], "y5", 1),
    ("y19", ["2"], "x4", 0), ("y19", [], "y18", 1),
    ("x2", ["1"], "y19", 0), ("x2", [], "x3", 1), ("x2", ["12"], "x4", 0),
    ("y16", ["2", "1"], "y15", 0), ("y17", ["2", "12", "1"], "y15", 0), ("y17", ["2", "1"], "y16", 0),
    ("x4", ["1"], "y17", 1), ("x4", ["12", "1"], "y16", 0),
    ("y18", ["2", "1"], "y17", 0), ("x3", ["1"], "y18", 0), ("x3", ["12", "1"], "y17", 0),
]

FIXTURES = {"Q31": ((3, 1), _Q31, True), "Q12": ((1, 2), _Q12, True), "Q23partial": ((2, 3), _Q23_PARTIAL, False)}

# Transcription slips in the hand-computed lists, each detected because the
# listed operation breaks an A-infinity relation that the corrected one
# satisfies: (fixture, listed op, corrected op).
ERRATA: dict[str, list[tuple[tuple, tuple]]] = {
    "Q12": [(("y8", (), "y7", 2), ("y8", (), "y7", 1))],
    "Q23partial": [(("x4", ("12", "1"), "y16", 0), ("x4", ("12", "1"), "y16", 1))],
}

# Operations the generator misses or adds relative to a complete fixture.
EXCEPTIONS: dict[str, dict[str, list[tuple]]] = {}


def fixture(name: str, corrected: bool = False) -> AInftyModule:
    """A hand-computed op list, verbatim unless ``corrected`` applies ERRATA."""
    if name not in FIXTURES:
        raise CfaError(f"unknown fixture {name!r}")
    (m, n), rows, _complete = FIXTURES[name]
    ops = [op(s, r, t, u) for s, r, t, u in rows]
    if corrected:
        fixes = {old: new for old, new in ERRATA.get(name, [])}
        ops = [op(*_unkey(fixes[p.key()])) if p.key() in fixes else p for p in ops]
    return AInftyModule(m, n, generators(m, n), tuple(ops))


def _unkey(k: tuple) -> tuple:
    s, r, t, u = k
    return s, list(r), t, u


def fixture_is_complete(name: str) -> bool:
    return FIXTURES[name][2]


@dataclass(frozen=True)
class Reconciliation:
    name: str
    missing: tuple[tuple, ...]
    extra: tuple[tuple, ...]

    @property
    def ok(self) -> bool:
        return not self.missing and (not self.extra or not fixture_is_complete(self.name))


def reconcile(name: str, corrected: bool = True) -> Reconciliation:
    """Compare ``build_cfa`` with a fixture as op multisets.

    ``missing``: fixture ops the generator does not produce.  ``extra``:
    generated ops absent from the fixture (only meaningful for complete
    fixtures; a partial one is checked for containment).
    """
    fx = fixture(name, corrected)
    built = build_cfa(fx.m, fx.n)
    fkeys = [p.key() for p in fx.ops]
    if len(set(fkeys)) != len(fkeys):
        raise CfaError(f"fixture {name} lists an operation twice")
    bkeys = built.op_keys()
    missing = tuple(k for k in fkeys if k not in bkeys)
    extra = tuple(sorted(bkeys - set(fkeys))) if fixture_is_complete(name) else ()
    return Reconciliation(name, missing, extra)
