"""Two-bridge links attached to the patterns Q_{m,n}.

A 2-bridge link is stored in Schubert normal form ``b(p, q)`` with the
residue ``0 < q < p``; ``str`` shows the symmetric window ``|q| <= p/2``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class BridgeError(ValueError):
    pass


@dataclass(frozen=True)
class SchubertForm:
    p: int
    q: int

    def __post_init__(self):
        if self.p <= 0:
            raise BridgeError("p must be positive")
        if self.p == 1:
            object.__setattr__(self, "q", 1)
            return
        q = self.q % self.p
        if math.gcd(q, self.p) != 1:
            raise BridgeError(f"q = {self.q} is not coprime to p = {self.p}")
        object.__setattr__(self, "q", q)

    @property
    def components(self) -> int:
        return 2 if self.p % 2 == 0 else 1

    def display_q(self) -> int:
        if self.p == 1:
            return 1
        return self.q - self.p if 2 * self.q > self.p else self.q

    def __str__(self) -> str:
        return f"b({self.p},{self.display_q()})"

    @classmethod
    def parse(cls, text: str) -> "SchubertForm":
        mt = re.fullmatch(r"\s*b\(\s*(\d+)\s*,\s*(-?\d+)\s*\)\s*", text)
        if not mt:
            raise BridgeError(f"cannot parse Schubert form {text!r}")
        return cls(int(mt[1]), int(mt[2]))


@dataclass(frozen=True)
class ConwayTangle:
    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Sequence[int]):
        coeffs = tuple(int(a) for a in coefficients)
        if not coeffs:
            raise BridgeError("a Conway tangle needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    def value(self) -> Fraction:
        """``1 / (a_1 + 1 / (a_2 + ... + 1 / a_k))``."""
        x = Fraction(self.coefficients[-1])
        for a in reversed(self.coefficients[:-1]):
            if x == 0:
                raise BridgeError("continued fraction divides by zero")
            x = a + 1 / x
        if x == 0:
            raise BridgeError("continued fraction divides by zero")
        return 1 / x

    def __str__(self) -> str:
        return "C(" + ",".join(map(str, self.coefficients)) + ")"

    @classmethod
    def parse(cls, text: str) -> "ConwayTangle":
        mt = re.fullmatch(r"\s*C\(([-\d,\s]+)\)\s*", text)
        if not mt:
            raise BridgeError(f"cannot parse Conway tangle {text!r}")
        try:
            return cls([int(t) for t in mt[1].split(",")])
        except ValueError as exc:
            raise BridgeError(f"cannot parse Conway tangle {text!r}") from exc


def fraction_to_schubert(t: ConwayTangle) -> SchubertForm:
    v = t.value()
    return SchubertForm(abs(v.denominator), v.numerator if v.denominator > 0 else -v.numerator)


def schubert_qmn(m: int, n: int) -> SchubertForm:
    _positive(m, n)
    return SchubertForm(4 * m * n + 2 * n + 2 * m, 2 * m + 1)


def isotopic(b1: SchubertForm, b2: SchubertForm) -> bool:
    """Schubert's classification: ``p`` agrees and ``q' = q^{+-1} mod p``."""
    if b1.p != b2.p:
        return False
    p = b1.p
    return (b1.q - b2.q) % p == 0 or (b1.q * b2.q - 1) % p == 0


def rs_params(m: int, n: int) -> tuple[int, int]:
    _positive(m, n)
    return m + 1, -(2 * m * n + n - m - 2)


def bridge_from_rs(r: int, s: int) -> SchubertForm:
    if r == 0:
        raise BridgeError("r must be nonzero")
    sign = 1 if r > 0 else -1
    return SchubertForm(2 * abs(s) + 4 * abs(r), sign * (2 * abs(r) - 1))


STRAND_TYPES = ("T/L", "T/R", "B/L", "B/L/W", "B/M", "B/R", "V/L", "V/R")

# how often a strand of each type meets the (alpha_1, alpha_2) arcs
_ENDPOINTS = {
    "T/L": (1, 1), "T/R": (1, 1), "B/R": (1, 1), "B/L": (1, 1), "B/L/W": (1, 1),
    "B/M": (0, 2), "V/L": (0, 2), "V/R": (0, 2),
}


@dataclass(frozen=True)
class DiagramParams:
    m: int
    n: int
    r: int
    s: int
    strand_counts: dict[str, int] = field(hash=False)

    def _points(self, which: int) -> int:
        ends = sum(self.strand_counts.get(t, 0) * _ENDPOINTS[t][which] for t in STRAND_TYPES)
        # opposite alpha arcs are identified, so every point is counted twice
        if ends % 2:
            raise BridgeError("odd number of strand endpoints on an alpha arc")
        return ends // 2

    @property
    def vertical_intersections(self) -> int:
        return self._points(0)

    @property
    def horizontal_intersections(self) -> int:
        return self._points(1)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "strands": {t: self.strand_counts[t] for t in STRAND_TYPES if self.strand_counts.get(t)},
            "intersections": {"vertical": self.vertical_intersections, "horizontal": self.horizontal_intersections},
        }

    @classmethod
    def from_json(cls, data: dict) -> "DiagramParams":
        unknown = set(data["strands"]) - set(STRAND_TYPES)
        if unknown:
            raise BridgeError(f"unknown strand types {sorted(unknown)}")
        return cls(data["m"], data["n"], data["r"], data["s"], dict(data["strands"]))


def strand_counts(m: int, n: int) -> DiagramParams:
    """Strand census of the inductively built diagram H_{m,n}."""
    _positive(m, n)
    c: Counter = Counter({"T/L": 2, "T/R": 2, "B/L/W": 1, "B/M": 1, "B/R": 1})
    # H_{m,1}
    c.update({"T/L": 2 * (m - 1), "T/R": m - 1, "B/R": m - 1, "V/R": m - 1, "B/M": m - 1})
    if n >= 2:
        # the B/L/W strand is pushed through rho_3 into a rainbow
        c["B/M"] += c.pop("B/L/W")
        c.update({"T/L": 1, "V/R": 1, "V/L": 2 * m})
        c.update({"V/L": (2 * m + 1) * (n - 2), "V/R": n - 2})
    r, s = rs_params(m, n)
    return DiagramParams(m, n, r, s, {t: c[t] for t in STRAND_TYPES if c[t]})


def _positive(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise BridgeError("m and n must be positive")
