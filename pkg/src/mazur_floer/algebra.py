"""The torus algebra A(T^2) over F_2.

Basis: two idempotents ``i0``, ``i1`` and six Reeb chords ``r1``, ``r2``,
``r3``, ``r12``, ``r23``, ``r123``.  A Reeb chord is an interval of
consecutive labels in {1, 2, 3}; two chords multiply to their union when the
first ends exactly where the second begins, and to zero otherwise.
"""

from __future__ import annotations

import enum
from functools import reduce
from typing import Iterable


class Alg(enum.Enum):
    I0 = "i0"
    I1 = "i1"
    R1 = "r1"
    R2 = "r2"
    R3 = "r3"
    R12 = "r12"
    R23 = "r23"
    R123 = "r123"
    ZERO = "0"

    def __str__(self) -> str:
        return self.value

    @property
    def is_idempotent(self) -> bool:
        return self in (Alg.I0, Alg.I1)

    @property
    def is_reeb(self) -> bool:
        return self.value.startswith("r")

    @property
    def label(self) -> str:
        """Chord label without the ``r`` prefix, e.g. ``"12"``."""
        if not self.is_reeb:
            raise ValueError(f"{self} is not a Reeb element")
        return self.value[1:]

    @classmethod
    def parse(cls, s: str | int) -> "Alg":
        """Accept ``"r12"``, ``"12"``, ``12``, ``"i0"`` or ``"0"``."""
        s = str(s)
        if s in _BY_VALUE:
            return _BY_VALUE[s]
        if "r" + s in _BY_VALUE:
            return _BY_VALUE["r" + s]
        raise ValueError(f"unknown algebra element {s!r}")


_BY_VALUE = {a.value: a for a in Alg}

REEB = (Alg.R1, Alg.R2, Alg.R3, Alg.R12, Alg.R23, Alg.R123)
IDEMPOTENTS = (Alg.I0, Alg.I1)


def _interval(a: Alg) -> tuple[int, int]:
    lab = a.label
    return int(lab[0]), int(lab[-1])


def _chord(lo: int, hi: int) -> Alg:
    return Alg("r" + "".join(str(i) for i in range(lo, hi + 1)))


def idempotent_pair(a: Alg) -> tuple[Alg, Alg]:
    """Return ``(left, right)`` idempotents with ``left * a * right == a``."""
    if not a.is_reeb:
        raise ValueError(f"idempotent_pair needs a Reeb element, got {a}")
    lo, hi = _interval(a)
    left = Alg.I1 if lo == 2 else Alg.I0
    right = Alg.I0 if hi == 2 else Alg.I1
    return left, right


def left_idempotent(a: Alg) -> Alg:
    if a.is_idempotent:
        return a
    return idempotent_pair(a)[0]


def right_idempotent(a: Alg) -> Alg:
    if a.is_idempotent:
        return a
    return idempotent_pair(a)[1]


def multiply(a: Alg, b: Alg) -> Alg:
    if a is Alg.ZERO or b is Alg.ZERO:
        return Alg.ZERO
    if a.is_idempotent and b.is_idempotent:
        return a if a is b else Alg.ZERO
    if a.is_idempotent:
        return b if left_idempotent(b) is a else Alg.ZERO
    if b.is_idempotent:
        return a if right_idempotent(a) is b else Alg.ZERO
    lo1, hi1 = _interval(a)
    lo2, hi2 = _interval(b)
    if hi1 + 1 == lo2:
        return _chord(lo1, hi2)
    return Alg.ZERO


def sequence_product(seq: Iterable[Alg]) -> Alg:
    seq = list(seq)
    if not seq:
        raise ValueError("sequence_product needs a nonempty sequence")
    return reduce(multiply, seq)


def chains(seq: Iterable[Alg]) -> bool:
    """True when consecutive elements have matching idempotents."""
    seq = list(seq)
    return all(right_idempotent(a) is left_idempotent(b) for a, b in zip(seq, seq[1:]))
