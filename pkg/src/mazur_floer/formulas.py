"""Closed formulas for tau and epsilon of satellites, plus genus and winding."""

from __future__ import annotations

from dataclasses import dataclass


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class PatternParams:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise FormulaError("m and n must be positive")


def _params(p: PatternParams | tuple[int, int]) -> PatternParams:
    return p if isinstance(p, PatternParams) else PatternParams(*p)


def _check(tau: int, eps: int) -> None:
    if eps not in (-1, 0, 1):
        raise FormulaError(f"epsilon must be -1, 0 or 1, got {eps}")
    if eps == 0 and tau != 0:
        raise FormulaError("epsilon = 0 forces tau = 0")


def tau_formula(p: PatternParams | tuple[int, int], tau: int, eps: int) -> int:
    """tau(Q_{m,n}(K)) in terms of tau(K) and epsilon(K)."""
    p = _params(p)
    _check(tau, eps)
    m, n = p.m, p.n
    if m == n:
        if tau < 0:
            return 0
        if tau > 0:
            return m
        # tau = 0: only epsilon = -1 lifts the tower (eps = 0 is the unknot's class)
        return m - 1 if eps == -1 else 0
    d = abs(m - n)
    if tau <= 0 and eps in (0, 1):
        return d * tau
    if tau < 0 and eps == -1:
        return d * tau + d
    if tau > 0 and eps == 1:
        return d * tau + min(m, n)
    # tau >= 0, eps = -1
    return d * tau + max(m, n) - 1


def epsilon_formula(p: PatternParams | tuple[int, int], tau: int, eps: int) -> int:
    _params(p)
    _check(tau, eps)
    return 0 if tau == 0 and eps == 0 else 1


def tau_cable(pq: tuple[int, int], tau: int, eps: int) -> int:
    """Hom's formula for the (p, q)-cable."""
    p, q = pq
    _check(tau, eps)
    if p < 1:
        raise FormulaError("cable parameter p must be positive")
    if eps == 0:
        return (p - 1) * (q - 1) // 2 if q > 0 else (p - 1) * (q + 1) // 2
    return p * tau + (p - 1) * (q - eps) // 2


def epsilon_cable(pq: tuple[int, int], tau: int, eps: int) -> int:
    p, q = pq
    _check(tau, eps)
    if eps != 0:
        return eps
    if abs(q) == 1:
        return 0
    return 1 if q > 1 else -1


def tau_levine(tau: int, eps: int) -> int:
    """tau of the Mazur pattern satellite Q_{2,1}(K)."""
    _check(tau, eps)
    return tau + 1 if (tau > 0 or eps == -1) else tau


def winding(p: PatternParams | tuple[int, int]) -> int:
    p = _params(p)
    return -(p.m - p.n)


def genus_qmn(p: PatternParams | tuple[int, int]) -> int:
    p = _params(p)
    return min(p.m, p.n)


def genus_satellite(w: int, gK: int, gP: int) -> int:
    if gK < 0 or gP < 0:
        raise FormulaError("genera are nonnegative")
    return abs(w) * gK + gP
