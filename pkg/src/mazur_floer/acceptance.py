"""Acceptance checks shared by the test suite and ``mazur-floer verify``.

Each check returns a CheckResult; none of them raise on a failed
comparison, so a report always lists every criterion.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import bridge, cfa, cfk, formulas, homology, oracle, pipeline


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"criterion {self.number}: {'PASS' if self.ok else 'FAIL'} - {self.title} ({self.detail})"


GRID = [(m, n) for m in range(1, 5) for n in range(1, 5)]


def _grid_taus(raw_cfa: bool) -> dict[tuple[int, int, str], int]:
    out = {}
    for name in pipeline.default_companions():
        model = cfk.model(name)
        for m, n in GRID:
            res = pipeline.tensor_homology(m, n, model, raw_cfa)
            out[(m, n, name)] = homology.tau_from_decomposition(res.decomposition)
    return out


def check_formula_grid() -> CheckResult:
    start = time.perf_counter()
    companions = pipeline.default_companions()
    taus = _grid_taus(raw_cfa=False)
    bad = []
    for (m, n, name), tau in taus.items():
        model = cfk.model(name)
        want = formulas.tau_formula((m, n), model.tau, model.epsilon)
        if tau != want:
            bad.append(f"{name} ({m},{n}): {tau} vs {want}")
    branches = {(_sign(cfk.model(c).tau), cfk.model(c).epsilon) for c in companions}
    elapsed = time.perf_counter() - start
    ok = not bad and len(companions) >= 12 and len(branches) == 7 and elapsed < 60
    detail = f"{len(taus)} cases, {len(companions)} companions, {len(branches)} (sign tau, eps) branches, {elapsed:.1f}s"
    return CheckResult(1, "pipeline tau equals the closed formula", ok, detail + ("; " + "; ".join(bad[:5]) if bad else ""))


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def check_anchors() -> CheckResult:
    t = pipeline.compute(2, 1, "T23").tau_pipeline
    unknot = cfk.model("unknot")
    nonzero = [
        (m, n)
        for m, n in GRID
        if homology.tau_from_decomposition(pipeline.tensor_homology(m, n, unknot).decomposition) != 0
    ]
    return CheckResult(2, "tau(Q21(T23)) = 2 and unknot companions give 0", t == 2 and not nonzero,
                       f"tau(Q21(T23)) = {t}; unknot failures {nonzero}")


def check_cfa_fixtures() -> CheckResult:
    notes = []
    ok = True
    for name in ("Q31", "Q12", "Q23partial"):
        rec = cfa.reconcile(name, corrected=True)
        ok &= rec.ok and not rec.missing and not rec.extra
        raw = cfa.reconcile(name, corrected=False)
        listed = {old for old, _ in cfa.ERRATA.get(name, [])}
        ok &= set(raw.missing) == listed
        notes.append(f"{name}: {len(cfa.fixture(name).ops)} ops, {len(listed)} erratum")
    ok &= not cfa.EXCEPTIONS
    return CheckResult(3, "generated CFA matches the hand-computed op lists", ok, "; ".join(notes))


def check_pairing_invariants() -> CheckResult:
    count = 0
    problems = []
    for raw in (False, True):
        for name in pipeline.default_companions():
            model = cfk.model(name)
            for m, n in GRID:
                try:
                    pipeline.tensor_homology(m, n, model, raw)
                    count += 1
                except (pipeline.PipelineError, homology.ReductionError) as exc:
                    problems.append(f"{name} ({m},{n}): {exc}")
    return CheckResult(4, "d^2 = 0, graded arrows compatible, free rank 1", not problems,
                       f"{count} complexes" + ("; " + "; ".join(problems[:3]) if problems else ""))


# (tau, eps) inputs covered by each fixture's hypotheses
FIXTURE_CASES = {"fig25": [(1, 1)], "fig27": [(0, -1), (1, -1)], "fig29": [(0, 1), (-1, 1)], "fig31": [(-1, -1)]}


def check_epsilon_engine() -> CheckResult:
    t23 = cfk.LIBRARY["T23"]()
    ok = cfk.epsilon_from_cfk(t23) == 1 and cfk.tau_from_cfk(t23) == 1
    bad = []
    for name, cases in FIXTURE_CASES.items():
        for m, n in [(2, 1), (3, 2), (2, 2)]:
            c = cfk.fixture(name, m, n)
            eps = cfk.vertical_classify(c, cfk.FIXTURE_CYCLES[name](n))
            if eps != 1 or any(formulas.epsilon_formula((m, n), t, e) != eps for t, e in cases):
                bad.append(f"{name} ({m},{n}) -> {eps}")
    ok &= not bad
    return CheckResult(5, "epsilon engine on T23 and the satellite subcomplexes", ok,
                       "12 fixture runs" + ("; " + ", ".join(bad) if bad else ""))


def check_bridge() -> CheckResult:
    bad = []
    for m in range(1, 11):
        for n in range(1, 11):
            b = bridge.schubert_qmn(m, n)
            if bridge.bridge_from_rs(*bridge.rs_params(m, n)) != b:
                bad.append(f"rs ({m},{n})")
            if bridge.fraction_to_schubert(bridge.ConwayTangle([2 * n, 1, 2 * m])) != b:
                bad.append(f"tangle ({m},{n})")
            if not bridge.isotopic(b, bridge.schubert_qmn(n, m)):
                bad.append(f"symmetry ({m},{n})")
    whitehead = bridge.fraction_to_schubert(bridge.ConwayTangle([2, 1, 2])) == bridge.SchubertForm(8, 3)
    return CheckResult(6, "two-bridge identities for m, n <= 10", whitehead and not bad,
                       f"300 identities, C(2,1,2) -> b(8,3): {whitehead}" + ("; " + ", ".join(bad[:5]) if bad else ""))


def check_genus() -> CheckResult:
    t23 = cfk.model("T23")
    got = {}
    for m, n in [(2, 1), (3, 1), (3, 2), (2, 2)]:
        got[(m, n)] = pipeline.extremal_hat_grading(m, n, t23)
    ok = all(g == m for (m, _n), g in got.items())
    return CheckResult(7, "extremal HFK-hat grading recovers genus m", ok,
                       ", ".join(f"({m},{n}) -> {g}" for (m, n), g in got.items()))


def check_homology_oracle(samples: int = 150, seed: int = 20240611) -> CheckResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        c, truth = oracle.random_graded_complex(rng, max_gens=8)
        d = homology.reduce(c)
        if d != truth or any(
            homology.truncated_dimensions(d, N) != oracle.brute_force_truncated(c, N) for N in range(1, 7)
        ):
            bad += 1
    return CheckResult(8, "reduction agrees with the truncation oracle", bad == 0,
                       f"{samples} random complexes, N = 1..6, {bad} mismatches")


def check_change_of_basis() -> CheckResult:
    a, b = _grid_taus(False), _grid_taus(True)
    diff = [k for k in a if a[k] != b[k]]
    return CheckResult(9, "tau is unchanged by the change of basis", not diff,
                       f"{len(a)} cases" + (f"; differ at {diff[:5]}" if diff else ""))


CHECKS: list[Callable[[], CheckResult]] = [
    check_formula_grid,
    check_anchors,
    check_cfa_fixtures,
    check_pairing_invariants,
    check_epsilon_engine,
    check_bridge,
    check_genus,
    check_homology_oracle,
    check_change_of_basis,
]


def run_all() -> list[CheckResult]:
    results = []
    for i, check in enumerate(CHECKS, start=1):
        try:
            results.append(check())
        except Exception as exc:  # a crash is reported as a failed criterion
            results.append(CheckResult(i, check.__name__, False, f"raised {type(exc).__name__}: {exc}"))
    return results
