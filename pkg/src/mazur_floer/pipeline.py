"""End-to-end tau computation: CFA ⊠ CFD -> graded F_2[U] complex -> tau."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import cfa, cfd, cfk, formulas, homology, pairing
from .homology import Decomposition, GradedUComplex


class PipelineError(RuntimeError):
    """A structural invariant failed (d^2, gradings, free rank)."""

    def __init__(self, module: str, message: str):
        super().__init__(f"[{module}] {message}")
        self.module = module


def load_companion(name: str) -> cfk.SimplifiedModel:
    """Library name, ``syn(tau,eps)``, or a path to a CfkComplex JSON file."""
    path = Path(name)
    if name.endswith(".json") or path.is_file():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise cfk.CfkError(f"cannot read companion {name!r}: {exc}") from exc
        return cfk.simplify(cfk.CfkComplex.from_json(data), path.stem)
    return cfk.model(name)


@dataclass(frozen=True)
class TensorResult:
    complex: GradedUComplex
    decomposition: Decomposition
    free_generator: tuple[str, str]


def tensor_complex(m: int, n: int, companion: cfk.SimplifiedModel, raw_cfa: bool = False) -> GradedUComplex:
    A = cfa.build_cfa(m, n)
    if not raw_cfa:
        A = cfa.change_of_basis(A)
    D = cfd.build_cfd(companion)
    c = pairing.box_tensor(A, D)
    bad = c.d_squared()
    if bad:
        raise PipelineError("pairing", f"d^2 != 0 on {len(bad)} entries, e.g. {next(iter(bad))}")
    g = pairing.assign_gradings(c, m, n, D)
    if g.grading_violations():
        raise PipelineError("pairing", f"grading violations: {g.grading_violations()[:3]}")
    return g


def tensor_homology(m: int, n: int, companion: cfk.SimplifiedModel, raw_cfa: bool = False) -> TensorResult:
    g = tensor_complex(m, n, companion, raw_cfa)
    survivors: list = []
    dec = homology.reduce(g, survivors=survivors)
    if len(dec.free) != 1:
        raise PipelineError("homology", f"free rank {len(dec.free)} (expected 1)")
    if g.grading.get(survivors[0]) is None:
        raise PipelineError("homology", f"free generator {survivors[0]} lies in an ungraded component")
    return TensorResult(g, dec, survivors[0])


def assigned_part(c: GradedUComplex) -> GradedUComplex:
    """The direct summand spanned by the components with absolute gradings."""
    keep = [g for g in c.gens if c.grading.get(g) is not None]
    ks = set(keep)
    arrows = {(s, t): p for (s, t), p in c.arrows.items() if s in ks and t in ks}
    if any((s in ks) != (t in ks) for s, t in c.arrows):
        raise PipelineError("pairing", "graded and ungraded generators share an arrow")
    return GradedUComplex(gens=keep, arrows=arrows, grading={g: c.grading[g] for g in keep})


def extremal_hat_grading(m: int, n: int, companion: cfk.SimplifiedModel, raw_cfa: bool = False) -> int:
    """max |A| over the support of HFK-hat on the graded part of the tensor complex."""
    g = tensor_complex(m, n, companion, raw_cfa)
    dims = homology.truncated_dimensions(homology.reduce(assigned_part(g)), 1)
    return max(abs(a) for a in dims)


@dataclass
class RunResult:
    m: int
    n: int
    companion: str
    tau_pipeline: int
    tau_formula: int | None
    epsilon_formula: int
    epsilon_cfk: int | None
    agree: bool
    generator_counts: dict = field(default_factory=dict)
    timing: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "RunResult":
        return cls(**data)


def compute(m: int, n: int, companion: str, raw_cfa: bool = False, formula_check: bool = True) -> RunResult:
    start = time.perf_counter()
    model = load_companion(companion)
    res = tensor_homology(m, n, model, raw_cfa)
    tau = homology.tau_from_decomposition(res.decomposition)
    tf = formulas.tau_formula((m, n), model.tau, model.epsilon) if formula_check else None
    counts = {
        "cfa": len(cfa.generators(m, n)),
        "cfd": sum(1 for _ in cfd.build_cfd(model).gens),
        "tensor": len(res.complex.gens),
        "ungraded": len(res.complex.unassigned()),
    }
    return RunResult(
        m=m,
        n=n,
        companion=model.name or companion,
        tau_pipeline=tau,
        tau_formula=tf,
        epsilon_formula=formulas.epsilon_formula((m, n), model.tau, model.epsilon),
        epsilon_cfk=cfk.epsilon_from_cfk(model.complex),
        agree=(tf is None or tau == tf),
        generator_counts=counts,
        timing=round(time.perf_counter() - start, 4),
    )


def default_companions() -> list[str]:
    return list(cfk.LIBRARY) + [cfk.synthetic_name(t, e) for t, e in cfk.SYNTHETIC_GRID]
