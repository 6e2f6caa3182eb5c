"""Command-line interface: ``mazur-floer {compute,sweep,bridge,cfa,cfd,epsilon,verify}``.

Exit codes: 0 ok, 1 a computed tau disagrees with the formula,
2 bad input, 3 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__, acceptance, bridge, cfa, cfd, cfk, formulas, homology, pairing, pipeline

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

INPUT_ERRORS = (
    cfk.CfkError,
    cfa.CfaError,
    cfd.CfdError,
    bridge.BridgeError,
    formulas.FormulaError,
    FileNotFoundError,
)
INTERNAL_ERRORS = (pipeline.PipelineError, pairing.PairingError, homology.ReductionError)

COLUMNS = ["m", "n", "companion", "tau_pipeline", "tau_formula", "epsilon_formula", "epsilon_cfk", "agree"]


def parse_range(text: str) -> list[int]:
    """``3`` -> [3]; ``1:4`` -> [1, 2, 3, 4]; ``1,3`` -> [1, 3]."""
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from exc


def parse_companions(text: str) -> list[str]:
    # split on commas outside parentheses so syn(1,-1) survives
    out, depth, cur = [], 0, ""
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [c.strip() for c in out if c.strip()]


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
    for r in rows:
        lines.append("| " + " | ".join("" if r.get(c) is None else str(r.get(c)) for c in COLUMNS) + " |")
    return "\n".join(lines)


def _emit(payload, args) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if getattr(args, "json", None):
        data = payload if not isinstance(payload, str) else {"text": payload}
        Path(args.json).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _run_case(case: tuple[int, int, str, bool, bool]) -> dict:
    m, n, name, raw, check = case
    r = pipeline.compute(m, n, name, raw_cfa=raw, formula_check=check).to_json()
    r.pop("timing")  # keep sweep output byte-for-byte reproducible
    return r


def cmd_compute(args) -> int:
    r = pipeline.compute(args.m, args.n, args.companion, raw_cfa=args.raw_cfa, formula_check=not args.no_formula_check)
    row = r.to_json()
    if args.format == "json":
        _emit(row, args)
    else:
        print(render([row], args.format))
        if args.json:
            Path(args.json).write_text(json.dumps(row, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if r.agree else EXIT_DISAGREE


def cmd_sweep(args) -> int:
    companions = parse_companions(args.companions) if args.companions is not None else pipeline.default_companions()
    cases = [(m, n, c, args.raw_cfa, not args.no_formula_check) for m in args.m for n in args.n for c in companions]
    if args.parallel and args.parallel > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            rows = list(pool.map(_run_case, cases))
    else:
        rows = [_run_case(c) for c in cases]
    rows.sort(key=lambda r: (r["m"], r["n"], companions.index(r["companion"]) if r["companion"] in companions else 0))
    text = render(rows, args.format)
    print(text)
    if args.json:
        Path(args.json).write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_DISAGREE


def cmd_bridge(args) -> int:
    d = bridge.strand_counts(args.m, args.n)
    b = bridge.schubert_qmn(args.m, args.n)
    payload = {
        "schubert": str(b),
        "conway": str(bridge.ConwayTangle([2 * args.n, 1, 2 * args.m])),
        "from_rs": str(bridge.bridge_from_rs(d.r, d.s)),
        "isotopic_to_swap": bridge.isotopic(b, bridge.schubert_qmn(args.n, args.m)),
        "components": b.components,
        "diagram": d.to_json(),
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_cfa(args) -> int:
    module = cfa.fixture(args.fixture) if args.fixture else cfa.build_cfa(args.m, args.n)
    if args.change_of_basis:
        module = cfa.change_of_basis(module)
    _emit(module.to_json(), args)
    print(f"{len(module.ops)} ops", file=sys.stderr)
    return EXIT_OK


def cmd_cfd(args) -> int:
    model = pipeline.load_companion(args.companion)
    _emit(cfd.build_cfd(model).to_json(), args)
    return EXIT_OK


def cmd_epsilon(args) -> int:
    if args.target in cfk.FIXTURE_CYCLES:
        if args.m is None or args.n is None:
            raise cfk.CfkError("fixture runs need --m and --n")
        c = cfk.fixture(args.target, args.m, args.n, args.k)
        payload = {
            "fixture": args.target,
            "m": args.m,
            "n": args.n,
            "cycle": cfk.FIXTURE_CYCLES[args.target](args.n),
            "vertical_class": cfk.vertical_classify(c, cfk.FIXTURE_CYCLES[args.target](args.n)),
        }
    else:
        model = pipeline.load_companion(args.target)
        payload = {
            "companion": model.name,
            "tau": cfk.tau_from_cfk(model.complex),
            "epsilon": cfk.epsilon_from_cfk(model.complex),
        }
    _emit(payload, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = acceptance.run_all()
    for r in results:
        print(r.line())
    if args.json:
        Path(args.json).write_text(
            json.dumps([{"criterion": r.number, "ok": r.ok, "detail": r.detail} for r in results], indent=2) + "\n"
        )
    return EXIT_OK if all(r.ok for r in results) else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mazur-floer", description="tau and epsilon of generalized Mazur satellites")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=False):
        sp.add_argument("--json", metavar="PATH", help="also write the result as JSON to PATH")
        if fmt:
            sp.add_argument("--format", choices=["md", "csv", "json"], default="md")
            sp.add_argument("--no-formula-check", action="store_true", help="skip the closed-formula comparison")
            sp.add_argument("--raw-cfa", action="store_true", help="skip the change of basis on CFA")

    sp = sub.add_parser("compute", help="tau of one satellite")
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("companion", help="library name, syn(tau,eps), or a CfkComplex JSON file")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("sweep", help="tau over a grid of patterns and companions")
    sp.add_argument("--m", type=parse_range, default=parse_range("1:3"))
    sp.add_argument("--n", type=parse_range, default=parse_range("1:3"))
    sp.add_argument("--companions", help="comma-separated; default: library plus synthetic models")
    sp.add_argument("--parallel", type=int, default=1, metavar="K")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bridge", help="two-bridge data of Q_{m,n}")
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    common(sp)
    sp.set_defaults(func=cmd_bridge)

    sp = sub.add_parser("cfa", help="dump CFA^-(V, Q_{m,n}) as JSON")
    sp.add_argument("m", type=int, nargs="?")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--fixture", choices=sorted(cfa.FIXTURES))
    sp.add_argument("--change-of-basis", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_cfa)

    sp = sub.add_parser("cfd", help="dump CFD of a companion complement as JSON")
    sp.add_argument("companion")
    common(sp)
    sp.set_defaults(func=cmd_cfd)

    sp = sub.add_parser("epsilon", help="epsilon of a companion, or the vertical class of a satellite subcomplex")
    sp.add_argument("target", help="companion, or one of " + ", ".join(cfk.FIXTURE_CYCLES))
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_epsilon)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "cfa" and not args.fixture and (args.m is None or args.n is None):
        parser.error("cfa needs M N or --fixture")
    try:
        return args.func(args)
    except INTERNAL_ERRORS as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
