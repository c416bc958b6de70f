"""Command-line entry point.

Every subcommand writes one JSON document to stdout; logs go to stderr.
Exit codes: 0 success with a witness, 3 success without one, 1 usage or
input error, 2 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .algebra import DriverHamiltonian, DriverTerm, TermError, dump_terms, hermitian_pair_description, parse_terms
from .caps import HARD_STATE_CAP, CapExceeded
from .feasibility import build_transition_graph, connects_entire_space, enumerate_feasible, is_nontrivial
from .model import ConstraintSet, DomainTag, InstanceError, bitstring, dump_instance, parse_instance
from .reductions import (
    ConsistencyError,
    backmap_solution,
    build_binary_lp,
    forward_propagate,
    oracle_2_or_more,
    oracle_equal_subset_sum,
    oracle_subset_sum,
    parse_subset_instance,
    reduce_2om_to_nontrivial,
    reduce_ess_to_constraint,
    reduce_ss_to_2om,
    reduced_fixture,
)
from .search import find_k_local_drivers, find_two_local_by_columns
from .verify import find_counterexample, has_offdiagonal_term

log = logging.getLogger("driverforge")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2
EXIT_NONE = 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: dict[str, str] = field(default_factory=dict)
    verify_cap: int | None = None
    oracle_cap: int | None = None
    out: Path | None = None
    verbosity: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        for name in ("verify_cap", "oracle_cap"):
            cap = getattr(self, name)
            if cap is not None and cap < 1:
                raise UsageError(f"{name.replace('_', ' ')} must be positive")
        if self.verify_cap is not None and self.verify_cap > HARD_STATE_CAP:
            raise UsageError(f"verify cap is limited to {HARD_STATE_CAP}")
        if self.threads < 1:
            raise UsageError("--threads must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(source: str) -> str:
    """Inline JSON if it looks like an object, otherwise a file path."""
    if source.lstrip().startswith("{"):
        return source
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc


def _load_json(source: str) -> Any:
    try:
        return json.loads(_read(source))
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {source[:40]!r}: {exc}") from exc


def _load_instance(source: str) -> ConstraintSet:
    cs = parse_instance(_load_json(source))
    for i, j in cs.duplicate_rows():
        log.warning("constraint rows %d and %d are identical", i + 1, j + 1)
    return cs


def _load_terms(source: str, n: int) -> DriverHamiltonian:
    H = parse_terms(_load_json(source))
    if H.n != n:
        raise UsageError(f"terms are on {H.n} variables, instance has {n}")
    return H


def _parse_values(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--values must be comma-separated integers, got {text!r}") from exc


def _one_based(idx: Sequence[int]) -> list[int]:
    return [i + 1 for i in idx]


def _term_docs(n: int, terms: Sequence[DriverTerm]) -> list[dict]:
    docs = dump_terms(n, terms)["terms"]
    for doc, t in zip(docs, terms):
        pair = hermitian_pair_description(t)
        doc["operator"] = [pair.term, pair.partner]
    return docs


def cmd_find_drivers(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    cs = _load_instance(args.instance)
    if args.two_local_fast:
        report = find_two_local_by_columns(cs)
    else:
        report = find_k_local_drivers(cs, args.max_weight, workers=cfg.threads)
    log.info("%d candidates checked in %.3fs", report.candidates_checked, report.elapsed)
    if cfg.out is not None:
        cfg.out.write_text(json.dumps(dump_terms(cs.n, report.terms), indent=2) + "\n", encoding="utf-8")
    doc = {
        "k": report.k,
        "candidates_checked": report.candidates_checked,
        "terms": _term_docs(cs.n, report.terms),
    }
    return doc, EXIT_OK if report.terms else EXIT_NONE


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    cs = _load_instance(args.instance)
    H = _load_terms(args.terms, cs.n)
    cex = find_counterexample(H, cs, cfg.verify_cap)
    doc = {
        "commutes": cex is None,
        "offdiagonal": has_offdiagonal_term(H),
        "counterexample": cex.to_dict() if cex else None,
    }
    if args.dense_oracle:
        from .dense import hamiltonian_commutes

        dense = hamiltonian_commutes(H, cs)
        doc["dense_commutes"] = dense
        if dense != doc["commutes"]:
            raise AssertionError("dense commutator disagrees with the transition check")
    return doc, EXIT_OK if cex is None else EXIT_NONE


def cmd_reach(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    cs = _load_instance(args.instance)
    if args.values is not None:
        cs = cs.with_values(_parse_values(args.values))
    H = _load_terms(args.terms, cs.n)
    fs = build_transition_graph(enumerate_feasible(cs, cfg.verify_cap), H.terms)
    report = connects_entire_space(fs)
    doc = {
        "feasible_count": len(fs),
        "nontrivial": is_nontrivial(fs),
        "connected": report.connected,
        "components": list(report.component_sizes),
        "degenerate": report.degenerate,
    }
    return doc, EXIT_OK if doc["nontrivial"] else EXIT_NONE


def cmd_reduce(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    inst = parse_subset_instance(_load_json(args.input))
    if args.kind == "ess-to-ilp":
        return json.loads(dump_instance(reduce_ess_to_constraint(inst))), EXIT_OK
    if args.kind == "ss-to-2om":
        out = reduce_ss_to_2om(inst)
        return {**out.to_dict(), "appended_index": out.n}, EXIT_OK
    if args.kind == "2om-to-nontrivial":
        cs, eigenvalue = reduce_2om_to_nontrivial(inst)
        return {"instance": json.loads(dump_instance(cs)), "spin_eigenvalue": eigenvalue}, EXIT_OK
    layout = build_binary_lp(inst.values)
    return layout.to_dict(), EXIT_OK


def cmd_oracle(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    inst = parse_subset_instance(_load_json(args.input))
    if args.kind == "ess":
        found = oracle_equal_subset_sum(inst.values, cfg.oracle_cap)
        witness = None if found is None else {"A": _one_based(found[0]), "B": _one_based(found[1])}
    else:
        if inst.target is None:
            raise UsageError(f"oracle {args.kind} needs a target")
        if args.kind == "ss":
            found = oracle_subset_sum(inst.values, inst.target, cfg.oracle_cap)
            witness = None if found is None else {"subset": _one_based(found)}
        else:
            found = oracle_2_or_more(inst.values, inst.target, cfg.oracle_cap)
            witness = None if found is None else {"S1": _one_based(found[0]), "S2": _one_based(found[1])}
    return {"witness": witness}, EXIT_OK if witness else EXIT_NONE


def _graph_partition(n: int, cfg: RunConfig) -> dict:
    if n < 2:
        raise UsageError("--n must be at least 2")
    cs = ConstraintSet.from_rows([[1] * n], [n // 2], DomainTag.BINARY01)
    drivers = find_k_local_drivers(cs, 2, workers=cfg.threads).terms
    chain = [DriverTerm(frozenset({i}), frozenset({i + 1})) for i in range(n - 1)]
    space = enumerate_feasible(cs, cfg.verify_cap)
    chained = connects_entire_space(build_transition_graph(space, chain))
    single = build_transition_graph(space, chain[:1])
    return {
        "instance": json.loads(dump_instance(cs)),
        "feasible_states": [bitstring(x, n) for x in space.states],
        "drivers": _term_docs(n, drivers),
        "chain_connectivity": chained.to_dict(),
        "single_term_connectivity": connects_entire_space(single).to_dict(),
    }


def _ess_demo(cfg: RunConfig) -> dict:
    values = (1, 1, 2)
    cs = reduce_ess_to_constraint(parse_subset_instance({"values": list(values)}))
    a, b = oracle_equal_subset_sum(values, cfg.oracle_cap)
    fixture = reduced_fixture()
    mu = forward_propagate(fixture, (1, 1, -1))
    return {
        "values": list(values),
        "oracle": {"A": _one_based(a), "B": _one_based(b)},
        "drivers": _term_docs(cs.n, find_k_local_drivers(cs, 3).terms),
        "reduced_layout": fixture.to_dict(),
        "propagated": list(mu),
        "backmapped": {k: _one_based(v) for k, v in zip("AB", backmap_solution(fixture, mu))},
    }


def cmd_demo(args: argparse.Namespace, cfg: RunConfig) -> tuple[dict, int]:
    if args.example == "graph-partition":
        return _graph_partition(args.n, cfg), EXIT_OK
    return _ess_demo(cfg), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="driverforge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--cap", type=int, help="state-space cap for verify/reach/demo")
    p.add_argument("--oracle-cap", type=int)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fd = sub.add_parser("find-drivers", help="enumerate bounded-weight commuting terms")
    fd.add_argument("--instance", required=True)
    fd.add_argument("--max-weight", type=int, default=2)
    fd.add_argument("--two-local-fast", action="store_true")
    fd.add_argument("--out", type=Path)

    ve = sub.add_parser("verify", help="check that terms commute with the constraints")
    ve.add_argument("--instance", required=True)
    ve.add_argument("--terms", required=True)
    ve.add_argument("--cap", type=int, dest="sub_cap")
    ve.add_argument("--dense-oracle", action="store_true")

    re_ = sub.add_parser("reach", help="feasible-space connectivity under terms")
    re_.add_argument("--instance", required=True)
    re_.add_argument("--terms", required=True)
    re_.add_argument("--values")

    rd = sub.add_parser("reduce", help="run a reduction on a subset instance")
    rd.add_argument("kind", choices=["ess-to-ilp", "ss-to-2om", "2om-to-nontrivial", "ess-to-binary-lp"])
    rd.add_argument("--input", required=True)

    orc = sub.add_parser("oracle", help="exact subset-sum solvers")
    orc.add_argument("kind", choices=["ess", "ss", "2om"])
    orc.add_argument("--input", required=True)

    de = sub.add_parser("demo", help="worked examples")
    de.add_argument("example", choices=["graph-partition", "ess"])
    de.add_argument("--n", type=int, default=4)
    return p


_COMMANDS = {
    "find-drivers": cmd_find_drivers,
    "verify": cmd_verify,
    "reach": cmd_reach,
    "reduce": cmd_reduce,
    "oracle": cmd_oracle,
    "demo": cmd_demo,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig(
            subcommand=args.command,
            inputs={k: getattr(args, k) for k in ("instance", "terms", "input") if getattr(args, k, None)},
            verify_cap=getattr(args, "sub_cap", None) or args.cap,
            oracle_cap=args.oracle_cap,
            out=getattr(args, "out", None),
            verbosity=args.verbose,
            threads=args.threads,
        )
        doc, code = _COMMANDS[args.command](args, cfg)
    except (UsageError, InstanceError, TermError, CapExceeded, ValueError) as exc:
        print(f"driverforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, ConsistencyError) as exc:
        print(f"driverforge: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    try:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the interpreter's flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return code


if __name__ == "__main__":
    sys.exit(main())
