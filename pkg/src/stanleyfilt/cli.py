"""Command line interface.

Exit status: 0 valid witness, 1 verified invalid, 2 construction failure,
3 usage, parse or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import PROFILES, corpus
from .decomposition import (
    DecompositionError,
    associated_primes,
    dimension_filtration,
    irreducible_decomposition,
)
from .filtration import (
    DEFAULT_NODE_BUDGET,
    SCHEMA_VERSION,
    ConstructionError,
    PreconditionError,
    PrimeFiltration,
    _all_height_two,
    lemma2_filtration,
    pretty_clean_search,
    theorem_main_filtration,
    verify_filtration,
)
from .homological import depth_report
from .monomial import MonomialIdeal, ParseError, format_ideal, infer_n, parse_ideal
from .stanley import (
    DEFAULT_CELL_BUDGET,
    OracleBudgetExceeded,
    StanleyDecomposition,
    sdepth_oracle,
    stanley_certificate,
    stanley_from_filtration,
    verify_stanley,
)

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_USAGE = 0, 1, 2, 3

COMMANDS = ("decompose", "ass", "depth", "dimfilt", "filtrate", "stanley", "verify", "oracle", "corpus")


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    input: str | None = None
    seed: int = 0
    format: str = "text"
    budget_cells: int = DEFAULT_CELL_BUDGET
    budget_nodes: int = DEFAULT_NODE_BUDGET
    profile: str = "any"
    count: int = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stanleyfilt", description="Prime filtrations and Stanley decompositions of monomial ideals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "verify":
            p.add_argument("input", help="file with a serialized filtration or decomposition ('-' for stdin)")
        elif name != "corpus":
            p.add_argument("input", nargs="?", help="ideal such as '(x1^2*x2, x3*x4)'; read from stdin if omitted")
        p.add_argument("-n", "--n", type=int, help="number of variables (inferred from the ideal if omitted)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--budget-cells", type=int, default=DEFAULT_CELL_BUDGET)
        p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
        p.add_argument("--profile", choices=PROFILES, default="any")
        p.add_argument("--count", type=int, default=10)
    return parser


def _read_input(cfg: RunConfig) -> str:
    if cfg.input is None or cfg.input == "-":
        return sys.stdin.read()
    return cfg.input


def _ideal(cfg: RunConfig) -> MonomialIdeal:
    text = _read_input(cfg).strip()
    n = cfg.n if cfg.n is not None else infer_n(text)
    return parse_ideal(text, n)


def _emit(cfg: RunConfig, payload: dict, text: str) -> str:
    if cfg.format == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, "command": cfg.command, **payload}, indent=2)
    return text.rstrip("\n")


def _filtrate(I: MonomialIdeal, budget: int) -> tuple[PrimeFiltration, str]:
    if I.n <= 5 and _all_height_two(I):
        return lemma2_filtration(I), "lemma2"
    if I.n == 4:
        return theorem_main_filtration(I), "theorem_main"
    return pretty_clean_search(I, node_budget=budget), "pretty_clean_search"


def _run_verify(cfg: RunConfig) -> tuple[int, str]:
    text = _read_input(cfg) if cfg.input == "-" else Path(cfg.input).read_text()
    if any(line.strip().startswith("ideal") for line in text.splitlines()):
        D = StanleyDecomposition.from_text(text)
        R = verify_stanley(D)
        lines = [f"valid decomposition: {R.is_valid_decomposition}"]
        if R.failure_witness is not None:
            lines.append(f"witness multidegree: {list(R.failure_witness)} covered {R.failure_coverage} times")
        lines += [f"sdepth: {R.sdepth_of_decomposition}", f"depth: {R.depth}", f"stanley witness: {R.is_stanley_witness}"]
        out = _emit(cfg, {"report": R.as_dict(), "decomposition": D.to_text()}, "\n".join(lines))
        return (EXIT_OK if R.is_valid_decomposition else EXIT_INVALID), out
    F = PrimeFiltration.from_text(text)
    rep = verify_filtration(F)
    lines = [f"valid: {rep.valid}"]
    if rep.failure is not None:
        lines.append(f"failure at step {rep.failure[0]}: {rep.failure[1]}")
    lines += [
        f"supp: {', '.join(str(P) for P in rep.supp)}",
        f"pretty clean: {rep.is_pretty_clean}",
        f"clean: {rep.is_clean}",
        f"max height: {rep.max_height}",
        f"min factor dim: {rep.min_factor_dim}",
    ]
    out = _emit(cfg, {"report": rep.as_dict(), "filtration": F.to_text()}, "\n".join(lines))
    return (EXIT_OK if rep.valid else EXIT_INVALID), out


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, output text)."""
    if cfg.command == "corpus":
        if cfg.n is None:
            raise UsageError("corpus needs --n")
        ideals = [format_ideal(I) for I in corpus(cfg.n, cfg.count, cfg.profile, cfg.seed)]
        return EXIT_OK, _emit(cfg, {"n": cfg.n, "profile": cfg.profile, "seed": cfg.seed, "ideals": ideals}, "\n".join(ideals))
    if cfg.command == "verify":
        return _run_verify(cfg)

    I = _ideal(cfg)
    head = {"n": I.n, "ideal": format_ideal(I)}
    if cfg.command == "decompose":
        comps = irreducible_decomposition(I)
        text = "\n".join(str(Q) for Q in comps) + f"\ns = {len(comps)}"
        return EXIT_OK, _emit(cfg, {**head, "components": [str(Q) for Q in comps], "s": len(comps)}, text)
    if cfg.command == "ass":
        ass = [str(P) for P in associated_primes(I)]
        return EXIT_OK, _emit(cfg, {**head, "associated_primes": ass}, "\n".join(ass))
    if cfg.command == "depth":
        R = depth_report(I)
        text = "\n".join(f"{k}: {v}" for k, v in R.as_dict().items())
        return EXIT_OK, _emit(cfg, {**head, "report": R.as_dict()}, text)
    if cfg.command == "dimfilt":
        chain = [format_ideal(F) for F in dimension_filtration(I)]
        text = "\n".join(f"F{k} = {c}" for k, c in enumerate(chain))
        return EXIT_OK, _emit(cfg, {**head, "chain": chain}, text)
    if cfg.command == "filtrate":
        F, route = _filtrate(I, cfg.budget_nodes)
        rep = verify_filtration(F)
        text = F.to_text() + f"# route: {route}, max height {rep.max_height}, min factor dim {rep.min_factor_dim}"
        out = _emit(cfg, {**head, "route": route, "filtration": F.to_text(), "report": rep.as_dict()}, text)
        return (EXIT_OK if rep.valid else EXIT_INVALID), out
    if cfg.command == "stanley":
        try:
            D, R = stanley_certificate(I)
        except PreconditionError:
            D = stanley_from_filtration(pretty_clean_search(I, node_budget=cfg.budget_nodes))
            R = verify_stanley(D)
        text = D.to_text() + "\n".join(f"# {k}: {v}" for k, v in R.as_dict().items() if k not in ("schema_version", "kind"))
        out = _emit(cfg, {**head, "decomposition": D.to_text(), "report": R.as_dict()}, text)
        return (EXIT_OK if R.is_stanley_witness else EXIT_INVALID), out
    if cfg.command == "oracle":
        sd = sdepth_oracle(I, cfg.budget_cells, cfg.budget_nodes * 10)
        depth = depth_report(I).depth
        text = f"sdepth: {sd}\ndepth: {depth}"
        return (EXIT_OK if sd >= depth else EXIT_INVALID), _emit(cfg, {**head, "sdepth": sd, "depth": depth}, text)
    raise UsageError(f"unknown command {cfg.command}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        input=getattr(args, "input", None),
        seed=args.seed,
        format=args.format,
        budget_cells=args.budget_cells,
        budget_nodes=args.budget_nodes,
        profile=args.profile,
        count=args.count,
    )
    try:
        status, out = run(cfg)
    except (UsageError, ParseError, PreconditionError, DecompositionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConstructionError, OracleBudgetExceeded) as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
