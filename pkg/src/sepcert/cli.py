"""Command-line interface.

Exit codes: 0 for success / Member / true, 2 for NotMember / false / an
invalid certificate, 1 for errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .certificates import (
    CliqueModel,
    SeparatorCertificate,
    TreeDecomposition,
    validate_model,
    validate_separator_certificate,
    validate_tree_decomposition,
)
from .certify import Member, NotMember, certify, validate_witness
from .config import ClassConstants, Config
from .decomposer import DeletionDecomposition, k_bound, low_tw_deletion
from .exactmath import as_fraction
from .generators import KINDS, generate
from .graph import CostAssignment, Graph
from .separator import ClassWitness, PrsParams, weighted_prs
from .subgraph import find_subgraph
from .thin import FragileFamily, NotInClass, ThinDistribution, fragile_family, thin_distribution, validate_thin_distribution

EXIT_OK, EXIT_ERROR, EXIT_NO = 0, 1, 2


def _read_graph(path: str) -> Graph:
    return io.parse_graph(Path(path).read_text())


def _read_costs(path: str | None, n: int) -> CostAssignment | None:
    return None if path is None else io.parse_costs(Path(path).read_text(), n)


def _config(args) -> Config:
    return Config(
        constants=ClassConstants(as_fraction(args.a), as_fraction(args.c_f)),
        small_cap=getattr(args, "small_cap", None),
        large_threshold=getattr(args, "large_threshold", None),
        cg_cap_factor=args.cg_cap,
        dp_budget=args.dp_budget,
        seed=args.seed,
    )


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _summary(obj) -> str:
    if isinstance(obj, SeparatorCertificate):
        return f"separator: |C| = {len(obj.C)}, |M| = {len(obj.M)}, parts = {obj.model.m}, d = {obj.depth}"
    if isinstance(obj, CliqueModel):
        return f"model of K_{obj.m} at depth {obj.depth}, support {len(obj.support)}"
    if isinstance(obj, DeletionDecomposition):
        return f"deletion set |X| = {len(obj.X)}, width {obj.width}, tree depth {obj.tree_depth}"
    if isinstance(obj, ThinDistribution):
        return f"thin distribution: ell = {obj.ell}, support {len(obj.columns)}, max mass {obj.eps}, t = {obj.t}"
    if isinstance(obj, FragileFamily):
        return f"family of {len(obj.dists)} thin distributions"
    if isinstance(obj, NotInClass):
        return f"not in class: model of K_{obj.model.m} exceeds f = {obj.f_value} at ell = {obj.ell}"
    if isinstance(obj, Member):
        return f"Member: c' = {obj.c_prime}, eps' = {obj.eps_prime}"
    if isinstance(obj, NotMember):
        return f"NotMember: witness {type(obj.witness).__name__}"
    return repr(obj)


def _output(args, obj, G: Graph, config: Config | None = None, costs=None) -> None:
    if getattr(args, "json", True):
        _emit(args, io.dumps(obj, config=config, costs=costs, graph=G))
    else:
        _emit(args, _summary(obj) + "\n")


def cmd_separate(args) -> int:
    G = _read_graph(args.graph)
    q = _read_costs(args.costs, G.n) or CostAssignment.uniform(G.n)
    res = weighted_prs(G, q, PrsParams(args.ell, args.m0))
    _output(args, res, G, _config(args), q)
    return EXIT_OK


def cmd_decompose(args) -> int:
    G = _read_graph(args.graph)
    q = _read_costs(args.costs, G.n) or CostAssignment.uniform(G.n)
    res = low_tw_deletion(G, q, args.ell, args.m0)
    _output(args, res, G, _config(args), q)
    return EXIT_OK


def cmd_thin(args) -> int:
    G = _read_graph(args.graph)
    config = _config(args)
    if args.family:
        if args.epsilon is None or args.c is None:
            raise ValueError("--family needs --epsilon and --c")
        res = fragile_family(G, args.c, args.epsilon, config.constants, cap_factor=config.cg_cap_factor)
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / "family.json").write_text(io.dumps(res, config=config, graph=G))
        _output(args, res, G, config)
        return EXIT_NO if isinstance(res, NotInClass) else EXIT_OK
    if args.ell is None:
        raise ValueError("thin-dist needs --ell or --family")
    m0 = args.m0 if args.m0 is not None else G.n + 1
    res = thin_distribution(G, args.ell, m0, cap_factor=config.cg_cap_factor)
    _output(args, res, G, config)
    return EXIT_OK


def _load_family(path: str) -> FragileFamily:
    p = Path(path)
    if p.is_dir():
        p = p / "family.json"
    fam = io.loads(p.read_text())["certificate"]
    if not isinstance(fam, FragileFamily):
        raise ValueError(f"{p} does not hold a distribution family")
    return fam


def cmd_subgraph(args) -> int:
    G = _read_graph(args.graph)
    H = _read_graph(args.pattern)
    config = _config(args)
    if args.family:
        family = _load_family(args.family)
        if family.n != G.n:
            raise ValueError("family was computed for a different graph size")
    else:
        ell = H.n + 1
        family = {ell: thin_distribution(G, ell, G.n + 1, config.cg_cap_factor)} if ell <= G.n else {}
        if any(isinstance(d, CliqueModel) for d in family.values()):
            raise RuntimeError("unexpected clique model while building the distribution")
    res = find_subgraph(H, G, family, engine=args.engine, budget=config.dp_budget)
    _output(args, res, G, config)
    return EXIT_OK if res.found else EXIT_NO


def cmd_certify(args) -> int:
    G = _read_graph(args.graph)
    config = _config(args)
    verdict = certify(G, args.c, args.epsilon, config)
    _output(args, verdict, G, config)
    return EXIT_OK if isinstance(verdict, Member) else EXIT_NO


def _verify_problems(what: str, cert, G: Graph, env: dict) -> list[str]:
    costs = env.get("costs")
    config = env.get("config")
    if what == "separator":
        if isinstance(cert, CliqueModel):
            return validate_model(G, cert)
        if not isinstance(cert, SeparatorCertificate):
            return [f"expected a separator certificate, got {type(cert).__name__}"]
        return validate_separator_certificate(G, cert, costs)
    if what == "model":
        model = cert.model if isinstance(cert, (NotInClass, ClassWitness)) else cert
        if not isinstance(model, CliqueModel):
            return [f"expected a clique model, got {type(cert).__name__}"]
        return validate_model(G, model)
    if what == "td":
        if isinstance(cert, TreeDecomposition):
            return validate_tree_decomposition(G, cert)
        if not isinstance(cert, DeletionDecomposition):
            return [f"expected a tree decomposition, got {type(cert).__name__}"]
        keep = set(range(G.n)) - set(cert.X)
        problems = validate_tree_decomposition(G, cert.td, keep)
        q = costs or CostAssignment.uniform(G.n)
        if q.of(cert.X) * cert.ell >= q.total():
            problems.append("q(X) is not below q(V)/ell")
        if cert.td.width > k_bound(cert.ell, max(1, min(cert.m0, cert.omega_observed)), G.n):
            problems.append("width exceeds k_bound")
        return problems
    if what == "dist":
        if isinstance(cert, ThinDistribution):
            return validate_thin_distribution(G, cert)
        if isinstance(cert, FragileFamily):
            return [f"ell = {ell}: {p}" for ell in cert for p in validate_thin_distribution(G, cert[ell])]
        return [f"expected a thin distribution, got {type(cert).__name__}"]
    if what == "witness":
        if not isinstance(cert, NotMember):
            return [f"expected a NotMember verdict, got {type(cert).__name__}"]
        return validate_witness(G, cert, config.constants if config else None)
    raise ValueError(f"unknown certificate kind {what!r}")


def cmd_verify(args) -> int:
    env = io.loads(Path(args.cert).read_text())
    G = env.get("graph")
    if args.graph:
        given = _read_graph(args.graph)
        if G is not None and G != given:
            print("certificate was produced for a different graph", file=sys.stderr)
            return EXIT_NO
        G = given
    if G is None:
        raise ValueError("certificate has no embedded graph; pass --graph")
    problems = _verify_problems(args.what, env["certificate"], G, env)
    for p in problems:
        print(p, file=sys.stderr)
    print("ok" if not problems else f"{len(problems)} problem(s)")
    return EXIT_OK if not problems else EXIT_NO


def cmd_generate(args) -> int:
    G = generate(args.kind, n=args.n, rows=args.rows, cols=args.cols, p=args.p, seed=args.seed)
    _emit(args, io.format_graph(G))
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", default="1", help="class constant scaling ell (default 1)")
    p.add_argument("--c-f", dest="c_f", default="1", help="class constant scaling f (default 1)")
    p.add_argument("--cg-cap", type=int, default=50, help="column generation cap factor (iterations <= cap*n)")
    p.add_argument("--dp-budget", type=int, default=10**9, help="subgraph DP state budget")
    p.add_argument("--out", help="write output to this file instead of stdout")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="json", action="store_true", default=True, help="JSON output (default)")
    g.add_argument("--text", dest="json", action="store_false", help="one-line summary instead of JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepcert", description="Separator and clique-minor certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("separate", help="weighted balanced separator or clique model")
    p.add_argument("--graph", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--m0", type=int, required=True)
    p.add_argument("--costs")
    _common(p)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("decompose", help="low-cost deletion set plus tree decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--m0", type=int, required=True)
    p.add_argument("--costs")
    _common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("thin-dist", help="thin distribution, or a family over every ell")
    p.add_argument("--graph", required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--m0", type=int, help="clique size to look for (default n+1)")
    p.add_argument("--family", action="store_true")
    p.add_argument("--epsilon", type=Fraction)
    p.add_argument("--c", type=Fraction)
    p.add_argument("--out-dir")
    _common(p)
    p.set_defaults(func=cmd_thin)

    p = sub.add_parser("subgraph", help="test whether a pattern is a subgraph")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--family", help="family.json or a directory holding it")
    p.add_argument("--engine", choices=("dp", "auto"), default="dp")
    _common(p)
    p.set_defaults(func=cmd_subgraph)

    p = sub.add_parser("certify", help="approximate class membership verdict")
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=Fraction, required=True)
    p.add_argument("--epsilon", type=Fraction, required=True)
    p.add_argument("--small-cap", type=int)
    p.add_argument("--large-threshold", type=float)
    _common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("--what", choices=("separator", "model", "td", "dist", "witness"), required=True)
    p.add_argument("--graph")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a generated graph")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--p", type=Fraction)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
