"""Text formats for graphs and costs, and the JSON certificate schema.

JSON conventions: every object carries a ``"type"`` tag, vertex sets are
sorted arrays, rationals are ``"p/q"`` strings in lowest terms and mappings
are ``{"type": "map", "items": [[key, value], ...]}`` so integer keys survive.
"""

from __future__ import annotations

import dataclasses
import json
import re
from fractions import Fraction
from typing import Any

from .certificates import CliqueModel, SeparatorCertificate, TreeDecomposition
from .certify import AuditEntry, Member, MembershipResult, ModelWitness, NotMember, SubgraphWitness
from .config import ClassConstants, Config
from .decomposer import DeletionDecomposition
from .graph import CostAssignment, Graph, GraphError
from .lp import MasterSolution
from .separator import ClassWitness
from .subgraph import SubgraphResult
from .thin import FragileFamily, NotInClass, ThinColumn, ThinDistribution

__all__ = [
    "ParseError",
    "SchemaError",
    "parse_graph",
    "format_graph",
    "parse_costs",
    "to_jsonable",
    "from_jsonable",
    "dumps",
    "loads",
    "round_trip",
]

FORMAT = "sepcert/1"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SchemaError(ValueError):
    pass


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _int_token(tok: tuple[str, int], lineno: int, what: str) -> int:
    text, col = tok
    if not re.fullmatch(r"[+-]?\d+", text):
        raise ParseError(f"{what} must be an integer, got {text!r}", lineno, col)
    return int(text)


def parse_graph(text: str) -> Graph:
    """Parse ``n m`` followed by m lines ``u v``; blank lines and ``#`` comments are skipped."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("missing header 'n m'", 1)
    lineno, header = lines[0]
    toks = _tokens(header)
    if len(toks) != 2:
        raise ParseError("header must be 'n m'", lineno)
    n = _int_token(toks[0], lineno, "vertex count")
    m = _int_token(toks[1], lineno, "edge count")
    if n < 0 or m < 0:
        raise ParseError("counts must be non-negative", lineno)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}", body[-1][0] if body else lineno)
    edges = []
    seen = set()
    for lineno, ln in body:
        toks = _tokens(ln)
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        u = _int_token(toks[0], lineno, "endpoint")
        v = _int_token(toks[1], lineno, "endpoint")
        for val, tok in ((u, toks[0]), (v, toks[1])):
            if not 0 <= val < n:
                raise ParseError(f"endpoint {val} outside 0..{n - 1}", lineno, tok[1])
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno, toks[0][1])
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def format_graph(G: Graph) -> str:
    return "\n".join([f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]) + "\n"


def _fraction(text: str, lineno: int = 0, col: int = 0) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", lineno, col) from None
    except ValueError:
        raise ParseError(f"not a rational: {text!r}", lineno, col) from None


def parse_costs(text: str, n: int) -> CostAssignment:
    """Lines ``v p/q``; vertices not mentioned cost 1."""
    values: list[Fraction | None] = [None] * n
    for i, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip() or ln.lstrip().startswith("#"):
            continue
        toks = _tokens(ln)
        if len(toks) != 2:
            raise ParseError("cost line must be 'v p/q'", i)
        v = _int_token(toks[0], i, "vertex")
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} outside 0..{n - 1}", i, toks[0][1])
        if values[v] is not None:
            raise ParseError(f"second cost for vertex {v}", i)
        q = _fraction(toks[1][0], i, toks[1][1])
        if q < 0:
            raise ParseError("costs must be non-negative", i, toks[1][1])
        values[v] = q
    return CostAssignment([Fraction(1) if q is None else q for q in values])


_TYPES = {
    cls.__name__: cls
    for cls in (
        CliqueModel,
        TreeDecomposition,
        SeparatorCertificate,
        DeletionDecomposition,
        ThinColumn,
        ThinDistribution,
        FragileFamily,
        NotInClass,
        ClassWitness,
        MasterSolution,
        SubgraphResult,
        MembershipResult,
        ModelWitness,
        SubgraphWitness,
        AuditEntry,
        Member,
        NotMember,
        ClassConstants,
        Config,
    )
}

_RATIONAL = re.compile(r"-?\d+/\d+")


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Graph):
        return {"type": "Graph", "n": obj.n, "edges": [list(e) for e in obj.edges]}
    if isinstance(obj, CostAssignment):
        return {"type": "CostAssignment", "values": [to_jsonable(v) for v in obj.values]}
    if isinstance(obj, dict):
        return {"type": "map", "items": [[to_jsonable(k), to_jsonable(v)] for k, v in sorted(obj.items())]}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj) and type(obj).__name__ in _TYPES:
        out = {"type": type(obj).__name__}
        for f in dataclasses.fields(obj):
            out[f.name] = to_jsonable(getattr(obj, f.name))
        return out
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def from_jsonable(data: Any) -> Any:
    if isinstance(data, str):
        if _RATIONAL.fullmatch(data):
            num, den = data.split("/")
            if int(den) == 0:
                raise SchemaError(f"zero denominator in {data!r}")
            return Fraction(int(num), int(den))
        return data
    if isinstance(data, list):
        return tuple(from_jsonable(x) for x in data)
    if not isinstance(data, dict):
        return data
    kind = data.get("type")
    if kind == "map":
        return {from_jsonable(k): from_jsonable(v) for k, v in data["items"]}
    if kind == "Graph":
        try:
            return Graph(data["n"], data["edges"])
        except (GraphError, KeyError) as exc:
            raise SchemaError(f"bad graph: {exc}") from None
    if kind == "CostAssignment":
        return CostAssignment(from_jsonable(data["values"]))
    cls = _TYPES.get(kind)
    if cls is None:
        raise SchemaError(f"unknown object type {kind!r}")
    names = {f.name for f in dataclasses.fields(cls)}
    extra = set(data) - names - {"type"}
    if extra:
        raise SchemaError(f"{kind} has unexpected fields {sorted(extra)}")
    kwargs = {k: from_jsonable(v) for k, v in data.items() if k != "type"}
    if cls is FragileFamily:
        kwargs["dists"] = dict(kwargs.get("dists", {}))
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise SchemaError(f"{kind}: {exc}") from None


def dumps(obj: Any, config: Config | None = None, costs: CostAssignment | None = None, **extra) -> str:
    """Deterministic JSON envelope holding the certificate and the configuration used."""
    env = {"format": FORMAT, "certificate": to_jsonable(obj)}
    if config is not None:
        env["config"] = to_jsonable(config)
    if costs is not None:
        env["costs"] = to_jsonable(costs)
    for k, v in extra.items():
        env[k] = to_jsonable(v)
    return json.dumps(env, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    """Parse an envelope; returns a dict with decoded ``certificate`` (and config/costs if present)."""
    try:
        env = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(env, dict) or env.get("format") != FORMAT or "certificate" not in env:
        raise SchemaError("not a certificate envelope")
    return {k: (from_jsonable(v) if k != "format" else v) for k, v in env.items()}


def round_trip(obj: Any) -> Any:
    return loads(dumps(obj))["certificate"]
