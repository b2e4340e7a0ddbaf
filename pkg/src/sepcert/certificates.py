"""Certificate objects and the validators that re-check them from scratch.

Validators return a list of human-readable violations; an empty list means
the certificate is valid. They never trust metadata stored on the object
(width, support, ...) without recomputing it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import CostAssignment, Graph, bfs_distances, connected_components, is_balanced_separator

__all__ = [
    "CliqueModel",
    "TreeDecomposition",
    "SeparatorCertificate",
    "validate_model",
    "validate_tree_decomposition",
    "validate_separator_certificate",
]


@dataclass(frozen=True)
class CliqueModel:
    """Disjoint connected branch sets, pairwise joined by an edge.

    ``depth`` bounds the radius of each part measured from its center;
    ``bound`` (when set) asserts ``len(part) <= bound * depth`` for each part.
    """

    parts: tuple[tuple[int, ...], ...]
    centers: tuple[int, ...]
    depth: int
    bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(sorted(p)) for p in self.parts))
        object.__setattr__(self, "centers", tuple(self.centers))

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(v for p in self.parts for v in p))

    @classmethod
    def empty(cls, depth: int = 0) -> "CliqueModel":
        return cls((), (), depth, 0)


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree given by a parent array (root has parent -1) plus bags."""

    parent: tuple[int, ...]
    bags: tuple[tuple[int, ...], ...]
    width: int

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        object.__setattr__(self, "bags", tuple(tuple(sorted(b)) for b in self.bags))

    @classmethod
    def from_bags(cls, parent, bags) -> "TreeDecomposition":
        bags = [tuple(sorted(b)) for b in bags]
        return cls(tuple(parent), tuple(bags), max((len(b) for b in bags), default=0) - 1)

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for node, par in enumerate(self.parent):
            if par >= 0:
                kids[par].append(node)
        return kids

    def restricted(self, keep: Iterable[int]) -> "TreeDecomposition":
        """Same tree with every bag intersected with ``keep``."""
        keep = set(keep)
        return TreeDecomposition.from_bags(self.parent, [[v for v in b if v in keep] for b in self.bags])


@dataclass(frozen=True)
class SeparatorCertificate:
    """``C`` (cost-bounded) and ``M`` (a clique-model support) whose union separates."""

    C: tuple[int, ...]
    M: tuple[int, ...]
    model: CliqueModel
    ell: int
    m0: int
    depth: int
    iterations: int = 0
    max_parts: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "C", tuple(sorted(self.C)))
        object.__setattr__(self, "M", tuple(sorted(self.M)))


def _radius_from(G: Graph, part: tuple[int, ...], center: int) -> int | None:
    dist = bfs_distances(G, center, part)
    reach = [dist[v] for v in part]
    if min(reach) < 0:
        return None
    return max(reach)


def validate_model(G: Graph, model: CliqueModel) -> list[str]:
    """Check every clique-model condition; returns all violations found."""
    problems: list[str] = []
    parts, centers = model.parts, model.centers
    if len(parts) != len(centers):
        problems.append(f"{len(parts)} parts but {len(centers)} centers")
        return problems
    if model.depth < 0:
        problems.append(f"negative depth {model.depth}")
    owner: dict[int, int] = {}
    for i, part in enumerate(parts):
        if not part:
            problems.append(f"part {i} is empty")
            continue
        bad = [v for v in part if not (0 <= v < G.n)]
        if bad:
            problems.append(f"part {i} has out-of-range vertices {bad}")
            continue
        for v in part:
            if v in owner:
                problems.append(f"vertex {v} lies in parts {owner[v]} and {i}")
            else:
                owner[v] = i
        if len(connected_components(G, part)) != 1:
            problems.append(f"part {i} does not induce a connected subgraph")
        if centers[i] not in part:
            problems.append(f"center {centers[i]} of part {i} lies outside it")
        else:
            radius = _radius_from(G, part, centers[i])
            if radius is not None and radius > model.depth:
                problems.append(f"part {i} has radius {radius} from its center, above depth {model.depth}")
        if model.bound is not None and len(part) > model.bound * model.depth:
            problems.append(
                f"part {i} has {len(part)} vertices, above bound {model.bound}*{model.depth}"
            )
    for i, j in combinations(range(len(parts)), 2):
        if not parts[i] or not parts[j]:
            continue
        other = set(parts[j])
        if not any(w in other for v in parts[i] if 0 <= v < G.n for w in G.neighbors(v)):
            problems.append(f"no edge between parts {i} and {j}")
    return problems


def validate_tree_decomposition(
    G: Graph, td: TreeDecomposition, within: Iterable[int] | None = None
) -> list[str]:
    """Check ``td`` against ``G[within]`` (default: all of G).

    Pass ``within = V(G) - X`` to validate a decomposition of ``G - X``.
    """
    problems: list[str] = []
    universe = set(range(G.n)) if within is None else set(within)
    N = len(td.parent)
    if N == 0:
        return ["decomposition has no nodes"]
    if len(td.bags) != N:
        return [f"{N} tree nodes but {len(td.bags)} bags"]
    roots = [i for i, p in enumerate(td.parent) if p == -1]
    if len(roots) != 1:
        return [f"expected exactly one root, found {len(roots)}"]
    for i, p in enumerate(td.parent):
        if p != -1 and not (0 <= p < N):
            return [f"node {i} has invalid parent {p}"]
    depth = [-1] * N
    depth[roots[0]] = 0
    for start in range(N):
        path = []
        node = start
        while depth[node] < 0:
            path.append(node)
            node = td.parent[node]
            if len(path) > N:
                return ["parent pointers contain a cycle"]
        base = depth[node]
        for k, nd in enumerate(reversed(path), 1):
            depth[nd] = base + k

    nodes_of: dict[int, list[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if v not in universe:
                problems.append(f"bag {i} contains vertex {v} outside the graph")
            nodes_of.setdefault(v, []).append(i)
    for v in sorted(universe):
        nodes = nodes_of.get(v)
        if not nodes:
            problems.append(f"vertex {v} appears in no bag")
            continue
        node_set = set(nodes)
        tops = [i for i in nodes if td.parent[i] not in node_set]
        if len(tops) != 1:
            problems.append(f"bags containing vertex {v} do not form a connected subtree")
    for u, v in G.edges:
        if u in universe and v in universe:
            if not set(nodes_of.get(u, ())) & set(nodes_of.get(v, ())):
                problems.append(f"edge ({u}, {v}) is not covered by any bag")
    real_width = max(len(b) for b in td.bags) - 1
    if real_width != td.width:
        problems.append(f"stored width {td.width} differs from actual width {real_width}")
    return problems


def validate_separator_certificate(
    G: Graph,
    cert: SeparatorCertificate,
    q: CostAssignment | None = None,
    within: Iterable[int] | None = None,
) -> list[str]:
    """Check disjointness, balance, the model over M, and q(C)*ell <= q(V) if costs are given."""
    problems: list[str] = []
    universe = set(range(G.n)) if within is None else set(within)
    C, M = set(cert.C), set(cert.M)
    if C & M:
        problems.append(f"C and M intersect in {sorted(C & M)}")
    if not (C | M) <= universe:
        problems.append("separator leaves the graph")
        return problems
    if tuple(sorted(M)) != cert.model.support:
        problems.append("M is not the support of the attached model")
    problems.extend("model: " + p for p in validate_model(G, cert.model))
    if not is_balanced_separator(G, C | M, universe):
        problems.append("C u M is not a balanced separator")
    if q is not None:
        if q.of(C) * cert.ell > q.of(universe):
            problems.append(f"q(C) = {q.of(C)} exceeds q(V)/ell = {q.of(universe) / cert.ell}")
    return problems

