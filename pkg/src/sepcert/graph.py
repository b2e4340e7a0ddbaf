"""Simple undirected graphs, exact vertex costs and the traversals built on them.

Algorithms in this package work on vertex subsets of one fixed graph rather
than on relabelled copies: ``within=`` selects the induced subgraph
``G[within]`` and vertex ids stay those of ``G`` throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .exactmath import as_fraction

__all__ = [
    "GraphError",
    "Graph",
    "CostAssignment",
    "vertex_mask",
    "connected_components",
    "bfs_layers",
    "bfs_distances",
    "neighbors_of_set",
    "is_balanced_separator",
]


class GraphError(ValueError):
    """Malformed graph input: self-loop, duplicate edge or bad endpoint."""


class Graph:
    """An immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_adjsets", "_csr")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        self.n = n
        self.edges = tuple(sorted(seen))
        nbrs = [[] for _ in range(n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._adjsets = tuple(frozenset(a) for a in self.adj)
        self._csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int32)
            indptr[1:] = np.cumsum([len(a) for a in self.adj], dtype=np.int64)
            flat = [w for a in self.adj for w in a]
            indices = np.asarray(flat, dtype=np.int32) if flat else np.zeros(0, dtype=np.int32)
            self._csr = (indptr, indices)
        return self._csr

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Relabelled copy of ``G[vertices]`` plus the new-id -> old-id map."""
        old = tuple(sorted(set(vertices)))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return Graph(len(old), edges), old

    def without(self, removed: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Relabelled copy of ``G - removed``."""
        gone = set(removed)
        return self.induced(v for v in range(self.n) if v not in gone)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class CostAssignment:
    """Exact non-negative rational cost per vertex."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable):
        vals = tuple(as_fraction(v) for v in values)
        for i, v in enumerate(vals):
            if v < 0:
                raise ValueError(f"negative cost {v} at vertex {i}")
        self.values = vals

    @classmethod
    def uniform(cls, n: int, value=1) -> "CostAssignment":
        return cls([as_fraction(value)] * n)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, CostAssignment):
            return NotImplemented
        return self.values == other.values

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def of(self, vertices: Iterable[int]) -> Fraction:
        vals = self.values
        return sum((vals[v] for v in vertices), Fraction(0))

    def __repr__(self):
        return f"CostAssignment({[str(v) for v in self.values]})"


def vertex_mask(n: int, vertices: Iterable[int] | None) -> np.ndarray:
    if vertices is None:
        return np.ones(n, dtype=np.uint8)
    mask = np.zeros(n, dtype=np.uint8)
    idx = np.fromiter(vertices, dtype=np.int64)
    if idx.size:
        if idx.min() < 0 or idx.max() >= n:
            raise GraphError("vertex outside graph")
        mask[idx] = 1
    return mask


def connected_components(G: Graph, within: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Components of ``G[within]``, each sorted, listed by smallest vertex."""
    indptr, indices = G.csr
    labels, count = _kernels.component_labels(indptr, indices, vertex_mask(G.n, within))
    comps: list[list[int]] = [[] for _ in range(count)]
    for v, lab in enumerate(labels.tolist()):
        if lab >= 0:
            comps[lab].append(v)
    return [tuple(c) for c in comps]


def bfs_distances(G: Graph, source: int, within: Iterable[int] | None = None) -> list[int]:
    indptr, indices = G.csr
    mask = vertex_mask(G.n, within)
    if not (0 <= source < G.n) or not mask[source]:
        raise GraphError(f"source {source} not in the graph")
    return _kernels.bfs_distances(indptr, indices, source, mask).tolist()


def bfs_layers(G: Graph, v0: int, within: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Layer i holds the vertices at distance exactly i from ``v0``."""
    dist = bfs_distances(G, v0, within)
    depth = max(dist)
    layers: list[list[int]] = [[] for _ in range(depth + 1)]
    for v, d in enumerate(dist):
        if d >= 0:
            layers[d].append(v)
    return [tuple(layer) for layer in layers]


def neighbors_of_set(G: Graph, source: Iterable[int], target: Iterable[int] | None = None) -> list[int]:
    """Vertices of ``target`` (default: all) adjacent to some vertex of ``source``."""
    indptr, indices = G.csr
    return _kernels.boundary(indptr, indices, vertex_mask(G.n, source), vertex_mask(G.n, target))


def is_balanced_separator(G: Graph, C: Iterable[int], within: Iterable[int] | None = None) -> bool:
    """True iff every component K of G[within] - C has 3|K| <= 2|within|."""
    universe = set(range(G.n)) if within is None else set(within)
    removed = set(C)
    for v in removed:
        if not (0 <= v < G.n):
            raise GraphError(f"separator vertex {v} out of range")
        if v not in universe:
            raise GraphError(f"separator vertex {v} not in the graph")
    total = len(universe)
    comps = connected_components(G, universe - removed)
    return all(3 * len(c) <= 2 * total for c in comps)
