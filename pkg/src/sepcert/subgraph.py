"""Subgraph testing by dynamic programming over tree decompositions.

``contains_subgraph`` runs the DP on G - X for every support column X of the
(1/(m+1))-thin distribution; an m-vertex H that occurs in G avoids some
support column entirely, so the disjunction over columns is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .certificates import TreeDecomposition, validate_tree_decomposition
from .graph import Graph

__all__ = [
    "SizingError",
    "NiceNode",
    "NiceDecomposition",
    "make_nice",
    "validate_nice",
    "verify_embedding",
    "td_subgraph_iso",
    "backtrack_embedding",
    "SubgraphResult",
    "find_subgraph",
    "contains_subgraph",
]

DEFAULT_DP_BUDGET = 10**9


class SizingError(RuntimeError):
    """The DP state space would exceed the configured budget."""


@dataclass(frozen=True)
class NiceNode:
    kind: str  # "leaf", "introduce", "forget" or "join"
    bag: tuple[int, ...]
    children: tuple[int, ...] = ()
    vertex: int | None = None


@dataclass(frozen=True)
class NiceDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def to_tree_decomposition(self) -> TreeDecomposition:
        parent = [-1] * len(self.nodes)
        for i, nd in enumerate(self.nodes):
            for c in nd.children:
                parent[c] = i
        return TreeDecomposition.from_bags(parent, [nd.bag for nd in self.nodes])

    def vertices(self) -> set[int]:
        return {v for nd in self.nodes for v in nd.bag}


def make_nice(td: TreeDecomposition) -> NiceDecomposition:
    """Equivalent nice decomposition with empty leaf and root bags.

    Raises ValueError when some vertex's bags do not form a subtree.
    """
    universe = sorted({v for bag in td.bags for v in bag})
    if universe:
        probe = Graph(universe[-1] + 1, [])
        problems = validate_tree_decomposition(probe, td, universe)
        if problems:
            raise ValueError(f"invalid tree decomposition: {problems[0]}")
    nodes: list[NiceNode] = []

    def add(kind, bag, children=(), vertex=None) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex))
        return len(nodes) - 1

    def chain(top: int, have: set, want: set) -> int:
        for v in sorted(have - want):
            have = have - {v}
            top = add("forget", have, (top,), v)
        for v in sorted(want - have):
            have = have | {v}
            top = add("introduce", have, (top,), v)
        return top

    if not td.parent:
        return NiceDecomposition((NiceNode("leaf", ()),), 0)
    kids = td.children()
    order = [td.root]
    for t in order:
        order.extend(kids[t])
    top_of: dict[int, int] = {}
    for t in reversed(order):
        bag = set(td.bags[t])
        if not kids[t]:
            top_of[t] = chain(add("leaf", ()), set(), bag)
            continue
        tops = [chain(top_of[c], set(td.bags[c]), bag) for c in kids[t]]
        cur = tops[0]
        for other in tops[1:]:
            cur = add("join", bag, (cur, other))
        top_of[t] = cur
    root = chain(top_of[td.root], set(td.bags[td.root]), set())
    return NiceDecomposition(tuple(nodes), root)


def validate_nice(G: Graph, nd: NiceDecomposition, within=None) -> list[str]:
    problems = validate_tree_decomposition(G, nd.to_tree_decomposition(), within)
    if nd.nodes[nd.root].bag:
        problems.append("root bag is not empty")
    for i, node in enumerate(nd.nodes):
        bag = set(node.bag)
        kids = [set(nd.nodes[c].bag) for c in node.children]
        if node.kind == "leaf":
            ok = not kids and not bag
        elif node.kind == "introduce":
            ok = len(kids) == 1 and node.vertex not in kids[0] and bag == kids[0] | {node.vertex}
        elif node.kind == "forget":
            ok = len(kids) == 1 and node.vertex in kids[0] and bag == kids[0] - {node.vertex}
        elif node.kind == "join":
            ok = len(kids) == 2 and kids[0] == bag and kids[1] == bag
        else:
            ok = False
        if not ok:
            problems.append(f"node {i} is not a well-formed {node.kind} node")
    return problems


def verify_embedding(H: Graph, G: Graph, emb: Sequence[int]) -> bool:
    """Injective, in range, and every edge of H lands on an edge of G."""
    if len(emb) != H.n or len(set(emb)) != H.n:
        return False
    if any(not (0 <= g < G.n) for g in emb):
        return False
    return all(G.has_edge(emb[u], emb[v]) for u, v in H.edges)


UNMAPPED, FORGOTTEN = -1, -2


def td_subgraph_iso(
    H: Graph, G: Graph, nd: NiceDecomposition, budget: int = DEFAULT_DP_BUDGET
) -> tuple[int, ...] | None:
    """Embedding of H into the subgraph of G covered by ``nd``, or None.

    A DP state assigns each non-isolated vertex of H one of: not yet used,
    a vertex of the current bag, or a vertex already forgotten below.
    """
    universe = sorted(nd.vertices())
    core = [h for h in range(H.n) if H.degree(h)]
    isolated = [h for h in range(H.n) if not H.degree(h)]
    if H.n > len(universe):
        return None
    core.sort(key=lambda h: (-H.degree(h), h))
    m = len(core)
    pos = {h: i for i, h in enumerate(core)}
    hn = [[pos[x] for x in H.neighbors(h)] for h in core]
    width = nd.width
    if m and (width + 2) ** m * len(nd.nodes) > budget:
        raise SizingError(f"(width+2)^m * nodes = ({width}+2)^{m} * {len(nd.nodes)} exceeds {budget}")

    tables: list[dict | None] = [None] * len(nd.nodes)
    order = [nd.root]
    for i in order:
        order.extend(nd.nodes[i].children)
    for i in reversed(order):
        node = nd.nodes[i]
        if node.kind == "leaf":
            tables[i] = {(UNMAPPED,) * m: None}
            continue
        if node.kind == "join":
            a, b = (tables[c] for c in node.children)
            groups: dict[tuple, list] = {}
            for s in b:
                groups.setdefault(tuple(x if x >= 0 else UNMAPPED for x in s), []).append(s)
            out = {}
            for s in a:
                for t in groups.get(tuple(x if x >= 0 else UNMAPPED for x in s), ()):
                    if any(x == FORGOTTEN and y == FORGOTTEN for x, y in zip(s, t)):
                        continue
                    merged = tuple(FORGOTTEN if FORGOTTEN in (x, y) else x for x, y in zip(s, t))
                    out.setdefault(merged, (s, t))
            tables[i] = out
        else:
            child = tables[node.children[0]]
            v = node.vertex
            out = {}
            if node.kind == "introduce":
                for s in child:
                    out.setdefault(s, s)
                    for h in range(m):
                        if s[h] != UNMAPPED:
                            continue
                        if all(s[x] != FORGOTTEN and (s[x] < 0 or G.has_edge(v, s[x])) for x in hn[h]):
                            out.setdefault(s[:h] + (v,) + s[h + 1 :], s)
            else:
                for s in child:
                    if v in s:
                        h = s.index(v)
                        if any(s[x] == UNMAPPED for x in hn[h]):
                            continue
                        out.setdefault(s[:h] + (FORGOTTEN,) + s[h + 1 :], s)
                    else:
                        out.setdefault(s, s)
            tables[i] = out

    goal = (FORGOTTEN,) * m
    if goal not in tables[nd.root]:
        return None
    img = [None] * m
    stack = [(nd.root, goal)]
    while stack:
        i, s = stack.pop()
        node = nd.nodes[i]
        back = tables[i][s]
        if node.kind == "leaf":
            continue
        if node.kind == "join":
            stack.append((node.children[0], back[0]))
            stack.append((node.children[1], back[1]))
            continue
        if node.kind == "forget" and node.vertex in back:
            img[back.index(node.vertex)] = node.vertex
        stack.append((node.children[0], back))
    emb = [-1] * H.n
    for i, h in enumerate(core):
        emb[h] = img[i]
    free = [g for g in universe if g not in set(img)]
    if len(free) < len(isolated):
        return None
    for h, g in zip(isolated, free):
        emb[h] = g
    return tuple(emb)


def backtrack_embedding(H: Graph, G: Graph, allowed: Sequence[int] | None = None) -> tuple[int, ...] | None:
    """Embedding of H into G[allowed] by degree-filtered backtracking in a connected order."""
    pool = sorted(range(G.n)) if allowed is None else sorted(set(allowed))
    if H.n > len(pool):
        return None
    inpool = set(pool)
    order: list[int] = []
    placed = set()
    for h in sorted(range(H.n), key=lambda h: (-H.degree(h), h)):
        if h in placed:
            continue
        # breadth-first within the component so that most vertices have a placed neighbour
        queue = [h]
        placed.add(h)
        for x in queue:
            order.append(x)
            for y in sorted(H.neighbors(x), key=lambda y: (-H.degree(y), y)):
                if y not in placed:
                    placed.add(y)
                    queue.append(y)
    gdeg = {g: sum(1 for u in G.neighbors(g) if u in inpool) for g in pool}
    img: dict[int, int] = {}
    used: set[int] = set()

    def candidates(h: int):
        anchor = next((img[x] for x in H.neighbors(h) if x in img), None)
        base = G.neighbors(anchor) if anchor is not None else pool
        for g in base:
            if g in inpool and g not in used and gdeg[g] >= H.degree(h):
                if all(G.has_edge(g, img[x]) for x in H.neighbors(h) if x in img):
                    yield g

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        h = order[k]
        for g in candidates(h):
            img[h] = g
            used.add(g)
            if extend(k + 1):
                return True
            used.discard(g)
            del img[h]
        return False

    if not extend(0):
        return None
    return tuple(img[h] for h in range(H.n))


@dataclass(frozen=True)
class SubgraphResult:
    found: bool
    embedding: tuple[int, ...] | None = None
    column: int | None = None
    ell: int | None = None
    engines: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.found


def find_subgraph(
    H: Graph,
    G: Graph,
    family: Mapping,
    engine: str = "dp",
    budget: int = DEFAULT_DP_BUDGET,
) -> SubgraphResult:
    """Decide H <= G through the thin distribution for ell = |V(H)| + 1.

    ``engine="auto"`` answers a column by backtracking on G - X when the DP
    would exceed ``budget``; the per-column engines are reported.
    """
    if engine not in ("dp", "auto"):
        raise ValueError(f"unknown engine {engine!r}")
    m, n = H.n, G.n
    if m > n:
        return SubgraphResult(False)
    if m == 0:
        return SubgraphResult(True, ())
    if m == n:
        # all bijections, pruned by edge checks
        emb = backtrack_embedding(H, G)
        return SubgraphResult(emb is not None, emb, engines=("bijection",))
    ell = m + 1
    if ell not in family:
        raise ValueError(f"family has no distribution for ell = {ell}")
    dist = family[ell]
    engines = []
    for idx, col in enumerate(dist.columns):
        nd = make_nice(col.td)
        try:
            emb = td_subgraph_iso(H, G, nd, budget)
            engines.append("dp")
        except SizingError:
            if engine != "auto":
                raise
            keep = sorted(set(range(n)) - set(col.X))
            emb = backtrack_embedding(H, G, keep)
            engines.append("backtrack")
        if emb is not None:
            if not verify_embedding(H, G, emb) or set(emb) & set(col.X):
                raise RuntimeError("embedding failed re-verification")
            return SubgraphResult(True, emb, idx, ell, tuple(engines))
    return SubgraphResult(False, None, None, ell, tuple(engines))


def contains_subgraph(H: Graph, G: Graph, family: Mapping, engine: str = "dp", budget: int = DEFAULT_DP_BUDGET) -> bool:
    return find_subgraph(H, G, family, engine, budget).found
