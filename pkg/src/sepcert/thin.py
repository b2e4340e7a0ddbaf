"""Thin probability distributions over treewidth-deletion sets.

``thin_distribution`` runs column generation: the restricted master's dual
weights are fed to ``low_tw_deletion``, whose deletion set is cheap under
those weights and therefore a new column, until the master's optimum drops
below 1/ell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .certificates import CliqueModel, TreeDecomposition, validate_tree_decomposition
from .config import ClassConstants
from .decomposer import DeletionDecomposition, b_bound, k_bound, low_tw_deletion
from .exactmath import as_fraction, integer_root_ceil
from .graph import CostAssignment, Graph, connected_components
from .lp import RestrictedMaster

__all__ = [
    "ColumnGenerationError",
    "ThinColumn",
    "ThinDistribution",
    "FragileFamily",
    "NotInClass",
    "validate_thin_distribution",
    "thin_distribution",
    "fragile_family",
    "separator_from_decomposition",
    "large_subgraph_separator",
]


class ColumnGenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ThinColumn:
    X: tuple[int, ...]
    p: Fraction
    td: TreeDecomposition
    omega: int


@dataclass(frozen=True)
class ThinDistribution:
    n: int
    ell: int
    m0: int
    t: int
    columns: tuple[ThinColumn, ...]
    iterations: int = 0
    solves: tuple[tuple[Fraction, Fraction], ...] = ()

    def mass(self, v: int) -> Fraction:
        return sum((c.p for c in self.columns if v in c.X), Fraction(0))

    @property
    def eps(self) -> Fraction:
        return max((self.mass(v) for v in range(self.n)), default=Fraction(0))


@dataclass(frozen=True)
class NotInClass:
    """Model of K_{m0} at depth b(ell, n) with m0 = f(b) + 1."""

    model: CliqueModel
    ell: int
    m0: int
    f_value: int


@dataclass
class FragileFamily:
    n: int
    c: Fraction
    eps: Fraction
    dists: dict[int, ThinDistribution] = field(default_factory=dict)

    def __getitem__(self, ell: int) -> ThinDistribution:
        return self.dists[ell]

    def __contains__(self, ell: int) -> bool:
        return ell in self.dists

    def __iter__(self):
        return iter(sorted(self.dists))


def validate_thin_distribution(G: Graph, dist: ThinDistribution) -> list[str]:
    """Exact re-check of normalisation, thinness, support size and per-column widths."""
    problems = []
    total = sum((c.p for c in dist.columns), Fraction(0))
    if total != 1:
        problems.append(f"probabilities sum to {total}")
    if any(c.p <= 0 for c in dist.columns):
        problems.append("support contains a column of non-positive probability")
    if len(dist.columns) > G.n:
        problems.append(f"support size {len(dist.columns)} exceeds n = {G.n}")
    if len({c.X for c in dist.columns}) != len(dist.columns):
        problems.append("repeated column")
    for v in range(G.n):
        if dist.mass(v) * dist.ell > 1:
            problems.append(f"vertex {v} has mass {dist.mass(v)} > 1/{dist.ell}")
    for i, col in enumerate(dist.columns):
        keep = set(range(G.n)) - set(col.X)
        problems.extend(f"column {i}: {p}" for p in validate_tree_decomposition(G, col.td, keep))
        if col.td.width > dist.t:
            problems.append(f"column {i} has width {col.td.width} > t = {dist.t}")
    return problems


def thin_distribution(
    G: Graph, ell: int, m0: int, cap_factor: int = 50
) -> CliqueModel | ThinDistribution:
    """A (1/ell)-thin distribution on coTW_t(G) with support <= n, or a model of K_{m0}."""
    n = G.n
    if not (1 <= ell <= n):
        raise ValueError(f"ell must lie in [1, {n}]")
    first = low_tw_deletion(G, CostAssignment.uniform(n), ell, m0)
    if isinstance(first, CliqueModel):
        return first
    found: dict[tuple[int, ...], DeletionDecomposition] = {first.X: first}
    master = RestrictedMaster(n, first.X)
    solves = []
    bar = Fraction(1, ell)
    for it in range(cap_factor * n):
        sol = master.solve()
        solves.append((sol.s, sol.eps))
        if sol.s < bar:
            cols = []
            for X, pv in zip(master.columns, sol.p):
                if pv:
                    dd = found[X]
                    cols.append(ThinColumn(X, pv, dd.td, dd.omega_observed))
            omega = max(1, min(m0, max(c.omega for c in cols)))
            return ThinDistribution(n, ell, m0, k_bound(ell, omega, n), tuple(cols), it, tuple(solves))
        res = low_tw_deletion(G, CostAssignment(sol.q), ell, m0)
        if isinstance(res, CliqueModel):
            return res
        if sum((sol.q[v] for v in res.X), Fraction(0)) >= sol.s or res.X in master:
            raise ColumnGenerationError("oracle returned a column that is not cheaper than s*")
        found[res.X] = res
        master.add_column(res.X)
    raise ColumnGenerationError(f"no (1/{ell})-thin distribution after {cap_factor * n} columns")


def fragile_family(
    G: Graph,
    c,
    eps,
    constants: ClassConstants | None = None,
    ells: Iterable[int] | None = None,
    cap_factor: int = 50,
) -> FragileFamily | NotInClass:
    """Thin distributions for every ell in 1..n (or ``ells``), or a class-violation witness.

    Each ell uses m0 = f(b(ell, n)) + 1 where f is the configured
    omega-expansion bound for G_{c,eps}.
    """
    constants = constants or ClassConstants()
    eps = as_fraction(eps)
    if not (0 < eps <= 1):
        raise ValueError("epsilon must lie in (0, 1]")
    n = G.n
    family = FragileFamily(n, as_fraction(c), eps)
    for ell in (range(1, n + 1) if ells is None else sorted(set(ells))):
        f = constants.f(b_bound(ell, n), eps, cap=n)
        res = thin_distribution(G, ell, f + 1, cap_factor=cap_factor)
        if isinstance(res, CliqueModel):
            return NotInClass(res, ell, f + 1, f)
        family.dists[ell] = res
    return family


def _path_step(td: TreeDecomposition, depth: list[int], node: int, target: int) -> int:
    """Neighbour of ``node`` on the tree path towards ``target``."""
    cur = target
    while depth[cur] > depth[node]:
        if td.parent[cur] == node:
            return cur
        cur = td.parent[cur]
    return td.parent[node]


def separator_from_decomposition(H: Graph, td: TreeDecomposition) -> tuple[int, ...]:
    """A single bag of ``td`` that is a balanced separator of H."""
    problems = validate_tree_decomposition(H, td)
    if problems:
        raise ValueError(f"invalid tree decomposition: {problems[0]}")
    n = H.n
    depth = [0] * len(td.parent)
    order = [td.root]
    kids = td.children()
    for node in order:
        for k in kids[node]:
            depth[k] = depth[node] + 1
            order.append(k)
    home: dict[int, int] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            home.setdefault(v, i)
    node = td.root
    for _ in range(len(td.parent) + 1):
        bag = set(td.bags[node])
        comps = connected_components(H, (v for v in range(n) if v not in bag))
        heavy = next((c for c in comps if 3 * len(c) > 2 * n), None)
        if heavy is None:
            return td.bags[node]
        node = _path_step(td, depth, node, home[heavy[0]])
    raise RuntimeError("centroid walk did not terminate")


def large_subgraph_separator(
    G: Graph,
    family: Mapping[int, ThinDistribution],
    H: Iterable[int],
    t_exponent,
    edges: Iterable[tuple[int, int]] | None = None,
) -> tuple[int, ...]:
    """Balanced separator of the subgraph H of G (induced unless ``edges`` given).

    Uses ell = ceil(m^(1/(2t+2))): the support column meeting V(H) least
    has |X n V(H)| <= m/ell, and a bag of its decomposition restricted to
    H - X separates the rest.
    """
    Hv = sorted(set(H))
    m = len(Hv)
    if m == 0:
        return ()
    t = as_fraction(t_exponent)
    ell = integer_root_ceil(m, 1 / (2 * t + 2))
    if ell not in family:
        raise ValueError(f"family has no distribution for ell = {ell}")
    dist = family[ell]
    inH = set(Hv)
    best = min(dist.columns, key=lambda col: len(inH & set(col.X)))
    hit = inH & set(best.X)
    if len(hit) * ell > m:
        raise RuntimeError("thin distribution violates the expectation bound")
    rest = [v for v in Hv if v not in hit]
    new_of = {v: i for i, v in enumerate(rest)}
    if edges is None:
        sub_edges = [(new_of[u], new_of[v]) for u, v in G.edges if u in new_of and v in new_of]
    else:
        sub_edges = []
        for u, v in edges:
            if not G.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge of G")
            if u in new_of and v in new_of:
                sub_edges.append((new_of[u], new_of[v]))
    Hrest = Graph(len(rest), sub_edges)
    td = TreeDecomposition.from_bags(
        best.td.parent, [[new_of[v] for v in bag if v in new_of] for bag in best.td.bags]
    )
    core = separator_from_decomposition(Hrest, td)
    return tuple(sorted(hit | {rest[i] for i in core}))
