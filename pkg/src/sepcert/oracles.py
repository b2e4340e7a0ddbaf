"""Brute-force ground truth for small instances.

Everything here works on adjacency bitmasks and shares no code with the
algorithms it is used to check. Inputs over budget raise ``BudgetError``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph

__all__ = [
    "BudgetError",
    "OracleBudget",
    "DEFAULT_BUDGET",
    "adjacency_bits",
    "min_separator_of_mask",
    "separator_at_most",
    "min_balanced_separator_exact",
    "treewidth_exact",
    "subgraph_iso_backtracking",
    "find_embedding_backtracking",
    "omega_d_exact",
    "master_value_by_vertex_enumeration",
]


class BudgetError(ValueError):
    """Input too large for an exhaustive oracle."""


@dataclass(frozen=True)
class OracleBudget:
    separator: int = 14
    treewidth: int = 10
    omega: int = 9
    iso: int = 6
    lp_rows: int = 9
    lp_columns: int = 10


DEFAULT_BUDGET = OracleBudget()


def _check(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise BudgetError(f"{what} oracle limited to {limit} vertices, got {size}")


def adjacency_bits(G: Graph) -> list[int]:
    bits = [0] * G.n
    for u, v in G.edges:
        bits[u] |= 1 << v
        bits[v] |= 1 << u
    return bits


def _largest_component(adj: Sequence[int], mask: int) -> int:
    best = 0
    rest = mask
    while rest:
        low = rest & -rest
        comp, frontier = low, low
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= adj[b.bit_length() - 1]
                f ^= b
            frontier = grow & rest & ~comp
            comp |= frontier
        rest &= ~comp
        size = bin(comp).count("1")
        if size > best:
            best = size
    return best


def separator_at_most(adj: Sequence[int], mask: int, k: int) -> tuple[int, ...] | None:
    """A balanced separator of G[mask] with at most k vertices, smallest first, or None."""
    verts = [i for i in range(len(adj)) if mask >> i & 1]
    h = len(verts)
    for size in range(0, min(k, h) + 1):
        for C in itertools.combinations(verts, size):
            cm = 0
            for v in C:
                cm |= 1 << v
            if 3 * _largest_component(adj, mask & ~cm) <= 2 * h:
                return C
    return None


def min_separator_of_mask(adj: Sequence[int], mask: int) -> tuple[int, tuple[int, ...]]:
    h = bin(mask).count("1")
    C = separator_at_most(adj, mask, h)
    assert C is not None  # the whole set always works
    return len(C), C


def min_balanced_separator_exact(G: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Minimum balanced separator order of G and one optimal set."""
    _check(G.n, budget.separator, "separator")
    return min_separator_of_mask(adjacency_bits(G), (1 << G.n) - 1)


def treewidth_exact(G: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Exact treewidth by the subset recurrence over elimination orders.

    TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|), where Q(S, v) is the
    set of vertices outside S + v reachable from v through S.
    """
    _check(G.n, budget.treewidth, "treewidth")
    n = G.n
    if n == 0:
        return -1
    adj = adjacency_bits(G)
    full = (1 << n) - 1

    def q_size(S: int, v: int) -> int:
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= adj[b.bit_length() - 1]
                f ^= b
            grow &= ~seen
            seen |= grow
            out |= grow & ~S
            frontier = grow & S
        return bin(out & full).count("1")

    tw = {0: -1}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            S = 0
            for v in combo:
                S |= 1 << v
            best = n
            for v in combo:
                prev = S & ~(1 << v)
                cand = max(tw[prev], q_size(prev, v))
                if cand < best:
                    best = cand
            tw[S] = best
    return tw[full]


def find_embedding_backtracking(
    H: Graph, G: Graph, budget: OracleBudget = DEFAULT_BUDGET
) -> tuple[int, ...] | None:
    """Injective map V(H) -> V(G) preserving edges, by plain ordered backtracking."""
    _check(H.n, budget.iso, "subgraph isomorphism")
    if H.n > G.n:
        return None
    gadj = adjacency_bits(G)
    hadj = adjacency_bits(H)
    img = [-1] * H.n

    def extend(i: int, used: int) -> bool:
        if i == H.n:
            return True
        for g in range(G.n):
            if used >> g & 1:
                continue
            ok = True
            for j in range(i):
                if hadj[i] >> j & 1 and not gadj[g] >> img[j] & 1:
                    ok = False
                    break
            if ok:
                img[i] = g
                if extend(i + 1, used | 1 << g):
                    return True
        img[i] = -1
        return False

    return tuple(img) if extend(0, 0) else None


def subgraph_iso_backtracking(H: Graph, G: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    return find_embedding_backtracking(H, G, budget) is not None


def _radius_ok(adj: Sequence[int], mask: int, d: int) -> bool:
    for c in range(len(adj)):
        if not mask >> c & 1:
            continue
        seen, frontier = 1 << c, 1 << c
        for _ in range(d):
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= adj[b.bit_length() - 1]
                f ^= b
            frontier = grow & mask & ~seen
            seen |= frontier
        if seen == mask:
            return True
    return False


def omega_d_exact(G: Graph, d: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Largest m such that G has a model of K_m whose parts have radius <= d."""
    _check(G.n, budget.omega, "omega_d")
    if d < 0:
        raise ValueError("depth must be non-negative")
    n = G.n
    adj = adjacency_bits(G)
    parts = [S for S in range(1, 1 << n) if _radius_ok(adj, S, d)]
    nbhd = []
    for S in parts:
        N = 0
        for v in range(n):
            if S >> v & 1:
                N |= adj[v]
        nbhd.append(N)
    # compatible: disjoint and touching
    k = len(parts)
    compat = [
        [j for j in range(k) if not parts[i] & parts[j] and nbhd[i] & parts[j]] for i in range(k)
    ]
    compat_sets = [set(c) for c in compat]
    best = 0

    def grow(size: int, cands: list[int]) -> None:
        nonlocal best
        if size > best:
            best = size
        if size + len(cands) <= best:
            return
        for idx, j in enumerate(cands):
            if size + len(cands) - idx <= best:
                return
            grow(size + 1, [x for x in cands[idx + 1 :] if x in compat_sets[j]])

    grow(0, list(range(k)))
    return best


def _exact_solve(B: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    m = len(B)
    A = [row[:] + [b[i]] for i, row in enumerate(B)]
    for col in range(m):
        piv = next((r for r in range(col, m) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(m):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][m] for r in range(m)]


def master_value_by_vertex_enumeration(
    n: int, columns: Sequence[Iterable[int]], budget: OracleBudget = DEFAULT_BUDGET
) -> Fraction:
    """Optimum of min eps s.t. sum p = 1, mass(v) <= eps, p >= 0, by enumerating bases.

    Standard form has n+1 rows and variables (eps, slack_0..slack_{n-1}, p_X...).
    Every basis is solved in floating point in one batch; bases that look
    feasible and near-optimal are then re-solved exactly with fractions.
    """
    cols = [sorted(set(X)) for X in columns]
    if n + 1 > budget.lp_rows or len(cols) > budget.lp_columns:
        raise BudgetError("restricted master too large for vertex enumeration")
    if not cols:
        raise ValueError("need at least one column")
    rows = n + 1
    A = np.zeros((rows, 1 + n + len(cols)))
    A[:n, 0] = -1
    for v in range(n):
        A[v, 1 + v] = 1
    for j, X in enumerate(cols):
        A[n, 1 + n + j] = 1
        for v in X:
            A[v, 1 + n + j] = 1
    b = np.zeros(rows)
    b[n] = 1
    bases = np.array(list(itertools.combinations(range(A.shape[1]), rows)))
    mats = np.transpose(A[:, bases], (1, 0, 2))
    dets = np.linalg.det(mats)
    ok = np.abs(dets) > 1e-9
    bases, mats = bases[ok], mats[ok]
    sols = np.linalg.solve(mats, np.broadcast_to(b, (len(mats), rows))[..., None])[..., 0]
    feas = np.all(sols >= -1e-9, axis=1)
    bases, sols = bases[feas], sols[feas]
    # bases are sorted, so eps (variable 0) can only sit in the first slot
    objs = np.where(bases[:, 0] == 0, sols[:, 0], 0.0)
    near = objs <= objs.min() + 1e-7
    # degenerate bases share a vertex; re-solve one basis per distinct point
    full = np.zeros((int(near.sum()), A.shape[1]))
    np.put_along_axis(full, bases[near], sols[near], axis=1)
    _, first = np.unique(np.round(full, 9), axis=0, return_index=True)
    exact_best = None
    Af = [[Fraction(int(x)) for x in row] for row in A]
    bf = [Fraction(int(x)) for x in b]
    for basis in bases[near][np.sort(first)]:
        B = [[Af[i][j] for j in basis] for i in range(rows)]
        x = _exact_solve(B, bf)
        if x is None or any(v < 0 for v in x):
            continue
        val = x[list(basis).index(0)] if 0 in basis else Fraction(0)
        if exact_best is None or val < exact_best:
            exact_best = val
    if exact_best is None:
        raise RuntimeError("no exactly feasible basis near the floating-point optimum")
    return exact_best
