"""Delete a cheap vertex set so that the rest has a bounded-width tree decomposition.

The separator procedure is applied recursively: each tree node v owns a
vertex set theta(v), splits it into gamma(v) = C (deleted), mu(v) = M (kept
in every bag below v) and one child per component of the remainder.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certificates import CliqueModel, TreeDecomposition
from .exactmath import ceil_log_three_halves, depth_bound
from .graph import CostAssignment, Graph, connected_components
from .separator import PrsParams, weighted_prs

__all__ = ["DeletionDecomposition", "inner_ell", "b_bound", "k_bound", "low_tw_deletion"]


@dataclass(frozen=True)
class DeletionDecomposition:
    X: tuple[int, ...]
    td: TreeDecomposition
    ell: int
    m0: int
    omega_observed: int
    tree_depth: int
    theta: tuple[tuple[int, ...], ...]
    gamma: tuple[tuple[int, ...], ...]
    mu: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return self.td.width


def inner_ell(ell: int, n: int) -> int:
    """ell * ceil(log_{3/2} n) + 1, the separator parameter used at every node."""
    return ell * ceil_log_three_halves(n) + 1


def b_bound(ell: int, n: int) -> int:
    return depth_bound(inner_ell(ell, n), n)


def k_bound(ell: int, omega: int, n: int) -> int:
    """Width bound ceil(log_{3/2} n) * omega^2 * b(ell, n).

    A bag is the union of the mu-sets on a root path: at most
    ceil(log_{3/2} n) of them, each with at most omega^2 * b vertices.
    """
    if ell < 1 or omega < 1 or n < 1:
        raise ValueError("arguments must be positive")
    return ceil_log_three_halves(n) * omega * omega * b_bound(ell, n)


def low_tw_deletion(
    G: Graph, q: CostAssignment, ell: int, m0: int
) -> CliqueModel | DeletionDecomposition:
    """Find X with q(X) < q(V)/ell and a tree decomposition of G - X, or a model of K_{m0}."""
    n = G.n
    if n < 1:
        raise ValueError("graph must have a vertex")
    if ell < 1 or m0 < 1:
        raise ValueError("ell and m0 must be at least 1")
    total = q.total()
    if total == 0:
        raise ValueError("cost assignment is identically zero")
    levels = ceil_log_three_halves(n)
    ell0 = inner_ell(ell, n)
    b = depth_bound(ell0, n)
    params = PrsParams(ell0, m0)

    theta: list[tuple[int, ...]] = [tuple(range(n))]
    parent: list[int] = [-1]
    level: list[int] = [0]
    gamma: list[tuple[int, ...]] = []
    mu: list[tuple[int, ...]] = []
    omega = 0
    i = 0
    while i < len(theta):
        res = weighted_prs(G, q, params, within=theta[i])
        if isinstance(res, CliqueModel):
            # radius <= d(ell0, |theta|) <= b and parts <= m0*d(ell0, |theta|)
            return CliqueModel(res.parts, res.centers, b, m0)
        gamma.append(res.C)
        mu.append(res.M)
        omega = max(omega, res.max_parts)
        rest = set(theta[i]) - set(res.C) - set(res.M)
        for comp in connected_components(G, rest):
            if 3 * len(comp) > 2 * len(theta[i]):
                raise RuntimeError("child set larger than 2/3 of its parent")
            theta.append(comp)
            parent.append(i)
            level.append(level[i] + 1)
        i += 1

    tree_depth = max(level)
    if tree_depth > levels:
        raise RuntimeError(f"tree depth {tree_depth} exceeds ceil(log_3/2 n) = {levels}")

    bags: list[tuple[int, ...]] = []
    for node in range(len(theta)):
        p = parent[node]
        bags.append(tuple(sorted(set(mu[node]) | (set(bags[p]) if p >= 0 else set()))))
    td = TreeDecomposition.from_bags(parent, bags)

    X = tuple(sorted(v for g in gamma for v in g))
    per_level: dict[int, Fraction] = {}
    seen_at: dict[int, set] = {}
    for node, lev in enumerate(level):
        owned = seen_at.setdefault(lev, set())
        if owned & set(theta[node]):
            raise RuntimeError(f"theta sets overlap at depth {lev}")
        owned.update(theta[node])
        per_level[lev] = per_level.get(lev, Fraction(0)) + q.of(gamma[node])
    for lev, cost in per_level.items():
        if cost * ell0 > total:
            raise RuntimeError(f"level {lev} deletes cost {cost} > q(V)/ell0")
    if q.of(X) * ell >= total:
        raise RuntimeError(f"q(X) = {q.of(X)} is not below q(V)/ell")
    return DeletionDecomposition(
        X, td, ell, m0, omega, tree_depth, tuple(theta), tuple(gamma), tuple(mu)
    )
