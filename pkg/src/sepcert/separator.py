"""Cost-bounded balanced separators or bounded-depth clique models.

``weighted_prs`` is the weighted Plotkin-Rao-Smith procedure: it grows a
clique model part by part and either completes a model of K_{m0} or stops
with a balanced separator ``C u M`` where ``q(C) <= q(V)/ell`` and ``M`` is
the support of the partial model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .certificates import CliqueModel, SeparatorCertificate, validate_model
from .config import ClassConstants
from .exactmath import as_fraction, ceil_scaled_power, depth_bound, center_radius_bound, power_le
from .graph import (
    CostAssignment,
    Graph,
    bfs_distances,
    bfs_layers,
    connected_components,
    neighbors_of_set,
)

__all__ = [
    "PreconditionError",
    "Center",
    "Split",
    "PrsParams",
    "ClassWitness",
    "sep_or_radius",
    "weighted_prs",
    "prs_uniform",
    "class_separator",
    "lift_small_to_big",
]


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Center:
    v0: int
    eccentricity: int


@dataclass(frozen=True)
class Split:
    C2: tuple[int, ...]
    D: tuple[int, ...]
    E: tuple[int, ...]


RadiusOrSplit = Union[Center, Split]


@dataclass(frozen=True)
class PrsParams:
    ell: int
    m0: int

    def __post_init__(self):
        if self.ell < 1 or self.m0 < 1:
            raise ValueError("ell and m0 must be at least 1")

    def depth(self, n: int) -> int:
        return depth_bound(self.ell, n)


@dataclass(frozen=True)
class ClassWitness:
    """A clique model showing omega_depth(G) exceeds the configured f-bound."""

    model: CliqueModel
    ell: int
    m0: int
    f_value: int
    depth: int
    support_within_budget: bool | None = None


def sep_or_radius(
    G: Graph,
    q: CostAssignment,
    ell0: int,
    r: int,
    n_outer: int | None = None,
    within: Iterable[int] | None = None,
) -> RadiusOrSplit:
    """Find a cheap BFS layer splitting ``G[within]``, or a center of small eccentricity.

    Requires q(v) > 0 and r*q(v) >= q(V) for every vertex. The center branch
    reports the measured eccentricity, which never exceeds
    floor(2 + ell0*log2(r*n_outer)).
    """
    V = sorted(range(G.n)) if within is None else sorted(set(within))
    n = len(V)
    if n == 0:
        raise PreconditionError("empty vertex set")
    if n_outer is None:
        n_outer = n
    if n > n_outer:
        raise PreconditionError(f"{n} vertices but n_outer = {n_outer}")
    total = q.of(V)
    for v in V:
        if q[v] <= 0 or q[v] * r < total:
            raise PreconditionError(f"vertex {v} has cost {q[v]}, need > 0 and >= q(V)/r = {total / r}")

    comps = connected_components(G, V)
    if len(comps) > 1:
        rest = tuple(sorted(v for c in comps[1:] for v in c))
        return Split((), comps[0], rest)
    if n == 1:
        return Center(V[0], 0)

    v0 = max(V, key=lambda v: (q[v], -v))
    layers = bfs_layers(G, v0, V)
    costs = [q.of(layer) for layer in layers]
    depth = len(layers) - 1
    below = costs[0]
    for i in range(1, depth):
        here = costs[i]
        above = total - below - here
        if here * ell0 <= below and here * ell0 <= above:
            inner = tuple(sorted(v for layer in layers[:i] for v in layer))
            outer = tuple(sorted(v for layer in layers[i + 1 :] for v in layer))
            return Split(layers[i], inner, outer)
        below += here
    bound = center_radius_bound(ell0, r, n_outer)
    if depth > bound:
        raise RuntimeError(f"eccentricity {depth} exceeds the guaranteed bound {bound}")
    return Center(v0, depth)


def _grow_part(G: Graph, R: set, v0: int, targets: list[list[int]], d: int) -> list[int]:
    """Union of shortest paths in G[R] from v0 to each target set."""
    dist = bfs_distances(G, v0, R)
    part = {v0}
    for N in targets:
        end = min(N, key=lambda v: (dist[v], v))
        if dist[end] < 0:
            raise RuntimeError("target set unreachable from the center")
        if dist[end] > d:
            raise RuntimeError(f"path of length {dist[end]} exceeds depth {d}")
        cur = end
        part.add(cur)
        while dist[cur] > 0:
            cur = min(u for u in G.neighbors(cur) if dist[u] == dist[cur] - 1)
            part.add(cur)
    return sorted(part)


def _check_loop_invariants(G, q, n, ell, A, R, parts, centers, d, m_max):
    C1 = neighbors_of_set(G, A, R) if A else []
    if 3 * len(A) > 2 * n:
        raise AssertionError(f"|A| = {len(A)} exceeds 2n/3")
    if q.of(C1) * 2 * ell > q.of(A):
        raise AssertionError("q(C1) > q(A)/(2 ell)")
    problems = validate_model(G, CliqueModel(parts, centers, d, m_max))
    if problems:
        raise AssertionError(f"partial model invalid: {problems}")


def weighted_prs(
    G: Graph,
    q: CostAssignment,
    params: PrsParams,
    within: Iterable[int] | None = None,
    check_invariants: bool = False,
) -> SeparatorCertificate | CliqueModel:
    """Weighted balanced separator of ``G[within]`` or an m0-bounded model of K_{m0}.

    On the separator branch the attached model's ``bound`` is the largest
    number of parts held at any one time; every part created while m parts
    existed has at most m*d + 1 <= (m+1)*d vertices.
    """
    ell, m0 = params.ell, params.m0
    V = sorted(range(G.n)) if within is None else sorted(set(within))
    n = len(V)
    if n == 0:
        return SeparatorCertificate((), (), CliqueModel.empty(), ell, m0, 0)
    d = depth_bound(ell, n)

    if ell > n:
        # d(ell, n) >= n, so a whole component is a part of depth d
        comps = connected_components(G, V)
        big = max(comps, key=lambda c: (len(c), -c[0]))
        model = CliqueModel((big,), (big[0],), d, 1)
        return SeparatorCertificate((), big, model, ell, m0, d, 0, 1)

    total = q.of(V)
    threshold = total / (2 * ell * n)
    C0 = [v for v in V if q[v] <= threshold]
    low = set(C0)
    R = {v for v in V if v not in low}
    A: set[int] = set()
    parts: list[list[int]] = []
    centers: list[int] = []
    m_max = 0
    iterations = 0
    ell0, r = 2 * ell, 2 * ell * n

    while True:
        if len(parts) == m0:
            return CliqueModel(parts, centers, d, m0)
        C1 = neighbors_of_set(G, A, R) if A else []
        if 3 * (len(R) - len(C1)) <= 2 * n:
            M = [v for p in parts for v in p]
            model = CliqueModel(parts, centers, d, m_max)
            return SeparatorCertificate(C0 + C1, M, model, ell, m0, d, iterations, m_max)

        iterations += 1
        if iterations > 2 * n:
            raise RuntimeError(f"no termination after {2 * n} iterations")
        before = (len(A), len(R))

        frontier = [neighbors_of_set(G, p, R) for p in parts]
        idle = next((i for i, N in enumerate(frontier) if not N), None)
        if idle is not None:
            A.update(parts[idle])
            del parts[idle]
            del centers[idle]
        else:
            res = sep_or_radius(G, q, ell0, r, n_outer=n, within=R)
            if isinstance(res, Center):
                part = _grow_part(G, R, res.v0, frontier, d)
                if len(part) > len(parts) * d + 1:
                    raise RuntimeError("new part larger than m*d + 1")
                R.difference_update(part)
                parts.append(part)
                centers.append(res.v0)
                m_max = max(m_max, len(parts))
            else:
                side = min((res.D, res.E), key=lambda s: (len(s), s[0]))
                A.update(side)
                R.difference_update(side)

        after = (len(A), len(R))
        if after[0] < before[0] or after[1] > before[1] or after == before:
            raise RuntimeError("iteration made no monotone progress")
        if check_invariants:
            _check_loop_invariants(G, q, n, ell, A, R, parts, centers, d, m_max)


def prs_uniform(G: Graph, ell: int, m0: int, **kwargs) -> SeparatorCertificate | CliqueModel:
    """Unit-cost special case: q(C) <= q(V)/ell becomes |C| <= n/ell."""
    return weighted_prs(G, CostAssignment.uniform(G.n), PrsParams(ell, m0), **kwargs)


def _check_eps(eps) -> Fraction:
    eps = as_fraction(eps)
    if not (0 < eps <= 1):
        raise ValueError("epsilon must lie in (0, 1]")
    return eps


def class_separator(
    G: Graph, c, eps, constants: ClassConstants | None = None
) -> SeparatorCertificate | ClassWitness:
    """Separator of order O(n^(1 - eps/5)) for graphs in G_{c,eps}, or a disproof.

    Runs the unit-cost procedure with ell = max(1, ceil(a*n^(eps/5))) and
    m0 = f(d(ell, n)) + 1. A returned model of K_{m0} exceeds the configured
    omega-expansion bound and is reported as a ``ClassWitness``.
    """
    constants = constants or ClassConstants()
    eps = _check_eps(eps)
    n = G.n
    if n < 1:
        raise ValueError("graph must have a vertex")
    ell = max(1, ceil_scaled_power(constants.a, n, eps / 5))
    d = depth_bound(ell, n)
    f = constants.f(d, eps, cap=n)
    res = prs_uniform(G, ell, f + 1)
    if isinstance(res, CliqueModel):
        return ClassWitness(res, ell, f + 1, f, d)
    return res


def lift_small_to_big(
    G: Graph, c, eps, delta, constants: ClassConstants | None = None
) -> SeparatorCertificate | ClassWitness:
    """Separator valid when all subgraphs on <= n^delta vertices are in G_{c,eps}.

    Picks the largest ell <= ceil(a*n^(eps*delta/5)) with
    (f(d)+1)^2 * d <= n^delta (falling back to ell = 1), then runs the
    unit-cost procedure with m0 = f(d)+1. A model outcome is a witness whose
    support S has |S| <= n^delta whenever the inequality held.
    """
    constants = constants or ClassConstants()
    eps = _check_eps(eps)
    delta = _check_eps(delta)
    n = G.n
    if n < 1:
        raise ValueError("graph must have a vertex")
    top = max(1, ceil_scaled_power(constants.a, n, eps * delta / 5))
    chosen, fits = 1, False
    for ell in range(top, 0, -1):
        d = depth_bound(ell, n)
        f = constants.f(d, eps, cap=n)
        if power_le((f + 1) ** 2 * d, n, delta):
            chosen, fits = ell, True
            break
    d = depth_bound(chosen, n)
    f = constants.f(d, eps, cap=n)
    res = prs_uniform(G, chosen, f + 1)
    if isinstance(res, CliqueModel):
        small = fits and power_le(len(res.support), n, delta)
        return ClassWitness(res, chosen, f + 1, f, d, small)
    return res
