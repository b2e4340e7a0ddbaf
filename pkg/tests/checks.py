"""Postcondition checks shared by the unit tests and the acceptance run.

Each returns a list of failures (empty when the output is correct).
"""

from fractions import Fraction

from sepcert.certificates import CliqueModel, validate_model, validate_separator_certificate, validate_tree_decomposition
from sepcert.decomposer import DeletionDecomposition, k_bound
from sepcert.exactmath import ceil_log_three_halves, depth_bound, center_radius_bound
from sepcert.graph import bfs_distances, is_balanced_separator
from sepcert.separator import Center, Split
from sepcert.thin import ThinDistribution, validate_thin_distribution


def check_sep_or_radius(G, q, ell0, r, n_outer, within, res):
    V = set(within)
    fails = []
    if isinstance(res, Split):
        C2, D, E = set(res.C2), set(res.D), set(res.E)
        if C2 | D | E != V or len(C2) + len(D) + len(E) != len(V):
            fails.append("split is not a partition")
        if not D or not E:
            fails.append("empty side")
        if any((u in D and v in E) or (u in E and v in D) for u, v in G.edges):
            fails.append("edge between D and E")
        if q.of(C2) * ell0 > q.of(D) or q.of(C2) * ell0 > q.of(E):
            fails.append("layer too expensive")
    elif isinstance(res, Center):
        dist = bfs_distances(G, res.v0, V)
        ecc = max(dist[v] for v in V)
        if min(dist[v] for v in V) < 0:
            fails.append("center does not reach everything")
        if ecc != res.eccentricity:
            fails.append("reported eccentricity is wrong")
        if ecc > center_radius_bound(ell0, r, n_outer):
            fails.append("eccentricity above the bound")
    else:
        fails.append(f"unexpected result {res!r}")
    return fails


def check_prs(G, q, ell, m0, res):
    n = G.n
    d = depth_bound(ell, n)
    if isinstance(res, CliqueModel):
        fails = validate_model(G, res)
        if res.m != m0:
            fails.append(f"model has {res.m} parts, expected {m0}")
        if res.depth > d:
            fails.append("model depth above d")
        if any(len(p) > m0 * d for p in res.parts):
            fails.append("part larger than m0*d")
        return fails
    fails = validate_separator_certificate(G, res, q)
    if not is_balanced_separator(G, set(res.C) | set(res.M)):
        fails.append("C u M not balanced")
    if q.of(res.C) * ell > q.total():
        fails.append("q(C) * ell > q(V)")
    if res.iterations > 2 * n:
        fails.append("more than 2n iterations")
    if res.model.m > m0:
        fails.append("more parts than m0")
    return fails


def check_deletion(G, q, ell, m0, res):
    if isinstance(res, CliqueModel):
        fails = validate_model(G, res)
        if res.m != m0:
            fails.append("model of the wrong size")
        return fails
    assert isinstance(res, DeletionDecomposition)
    fails = []
    if q.of(res.X) * ell >= q.total():
        fails.append("q(X) * ell >= q(V)")
    keep = set(range(G.n)) - set(res.X)
    fails.extend(validate_tree_decomposition(G, res.td, keep))
    omega = max(1, min(m0, res.omega_observed))
    if res.width > k_bound(ell, omega, G.n):
        fails.append("width above k_bound")
    if res.tree_depth > ceil_log_three_halves(G.n):
        fails.append("recursion too deep")
    return fails


def check_thin(G, dist, cap_factor=50):
    if isinstance(dist, CliqueModel):
        return validate_model(G, dist)
    assert isinstance(dist, ThinDistribution)
    fails = validate_thin_distribution(G, dist)
    for s, eps in dist.solves:
        if s != eps:
            fails.append(f"duality gap {s} != {eps}")
    if dist.solves and dist.solves[-1][0] * dist.ell >= 1:
        fails.append("final s* not below 1/ell")
    if dist.iterations > cap_factor * G.n:
        fails.append("iteration cap exceeded")
    if dist.eps * dist.ell > 1:
        fails.append("mass above 1/ell")
    if sum((c.p for c in dist.columns), Fraction(0)) != 1:
        fails.append("probabilities do not sum to 1")
    return fails
