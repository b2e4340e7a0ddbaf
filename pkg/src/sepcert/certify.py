"""Approximate membership test for classes with strongly sublinear separators.

``certify`` answers either ``Member(c', eps^2/160)``, backed by the thin
distribution family and an exact bound on every subgraph order, or
``NotMember(c, eps)``, backed by a witness that re-validates independently.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .certificates import CliqueModel, validate_model
from .config import Config
from .exactmath import as_fraction, floor_scaled_power, power_le
from .graph import Graph
from .oracles import adjacency_bits, min_separator_of_mask, separator_at_most
from .subgraph import find_subgraph, verify_embedding
from .thin import FragileFamily, NotInClass, fragile_family

__all__ = [
    "PATTERN_CAP",
    "separator_allowance",
    "MembershipResult",
    "small_class_membership",
    "canonical_form",
    "patterns_of_size",
    "enumerate_small_patterns",
    "minimal_failing_patterns",
    "ModelWitness",
    "SubgraphWitness",
    "AuditEntry",
    "Member",
    "NotMember",
    "default_small_cap",
    "certified_constant",
    "validate_witness",
    "certify",
]

PATTERN_CAP = 7


def separator_allowance(c, eps, h: int) -> int:
    """floor(c * h^(1 - eps)): the largest separator order a class member may need."""
    return floor_scaled_power(as_fraction(c), h, 1 - as_fraction(eps))


@dataclass(frozen=True)
class MembershipResult:
    ok: bool
    witness: tuple[int, ...] | None = None
    order: int | None = None
    allowance: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def small_class_membership(H: Graph, c, eps, cap: int = 12) -> MembershipResult:
    """Exhaustive test that every subgraph of H has a small enough balanced separator.

    Only induced subgraphs are enumerated: deleting edges never raises the
    minimum balanced separator order. Subsets are scanned by increasing size,
    so a failing witness is one of the smallest.
    """
    if H.n > cap:
        raise ValueError(f"graph has {H.n} vertices, exhaustive cap is {cap}")
    adj = adjacency_bits(H)
    for size in range(1, H.n + 1):
        allow = separator_allowance(c, eps, size)
        for S in itertools.combinations(range(H.n), size):
            mask = sum(1 << v for v in S)
            if separator_at_most(adj, mask, allow) is None:
                order, _ = min_separator_of_mask(adj, mask)
                return MembershipResult(False, S, order, allow)
    return MembershipResult(True)


def _refined_cells(n: int, adj: list[int]) -> list[list[int]]:
    """Ordered partition of the vertices from colour refinement (isomorphism invariant)."""
    colour = [bin(a).count("1") for a in adj]
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in range(n) if adj[v] >> u & 1))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[k] for k in sorted(cells)]


def canonical_form(G: Graph) -> tuple[int, int]:
    """(n, code): code is the least upper-triangle bit string over refinement-respecting orders."""
    n = G.n
    adj = adjacency_bits(G)
    cells = _refined_cells(n, adj)
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for p in perms for v in p]
        code = 0
        for i in range(n):
            row = adj[order[i]]
            for j in range(i + 1, n):
                code = code << 1 | (row >> order[j] & 1)
        if best is None or code < best:
            best = code
    return n, best or 0


def _from_code(n: int, code: int) -> Graph:
    edges = []
    bit = n * (n - 1) // 2 - 1
    for i in range(n):
        for j in range(i + 1, n):
            if code >> bit & 1:
                edges.append((i, j))
            bit -= 1
    return Graph(n, edges)


@lru_cache(maxsize=None)
def _codes_of_size(k: int) -> tuple[int, ...]:
    if k == 0:
        return (0,)
    seen = set()
    for code in _codes_of_size(k - 1):
        base = _from_code(k - 1, code)
        for nbrs in range(1 << (k - 1)):
            extra = [(v, k - 1) for v in range(k - 1) if nbrs >> v & 1]
            seen.add(canonical_form(Graph(k, list(base.edges) + extra))[1])
    return tuple(sorted(seen))


def patterns_of_size(k: int) -> list[Graph]:
    """One canonical graph per isomorphism class on exactly k vertices."""
    if not (0 <= k <= PATTERN_CAP):
        raise ValueError(f"pattern size must lie in [0, {PATTERN_CAP}]")
    return [_from_code(k, code) for code in _codes_of_size(k)]


def enumerate_small_patterns(s: int) -> list[Graph]:
    """Canonical representatives of all graphs with 1..s vertices."""
    if s > PATTERN_CAP:
        raise ValueError(f"pattern size cap is {PATTERN_CAP}")
    return [G for k in range(1, s + 1) for G in patterns_of_size(k)]


@lru_cache(maxsize=None)
def _minimal_failing_codes(c: Fraction, eps: Fraction, s: int) -> tuple[tuple[int, int], ...]:
    failing: dict[tuple[int, int], bool] = {}
    minimal = []
    for k in range(1, s + 1):
        allow = separator_allowance(c, eps, k)
        codes = sorted(_codes_of_size(k), key=lambda code: (bin(code).count("1"), code))
        for code in codes:
            P = _from_code(k, code)
            adj = adjacency_bits(P)
            own = separator_at_most(adj, (1 << k) - 1, allow) is None
            smaller = False
            for v in range(k):
                if k > 1 and failing[canonical_form(P.induced([u for u in range(k) if u != v])[0])]:
                    smaller = True
                    break
            if not smaller:
                for e in P.edges:
                    if failing[canonical_form(Graph(k, [f for f in P.edges if f != e]))]:
                        smaller = True
                        break
            failing[(k, code)] = own or smaller
            if own and not smaller:
                minimal.append((k, code))
    return tuple(minimal)


def minimal_failing_patterns(c, eps, s: int) -> list[Graph]:
    """Graphs on <= s vertices that violate the class bound while all proper subgraphs satisfy it.

    A graph contains a violating subgraph on <= s vertices iff it contains
    one of these.
    """
    if s > PATTERN_CAP:
        raise ValueError(f"pattern size cap is {PATTERN_CAP}")
    return [_from_code(k, code) for k, code in _minimal_failing_codes(as_fraction(c), as_fraction(eps), s)]


@dataclass(frozen=True)
class ModelWitness:
    """Model of K_{m0} at depth b with m0 greater than the configured f(b)."""

    model: CliqueModel
    ell: int
    f_value: int


@dataclass(frozen=True)
class SubgraphWitness:
    """Pattern P embedded in G whose own minimum balanced separator exceeds floor(c*|P|^(1-eps))."""

    pattern: Graph
    embedding: tuple[int, ...]
    order: int
    allowance: int


@dataclass(frozen=True)
class AuditEntry:
    vertices: tuple[int, ...]
    order: int
    ok: bool


@dataclass(frozen=True)
class Member:
    c: Fraction
    eps: Fraction
    c_prime: Fraction
    eps_prime: Fraction
    small_cap: int
    patterns_tested: int
    family: FragileFamily | None = None
    audit: tuple[AuditEntry, ...] = ()
    large_threshold: float | None = None
    audit_max_ratio: float = 0.0


@dataclass(frozen=True)
class NotMember:
    c: Fraction
    eps: Fraction
    witness: ModelWitness | SubgraphWitness = field(default=None)


def default_small_cap(n: int) -> int:
    """max(1, floor(sqrt(log2 n))): the largest k with 2^(k^2) <= n."""
    k = 1
    while 2 ** ((k + 1) ** 2) <= n:
        k += 1
    return k


def certified_constant(family: FragileFamily, n: int, eps_prime: Fraction) -> Fraction:
    """A rational c' with every h-vertex subgraph of G separated by <= c' * h^(1 - eps') vertices.

    For each h the order bound is the smaller of ceil(h/3) (delete any third)
    and floor(h*eps_l) + w_l + 1 over the family (the least-hit support
    column, then one bag of its decomposition).
    """
    bounds = {}
    for h in range(1, n + 1):
        best = -(-h // 3)
        for ell in family:
            dist = family[ell]
            width = max(col.td.width for col in dist.columns)
            best = min(best, math.floor(h * dist.eps) + width + 1)
        bounds[h] = best
    if not bounds:
        return Fraction(1)
    expo = 1 - eps_prime
    approx = max(b / h ** float(expo) for h, b in bounds.items())
    step = Fraction(1, 10**6)
    c_prime = Fraction(math.ceil(approx * 10**6), 10**6)
    while not all(power_le(Fraction(b) / c_prime, h, expo) for h, b in bounds.items()):
        c_prime += step
        step *= 2
    return c_prime


def validate_witness(G: Graph, verdict: NotMember, constants=None) -> list[str]:
    """Independent re-check of a NotMember witness."""
    w = verdict.witness
    if isinstance(w, ModelWitness):
        problems = validate_model(G, w.model)
        if w.model.m <= w.f_value:
            problems.append(f"model has {w.model.m} parts, not more than f = {w.f_value}")
        if constants is not None:
            from .decomposer import b_bound

            if constants.f(b_bound(w.ell, G.n), verdict.eps, cap=G.n) != w.f_value:
                problems.append("f value does not match the configured constants")
        return problems
    problems = []
    if not verify_embedding(w.pattern, G, w.embedding):
        problems.append("embedding does not map the pattern into G")
    allow = separator_allowance(verdict.c, verdict.eps, w.pattern.n)
    if allow != w.allowance:
        problems.append(f"allowance {w.allowance} differs from recomputed {allow}")
    order, _ = min_separator_of_mask(adjacency_bits(w.pattern), (1 << w.pattern.n) - 1)
    if order != w.order or order <= allow:
        problems.append(f"pattern needs {order} separator vertices, allowance {allow}")
    return problems


def _sample_connected(G: Graph, rng: random.Random, size: int) -> tuple[int, ...]:
    start = rng.randrange(G.n)
    chosen = {start}
    frontier = set(G.neighbors(start))
    while len(chosen) < size and frontier:
        v = rng.choice(sorted(frontier))
        chosen.add(v)
        frontier.discard(v)
        frontier.update(u for u in G.neighbors(v) if u not in chosen)
    return tuple(sorted(chosen))


def _audit(G: Graph, c_prime: Fraction, eps_prime: Fraction, config: Config) -> tuple[list[AuditEntry], float]:
    rng = random.Random(config.seed)
    entries, worst = [], 0.0
    expo = 1 - eps_prime
    for _ in range(config.audit_samples):
        size = rng.randint(1, min(config.audit_max_size, G.n))
        S = _sample_connected(G, rng, size)
        sub, _ = G.induced(S)
        order, _ = min_separator_of_mask(adjacency_bits(sub), (1 << sub.n) - 1)
        ok = power_le(Fraction(order) / c_prime, sub.n, expo)
        entries.append(AuditEntry(S, order, ok))
        worst = max(worst, order / sub.n ** float(expo))
    return entries, worst


def certify(G: Graph, c, eps, config: Config | None = None) -> Member | NotMember:
    """Decide between G in G_{c', eps^2/160} and G not in G_{c, eps}."""
    config = config or Config()
    c, eps = as_fraction(c), as_fraction(eps)
    if not (0 < eps <= 1) or c <= 0:
        raise ValueError("need c > 0 and 0 < eps <= 1")
    if G.n < 1:
        raise ValueError("graph must have a vertex")
    eps_prime = eps * eps / 160

    if c < 1:
        # K1 already needs a separator of order 1 > c
        verdict = NotMember(c, eps, SubgraphWitness(Graph(1, []), (0,), 1, separator_allowance(c, eps, 1)))
        return _checked(G, verdict, config)

    family = fragile_family(G, c, eps, config.constants, cap_factor=config.cg_cap_factor)
    if isinstance(family, NotInClass):
        witness = ModelWitness(family.model, family.ell, family.f_value)
        return _checked(G, NotMember(c, eps, witness), config)

    s = min(config.small_cap or default_small_cap(G.n), PATTERN_CAP, G.n)
    patterns = minimal_failing_patterns(c, eps, s)
    for P in patterns:
        found = find_subgraph(P, G, family, engine="auto", budget=config.dp_budget)
        if found:
            order, _ = min_separator_of_mask(adjacency_bits(P), (1 << P.n) - 1)
            witness = SubgraphWitness(P, found.embedding, order, separator_allowance(c, eps, P.n))
            return _checked(G, NotMember(c, eps, witness), config)

    c_prime = certified_constant(family, G.n, eps_prime)
    entries, worst = _audit(G, c_prime, eps_prime, config)
    if not all(e.ok for e in entries):
        bad = next(e for e in entries if not e.ok)
        raise AssertionError(f"audit failure on {bad.vertices}: order {bad.order} exceeds c' h^(1-eps')")
    threshold = config.large_threshold
    if threshold is None:
        threshold = math.log2(G.n) ** float(16 / eps) if G.n > 1 else 0.0
    return Member(c, eps, c_prime, eps_prime, s, len(patterns), family, tuple(entries), threshold, worst)


def _checked(G: Graph, verdict: NotMember, config: Config) -> NotMember:
    problems = validate_witness(G, verdict, config.constants)
    if problems:
        raise AssertionError(f"NotMember witness failed re-validation: {problems}")
    return verdict
