"""Deterministic graph generators for tests, benchmarks and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactmath import as_fraction
from .graph import Graph

__all__ = ["grid", "path", "cycle", "clique", "star", "random_gnp", "random_tree", "petersen", "generate", "KINDS"]


def _positive(name: str, value: int, least: int = 1) -> int:
    value = int(value)
    if value < least:
        raise ValueError(f"{name} must be at least {least}")
    return value


def grid(a: int, b: int) -> Graph:
    a, b = _positive("rows", a), _positive("columns", b)
    edges = []
    for i in range(a):
        for j in range(b):
            v = i * b + j
            if j + 1 < b:
                edges.append((v, v + 1))
            if i + 1 < a:
                edges.append((v, v + b))
    return Graph(a * b, edges)


def path(n: int) -> Graph:
    n = _positive("n", n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    n = _positive("n", n, 3)
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    n = _positive("n", n)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n: int) -> Graph:
    """K_{1, n-1}: vertex 0 joined to every other vertex."""
    n = _positive("n", n)
    return Graph(n, [(0, i) for i in range(1, n)])


def random_gnp(n: int, p, seed: int = 0) -> Graph:
    n = int(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    # compare against an exact rational so the output never depends on float rounding of p
    scale = 1 << 53
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if Fraction(rng.getrandbits(53), scale) < p])


def random_tree(n: int, seed: int = 0) -> Graph:
    n = _positive("n", n)
    rng = random.Random(seed)
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


KINDS = ("grid", "path", "cycle", "clique", "random-gnp", "star", "tree", "petersen")


def generate(kind: str, n: int | None = None, rows: int | None = None, cols: int | None = None, p=None, seed: int = 0) -> Graph:
    if kind == "grid":
        if rows is None or cols is None:
            raise ValueError("grid needs rows and cols")
        return grid(rows, cols)
    if kind == "petersen":
        return petersen()
    if n is None:
        raise ValueError(f"{kind} needs n")
    if kind == "path":
        return path(n)
    if kind == "cycle":
        return cycle(n)
    if kind == "clique":
        return clique(n)
    if kind == "star":
        return star(n)
    if kind == "tree":
        return random_tree(n, seed)
    if kind == "random-gnp":
        if p is None:
            raise ValueError("random-gnp needs p")
        return random_gnp(n, p, seed)
    raise ValueError(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
