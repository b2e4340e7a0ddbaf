import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from checks import check_thin
from conftest import random_graph
from sepcert.certificates import TreeDecomposition, validate_model
from sepcert.config import ClassConstants
from sepcert.generators import clique, cycle, grid, path, random_tree
from sepcert.graph import Graph, is_balanced_separator
from sepcert.thin import (
    FragileFamily,
    NotInClass,
    ThinDistribution,
    fragile_family,
    large_subgraph_separator,
    separator_from_decomposition,
    thin_distribution,
)


def test_edgeless_three_vertices():
    G = Graph(3)
    dist = thin_distribution(G, 3, 2)
    assert isinstance(dist, ThinDistribution)
    assert all(dist.mass(v) <= Fraction(1, 3) for v in range(3))
    assert check_thin(G, dist) == []


def test_ell_one_stops_immediately():
    G = grid(4, 4)
    dist = thin_distribution(G, 1, 17)
    assert isinstance(dist, ThinDistribution)
    assert dist.iterations <= 1
    assert sum(c.p for c in dist.columns) == 1


def test_cycle_of_nine():
    G = cycle(9)
    dist = thin_distribution(G, 3, 3)
    assert isinstance(dist, ThinDistribution)
    assert dist.eps <= Fraction(1, 3) and len(dist.columns) <= 9
    assert check_thin(G, dist) == []


def test_ell_out_of_range():
    with pytest.raises(ValueError):
        thin_distribution(path(3), 4, 2)
    with pytest.raises(ValueError):
        thin_distribution(path(3), 0, 2)


def test_random_instances_satisfy_invariants():
    rng = random.Random(11)
    for _ in range(12):
        G = random_graph(rng, rng.randint(2, 30), rng.random() * 0.2)
        for ell in {1, 2, min(G.n, 3)}:
            dist = thin_distribution(G, ell, G.n + 1)
            assert check_thin(G, dist) == []


def test_fragile_family_on_single_vertex():
    fam = fragile_family(Graph(1), 1, 1)
    assert isinstance(fam, FragileFamily)
    assert list(fam) == [1] and fam[1].eps == 0


def test_fragile_family_on_path_of_eight():
    G = path(8)
    fam = fragile_family(G, 2, 1)
    assert isinstance(fam, FragileFamily)
    assert list(fam) == list(range(1, 9))
    for ell in fam:
        assert check_thin(G, fam[ell]) == []


def test_fragile_family_witness_branch():
    # c_f tiny forces f = 0, so m0 = 1 and K10 at ell = 1 (inner ell 7 <= 10) yields a model
    G = clique(10)
    consts = ClassConstants(Fraction(1), Fraction(1, 10**30))
    res = fragile_family(G, 1, 1, consts, ells=[1])
    assert isinstance(res, NotInClass)
    assert res.f_value == 0 and res.m0 == 1
    assert validate_model(G, res.model) == [] and res.model.m == 1


def test_fragile_family_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        fragile_family(path(3), 1, 0)
    with pytest.raises(ValueError):
        fragile_family(path(3), 1, 2)


def test_separator_from_decomposition_examples():
    P3 = path(3)
    td = TreeDecomposition.from_bags([-1, 0], [(0, 1), (1, 2)])
    sep = separator_from_decomposition(P3, td)
    assert len(sep) == 2 and is_balanced_separator(P3, sep)
    assert separator_from_decomposition(Graph(1), TreeDecomposition.from_bags([-1], [(0,)])) == (0,)


def test_separator_from_invalid_decomposition():
    with pytest.raises(ValueError):
        separator_from_decomposition(clique(3), TreeDecomposition.from_bags([-1, 0], [(0, 1), (1, 2)]))


def _tree_decomposition(T: Graph) -> TreeDecomposition:
    # bag {v, parent(v)} for every vertex, hung below the parent's bag
    par = [-1] * T.n
    order, seen = [0], {0}
    for v in order:
        for u in T.neighbors(v):
            if u not in seen:
                seen.add(u)
                par[u] = v
                order.append(u)
    bags = [(v,) if par[v] < 0 else (v, par[v]) for v in range(T.n)]
    return TreeDecomposition.from_bags(par, bags)


@settings(max_examples=100)
@given(st.integers(1, 40), st.integers(0, 10**6))
def test_random_tree_bag_separators(n, seed):
    T = random_tree(n, seed) if n > 1 else Graph(1)
    td = _tree_decomposition(T)
    sep = separator_from_decomposition(T, td)
    assert len(sep) <= 2 and len(sep) <= td.width + 1
    assert is_balanced_separator(T, sep)


def test_large_subgraph_separator_single_vertex():
    G = grid(3, 3)
    fam = fragile_family(G, 1, 1, ells=[1])
    assert large_subgraph_separator(G, fam, [4], 1) == (4,)


def test_large_subgraph_separator_on_cycle():
    G = cycle(9)
    dist = thin_distribution(G, 2, 3)
    # m = 9, t = 1 gives ell = ceil(9^(1/4)) = 2
    sep = large_subgraph_separator(G, {2: dist}, range(9), 1)
    assert is_balanced_separator(G, sep)
    assert len(sep) <= Fraction(9, 2) + dist.t + 1


def test_large_subgraph_separator_on_grid_subpath():
    G = grid(5, 5)
    fam = fragile_family(G, 2, 1)
    row = [10, 11, 12, 13, 14]
    sep = large_subgraph_separator(G, fam, row, 1)
    H = Graph(5, [(i, i + 1) for i in range(4)])
    assert is_balanced_separator(H, [row.index(v) for v in sep])
    # spanning variant: only the path edges of a snake through the grid
    snake = [0, 1, 2, 7, 6, 5, 10, 11]
    edges = list(zip(snake, snake[1:]))
    sep = large_subgraph_separator(G, fam, snake, 1, edges=edges)
    S = Graph(8, [(i, i + 1) for i in range(7)])
    assert is_balanced_separator(S, [snake.index(v) for v in sep])


def test_large_subgraph_separator_errors():
    G = path(4)
    with pytest.raises(ValueError):
        large_subgraph_separator(G, {}, [0, 1], 1)
    fam = fragile_family(G, 1, 1)
    with pytest.raises(ValueError):
        large_subgraph_separator(G, fam, [0, 2], 1, edges=[(0, 2)])


def test_column_generation_loop_with_stub_oracle(monkeypatch):
    # stub oracle: delete the single cheapest vertex, forcing several master rounds
    import sepcert.thin as thin
    from sepcert.decomposer import DeletionDecomposition

    def cheapest_vertex(G, q, ell, m0):
        v = min(range(G.n), key=lambda u: (q[u], u))
        rest = tuple(u for u in range(G.n) if u != v)
        td = TreeDecomposition.from_bags([-1], [rest])
        return DeletionDecomposition((v,), td, ell, m0, 1, 0, (rest,), ((v,),), (rest,))

    monkeypatch.setattr(thin, "low_tw_deletion", cheapest_vertex)
    G = Graph(4)
    dist = thin.thin_distribution(G, 2, 2)
    assert dist.iterations == 2
    assert sorted(c.X for c in dist.columns) == [(0,), (1,), (2,)]
    assert all(c.p == Fraction(1, 3) for c in dist.columns)
    assert [s for s, _ in dist.solves] == [1, Fraction(1, 2), Fraction(1, 3)]
    assert check_thin(G, dist) == []


def test_stub_oracle_repeating_a_column_is_reported(monkeypatch):
    import sepcert.thin as thin
    from sepcert.decomposer import DeletionDecomposition

    def always_first(G, q, ell, m0):
        rest = tuple(range(1, G.n))
        td = TreeDecomposition.from_bags([-1], [rest])
        return DeletionDecomposition((0,), td, ell, m0, 1, 0, (rest,), ((0,),), (rest,))

    monkeypatch.setattr(thin, "low_tw_deletion", always_first)
    with pytest.raises(thin.ColumnGenerationError):
        thin.thin_distribution(Graph(3), 2, 2)
