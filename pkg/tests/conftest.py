import random
from fractions import Fraction

from hypothesis import strategies as st

from sepcert.certificates import TreeDecomposition
from sepcert.graph import CostAssignment, Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_costs(rng: random.Random, n: int, spread: int = 5) -> CostAssignment:
    return CostAssignment([Fraction(rng.randint(1, spread), rng.randint(1, spread)) for _ in range(n)])


def union_find_components(G: Graph) -> list[tuple[int, ...]]:
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in range(G.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(n, chosen)


@st.composite
def graphs_with_costs(draw, min_n=1, max_n=12):
    G = draw(graphs(min_n, max_n))
    vals = draw(st.lists(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12), min_size=G.n, max_size=G.n))
    return G, CostAssignment(vals)


def heuristic_decomposition(G: Graph) -> TreeDecomposition:
    """Min-degree elimination decomposition from networkx, rooted at bag 0."""
    import networkx as nx
    from networkx.algorithms.approximation import treewidth_min_degree

    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.edges)
    _, tree = treewidth_min_degree(nxg)
    bags = list(tree.nodes)
    index = {b: i for i, b in enumerate(bags)}
    parent = [-1] * len(bags)
    seen = {0}
    order = [0]
    for i in order:
        for nb in tree.neighbors(bags[i]):
            j = index[nb]
            if j not in seen:
                seen.add(j)
                parent[j] = i
                order.append(j)
    return TreeDecomposition.from_bags(parent, [sorted(b) for b in bags])


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
