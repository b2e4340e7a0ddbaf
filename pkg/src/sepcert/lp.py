"""Exact rational simplex and the restricted master program for thin distributions.

Arithmetic uses ``gmpy2.mpq`` when available and ``fractions.Fraction``
otherwise; results are always returned as ``Fraction``. Pivoting follows
Bland's rule, so the method cannot cycle.

The restricted master, over a column family ``cols`` of vertex sets, is

    minimise eps  s.t.  sum_X p_X = 1,  sum_{X containing v} p_X <= eps,  p >= 0

and its dual is

    maximise s    s.t.  sum_v q_v = 1,  q(X) >= s for X in cols,  q >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

try:
    import gmpy2

    def _q(x) -> "gmpy2.mpq":
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    def _out(x) -> Fraction:
        return Fraction(int(x.numerator), int(x.denominator))

except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None

    def _q(x) -> Fraction:
        return Fraction(x)

    def _out(x) -> Fraction:
        return Fraction(x)


__all__ = [
    "LPError",
    "SimplexTableau",
    "LPResult",
    "solve_lp",
    "MasterSolution",
    "RestrictedMaster",
    "solve_restricted_master",
]


class LPError(RuntimeError):
    pass


class SimplexTableau:
    """Revised simplex over sparse columns with an explicit basis inverse.

    The initial basis must consist of unit columns: ``basis[i]`` is a column
    equal to e_i, so the starting inverse is the identity.
    """

    def __init__(self, b: Sequence, columns: Sequence[dict], costs: Sequence, basis: Sequence[int]):
        self.m = len(b)
        self.cols: list[dict[int, object]] = []
        self.cost: list = []
        for col, c in zip(columns, costs):
            self.add_column(col, c)
        self.basis = list(basis)
        for i, j in enumerate(self.basis):
            if self.cols[j] != {i: 1}:
                raise LPError(f"initial basic column {j} is not the unit vector e_{i}")
        zero, one = _q(0), _q(1)
        self.binv = [[one if i == k else zero for k in range(self.m)] for i in range(self.m)]
        self.xb = [_q(v) for v in b]
        if any(v < 0 for v in self.xb):
            raise LPError("initial basis is infeasible")
        self.blocked: set[int] = set()
        self.pivots = 0

    def add_column(self, col: dict, cost) -> int:
        self.cols.append({int(i): _q(v) for i, v in col.items() if v != 0})
        self.cost.append(_q(cost))
        return len(self.cols) - 1

    def duals(self) -> list:
        cb = [self.cost[j] for j in self.basis]
        m = self.m
        y = [_q(0)] * m
        for i in range(m):
            c = cb[i]
            if c:
                row = self.binv[i]
                for k in range(m):
                    if row[k]:
                        y[k] += c * row[k]
        return y

    def reduced_cost(self, j: int, y: list):
        return self.cost[j] - sum((y[i] * v for i, v in self.cols[j].items()), _q(0))

    def direction(self, j: int) -> list:
        col = self.cols[j]
        return [sum((row[i] * v for i, v in col.items() if row[i]), _q(0)) for row in self.binv]

    def pivot(self, r: int, j: int) -> None:
        u = self.direction(j)
        piv = u[r]
        if piv == 0:
            raise LPError("zero pivot")
        m = self.m
        prow = [v / piv for v in self.binv[r]]
        xr = self.xb[r] / piv
        nz = [k for k in range(m) if prow[k]]
        for i in range(m):
            if i == r:
                continue
            f = u[i]
            if f:
                row = self.binv[i]
                for k in nz:
                    row[k] -= f * prow[k]
                self.xb[i] -= f * xr
        self.binv[r] = prow
        self.xb[r] = xr
        self.basis[r] = j
        self.pivots += 1

    def entering(self, y: list) -> int | None:
        in_basis = set(self.basis)
        for j in range(len(self.cols)):
            if j in in_basis or j in self.blocked:
                continue
            if self.reduced_cost(j, y) < 0:
                return j
        return None

    def optimize(self, max_pivots: int | None = None) -> str:
        while True:
            y = self.duals()
            j = self.entering(y)
            if j is None:
                return "optimal"
            u = self.direction(j)
            best = None
            for i in range(self.m):
                if u[i] > 0:
                    key = (self.xb[i] / u[i], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], j)
            if max_pivots is not None and self.pivots > max_pivots:
                raise LPError("pivot limit exceeded")

    def values(self) -> list[Fraction]:
        x = [Fraction(0)] * len(self.cols)
        for i, j in enumerate(self.basis):
            x[j] = _out(self.xb[i])
        return x

    def objective(self) -> Fraction:
        return _out(sum((self.cost[j] * self.xb[i] for i, j in enumerate(self.basis)), _q(0)))


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] = ()
    objective: Fraction | None = None
    duals: tuple[Fraction, ...] = ()


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimise c.x subject to A x = b, x >= 0, exactly (two-phase simplex)."""
    m, nvar = len(A), len(c)
    sign = [(-1 if _q(bi) < 0 else 1) for bi in b]
    cols = []
    for j in range(nvar):
        cols.append({i: sign[i] * _q(A[i][j]) for i in range(m) if A[i][j] != 0})
    rhs = [sign[i] * _q(b[i]) for i in range(m)]
    art = list(range(nvar, nvar + m))
    tab = SimplexTableau(rhs, cols + [{i: 1} for i in range(m)], [0] * nvar + [1] * m, art)
    tab.optimize()
    if tab.objective() > 0:
        return LPResult("infeasible")
    # drive zero-level artificials out of the basis where a real column allows it
    for r in range(m):
        if tab.basis[r] in art:
            for j in range(nvar):
                if j not in tab.basis and tab.direction(j)[r] != 0:
                    tab.pivot(r, j)
                    break
    tab.blocked.update(art)
    for j in range(nvar):
        tab.cost[j] = _q(c[j])
    for j in art:
        tab.cost[j] = _q(0)
    if tab.optimize() == "unbounded":
        return LPResult("unbounded")
    y = tab.duals()
    return LPResult(
        "optimal",
        tuple(tab.values()[:nvar]),
        tab.objective(),
        tuple(_out(sign[i] * y[i]) for i in range(m)),
    )


@dataclass(frozen=True)
class MasterSolution:
    """Optimal primal/dual pair of the restricted master."""

    q: tuple[Fraction, ...]
    s: Fraction
    p: tuple[Fraction, ...]
    eps: Fraction

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.p) if v]


class RestrictedMaster:
    """Warm-started restricted master over a growing list of columns.

    Variable layout: index 0 is eps, 1..n are the vertex-row slacks, n+1 is a
    start-up artificial for the normalisation row (blocked after the first
    two pivots), and columns p_X follow in insertion order.
    """

    def __init__(self, n: int, first: Iterable[int]):
        if n < 1:
            raise ValueError("need at least one vertex")
        self.n = n
        eps_col = {v: -1 for v in range(n)}
        slacks = [{v: 1} for v in range(n)]
        self._art = n + 1
        self.tab = SimplexTableau(
            [0] * n + [1],
            [eps_col] + slacks + [{n: 1}],
            [1] + [0] * n + [0],
            list(range(1, n + 1)) + [n + 1],
        )
        self.columns: list[tuple[int, ...]] = []
        self._index: dict[tuple[int, ...], int] = {}
        first = tuple(sorted(set(first)))
        j = self.add_column(first)
        self.tab.pivot(n, j)
        if first:
            self.tab.pivot(first[0], 0)
        self.tab.blocked.add(self._art)
        if any(v < 0 for v in self.tab.xb):
            raise LPError("start basis infeasible")

    def __contains__(self, X) -> bool:
        return tuple(sorted(set(X))) in self._index

    def add_column(self, X: Iterable[int]) -> int:
        X = tuple(sorted(set(X)))
        if X in self._index:
            raise LPError(f"column {X} already present")
        if any(not (0 <= v < self.n) for v in X):
            raise ValueError("column vertex out of range")
        col = {v: 1 for v in X}
        col[self.n] = 1
        j = self.tab.add_column(col, 0)
        self._index[X] = len(self.columns)
        self.columns.append(X)
        return j

    def solve(self) -> MasterSolution:
        if self.tab.optimize() != "optimal":
            raise LPError("restricted master unbounded")
        n = self.n
        x = self.tab.values()
        eps = x[0]
        p = tuple(x[n + 2 :])
        y = [_out(v) for v in self.tab.duals()]
        q = [-y[v] for v in range(n)]
        s = y[n]
        deficit = 1 - sum(q, Fraction(0))
        if deficit < 0:
            raise LPError("dual weights exceed one")
        if deficit:
            q = [v + deficit / n for v in q]
        sol = MasterSolution(tuple(q), s, p, eps)
        _check_master(n, self.columns, sol)
        return sol


def _check_master(n: int, columns: Sequence[tuple[int, ...]], sol: MasterSolution) -> None:
    """Re-verify feasibility of both sides and equality of objectives."""
    if sol.s != sol.eps:
        raise LPError(f"duality gap: s = {sol.s}, eps = {sol.eps}")
    if any(v < 0 for v in sol.q) or sum(sol.q, Fraction(0)) != 1:
        raise LPError("dual weights are not a probability vector")
    for X in columns:
        if sum((sol.q[v] for v in X), Fraction(0)) < sol.s:
            raise LPError(f"dual constraint violated by column {X}")
    if any(v < 0 for v in sol.p) or sum(sol.p, Fraction(0)) != 1:
        raise LPError("primal weights are not a probability vector")
    mass = [Fraction(0)] * n
    for X, pv in zip(columns, sol.p):
        if pv:
            for v in X:
                mass[v] += pv
    if max(mass) > sol.eps:
        raise LPError("primal mass above eps")
    if len(sol.support()) > n:
        raise LPError(f"support of size {len(sol.support())} exceeds n = {n}")


def solve_restricted_master(n: int, columns: Sequence[Iterable[int]]) -> MasterSolution:
    """Solve the restricted master from scratch for a fixed column family."""
    cols = [tuple(sorted(set(X))) for X in columns]
    if not cols:
        raise ValueError("need at least one column")
    master = RestrictedMaster(n, cols[0])
    for X in cols[1:]:
        master.add_column(X)
    return master.solve()
