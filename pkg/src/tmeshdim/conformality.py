"""Smoothing-cofactor conformality systems over sets of t-ledges.

Each vertex of a component carries one cofactor.  A horizontal t-ledge with
vertices at x_1..x_r imposes sum_i delta_i (x - x_i)^d = 0, which is the
same as sum_i delta_i x_i^j = 0 for j = 0..d.  Vertical edges use y.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DuplicateNodes
from .linalg import RankResult, exact_rank, integer_row, rref, sparse_rank
from .mesh import LEdge, TConnectedComponent

__all__ = [
    "ConformalitySystem", "edge_system", "is_vanishable", "assemble", "exact_rank",
    "dim_cvs", "reasonable_order", "reasonable_order_exhaustive", "bipartite_reduce",
    "Reduction", "vandermonde_rref", "lagrange_rref",
]


def edge_system(nodes: Sequence, d: int) -> list[list[Fraction]]:
    """The (d+1) x r Vandermonde block of one edge: row j holds x_i**j."""
    xs = [Fraction(x) for x in nodes]
    if len(set(xs)) != len(xs):
        raise DuplicateNodes("edge vertices must have distinct free coordinates")
    return [[x ** j for x in xs] for j in range(d + 1)]


def is_vanishable(edge: LEdge | int, d: int) -> bool:
    """True iff the edge has fewer than d+1 vertices."""
    r = edge if isinstance(edge, int) else len(edge.vertices)
    return r < d + 1


@dataclass(frozen=True)
class ConformalitySystem:
    variables: tuple[int, ...]
    edges: tuple[LEdge, ...]
    rows: tuple[dict[int, Fraction], ...]
    degree: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.variables)

    def dense(self) -> list[list[Fraction]]:
        n = len(self.variables)
        return [[row.get(j, Fraction(0)) for j in range(n)] for row in self.rows]

    def rank(self) -> RankResult:
        return sparse_rank((integer_row(r) for r in self.rows), len(self.variables))


def assemble(component: TConnectedComponent, d: int) -> ConformalitySystem:
    variables = tuple(sorted(component.vertices))
    col = {v: i for i, v in enumerate(variables)}
    rows = []
    for e in component.edges:
        vs = component.edge_vertices(e)
        xs = [component.free_coordinate(e, v) for v in vs]
        for j in range(d + 1):
            rows.append({col[v]: x ** j for v, x in zip(vs, xs)})
    return ConformalitySystem(variables, tuple(component.edges), tuple(rows), d)


def dim_cvs(component: TConnectedComponent, d: int) -> int:
    """Dimension of the conformality vector space of the component."""
    system = assemble(component, d)
    return len(system.variables) - system.rank().rank


def _exclusive(component: TConnectedComponent, e: LEdge, others: Sequence[LEdge]) -> int:
    taken = {v for o in others if o is not e for v in component.edge_vertices(o)}
    return sum(v not in taken for v in component.edge_vertices(e))


def _peel(component: TConnectedComponent, d: int) -> tuple[list[LEdge], list[int], list[LEdge]]:
    # Repeatedly drop an edge with >= d+1 vertices on no other remaining edge.
    # Dropping only helps the rest, so the peelable set does not depend on
    # the choices made and greedy never misses an order.
    remaining = list(component.edges)
    peeled, counts = [], []
    progress = True
    while remaining and progress:
        progress = False
        for e in list(remaining):
            r = _exclusive(component, e, remaining)
            if r >= d + 1:
                remaining.remove(e)
                peeled.append(e)
                counts.append(r)
                progress = True
    return peeled, counts, remaining


def reasonable_order(component: TConnectedComponent, d: int) -> list[LEdge] | None:
    """An order l_1..l_t in which every l_i has >= d+1 vertices off l_1..l_{i-1}."""
    if not component.edges:
        return []
    peeled, _, remaining = _peel(component, d)
    if remaining:
        return None
    return peeled[::-1]


def reasonable_order_exhaustive(component: TConnectedComponent, d: int,
                                max_edges: int = 12) -> list[LEdge] | None:
    """Backtracking search over all orders (small components only)."""
    edges = list(component.edges)
    if len(edges) > max_edges:
        raise ValueError(f"exhaustive search limited to {max_edges} edges")
    vsets = [set(component.edge_vertices(e)) for e in edges]
    dead: set[int] = set()

    def search(mask: int, covered: frozenset) -> list[int] | None:
        if mask == (1 << len(edges)) - 1:
            return []
        if mask in dead:
            return None
        for i in range(len(edges)):
            if mask >> i & 1:
                continue
            if len(vsets[i] - covered) >= d + 1:
                rest = search(mask | 1 << i, covered | vsets[i])
                if rest is not None:
                    return [i] + rest
        dead.add(mask)
        return None

    found = search(0, frozenset())
    return None if found is None else [edges[i] for i in found]


@dataclass(frozen=True)
class Reduction:
    core: TConnectedComponent
    peeled: tuple[LEdge, ...]  # in reasonable order
    peeled_component: TConnectedComponent
    fresh: tuple[int, ...]  # r(l) for each peeled edge, same order
    degree: int

    @property
    def peeled_dim(self) -> int:
        """CVS dimension of the peeled part, which has full row rank."""
        return sum(self.fresh) - (self.degree + 1) * len(self.peeled)


def bipartite_reduce(component: TConnectedComponent, d: int) -> Reduction:
    """Split off every edge that can be peeled; the rest is the core.

    The core keeps all of its vertices; the peeled edges keep only the
    vertices not shared with the core.
    """
    peeled, counts, remaining = _peel(component, d)
    core = component.restrict(remaining)
    pcomp = component.restrict(peeled, {v for e in peeled for v in component.edge_vertices(e)
                                        if v not in core.vertices})
    return Reduction(core, tuple(peeled[::-1]), pcomp, tuple(counts[::-1]), d)


def vandermonde_rref(nodes: Sequence, n: int) -> list[list[Fraction]]:
    """RREF of the (n+1) x k matrix with entries s_j**i, by elimination."""
    s = [Fraction(x) for x in nodes]
    if len(set(s)) != len(s):
        raise DuplicateNodes("nodes must be distinct")
    if len(s) <= n + 1:
        raise ValueError("need more than n+1 nodes")
    red, _ = rref([[x ** i for x in s] for i in range(n + 1)])
    return red


def lagrange_rref(nodes: Sequence, n: int) -> list[list[Fraction]]:
    """Closed form (I | S) with S[i][j] = f_i(s_{n+1+j}), f_i the Lagrange basis."""
    s = [Fraction(x) for x in nodes]
    if len(set(s)) != len(s):
        raise DuplicateNodes("nodes must be distinct")
    base, extra = s[:n + 1], s[n + 1:]

    def f(i: int, x: Fraction) -> Fraction:
        out = Fraction(1)
        for j, sj in enumerate(base):
            if j != i:
                out *= (x - sj) / (base[i] - sj)
        return out

    return [[Fraction(int(i == j)) for j in range(n + 1)] + [f(i, x) for x in extra]
            for i in range(n + 1)]
