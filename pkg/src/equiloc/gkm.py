"""GKM moment graphs: edge congruences and graded dimensions of equivariant cohomology.

A class is an assignment vertex -> polynomial on the torus Lie algebra such
that across every edge labelled alpha the two polynomials agree on ker(alpha).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Mapping, Sequence

from .linalg import rank as matrix_rank
from .poly import MultiPoly, monomials, restrict_to_kernel
from .scalars import PiScalar, Weight, to_fraction

MAX_DEGREE = 12


class GKMError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    alpha: Weight


@dataclass(frozen=True)
class GKMGraph:
    rank: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GKMError("duplicate vertex ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.u not in vs or e.v not in vs:
                raise GKMError(f"edge {e.u}-{e.v} references an unknown vertex")
            if e.u == e.v:
                raise GKMError(f"self-loop at {e.u}")
            if e.alpha.rank != self.rank:
                raise GKMError(f"edge {e.u}-{e.v} has a weight of rank {e.alpha.rank}")
            if not e.alpha:
                raise GKMError(f"edge {e.u}-{e.v} has a zero weight")

    def incident(self, vertex: str) -> list[Edge]:
        return [e for e in self.edges if vertex in (e.u, e.v)]


def _proportional(a: Weight, b: Weight) -> bool:
    return a.normalized()[1] == b.normalized()[1]


def validate_graph(g: GKMGraph) -> list[tuple[str, Weight, Weight]]:
    """Violations of pairwise linear independence of the weights at each vertex."""
    bad = []
    for v in g.vertices:
        inc = g.incident(v)
        for i in range(len(inc)):
            for j in range(i + 1, len(inc)):
                if _proportional(inc[i].alpha, inc[j].alpha):
                    bad.append((v, inc[i].alpha, inc[j].alpha))
    return bad


def check_class(g: GKMGraph, assignment: Mapping[str, MultiPoly]) -> bool:
    """True iff alpha divides p(u) - p(v) on every edge u-v."""
    missing = [v for v in g.vertices if v not in assignment]
    if missing:
        raise GKMError(f"assignment misses vertices {missing}")
    for e in g.edges:
        diff = assignment[e.u] - assignment[e.v]
        if restrict_to_kernel(diff, e.alpha):
            return False
    return True


def _restriction_matrix(alpha: Weight, k: int) -> list[list[Fraction]]:
    """Columns: restrictions to ker(alpha) of the degree-k monomials."""
    l = alpha.rank
    src = monomials(l, k)
    dst = monomials(l - 1, k)
    index = {e: i for i, e in enumerate(dst)}
    cols = []
    for e in src:
        r = restrict_to_kernel(MultiPoly(l, {e: PiScalar(1)}), alpha)
        col = [Fraction(0)] * len(dst)
        for e2, c in r.terms.items():
            if not c.coeff.is_real or c.pi_exp:
                raise GKMError("edge weights must be real rational vectors")
            col[index[e2]] = c.coeff.re
        cols.append(col)
    return [list(row) for row in zip(*cols)] if cols and dst else []


def graded_dimension(g: GKMGraph, k: int) -> int:
    """dim of degree-k classes: per-vertex monomial coefficients subject to
    coefficientwise vanishing of restrict_to_kernel(p(u) - p(v), alpha)."""
    if k < 0:
        return 0
    if k > MAX_DEGREE:
        raise GKMError(f"degree {k} exceeds cap {MAX_DEGREE}")
    nmono = comb(k + g.rank - 1, g.rank - 1) if g.rank else int(k == 0)
    nunk = nmono * len(g.vertices)
    pos = {v: i for i, v in enumerate(g.vertices)}
    rows = []
    for e in g.edges:
        R = _restriction_matrix(e.alpha, k)
        for row in R:
            full = [Fraction(0)] * nunk
            iu, iv = pos[e.u] * nmono, pos[e.v] * nmono
            for j, c in enumerate(row):
                full[iu + j] += c
                full[iv + j] -= c
            rows.append(full)
    return nunk - matrix_rank(rows)


def closed_form_two_point(l: int, k: int) -> int:
    """2 dim C[t]^k - dim C[h]^k for a single edge in rank l."""
    dim_t = comb(k + l - 1, l - 1) if l >= 1 else int(k == 0)
    dim_h = comb(k + l - 2, l - 2) if l >= 2 else int(k == 0)
    return 2 * dim_t - dim_h


@dataclass(frozen=True)
class PoincareResult:
    counts: list[int]
    poly: list[int]
    rank: int
    formal: bool

    def as_dict(self) -> dict:
        return {"dims": self.counts, "poincare": self.poly, "rank": self.rank, "formal": self.formal}


def poincare_rank_check(g: GKMGraph, K: int) -> PoincareResult:
    """Multiply sum_k d_k q^k by (1 - q)^l; a nonnegative integer polynomial with
    at least l vanishing top coefficients certifies a free module of rank P(1)."""
    nv = len(g.vertices)
    if K < g.rank + nv:
        raise GKMError(f"need K >= rank + |V| = {g.rank + nv}")
    counts = [graded_dimension(g, k) for k in range(K + 1)]
    prod = list(counts)
    for _ in range(g.rank):
        prod = [prod[0]] + [prod[i] - prod[i - 1] for i in range(1, len(prod))]
    deg = max((i for i, c in enumerate(prod) if c), default=0)
    formal = deg <= K - g.rank and all(c >= 0 for c in prod)
    poly = prod[: deg + 1]
    total = sum(poly)
    if formal and total != nv:
        raise GKMError(f"free of rank {total} but the graph has {nv} vertices")
    return PoincareResult(counts, poly, total, formal)


def euler_class_assignment(g: GKMGraph) -> dict[str, MultiPoly]:
    """Each vertex gets the product of its incident edge weights."""
    out = {}
    for v in g.vertices:
        p = MultiPoly.constant(g.rank, 1)
        for e in g.incident(v):
            p = p * MultiPoly.linear(e.alpha)
        out[v] = p
    return out


def transform_graph(g: GKMGraph, matrix: Sequence[Sequence]) -> GKMGraph:
    """Apply an invertible rational change of coordinates to all edge weights."""
    M = [[to_fraction(x) for x in row] for row in matrix]
    edges = []
    for e in g.edges:
        a = e.alpha.real_part()
        new = [sum((M[i][j] * a[j] for j in range(g.rank)), Fraction(0)) for i in range(g.rank)]
        edges.append(Edge(e.u, e.v, Weight.real(new)))
    return GKMGraph(g.rank, g.vertices, tuple(edges))


# JSON ---------------------------------------------------------------------

def graph_from_dict(data: Mapping) -> GKMGraph:
    """Strict reader for {"rank", "vertices": [...], "edges": [{"u", "v", "alpha"}]}."""
    if not isinstance(data, Mapping) or set(data) != {"rank", "vertices", "edges"}:
        raise GKMError("graph keys must be exactly rank, vertices, edges")
    edges = []
    for raw in data["edges"]:
        if set(raw) != {"u", "v", "alpha"}:
            raise GKMError(f"bad edge keys {sorted(raw)}")
        try:
            alpha = Weight.real([to_fraction(x) for x in raw["alpha"]])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise GKMError(f"bad edge weight {raw['alpha']!r}: {exc}") from exc
        edges.append(Edge(str(raw["u"]), str(raw["v"]), alpha))
    return GKMGraph(int(data["rank"]), tuple(str(v) for v in data["vertices"]), tuple(edges))


def graph_to_dict(g: GKMGraph) -> dict:
    return {
        "rank": g.rank,
        "vertices": list(g.vertices),
        "edges": [{"u": e.u, "v": e.v, "alpha": [str(c) for c in e.alpha.real_part()]} for e in g.edges],
    }


def load_graph(path: str | Path) -> GKMGraph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))
