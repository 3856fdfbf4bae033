"""Bar-joint frameworks over an exact field.

Rows of the rigidity matrix are ``p(u) - p(v)`` in the columns of ``u`` and
``p(v) - p(u)`` in those of ``v``; this is the Jacobian of the squared edge
length map divided by 2, which does not change any rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import (
    GeneralPositionViolated,
    InvalidSplit,
    MaxAttemptsExceeded,
    PreconditionViolated,
)
from .linalg import FieldSpec, Matrix, RandomSource, random_config, rank
from .triangulation import Edge, SimpleGraph, contraction_map, edge_key

#: Randomised constructions give up after this many fresh draws.
MAX_ATTEMPTS = 16


def max_rank(n: int, d: int) -> int:
    """Rank of an infinitesimally rigid framework on ``n`` points in dimension ``d``."""
    if n <= d + 1:
        return comb(n, 2)
    return d * n - comb(d + 1, 2)


@dataclass(frozen=True)
class Framework:
    graph: SimpleGraph
    d: int
    p: tuple
    field: FieldSpec = field(default_factory=FieldSpec)

    def __post_init__(self):
        if len(self.p) != self.graph.n or any(len(pt) != self.d for pt in self.p):
            raise ValueError(f"configuration must hold {self.graph.n} points of dimension {self.d}")

    @property
    def n(self) -> int:
        return self.graph.n

    def with_graph(self, g: SimpleGraph) -> "Framework":
        return Framework(g, self.d, self.p, self.field)

    def relabel(self, mapping: Sequence[int]) -> "Framework":
        """Framework on the relabelled graph; ``mapping`` must be a permutation."""
        p = [None] * self.n
        for old, new in enumerate(mapping):
            p[new] = self.p[old]
        return Framework(self.graph.relabel(mapping), self.d, tuple(p), self.field)


def rigidity_matrix(fw: Framework) -> Matrix:
    fs = fw.field
    d = fw.d
    zero = fs.element(0)
    rows = []
    for u, v in fw.graph.sorted_edges():
        row = [zero] * (d * fw.n)
        for k in range(d):
            diff = fs.element(fw.p[u][k] - fw.p[v][k])
            row[d * u + k] = diff
            row[d * v + k] = fs.element(-diff)
        rows.append(row)
    return Matrix(rows, d * fw.n, fs)


def framework_rank(fw: Framework) -> int:
    return rank(rigidity_matrix(fw))


def is_inf_rigid(fw: Framework) -> bool:
    return framework_rank(fw) == max_rank(fw.n, fw.d)


def coincident_config(n: int, d: int, pair: tuple[int, int], rng: RandomSource, fs: FieldSpec) -> tuple:
    u, v = pair
    if u == v:
        raise PreconditionViolated("coincident vertices must be distinct")
    p = list(random_config(n, d, rng, fs))
    p[v] = p[u]
    return tuple(p)


def generic_rank(g: SimpleGraph, d: int, rng: RandomSource, trials: int = 3,
                 fs: FieldSpec | None = None) -> int:
    """Largest rigidity-matrix rank seen over ``trials`` random configurations."""
    fs = fs or FieldSpec()
    cap = min(g.m, max_rank(g.n, d))
    best = 0
    for _ in range(trials):
        best = max(best, framework_rank(Framework(g, d, random_config(g.n, d, rng, fs), fs)))
        if best == cap:
            break
    return best


def coincident_rank(g: SimpleGraph, pair: tuple[int, int], d: int, rng: RandomSource, trials: int = 3,
                    fs: FieldSpec | None = None) -> int:
    """Largest rank over random configurations with ``p(u) = p(v)``."""
    fs = fs or FieldSpec()
    cap = min(g.m, max_rank(g.n, d))
    best = 0
    for _ in range(trials):
        p = coincident_config(g.n, d, pair, rng, fs)
        best = max(best, framework_rank(Framework(g, d, p, fs)))
        if best == cap:
            break
    return best


def is_coincident_inf_rigid(g: SimpleGraph, pair: tuple[int, int], d: int, rng: RandomSource,
                            trials: int = 3, fs: FieldSpec | None = None) -> bool:
    return coincident_rank(g, pair, d, rng, trials, fs) == max_rank(g.n, d)


def in_general_position(points: Sequence[Sequence], fs: FieldSpec) -> bool:
    """At most d+1 points are in general position iff they are affinely independent."""
    if len(points) <= 1:
        return True
    base = points[0]
    diffs = [[fs.element(a - b) for a, b in zip(pt, base)] for pt in points[1:]]
    return rank(Matrix(diffs, len(base), fs)) == len(points) - 1


# --- vertex splitting ------------------------------------------------------

@dataclass(frozen=True)
class VertexSplit:
    """Split ``v`` into ``v'`` (keeps id ``v``) and ``v''`` (new id ``n``).

    ``neighbors_v1`` / ``neighbors_v2`` are the neighbours of ``v'`` / ``v''``
    other than each other.
    """

    v: int
    neighbors_v1: frozenset
    neighbors_v2: frozenset
    d: int = 3

    @property
    def shared(self) -> frozenset:
        return self.neighbors_v1 & self.neighbors_v2

    def check(self, g: SimpleGraph, strict: bool = True) -> None:
        """``strict`` demands exactly d-1 shared neighbours; otherwise at least d-1."""
        if not 0 <= self.v < g.n:
            raise InvalidSplit(f"vertex {self.v} is not in the graph")
        if self.neighbors_v1 | self.neighbors_v2 != g.adj[self.v]:
            raise InvalidSplit("the two neighbour sets must cover N(v) exactly")
        k = len(self.shared)
        if (strict and k != self.d - 1) or k < self.d - 1:
            raise InvalidSplit(f"{k} shared neighbours; a {self.d}-dimensional split needs {self.d - 1}")


def apply_vertex_split(g: SimpleGraph, split: VertexSplit, strict: bool = True) -> SimpleGraph:
    split.check(g, strict)
    v, new = split.v, g.n
    edges = {e for e in g.edges if v not in e}
    edges |= {edge_key(v, w) for w in split.neighbors_v1}
    edges |= {edge_key(new, w) for w in split.neighbors_v2}
    edges.add((v, new))
    return SimpleGraph(g.n + 1, frozenset(edges))


def split_of_edge(g: SimpleGraph, e: Edge) -> tuple[VertexSplit, SimpleGraph, tuple[int, ...]]:
    """Express ``g`` as a split of ``g/e``.

    Returns the split (in the labels of ``g/e``), ``g/e`` itself, and the map
    from the labels of ``apply_vertex_split(g/e, split)`` back to those of ``g``.
    """
    a, b = edge_key(*e)
    if not g.has_edge(a, b):
        raise InvalidSplit(f"{e} is not an edge")
    cmap = contraction_map(g.n, (a, b))
    child = g.relabel(cmap, g.n - 1)
    n1 = frozenset(cmap[w] for w in g.adj[a] if w != b)
    n2 = frozenset(cmap[w] for w in g.adj[b] if w != a)
    split = VertexSplit(cmap[a], n1, n2)
    back = [0] * g.n
    for old in range(g.n):
        if old != b:
            back[cmap[old]] = old
    back[g.n - 1] = b
    return split, child, tuple(back)


def realize_vertex_split(fw: Framework, split: VertexSplit, rng: RandomSource, strict: bool = True) -> Framework:
    """Infinitesimally rigid realisation of the split graph with ``p'(v') = p(v)``.

    Only ``v''`` is placed afresh; every other point is kept.
    """
    g2 = apply_vertex_split(fw.graph, split, strict)
    if not is_inf_rigid(fw):
        raise PreconditionViolated("input framework is not infinitesimally rigid")
    pts = [fw.p[split.v]] + [fw.p[s] for s in sorted(split.shared)][: fw.d - 1]
    if not in_general_position(pts, fw.field):
        raise GeneralPositionViolated("split vertex and shared neighbours are not in general position")
    for _ in range(MAX_ATTEMPTS):
        new_pt = tuple(rng.element(fw.field) for _ in range(fw.d))
        out = Framework(g2, fw.d, fw.p + (new_pt,), fw.field)
        if is_inf_rigid(out):
            return out
    raise MaxAttemptsExceeded("no infinitesimally rigid placement of the new vertex found")


def one_extension(fw: Framework, remove: Edge, attach: Sequence[int], rng: RandomSource) -> Framework:
    """Delete ``v1 v2``, add vertex ``n`` joined to ``v1``, ``v2`` and ``attach``.

    ``attach`` holds the d-1 further neighbours.
    """
    v1, v2 = remove
    ends = [v1, v2, *attach]
    if len(set(ends)) != len(ends) or len(ends) != fw.d + 1:
        raise PreconditionViolated(f"need {fw.d + 1} distinct attachment vertices")
    if not fw.graph.has_edge(v1, v2):
        raise PreconditionViolated(f"{v1}-{v2} is not an edge")
    if not is_inf_rigid(fw):
        raise PreconditionViolated("input framework is not infinitesimally rigid")
    if not in_general_position([fw.p[w] for w in ends], fw.field):
        raise GeneralPositionViolated("attachment points are not in general position")
    new = fw.n
    g2 = SimpleGraph(fw.n + 1, (fw.graph.edges - {edge_key(v1, v2)}) | {(w, new) for w in ends})
    for _ in range(MAX_ATTEMPTS):
        pt = tuple(rng.element(fw.field) for _ in range(fw.d))
        out = Framework(g2, fw.d, fw.p + (pt,), fw.field)
        if is_inf_rigid(out):
            return out
    raise MaxAttemptsExceeded("1-extension did not produce an infinitesimally rigid framework")


def glue(fw1: Framework, g2: SimpleGraph, x: int, y: int, z: int, rng: RandomSource) -> Framework:
    """Realise ``(G1 + G2) - xz + xy`` keeping ``fw1`` on ``G1``.

    Labelling: ``G1`` is ``fw1.graph`` on ``0..n1-1``; ``g2`` lives on
    ``0..N-1`` and its vertices below ``n1`` are the shared ones, while
    ``n1..N-1`` are exactly its private vertices. ``G1`` and ``G2`` must both
    be generically rigid; that is the caller's responsibility.
    """
    n1, d = fw1.n, fw1.d
    v2 = {w for e in g2.edges for w in e}
    shared = sorted(w for w in v2 if w < n1)
    private = sorted(w for w in v2 if w >= n1)
    if private != list(range(n1, g2.n)):
        raise PreconditionViolated("g2 must use every label from n1 up to its vertex count")
    if not (x < n1 and x not in v2):
        raise PreconditionViolated(f"x={x} must be a vertex of G1 only")
    if y not in private:
        raise PreconditionViolated(f"y={y} must be a vertex of G2 only")
    if z not in shared:
        raise PreconditionViolated(f"z={z} must be shared by G1 and G2")
    if not fw1.graph.has_edge(x, z):
        raise PreconditionViolated(f"{x}-{z} is not an edge of G1")
    if len(shared) < max(3, d):
        raise PreconditionViolated(f"G1 and G2 share {len(shared)} vertices; need at least {max(3, d)}")

    others = [s for s in shared if s != z][: d - 1]
    ext = one_extension(fw1, (x, z), others, rng)
    # the 1-extension vertex is n1 and becomes y; the edges from it to the rest
    # of the shared set are then subsumed by G2, which is rigid
    target = (fw1.graph.edges - {edge_key(x, z)}) | g2.edges | {edge_key(x, y)}
    g = SimpleGraph(g2.n, frozenset(target))
    for _ in range(MAX_ATTEMPTS):
        p = list(ext.p[:n1]) + [None] * (g2.n - n1)
        p[y] = ext.p[n1]
        for w in private:
            if w != y:
                p[w] = tuple(rng.element(fw1.field) for _ in range(d))
        out = Framework(g, d, tuple(p), fw1.field)
        if is_inf_rigid(out):
            return out
    raise MaxAttemptsExceeded("glued framework is not infinitesimally rigid")
