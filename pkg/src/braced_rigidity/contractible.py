"""Contractible edges of 4-connected plane triangulations.

An edge ``e`` is contractible when ``T/e`` is again 4-connected, which for a
4-connected triangulation happens exactly when ``e`` lies on no separating
4-cycle. The constructive searches here follow the degree-4 / minimal
separating 4-cycle case analysis; whenever that analysis does not produce an
admissible edge they fall back to scanning the brute-force set under the same
avoidance constraints, and report which route was taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import AdjacentPair, NoneContractible, NotFound, PreconditionViolated
from .triangulation import (
    CycleInfo,
    Edge,
    PlaneTriangulation,
    cycle_info,
    edge_key,
    induced_near_triangulation,
    is_four_connected,
    is_k_connected,
    separating_quads,
)


@dataclass(frozen=True)
class AvoidanceSpec:
    forbidden_faces: tuple = ()
    forbidden_edges: frozenset = field(default_factory=frozenset)
    forbidden_vertices: frozenset = field(default_factory=frozenset)

    def allows(self, e: Edge) -> bool:
        e = edge_key(*e)
        if e in self.forbidden_edges:
            return False
        if e[0] in self.forbidden_vertices or e[1] in self.forbidden_vertices:
            return False
        for f in self.forbidden_faces:
            if e[0] in f and e[1] in f:
                return False
        return True


def path2_edges(t: PlaneTriangulation, x: int, y: int) -> frozenset:
    """Edges on some ``x``-``y`` path of length two."""
    if x == y or t.graph.has_edge(x, y):
        raise AdjacentPair(f"{x} and {y} must be distinct and non-adjacent")
    common = t.graph.adj[x] & t.graph.adj[y]
    return frozenset(edge_key(a, w) for w in common for a in (x, y))


def _require_4c(t: PlaneTriangulation, min_n: int = 7):
    if not is_four_connected(t):
        raise PreconditionViolated("triangulation is not 4-connected")
    if t.n < min_n:
        raise PreconditionViolated(f"need at least {min_n} vertices, got {t.n}")


def contractible_edges(t: PlaneTriangulation) -> frozenset:
    """Edges on no separating 4-cycle (requires ``t`` 4-connected)."""
    key = ("contractible",)
    if key not in t._cache:
        bad = set()
        for q in separating_quads(t):
            bad |= q.edges
        t._cache[key] = frozenset(e for e in t.graph.edges if e not in bad)
    return t._cache[key]


def brute_force_contractible(t: PlaneTriangulation) -> frozenset:
    """Edges whose contraction is 4-connected, checked straight from the definition."""
    if not is_four_connected(t):
        raise PreconditionViolated("triangulation is not 4-connected")
    return frozenset(e for e in t.graph.edges if is_k_connected(t.graph.contract(e), 4))


def degree4_cofacial_choice(t: PlaneTriangulation, u: int, v1: int, v2: int) -> Edge:
    """Of two cofacial edges at a degree-4 vertex, one contracts to a 4-connected triangulation.

    ``u v1`` is preferred when both do.
    """
    _require_4c(t)
    g = t.graph
    if g.degree(u) != 4:
        raise PreconditionViolated(f"vertex {u} has degree {g.degree(u)}, not 4")
    if not (g.has_edge(u, v1) and g.has_edge(u, v2)) or frozenset((u, v1, v2)) not in t.face_sets:
        raise PreconditionViolated(f"{u}{v1} and {u}{v2} are not cofacial edges")
    good = contractible_edges(t)
    for v in (v1, v2):
        if edge_key(u, v) in good:
            return edge_key(u, v)
    raise NoneContractible(f"neither {u}-{v1} nor {u}-{v2} is contractible")


def _minimal(quads: Sequence[CycleInfo]) -> CycleInfo:
    return min(quads, key=CycleInfo.sort_key)


def _avoiding_face(t: PlaneTriangulation, face: Sequence[int]) -> tuple[Edge, str]:
    _require_4c(t)
    F = t.faces[t.face_id(face)]
    fv = set(F)
    good = contractible_edges(t)
    admissible = sorted(e for e in good if e[0] not in fv and e[1] not in fv)
    quads = separating_quads(t, outer=F)
    if not quads:
        if admissible:
            return admissible[0], "no-separating-4-cycle"
        raise NotFound(f"no contractible edge avoids face {F}")

    c = _minimal(quads)
    cyc = c.vertices
    for i in range(4):
        v1, v2 = cyc[i], cyc[(i + 1) % 4]
        if v1 not in fv and v2 not in fv:
            break
    else:
        v1 = None
    if v1 is not None:
        u = min(w for w in c.inside if t.graph.has_edge(w, v1))
        if edge_key(u, v1) in good:
            return edge_key(u, v1), "minimal-4-cycle"
        if c.inside == {u} and t.graph.degree(u) == 4:
            return degree4_cofacial_choice(t, u, v1, v2), "degree-4"
    if admissible:
        return admissible[0], "fallback"
    raise NotFound(f"no contractible edge avoids face {F}")


def find_contractible_avoiding_face(t: PlaneTriangulation, face: Sequence[int]) -> Edge:
    """A contractible edge with neither endpoint on ``face``."""
    return _avoiding_face(t, face)[0]


def _lemma33_block(t, outer, c1: CycleInfo, ok, quads, depth) -> tuple[Edge, str] | None:
    if depth > t.n:
        return None
    good = contractible_edges(t)
    block = induced_near_triangulation(t, c1, outer)
    if len(c1.inside) >= 2:
        for e in sorted(block.edges - c1.edges):
            if ok(e):
                return e, "block"
        return None

    (u0,) = c1.inside
    cyc = c1.vertices
    spokes = [edge_key(u0, v) for v in cyc]
    for e in spokes:
        if ok(e):
            return e, "wheel"
    contractible = [i for i in range(4) if spokes[i] in good]
    pair = next((i for i in range(2) if i in contractible and i + 2 in contractible), None)
    if pair is None:
        return None
    v1, v2, v3, v4 = cyc[pair], cyc[pair + 1], cyc[(pair + 2) % 4], cyc[(pair + 3) % 4]
    ws = sorted(w for w in t.graph.adj[v2] & t.graph.adj[v4] if w not in block.vertices)
    if not ws:
        return None
    w = ws[0]
    c2 = cycle_info(t, (v2, u0, v4, w), outer)
    if v1 not in c2.inside:
        v1, v3 = v3, v1
    if v1 not in c2.inside:
        return None
    if c2.inside == {v1}:
        e = edge_key(w, v1)
        if ok(e):
            return e, "degree-4-escalation"
        return None
    c3 = cycle_info(t, (v2, v1, v4, w), outer)
    if not c3.separating:
        return None
    region = set(c3.vertices) | c3.inside
    inner = [q for q in quads if set(q.vertices) <= region]
    found = _lemma33_block(t, outer, _minimal(inner), ok, quads, depth + 1)
    if found is None:
        return None
    return found[0], "nested-" + found[1]


def _lemma33(t: PlaneTriangulation, uv: Edge, x: int, y: int) -> tuple[Edge, str]:
    _require_4c(t)
    uv = edge_key(*uv)
    f1, f2 = t.faces_at_edge(uv)
    outer = min(f1, f2)
    s = path2_edges(t, x, y)
    avoid = AvoidanceSpec(forbidden_faces=(f1, f2), forbidden_edges=s)
    good = contractible_edges(t)

    def ok(e):
        return e in good and avoid.allows(e)

    admissible = sorted(e for e in good if avoid.allows(e))
    quads = separating_quads(t, outer=outer)
    if not quads:
        if admissible:
            return admissible[0], "no-separating-4-cycle"
        raise NotFound(f"no admissible contractible edge for uv={uv}, x={x}, y={y}")
    found = _lemma33_block(t, outer, _minimal(quads), ok, quads, 0)
    if found is not None:
        return found
    if admissible:
        return admissible[0], "fallback"
    raise NotFound(f"no admissible contractible edge for uv={uv}, x={x}, y={y}")


def find_contractible_lemma33(t: PlaneTriangulation, uv: Edge, x: int, y: int) -> Edge:
    """A contractible edge off both faces at ``uv`` and off every ``x``-``y`` path of length two."""
    return _lemma33(t, uv, x, y)[0]
