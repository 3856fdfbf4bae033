"""Plane triangulations given by rotation systems.

A triangulation is stored as a vertex count plus, for each vertex, the cyclic
(counterclockwise) order of its neighbours. Faces are traced combinatorially:
the dart following ``u -> v`` on its face is ``v -> w`` where ``w`` is the
successor of ``u`` in the rotation at ``v``. No coordinates are involved at any
point; the inside of a cycle is the side that does not contain the designated
outer face.

Vertices are always ``0..n-1``. Operations that remove a vertex ``r`` shift
every id above ``r`` down by one; contraction keeps the smaller endpoint id.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    EdgeOnSeparatingTriangle,
    EulerViolation,
    InputError,
    InvariantBreach,
    NonTriangularFace,
    Not3Connected,
    NotAnEdge,
    NotFourConnected,
    NotSimple,
)

Edge = tuple[int, int]
Face = tuple[int, int, int]

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def removal_map(n: int, r: int) -> tuple[int, ...]:
    """Relabel map after deleting vertex ``r`` (``r`` itself maps to -1)."""
    return tuple(-1 if x == r else (x if x < r else x - 1) for x in range(n))


def contraction_map(n: int, e: Edge) -> tuple[int, ...]:
    """Relabel map after contracting ``e``; both endpoints go to the smaller id."""
    keep, gone = edge_key(*e)
    m = removal_map(n, gone)
    return tuple(m[keep] if x == gone else m[x] for x in range(n))


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise NotSimple(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise NotSimple(f"edge {u}-{v} has an endpoint outside 0..{self.n - 1}")
            norm.add(edge_key(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        edges = [tuple(e) for e in edges]
        keys = [edge_key(*e) for e in edges]
        if len(set(keys)) != len(keys):
            raise NotSimple("parallel edges")
        return cls(n, frozenset(keys))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    def neighbors(self, v: int) -> frozenset:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges | {edge_key(*e) for e in extra})

    def without_edges(self, drop: Iterable[Sequence[int]]) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges - {edge_key(*e) for e in drop})

    def relabel(self, mapping: Sequence[int], n: int | None = None) -> "SimpleGraph":
        """Image under ``mapping``; loops and parallel images are dropped."""
        n = self.n if n is None else n
        out = set()
        for u, v in self.edges:
            a, b = mapping[u], mapping[v]
            if a != b and a >= 0 and b >= 0:
                out.add(edge_key(a, b))
        return SimpleGraph(n, frozenset(out))

    def contract(self, e: Edge) -> "SimpleGraph":
        if not self.has_edge(*e):
            raise NotAnEdge(f"{e} is not an edge")
        return self.relabel(contraction_map(self.n, e), self.n - 1)

    def delete_vertex(self, x: int) -> "SimpleGraph":
        return self.relabel(removal_map(self.n, x), self.n - 1)

    def is_connected(self, removed: Iterable[int] = ()) -> bool:
        removed = set(removed)
        alive = [v for v in range(self.n) if v not in removed]
        if len(alive) <= 1:
            return True
        seen = {alive[0]}
        queue = deque([alive[0]])
        while queue:
            v = queue.popleft()
            for w in self.adj[v]:
                if w not in seen and w not in removed:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(alive)

    def canonical_bytes(self) -> bytes:
        """``n`` followed by ``;u,v`` for every edge in sorted order, ASCII."""
        return (str(self.n) + "".join(f";{u},{v}" for u, v in self.sorted_edges())).encode("ascii")

    def graph_hash(self) -> str:
        return f"{fnv1a64(self.canonical_bytes()):016x}"


def is_k_connected(g: SimpleGraph, k: int) -> bool:
    """True iff ``g`` has more than ``k`` vertices and no vertex cut of size < k."""
    if g.n <= k:
        return False
    if not g.is_connected():
        return False
    if k <= 1:
        return True
    # a cut smaller than k-1 can always be padded to one of size exactly k-1 while n > k
    return all(g.is_connected(cut) for cut in itertools.combinations(range(g.n), k - 1))


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Start at the smallest vertex, walk towards its smaller cycle-neighbour."""
    c = list(cycle)
    i = c.index(min(c))
    fwd = c[i:] + c[:i]
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


def canonical_face(face: Sequence[int]) -> Face:
    """Rotate an oriented face so it starts at its smallest vertex."""
    i = face.index(min(face))
    return tuple(face[i:]) + tuple(face[:i])


@dataclass(frozen=True)
class CycleInfo:
    vertices: tuple[int, ...]
    inside: frozenset
    outside: frozenset

    @property
    def separating(self) -> bool:
        return bool(self.inside) and bool(self.outside)

    @property
    def edges(self) -> frozenset:
        c = self.vertices
        return frozenset(edge_key(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))

    def sort_key(self):
        return (len(self.inside), self.vertices)


@dataclass(frozen=True)
class RotationSystem:
    rotation: tuple[tuple[int, ...], ...]
    outer_face: Face | None = None

    @property
    def n(self) -> int:
        return len(self.rotation)


def _trace(rotation) -> tuple[list[tuple[int, ...]], dict]:
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    face_of: dict[tuple[int, int], int] = {}
    walks = []
    for u, r in enumerate(rotation):
        for v in r:
            if (u, v) in face_of:
                continue
            fid = len(walks)
            walk = []
            a, b = u, v
            while (a, b) not in face_of:
                face_of[(a, b)] = fid
                walk.append(a)
                rb = rotation[b]
                a, b = b, rb[(pos[b][a] + 1) % len(rb)]
            walks.append(tuple(walk))
    return walks, face_of


@dataclass(frozen=True)
class PlaneTriangulation:
    graph: SimpleGraph
    embedding: RotationSystem

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def rotation(self) -> tuple[tuple[int, ...], ...]:
        return self.embedding.rotation

    @property
    def outer_face(self) -> Face:
        return self.embedding.outer_face

    @cached_property
    def _traced(self):
        walks, face_of = _trace(self.rotation)
        return [canonical_face(w) for w in walks], face_of

    @property
    def faces(self) -> list[Face]:
        return self._traced[0]

    @cached_property
    def face_sets(self) -> frozenset:
        return frozenset(frozenset(f) for f in self.faces)

    def face_at(self, u: int, v: int) -> Face:
        """The face on which the dart ``u -> v`` lies."""
        return self.faces[self._traced[1][(u, v)]]

    def faces_at_edge(self, e: Edge) -> tuple[Face, Face]:
        u, v = e
        if not self.graph.has_edge(u, v):
            raise NotAnEdge(f"{e} is not an edge")
        return self.face_at(u, v), self.face_at(v, u)

    def face_id(self, face: Iterable[int]) -> int:
        target = frozenset(face)
        for i, f in enumerate(self.faces):
            if frozenset(f) == target:
                return i
        raise InputError(f"{tuple(face)} is not a face")

    @cached_property
    def _cache(self) -> dict:
        return {}

    def with_outer_face(self, face: Iterable[int]) -> "PlaneTriangulation":
        f = self.faces[self.face_id(face)]
        return PlaneTriangulation(self.graph, RotationSystem(self.rotation, f))

    def to_json(self) -> dict:
        return {"n": self.n, "rotation": [list(r) for r in self.rotation], "outer_face": list(self.outer_face)}


def validate(graph: SimpleGraph | None, rotation: RotationSystem | Sequence[Sequence[int]],
             outer_face: Sequence[int] | None = None) -> PlaneTriangulation:
    """Check a rotation system and return the triangulation it describes.

    ``graph`` may be None, in which case it is read off the rotation. Raises on
    the first violated invariant, in the order simplicity, triangular faces,
    Euler relation, 3-connectivity.
    """
    if isinstance(rotation, RotationSystem):
        outer_face = rotation.outer_face if outer_face is None else outer_face
        rotation = rotation.rotation
    rot = tuple(tuple(int(w) for w in r) for r in rotation)
    n = len(rot)
    if graph is not None and graph.n != n:
        raise NotSimple(f"graph has {graph.n} vertices but the rotation has {n}")
    darts = set()
    for u, r in enumerate(rot):
        if len(set(r)) != len(r):
            raise NotSimple(f"vertex {u} lists a neighbour twice")
        for w in r:
            if w == u:
                raise NotSimple(f"loop at vertex {u}")
            if not 0 <= w < n:
                raise NotSimple(f"vertex {u} lists neighbour {w} outside 0..{n - 1}")
            darts.add((u, w))
    for u, w in darts:
        if (w, u) not in darts:
            raise NotSimple(f"vertex {w} does not list {u} although {u} lists {w}")
    g = SimpleGraph(n, frozenset(edge_key(u, w) for u, w in darts))
    if graph is not None and graph.edges != g.edges:
        raise NotSimple("rotation is not a permutation of the neighbour sets of the graph")

    walks, _ = _trace(rot)
    for w in walks:
        if len(w) != 3:
            raise NonTriangularFace(f"face walk {list(w)} has length {len(w)}")
    if n - g.m + len(walks) != 2:
        raise EulerViolation(f"n - m + f = {n} - {g.m} + {len(walks)} != 2")
    if not is_k_connected(g, 3):
        raise Not3Connected("graph is not 3-connected")

    faces = [canonical_face(w) for w in walks]
    if outer_face is None:
        outer = canonical_face(_trace_face(rot, 0, rot[0][0]))
    else:
        target = frozenset(int(x) for x in outer_face)
        matches = [f for f in faces if frozenset(f) == target]
        if not matches:
            raise InputError(f"outer face {list(outer_face)} is not a face")
        outer = matches[0]
    return PlaneTriangulation(g, RotationSystem(rot, outer))


def _trace_face(rot, u, v) -> tuple[int, ...]:
    walk = []
    a, b = u, v
    while True:
        walk.append(a)
        rb = rot[b]
        a, b = b, rb[(rb.index(a) + 1) % len(rb)]
        if (a, b) == (u, v):
            return tuple(walk)


def from_rotation(rotation: Sequence[Sequence[int]], outer_face: Sequence[int] | None = None) -> PlaneTriangulation:
    return validate(None, rotation, outer_face)


def from_faces(n: int, faces: Iterable[Sequence[int]], outer_face: Sequence[int] | None = None) -> PlaneTriangulation:
    """Build a triangulation from consistently oriented triangles."""
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for a, b, c in faces:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            # at y, arriving from x, the face continues to z
            if x in succ[y]:
                raise NotSimple(f"faces are not consistently oriented around vertex {y}")
            succ[y][x] = z
    rotation = []
    for v in range(n):
        if not succ[v]:
            raise NotSimple(f"vertex {v} lies on no face")
        start = min(succ[v])
        order = [start]
        while True:
            nxt = succ[v].get(order[-1])
            if nxt is None:
                raise NonTriangularFace(f"faces around vertex {v} do not close up")
            if nxt == start:
                break
            order.append(nxt)
            if len(order) > len(succ[v]):
                raise NonTriangularFace(f"faces around vertex {v} do not close up")
        if len(order) != len(succ[v]):
            raise NonTriangularFace(f"vertex {v} has a pinched neighbourhood")
        rotation.append(order)
    return validate(None, rotation, outer_face)


def triangulation_from_json(obj: dict) -> PlaneTriangulation:
    try:
        rotation = obj["rotation"]
    except (KeyError, TypeError):
        raise InputError("triangulation JSON needs a 'rotation' field") from None
    if "n" in obj and obj["n"] != len(rotation):
        raise InputError(f"'n' is {obj['n']} but the rotation lists {len(rotation)} vertices")
    return validate(None, rotation, obj.get("outer_face"))


# --- cycles ----------------------------------------------------------------

def cycle_info(t: PlaneTriangulation, cycle: Sequence[int], outer: Sequence[int] | None = None) -> CycleInfo:
    """Classify the vertices off ``cycle`` as inside or outside.

    The faces of ``t`` are split into two regions by the cycle edges; the region
    holding ``outer`` (default: the designated outer face) is the outside.
    """
    cyc = canonical_cycle(cycle)
    k = len(cyc)
    cedges = {edge_key(cyc[i], cyc[(i + 1) % k]) for i in range(k)}
    if len(set(cyc)) != k or any(e not in t.graph.edges for e in cedges):
        raise InputError(f"{list(cycle)} is not a cycle of the triangulation")
    outer_id = t.face_id(outer if outer is not None else t.outer_face)
    face_of = t._traced[1]
    seen = {outer_id}
    queue = deque([outer_id])
    while queue:
        fid = queue.popleft()
        f = t.faces[fid]
        for i in range(3):
            a, b = f[i], f[(i + 1) % 3]
            if edge_key(a, b) in cedges:
                continue
            other = face_of[(b, a)]
            if other not in seen:
                seen.add(other)
                queue.append(other)
    cset = set(cyc)
    inside, outside = set(), set()
    for v in range(t.n):
        if v in cset:
            continue
        fid = face_of[(v, t.rotation[v][0])]
        (outside if fid in seen else inside).add(v)
    return CycleInfo(cyc, frozenset(inside), frozenset(outside))


def inside_faces(t: PlaneTriangulation, c: CycleInfo, outer: Sequence[int] | None = None) -> list[Face]:
    cedges = c.edges
    outer_id = t.face_id(outer if outer is not None else t.outer_face)
    face_of = t._traced[1]
    seen = {outer_id}
    queue = deque([outer_id])
    while queue:
        f = t.faces[queue.popleft()]
        for i in range(3):
            a, b = f[i], f[(i + 1) % 3]
            if edge_key(a, b) not in cedges:
                other = face_of[(b, a)]
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
    return [f for i, f in enumerate(t.faces) if i not in seen]


def separating_triangles(t: PlaneTriangulation, outer: Sequence[int] | None = None) -> list[CycleInfo]:
    key = ("sep3", frozenset(outer) if outer is not None else None)
    if key not in t._cache:
        g = t.graph
        found = []
        for u, v in g.sorted_edges():
            for w in sorted(g.adj[u] & g.adj[v]):
                if w <= v or frozenset((u, v, w)) in t.face_sets:
                    continue
                info = cycle_info(t, (u, v, w), outer)
                if info.separating:
                    found.append(info)
        t._cache[key] = sorted(found, key=lambda c: c.vertices)
    return list(t._cache[key])


def is_four_connected(t: PlaneTriangulation) -> bool:
    return t.n >= 6 and not separating_triangles(t)


def _all_four_cycles(g: SimpleGraph) -> list[tuple[int, ...]]:
    out = set()
    for a, c in itertools.combinations(range(g.n), 2):
        common = sorted(g.adj[a] & g.adj[c])
        for b, d in itertools.combinations(common, 2):
            out.add(canonical_cycle((a, b, c, d)))
    return sorted(out)


def separating_quads(t: PlaneTriangulation, outer: Sequence[int] | None = None) -> list[CycleInfo]:
    """All separating 4-cycles of a 4-connected triangulation, sorted by cycle."""
    if not is_four_connected(t):
        raise NotFourConnected("separating 4-cycles are only defined here for 4-connected triangulations")
    key = ("sep4", frozenset(outer) if outer is not None else None)
    if key not in t._cache:
        g = t.graph
        found = []
        for cyc in _all_four_cycles(g):
            info = cycle_info(t, cyc, outer)
            if not info.separating:
                continue
            if g.has_edge(cyc[0], cyc[2]) or g.has_edge(cyc[1], cyc[3]):
                raise InvariantBreach(f"separating 4-cycle {cyc} has a chord in a 4-connected triangulation")
            found.append(info)
        t._cache[key] = found
    return list(t._cache[key])


# --- local surgery ---------------------------------------------------------

def _rebuild(rot: list[list[int]], mapping: Sequence[int], n_new: int, outer_old: Face | None) -> PlaneTriangulation:
    new_rot = [None] * n_new
    for old, r in enumerate(rot):
        if mapping[old] < 0 or r is None:
            continue
        new_rot[mapping[old]] = [mapping[w] for w in r]
    outer = None
    if outer_old is not None:
        imgs = [mapping[x] for x in outer_old]
        if min(imgs) >= 0 and len(set(imgs)) == 3:
            outer = imgs
    t = validate(None, new_rot)
    if outer is not None and frozenset(outer) in t.face_sets:
        t = t.with_outer_face(outer)
    return t


def contract(t: PlaneTriangulation, e: Edge) -> PlaneTriangulation:
    """``T/e``: merge the endpoints of ``e`` into the smaller id."""
    a, b = edge_key(*e)
    g = t.graph
    if not g.has_edge(a, b):
        raise NotAnEdge(f"{e} is not an edge")
    common = g.adj[a] & g.adj[b]
    if len(common) != 2:
        raise EdgeOnSeparatingTriangle(f"edge {a}-{b} lies on a separating triangle")
    rot = [list(r) for r in t.rotation]
    ra, rb = rot[a], rot[b]
    ia, ib = ra.index(b), rb.index(a)
    around_a = ra[ia + 1:] + ra[:ia]
    around_b = rb[ib + 1:] + rb[:ib]
    if around_a[-1] != around_b[0] or around_a[0] != around_b[-1]:
        raise InvariantBreach(f"rotations at {a} and {b} do not splice")
    rot[a] = around_a + around_b[1:-1]
    for c in common:
        rot[c].remove(b)
    for w in around_b[1:-1]:
        rw = rot[w]
        rw[rw.index(b)] = a
    rot[b] = None
    mapping = contraction_map(t.n, (a, b))
    out = _rebuild(rot, mapping, t.n - 1, t.outer_face)
    if out.m != t.m - 3:
        raise InvariantBreach("contraction did not remove exactly three edges")
    return out


def delete_degree3_vertex(t: PlaneTriangulation, x: int) -> PlaneTriangulation:
    """``T - x`` for a vertex of degree 3, which is again a triangulation."""
    if t.graph.degree(x) != 3:
        raise InputError(f"vertex {x} has degree {t.graph.degree(x)}, not 3")
    rot = [list(r) for r in t.rotation]
    for w in rot[x]:
        rot[w].remove(x)
    rot[x] = None
    return _rebuild(rot, removal_map(t.n, x), t.n - 1, t.outer_face)


def insert_vertex(t: PlaneTriangulation, face: Sequence[int]) -> PlaneTriangulation:
    """Stack a new vertex (id ``n``) into ``face``."""
    f = t.faces[t.face_id(face)]
    w = t.n
    rot = [list(r) for r in t.rotation] + [None]
    a, b, c = f
    # face a->b->c: the corner at b sits between a and c, and so on
    for pred, v in ((a, b), (b, c), (c, a)):
        rv = rot[v]
        rv.insert(rv.index(pred) + 1, w)
    rot[w] = [a, c, b]
    return _rebuild(rot, tuple(range(t.n + 1)), t.n + 1, t.outer_face)


def flip(t: PlaneTriangulation, e: Edge) -> PlaneTriangulation:
    """Replace edge ``ab`` by the other diagonal ``cd`` of its two faces."""
    a, b = e
    if not t.graph.has_edge(a, b):
        raise NotAnEdge(f"{e} is not an edge")
    c = t.rotation[b][(t.rotation[b].index(a) + 1) % t.graph.degree(b)]
    d = t.rotation[a][(t.rotation[a].index(b) + 1) % t.graph.degree(a)]
    if c == d or t.graph.has_edge(c, d):
        raise NotSimple(f"flipping {a}-{b} would create a parallel edge {c}-{d}")
    rot = [list(r) for r in t.rotation]
    rot[a].remove(b)
    rot[b].remove(a)
    # at c the face a->b->c turns from b to a; the new edge goes between them
    rc = rot[c]
    rc.insert(rc.index(b) + 1, d)
    rd = rot[d]
    rd.insert(rd.index(a) + 1, c)
    return _rebuild(rot, tuple(range(t.n)), t.n, t.outer_face)


@dataclass(frozen=True)
class NearTriangulation:
    vertices: tuple[int, ...]
    edges: frozenset
    rotation: dict = field(compare=False)
    boundary: tuple[int, ...]

    @property
    def inside(self) -> frozenset:
        return frozenset(self.vertices) - frozenset(self.boundary)

    def to_triangulation(self) -> tuple[PlaneTriangulation, tuple[int, ...]]:
        """Relabel to ``0..k-1``; only meaningful for a triangular boundary.

        Returns the triangulation and the tuple of original labels.
        """
        if len(self.boundary) != 3:
            raise InputError("only a near triangulation with a triangular boundary is a triangulation")
        labels = tuple(self.vertices)
        local = {v: i for i, v in enumerate(labels)}
        rot = [[local[w] for w in self.rotation[v]] for v in labels]
        return validate(None, rot, [local[v] for v in self.boundary]), labels


def induced_near_triangulation(t: PlaneTriangulation, c: CycleInfo,
                               outer: Sequence[int] | None = None) -> NearTriangulation:
    """The part of ``t`` on and inside ``c``."""
    faces = inside_faces(t, c, outer)
    edges = set()
    for f in faces:
        for i in range(3):
            edges.add(edge_key(f[i], f[(i + 1) % 3]))
    verts = sorted(set(c.vertices) | c.inside)
    vset = set(verts)
    if any(u not in vset or v not in vset for u, v in edges):
        raise InvariantBreach("inside faces reach beyond the cycle")
    rotation = {v: tuple(w for w in t.rotation[v] if edge_key(v, w) in edges) for v in verts}
    return NearTriangulation(tuple(verts), frozenset(edges), rotation, c.vertices)
