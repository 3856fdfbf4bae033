"""Small corpus of plane triangulations for tests and the ``gen`` command.

The flip walk is a test utility for producing varied inputs. It is not a
uniform sampler of triangulations.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .errors import InputError
from .triangulation import (
    PlaneTriangulation,
    flip,
    from_faces,
    insert_vertex,
    is_four_connected,
    separating_triangles,
    validate,
)

TETRAHEDRON_FACES = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]


def tetrahedron() -> PlaneTriangulation:
    return from_faces(4, TETRAHEDRON_FACES)


def octahedron() -> PlaneTriangulation:
    """K_{2,2,2} with antipodal pairs (0,1), (2,3), (4,5)."""
    faces = []
    for sx, sy, sz in itertools.product((1, -1), repeat=3):
        x, y, z = (0 if sx > 0 else 1), (2 if sy > 0 else 3), (4 if sz > 0 else 5)
        faces.append((x, y, z) if sx * sy * sz > 0 else (x, z, y))
    return from_faces(6, faces)


OCTAHEDRON_ANTIPODES = [(0, 1), (2, 3), (4, 5)]


def icosahedron() -> PlaneTriangulation:
    """Apex 0, upper ring 1..5, lower ring 6..10, apex 11."""
    up = [1 + i for i in range(5)]
    lo = [6 + i for i in range(5)]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces += [(0, up[i], up[j]), (up[j], up[i], lo[i]), (up[j], lo[i], lo[j]), (11, lo[j], lo[i])]
    return from_faces(12, faces)


def double_wheel(n: int) -> PlaneTriangulation:
    """Rim cycle ``0..n-3`` with apexes ``n-2`` and ``n-1``; 4-connected for n >= 6."""
    if n < 5:
        raise InputError("a double wheel needs at least 5 vertices")
    k = n - 2
    a, b = n - 2, n - 1
    faces = []
    for i in range(k):
        j = (i + 1) % k
        faces += [(a, i, j), (b, j, i)]
    return from_faces(n, faces)


def stacked(n: int) -> PlaneTriangulation:
    """Repeatedly stack a vertex into the first face at the newest vertex."""
    if n < 4:
        raise InputError("a stacked triangulation needs at least 4 vertices")
    t = tetrahedron()
    while t.n < n:
        newest = t.n - 1
        face = min(f for f in t.faces if newest in f)
        t = insert_vertex(t, face)
    return t


def relabel(t: PlaneTriangulation, perm: Sequence[int]) -> PlaneTriangulation:
    rot = [None] * t.n
    for v, r in enumerate(t.rotation):
        rot[perm[v]] = [perm[w] for w in r]
    return validate(None, rot, [perm[x] for x in t.outer_face])


def flippable(t: PlaneTriangulation, e) -> bool:
    a, b = e
    g = t.graph
    if g.degree(a) <= 3 or g.degree(b) <= 3:
        return False
    c = t.rotation[b][(t.rotation[b].index(a) + 1) % g.degree(b)]
    d = t.rotation[a][(t.rotation[a].index(b) + 1) % g.degree(a)]
    return c != d and not g.has_edge(c, d)


def flipwalk(n: int, steps: int, seed: int, require_4c: bool = False) -> PlaneTriangulation:
    """Random diagonal flips from a double wheel, then a random relabelling.

    Each step picks an edge uniformly; flips that would create a parallel edge
    (or, with ``require_4c``, a separating triangle) are skipped.
    """
    rng = random.Random(seed)
    t = double_wheel(n)
    if require_4c and not is_four_connected(t):
        raise InputError(f"no 4-connected triangulation on {n} vertices")
    for _ in range(steps):
        e = rng.choice(t.graph.sorted_edges())
        if not flippable(t, e):
            continue
        t2 = flip(t, e)
        if require_4c and not is_four_connected(t2):
            continue
        t = t2
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(t, perm)


def glue_in_face(outer: PlaneTriangulation, face: Sequence[int],
                 inner: PlaneTriangulation, inner_face: Sequence[int]) -> PlaneTriangulation:
    """Paste ``inner`` into ``face`` of ``outer`` by identifying the two faces.

    The result has a separating triangle on ``face`` (when both pieces have more
    than three vertices). Inner vertices off ``inner_face`` get ids from
    ``outer.n`` upwards in increasing order.
    """
    a, b, c = outer.faces[outer.face_id(face)]
    p, q, r = inner.faces[inner.face_id(inner_face)]
    mapping = {p: a, q: c, r: b}
    nxt = outer.n
    for v in range(inner.n):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    faces = [f for f in outer.faces if frozenset(f) != frozenset((a, b, c))]
    faces += [tuple(mapping[x] for x in f) for f in inner.faces if frozenset(f) != frozenset((p, q, r))]
    return from_faces(nxt, faces, outer.outer_face if frozenset(outer.outer_face) != frozenset((a, b, c)) else None)


def non_edges(t: PlaneTriangulation) -> list[tuple[int, int]]:
    g = t.graph
    return [e for e in itertools.combinations(range(t.n), 2) if not g.has_edge(*e)]


def random_braces(t: PlaneTriangulation, k: int, seed: int) -> list[tuple[int, int]]:
    pool = non_edges(t)
    if k > len(pool):
        raise InputError(f"only {len(pool)} non-edges available for {k} braces")
    return sorted(random.Random(seed).sample(pool, k))


def with_blocks(base: PlaneTriangulation, glues: int, stacks: int, seed: int) -> PlaneTriangulation:
    """Paste ``glues`` octahedra and then ``stacks`` single vertices into random faces.

    Every paste creates a separating triangle, so the result is not
    4-connected once either count is positive.
    """
    rng = random.Random(seed)
    t = base
    for _ in range(glues):
        o = octahedron()
        t = glue_in_face(t, rng.choice(t.faces), o, o.faces[0])
    for _ in range(stacks):
        t = insert_vertex(t, rng.choice(t.faces))
    return t


def bridging_braces(t: PlaneTriangulation, seed: int, extra: int = 0) -> list[tuple[int, int]]:
    """Braces joining the two sides of every separating triangle, plus ``extra`` random ones.

    A triangulation's 3-cuts are its separating triangles, so ``T`` plus the
    result is 4-connected whenever ``T`` has at least 6 vertices.
    """
    rng = random.Random(seed)
    braces: set[tuple[int, int]] = set()
    for c in separating_triangles(t):
        if any((a in c.inside and b in c.outside) or (b in c.inside and a in c.outside) for a, b in braces):
            continue
        a, b = rng.choice(sorted(c.inside)), rng.choice(sorted(c.outside))
        braces.add((min(a, b), max(a, b)))
    pool = [e for e in non_edges(t) if e not in braces]
    braces.update(rng.sample(pool, min(extra, len(pool))))
    return sorted(braces)


def parse_spec(spec: str, require_4c: bool = False) -> PlaneTriangulation:
    """``octahedron``, ``icosahedron``, ``tetrahedron``, ``stacked:n``,
    ``doublewheel:n``, ``flipwalk:n:steps:seed`` or
    ``blocks:base:glues:stacks:seed`` (``base`` one of the named solids)."""
    parts = spec.split(":")
    name, args = parts[0], parts[1:]
    try:
        if name == "octahedron" and not args:
            return octahedron()
        if name == "icosahedron" and not args:
            return icosahedron()
        if name == "tetrahedron" and not args:
            return tetrahedron()
        if name == "stacked" and len(args) == 1:
            return stacked(int(args[0]))
        if name == "doublewheel" and len(args) == 1:
            return double_wheel(int(args[0]))
        if name == "flipwalk" and len(args) == 3:
            return flipwalk(int(args[0]), int(args[1]), int(args[2]), require_4c)
        if name == "blocks" and len(args) == 4 and not require_4c:
            return with_blocks(parse_spec(args[0]), int(args[1]), int(args[2]), int(args[3]))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad generator arguments in {spec!r}") from None
    raise InputError(f"unknown generator {spec!r}")

