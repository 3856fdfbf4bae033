import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braced_rigidity.errors import (
    EdgeOnSeparatingTriangle,
    EulerViolation,
    InputError,
    NonTriangularFace,
    Not3Connected,
    NotAnEdge,
    NotFourConnected,
    NotSimple,
)
from braced_rigidity.generators import (
    double_wheel,
    flipwalk,
    icosahedron,
    insert_vertex,
    octahedron,
    stacked,
    tetrahedron,
)
from braced_rigidity.triangulation import (
    SimpleGraph,
    contract,
    contraction_map,
    cycle_info,
    fnv1a64,
    from_faces,
    induced_near_triangulation,
    is_four_connected,
    is_k_connected,
    removal_map,
    separating_quads,
    separating_triangles,
    triangulation_from_json,
    validate,
)

from conftest import all_triangulations, four_connected_corpus


def brute_cuts(g: SimpleGraph, size: int):
    """Vertex sets of the given size whose removal disconnects ``g``."""
    return {frozenset(s) for s in itertools.combinations(range(g.n), size) if not g.is_connected(s)}


def test_fnv_reference_vectors():
    # published FNV-1a 64 test vectors
    assert fnv1a64(b"") == 0xCBF29CE484222325
    assert fnv1a64(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a64(b"foobar") == 0x85944171F73967E8


def test_canonical_bytes_and_hash():
    g = SimpleGraph.from_edges(3, [(1, 0), (2, 1)])
    assert g.canonical_bytes() == b"3;0,1;1,2"
    assert g.graph_hash() == f"{fnv1a64(b'3;0,1;1,2'):016x}"


@pytest.mark.parametrize("make,n,m,f", [(tetrahedron, 4, 6, 4), (octahedron, 6, 12, 8), (icosahedron, 12, 30, 20)])
def test_basic_counts(make, n, m, f):
    t = make()
    assert (t.n, t.m, len(t.faces)) == (n, m, f)


def test_every_dart_on_one_face():
    for t in all_triangulations():
        darts = [(f[i], f[(i + 1) % 3]) for f in t.faces for i in range(3)]
        assert len(darts) == len(set(darts)) == 2 * t.m
        assert t.m == 3 * t.n - 6 and len(t.faces) == 2 * t.n - 4


def test_validate_error_order():
    with pytest.raises(NotSimple):
        validate(None, [[1, 1, 2], [0, 2], [0, 1]])
    with pytest.raises(NotSimple):
        validate(None, [[1], []])
    # 4-cycle: faces of length 4
    with pytest.raises(NonTriangularFace):
        validate(None, [[1, 3], [2, 0], [3, 1], [0, 2]])
    # two disjoint tetrahedra: all faces triangles, n - m + f = 4
    rot = [list(r) for r in tetrahedron().rotation]
    rot += [[w + 4 for w in r] for r in tetrahedron().rotation]
    with pytest.raises(EulerViolation):
        validate(None, rot)
    with pytest.raises(Not3Connected):
        validate(None, [[1, 2], [2, 0], [0, 1]])


def test_corrupted_octahedron_rotation():
    rot = [list(r) for r in octahedron().rotation]
    rot[0][0], rot[0][1] = rot[0][1], rot[0][0]
    with pytest.raises(NonTriangularFace):
        validate(None, rot)


def test_graph_must_match_rotation():
    o = octahedron()
    with pytest.raises(NotSimple):
        validate(o.graph.without_edges([(0, 2)]), o.rotation)
    assert validate(o.graph, o.rotation).graph == o.graph


def test_default_outer_face_and_json_round_trip():
    o = octahedron()
    obj = o.to_json()
    back = triangulation_from_json({"n": obj["n"], "rotation": obj["rotation"]})
    r0 = o.rotation[0]
    assert set(back.outer_face) >= {0, r0[0]}
    assert triangulation_from_json(obj).outer_face == o.outer_face
    with pytest.raises(InputError):
        triangulation_from_json({"n": 6, "rotation": obj["rotation"], "outer_face": [0, 1, 2]})
    with pytest.raises(InputError):
        triangulation_from_json({"n": 5, "rotation": obj["rotation"]})


def test_from_faces_matches_rotation():
    for t in (octahedron(), icosahedron()):
        again = from_faces(t.n, t.faces, t.outer_face)
        assert again.graph == t.graph
        assert set(again.faces) == set(t.faces)


def test_separating_triangles_against_cut_oracle():
    for t in all_triangulations():
        cuts = brute_cuts(t.graph, 3)
        found = {frozenset(c.vertices) for c in separating_triangles(t)}
        assert found == cuts
        assert (not found) == is_four_connected(t) == (t.n >= 6 and is_k_connected(t.graph, 4))


def test_separating_triangle_examples():
    assert separating_triangles(octahedron()) == []
    assert separating_triangles(icosahedron()) == []
    (c,) = separating_triangles(stacked(5))
    assert len(c.inside) == 1 and len(c.outside) == 1


def test_separating_quads_against_cut_oracle():
    for t in four_connected_corpus():
        found = {frozenset(c.vertices) for c in separating_quads(t)}
        assert found == brute_cuts(t.graph, 4)
        for c in separating_quads(t):
            a, b, x, y = c.vertices
            assert not t.graph.has_edge(a, x) and not t.graph.has_edge(b, y)


def test_separating_quads_examples():
    quads = separating_quads(octahedron())
    assert len(quads) == 3
    for e in octahedron().graph.edges:
        assert sum(e in q.edges for q in quads) == 1
    assert separating_quads(icosahedron()) == []
    assert separating_quads(double_wheel(7))
    with pytest.raises(NotFourConnected):
        separating_quads(stacked(6))


def test_contract_examples():
    o = octahedron()
    for e in o.graph.edges:
        t = contract(o, e)
        assert (t.n, t.m) == (5, 9)
        assert t.graph.m == SimpleGraph.complete(5).m - 1
    i = contract(icosahedron(), (0, 1))
    assert (i.n, i.m) == (11, 27)
    s5 = stacked(5)
    (c,) = separating_triangles(s5)
    with pytest.raises(EdgeOnSeparatingTriangle):
        contract(s5, c.vertices[:2])
    with pytest.raises(NotAnEdge):
        contract(o, (0, 1))


def test_contract_matches_graph_contraction():
    for t in four_connected_corpus()[:12]:
        for e in t.graph.sorted_edges():
            assert contract(t, e).graph == t.graph.contract(e)


def test_quad_criterion_against_contraction():
    # e on no separating 4-cycle iff T/e has no separating triangle
    for t in four_connected_corpus()[:15]:
        on_quad = set().union(*(q.edges for q in separating_quads(t))) if separating_quads(t) else set()
        for e in t.graph.edges:
            assert (e not in on_quad) == is_four_connected(contract(t, e))


def test_relabel_maps():
    assert removal_map(4, 1) == (0, -1, 1, 2)
    assert contraction_map(5, (1, 3)) == (0, 1, 2, 1, 3)


def test_induced_near_triangulation_examples():
    o = octahedron()
    q = separating_quads(o)[0]
    near = induced_near_triangulation(o, q)
    assert len(near.vertices) == 5 and len(near.edges) == 8
    s5 = stacked(5)
    (c,) = separating_triangles(s5)
    t1, labels = induced_near_triangulation(s5, c).to_triangulation()
    assert t1.graph == SimpleGraph.complete(4)
    face = next(f for f in o.faces if f != o.outer_face)
    tri = induced_near_triangulation(o, cycle_info(o, face))
    assert len(tri.vertices) == 3 and not tri.inside


def test_is_k_connected_examples():
    assert is_k_connected(octahedron().graph, 4)
    assert not is_k_connected(stacked(5).graph, 4)
    assert is_k_connected(SimpleGraph.complete(5), 4)
    assert not is_k_connected(SimpleGraph.complete(4), 4)


def test_insert_vertex_and_cycle_sides():
    o = octahedron()
    t = insert_vertex(o, o.faces[3])
    (c,) = separating_triangles(t)
    assert set(c.vertices) == set(o.faces[3])
    assert len(c.inside) + len(c.outside) == t.n - 3


@settings(max_examples=25, deadline=None)
@given(st.integers(6, 16), st.integers(0, 60), st.integers(0, 10**6), st.booleans())
def test_flipwalk_invariants(n, steps, seed, four):
    t = flipwalk(n, steps, seed, require_4c=four)
    again = validate(None, t.rotation, t.outer_face)
    assert again.graph == t.graph
    assert t.m == 3 * t.n - 6
    if four:
        assert is_four_connected(t)
