import pytest

from braced_rigidity.contractible import (
    AvoidanceSpec,
    brute_force_contractible,
    contractible_edges,
    degree4_cofacial_choice,
    find_contractible_avoiding_face,
    find_contractible_lemma33,
    path2_edges,
)
from braced_rigidity.errors import AdjacentPair, PreconditionViolated
from braced_rigidity.generators import double_wheel, icosahedron, octahedron, stacked
from braced_rigidity.triangulation import edge_key

from conftest import four_connected_corpus


def test_octahedron_has_no_contractible_edge():
    assert brute_force_contractible(octahedron()) == frozenset()
    assert contractible_edges(octahedron()) == frozenset()


def test_icosahedron_every_edge_contractible():
    assert len(brute_force_contractible(icosahedron())) == 30


def test_quad_criterion_equals_definition():
    for t in four_connected_corpus():
        assert contractible_edges(t) == brute_force_contractible(t)


def test_path2_edges():
    o = octahedron()
    s = path2_edges(o, 0, 1)  # antipodes: four common neighbours
    assert len(s) == 8
    with pytest.raises(AdjacentPair):
        path2_edges(o, 0, 2)
    with pytest.raises(AdjacentPair):
        path2_edges(o, 3, 3)


def test_avoidance_spec():
    spec = AvoidanceSpec(forbidden_faces=((0, 1, 2),), forbidden_edges=frozenset({(3, 4)}),
                         forbidden_vertices=frozenset({7}))
    assert not spec.allows((2, 0))
    assert not spec.allows((4, 3))
    assert not spec.allows((7, 8))
    assert spec.allows((0, 3))


def test_lemma33_small_sample():
    t = double_wheel(9)
    good = brute_force_contractible(t)
    for uv in t.graph.sorted_edges()[:6]:
        f1, f2 = t.faces_at_edge(uv)
        for x, y in [(0, 2), (1, 5)]:
            e = find_contractible_lemma33(t, uv, x, y)
            assert e in good
            assert not (set(e) <= set(f1) or set(e) <= set(f2))
            assert e not in path2_edges(t, x, y)


def test_lemma32_small_sample():
    t = icosahedron()
    for f in t.faces:
        e = find_contractible_avoiding_face(t, f)
        assert not set(e) & set(f)
        assert e in brute_force_contractible(t)


def test_preconditions():
    with pytest.raises(PreconditionViolated):
        find_contractible_avoiding_face(octahedron(), octahedron().faces[0])
    with pytest.raises(PreconditionViolated):
        find_contractible_lemma33(stacked(8), (0, 1), 0, 5)
    with pytest.raises(PreconditionViolated):
        brute_force_contractible(stacked(6))


def test_degree4_cofacial_choice():
    t = double_wheel(8)  # rim vertices have degree 4
    u = 0
    rot = t.rotation[u]
    for i in range(4):
        v1, v2 = rot[i], rot[(i + 1) % 4]
        e = degree4_cofacial_choice(t, u, v1, v2)
        assert e in (edge_key(u, v1), edge_key(u, v2))
        assert e in brute_force_contractible(t)
    with pytest.raises(PreconditionViolated):
        degree4_cofacial_choice(t, t.n - 1, *t.rotation[t.n - 1][:2])
