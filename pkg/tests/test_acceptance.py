"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL summary; pytest prints them at the end
of the run, and ``python tests/test_acceptance.py`` prints them directly.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import (  # noqa: E402
    ACCEPTANCE,
    all_triangulations,
    braced_positive_corpus,
    braced_three_cut_corpus,
    four_connected_corpus,
    single_field_tamperings,
)

from braced_rigidity.braced import (  # noqa: E402
    BracedTriangulation,
    coincident_witness_one_brace,
    decide_braced,
    verify_certificate,
)
from braced_rigidity.contractible import (  # noqa: E402
    brute_force_contractible,
    find_contractible_avoiding_face,
    find_contractible_lemma33,
    path2_edges,
)
from braced_rigidity.generators import OCTAHEDRON_ANTIPODES, icosahedron, octahedron, random_braces  # noqa: E402
from braced_rigidity.global_rigidity import Verdict, ght_check, stress_basis, stress_matrix_of  # noqa: E402
from braced_rigidity.linalg import FieldSpec, RandomSource, random_config, rank  # noqa: E402
from braced_rigidity.rigidity import (  # noqa: E402
    Framework,
    VertexSplit,
    coincident_rank,
    framework_rank,
    generic_rank,
    realize_vertex_split,
)
from braced_rigidity.triangulation import SimpleGraph, is_k_connected, separating_quads  # noqa: E402

SEEDS = (101, 202, 303)


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def theorem_positives():
    o = octahedron()
    out = [BracedTriangulation(o, frozenset({b})) for b in OCTAHEDRON_ANTIPODES]
    ico = icosahedron()
    out += [BracedTriangulation(ico, frozenset(random_braces(ico, 1, seed=s))) for s in range(5)]
    rng = random.Random(7)
    # the flip-walk part of the corpus
    walks = [t for t in four_connected_corpus()[6:] if 7 <= t.n <= 14]
    for i, t in enumerate(walks):
        out.append(BracedTriangulation(t, frozenset(random_braces(t, rng.randint(1, 3), seed=i))))
    return out, len(walks)


def test_criterion_01_theorem_positives():
    cases, n_walks = theorem_positives()
    bad = []
    for g in cases:
        assert is_k_connected(g.graph, 4)
        for seed in SEEDS:
            v = decide_braced(g, RandomSource(seed))
            ver = verify_certificate(v.certificate, g, RandomSource(seed + 1)) if v.certificate else None
            ght = ght_check(g.graph, 3, RandomSource(seed + 2))
            if not (v.globally_rigid and ver and ght.verdict is Verdict.GLOBALLY_RIGID):
                bad.append((g.n, sorted(g.braces), seed))
    record(1, not bad and n_walks >= 20,
           f"{len(cases)} instances ({n_walks} flip-walk) x {len(SEEDS)} seeds: decide, verify and ght agree"
           + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_02_bare_triangulations():
    bad = []
    for t in four_connected_corpus():
        g = BracedTriangulation(t, frozenset())
        v = decide_braced(g, RandomSource(1))
        ght = ght_check(t.graph, 3, RandomSource(2))
        if v.reason != "NoBraces" or ght.verdict is not Verdict.NOT_GLOBALLY_RIGID or ght.stress_dim != 0:
            bad.append(t.n)
    record(2, not bad, f"{len(four_connected_corpus())} bare triangulations rejected (NoBraces, zero stress space)")


def test_criterion_03_three_cut_instances():
    cases = braced_three_cut_corpus()
    bad = []
    for g in cases:
        v = decide_braced(g, RandomSource(1))
        ght = ght_check(g.graph, 3, RandomSource(2))
        if v.reason != "NotFourConnected" or ght.verdict is not Verdict.NOT_GLOBALLY_RIGID:
            bad.append((g.n, sorted(g.braces), v.reason, ght.verdict.value))
    record(3, len(cases) >= 10 and not bad, f"{len(cases)} braced graphs with a 3-cut rejected by both"
           + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_04_one_brace_coincident_rank():
    bad = []
    checked = 0
    for t, brace in ((octahedron(), (0, 1)), (icosahedron(), random_braces(icosahedron(), 1, seed=0)[0])):
        g = BracedTriangulation(t, frozenset({brace}))
        target = 3 * t.n - 6
        for uv in t.graph.sorted_edges():
            for seed in SEEDS:
                res = coincident_witness_one_brace(g, uv, RandomSource(seed), explain=(seed == SEEDS[0]))
                direct = coincident_rank(g.graph, uv, 3, RandomSource(seed), 1)
                checked += 1
                if res.rank != target or direct != target:
                    bad.append((t.n, uv, seed))
    record(4, not bad, f"{checked} (edge, seed) pairs on O6+b and I12+b reach rank 3n-6")


def corpus_7_to_10():
    return [t for t in four_connected_corpus() if 7 <= t.n <= 10]


def test_criterion_05_lemma33_sweep():
    calls = 0
    bad = []
    for t in corpus_7_to_10():
        good = brute_force_contractible(t)
        pairs = [(x, y) for x, y in itertools.combinations(range(t.n), 2) if not t.graph.has_edge(x, y)]
        for uv in t.graph.sorted_edges():
            f1, f2 = t.faces_at_edge(uv)
            face_edges = {tuple(sorted((f[i], f[(i + 1) % 3]))) for f in (f1, f2) for i in range(3)}
            for x, y in pairs:
                e = find_contractible_lemma33(t, uv, x, y)
                calls += 1
                if e not in good or e in face_edges or e in path2_edges(t, x, y):
                    bad.append((t.n, uv, x, y, e))
    record(5, not bad and calls > 0, f"{calls} searches over {len(corpus_7_to_10())} triangulations, all admissible")


def test_criterion_06_lemma32_sweep():
    calls = 0
    bad = []
    for t in corpus_7_to_10():
        good = brute_force_contractible(t)
        for f in t.faces:
            e = find_contractible_avoiding_face(t, f)
            calls += 1
            if set(e) & set(f) or e not in good:
                bad.append((t.n, f, e))
    record(6, not bad and calls > 0, f"{calls} face-avoiding searches, all admissible")


def test_criterion_07_octahedron_structure():
    o = octahedron()
    quads = separating_quads(o)
    ok = len(quads) == 3 and brute_force_contractible(o) == frozenset()
    record(7, ok, f"O6: {len(quads)} separating 4-cycles, {len(brute_force_contractible(o))} contractible edges")


def test_criterion_08_rigidity_baselines():
    rng = RandomSource(8)
    tris = all_triangulations()
    ranks_ok = all(generic_rank(t.graph, 3, rng) == 3 * t.n - 6 for t in tris)
    complete_ok = all(ght_check(SimpleGraph.complete(d + 2), d, rng).globally_rigid for d in (1, 2, 3))
    fs = FieldSpec()
    k5 = Framework(SimpleGraph.complete(5), 3, random_config(5, 3, rng, fs), fs)
    k5_rank = rank(stress_matrix_of(k5, stress_basis(k5)[0]).as_matrix(fs))
    ob = ght_check(octahedron().graph.with_edges([(0, 1)]), 3, rng)
    ok = ranks_ok and complete_ok and k5_rank == 1 and ob.stress_rank == 2
    record(8, ok, f"{len(tris)} triangulations at 3n-6; K3,K4,K5 globally rigid in d=1,2,3; "
                  f"stress ranks K5={k5_rank}, O6+b={ob.stress_rank}")


def random_split(g: SimpleGraph, rng: random.Random) -> VertexSplit:
    v = rng.randrange(g.n)
    nbrs = sorted(g.adj[v])
    shared = rng.sample(nbrs, 2)
    rest = [w for w in nbrs if w not in shared]
    rng.shuffle(rest)
    cut = rng.randint(0, len(rest))
    return VertexSplit(v, frozenset(shared + rest[:cut]), frozenset(shared + rest[cut:]))


def test_criterion_09_split_preservation():
    rng = random.Random(9)
    src = RandomSource(9)
    tris = all_triangulations()
    bad = []
    for i in range(50):
        t = tris[i % len(tris)]
        split = random_split(t.graph, rng)
        fw = Framework(t.graph, 3, random_config(t.n, 3, src))
        out = realize_vertex_split(fw, split, src)
        if framework_rank(out) != framework_rank(fw) + 3:
            bad.append(i)
    record(9, not bad, "50 random 3-dimensional splits: each realisation gains exactly 3 in rank")


def test_criterion_10_certificate_integrity():
    certified = 0
    verified = 0
    tampered = rejected = 0
    kinds = set()
    for i, g in enumerate(braced_positive_corpus()):
        cert = decide_braced(g, RandomSource(1000 + i)).certificate
        certified += 1
        verified += bool(verify_certificate(cert, g, RandomSource(5000 + i)))
        kinds |= {s.kind for s in cert.steps}
        if i % 4 == 0:
            for _, bad in single_field_tamperings(cert):
                tampered += 1
                rejected += not verify_certificate(bad, g, RandomSource(9000 + i))
    ok = verified == certified and rejected == tampered and {"contract", "glue", "base-k5"} <= kinds
    record(10, ok, f"{verified}/{certified} certificates verify at fresh seeds; "
                   f"{rejected}/{tampered} single-field tamperings rejected")


if __name__ == "__main__":
    start = time.time()
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print(f"{10 - failed}/10 criteria passed in {time.time() - start:.1f}s")
    sys.exit(1 if failed else 0)
