"""Braced plane triangulations: decision procedure and certificates.

``decide_braced`` reduces the input one step at a time. Each step is chosen by
:func:`plan_step`, a deterministic function of the current braced
triangulation, so a verifier can recompute every choice and compare it with
what the certificate records. The reductions are

* ``contract``: contract a triangulation edge ``e``; justified by a full-rank
  realisation of the current graph with the ends of ``e`` coincident;
* ``glue``: the same, but the coincident realisation is assembled from a
  one-brace piece inside a minimal separating triangle and the rest;
* ``vertex-addition``: delete a vertex of degree at least 4;
* ``base-k5``: the current graph is K5.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .certificate import Certificate, Step, Witness, config_digest
from .contractible import _avoiding_face, _lemma33, path2_edges
from .errors import (
    CertificationFailed,
    InputError,
    InvariantBreach,
    NotSimple,
    PreconditionViolated,
    RigidityError,
    WitnessFailed,
)
from .global_rigidity import coincident_draw, coincident_witness
from .linalg import DEFAULT_PRIME, FieldSpec, RandomSource, is_probable_prime, random_config
from .rigidity import (
    MAX_ATTEMPTS,
    Framework,
    VertexSplit,
    coincident_config,
    coincident_rank,
    framework_rank,
    glue,
    is_inf_rigid,
    max_rank,
    realize_vertex_split,
    split_of_edge,
)
from .triangulation import (
    CycleInfo,
    Edge,
    PlaneTriangulation,
    SimpleGraph,
    contract,
    contraction_map,
    cycle_info,
    delete_degree3_vertex,
    edge_key,
    induced_near_triangulation,
    is_four_connected,
    is_k_connected,
    removal_map,
    separating_triangles,
    triangulation_from_json,
)

D = 3
K5 = SimpleGraph.complete(5)


@dataclass(frozen=True)
class BracedTriangulation:
    t: PlaneTriangulation
    braces: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for u, v in self.braces:
            if u == v or not (0 <= u < self.t.n and 0 <= v < self.t.n):
                raise NotSimple(f"brace {u}-{v} is a loop or leaves the vertex range")
            e = edge_key(u, v)
            if self.t.graph.has_edge(*e):
                raise NotSimple(f"brace {u}-{v} is parallel to a triangulation edge")
            norm.add(e)
        object.__setattr__(self, "braces", frozenset(norm))

    @property
    def n(self) -> int:
        return self.t.n

    @cached_property
    def graph(self) -> SimpleGraph:
        return self.t.graph.with_edges(self.braces)

    def sorted_braces(self) -> list[Edge]:
        return sorted(self.braces)

    def with_braces(self, braces: Iterable[Sequence[int]]) -> "BracedTriangulation":
        return BracedTriangulation(self.t, frozenset(edge_key(*b) for b in braces))

    def to_json(self) -> dict:
        out = self.t.to_json()
        out["braces"] = [list(b) for b in self.sorted_braces()]
        return out


def braced_from_json(obj: dict) -> BracedTriangulation:
    t = triangulation_from_json(obj)
    braces = obj.get("braces", [])
    keys = [edge_key(*b) for b in braces]
    if len(set(keys)) != len(keys):
        raise NotSimple("a brace is listed twice")
    return BracedTriangulation(t, frozenset(keys))


def _remap_braces(braces, mapping, t_new: PlaneTriangulation) -> frozenset:
    out = set()
    for u, v in braces:
        a, b = mapping[u], mapping[v]
        if a < 0 or b < 0 or a == b:
            continue
        e = edge_key(a, b)
        if not t_new.graph.has_edge(*e):
            out.add(e)
    return frozenset(out)


def contract_braced(g: BracedTriangulation, e: Edge) -> BracedTriangulation:
    """``G/e``: braces follow the merge; loops and braces parallel to ``T/e`` vanish."""
    t2 = contract(g.t, e)
    return BracedTriangulation(t2, _remap_braces(g.braces, contraction_map(g.n, e), t2))


def delete_vertex_braced(g: BracedTriangulation, x: int) -> BracedTriangulation:
    t2 = delete_degree3_vertex(g.t, x)
    return BracedTriangulation(t2, _remap_braces(g.braces, removal_map(g.n, x), t2))


# --- one-brace coincident realisations -------------------------------------

@dataclass
class CoincidentResult:
    pair: Edge
    rank: int
    witness: Witness
    framework: Framework
    chain: list[str] = field(default_factory=list)

    @property
    def inf_rigid(self) -> bool:
        return self.rank == max_rank(self.framework.n, D)


def _direct_coincident(g: SimpleGraph, pair, rng: RandomSource, fs: FieldSpec) -> Framework:
    for _ in range(MAX_ATTEMPTS):
        fw = Framework(g, D, coincident_config(g.n, D, pair, rng, fs), fs)
        if is_inf_rigid(fw):
            return fw
    raise WitnessFailed(f"no full-rank {pair}-coincident realisation found")


def _lift(parent: SimpleGraph, e: Edge, fw_child: Framework, rng: RandomSource, keep: int) -> Framework:
    """Split ``e`` back out of ``fw_child``; ``keep`` stays at the merged point."""
    split, child, back = split_of_edge(parent, e)
    if child != fw_child.graph:
        raise InvariantBreach("contracted graph does not match the child framework")
    if keep == e[1]:
        split = VertexSplit(split.v, split.neighbors_v2, split.neighbors_v1, split.d)
        back = list(back)
        back[split.v], back[-1] = back[-1], back[split.v]
    return realize_vertex_split(fw_child, split, rng, strict=False).relabel(back)


def _keeper(e: Edge, uv: Edge) -> int:
    return e[1] if e[1] in uv else e[0]


def _thm41(g: BracedTriangulation, uv: Edge, rng: RandomSource, fs: FieldSpec, chain: list[str]) -> Framework:
    t = g.t
    (x, y), = g.braces
    u, v = uv
    if t.n == 6:
        f1, f2 = t.faces_at_edge(uv)
        rest = sorted(set(range(6)) - set(f1) - set(f2))
        e = edge_key(*rest)
        if e in path2_edges(t, x, y):
            chain.append(f"n=6: brace {x}-{y} meets {uv} and {e}; direct {uv}-coincident draw")
            return _direct_coincident(g.graph, uv, rng, fs)
        child = contract_braced(g, e)
        if child.graph != K5:
            raise InvariantBreach(f"octahedron contraction of {e} is not K5")
        cmap = contraction_map(g.n, e)
        chain.append(f"n=6: contract {e} to K5, split back with {uv} coincident")
        fw_child = _direct_coincident(child.graph, (cmap[u], cmap[v]), rng, fs)
        return _lift(g.graph, e, fw_child, rng, _keeper(e, uv))
    e, method = _lemma33(t, uv, x, y)
    child = contract_braced(g, e)
    if len(child.braces) != 1:
        raise InvariantBreach(f"contracting {e} lost the brace")
    cmap = contraction_map(g.n, e)
    chain.append(f"n={t.n}: contract {e} ({method}), split back")
    fw_child = _thm41(child, (cmap[u], cmap[v]), rng, fs, chain)
    return _lift(g.graph, e, fw_child, rng, _keeper(e, uv))


def _one_brace_framework(g: BracedTriangulation, uv: Edge, seed: int, fs: FieldSpec,
                         explain: bool, chain: list[str]) -> Framework:
    rng = RandomSource(seed)
    if explain:
        return _thm41(g, uv, rng, fs, chain)
    return _direct_coincident(g.graph, uv, rng, fs)


def coincident_witness_one_brace(g: BracedTriangulation, uv: Edge, rng: RandomSource, explain: bool = True,
                                 fs: FieldSpec | None = None) -> CoincidentResult:
    """Full-rank realisation of a one-brace 4-connected triangulation with ``uv`` coincident.

    With ``explain`` the realisation is built by the contraction/split chain
    down to the octahedron (recorded in ``chain``); otherwise it is a direct
    random coincident draw.
    """
    fs = fs or FieldSpec()
    uv = edge_key(*uv)
    if len(g.braces) != 1:
        raise PreconditionViolated(f"exactly one brace required, got {len(g.braces)}")
    if not is_four_connected(g.t):
        raise PreconditionViolated("triangulation is not 4-connected")
    if not g.t.graph.has_edge(*uv):
        raise PreconditionViolated(f"{uv} is not a triangulation edge")
    seed = rng.next_seed()
    chain: list[str] = []
    fw = _one_brace_framework(g, uv, seed, fs, explain, chain)
    r = framework_rank(fw)
    if fw.p[uv[0]] != fw.p[uv[1]] or r != max_rank(g.n, D):
        raise WitnessFailed(f"{uv}-coincident realisation has rank {r}")
    w = Witness(seed, fs.prime, r, config_digest(fw.p), "split-chain" if explain else "coincident-draw")
    return CoincidentResult(uv, r, w, fw, chain)


# --- planning ---------------------------------------------------------------

@dataclass
class Plan:
    kind: str
    branch: str
    child: BracedTriangulation | None = None
    edge: Edge | None = None
    via: str | None = None
    vertex: int | None = None
    neighbors: tuple[int, ...] | None = None
    c1: tuple[int, ...] | None = None
    inside: tuple[int, ...] | None = None
    t1: tuple[int, ...] | None = None
    x: int | None = None
    y: int | None = None
    z: int | None = None

    @property
    def method(self) -> str | None:
        return {"contract": "coincident-draw", "glue": "glue"}.get(self.kind)

    def skeleton(self) -> Step:
        return Step(
            self.kind,
            child_hash=self.child.graph.graph_hash() if self.child is not None else None,
            edge=self.edge, branch=self.branch, via=self.via, vertex=self.vertex,
            neighbors=self.neighbors, c1=self.c1, inside=self.inside, t1=self.t1,
            x=self.x, y=self.y, z=self.z,
            iso=tuple(range(5)) if self.kind == "base-k5" else None,
        )


def _outgoing_braces(g: BracedTriangulation, inside: frozenset, block: set) -> list[tuple[int, int]]:
    out = []
    for a, b in g.sorted_braces():
        for x, y in ((a, b), (b, a)):
            if x in inside and y not in block:
                out.append((x, y))
    return sorted(out)


def plan_step(g: BracedTriangulation) -> Plan:
    """The next reduction for a 4-connected braced triangulation with a brace."""
    t = g.t
    if g.n == 5:
        if g.graph != K5:
            raise CertificationFailed("5-vertex graph is not K5")
        return Plan("base-k5", "b")
    if not g.braces:
        raise CertificationFailed("no brace left")

    if is_four_connected(t):
        x, y = g.sorted_braces()[0]
        s = path2_edges(t, x, y)
        if g.n == 6:
            e = next(e for e in t.graph.sorted_edges() if e not in s)
            return Plan("contract", "c", contract_braced(g, e), e, via="octahedron")
        e, method = _lemma33(t, t.graph.sorted_edges()[0], x, y)
        return Plan("contract", "d", contract_braced(g, e), e, via=f"lemma33:{method}")

    c1 = min(separating_triangles(t), key=CycleInfo.sort_key)
    inside = c1.inside
    block = set(c1.vertices) | inside
    out = _outgoing_braces(g, inside, block)
    if not out:
        raise CertificationFailed(f"no brace leaves the separating triangle {c1.vertices}")
    common = dict(c1=c1.vertices, inside=tuple(sorted(inside)), t1=tuple(sorted(block)))

    if len(inside) == 1:
        (x,) = inside
        for bx, y in out:
            for z in c1.vertices:
                if t.graph.has_edge(z, y):
                    continue
                e = edge_key(x, z)
                child = contract_braced(g, e)
                if _screen(child) is None:
                    return Plan("contract", "e1", child, e, via="coincident-placement", x=x, y=y, z=z, **common)
        if len(out) == 1 and all(t.graph.has_edge(c, out[0][1]) for c in c1.vertices):
            child = delete_vertex_braced(g, x)
            if _screen(child) is None:
                nbrs = tuple(sorted(g.graph.adj[x]))
                return Plan("vertex-addition", "e2", child, vertex=x, neighbors=nbrs, x=x, y=out[0][1], **common)
        return _fallback(g)

    x, y = out[0]
    z = next((c for c in c1.vertices if not t.graph.has_edge(c, x)), None)
    if z is None:
        raise CertificationFailed(f"vertex {x} sees the whole separating triangle")
    near = induced_near_triangulation(t, c1)
    t1, labels = near.to_triangulation()
    if not is_four_connected(t1):
        raise CertificationFailed(f"block inside {c1.vertices} is neither K4 nor 4-connected")
    if t1.n == 6:
        rest = [v for v in labels if v not in c1.vertices and v != x]
        e = edge_key(*rest)
        via = "octahedron-block"
    else:
        local = {v: i for i, v in enumerate(labels)}
        le, method = _avoiding_face(t1, [local[c] for c in c1.vertices])
        e = edge_key(labels[le[0]], labels[le[1]])
        via = f"lemma32:{method}"
    child = contract_braced(g, e)
    if _screen(child) is not None:
        return _fallback(g)
    return Plan("glue", "e3", child, e, via=via, x=x, y=y, z=z, **common)


def _fallback(g: BracedTriangulation) -> Plan:
    """First edge whose contraction keeps a 4-connected graph with a brace.

    Sound on its own terms: the coincident witness at the edge is still
    required, and the split argument does not care how the edge was found.
    """
    for e in g.t.graph.sorted_edges():
        try:
            child = contract_braced(g, e)
        except InputError:
            continue
        if child.n >= 5 and _screen(child) is None:
            return Plan("contract", "f", child, e, via="scan")
    raise CertificationFailed("no edge contracts to a 4-connected braced triangulation")


# --- realisations for glue steps -------------------------------------------

def _glue_framework(g: BracedTriangulation, plan: Plan, seed: int, fs: FieldSpec) -> Framework:
    """Coincident realisation of ``g`` at ``plan.edge`` built by gluing.

    The block ``T1 + xz`` gets a coincident realisation, a 1-extension on ``xz``
    brings in ``y``, the rest of the outside is added, and finally every
    remaining brace.
    """
    rng = RandomSource(seed)
    block = list(plan.t1)
    outside = [v for v in range(g.n) if v not in set(block)]
    order = block + outside
    local = {v: i for i, v in enumerate(order)}
    k = len(block)

    c1 = cycle_info(g.t, plan.c1)
    if tuple(sorted(c1.inside)) != plan.inside:
        raise InvariantBreach("separating triangle sides disagree with the plan")
    near = induced_near_triangulation(g.t, c1)
    t1, labels = near.to_triangulation()
    if list(labels) != block:
        raise InvariantBreach("block relabelling disagrees")
    g1 = BracedTriangulation(t1, frozenset({edge_key(local[plan.x], local[plan.z])}))
    u, v = plan.edge
    fw1 = _direct_coincident(g1.graph, edge_key(local[u], local[v]), rng, fs)

    inside = set(plan.inside)
    g2_edges = [edge_key(local[a], local[b]) for a, b in g.graph.edges if a not in inside and b not in inside]
    g2 = SimpleGraph(g.n, frozenset(g2_edges))
    glued = glue(fw1, g2, local[plan.x], local[plan.y], local[plan.z], rng)
    fw = glued.relabel(order)
    if not fw.graph.edges <= g.graph.edges:
        raise InvariantBreach("glued graph is not a subgraph of the braced triangulation")
    return fw.with_graph(g.graph)


def _witness_framework(g: BracedTriangulation, plan: Plan, seed: int, fs: FieldSpec) -> Framework:
    if plan.kind == "glue":
        return _glue_framework(g, plan, seed, fs)
    return coincident_draw(g.graph, plan.edge, D, seed, fs)


def _placement_check(g: BracedTriangulation, plan: Plan, rng: RandomSource, fs: FieldSpec) -> str:
    """Generic realisation of ``G - x`` with ``x`` put on top of ``z``."""
    x, z = plan.x, plan.z
    sub = g.graph.delete_vertex(x)
    p = list(random_config(sub.n, D, rng, fs))
    if not is_inf_rigid(Framework(sub, D, tuple(p), fs)):
        raise WitnessFailed(f"G - {x} is not infinitesimally rigid at a random point")
    m = removal_map(g.n, x)
    full = [p[m[w]] if w != x else p[m[z]] for w in range(g.n)]
    fw = Framework(g.graph, D, tuple(full), fs)
    if not is_inf_rigid(fw):
        raise WitnessFailed(f"placing {x} on {z} does not give full rank")
    return f"G - {x} realised generically, {x} placed on {z}: rank {framework_rank(fw)}"


# --- decision ----------------------------------------------------------------

@dataclass(frozen=True)
class BracedVerdict:
    globally_rigid: bool
    reason: str
    certificate: Certificate | None = None
    explanation: tuple[str, ...] = ()


def _screen(g: BracedTriangulation) -> str | None:
    if not is_k_connected(g.graph, 4):
        return "NotFourConnected"
    if not g.braces:
        return "NoBraces"
    return None


def decide_braced(g: BracedTriangulation, rng: RandomSource, trials: int = 3, fs: FieldSpec | None = None,
                  explain: bool = False) -> BracedVerdict:
    """Decide global rigidity in 3-space and, when rigid, emit a certificate."""
    fs = fs or FieldSpec()
    if g.n < 5:
        raise InputError("braced triangulations need at least 5 vertices")
    reason = _screen(g)
    if reason is not None:
        return BracedVerdict(False, reason)

    steps: list[Step] = []
    notes: list[str] = []
    cur = g
    while True:
        plan = plan_step(cur)
        step = plan.skeleton()
        if plan.kind in ("contract", "glue"):
            seed = rng.next_seed()
            try:
                fw = _witness_framework(cur, plan, seed, fs)
            except RigidityError as exc:
                raise CertificationFailed(f"witness construction failed: {exc}", step) from exc
            r = framework_rank(fw)
            if r != max_rank(cur.n, D):
                # one more independent draw before giving up
                w = coincident_witness(cur.graph, plan.edge, D, rng, trials, fs)
                if w.rank != max_rank(cur.n, D):
                    raise CertificationFailed(f"coincident rank {w.rank} at {plan.edge} on n={cur.n}", step)
                witness = w
            else:
                witness = Witness(seed, fs.prime, r, config_digest(fw.p), plan.method)
            step = Step(**{**step.__dict__, "witness": witness})
            if explain:
                notes.extend(_explain(cur, plan, rng, fs))
        steps.append(step)
        if plan.kind == "base-k5":
            break
        cur = plan.child
        if _screen(cur) is not None:
            raise CertificationFailed(f"reduction produced a graph failing the screen: {_screen(cur)}", step)
    cert = Certificate(g.graph.graph_hash(), D, tuple(steps))
    return BracedVerdict(True, "Certified", cert, tuple(notes))


def _explain(g: BracedTriangulation, plan: Plan, rng: RandomSource, fs: FieldSpec) -> list[str]:
    head = f"n={g.n} branch {plan.branch}: {plan.kind} {plan.edge} via {plan.via}"
    if plan.branch in ("c", "d"):
        b = g.sorted_braces()[0]
        one = BracedTriangulation(g.t, frozenset({b}))
        res = coincident_witness_one_brace(one, plan.edge, rng, explain=True, fs=fs)
        return [head] + [f"  T+{b}: {line}" for line in res.chain]
    if plan.branch == "e1":
        return [head, "  " + _placement_check(g, plan, rng, fs)]
    if plan.branch == "e3":
        near = induced_near_triangulation(g.t, cycle_info(g.t, plan.c1))
        t1, labels = near.to_triangulation()
        local = {v: i for i, v in enumerate(labels)}
        g1 = BracedTriangulation(t1, frozenset({edge_key(local[plan.x], local[plan.z])}))
        res = coincident_witness_one_brace(g1, (local[plan.edge[0]], local[plan.edge[1]]), rng, explain=True, fs=fs)
        lines = [head, f"  block on {list(labels)} plus brace {plan.x}-{plan.z}, local labels:"]
        lines += [f"    {line}" for line in res.chain]
        lines.append(f"  1-extension on {plan.x}-{plan.z} brings in {plan.y}, rest of the outside added")
        return lines
    return [head]


# --- verification ------------------------------------------------------------

@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    message: str
    step: int | None = None

    def __bool__(self):
        return self.ok


def _field_for(w: Witness) -> FieldSpec | None:
    if w.prime is None:
        return FieldSpec.rationals()
    if not isinstance(w.prime, int) or w.prime < (1 << 61) or not is_probable_prime(w.prime):
        return None
    return FieldSpec(w.prime)


def _check_witness(g: BracedTriangulation | SimpleGraph, plan: Plan | None, edge, w: Witness | None,
                   method: str) -> str | None:
    if w is None:
        return "missing witness"
    if w.method != method:
        return f"witness method {w.method!r}, expected {method!r}"
    fs = _field_for(w)
    if fs is None:
        return f"witness field {w.prime} is not a prime of at least 61 bits"
    graph = g.graph if isinstance(g, BracedTriangulation) else g
    try:
        if method == "glue":
            fw = _glue_framework(g, plan, w.seed, fs)
        else:
            fw = coincident_draw(graph, edge, D, w.seed, fs)
    except RigidityError as exc:
        return f"witness replay failed: {exc}"
    if config_digest(fw.p) != w.digest:
        return "witness configuration digest mismatch"
    r = framework_rank(fw)
    if r != w.rank:
        return f"witness rank {w.rank} but replay gives {r}"
    if r != max_rank(graph.n, D):
        return f"witness rank {r} is below {max_rank(graph.n, D)}"
    return None


def verify_certificate(cert: Certificate, target: BracedTriangulation | SimpleGraph, rng: RandomSource,
                       trials: int = 3, fs: FieldSpec | None = None) -> VerificationResult:
    """Replay a certificate against ``target``.

    Every recorded choice is recomputed and compared, every witness is
    replayed from its seed, and each coincident rank is re-derived at a fresh
    seed from ``rng``.
    """
    fs = fs or FieldSpec()
    graph = target.graph if isinstance(target, BracedTriangulation) else target
    if cert.target_hash != graph.graph_hash():
        return VerificationResult(False, "target hash does not match the target graph")
    if cert.dim != D:
        return VerificationResult(False, f"certificate dimension {cert.dim}, only {D} is supported")
    if not cert.steps:
        return VerificationResult(False, "empty certificate")
    if isinstance(target, BracedTriangulation):
        return _verify_braced(cert, target, rng, trials, fs)
    return _verify_graph(cert, target, rng, trials, fs)


def _fresh_ok(graph: SimpleGraph, edge, rng, trials, fs) -> bool:
    return coincident_rank(graph, edge, D, rng, trials, fs) == max_rank(graph.n, D)


def _verify_braced(cert, target, rng, trials, fs) -> VerificationResult:
    if _screen(target) is not None:
        return VerificationResult(False, f"target fails the screen: {_screen(target)}")
    cur = target
    for i, step in enumerate(cert.steps):
        try:
            plan = plan_step(cur)
        except RigidityError as exc:
            return VerificationResult(False, f"cannot plan step: {exc}", i)
        expected = plan.skeleton()
        recorded = Step(**{**step.__dict__, "witness": None})
        if recorded != expected:
            diff = [k for k in expected.__dict__ if expected.__dict__[k] != recorded.__dict__[k]]
            return VerificationResult(False, f"step disagrees with the recomputed reduction in {diff}", i)
        if plan.kind in ("contract", "glue"):
            problem = _check_witness(cur, plan, plan.edge, step.witness, plan.method)
            if problem:
                return VerificationResult(False, problem, i)
            if not _fresh_ok(cur.graph, plan.edge, rng, trials, fs):
                return VerificationResult(False, "fresh coincident draw is rank deficient", i)
        elif plan.kind == "vertex-addition" and len(plan.neighbors) < D + 1:
            return VerificationResult(False, f"vertex {plan.vertex} has fewer than {D + 1} neighbours", i)
        elif plan.kind == "base-k5":
            if i != len(cert.steps) - 1:
                return VerificationResult(False, "steps continue after the base case", i)
            return VerificationResult(True, f"verified {len(cert.steps)} steps")
        if step.witness is not None and plan.kind not in ("contract", "glue"):
            return VerificationResult(False, "unexpected witness", i)
        cur = plan.child
    return VerificationResult(False, "certificate does not end in a base case")


def _verify_graph(cert, g: SimpleGraph, rng, trials, fs) -> VerificationResult:
    cur = g
    for i, s in enumerate(cert.steps):
        if s.kind == "base-k5":
            if cur != K5:
                return VerificationResult(False, "base step on a graph other than K5", i)
            if s.iso is None or sorted(s.iso) != list(range(5)):
                return VerificationResult(False, "base isomorphism is not a permutation", i)
            if i != len(cert.steps) - 1:
                return VerificationResult(False, "steps continue after the base case", i)
            return VerificationResult(True, f"verified {len(cert.steps)} steps")
        if s.kind == "contract":
            if s.edge is None or not cur.has_edge(*s.edge):
                return VerificationResult(False, "contracted pair is not an edge", i)
            child = cur.contract(s.edge)
            problem = _check_witness(cur, None, tuple(s.edge), s.witness, "coincident-draw")
            if problem:
                return VerificationResult(False, problem, i)
            if not _fresh_ok(cur, s.edge, rng, trials, fs):
                return VerificationResult(False, "fresh coincident draw is rank deficient", i)
        elif s.kind == "vertex-addition":
            if s.vertex is None or not 0 <= s.vertex < cur.n:
                return VerificationResult(False, "bad vertex", i)
            if s.neighbors != tuple(sorted(cur.adj[s.vertex])) or len(s.neighbors) < D + 1:
                return VerificationResult(False, "neighbour list wrong or too short", i)
            child = cur.delete_vertex(s.vertex)
        else:
            return VerificationResult(False, f"step kind {s.kind!r} cannot be checked without an embedding", i)
        if s.child_hash != child.graph_hash():
            return VerificationResult(False, "child hash mismatch", i)
        cur = child
    return VerificationResult(False, "certificate does not end in a base case")


__all__ = [
    "BracedTriangulation",
    "BracedVerdict",
    "CoincidentResult",
    "DEFAULT_PRIME",
    "VerificationResult",
    "braced_from_json",
    "coincident_witness_one_brace",
    "contract_braced",
    "decide_braced",
    "delete_vertex_braced",
    "plan_step",
    "verify_certificate",
]
