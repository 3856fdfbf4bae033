"""Shared corpus and the acceptance summary printed at the end of a run."""

from __future__ import annotations

import functools
import random

import pytest

from braced_rigidity.braced import BracedTriangulation
from braced_rigidity.generators import (
    bridging_braces,
    double_wheel,
    flipwalk,
    icosahedron,
    octahedron,
    random_braces,
    stacked,
    with_blocks,
)
from braced_rigidity.triangulation import is_four_connected, is_k_connected

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def four_connected_corpus():
    """4-connected triangulations, 6 <= n <= 14."""
    out = [octahedron(), icosahedron()]
    out += [double_wheel(n) for n in range(7, 11)]
    out += [flipwalk(n, 5 * n, seed, require_4c=True) for n in range(7, 15) for seed in range(3)]
    assert all(is_four_connected(t) for t in out)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def blocky_corpus():
    """Triangulations with separating triangles."""
    out = [stacked(n) for n in (5, 6, 8)]
    for base in (octahedron(), icosahedron(), double_wheel(7)):
        for glues, stacks, seed in ((1, 0, 0), (0, 2, 1), (1, 1, 2), (2, 2, 3)):
            out.append(with_blocks(base, glues, stacks, seed))
    return tuple(out)


def all_triangulations():
    return four_connected_corpus() + blocky_corpus()


@functools.lru_cache(maxsize=None)
def braced_positive_corpus():
    """4-connected braced triangulations (the graph, not necessarily the triangulation)."""
    out = []
    rng = random.Random(11)
    for i, t in enumerate(four_connected_corpus()):
        if 7 <= t.n <= 14:
            k = rng.randint(1, 3)
            out.append(BracedTriangulation(t, frozenset(random_braces(t, k, seed=i))))
    for i, t in enumerate(blocky_corpus()):
        if t.n >= 6:
            out.append(BracedTriangulation(t, frozenset(bridging_braces(t, seed=i, extra=i % 2))))
    assert all(is_k_connected(g.graph, 4) for g in out)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def braced_three_cut_corpus():
    """Braced triangulations whose graph still has a 3-cut."""
    out = []
    for i, t in enumerate(blocky_corpus()):
        for k in (1, 2):
            if t.n < 6:
                continue
            g = BracedTriangulation(t, frozenset(random_braces(t, k, seed=100 + i)))
            if not is_k_connected(g.graph, 4):
                out.append(g)
    return tuple(out)


@pytest.fixture(scope="session")
def corpus4c():
    return four_connected_corpus()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def _bump(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + 1
    if isinstance(value, str):
        return value[:-1] + ("0" if value[-1:] != "0" else "1")
    if isinstance(value, tuple):
        return (value[0] + 1,) + value[1:] if value else (0,)
    raise TypeError(type(value))


def single_field_tamperings(cert):
    """Every certificate that differs from ``cert`` in exactly one recorded field."""
    from dataclasses import replace

    yield "target_hash", replace(cert, target_hash=_bump(cert.target_hash))
    yield "dim", replace(cert, dim=cert.dim + 1)
    for i, step in enumerate(cert.steps):
        for name, value in step.__dict__.items():
            if value is None:
                continue
            if name == "witness":
                for wname, wvalue in value.__dict__.items():
                    new = replace(step, witness=replace(value, **{wname: _bump(wvalue)}))
                    yield f"step {i} witness.{wname}", replace(cert, steps=cert.steps[:i] + (new,) + cert.steps[i + 1:])
                continue
            new = replace(step, **{name: _bump(value)})
            yield f"step {i} {name}", replace(cert, steps=cert.steps[:i] + (new,) + cert.steps[i + 1:])
