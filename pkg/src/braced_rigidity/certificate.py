"""Certificate records and their JSON form.

A certificate is read top-down: the first step acts on the target graph and
names the smaller graph it reduces to, and so on until a ``base-k5`` step.
Every graph along the chain is pinned by a 64-bit FNV-1a hash of its canonical
edge list (see :meth:`SimpleGraph.canonical_bytes`).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from .errors import InputError
from .triangulation import fnv1a64


@dataclass(frozen=True)
class Witness:
    """A reproducible rank computation.

    ``method`` names the procedure that turns ``seed`` into a configuration;
    ``digest`` is the FNV-1a hash of that configuration, so the claim can be
    replayed bit for bit.
    """

    seed: int
    prime: int
    rank: int
    digest: str
    method: str = "coincident-draw"


@dataclass(frozen=True)
class Step:
    kind: str
    child_hash: str | None = None
    edge: tuple[int, int] | None = None
    witness: Witness | None = None
    branch: str | None = None
    via: str | None = None
    # vertex-addition
    vertex: int | None = None
    neighbors: tuple[int, ...] | None = None
    # glue
    c1: tuple[int, ...] | None = None
    inside: tuple[int, ...] | None = None
    t1: tuple[int, ...] | None = None
    x: int | None = None
    y: int | None = None
    z: int | None = None
    # base-k5
    iso: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {}
        for k, v in asdict(self).items():
            if v is None:
                continue
            out[k] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Step":
        kw = dict(obj)
        if kw.get("witness") is not None:
            kw["witness"] = Witness(**kw["witness"])
        for k in ("edge", "neighbors", "c1", "inside", "t1", "iso"):
            if kw.get(k) is not None:
                kw[k] = tuple(kw[k])
        try:
            return cls(**kw)
        except TypeError as exc:
            raise InputError(f"malformed certificate step: {exc}") from None


@dataclass(frozen=True)
class Certificate:
    target_hash: str
    dim: int = 3
    steps: tuple[Step, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {"target_hash": self.target_hash, "dim": self.dim, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        try:
            return cls(obj["target_hash"], obj.get("dim", 3), tuple(Step.from_json(s) for s in obj["steps"]))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed certificate: {exc}") from None


def config_digest(p) -> str:
    text = ";".join(",".join(str(c) for c in pt) for pt in p)
    return f"{fnv1a64(text.encode('ascii')):016x}"
