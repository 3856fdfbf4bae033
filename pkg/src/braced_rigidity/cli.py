"""Command-line interface.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 bad input,
3 internal invariant breach. Verdicts go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .braced import BracedTriangulation, braced_from_json, decide_braced, verify_certificate
from .certificate import Certificate
from .contractible import _avoiding_face, brute_force_contractible, contractible_edges
from .errors import InputError, InvariantBreach
from .generators import bridging_braces, parse_spec, random_braces
from .global_rigidity import Verdict, ght_check
from .linalg import FieldSpec, RandomSource
from .rigidity import coincident_rank, max_rank
from .triangulation import edge_key, is_four_connected, is_k_connected, separating_triangles

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BREACH = 0, 1, 2, 3


class Output:
    def __init__(self, as_json: bool, command: str):
        self.as_json = as_json
        self.command = command
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def emit(self, ok: bool) -> None:
        if self.as_json:
            print(json.dumps({"command": self.command, "ok": ok, **self.data}, sort_keys=True))
        else:
            for text in self.lines:
                print(text)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _load(path: str) -> BracedTriangulation:
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    return braced_from_json(obj)


def _pair(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"expected u,v but got {text!r}") from None
    return u, v


def _fs(args) -> FieldSpec:
    return FieldSpec.rationals() if getattr(args, "rational", False) else FieldSpec()


# --- subcommands -------------------------------------------------------------

def cmd_validate(args, out: Output) -> int:
    g = _load(args.file)
    t = g.t
    four = is_four_connected(t)
    out.data.update(n=t.n, m=t.m, faces=len(t.faces), braces=len(g.braces),
                    triangulation_4_connected=four, graph_4_connected=is_k_connected(g.graph, 4),
                    separating_triangles=[list(c.vertices) for c in separating_triangles(t)],
                    graph_hash=g.graph.graph_hash())
    out.line(f"VALID plane triangulation: n={t.n} m={t.m} faces={len(t.faces)}")
    out.line(f"braces: {len(g.braces)}")
    out.line(f"triangulation 4-connected: {'yes' if four else 'no'}")
    out.line(f"graph 4-connected: {'yes' if out.data['graph_4_connected'] else 'no'}")
    out.line(f"graph hash: {out.data['graph_hash']}")
    return EXIT_OK


def _require_dim3(dim: int) -> None:
    if dim != 3:
        raise InputError(f"only dimension 3 is supported by this command, got {dim}")


def cmd_check(args, out: Output) -> int:
    _require_dim3(args.dim)
    g = _load(args.file)
    verdict = decide_braced(g, RandomSource(args.seed), args.trials, _fs(args), explain=args.explain)
    out.data.update(globally_rigid=verdict.globally_rigid, reason=verdict.reason)
    if not verdict.globally_rigid:
        why = "no braces (G = T)" if verdict.reason == "NoBraces" else "not 4-connected"
        out.line(f"NOT GLOBALLY RIGID: {why}")
        return EXIT_NEGATIVE
    cert = verdict.certificate
    out.line("GLOBALLY RIGID")
    out.line(f"certificate: {len(cert.steps)} steps, target {cert.target_hash}")
    for line in verdict.explanation:
        out.line(line)
    out.data["steps"] = len(cert.steps)
    if args.explain:
        out.data["explanation"] = list(verdict.explanation)
    if args.cert:
        with open(args.cert, "w") as fh:
            json.dump(cert.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")
        out.line(f"certificate written to {args.cert}")
        out.data["certificate_path"] = args.cert
    else:
        out.data["certificate"] = cert.to_json()
    return EXIT_OK


def cmd_ght(args, out: Output) -> int:
    g = _load(args.file)
    v = ght_check(g.graph, args.dim, RandomSource(args.seed), args.trials, _fs(args))
    out.data.update(v.to_json())
    label = {Verdict.GLOBALLY_RIGID: "GLOBALLY RIGID", Verdict.NOT_GLOBALLY_RIGID: "NOT GLOBALLY RIGID",
             Verdict.INCONCLUSIVE: "INCONCLUSIVE"}[v.verdict]
    out.line(f"{label}: {v.reason}")
    out.line(f"witness: seed={v.seed} field={_fs(args).name} rigidity_rank={v.rigidity_rank} "
             f"stress_dim={v.stress_dim} stress_rank={v.stress_rank} (target {max(v.n - v.d - 1, 0)})")
    return EXIT_OK if v.globally_rigid else EXIT_NEGATIVE


def cmd_contract(args, out: Output) -> int:
    g = _load(args.file)
    t = g.t
    if args.edge:
        from .braced import contract_braced

        e = edge_key(*_pair(args.edge))
        if not t.graph.has_edge(*e):
            raise InputError(f"{e} is not a triangulation edge")
        child = contract_braced(g, e)
        obj = child.to_json() if g.braces else child.t.to_json()
        if out.as_json:
            out.data.update(edge=list(e), result=obj)
        else:
            out.line(json.dumps(obj))
        return EXIT_OK

    brute = brute_force_contractible(t)
    quad = contractible_edges(t)
    lemma = set()
    if t.n >= 7:
        for f in t.faces:
            lemma.add(_avoiding_face(t, f)[0])
    rows = []
    for e in t.graph.sorted_edges():
        flags = [name for name, s in (("brute", brute), ("quad", quad), ("lemma", lemma)) if e in s]
        rows.append({"edge": list(e), "contractible": e in brute, "methods": flags})
        out.line(f"{e[0]},{e[1]} {'contractible' if e in brute else 'not-contractible'} "
                 f"{' '.join(flags) if flags else '-'}")
    out.line(f"{len(brute)} of {t.m} edges contractible")
    out.data.update(edges=rows, contractible=len(brute), total=t.m)
    return EXIT_OK


def cmd_realize(args, out: Output) -> int:
    _require_dim3(args.dim)
    g = _load(args.file)
    u, v = _pair(args.pair)
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
        raise InputError(f"pair {u},{v} must be two distinct vertices")
    r = coincident_rank(g.graph, (u, v), args.dim, RandomSource(args.seed), args.trials, _fs(args))
    full = max_rank(g.n, args.dim)
    ok = r == full
    out.data.update(pair=[u, v], rank=r, max_rank=full, inf_rigid=ok)
    out.line(f"coincident rank {r} of {full}: {'INFINITESIMALLY RIGID' if ok else 'NOT INFINITESIMALLY RIGID'}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_verify(args, out: Output) -> int:
    cert = Certificate.from_json(_read_json(args.cert))
    g = _load(args.file)
    res = verify_certificate(cert, g, RandomSource(args.seed), args.trials, _fs(args))
    out.data.update(verified=res.ok, message=res.message, step=res.step)
    if res.ok:
        out.line(f"VERIFIED: {res.message}")
        return EXIT_OK
    where = f" (step {res.step})" if res.step is not None else ""
    out.line(f"REJECTED: {res.message}{where}")
    return EXIT_NEGATIVE


def cmd_gen(args, out: Output) -> int:
    t = parse_spec(args.spec, require_4c=args.require_4c)
    braces: list = []
    if args.bridge:
        braces = bridging_braces(t, args.seed, args.braces)
    elif args.braces:
        braces = random_braces(t, args.braces, args.seed)
    obj = t.to_json()
    if braces:
        obj["braces"] = [list(b) for b in braces]
    if out.as_json:
        out.data["triangulation"] = obj
    else:
        out.line(json.dumps(obj))
    return EXIT_OK


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    rand = argparse.ArgumentParser(add_help=False)
    rand.add_argument("--seed", type=int, default=0)
    rand.add_argument("--trials", type=int, default=3)
    rand.add_argument("--rational", action="store_true", help="exact rationals instead of the prime field")

    p = argparse.ArgumentParser(prog="braced-rigidity",
                                description="Global rigidity of braced plane triangulations in 3-space.")
    p.add_argument("--json", action="store_true", default=False, help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a (braced) triangulation")
    s.add_argument("file", nargs="?", default="-")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common, rand], help="decide global rigidity with a certificate")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--cert", help="write the certificate here")
    s.add_argument("--explain", action="store_true", help="also print the realisation chain per step")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("ght", parents=[common, rand], help="randomised stress-matrix test")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--dim", type=int, default=3)
    s.set_defaults(func=cmd_ght)

    s = sub.add_parser("contract", parents=[common], help="contract an edge or list contractible edges")
    s.add_argument("file", nargs="?", default="-")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--edge")
    grp.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("realize-coincident", parents=[common, rand], help="coincident rank of a vertex pair")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--pair", required=True)
    s.add_argument("--dim", type=int, default=3)
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("verify", parents=[common, rand], help="replay a certificate")
    s.add_argument("cert")
    s.add_argument("file", nargs="?", default="-")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", parents=[common], help="emit a corpus triangulation as JSON")
    s.add_argument("spec")
    s.add_argument("--require-4c", action="store_true")
    s.add_argument("--braces", type=int, default=0, help="number of random braces to add")
    s.add_argument("--bridge", action="store_true", help="add braces bridging every separating triangle")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.json, args.command)
    try:
        code = args.func(args, out)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantBreach as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BREACH
    out.emit(code == EXIT_OK)
    return code


if __name__ == "__main__":
    sys.exit(main())
