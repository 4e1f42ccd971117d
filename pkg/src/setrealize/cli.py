"""Command-line entry point.

Exit codes: 0 when the answer is positive (checks pass, a realization or
oracle witness exists), 1 when it is negative, 2 on I/O, parse or size
errors.  Every positive certificate is re-verified before it is printed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import islice
from pathlib import Path

from .checkers import ChordlessCycle, check_chordal, check_helly_triples, meeting_chain_depth
from .graphs import (
    line_decomposition_from_cliques,
    pathwidth_bruteforce,
    subtree_representation,
    verify_path_decomposition,
)
from .interval import ObstructionTriple, brute_force_order, is_interval_ordering, realize_interval_order
from .model import (
    FormatError,
    Graph,
    Ordering,
    SetFamily,
    Tree,
    intersection_graph,
    parse_family,
    parse_graph,
    serialize_family,
    serialize_graph,
    validate_subtree_representation,
)
from .tree_realizer import realize_tree
from .testkit import GENERATOR_KINDS, GeneratorSpec, random_instances, realize_tree_bruteforce

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class CertificateError(RuntimeError):
    """A positive answer failed its own re-verification."""


@dataclass
class RunReport:
    command: str
    input_digest: str
    verdict: str
    certificate: dict | None = None
    details: dict = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.verdict in POSITIVE_VERDICTS else EXIT_NEGATIVE

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "details": self.details,
        }
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"


POSITIVE_VERDICTS = {"ok", "realizable", "found"}


@contextmanager
def _timed(timings: dict, phase: str):
    start = time.perf_counter()
    yield
    timings[phase] = timings.get(phase, 0.0) + (time.perf_counter() - start) * 1000


def _digest(canonical: str) -> str:
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def tree_json(tree: Tree) -> dict:
    return {"kind": "tree", "vertices": list(tree.vertices.elements), "edges": [list(e) for e in tree.sorted_edges()]}


def ordering_json(order: Ordering) -> dict:
    seq = list(order.sequence)
    return {"kind": "ordering", "sequence": seq, "path_edges": [list(p) for p in zip(seq, seq[1:])]}


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise CertificateError(f"{what} failed re-verification")


# -- commands -------------------------------------------------------------------

def run_check(family: SetFamily) -> RunReport:
    timings: dict[str, float] = {}
    with _timed(timings, "helly"):
        helly = check_helly_triples(family)
    with _timed(timings, "chordal"):
        ig = intersection_graph(family)
        chordal = check_chordal(ig)
    with _timed(timings, "chain_depth"):
        chain = meeting_chain_depth(family)
    with _timed(timings, "verify"):
        if helly is not None:
            _require(helly.verify(family), "Helly violation")
        if isinstance(chordal, ChordlessCycle):
            _require(chordal.verify(ig), "chordless cycle")
    details = {
        "helly": "ok" if helly is None else helly.to_json(),
        "chordal": "ok" if isinstance(chordal, Ordering) else chordal.to_json(),
        "chain_depth": {"depth": chain.depth, "chain": list(chain.chain)},
    }
    failing = helly if helly is not None else (chordal if isinstance(chordal, ChordlessCycle) else None)
    return RunReport(
        "check",
        _digest(serialize_family(family)),
        "ok" if failing is None else "fails",
        None if failing is None else failing.to_json(),
        details,
        timings,
    )


def run_realize(family: SetFamily, mode: str) -> RunReport:
    timings: dict[str, float] = {}
    with _timed(timings, "solve"):
        result = realize_tree(family) if mode == "tree" else realize_interval_order(family)
    with _timed(timings, "verify"):
        if isinstance(result, Tree):
            _require(validate_subtree_representation(result, family).ok, "tree")
            cert = tree_json(result)
        elif isinstance(result, Ordering):
            _require(is_interval_ordering(family, result), "ordering")
            cert = ordering_json(result)
        elif isinstance(result, ChordlessCycle):
            _require(result.verify(intersection_graph(family)), "chordless cycle")
            cert = result.to_json()
        else:
            _require(result.verify(family), result.kind)
            cert = result.to_json()
    verdict = "realizable" if isinstance(result, (Tree, Ordering)) else "not-realizable"
    return RunReport(f"realize --mode={mode}", _digest(serialize_family(family)), verdict, cert, {"mode": mode}, timings)


def run_graph(graph: Graph, action: str) -> RunReport:
    timings: dict[str, float] = {}
    digest = _digest(serialize_graph(graph))
    command = f"graph --action={action}"
    if action == "pathwidth":
        with _timed(timings, "solve"):
            width = pathwidth_bruteforce(graph)
        return RunReport(command, digest, "ok", {"kind": "pathwidth", "width": width}, {}, timings)
    with _timed(timings, "chordal"):
        chordal = check_chordal(graph)
    if isinstance(chordal, ChordlessCycle):
        _require(chordal.verify(graph), "chordless cycle")
        return RunReport(command, digest, "not-chordal", chordal.to_json(), {}, timings)
    if action == "represent":
        with _timed(timings, "solve"):
            rep = subtree_representation(graph)
        with _timed(timings, "verify"):
            _require(rep.intersection_graph().edges == graph.edges, "subtree representation")
        cert = {
            "kind": "subtree-representation",
            "host": tree_json(rep.host),
            "cliques": {k: list(v) for k, v in rep.cliques.items()},
            "subtrees": {k: list(v) for k, v in rep.subtrees.items()},
        }
        return RunReport(command, digest, "ok", cert, {}, timings)
    with _timed(timings, "solve"):
        dec = line_decomposition_from_cliques(graph)
    if isinstance(dec, ObstructionTriple):
        return RunReport(command, digest, "not-interval", dec.to_json(), {}, timings)
    with _timed(timings, "verify"):
        width = verify_path_decomposition(dec)
        _require(isinstance(width, int), "path decomposition")
    cert = {"kind": "path-decomposition", "bags": [list(b) for b in dec.bags], "width": width}
    return RunReport(command, digest, "ok", cert, {}, timings)


def run_oracle(kind: str, text: bytes) -> RunReport:
    timings: dict[str, float] = {}
    command = f"oracle --kind={kind}"
    if kind == "pathwidth":
        graph = parse_graph(text)
        with _timed(timings, "solve"):
            width = pathwidth_bruteforce(graph)
        return RunReport(command, _digest(serialize_graph(graph)), "found", {"kind": "pathwidth", "width": width}, {}, timings)
    family = parse_family(text)
    digest = _digest(serialize_family(family))
    with _timed(timings, "solve"):
        found = realize_tree_bruteforce(family) if kind == "tree" else brute_force_order(family)
    if found is None:
        return RunReport(command, digest, "none", None, {}, timings)
    if isinstance(found, Tree):
        _require(validate_subtree_representation(found, family).ok, "tree")
        return RunReport(command, digest, "found", tree_json(found), {}, timings)
    _require(is_interval_ordering(family, found), "ordering")
    return RunReport(command, digest, "found", ordering_json(found), {}, timings)


# -- text rendering ---------------------------------------------------------------

def _render_cert(cert: dict | None) -> list[str]:
    if cert is None:
        return []
    kind = cert["kind"]
    if kind == "tree":
        return [f"edge {u} {v}" for u, v in cert["edges"]] or ["single vertex " + cert["vertices"][0]]
    if kind == "ordering":
        return ["ordering: " + " ".join(cert["sequence"])]
    if kind == "helly-violation":
        return ["helly violation: " + " ".join(cert["sets"])]
    if kind == "chordless-cycle":
        return ["chordless cycle: " + " ".join(cert["cycle"])]
    if kind == "obstruction-triple":
        lines = ["obstruction triple: " + " ".join(cert["vertices"])]
        lines += [f"  X{j + 1} = {{{', '.join(x)}}}" for j, x in enumerate(cert["witnesses"])]
        return lines
    if kind == "path-decomposition":
        lines = [f"bag {i + 1}: {' '.join(b)}" for i, b in enumerate(cert["bags"])]
        return lines + [f"width: {cert['width']}"]
    if kind == "pathwidth":
        return [f"pathwidth: {cert['width']}"]
    if kind == "subtree-representation":
        lines = [f"clique {k}: {' '.join(v)}" for k, v in cert["cliques"].items()]
        lines += [f"host edge {u} {v}" for u, v in cert["host"]["edges"]]
        lines += [f"S_{v}: {' '.join(s)}" for v, s in cert["subtrees"].items()]
        return lines
    return [json.dumps(cert, sort_keys=True)]


def render_text(report: RunReport) -> str:
    lines = [f"verdict: {report.verdict}"]
    d = report.details
    if report.command == "check":
        helly, chordal = d["helly"], d["chordal"]
        lines.append("helly: ok" if helly == "ok" else "helly: violation " + " ".join(helly["sets"]))
        lines.append("chordal: ok" if chordal == "ok" else "chordal: chordless cycle " + " ".join(chordal["cycle"]))
        lines.append(f"chain_depth: {d['chain_depth']['depth']}")
    else:
        lines += _render_cert(report.certificate)
    return "\n".join(lines) + "\n"


# -- argument handling ------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    p = argparse.ArgumentParser(prog="setrealize", description="Realize set families as subtrees or intervals.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="Helly and chordal tests on a family")
    c.add_argument("file")

    r = sub.add_parser("realize", parents=[common], help="build a tree or an interval ordering")
    r.add_argument("--mode", choices=("tree", "interval"), default="tree")
    r.add_argument("file")

    g = sub.add_parser("graph", parents=[common], help="chordal-graph representations and path-width")
    g.add_argument("--action", choices=("represent", "decompose", "pathwidth"), required=True)
    g.add_argument("file")

    o = sub.add_parser("oracle", parents=[common], help="exhaustive reference answers")
    o.add_argument("--kind", choices=("tree", "order", "pathwidth"), required=True)
    o.add_argument("file")

    gen = sub.add_parser("generate", help="write seeded instances in the standard formats")
    gen.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    gen.add_argument("--n", type=int, default=6, help="ground-set or vertex count")
    gen.add_argument("--sets", type=int, default=4, help="member sets per family")
    gen.add_argument("--density", type=float, default=None)
    gen.add_argument("--max-clique", type=int, default=4)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path, default=None, help="directory for numbered files (default: stdout)")
    return p


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _generate(args) -> int:
    spec = GeneratorSpec(
        args.kind, n=args.n, sets=args.sets, density=args.density, max_clique=args.max_clique, seed=args.seed
    )
    for i, inst in enumerate(islice(random_instances(spec), args.count)):
        text = serialize_family(inst) if isinstance(inst, SetFamily) else serialize_graph(inst)
        if args.out is None:
            sys.stdout.write(text)
        else:
            args.out.mkdir(parents=True, exist_ok=True)
            ext = "json" if isinstance(inst, SetFamily) else "txt"
            (args.out / f"{args.kind}-{args.seed}-{i:04d}.{ext}").write_text(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "generate":
            return _generate(args)
        start = time.perf_counter()
        data = _read(args.file)
        if args.command == "check":
            report = run_check(parse_family(data))
        elif args.command == "realize":
            report = run_realize(parse_family(data), args.mode)
        elif args.command == "graph":
            report = run_graph(parse_graph(data), args.action)
        else:
            report = run_oracle(args.kind, data)
        report.timings["total"] = (time.perf_counter() - start) * 1000
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(report.to_json() if args.json else render_text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
