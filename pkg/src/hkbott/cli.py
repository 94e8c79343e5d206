"""Batch front end: ``hkbott analyze | search | product | simulate | request``.

JSON on stdout is the primary output; ``--format text`` renders the same
dictionaries. Exit codes:

    0  counterexample / hk_holds (analyze), success elsewhere
    1  bad input (matrix format, size, multiplier)
    2  a cross-check failed (InternalInconsistency)
    3  inconclusive
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bieberbach import generators
from .bott import BottMatrix, enumerate_matrices, parse_and_validate
from .errors import DimensionOutOfRange, HKError, InternalInconsistency, MatrixFormatError, NotExpanding
from .hk import Status, analyze, decide_hk, product_analysis
from .odometer import CosetSpace, expanding_cover

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONSISTENT = 2
EXIT_INCONCLUSIVE = 3

MAX_SEARCH_DIM = 6
MAX_POINTS = 200_000
ORACLE_POINTS = 729
PERMUTATION_POINTS = 64

COMMANDS = ("analyze", "search", "product", "simulate")


class UsageError(HKError, ValueError):
    pass


@dataclass
class AnalysisRequest:
    """One validated command; the matrix is parsed before dispatch."""

    command: str
    matrix: Optional[BottMatrix] = None
    size: Optional[int] = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command == "search":
            if self.size is None:
                raise UsageError("search needs a size")
            if not 1 <= self.size <= MAX_SEARCH_DIM:
                raise UsageError(f"search size must be in 1..{MAX_SEARCH_DIM}, got {self.size}")
        elif self.matrix is None:
            raise UsageError(f"{self.command} needs a matrix")

    @classmethod
    def from_json(cls, data: dict) -> "AnalysisRequest":
        if not isinstance(data, dict):
            raise UsageError("request must be a JSON object")
        matrix = data.get("bott_matrix")
        return cls(
            command=data.get("command", ""),
            matrix=parse_and_validate(matrix) if matrix is not None else None,
            size=data.get("size"),
            options=dict(data.get("options", {})),
        )


def load_matrix(arg: str) -> BottMatrix:
    """A path to a text or JSON matrix file, or inline rows joined by ',' ';' or '/'."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            data = json.loads(text)
            if "bott_matrix" not in data:
                raise MatrixFormatError(f"{arg}: JSON file has no 'bott_matrix' key")
            return parse_and_validate(data["bott_matrix"])
        return parse_and_validate(text)
    rows = [r for r in arg.replace(";", ",").replace("/", ",").split(",")]
    return parse_and_validate([r.strip() for r in rows if r.strip()])


# --- commands -------------------------------------------------------------


def run_analyze(req: AnalysisRequest) -> tuple[int, dict]:
    result = analyze(req.matrix)
    code = EXIT_INCONCLUSIVE if result.status is Status.INCONCLUSIVE else EXIT_OK
    return code, result.to_json()


def _decide_rows(A: BottMatrix) -> tuple[str, Optional[str]]:
    cert = decide_hk(A)
    return cert.status.value, cert.witness.render() if cert.witness is not None else None


def run_search(req: AnalysisRequest) -> tuple[int, dict]:
    n = req.size
    jobs = int(req.options.get("jobs", 1))
    matrices = list(enumerate_matrices(n))
    if jobs > 1:
        chunk = max(1, len(matrices) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            decided = list(pool.map(_decide_rows, matrices, chunksize=chunk))
    else:
        decided = [_decide_rows(A) for A in matrices]
    counts = {s.value: 0 for s in Status}
    found = []
    for pos, (A, (status, witness)) in enumerate(zip(matrices, decided), start=1):
        counts[status] += 1
        if status == Status.COUNTEREXAMPLE.value:
            found.append({"position": pos, "matrix": A.rows(), "witness": witness})
    return EXIT_OK, {
        "dimension": n,
        "analyzed": len(matrices),
        "counts": counts,
        "counterexamples": found,
    }


def run_product(req: AnalysisRequest) -> tuple[int, dict]:
    torus = int(req.options.get("torus", 1))
    if torus < 0:
        raise UsageError("torus factor count must be non-negative")
    base, summary = product_analysis(req.matrix, torus)
    code = EXIT_OK if summary.status == Status.COUNTEREXAMPLE.value else EXIT_INCONCLUSIVE
    return code, {"base": base.certificate.to_json(), "product": summary.to_json()}


def _simulate(A: BottMatrix, k: int, level: int) -> tuple[dict, list[list[int]]]:
    cover = expanding_cover(A, k)
    space = CosetSpace(A, cover, level)
    if len(space) > MAX_POINTS:
        raise UsageError(f"level {level} has {len(space)} points; the cap is {MAX_POINTS}")
    gens = generators(A)
    perms = [space.permutation(g) for g in gens]
    bijective = all(sorted(p) == list(range(len(space))) for p in perms)
    origin = (0,) * A.n
    transitive = len(space.orbit(origin, gens)) == len(space)
    equivariant = None
    if level >= 1:
        lower = CosetSpace(A, cover, level - 1)
        equivariant = all(
            space.project(space.act(g, u), level - 1) == lower.act(g, space.project(u, level - 1))
            for g in gens
            for u in space.points()
        )
    oracle = None
    if len(space) <= ORACLE_POINTS:
        oracle = all(space.act(g, u) == space.act_by_oracle(g, u) for g in gens for u in space.points())
    out = {
        "matrix": A.rows(),
        "cover": cover.to_json(),
        "level": level,
        "points": len(space),
        "coordinate_step": str(space.unit),
        "generators": [str(g) for g in gens],
        "bijective": bijective,
        "transitive": transitive,
        "equivariant": equivariant,
        "oracle_agreement": oracle,
    }
    if len(space) <= PERMUTATION_POINTS:
        out["permutations"] = {f"s{i}": p for i, p in enumerate(perms, start=1)}
    return out, perms


def run_simulate(req: AnalysisRequest) -> tuple[int, dict]:
    k = int(req.options.get("k", 1))
    level = int(req.options.get("level", 1))
    if level < 0:
        raise UsageError("level must be non-negative")
    out, perms = _simulate(req.matrix, k, level)
    req.options["_perms"] = perms
    checks = [out["bijective"], out["transitive"], out["equivariant"], out["oracle_agreement"]]
    if any(c is False for c in checks):
        return EXIT_INCONSISTENT, out
    return EXIT_OK, out


RUNNERS = {
    "analyze": run_analyze,
    "search": run_search,
    "product": run_product,
    "simulate": run_simulate,
}


def dispatch(req: AnalysisRequest) -> tuple[int, dict]:
    return RUNNERS[req.command](req)


# --- argument handling ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="hkbott", description="HK-conjecture certifier for real Bott manifolds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full certificate for one matrix")
    p.add_argument("--matrix", required=True, help="matrix file or inline rows, e.g. 0100,0010,0001,0000")

    p = sub.add_parser("search", parents=[common], help="decide every Bott matrix of one size")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--figures", metavar="DIR", help="also write a status chart into DIR")

    p = sub.add_parser("product", parents=[common], help="product of a dimension-4 base with tori")
    p.add_argument("--matrix", required=True)
    p.add_argument("--torus", type=int, required=True)

    p = sub.add_parser("simulate", parents=[common], help="finite level of the odometer")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--figures", metavar="DIR", help="also write the generator permutations into DIR")

    p = sub.add_parser("request", parents=[common], help="run a JSON request file")
    p.add_argument("file")
    return parser


def request_from_args(args: argparse.Namespace) -> AnalysisRequest:
    if args.command == "request":
        with open(args.file, encoding="utf-8") as fh:
            return AnalysisRequest.from_json(json.load(fh))
    matrix = load_matrix(args.matrix) if getattr(args, "matrix", None) is not None else None
    options = {}
    for name in ("jobs", "torus", "k", "level"):
        if getattr(args, name, None) is not None:
            options[name] = getattr(args, name)
    return AnalysisRequest(args.command, matrix=matrix, size=getattr(args, "dim", None), options=options)


def emit(payload: dict, fmt: str, command: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "text":
        from .report import render_text

        stream.write(render_text(command, payload))
    else:
        stream.write(json.dumps(payload, indent=2))
    stream.write("\n")


def _write_figures(req: AnalysisRequest, payload: dict, directory: str) -> list[str]:
    from . import plotting

    os.makedirs(directory, exist_ok=True)
    if req.command == "search":
        return [plotting.search_figure(payload, directory)]
    return [plotting.simulate_figure(payload, req.options["_perms"], directory)]


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        req = request_from_args(args)
        code, payload = dispatch(req)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (MatrixFormatError, UsageError, NotExpanding, DimensionOutOfRange, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(payload, fmt, req.command)
    figures = getattr(args, "figures", None)
    if figures:
        for path in _write_figures(req, payload, figures):
            print(f"wrote {path}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
