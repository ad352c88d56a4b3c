"""Command line entry point: ``closedfrechet {decide,distance,rank,bench,dump}``.

Exit status is 0 for a yes answer (or success), 1 for a no answer and 2 for
any usage or input error.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .bench import DEFAULT_CAP, loglog_slope, run_bench
from .decision import compute_distance, decide
from .geometry import Curve
from .render import render_svg

__all__ = ["CurveFormatError", "parse_curve", "load_curve", "main"]

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class CurveFormatError(ValueError):
    pass


def parse_curve(text, source="<input>"):
    """Parse a closed curve from JSON ``{"dim": k, "points": [...]}`` or plain text.

    Plain text holds one whitespace-separated point per line; blank lines
    and lines starting with ``#`` are skipped.  The closing vertex must not
    repeat the first one.
    """
    stripped = text.strip()
    if not stripped:
        raise CurveFormatError(f"{source}: empty curve file")
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise CurveFormatError(f"{source}: invalid JSON: {exc}") from exc
        if not isinstance(doc, dict) or "points" not in doc or "dim" not in doc:
            raise CurveFormatError(f'{source}: JSON must have "dim" and "points"')
        dim, points = doc["dim"], doc["points"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise CurveFormatError(f"{source}: dim must be a positive integer")
        if not isinstance(points, list) or not points:
            raise CurveFormatError(f"{source}: points must be a nonempty list")
        for k, p in enumerate(points):
            if not isinstance(p, list) or len(p) != dim:
                raise CurveFormatError(f"{source}: point {k} does not have {dim} coordinates")
    else:
        points = []
        for lineno, line in enumerate(stripped.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                points.append([float(tok) for tok in line.split()])
            except ValueError as exc:
                raise CurveFormatError(f"{source}:{lineno}: {exc}") from exc
        if not points:
            raise CurveFormatError(f"{source}: no points")
        dim = len(points[0])
        for k, p in enumerate(points):
            if len(p) != dim:
                raise CurveFormatError(f"{source}: point {k} has {len(p)} coordinates, expected {dim}")
    try:
        arr = np.array(points, dtype=float)
    except (TypeError, ValueError) as exc:
        raise CurveFormatError(f"{source}: non-numeric coordinates") from exc
    if not np.all(np.isfinite(arr)):
        raise CurveFormatError(f"{source}: coordinates must be finite")
    if len(arr) >= 2 and np.array_equal(arr[0], arr[-1]):
        raise CurveFormatError(f"{source}: the closing vertex repeats the first; list each vertex once")
    return Curve(arr)


def load_curve(path):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CurveFormatError(f"{path}: {exc.strerror or exc}") from exc
    return parse_curve(text, str(path))


def _nonneg(s):
    v = float(s)
    if not (math.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {s}")
    return v


def _positive(s):
    v = float(s)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return v


def _size_list(s):
    try:
        sizes = [int(tok) for tok in s.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {s!r}") from exc
    if not sizes or any(k < 1 for k in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def _pair(args):
    X, Y = load_curve(args.curve_x), load_curve(args.curve_y)
    if X.dim != Y.dim:
        raise CurveFormatError(f"dimension mismatch: {X.dim} vs {Y.dim}")
    return X, Y


def cmd_decide(args):
    X, Y = _pair(args)
    report = decide(X, Y, args.eps)
    if args.json:
        doc = {"answer": report.answer, "eps": args.eps}
        if report.witness is not None:
            doc["witness"] = {"i": report.witness.i, "interval": report.witness.interval, "u": report.witness.u}
        print(json.dumps(doc))
    else:
        print("YES" if report.answer else "NO")
    return EXIT_YES if report.answer else EXIT_NO


def cmd_distance(args):
    X, Y = _pair(args)
    print(f"{compute_distance(X, Y, args.tol):.12g}")
    return EXIT_YES


def _corpus(directory):
    d = Path(directory)
    if not d.is_dir():
        raise CurveFormatError(f"{directory}: not a directory")
    files = sorted(p for p in d.iterdir() if p.is_file())
    return [(p.name, load_curve(p)) for p in files]


def cmd_rank(args):
    query = load_curve(args.query)
    corpus = _corpus(args.directory)
    for name, c in corpus:
        if c.dim != query.dim:
            raise CurveFormatError(f"{name}: dimension {c.dim} differs from the query's {query.dim}")
    if args.eps is not None:
        for name, c in corpus:
            if decide(query, c, args.eps).answer:
                print(name)
    else:
        scored = sorted((compute_distance(query, c, args.tol), name) for name, c in corpus)
        for dist, name in scored[: args.top]:
            print(f"{name}\t{dist:.9g}")
    return EXIT_YES


def cmd_bench(args):
    records = run_bench(args.sizes, repeats=args.repeats, seed=args.seed, cap=args.cap)
    out = sys.stdout
    out.write("m,n,wall_time_s,deque_insertions\n")
    for r in records:
        out.write(f"{r.m},{r.n},{r.wall_time_s:.6f},{r.deque_insertions}\n")
    if len({r.m * r.n for r in records}) >= 2:
        out.write(f"# loglog_slope={loglog_slope(records):.4f}\n")
    return EXIT_YES


def cmd_dump(args):
    X, Y = _pair(args)
    Path(args.output).write_text(render_svg(X, Y, args.eps, scale=args.scale), encoding="utf-8")
    return EXIT_YES


def build_parser():
    parser = argparse.ArgumentParser(prog="closedfrechet", description="Frechet distance of closed polygonal curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="is the distance at most eps?")
    p.add_argument("--eps", type=_nonneg, required=True)
    p.add_argument("--json", action="store_true", help="print a JSON report with the witness")
    p.add_argument("curve_x")
    p.add_argument("curve_y")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("distance", help="bisect the distance")
    p.add_argument("--tol", type=_positive, default=1e-6)
    p.add_argument("curve_x")
    p.add_argument("curve_y")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("rank", help="match a query against a directory of curves")
    p.add_argument("--eps", type=_nonneg, help="list files within eps of the query")
    p.add_argument("--top", type=int, default=10, help="without --eps, list the K nearest files")
    p.add_argument("--tol", type=_positive, default=1e-6)
    p.add_argument("query")
    p.add_argument("directory")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("bench", help="time the decision on growing random curves")
    p.add_argument("--sizes", type=_size_list, default=[50, 100, 200, 400, 800])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="refuse sizes with m*n above this")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dump", help="write an SVG of the free-space diagram")
    p.add_argument("--eps", type=_nonneg, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scale", type=_positive, default=40.0)
    p.add_argument("curve_x")
    p.add_argument("curve_y")
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; keep 0 for --help
        return EXIT_YES if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (CurveFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
