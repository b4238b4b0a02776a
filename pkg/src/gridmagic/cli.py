"""Command-line front end: ``gridmagic <subcommand> [options]``.

Exit status: 0 on success, 1 on a domain error (one-line reason on
stderr), 2 on a usage error.  Numbers are printed as exact decimals or
``p/q`` fractions.  Default caps: 10^5 transfer-matrix states, 10^7
entries in the counting table, 10^6 enumerated labellings, 4096 bits for
the Kasteleyn evaluation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, counting, ehrhart, recurrence
from .decompose import decompose, render_layer
from .errors import GridMagicError
from .graph import GRID, TOPOLOGIES, build
from .kasteleyn import DEFAULT_CEILING, kasteleyn
from .labelling import WITNESS_CASES, gorenstein_witness, labelling_from_json, validate


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "value"])
    for i, v in rows:
        writer.writerow([i, v])
    return buf.getvalue().rstrip("\n")


def read_sequence_csv(path) -> list[int]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["index", "value"]:
            raise ValueError(f"{path}: expected header 'index,value'")
        rows = sorted((int(r["index"]), int(r["value"])) for r in reader)
    if [i for i, _ in rows] != list(range(len(rows))):
        raise ValueError(f"{path}: indices must run 0, 1, 2, ...")
    return [v for _, v in rows]


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, text: str, data):
        if self.fmt == "json":
            print(json.dumps(data, indent=2), file=self.stream)
        else:
            print(text, file=self.stream)


# --- subcommands -------------------------------------------------------------

def cmd_count(args, out):
    g = build(args.rows, args.cols, args.topology)
    if args.tmax is not None:
        values = ehrhart.lattice_counts(g, range(args.tmax + 1), args.mode, args.threads)
        out.emit(_csv(enumerate(values)), {"mode": args.mode, "counts": values})
        return
    if args.sum is None:
        raise GridMagicError("give --sum T or --tmax T")
    if g.topology == GRID:
        value = counting.count_grid(args.rows, args.cols, args.sum, args.mode, args.table_cap).value
    else:
        value = counting.count_generic(g, args.sum, args.mode).value
    out.emit(str(value), {"rows": args.rows, "cols": args.cols, "topology": args.topology,
                          "sum": args.sum, "mode": args.mode, "value": value})


def cmd_enumerate(args, out):
    g = build(args.rows, args.cols, args.topology)
    labs = counting.enumerate_labellings(g, args.sum, args.mode, args.limit)
    text = "\n".join(" ".join(map(str, lab.labels)) for lab in labs)
    out.emit(text if labs else "(none)", [lab.to_dict() for lab in labs])


def cmd_ehrhart(args, out):
    data = ehrhart.ehrhart_polynomial(args.rows, args.cols, args.topology, threads=args.threads)
    text = "\n".join([
        f"dimension: {data.dimension}",
        f"counts L(0..{len(data.counts) - 1}): {' '.join(map(str, data.counts))}",
        "polynomial (constant first): " + " ".join(_frac(c) for c in data.polynomial),
        "h-vector: " + " ".join(map(str, data.h_vector)),
        f"Ehrhart series: {data.series}",
    ])
    out.emit(text, data.to_dict())


def cmd_hvector(args, out):
    if args.counts:
        counts = read_sequence_csv(args.counts)
        if args.dim is None:
            raise GridMagicError("--counts needs --dim")
        d = args.dim
    else:
        if args.rows is None or args.cols is None:
            raise GridMagicError("give --rows/--cols or --counts/--dim")
        data = ehrhart.ehrhart_polynomial(args.rows, args.cols, args.topology, threads=args.threads)
        counts, d = data.counts, data.dimension
    h = ehrhart.h_vector(counts, d)
    text = "\n".join([
        "h-vector: " + " ".join(map(str, h)),
        f"palindromic: {'yes' if ehrhart.is_palindromic(h) else 'no'}",
        f"unimodal: {'yes' if ehrhart.is_unimodal(h) else 'no'}",
        f"Ehrhart series: {ehrhart.series_text(h, d)}",
    ])
    out.emit(text, {"d": d, "h": h, "palindromic": ehrhart.is_palindromic(h),
                    "unimodal": ehrhart.is_unimodal(h)})


def cmd_gorenstein(args, out):
    mode = args.mode
    if mode == "auto":
        mode = ehrhart.BOTH if args.topology == GRID else ehrhart.FUNCTIONAL
    res = ehrhart.gorenstein_check(args.rows, args.cols, args.topology, mode, args.tmax, args.threads)
    lines = [f"gorenstein: {'yes' if res.verdict else 'no'}"]
    if res.verdict:
        lines.append(f"index: {res.index}" + (" (point)" if res.point else ""))
    if res.h_vector is not None:
        lines.append("h-vector: " + " ".join(map(str, res.h_vector)))
    lines.append(f"mode: {res.mode}")
    payload = res.to_dict()
    payload["h"] = res.h_vector
    payload["point"] = res.point
    out.emit("\n".join(lines), payload)


def cmd_dimension(args, out):
    g = build(args.rows, args.cols, args.topology)
    d = ehrhart.dimension(g)
    out.emit(str(d), {"rows": args.rows, "cols": args.cols, "topology": args.topology,
                      "dimension": d, "formula": ehrhart.formula_dimension(args.rows, args.cols, args.topology)})


def cmd_kasteleyn(args, out):
    value = kasteleyn(args.rows, args.cols, args.precision_ceiling)
    out.emit(str(value), {"rows": args.rows, "cols": args.cols, "value": value})


def cmd_recurrence(args, out):
    t = args.sum
    if args.method == "charpoly":
        tm = recurrence.transfer_matrix(args.rows, t, args.state_cap)
        rec = recurrence.char_poly_recurrence(tm)
        seq = tm.walk_counts(args.terms or rec.order + 6)
    else:
        rec, seq = recurrence.tiling_recurrence(args.rows, t, args.terms)
    if args.csv:
        out.emit(_csv(enumerate(seq)), {"sequence": seq})
        return
    out.emit(rec.text(), rec.to_dict())


def _table(report) -> str:
    lines = [f"{'n':>4} {'forward':>24} {'backward':>24} {'sign':>5} pass"]
    for r in report.rows:
        lines.append(f"{r.n:>4} {r.forward:>24} {str(r.backward):>24} {r.sign:>5} "
                     f"{'yes' if r.passed else 'NO'}")
    lines.append(f"recurrence: {report.recurrence.text()}")
    for name, ok in report.checks.items():
        lines.append(f"{name}: {'pass' if ok else 'FAIL'}")
    return "\n".join(lines)


def cmd_reciprocity(args, out):
    rep = recurrence.verify_reciprocity(args.rows, args.nmax)
    out.emit(_table(rep), rep.to_dict())
    if not rep.all_pass:
        raise GridMagicError("reciprocity check failed")


def cmd_power(args, out):
    rep = recurrence.power_recurrence(args.rows, args.sum, args.nmax)
    out.emit(_table(rep), rep.to_dict())
    if not rep.all_pass:
        raise GridMagicError("power reciprocity check failed")


def cmd_decompose(args, out):
    lab = labelling_from_json(Path(args.input).read_text())
    dec = decompose(lab)
    if args.output:
        Path(args.output).write_text(dec.to_json(indent=2) + "\n")
    blocks = []
    for k, layer in enumerate(dec.layers, start=1):
        block = f"layer {k}: edges {' '.join(map(str, layer))}"
        if args.render and lab.graph.topology == GRID:
            block += "\n" + render_layer(lab.graph, layer)
        blocks.append(block)
    out.emit("\n".join(blocks) if blocks else "(no layers: sum is 0)", dec.to_dict())


def cmd_witness(args, out):
    lab = gorenstein_witness(args.case, args.rows, args.cols)
    rep = validate(lab)
    if args.output:
        Path(args.output).write_text(lab.to_json() + "\n")
    text = (f"sum: {lab.sum}\nlabels: {' '.join(map(str, lab.labels))}\n"
            f"magic: {rep.is_magic}\ninterior: {rep.is_interior}")
    out.emit(text, lab.to_dict())


def cmd_graph(args, out):
    g = build(args.rows, args.cols, args.topology)
    text = "\n".join(f"{e.index}: ({e.u.row},{e.u.col})-({e.v.row},{e.v.col}) {e.kind}" for e in g.edges)
    out.emit(text, g.to_dict())


def cmd_selftest(args, out):
    chosen = [c for c in acceptance.CRITERIA if not args.only or c.number in args.only]
    outcomes = []
    for crit in chosen:
        o = acceptance.run(crit)
        outcomes.append(o)
        print(o.line(timings=False), file=out.stream)
        print(f"  criterion {crit.number}: {o.seconds:.2f}s (budget {crit.budget:g}s)", file=sys.stderr)
    failed = [o for o in outcomes if not o.passed]
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} criteria passed", file=out.stream)
    if failed:
        raise GridMagicError(f"{len(failed)} acceptance criteria failed")


# --- parser ----------------------------------------------------------------

def _shape(p, rows=True, cols=True, topology=True, required=True):
    if rows:
        p.add_argument("--rows", "-m", type=_positive, required=required, help="number of rows m")
    if cols:
        p.add_argument("--cols", "-n", type=_positive, required=required, help="number of columns n")
    if topology:
        p.add_argument("--topology", choices=TOPOLOGIES, default=GRID)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=_positive, default=counting.default_threads(),
                        help="worker threads (default: $GRIDMAGIC_THREADS or 1)")
    common.add_argument("--state-cap", type=_positive, default=recurrence.DEFAULT_STATE_CAP,
                        help="maximum transfer-matrix states (default 10^5)")
    common.add_argument("--table-cap", type=_positive, default=counting.DEFAULT_STATE_CAP,
                        help="maximum entries of the dense counting table (default 10^7)")

    parser = argparse.ArgumentParser(prog="gridmagic", description=__doc__.splitlines()[0],
                                     epilog="Exit status: 0 ok, 1 domain error, 2 usage error.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count magic labellings")
    _shape(p)
    p.add_argument("--sum", "-t", type=_nonnegative)
    p.add_argument("--tmax", type=_nonnegative, help="dump counts for t = 0..TMAX as CSV")
    p.add_argument("--mode", choices=counting.MODES, default=counting.ALL)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common], help="list magic labellings")
    _shape(p)
    p.add_argument("--sum", "-t", type=_nonnegative, required=True)
    p.add_argument("--mode", choices=counting.MODES, default=counting.ALL)
    p.add_argument("--limit", type=_positive, default=counting.DEFAULT_ENUMERATE_LIMIT,
                   help="maximum number of labellings (default 10^6)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("ehrhart", parents=[common], help="Ehrhart polynomial and series")
    _shape(p)
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("hvector", parents=[common], help="h-vector from a board or a counts CSV")
    _shape(p, required=False)
    p.add_argument("--counts", help="CSV with header index,value holding L(0..d)")
    p.add_argument("--dim", type=_nonnegative, help="polytope dimension d (with --counts)")
    p.set_defaults(func=cmd_hvector)

    p = sub.add_parser("gorenstein", parents=[common], help="Gorenstein verdict and index")
    _shape(p)
    p.add_argument("--mode", choices=("auto", ehrhart.HVECTOR, ehrhart.FUNCTIONAL, ehrhart.BOTH),
                   default="auto", help="auto: both for grids, functional for tori")
    p.add_argument("--tmax", type=_nonnegative, default=None,
                   help="largest dilate for the functional test (default 8)")
    p.set_defaults(func=cmd_gorenstein)

    p = sub.add_parser("dimension", parents=[common], help="dimension of the matching polytope")
    _shape(p)
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("kasteleyn", parents=[common], help="closed-form tiling count")
    _shape(p, topology=False)
    p.add_argument("--precision-ceiling", type=_positive, default=DEFAULT_CEILING,
                   help="maximum working precision in bits (default 4096)")
    p.set_defaults(func=cmd_kasteleyn)

    p = sub.add_parser("recurrence", parents=[common], help="linear recurrence in n for T(m,n,t)")
    _shape(p, cols=False, topology=False)
    p.add_argument("--sum", "-t", type=_nonnegative, default=1)
    p.add_argument("--method", choices=("minimal", "charpoly"), default="minimal")
    p.add_argument("--terms", type=_positive, help="sequence length (default 4(t+1)^m + 4)")
    p.add_argument("--csv", action="store_true", help="dump the sequence instead")
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("reciprocity", parents=[common], help="tiling reciprocity table")
    _shape(p, cols=False, topology=False)
    p.add_argument("--nmax", type=_nonnegative, default=10)
    p.set_defaults(func=cmd_reciprocity)

    p = sub.add_parser("power", parents=[common], help="recurrence and reciprocity for T(m,n,1)^t")
    _shape(p, cols=False, topology=False)
    p.add_argument("--sum", "-t", type=_positive, required=True, help="exponent t")
    p.add_argument("--nmax", type=_nonnegative, default=8)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("decompose", parents=[common], help="split a labelling into perfect matchings")
    p.add_argument("--input", "-i", required=True, help="labelling JSON file")
    p.add_argument("--output", "-o", help="write the decomposition JSON here")
    p.add_argument("--render", action="store_true", help="draw each layer as H/V cells")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("witness", parents=[common], help="explicit interior labelling")
    p.add_argument("--case", choices=WITNESS_CASES, required=True)
    _shape(p, topology=False)
    p.add_argument("--output", "-o", help="write the labelling JSON here")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("graph", parents=[common], help="canonical edge list")
    _shape(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=_positive, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, Output(args.format))
    except (GridMagicError, ValueError, OSError) as exc:
        print(f"gridmagic: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
