"""Command-line front end.

Subcommands::

    madci ci        --input data.csv --value expr [--group status] --measure {mad,diff,ratio-sq}
    madci simulate  --dist1 exp:1 [--dist2 exp:1] --measure ... --n1 1000 [--n2 ...] --trials 2000
    madci pif       --dist1 exp:1 --dist2 exp:1 --measure ratio-sq --from 0 --to 10 --step 0.01
    madci truth     --dist1 chisq:5 [--dist2 chisq:2]

Reports go to stdout (or ``--out``) as JSON unless ``--format csv``. Floats
are written with 17 significant digits. Errors are reported on stderr as a
JSON object ``{"error": <code>, "message": ...}`` and a nonzero exit status
specific to the error kind.

``--config PATH`` reads a flat ``key = value`` file using the long flag
names (``n1 = 500``); flags given on the command line take precedence.
"""

import argparse
import csv
from dataclasses import dataclass
import io
import json
import math
import sys

from .asymptotics import pif_curve
from .core import clean_sample
from .distributions import parse_dist, true_diff, true_mad, true_ratio_sq
from .errors import EmptyInput, InvalidInput, MadciError, SchemaError, TooManyGroups
from .intervals import ci_diff_mads, ci_mad, ci_ratio_sq_mads
from .simulation import SimulationPlan, run_coverage

__all__ = ["GroupedData", "parse_csv", "main", "build_parser", "dumps_json", "format_float"]

MEASURE_ALIASES = {"mad": "mad", "diff": "diff", "ratio-sq": "ratio_sq", "ratio_sq": "ratio_sq"}


@dataclass
class GroupedData:
    group_a: list
    group_b: list = None
    labels: tuple = ("a", "b")
    dropped: tuple = (0, 0)


def format_float(x):
    return format(x, ".17g")


def dumps_json(obj):
    """JSON with floats at 17 significant digits; NaN/inf become null."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps_json(v) for v in obj) + "]"
    if hasattr(obj, "item"):
        return dumps_json(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if hasattr(v, "item"):
        v = v.item()
    if isinstance(v, float):
        return format_float(v) if math.isfinite(v) else ""
    return str(v)


def dumps_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        header = list(rows[0])
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row.get(k)) for k in header])
    return buf.getvalue()


def _resolve_column(header, col):
    if col in header:
        return header.index(col)
    try:
        idx = int(col)
    except (TypeError, ValueError):
        raise SchemaError(f"column {col!r} not found; header is {header}") from None
    if not 0 <= idx < len(header):
        raise SchemaError(f"column index {idx} out of range for {len(header)} columns")
    return idx


def _to_float(token):
    token = token.strip()
    if not token:
        return None
    try:
        v = float(token)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def parse_csv(source, value_column, group_column=None, value_column2=None, first=None):
    """Read one or two groups of values from a CSV with a header row.

    Long format: ``value_column`` plus ``group_column`` with at most two
    labels; the groups are ordered by label unless ``first`` names the
    first one. Wide format: ``value_column`` and ``value_column2`` hold the
    two groups. Without either, all values form a single group.
    Blank or non-numeric cells are dropped and counted.
    """
    if isinstance(source, str):
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(source))
    if not rows:
        raise EmptyInput("CSV input is empty")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    vi = _resolve_column(header, value_column)

    def cell(row, i):
        return row[i] if i < len(row) else ""

    if group_column is not None:
        gi = _resolve_column(header, group_column)
        groups = {}
        dropped = {}
        for row in body:
            label = cell(row, gi).strip()
            groups.setdefault(label, [])
            dropped.setdefault(label, 0)
            v = _to_float(cell(row, vi))
            if v is None:
                dropped[label] += 1
            else:
                groups[label].append(v)
        labels = sorted(groups)
        if len(labels) > 2:
            raise TooManyGroups(f"expected at most 2 groups, found {len(labels)}: {labels}")
        if first is not None:
            if first not in labels:
                raise SchemaError(f"--first label {first!r} not among {labels}")
            labels.remove(first)
            labels.insert(0, first)
        if not any(groups[lab] for lab in labels):
            raise EmptyInput("no numeric values found")
        if len(labels) == 1:
            return GroupedData(groups[labels[0]], None, (labels[0], ""), (dropped[labels[0]], 0))
        a, b = labels
        return GroupedData(groups[a], groups[b], (a, b), (dropped[a], dropped[b]))

    cols = [vi] if value_column2 is None else [vi, _resolve_column(header, value_column2)]
    vals = [[] for _ in cols]
    dropped = [0 for _ in cols]
    for row in body:
        for j, ci in enumerate(cols):
            v = _to_float(cell(row, ci))
            if v is None:
                dropped[j] += 1
            else:
                vals[j].append(v)
    if not any(vals):
        raise EmptyInput("no numeric values found")
    if len(cols) == 1:
        return GroupedData(vals[0], None, (header[vi], ""), (dropped[0], 0))
    return GroupedData(vals[0], vals[1], (header[cols[0]], header[cols[1]]), tuple(dropped))


def _fit_details(est):
    fit = est.fit
    return {
        "mad": est.mad,
        "asv": est.asv,
        "n": est.n,
        "gld_lambda": list(fit.params.as_tuple()),
        "gld_objective": fit.objective,
        "gld_start": list(fit.start),
        "gld_iterations": fit.iterations,
    }


def cmd_ci(args):
    measure = MEASURE_ALIASES[args.measure]
    data = parse_csv(args.input if args.input != "-" else sys.stdin, args.value, args.group,
                     args.value2, args.first)
    a = clean_sample(data.group_a)
    if measure == "mad":
        if data.group_b is not None:
            raise InvalidInput("measure 'mad' takes a single group; drop --group/--value2")
        ci = ci_mad(a, args.level)
        n2 = None
    else:
        if data.group_b is None:
            raise InvalidInput(f"measure {args.measure!r} needs two groups")
        b = clean_sample(data.group_b)
        fn = ci_diff_mads if measure == "diff" else ci_ratio_sq_mads
        ci = fn(a, b, args.level)
        n2 = len(b)
    row = {
        "measure": measure,
        "estimate": ci.estimate,
        "lower": ci.lower,
        "upper": ci.upper,
        "level": ci.level,
        "n1": len(a),
        "n2": n2,
        "label1": data.labels[0],
        "label2": data.labels[1] or None,
        "dropped1": data.dropped[0],
        "dropped2": data.dropped[1],
    }
    if args.format == "json":
        row["method"] = {
            "asv": "GLD (FKML) quantile least squares",
            "samples": [_fit_details(e) for e in ci.details],
        }
    return [row]


def cmd_simulate(args):
    measure = MEASURE_ALIASES[args.measure]
    plan = SimulationPlan(
        dist1=parse_dist(args.dist1),
        n1=args.n1,
        measure=measure,
        dist2=parse_dist(args.dist2) if args.dist2 else None,
        n2=args.n2 if args.n2 is not None else (args.n1 if args.dist2 else None),
        trials=args.trials,
        level=args.level,
        seed=args.seed,
    )
    return [run_coverage(plan, workers=args.workers).as_row(plan)]


def cmd_pif(args):
    d1 = parse_dist(args.dist1)
    d2 = parse_dist(args.dist2) if args.dist2 else d1
    curve = pif_curve(d1, d2, MEASURE_ALIASES[args.measure], args.start, args.stop, args.step)
    return [{"x": float(x), "pif1": float(y)} for x, y in curve]


def cmd_truth(args):
    d1 = parse_dist(args.dist1)
    row = {"dist1": str(d1), "mad1": true_mad(d1)}
    if args.dist2:
        d2 = parse_dist(args.dist2)
        row.update(
            dist2=str(d2),
            mad2=true_mad(d2),
            ratio_sq=true_ratio_sq(d1, d2),
            diff=true_diff(d1, d2),
        )
    return [row]


def _add_shared(p, seed=True):
    p.add_argument("--level", type=float, default=0.95)
    if seed:
        p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--config", default=None, help="flat key = value file of flag defaults")


def build_parser():
    parser = argparse.ArgumentParser(prog="madci", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    measures = ("mad", "diff", "ratio-sq")

    p = sub.add_parser("ci", help="confidence interval from CSV data")
    p.add_argument("--input", required=True, help="CSV path, or - for stdin")
    p.add_argument("--value", required=True, help="value column (name or 0-based index)")
    p.add_argument("--group", default=None, help="group label column (long format)")
    p.add_argument("--value2", default=None, help="second value column (wide format)")
    p.add_argument("--first", default=None, help="label of the first (numerator) group")
    p.add_argument("--measure", choices=measures, default="mad")
    _add_shared(p)
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("simulate", help="Monte-Carlo coverage of an interval")
    p.add_argument("--dist1", required=True)
    p.add_argument("--dist2", default=None)
    p.add_argument("--measure", choices=measures, default="mad")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--workers", type=int, default=1)
    _add_shared(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("pif", help="tabulate the first partial influence function")
    p.add_argument("--dist1", required=True)
    p.add_argument("--dist2", default=None, help="defaults to --dist1")
    p.add_argument("--measure", choices=("diff", "ratio-sq"), default="ratio-sq")
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=10.0)
    p.add_argument("--step", type=float, default=0.01)
    _add_shared(p)
    p.set_defaults(func=cmd_pif)

    p = sub.add_parser("truth", help="population MADs, squared ratio and difference")
    p.add_argument("--dist1", required=True)
    p.add_argument("--dist2", default=None)
    _add_shared(p)
    p.set_defaults(func=cmd_truth)
    return parser


def read_config(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise SchemaError(f"{path}:{lineno}: expected key = value")
            out[key.strip().replace("_", "-")] = value.strip()
    return out


def _with_config(argv):
    """Splice ``--config`` entries in ahead of the explicit flags, so flags win."""
    if "--config" not in argv and not any(t.startswith("--config=") for t in argv):
        return argv
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    extra = []
    for key, value in read_config(known.config).items():
        extra += [f"--{key}", value]
    return argv[:1] + extra + argv[1:]


def _emit(rows, args):
    if args.format == "csv":
        text = dumps_csv(rows)
    else:
        text = dumps_json(rows if args.command == "pif" else rows[0]) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_with_config(argv))
        rows = args.func(args)
        _emit(rows, args)
    except MadciError as exc:
        sys.stderr.write(dumps_json({"error": exc.code, "message": str(exc)}) + "\n")
        return exc.exit_status
    except OSError as exc:
        sys.stderr.write(dumps_json({"error": "io_error", "message": str(exc)}) + "\n")
        return 13
    return 0


if __name__ == "__main__":
    sys.exit(main())
