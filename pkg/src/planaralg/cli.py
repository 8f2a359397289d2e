"""Command-line interface: ``planaralg <command> [options]``.

Exit status is 0 on success, 1 on a computation-domain error (including a
failed relation or self test) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys

from .algebra import AlgebraElement, check_relations, random_element
from .cells import bratteli, export_dot, label_text, path_counts
from .diagrams import enumerate_basis
from .tangles import ELEMENTARY_KINDS, PlanarTangle, elementary, evaluate, random_inputs
from .traces import DEFAULT_TOL, gram_matrix, markov_trace, positivity_scan, quantization_detect


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.8f}"


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _family(args) -> str:
    return args.family.upper()


def _point(args):
    """Evaluation point from --a/--b or --delta, or None."""
    if args.delta is not None:
        if args.a is not None or args.b is not None:
            raise UsageError("--delta cannot be combined with --a/--b")
        if not args.delta > 0:
            raise UsageError("--delta must be positive")
        r = math.sqrt(args.delta)
        return r, r
    if args.a is None and args.b is None:
        return None
    if args.a is None or args.b is None:
        raise UsageError("--a and --b must be given together")
    return args.a, args.b


def _need_n(args):
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    return args.n


# ---- commands ----------------------------------------------------------

def cmd_dim(args, out):
    out.write(f"{len(enumerate_basis(_family(args), _need_n(args)))}\n")


def cmd_basis(args, out):
    basis = enumerate_basis(_family(args), _need_n(args))
    if args.format == "text":
        for d in basis:
            out.write(" ".join(map(str, d.pairing)) + "\n")
    else:
        json.dump([d.to_json() for d in basis], out)
        out.write("\n")


def _elements(args, count):
    if args.inputs:
        if len(args.inputs) != count:
            raise UsageError(f"expected {count} element file(s), got {len(args.inputs)}")
        return [AlgebraElement.from_json(_load_json(p)) for p in args.inputs]
    rng = random.Random(args.seed)
    n = _need_n(args)
    return [random_element(_family(args), n, rng) for _ in range(count)]


def cmd_mul(args, out):
    x, y = _elements(args, 2)
    json.dump((x * y).to_json(), out)
    out.write("\n")


def cmd_relations(args, out):
    rep = check_relations(_need_n(args), _family(args))
    if args.format == "json":
        json.dump({"family": rep.family, "n": rep.n, "passed": rep.passed,
                   "checks": [{"relation": c.name, "passed": c.passed,
                               "witness": None if c.passed else c.witness.to_json()}
                              for c in rep.checks]}, out)
        out.write("\n")
    else:
        for line in rep.lines():
            out.write(line + "\n")
        out.write(f"{'all relations hold' if rep.passed else 'RELATION FAILURE'}"
                  f" ({rep.family} n={rep.n}, {len(rep.checks)} checks)\n")
    return 0 if rep.passed else 1


def cmd_trace(args, out):
    (x,) = _elements(args, 1)
    tr = markov_trace(x)
    point = _point(args)
    if args.format == "json":
        rec = {"element": x.to_json(), "trace": str(tr)}
        if point:
            rec["value"] = round(tr.evaluate(*point), 8)
        json.dump(rec, out)
        out.write("\n")
    else:
        out.write(str(tr) + "\n")
        if point:
            out.write(_fmt(tr.evaluate(*point)) + "\n")


def cmd_gram(args, out):
    g = gram_matrix(_need_n(args), _family(args))
    point = _point(args)
    if args.format == "csv":
        if point is None:
            raise UsageError("--format csv needs an evaluation point (--a/--b or --delta)")
        w = csv.writer(out, lineterminator="\n")
        for row in g.evaluate(*point):
            w.writerow([_fmt(v) for v in row])
    else:
        json.dump(g.to_text(), out)
        out.write("\n")


def cmd_scan(args, out):
    if not args.delta_values:
        raise UsageError("--delta needs at least one value")
    recs = positivity_scan(_need_n(args), args.delta_values, tol=args.tol)
    if args.format == "text":
        for r in recs:
            out.write(f"{_fmt(r.delta)} det={r.det:.8e} min_eig={_fmt(r.min_eig)} rank={r.rank}\n")
    else:
        json.dump([{"delta": round(r.delta, 8), "det": float(f"{r.det:.8e}"),
                    "min_eig": round(r.min_eig, 8), "rank": r.rank} for r in recs], out)
        out.write("\n")


def cmd_quantize(args, out):
    if args.grid is None:
        raise UsageError("--grid lo hi steps is required")
    lo, hi, steps = args.grid
    if steps != int(steps):
        raise UsageError("--grid steps must be an integer")
    if not 0 < lo < hi <= 2:
        raise UsageError("--grid needs 0 < lo < hi <= 2")
    roots = quantization_detect(_need_n(args), lo, hi, int(steps))
    if args.format == "json":
        json.dump([round(r, 8) for r in roots], out)
        out.write("\n")
    else:
        for r in roots:
            out.write(_fmt(r) + "\n")


def cmd_bratteli(args, out):
    levels = _need_n(args) + 1
    g = bratteli(levels, _family(args))
    path_counts(g)
    if args.format == "dot":
        out.write(export_dot(g))
    elif args.format == "json":
        json.dump(g.to_json(), out)
        out.write("\n")
    else:
        for k, verts in enumerate(g.levels):
            cells = ", ".join(f"{label_text(lab)}:{d}" for lab, d in verts.items())
            out.write(f"level {k}: {cells}\n")


def cmd_tangle_eval(args, out):
    if args.kind:
        if args.tangle:
            raise UsageError("give either a tangle file or --kind, not both")
        t = elementary(args.kind, _need_n(args))
    elif args.tangle:
        t = PlanarTangle.from_json(_load_json(args.tangle))
    else:
        raise UsageError("a tangle file or --kind is required")
    family = _family(args)
    if args.inputs:
        xs = [AlgebraElement.from_json(_load_json(p)) for p in args.inputs]
    else:
        xs = random_inputs(t, family, random.Random(args.seed))
    result = evaluate(t, xs, family)
    json.dump({"inputs": [x.to_json() for x in xs], "result": result.to_json()}, out)
    out.write("\n")


def cmd_selftest(args, out):
    from .selftest import run_all

    ok = run_all(lambda line: out.write(line + "\n"))
    return 0 if ok else 1


COMMANDS = {
    "dim": cmd_dim, "basis": cmd_basis, "mul": cmd_mul, "relations": cmd_relations,
    "trace": cmd_trace, "gram": cmd_gram, "scan": cmd_scan, "quantize": cmd_quantize,
    "bratteli": cmd_bratteli, "tangle-eval": cmd_tangle_eval, "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=str.lower, choices=["tl", "fc"], default="tl")
    common.add_argument("--n", type=int)
    common.add_argument("--a", type=float)
    common.add_argument("--b", type=float)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="planaralg", description="Exact TL / Fuss-Catalan planar algebra engine")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, formats, default, delta_many=False, inputs=False, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.add_argument("--format", choices=formats, default=default)
        if delta_many:
            sp.add_argument("--delta", dest="delta_values", type=float, nargs="+")
            sp.set_defaults(delta=None)
        else:
            sp.add_argument("--delta", type=float)
        if inputs:
            sp.add_argument("inputs", nargs="*", help="algebra element JSON files")
        return sp

    add("dim", ["text"], "text", help="dimension of the algebra at level n")
    add("basis", ["json", "text"], "json", help="list the basis diagrams")
    add("mul", ["json"], "json", inputs=True, help="multiply two elements (files or random)")
    add("relations", ["text", "json"], "text", help="check generator relations")
    add("trace", ["text", "json"], "text", inputs=True, help="Markov trace of an element")
    add("gram", ["json", "csv"], "json", help="Gram matrix of the trace form")
    add("scan", ["json", "text"], "json", delta_many=True, help="TL positivity scan over delta values")
    q = add("quantize", ["text", "json"], "text", help="locate singular delta values")
    q.add_argument("--grid", nargs=3, type=float, metavar=("LO", "HI", "STEPS"))
    add("bratteli", ["text", "json", "dot"], "text", help="Bratteli diagram of levels 0..n")
    te = add("tangle-eval", ["json"], "json", help="evaluate a planar tangle")
    te.add_argument("--tangle", help="tangle JSON file")
    te.add_argument("--kind", choices=ELEMENTARY_KINDS, help="use a standard tangle of arity n")
    te.add_argument("inputs", nargs="*", help="one element JSON file per hole")
    add("selftest", ["text"], "text", help="run the acceptance checks")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol <= 0:
        parser.print_usage(sys.stderr)
        sys.stderr.write("planaralg: error: --tol must be positive\n")
        return 2
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf) or 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"planaralg {args.command}: error: {exc}\n")
        return 2
    except (ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"planaralg {args.command}: {exc}\n")
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        stdout.write(buf.getvalue())
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
