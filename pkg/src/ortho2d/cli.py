"""Command line interface.

Subcommands:

* ``tables``  -- closed-form matrix coefficient tables of both vector
  three-term relations, as JSON or CSV.
* ``verify``  -- run the verification suite for one family (JSON report).
* ``moments`` -- moments of the bivariate functional, as JSON or CSV.
* ``eval``    -- evaluate one basis polynomial at a point (JSON).

Family parameters are given as exact rational strings (``--mu 1/2``,
``--alpha -1/2``, ``--g 5``); decimal literals like ``0.25`` are read
exactly.  JSON output is canonical: keys sorted, two-space indent, so a
parse/re-serialize round trip is byte-identical.

Exit codes: 0 success; 1 verification failed; 2 usage or parameter
error; 3 the functional is not quasi-definite at these parameters
(a required denominator or norm vanished).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .catalog import FAMILY_PARAMS, catalog_id, closed_form_ttr, make_system
from .numerics import ModeError, Scalar
from .univariate import QuasiDefinitenessError
from .verify import run_suite

SCHEMA = "ortho2d/1"

_PARAM_FLAGS = ("mu", "alpha", "beta", "gamma", "delta", "g")

# (json key, which matrix, diagonal offset) for the per-degree tables.
_FIRST_KEYS = (("a", 0), ("b", 1), ("c", 2))
_SECOND_KEYS = (("a1", 0, -1), ("a2", 0, 0), ("a3", 0, 1),
                ("b1", 1, -1), ("b2", 1, 0), ("b3", 1, 1),
                ("c1", 2, -1), ("c2", 2, 0), ("c3", 2, 1))
_TABLE_KEY_ORDER = ("a", "b", "c",
                    "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3")


def canonical_json(obj):
    """Deterministic JSON text: sorted keys, two-space indent, trailing
    newline.  Parsing and re-serializing the output is byte-identical."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _family_id(args):
    values = {}
    for key in _PARAM_FLAGS:
        v = getattr(args, key)
        if v is not None:
            values[key] = Scalar.exact(v)
    return catalog_id(args.family, **values)


def _params_obj(cid):
    return {key: str(value) for key, value in cid.params}


def _write_output(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _check_max(value, name):
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")
    return value


# -- tables -------------------------------------------------------------


def _degree_tables(cid, n):
    """Per-degree coefficient table: one array per named diagonal,
    indexed by the row m; null marks positions outside the matrix."""
    ts = closed_form_ttr(cid, n)
    first = (ts.a_x, ts.b_x, ts.c_x)
    second = (ts.a_y, ts.b_y, ts.c_y)
    entry = {"n": n}
    for key, which in _FIRST_KEYS:
        mat = first[which]
        entry[key] = [
            str(mat.get(m, m)) if m < mat.cols else None
            for m in range(n + 1)
        ]
    for key, which, off in _SECOND_KEYS:
        mat = second[which]
        entry[key] = [
            str(mat.get(m, m + off)) if 0 <= m + off < mat.cols else None
            for m in range(n + 1)
        ]
    return entry


def _cmd_tables(args):
    cid = _family_id(args)
    max_n = _check_max(args.max_n, "--max-n")
    tables = [_degree_tables(cid, n) for n in range(max_n + 1)]
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "tables",
            "family": cid.name,
            "parameters": _params_obj(cid),
            "max_degree": max_n,
            "tables": tables,
        }
        _write_output(args, canonical_json(payload))
    else:
        rows = []
        for entry in tables:
            n = entry["n"]
            for m in range(n + 1):
                for key in _TABLE_KEY_ORDER:
                    value = entry[key][m]
                    if value is not None:
                        rows.append([n, m, key, value])
        _write_output(args, _csv_text(["n", "m", "key", "value"], rows))
    return 0


# -- verify -------------------------------------------------------------


def _cmd_verify(args):
    cid = _family_id(args)
    max_n = _check_max(args.max_n, "--max-n")
    if args.points < 0:
        raise ValueError(f"--points must be nonnegative, got {args.points}")
    report = run_suite(cid, max_n, mode=args.mode, points=args.points,
                       seed=args.seed, corrupt=args.corrupt)
    obj = report.to_obj()
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "family": cid.name,
        "parameters": _params_obj(cid),
        "max_degree": obj["max_degree"],
        "mode": obj["mode"],
        "passed": obj["passed"],
        "checks": obj["checks"],
    }
    _write_output(args, canonical_json(payload))
    return 0 if report.ok else 1


# -- moments ------------------------------------------------------------


def _cmd_moments(args):
    cid = _family_id(args)
    max_h = _check_max(args.max_h, "--max-h")
    max_k = _check_max(args.max_k, "--max-k")
    system = make_system(cid)
    moments = [
        {"h": h, "k": k, "value": str(system.w_moment(h, k))}
        for h in range(max_h + 1)
        for k in range(max_k + 1)
    ]
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "moments",
            "family": cid.name,
            "parameters": _params_obj(cid),
            "max_h": max_h,
            "max_k": max_k,
            "moments": moments,
        }
        _write_output(args, canonical_json(payload))
    else:
        rows = [[mm["h"], mm["k"], mm["value"]] for mm in moments]
        _write_output(args, _csv_text(["h", "k", "value"], rows))
    return 0


# -- eval ---------------------------------------------------------------


def _cmd_eval(args):
    cid = _family_id(args)
    if args.m < 0 or args.m > args.n:
        raise ValueError(f"need 0 <= m <= n, got (n, m) = ({args.n}, {args.m})")
    x = Scalar.exact(args.x)
    y = Scalar.exact(args.y)
    system = make_system(cid)
    poly = system.expand_P(args.n, args.m)
    if args.mode == "exact":
        value = str(poly.eval(x, y))
        px, py = str(x), str(y)
    else:
        value = float(poly.to_float().eval(x.to_float(), y.to_float()))
        px, py = float(x), float(y)
    payload = {
        "schema": SCHEMA,
        "command": "eval",
        "family": cid.name,
        "parameters": _params_obj(cid),
        "n": args.n,
        "m": args.m,
        "mode": args.mode,
        "x": px,
        "y": py,
        "value": value,
    }
    _write_output(args, canonical_json(payload))
    return 0


# -- parser -------------------------------------------------------------


def _add_family_arguments(parser):
    parser.add_argument("family", choices=sorted(FAMILY_PARAMS),
                        help="catalog family")
    for flag in _PARAM_FLAGS:
        parser.add_argument(f"--{flag}", metavar="Q",
                            help=f"family parameter {flag} "
                                 f"(exact rational, e.g. 1/2 or -0.25)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ortho2d",
        description="Exact bivariate orthogonal polynomial systems and "
                    "their vector three-term relation matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables",
                       help="matrix coefficient tables from closed forms")
    _add_family_arguments(p)
    p.add_argument("--max-n", type=int, default=3,
                   help="largest total degree (default 3)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", metavar="PATH", help="write here, not stdout")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("verify", help="run the verification suite")
    _add_family_arguments(p)
    p.add_argument("--max-n", type=int, default=8,
                   help="largest total degree (default 8)")
    p.add_argument("--mode", choices=("exact", "float"), default="exact",
                   help="relation residual arithmetic (default exact)")
    p.add_argument("--points", type=int, default=20,
                   help="random evaluation points per degree in float mode")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the evaluation points")
    p.add_argument("--corrupt", action="store_true",
                   help="deliberately perturb one closed-form entry to "
                        "demonstrate that the cross-check catches it")
    p.add_argument("--output", metavar="PATH", help="write here, not stdout")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("moments",
                       help="moments of the bivariate functional")
    _add_family_arguments(p)
    p.add_argument("--max-h", type=int, default=6,
                   help="largest first-variable exponent (default 6)")
    p.add_argument("--max-k", type=int, default=6,
                   help="largest second-variable exponent (default 6)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", metavar="PATH", help="write here, not stdout")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("eval", help="evaluate one basis polynomial")
    _add_family_arguments(p)
    p.add_argument("--n", type=int, required=True, help="total degree")
    p.add_argument("--m", type=int, required=True,
                   help="second-variable degree")
    p.add_argument("--x", required=True, metavar="Q",
                   help="first coordinate (exact rational)")
    p.add_argument("--y", required=True, metavar="Q",
                   help="second coordinate (exact rational)")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--output", metavar="PATH", help="write here, not stdout")
    p.set_defaults(func=_cmd_eval)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    except QuasiDefinitenessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ZeroDivisionError as exc:
        print(f"error: a closed-form denominator vanished at these "
              f"parameters ({exc}); the functional is not quasi-definite",
              file=sys.stderr)
        return 3
    except (ValueError, ModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
