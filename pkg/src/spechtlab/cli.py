"""Command line entry point: ``spechtlab <command> [flags]``.

Output is one JSON object per line (``--format tsv`` gives a table).  Exit
status is 0 when the command computed or passed, 1 when a check failed and 2
on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import experiments as ex
from .permgrp import ALT, SYM, EnumerationCapExceeded, ReducedToSymmetric


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("SPECHTLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"SPECHTLAB_THREADS must be an integer, got {env!r}") from None
    return 1


class UsageError(Exception):
    pass


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            _flatten(f"{prefix}.{i}", x, out)
    else:
        out.append((prefix, obj))


def _cell(v):
    if isinstance(v, list):
        return ",".join(map(str, v))
    if v is None:
        return ""
    return str(v)


def render(result: ex.ExperimentResult, fmt: str) -> str:
    data = result.to_json()
    if fmt == "json":
        return json.dumps(data, sort_keys=True, separators=(",", ":"))
    lines = []
    if result.rows:
        flat_rows = []
        for row in result.rows:
            cells = []
            _flatten("", row, cells)
            flat_rows.append(dict(cells))
        header = sorted({k for r in flat_rows for k in r})
        lines.append("\t".join(header))
        lines += ["\t".join(_cell(r.get(h)) for h in header) for r in flat_rows]
        lines.append("")
    cells = []
    _flatten("", {k: v for k, v in data.items() if k != "rows"}, cells)
    lines += [f"{k}\t{_cell(v)}" for k, v in cells]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None,
                        help="worker cap (default: $SPECHTLAB_THREADS or 1)")

    ap = argparse.ArgumentParser(prog="spechtlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("elem-abelian", parents=[common],
                       help="classes of maximal elementary abelian p-subgroups")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--group", choices=(SYM, ALT), default=SYM)
    s.add_argument("--brute-force", action="store_true", help="cross-check by subgroup search")

    s = sub.add_parser("sylow-verify", parents=[common],
                       help="check the Sylow characterization by elementary abelian classes")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--group", choices=(SYM, ALT), default=SYM)

    s = sub.add_parser("brauer", parents=[common], help="Brauer quotient of a hook Specht module")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True, help="degree n = k*p")
    s.add_argument("--subgroup", required=True, help="E(..), F(..), Sylow, Q or gens:(..);(..)")
    s.add_argument("--module", default=None, help="hook:r (default r = p)")

    s = sub.add_parser("jordan", parents=[common], help="generic Jordan type of a restriction")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--subgroup", required=True)
    s.add_argument("--module", choices=("hook", "wedge"), default="hook")

    s = sub.add_parser("decompose", parents=[common], help="search for a splitting of a restriction")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--subgroup", required=True)
    s.add_argument("--trials", type=int, default=200)

    s = sub.add_parser("vertex-evidence", parents=[common],
                       help="per-class evidence that the vertex of S^(kp-p,1^p) is Sylow")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("trace-audit", parents=[common],
                       help="trace-vanishing checks on the p x p grid group")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    return ap


def _module_r(text):
    if text is None:
        return None
    kind, _, r = text.partition(":")
    if kind != "hook" or not r.isdigit():
        raise UsageError(f"--module must look like hook:r, got {text!r}")
    return int(r)


def dispatch(args) -> ex.ExperimentResult:
    w = _threads(args)
    c = args.command
    if c == "elem-abelian":
        return ex.run_elem_abelian(args.p, args.n, args.group, args.brute_force)
    if c == "sylow-verify":
        return ex.run_sylow_verify(args.p, args.n, args.group, workers=w)
    if c == "brauer":
        return ex.run_brauer(args.p, args.k, args.subgroup, _module_r(args.module), workers=w)
    if c == "jordan":
        return ex.run_jordan(args.p, args.n, args.r, args.subgroup, args.module, seed=args.seed, workers=w)
    if c == "decompose":
        return ex.run_decompose(args.p, args.n, args.r, args.subgroup, args.trials, seed=args.seed, workers=w)
    if c == "vertex-evidence":
        return ex.run_vertex_evidence(args.p, args.k, seed=args.seed, workers=w)
    if c == "trace-audit":
        return ex.run_trace_audit(args.p, args.k, workers=w)
    raise UsageError(f"unknown command {c}")  # pragma: no cover - argparse rejects it


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = dispatch(args)
    except (UsageError, ex.SubgroupSyntaxError, ReducedToSymmetric) as exc:
        print(f"spechtlab: error: {exc}", file=sys.stderr)
        return 2
    except EnumerationCapExceeded as exc:
        print(json.dumps({"schema": ex.SCHEMA, "experiment": args.command, "error": str(exc)}))
        return 1
    except ValueError as exc:
        print(f"spechtlab: error: {exc}", file=sys.stderr)
        return 2
    print(render(result, args.format))
    return 1 if result.outcome == ex.FAIL else 0


if __name__ == "__main__":
    sys.exit(main())
