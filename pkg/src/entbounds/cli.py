"""
Command-line front end.

Subcommands ``lemmas``, ``example1``, ``random-audit`` and ``bounds-eval``.
Exit status is 0 when every check passes, 1 on a mathematical finding
(violation or failed precondition) and 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import fields
from pathlib import Path
from typing import Iterable, Sequence

from .audits import (
    FIG1_COLUMNS,
    FIG2_COLUMNS,
    AuditConfig,
    evaluate_bound,
    run_example1,
    run_lemma_audit,
    run_random_audit,
)
from .errors import DomainError, PreconditionError
from .relations import BoundParams

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input from the command line or a config file (exit 2)."""


# ---------------------------------------------------------------------------
# serialization


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float) or hasattr(x, "dtype"):
        return f"{float(x):.17g}"
    if isinstance(x, (list, tuple)):
        return ";".join(fmt(t) for t in x)
    return str(x)


def csv_text(rows: Sequence[dict], columns: Sequence[str] | None = None) -> str:
    if columns is None:
        columns = []
        for r in rows:
            columns += [c for c in r if c not in columns]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "dtype"):
        x = x.item()
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def json_text(command: str, cfg: dict, results, violations) -> str:
    doc = {"command": command, "config": cfg, "results": results, "violations": violations}
    return json.dumps(_jsonable(doc), indent=2, sort_keys=False) + "\n"


def _write(path: str | Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _report_violations(violations: list[dict]) -> None:
    for v in violations[:20]:
        print("VIOLATION " + " ".join(f"{k}={fmt(val)}" for k, val in v.items()), file=sys.stderr)
    if len(violations) > 20:
        print(f"... {len(violations) - 20} more violations", file=sys.stderr)


# ---------------------------------------------------------------------------
# configuration


def _coerce(name: str, raw: str, current):
    try:
        if isinstance(current, tuple):
            return tuple(float(t) for t in raw.replace(";", ",").split(",") if t.strip())
        if isinstance(current, bool):
            return raw.strip().lower() in ("1", "true", "yes")
        if isinstance(current, int) or name in ("samples",):
            return int(raw)
        if isinstance(current, float) or name in ("tolerance",):
            return float(raw)
        return raw.strip()
    except ValueError as exc:
        raise UsageError(f"bad value for {name}: {raw!r}") from exc


def read_config_file(path: str) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    defaults = AuditConfig()
    known = {f.name for f in fields(AuditConfig)}
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, raw = (t.strip() for t in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _coerce(key, raw, getattr(defaults, key))
    return out


def build_config(args: argparse.Namespace) -> AuditConfig:
    values = read_config_file(args.config) if args.config else {}
    for name in ("seed", "samples", "tolerance", "out", "format"):
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    if getattr(args, "k", None) is not None:
        values["audit_k"] = tuple(args.k)
    if getattr(args, "mu", None) is not None:
        values["audit_mu"] = tuple(args.mu)
    if getattr(args, "v", None) is not None:
        values["audit_v"] = tuple(args.v)
    values.setdefault("format", "csv")
    try:
        cfg = AuditConfig(**values)
    except (DomainError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if cfg.out is not None:
        # fail before a long sweep rather than after it
        target = Path(cfg.out)
        if args.command == "example1" and cfg.format == "csv":
            parent = target
            while not parent.exists() and parent != parent.parent:
                parent = parent.parent
        else:
            parent = target.parent
        if not parent.is_dir():
            raise UsageError(f"output location {cfg.out} is not writable")
    return cfg


# ---------------------------------------------------------------------------
# commands


def cmd_lemmas(cfg: AuditConfig) -> int:
    rep = run_lemma_audit(cfg)
    rows = rep["results"] + rep["exact_checks"]
    if cfg.format == "json":
        text = json_text("lemmas", cfg.to_dict(), rows, rep["violations"])
    else:
        text = csv_text(rows, ("check", "mode", "exponent_name", "min_slack", "max_abs_error", "tolerance",
                               "x", "k", "exponent", "points", "ok"))
    _write(cfg.out, text)
    _report_violations(rep["violations"])
    return EXIT_FINDING if rep["violations"] else EXIT_OK


def cmd_example1(cfg: AuditConfig) -> int:
    rep = run_example1(cfg)
    if cfg.format == "json":
        results = {"measures": rep["measures"], "fig1": rep["fig1"], "fig2": rep["fig2"]}
        _write(cfg.out, json_text("example1", cfg.to_dict(), results, rep["violations"]))
    else:
        measures = csv_text(rep["measures"], ("quantity", "computed", "closed_form", "abs_error"))
        sys.stdout.write(measures)
        if cfg.out is not None:
            out = Path(cfg.out)
            try:
                out.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise UsageError(f"cannot create {out}: {exc}") from exc
            _write(out / "measures.csv", measures)
            _write(out / "fig1.csv", csv_text(rep["fig1"], FIG1_COLUMNS))
            _write(out / "fig2.csv", csv_text(rep["fig2"], FIG2_COLUMNS))
    _report_violations(rep["violations"])
    return EXIT_FINDING if rep["violations"] else EXIT_OK


def cmd_random_audit(cfg: AuditConfig) -> int:
    rep = run_random_audit(cfg)
    if cfg.format == "json":
        text = json_text("random-audit", {**cfg.to_dict(), "rng": rep["rng"]}, rep["results"], rep["violations"])
    else:
        text = csv_text(rep["results"], ("theorem", "k", "exponent", "total", "applicable", "sound",
                                         "violations", "order_violations", "min_slack"))
    _write(cfg.out, text)
    _report_violations(rep["violations"])
    return EXIT_FINDING if rep["violations"] else EXIT_OK


def parse_values(text: str) -> tuple[float, ...]:
    parts = [t for t in text.replace(",", " ").split()]
    if not parts:
        raise UsageError("no measure values given")
    try:
        vals = tuple(float(t) for t in parts)
    except ValueError as exc:
        raise UsageError(f"malformed measure values: {text!r}") from exc
    if any(not math.isfinite(x) for x in vals):
        raise UsageError(f"measure values must be finite: {text!r}")
    return vals


def cmd_bounds_eval(args: argparse.Namespace) -> int:
    if args.values_file:
        try:
            raw = Path(args.values_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.values_file}: {exc}") from exc
    elif args.values:
        raw = " ".join(args.values)
    else:
        raise UsageError("give measure values or --values-file")
    values = parse_values(raw)
    single = lambda xs, default: default if xs is None else xs[0]  # noqa: E731
    try:
        params = BoundParams(
            mu=single(args.mu, 3.0), v=single(args.v, 1.0), k=single(args.k, 1.0),
            k_prime=args.kprime, m=args.m, n_parties=len(values) + 1,
        )
        report = evaluate_bound(args.theorem, values, params, enforce=not args.force)
    except PreconditionError as exc:
        print(f"precondition failed at index {exc.index}: {exc}", file=sys.stderr)
        if args.format == "json":
            viol = [{"check": "precondition", "index": exc.index, "message": str(exc)}]
            _write(args.out, json_text("bounds-eval", {"theorem": args.theorem, "values": values}, [], viol))
        return EXIT_FINDING
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    result = report.to_dict()
    violations = []
    if not report.precondition_ok:
        pre = [i for i, s in enumerate(report.precondition_detail, start=1) if s < -1e-12]
        violations.append({"check": "precondition", "index": pre[0] if pre else None})
    if args.format == "json":
        cfg = {"theorem": args.theorem, "values": values, **vars(params)}
        text = json_text("bounds-eval", cfg, [result], violations)
    else:
        rows = [{"field": "bound_value", "value": report.bound_value},
                {"field": "direction", "value": report.direction},
                {"field": "precondition_ok", "value": report.precondition_ok},
                {"field": "precondition_slacks", "value": list(report.precondition_detail)},
                {"field": "branch", "value": report.branch}]
        rows += [{"field": f"comparison_{name}", "value": val} for name, val in report.comparison_values.items()]
        rows.append({"field": "gap", "value": report.gap})
        text = csv_text(rows, ("field", "value"))
    _write(args.out, text)
    return EXIT_FINDING if violations else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, audit: bool = True) -> None:
    p.add_argument("--out", help="output file (or directory for example1 CSV surfaces); stdout if omitted")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    if audit:
        p.add_argument("--config", help="flat key=value file; flags override it")
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int, help="random sample count")
        p.add_argument("--tolerance", type=float, help="a check fails when its slack is below -tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entbounds", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lemmas", help="grid and random sweeps of the scalar inequalities")
    _common(p)

    p = sub.add_parser("example1", help="worked-example measures and bound surfaces")
    _common(p)

    p = sub.add_parser("random-audit", help="soundness of the three-party bounds on Haar states")
    _common(p)
    p.add_argument("--k", type=float, nargs="+", help="k values to audit")
    p.add_argument("--mu", type=float, nargs="+", help="monogamy exponents mu")
    p.add_argument("--v", type=float, nargs="+", help="polygamy exponents v")

    p = sub.add_parser("bounds-eval", help="evaluate one bound on given measure values")
    _common(p, audit=False)
    p.add_argument("values", nargs="*", help="base-power measure values, comma or space separated")
    p.add_argument("--values-file", help="file holding the measure values")
    p.add_argument("--theorem", type=int, choices=(1, 2, 3, 4, 5), required=True)
    p.add_argument("--k", type=float, nargs=1)
    p.add_argument("--kprime", type=float, default=1.0)
    p.add_argument("--mu", type=float, nargs=1)
    p.add_argument("--v", type=float, nargs=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--force", action="store_true", help="evaluate even if the ordering assumptions fail")
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "bounds-eval":
            args.format = args.format or "csv"
            return cmd_bounds_eval(args)
        cfg = build_config(args)
        return {"lemmas": cmd_lemmas, "example1": cmd_example1, "random-audit": cmd_random_audit}[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
