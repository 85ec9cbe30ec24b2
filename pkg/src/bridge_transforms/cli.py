"""Command-line front end.

Subcommands: ``verify``, ``sample``, ``transform``, ``calibrate-localtime``,
``ecdf`` and ``list-identities``.  Exit codes: 0 success, 1 a verification
failed (its report is still written), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import operator
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import path_core as pc
from . import samplers as smp
from .identities import CATALOG, IDENTITY_IDS, VARIANTS, IdentityCase, localtime_calibration, verify
from .samplers import RejectionExhausted, RunParams
from .stats import VerificationReport, ecdf

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

PROCESSES = ("bm", "bridge", "bm3", "bessel3", "meander")
OPS = ("pitman", "l", "abs", "prefix-max", "suffix-min", "band-localtime")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    subcommand: str
    params: RunParams = field(default_factory=RunParams)
    identities: tuple[str, ...] = ()
    alpha: float = 0.01
    out: Optional[str] = None
    fmt: str = "json"
    functionals: Optional[tuple[str, ...]] = None
    variant: str = "none"
    threads: Optional[int] = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        unknown = [i for i in self.identities if i not in CATALOG]
        if unknown:
            raise ValueError(f"unknown identities: {', '.join(unknown)}")
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be positive")


# ------------------------------------------------------------- parsing


def _add_run_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=2048)
    p.add_argument("--seed", type=int, default=42)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bridge-transforms", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)

    v = sub.add_parser("verify", help="run Monte Carlo verification of identities")
    v.add_argument("--identity", action="append", default=None,
                   help="identity id, comma list or 'all'; repeatable")
    _add_run_params(v)
    v.add_argument("--replicates", type=int, default=20000)
    v.add_argument("--alpha", type=float, default=0.01)
    v.add_argument("--band-eps", type=float, default=None)
    v.add_argument("--trunc-factor", type=int, default=256)
    v.add_argument("--max-tries", type=int, default=10000)
    v.add_argument("--functionals", default=None, help="comma list of columns to test")
    v.add_argument("--control", choices=sorted(VARIANTS), default="none",
                   help="negative-control perturbation")
    v.add_argument("--threads", type=int, default=None)
    v.add_argument("--out", default=None)
    v.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")

    s = sub.add_parser("sample", help="write one sampled path as CSV")
    s.add_argument("--process", choices=PROCESSES, required=True)
    _add_run_params(s)
    s.add_argument("--out", default=None)

    tr = sub.add_parser("transform", help="apply a path operation to a stored path")
    tr.add_argument("--op", choices=OPS, required=True)
    tr.add_argument("--y", type=float, default=None)
    tr.add_argument("--eps", type=float, default=None)
    tr.add_argument("--in", dest="src", required=True)
    tr.add_argument("--out", default=None)

    c = sub.add_parser("calibrate-localtime", help="band local time vs meander endpoint")
    c.add_argument("--t", type=float, default=1.0)
    c.add_argument("--steps-list", default="2048")
    c.add_argument("--eps-rule", default="sqrt",
                   help="'sqrt', 'fixed:<v>' or an expression in t and steps")
    c.add_argument("--replicates", type=int, default=20000)
    c.add_argument("--seed", type=int, default=42)
    c.add_argument("--threads", type=int, default=None)
    c.add_argument("--out", default=None)

    e = sub.add_parser("ecdf", help="sorted (value, ecdf) pairs of a CSV column")
    e.add_argument("--in", dest="src", required=True, help="file.csv:column (name or index)")
    e.add_argument("--out", default=None)

    sub.add_parser("list-identities", help="print the identity catalogue")
    return ap


def _identity_list(raw: Optional[list[str]]) -> tuple[str, ...]:
    if not raw:
        raise UsageError("verify needs --identity")
    ids: list[str] = []
    for chunk in raw:
        for item in chunk.split(","):
            item = item.strip()
            if not item:
                continue
            if item == "all":
                ids.extend(IDENTITY_IDS)
            else:
                ids.append(item)
    seen = dict.fromkeys(ids)
    return tuple(seen)


# --------------------------------------------------------------- output


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)


REPORT_CSV_FIELDS = (
    "identity", "name", "kind", "statistic", "p_value", "n_left", "n_right", "pass", "note",
    "overall_pass", "alpha", "threshold",
    "t", "x", "n_steps", "replicates", "seed", "band_eps", "trunc_factor",
)


def reports_to_csv(reports: Sequence[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for rep in reports:
        d = rep.to_dict()
        for test in d["tests"]:
            row = {k: test[k] for k in ("name", "kind", "statistic", "p_value", "n_left", "n_right", "pass", "note")}
            row.update(identity=d["identity"], overall_pass=d["overall_pass"],
                       alpha=d["alpha"], threshold=d["threshold"])
            row.update({k: d["params"][k] for k in REPORT_CSV_FIELDS[12:]})
            w.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


def reports_to_json(reports: Sequence[VerificationReport]) -> str:
    if len(reports) == 1:
        body = reports[0].to_dict()
    else:
        body = [r.to_dict() for r in reports]
    return json.dumps(body, indent=2, allow_nan=False) + "\n"


# ------------------------------------------------------------ commands


def _cmd_verify(a) -> int:
    params = RunParams(
        t=a.t, x=a.x, n_steps=a.steps, base_seed=a.seed, replicates=a.replicates,
        band_eps=a.band_eps, trunc_factor=a.trunc_factor, max_tries=a.max_tries,
    )
    funcs = tuple(f.strip() for f in a.functionals.split(",")) if a.functionals else None
    cfg = CliConfig("verify", params, _identity_list(a.identity), a.alpha, a.out, a.fmt,
                    funcs, a.control, a.threads)
    cases = [IdentityCase(i, cfg.params, cfg.variant, cfg.functionals) for i in cfg.identities]
    reports = []
    for case in cases:
        rep = verify(case, alpha=cfg.alpha, threads=cfg.threads)
        reports.append(rep)
        status = "PASS" if rep.overall_pass else "FAIL"
        print(f"{status} {rep.identity} ({rep.elapsed_seconds:.1f}s)", file=sys.stderr)
    text = reports_to_csv(reports) if cfg.fmt == "csv" else reports_to_json(reports)
    _emit(text, cfg.out)
    return EXIT_OK if all(r.overall_pass for r in reports) else EXIT_FAIL


def _cmd_sample(a) -> int:
    if a.steps < 1 or not a.t > 0:
        raise ValueError("need t > 0 and steps >= 1")
    if not 0 <= a.seed <= smp.MASK64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    buf = io.StringIO()
    if a.process == "bm3":
        pc.write_path3_csv(smp.sample_bm3(a.t, a.steps, a.seed), buf)
    else:
        fn = {
            "bm": lambda: smp.sample_bm(a.t, a.steps, a.seed),
            "bridge": lambda: smp.sample_bridge(a.x, a.t, a.steps, a.seed),
            "bessel3": lambda: smp.sample_bessel3(a.t, a.steps, a.seed),
            "meander": lambda: smp.sample_meander(a.x, a.t, a.steps, a.seed),
        }[a.process]
        pc.write_path_csv(fn(), buf)
    _emit(buf.getvalue(), a.out)
    return EXIT_OK


def _cmd_transform(a) -> int:
    p = pc.read_path_csv(a.src)
    if a.op == "l":
        if a.y is None:
            raise UsageError("--op l requires --y")
        q = pc.l_transform(p, a.y)
    elif a.op == "band-localtime":
        eps = a.eps if a.eps is not None else math.sqrt(p.horizon / (len(p) - 1))
        q = pc.occupation_band(p, eps)
    else:
        q = {
            "pitman": pc.pitman,
            "abs": pc.abs_path,
            "prefix-max": pc.prefix_max,
            "suffix-min": pc.suffix_min,
        }[a.op](p)
    buf = io.StringIO()
    pc.write_path_csv(q, buf)
    _emit(buf.getvalue(), a.out)
    return EXIT_OK


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = {"sqrt": math.sqrt, "log": math.log, "exp": math.exp, "log2": math.log2}


def eval_eps_rule(rule: str, t: float, steps: int) -> float:
    """Band half-width from ``sqrt``, ``fixed:<v>`` or an arithmetic expression.

    Expressions may use ``t``, ``steps`` (alias ``n``), numbers, ``+ - * / **``
    and ``sqrt``, ``log``, ``log2``, ``exp``.
    """
    rule = rule.strip()
    if rule == "sqrt":
        val = math.sqrt(t / steps)
    elif rule.startswith("fixed:"):
        val = float(rule[6:])
    else:
        names = {"t": float(t), "steps": float(steps), "n": float(steps)}

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
                return float(node.value)
            if isinstance(node, ast.Name) and node.id in names:
                return names[node.id]
            if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
                return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
                v = ev(node.operand)
                return -v if isinstance(node.op, ast.USub) else v
            if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                    and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
                return _FUNCS[node.func.id](ev(node.args[0]))
            raise ValueError(f"unsupported element in eps rule: {ast.dump(node)}")

        try:
            tree = ast.parse(rule, mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse eps rule {rule!r}") from exc
        val = ev(tree)
    if not (math.isfinite(val) and val > 0):
        raise ValueError(f"eps rule {rule!r} gives non-positive width {val}")
    return val


def _cmd_calibrate(a) -> int:
    steps = [int(s) for s in a.steps_list.split(",") if s.strip()]
    if not steps:
        raise ValueError("empty --steps-list")
    rows = []
    for n in steps:
        eps = eval_eps_rule(a.eps_rule, a.t, n)
        cal = localtime_calibration(a.t, n, eps, a.replicates, a.seed, a.threads)
        rows.append({
            "t": a.t,
            "n_steps": n,
            "band_eps": eps,
            "replicates": a.replicates,
            "seed": a.seed,
            "ks_distance": cal.ks_distance,
            "p_value": cal.p_value,
            "band_mean": float(cal.band.mean()),
            "meander_mean": float(cal.meander.mean()),
        })
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    _emit(buf.getvalue(), a.out)
    return EXIT_OK


def _read_column(spec: str) -> np.ndarray:
    path, sep, col = spec.rpartition(":")
    if not sep or not path:
        raise ValueError("--in must look like file.csv:column")
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise ValueError(f"{path} is empty")
    header = [h.strip() for h in rows[0]]
    if col in header:
        j = header.index(col)
    elif col.isdigit() and int(col) < len(header):
        j = int(col)
    else:
        raise ValueError(f"no column {col!r} in {path}")
    return np.array([float(r[j]) for r in rows[1:]])


def _cmd_ecdf(a) -> int:
    xs, fs = ecdf(_read_column(a.src)).points()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["value", "ecdf"])
    for x, f in zip(xs, fs):
        w.writerow([repr(float(x)), repr(float(f))])
    _emit(buf.getvalue(), a.out)
    return EXIT_OK


def _cmd_list(a) -> int:
    width = max(len(i) for i in IDENTITY_IDS)
    for i in IDENTITY_IDS:
        spec = CATALOG[i]
        xs = "x" if spec.uses_x else "-"
        print(f"{i:<{width}}  {spec.kind:<17}  {xs}  {spec.anchor}")
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "sample": _cmd_sample,
    "transform": _cmd_transform,
    "calibrate-localtime": _cmd_calibrate,
    "ecdf": _cmd_ecdf,
    "list-identities": _cmd_list,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
        if a.cmd is None:
            raise UsageError("missing subcommand")
        return _COMMANDS[a.cmd](a)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RejectionExhausted, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
