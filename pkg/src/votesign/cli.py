"""Command-line interface: ``votesign <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 domain or computation error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .dist import ProbabilityVector
from .errors import DomainError
from .effects import iso_curve
from .intervals import METHODS
from .scenario_file import load_scenario_file
from .signtest import run_sign_test
from .simulation import DEFAULT_SEED, coverage_experiment, exact_coverage
from .table1 import full_table1
from .votes import (
    TABLE1_ALPHA,
    TABLE1_N,
    TABLE1_SCENARIOS,
    ScenarioSpec,
    h1_holds,
    pi_plus,
    rejection_probabilities,
    scenario_specs,
    scenario_to_probability_vector,
)

EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


@dataclass
class Output:
    columns: list[str]
    rows: list[dict]
    probability_columns: frozenset = frozenset()
    notes: list[str] = field(default_factory=list)
    vertical: bool = False


def format_probability(value: Optional[float]) -> str:
    """Four decimals, with values under 0.001 shown as ``<0.001``."""
    if value is None:
        return "-"
    if value < 0.001:
        return "<0.001"
    return f"{value:.4f}"


def _cell(value, is_prob: bool) -> str:
    if is_prob and isinstance(value, float):
        return format_probability(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value) or "-"
    return str(value)


def render_table(out: Output) -> str:
    cells = [[_cell(r.get(c), c in out.probability_columns) for c in out.columns] for r in out.rows]
    lines = []
    if out.vertical and len(cells) == 1:
        width = max(len(c) for c in out.columns)
        lines = [f"{c.ljust(width)}  {v}" for c, v in zip(out.columns, cells[0])]
    else:
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(out.columns)]
        lines.append("  ".join(c.rjust(w) for c, w in zip(out.columns, widths)))
        lines.append("  ".join("-" * w for w in widths))
        for row in cells:
            lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    for note in out.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _plain(value):
    if isinstance(value, tuple):
        return list(value)
    return value


def render_csv(out: Output) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(out.columns)
    for r in out.rows:
        row = []
        for c in out.columns:
            v = r.get(c)
            if v is None:
                row.append("")
            elif isinstance(v, float):
                row.append(repr(v))
            elif isinstance(v, (list, tuple)):
                row.append(";".join(str(x) for x in v))
            else:
                row.append(v)
        writer.writerow(row)
    return buf.getvalue()


def render_record(out: Output) -> str:
    return "".join(
        json.dumps({c: _plain(r.get(c)) for c in out.columns}) + "\n" for r in out.rows
    )


RENDERERS = {"table": render_table, "csv": render_csv, "record": render_record}


# -- argument helpers ---------------------------------------------------------

def _prob_list(text: str) -> list[float]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers")
    try:
        return [float(t) for t in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=sorted(RENDERERS), default="table")
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")


def _add_model_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model selection")
    g.add_argument("--scenario", type=int, choices=[s[0] for s in TABLE1_SCENARIOS],
                   help="a preset two-point scenario (all of its K values unless --k is given)")
    g.add_argument("--k", type=_nonneg_int, help="number of studies with a positive true effect")
    g.add_argument("--n", type=_positive_int, help="number of studies (default 12)")
    g.add_argument("--pi-s", type=float, help="sign probability of negative-effect studies")
    g.add_argument("--pi-l", type=float, help="sign probability of positive-effect studies")
    g.add_argument("--pi", type=_prob_list, help="explicit comma-separated sign probabilities")
    g.add_argument("--scenario-file", metavar="PATH", help="JSON scenario file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votesign",
        description="Sign test and Poisson-Binomial diagnostics for direction-of-effect vote counting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sign-test", help="exact sign test on summary counts")
    p.add_argument("--n", type=_positive_int, required=True, help="number of studies")
    p.add_argument("--x", type=_nonneg_int, required=True, help="studies with a positive effect")
    p.add_argument("--alpha", type=float, default=0.05,
                   help="significance level; split over both tails when two-sided (default 0.05)")
    p.add_argument("--sided", choices=["one", "two"], default="two")
    p.add_argument("--ties", type=_nonneg_int, default=0, help="zero effects, excluded from n")
    _add_output_args(p)

    p = sub.add_parser("power", help="exact rejection probabilities under Poisson-Binomial truth")
    _add_model_args(p)
    p.add_argument("--alpha", type=float, default=None,
                   help=f"one-sided level per rejection region (default {TABLE1_ALPHA})")
    _add_output_args(p)

    p = sub.add_parser("coverage", help="simulated and exact interval coverage")
    _add_model_args(p)
    p.add_argument("--target", type=float, help="proportion to cover when using --pi")
    p.add_argument("--method", choices=[*METHODS, "both"], default="both")
    p.add_argument("--level", type=float, default=None, help="confidence level (default 0.95)")
    p.add_argument("--reps", type=int, default=None, help="replications (default 10000)")
    p.add_argument("--seed", type=int, default=None, help=f"master seed (default {DEFAULT_SEED})")
    p.add_argument("--threads", type=_positive_int, default=1)
    _add_output_args(p)

    p = sub.add_parser("iso-curve", help="(N, delta) pairs giving a fixed sign probability")
    p.add_argument("--targets", type=_prob_list, help="comma-separated sign probabilities")
    p.add_argument("--scenario", type=int, choices=[s[0] for s in TABLE1_SCENARIOS],
                   help="use the scenario's pi_S and pi_L as targets")
    p.add_argument("--n-min", type=_positive_int, default=10)
    p.add_argument("--n-max", type=_positive_int, default=500)
    p.add_argument("--n-step", type=_positive_int, default=10)
    _add_output_args(p)

    p = sub.add_parser("reproduce-table1", help="the seven-row scenario table with coverage")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--threads", type=_positive_int, default=1)
    _add_output_args(p)
    return parser


# -- model resolution -----------------------------------------------------------

@dataclass
class Model:
    name: str
    pv: ProbabilityVector
    spec: Optional[ScenarioSpec] = None
    target: Optional[float] = None


def _models(args, file_cfg) -> list[Model]:
    sources = [args.scenario is not None, args.pi is not None, args.scenario_file is not None,
               args.pi_s is not None or args.pi_l is not None]
    if sum(sources) == 0:
        raise UsageError("choose a model: --scenario, --pi, --pi-s/--pi-l with --k, or --scenario-file")
    if sum(sources) > 1:
        raise UsageError("--scenario, --pi, --pi-s/--pi-l and --scenario-file are mutually exclusive")

    if args.scenario is not None:
        specs = scenario_specs(args.scenario, args.n or TABLE1_N)
        if args.k is not None:
            pi_s, pi_l = specs[0].pi_S, specs[0].pi_L
            specs = [ScenarioSpec(args.n or TABLE1_N, args.k, pi_s, pi_l)]
        return [Model(f"S{args.scenario}-K{s.K}", scenario_to_probability_vector(s), s) for s in specs]
    if args.pi_s is not None or args.pi_l is not None:
        if args.pi_s is None or args.pi_l is None or args.k is None:
            raise UsageError("--pi-s, --pi-l and --k must be given together")
        s = ScenarioSpec(args.n or TABLE1_N, args.k, args.pi_s, args.pi_l)
        return [Model(f"K{s.K}", scenario_to_probability_vector(s), s)]
    if args.pi is not None:
        return [Model("pi", ProbabilityVector(args.pi), None, getattr(args, "target", None))]
    models = [Model(name, scenario_to_probability_vector(s), s) for name, s in file_cfg.scenarios]
    models += [Model(v.name, v.pv, None, v.target) for v in file_cfg.vectors]
    return models


# -- commands ---------------------------------------------------------------------

def cmd_sign_test(args) -> Output:
    if args.ties > args.n - 1:
        raise UsageError(f"--ties {args.ties} leaves no studies out of --n {args.n}")
    if args.x > args.n - args.ties:
        raise UsageError(f"--x {args.x} exceeds the {args.n - args.ties} non-tied studies")
    if not (0.0 < args.alpha < 1.0):
        raise UsageError("--alpha must lie in (0, 1)")
    rep = run_sign_test(args.n, args.x, args.alpha, args.sided, ties=args.ties)
    rec = rep.as_record()
    notes = []
    if rep.ties_excluded:
        notes.append(f"{rep.ties_excluded} tied studies excluded; analysed n={rep.n}")
    if rep.degenerate:
        notes.append("test degenerate at this alpha: no attainable rejection region")
    return Output(
        list(rec), [rec],
        frozenset({"p_plus", "p_minus", "p_two_sided", "exact_size"}),
        notes, vertical=True,
    )


def cmd_power(args) -> Output:
    file_cfg = load_scenario_file(args.scenario_file) if args.scenario_file else None
    alpha = args.alpha
    if alpha is None:
        alpha = file_cfg.alpha if file_cfg and file_cfg.alpha is not None else TABLE1_ALPHA
    rows = []
    for m in _models(args, file_cfg):
        r = rejection_probabilities(m.pv, alpha)
        rows.append({
            "name": m.name,
            "n": m.pv.n,
            "K": m.spec.K if m.spec else None,
            "pi_plus": pi_plus(m.spec) if m.spec else None,
            "h1": h1_holds(m.pv),
            "alpha_one_sided": alpha,
            "c_minus": r.c_minus,
            "c_plus": r.c_plus,
            "pr_r_minus": r.pr_r_minus,
            "pr_r_plus": r.pr_r_plus,
        })
    cols = ["name", "n", "K", "pi_plus", "h1", "alpha_one_sided", "c_minus", "c_plus",
            "pr_r_minus", "pr_r_plus"]
    return Output(cols, rows, frozenset({"pr_r_minus", "pr_r_plus"}))


def cmd_coverage(args) -> Output:
    file_cfg = load_scenario_file(args.scenario_file) if args.scenario_file else None

    def pick(flag, key, default):
        if flag is not None:
            return flag
        if file_cfg is not None and getattr(file_cfg, key) is not None:
            return getattr(file_cfg, key)
        return default

    reps = pick(args.reps, "replications", 10_000)
    if reps < 1:
        raise UsageError(f"--reps must be at least 1, got {reps}")
    level = pick(args.level, "level", 0.95)
    seed = pick(args.seed, "seed", DEFAULT_SEED)
    methods = METHODS if args.method == "both" else (args.method,)
    rows = []
    for m in _models(args, file_cfg):
        if m.spec is None and m.target is None:
            raise UsageError(f"{m.name}: a target proportion is required (--target or 'target' in file)")
        model = m.spec if m.spec is not None else m.pv
        for method in methods:
            rep = coverage_experiment(model, method, level, reps, seed, target=m.target,
                                      workers=args.threads)
            rows.append({
                "name": m.name,
                "n": rep.n,
                "K": m.spec.K if m.spec else None,
                "target": rep.target,
                "method": method,
                "level": level,
                "replications": rep.replications,
                "seed": rep.seed,
                "coverage": rep.coverage,
                "mc_std_error": rep.mc_std_error,
                "exact_coverage": exact_coverage(m.pv, rep.target, method, level),
            })
    cols = ["name", "n", "K", "target", "method", "level", "replications", "seed",
            "coverage", "mc_std_error", "exact_coverage"]
    return Output(cols, rows, frozenset({"coverage", "exact_coverage"}))


def cmd_iso_curve(args) -> Output:
    if (args.targets is None) == (args.scenario is None):
        raise UsageError("give exactly one of --targets or --scenario")
    if args.n_min > args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    if args.targets is not None:
        targets = args.targets
    else:
        spec = scenario_specs(args.scenario)[0]
        targets = [spec.pi_S, spec.pi_L]
    sizes = range(args.n_min, args.n_max + 1, args.n_step)
    rows = [
        {"target": t, "N": n, "delta": d}
        for t in targets
        for n, d in iso_curve(t, sizes)
    ]
    return Output(["target", "N", "delta"], rows)


def cmd_reproduce_table1(args) -> Output:
    if args.reps < 1:
        raise UsageError(f"--reps must be at least 1, got {args.reps}")
    rows = []
    notes = []
    for fr in full_table1(args.reps, args.seed, args.level, workers=args.threads):
        row, cov = fr.row, fr.coverage
        flags = list(fr.rejection_flags)
        for method in ("jeffreys", "wilson"):
            flags += [f"{method}:{f}" for f in cov[method].flags]
        rows.append({
            "scenario": row.scenario,
            "pi_S": row.spec.pi_S,
            "pi_L": row.spec.pi_L,
            "K": row.spec.K,
            "pi_plus": row.pi_plus,
            "pr_r_minus": row.pr_r_minus,
            "pr_r_plus": row.pr_r_plus,
            "jeffreys_printed": cov["jeffreys"].printed,
            "jeffreys_exact": cov["jeffreys"].exact,
            "jeffreys_sim": cov["jeffreys"].simulated,
            "wilson_printed": cov["wilson"].printed,
            "wilson_exact": cov["wilson"].exact,
            "wilson_sim": cov["wilson"].simulated,
            "flags": flags,
        })
        if any(f.endswith("method_gap") for f in flags):
            notes.append(
                f"scenario {row.scenario} K={row.spec.K}: printed Jeffreys/Wilson gap "
                f"{cov['jeffreys'].printed - cov['wilson'].printed:.3f}, exact gap "
                f"{cov['jeffreys'].exact - cov['wilson'].exact:.3f}"
            )
    notes.append(f"coverage from {args.reps} replications, seed {args.seed}, level {args.level}")
    cols = list(rows[0])
    probs = frozenset(c for c in cols if c.startswith(("pr_", "jeffreys_", "wilson_")))
    return Output(cols, rows, probs, notes)


COMMANDS = {
    "sign-test": cmd_sign_test,
    "power": cmd_power,
    "coverage": cmd_coverage,
    "iso-curve": cmd_iso_curve,
    "reproduce-table1": cmd_reproduce_table1,
}


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".votesign-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = COMMANDS[args.command](args)
        text = RENDERERS[args.format](out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ArithmeticError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format != "table":
        for note in out.notes:
            print(f"note: {note}", file=sys.stderr)
    if args.out:
        try:
            _write_atomic(args.out, text)
        except OSError as exc:
            print(f"{parser.prog}: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_DOMAIN
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
