"""deltasubh-lab: scenario ingestion, corpus execution, report emission.

Subcommands:
    characteristic  print characteristic records over a radius grid as CSV
    modulus         print a modulus-of-continuity profile as CSV
    verify          evaluate the enabled inequality checks on one scenario
    corpus          run a seeded deterministic scenario batch
    report          merge report CSV files and print verdict counts

Exit codes: 0 = no fail verdict and inconclusive within threshold;
1 = a fail verdict (or too many inconclusive); 2 = I/O or parse errors.

Report CSV columns (frozen order):
    scenario_id,inequality_tag,lhs,rhs,slack,error_budget,verdict,wall_time_ms

Floats are rendered with %.17g (round-trip safe and platform stable);
identical inputs and seed give byte-identical output.  wall_time_ms is 0
unless --timing is passed, so default output is deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Optional, Sequence

from .characteristics import (
    difference_characteristic,
    difference_characteristic_canonical,
    nevanlinna_N,
    nevanlinna_T,
    nevanlinna_m,
    spherical_mean,
    sup_on_sphere,
)
from .lab import (
    ALL_CHECKS,
    CorpusConfig,
    Scenario,
    Tolerances,
    run_checks,
    run_corpus,
)
from .measures import modulus_profile
from .quadrature import QuadratureBudgetError
from .scenario_io import ScenarioError, parse_scenario

CSV_COLUMNS = ("scenario_id", "inequality_tag", "lhs", "rhs", "slack",
               "error_budget", "verdict", "wall_time_ms")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_IO = 2


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.17g}"


def _parse_grid(spec: str) -> list:
    """start:stop:step with inclusive stop when reachable within 1e-12."""
    try:
        start_s, stop_s, step_s = spec.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError as exc:
        raise ValueError(f"bad grid {spec!r}; expected start:stop:step") from exc
    if step <= 0:
        raise ValueError("grid step must be > 0")
    out = []
    k = 0
    while True:
        val = start + k * step
        if val > stop + 1e-12:
            break
        out.append(min(val, stop))
        k += 1
    return out


def _load_scenario(path: str) -> Scenario:
    with open(path, "rb") as fh:
        return parse_scenario(fh.read())


def _apply_tol_overrides(s: Scenario, args) -> Scenario:
    from dataclasses import replace
    tols = s.tolerances
    if getattr(args, "tol_mean", None) is not None:
        tols = replace(tols, mean=args.tol_mean)
    if getattr(args, "tol_dini", None) is not None:
        tols = replace(tols, dini=args.tol_dini)
    return replace(s, tolerances=tols)


def _write_rows(rows, out_path: Optional[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in rows:
        writer.writerow([
            rep.scenario_id, rep.inequality, _fmt(rep.lhs), _fmt(rep.rhs),
            _fmt(rep.slack), _fmt(rep.error_budget), rep.verdict,
            rep.wall_time_ms,
        ])
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def _summarize(rows) -> dict:
    counts = {"pass": 0, "fail": 0, "inconclusive": 0, "vacuous": 0,
              "precondition-failed": 0}
    for rep in rows:
        verdict = rep.verdict if not isinstance(rep, dict) else rep["verdict"]
        counts[verdict] = counts.get(verdict, 0) + 1
    return counts


def _exit_code(counts: dict, max_inconclusive: float) -> int:
    if counts.get("fail", 0) > 0:
        return EXIT_FAIL
    judged = sum(counts.values())
    if judged and counts.get("inconclusive", 0) > max_inconclusive * judged:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_characteristic(args) -> int:
    s = _apply_tol_overrides(_load_scenario(args.scenario), args)
    radii = _parse_grid(args.r_grid)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["kind", "r", "R", "value", "error_estimate"])
    for r in radii:
        if args.kind == "m":
            rec = nevanlinna_m(_scenario_f(s), r, s.tolerances.mean)
        elif args.kind == "N":
            rec = nevanlinna_N(_scenario_f(s), r)
        elif args.kind == "T":
            rec = nevanlinna_T(_scenario_f(s), r, s.tolerances.mean)
        elif args.kind == "C":
            rec = spherical_mean(s.U, r, "identity", s.tolerances.mean)
        elif args.kind == "C+":
            rec = spherical_mean(s.U, r, "positive", s.tolerances.mean)
        elif args.kind == "M":
            rec = sup_on_sphere(s.U, r, "identity", s.tolerances.sup)
        elif args.kind == "Tdiff":
            rec = difference_characteristic(s.U, r, args.R or s.R, s.tolerances.mean)
        elif args.kind == "TdiffC":
            rec = difference_characteristic_canonical(s.U, r, args.R or s.R,
                                                      s.tolerances.mean)
        else:
            raise ValueError(f"unknown kind {args.kind!r}")
        writer.writerow([rec.kind, _fmt(rec.r), _fmt(rec.R) if rec.R else "",
                         _fmt(rec.value), _fmt(rec.error_estimate)])
    return EXIT_OK


def _scenario_f(s: Scenario):
    if s.f is None:
        raise ScenarioError("FUNCTION_SPEC",
                            "classical characteristics need a meromorphic scenario")
    return s.f


def _cmd_modulus(args) -> int:
    s = _load_scenario(args.scenario)
    grid = _parse_grid(args.t_grid)
    profile = modulus_profile(s.mu, grid, method=args.method)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["t", "h", "flag"])
    for t, h, flag in zip(profile.radii, profile.values, profile.flags):
        writer.writerow([_fmt(t), _fmt(h), flag])
    return EXIT_OK


def _cmd_verify(args) -> int:
    s = _apply_tol_overrides(_load_scenario(args.scenario), args)
    checks = tuple(args.checks.split(",")) if args.checks else ("UR", "UR2", "UR2f", "UR2fr")
    rows = run_checks(s, checks, timing=args.timing)
    _write_rows(rows, args.out)
    counts = _summarize(rows)
    print(f"verify: {len(rows)} checks "
          + " ".join(f"{k}={v}" for k, v in sorted(counts.items()) if v),
          file=sys.stderr)
    return _exit_code(counts, args.max_inconclusive)


def _cmd_corpus(args) -> int:
    checks = tuple(args.checks.split(",")) if args.checks else ("UR", "UR2", "UR2f", "UR2fr")
    families = tuple(args.families.split(",")) if args.families else None
    tols = Tolerances(
        mean=args.tol_mean if args.tol_mean is not None else Tolerances.mean,
        dini=args.tol_dini if args.tol_dini is not None else Tolerances.dini,
    )
    config = CorpusConfig(count=args.count, checks=checks,
                          tolerances=tols, timing=args.timing,
                          **({"families": families} if families else {}))
    threads = int(os.environ.get("DELTASUBH_THREADS", "1"))
    rows = _run_corpus_parallel(config, args.seed, threads)
    _write_rows(rows, args.out)
    counts = _summarize(rows)
    print(f"corpus: seed={args.seed} scenarios={args.count} rows={len(rows)} "
          + " ".join(f"{k}={v}" for k, v in sorted(counts.items()) if v),
          file=sys.stderr)
    return _exit_code(counts, args.max_inconclusive)


def _corpus_chunk(payload):
    config, seed, indices = payload
    from .lab import generate_scenario
    out = []
    for index in indices:
        family = config.families[index % len(config.families)]
        s = generate_scenario(seed, index, family, config.tolerances)
        out.extend(run_checks(s, config.checks, timing=config.timing))
    return out


def _run_corpus_parallel(config: CorpusConfig, seed: int, threads: int):
    if threads <= 1 or config.count < 2 * threads:
        return run_corpus(config, seed)
    from concurrent.futures import ProcessPoolExecutor
    chunks = [(config, seed, list(range(i, config.count, threads)))
              for i in range(threads)]
    rows = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_corpus_chunk, chunks):
            rows.extend(part)
    rows.sort(key=lambda rep: (rep.scenario_id, rep.inequality))
    return rows


def _cmd_report(args) -> int:
    rows = []
    for path in args.files:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != list(CSV_COLUMNS):
                raise ScenarioError("REPORT_SCHEMA",
                                    f"{path}: unexpected columns {reader.fieldnames}")
            rows.extend(reader)
    rows.sort(key=lambda row: (row["scenario_id"], row["inequality_tag"]))
    counts = _summarize(rows)
    total = len(rows)
    print(f"rows={total}")
    for key in ("pass", "fail", "inconclusive", "vacuous", "precondition-failed"):
        print(f"{key}={counts.get(key, 0)}")
    return _exit_code(counts, args.max_inconclusive)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltasubh-lab",
        description="potential-theory inequality lab: characteristics, measure "
                    "moduli, and verification of the main integral inequality",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("scenario", help="scenario JSON file")
        p.add_argument("--tol-mean", type=float, default=None,
                       help="override the circle/sphere mean tolerance")
        p.add_argument("--tol-dini", type=float, default=None,
                       help="override the Dini integral tolerance")
        p.add_argument("--max-inconclusive", type=float, default=0.02,
                       help="inconclusive fraction tolerated before exit 1")

    p_char = sub.add_parser("characteristic", help="characteristic records over a radius grid")
    common(p_char)
    p_char.add_argument("--kind", default="T",
                        choices=["m", "N", "T", "C", "C+", "M", "Tdiff", "TdiffC"])
    p_char.add_argument("--r-grid", required=True, help="start:stop:step")
    p_char.add_argument("--R", type=float, default=None,
                        help="upper radius for Tdiff kinds (default: scenario R)")
    p_char.set_defaults(func=_cmd_characteristic)

    p_mod = sub.add_parser("modulus", help="modulus-of-continuity profile")
    p_mod.add_argument("scenario")
    p_mod.add_argument("--t-grid", required=True, help="start:stop:step")
    p_mod.add_argument("--method", default="auto", choices=["auto", "upper"])
    p_mod.set_defaults(func=_cmd_modulus)

    p_ver = sub.add_parser("verify", help="run inequality checks on one scenario")
    common(p_ver)
    p_ver.add_argument("--checks", default=None,
                       help=f"comma list from {','.join(ALL_CHECKS)}")
    p_ver.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p_ver.add_argument("--timing", action="store_true",
                       help="record wall_time_ms (breaks byte determinism)")
    p_ver.set_defaults(func=_cmd_verify)

    p_cor = sub.add_parser("corpus", help="seeded deterministic scenario batch")
    common(p_cor, scenario=False)
    p_cor.add_argument("--seed", type=int, required=True)
    p_cor.add_argument("--count", type=int, default=200)
    p_cor.add_argument("--checks", default=None)
    p_cor.add_argument("--families", default=None,
                       help="comma list: ef_arc,segment,disk,disk_union")
    p_cor.add_argument("--out", default=None)
    p_cor.add_argument("--timing", action="store_true")
    p_cor.set_defaults(func=_cmd_corpus)

    p_rep = sub.add_parser("report", help="merge report CSVs and print counts")
    p_rep.add_argument("files", nargs="+")
    p_rep.add_argument("--max-inconclusive", type=float, default=0.02)
    p_rep.set_defaults(func=_cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QuadratureBudgetError as exc:
        print(f"error: quadrature budget exceeded: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
