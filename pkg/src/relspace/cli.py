"""Command-line front end.

Commands: fit, report, wigner, operators, ltp, simulate, spin-demo,
sweep-theta.  Inputs are response CSVs or JSON probability documents
(chosen by file extension: .csv means responses).  Exit codes: 0 success,
2 parse/input error, 3 infeasible model, 4 missing data, 1 anything else.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import io as fileio
from .errors import (
    EmptyGroup,
    InfeasibleModel,
    MissingProbability,
    ParseError,
    RelspaceError,
)
from .estimation import SequentialProbabilities, aggregate, fit_model
from .model import Dimension, QueryModel, observable
from .quantumness import negativity, sweep_theta, wigner
from .reports import build_query_report, fmt, fmt_deg, render_json, render_markdown
from .simulate import SimConfig, preset_cascade, run_cascade, simulate_dataset

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_MISSING = 4


def _load_aggregate(path: str, query_id: str | None) -> SequentialProbabilities:
    if Path(path).suffix.lower() == ".csv":
        dataset = fileio.load_responses(path)
        if query_id is None:
            ids = dataset.query_ids()
            if len(ids) != 1:
                raise ParseError(
                    f"dataset contains {len(ids)} queries; pass --query-id"
                )
            query_id = ids[0]
        return aggregate(dataset, query_id)
    agg = fileio.load_probabilities(path)
    if query_id is not None and query_id != agg.query_id:
        raise ParseError(
            f"--query-id {query_id!r} does not match document query {agg.query_id!r}"
        )
    return agg


def _load_model(args) -> QueryModel:
    if getattr(args, "model", None):
        return fileio.load_model(args.model)
    agg = _load_aggregate(args.input, getattr(args, "query_id", None))
    return fit_model(agg).model


def _emit(text: str, output: str | None) -> None:
    if output:
        path = fileio.resolve_output(output)
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.4f}{z.imag:+.4f}i"


def cmd_fit(args) -> int:
    agg = _load_aggregate(args.input, args.query_id)
    fit = fit_model(agg)
    params = fit.model.params
    print(f"query_id: {fit.model.query_id}")
    print(f"t = {fmt(params.t)} (t^2 = {fmt(params.t ** 2)})")
    print(f"u = {fmt(params.u)} (u^2 = {fmt(params.u ** 2)})")
    print(f"r = {fmt(params.r)} (r^2 = {fmt(params.r ** 2)})")
    print(f"theta_r = {fmt_deg(params.theta_r_deg)} deg")
    print(f"cos(theta_r) raw = {fit.cos_theta_raw:.6f}")
    print(f"feasible: {'yes' if fit.feasible else 'no'}")
    print(f"degenerate phase: {'yes' if fit.degenerate_phase else 'no'}")
    if fit.residual_tru_third_step is not None:
        print(f"residual P(U+,R+,T+) measured - model = {fmt(fit.residual_tru_third_step)}")
    print(f"notes: {fit.notes}")
    if args.output:
        path = fileio.resolve_output(args.output)
        fileio.save_model(fit.model, path)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_report(args) -> int:
    agg = _load_aggregate(args.input, args.query_id)
    report = build_query_report(agg)
    if args.format == "json":
        text = json.dumps(render_json(report), indent=2) + "\n"
    else:
        text = render_markdown(report)
    _emit(text, args.output)
    return EXIT_OK


def cmd_wigner(args) -> int:
    if args.t2 is not None:
        t2 = args.t2
        label = f"t^2 = {fmt(t2)}"
    else:
        model = _load_model(args)
        t2 = model.params.t ** 2
        label = f"query {model.query_id}, t^2 = {fmt(t2)}"
    dist = wigner(t2)
    has_negative, min_entry = negativity(dist)
    if args.format == "json":
        payload = {
            "t_squared": round(t2, 4),
            "w": [[round(float(dist.w[i, j]), 4) for j in range(2)] for i in range(2)],
            "r_x": round(dist.r_x, 4),
            "r_z": round(dist.r_z, 4),
            "min_entry": round(min_entry, 4),
            "has_negative": has_negative,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return EXIT_OK
    lines = [
        f"Quasi-probability table for {label}",
        f"  {fmt(dist.w[0, 0])}  {fmt(dist.w[0, 1])}",
        f"  {fmt(dist.w[1, 0])}  {fmt(dist.w[1, 1])}",
        f"r_x = {fmt(dist.r_x)}, r_z = {fmt(dist.r_z)}",
        f"min entry = {fmt(min_entry)}, negative entries: {'yes' if has_negative else 'no'}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_operators(args) -> int:
    model = _load_model(args)
    from .quantumness import commutator_report

    lines = [f"Question observables for query {model.query_id} (standard-basis coordinates)"]
    for dim in Dimension:
        matrix = observable(model.params, dim).m
        lines.append(f"{dim.name.title()} ({dim.value}):")
        lines.append(f"  {_fmt_complex(matrix[0, 0])}  {_fmt_complex(matrix[0, 1])}")
        lines.append(f"  {_fmt_complex(matrix[1, 0])}  {_fmt_complex(matrix[1, 1])}")
    lines.append("Pairwise commutator norms:")
    for entry in commutator_report(model):
        pair = f"[{entry.pair[0].value},{entry.pair[1].value}]"
        lines.append(
            f"  {pair}: {fmt(entry.frobenius_norm)} ({'commute' if entry.commutes else 'do not commute'})"
        )
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_ltp(args) -> int:
    agg = _load_aggregate(args.input, args.query_id)
    if args.model:
        model = fileio.load_model(args.model)
    else:
        model = fit_model(agg).model
    from .quantumness import ltp_report

    report = ltp_report(agg, model)
    lines = [
        f"Total probability check for query {agg.query_id}",
        f"P(R+,T+) direct (TRU group)        = {fmt(report.p_direct)}",
        f"P(R+,U+,T+) + P(R+,U-,T+) (TUR)    = {fmt(report.p_ltp_sum)}",
        f"delta (direct - sum)               = {fmt(report.delta)}",
        f"model interference term            = {fmt(report.model_interference)}",
    ]
    if report.significance is not None:
        test = report.significance
        lines.append(
            f"two-proportion test: chi2={test.statistic:.3f}, p={test.p_value:.4f}, "
            f"significant={'yes' if test.significant else 'no'} (alpha={test.alpha})"
        )
    else:
        lines.append("two-proportion test: n/a (no counts)")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    model = fileio.load_model(args.model)
    config = SimConfig(
        model=model,
        n_respondents=args.n,
        tur_fraction=args.tur_fraction,
        seed=args.seed,
        exact_split=args.exact_split,
    )
    dataset = simulate_dataset(config)
    path = fileio.resolve_output(args.output)
    fileio.save_responses(dataset, path)
    print(f"wrote {len(dataset)} records to {path}")

    agg = aggregate(dataset, model.query_id)
    params = model.params
    from .model import ru_overlap_prob

    rows = [
        ("P(T+) TUR", agg.p_t_pos_tur, params.t ** 2),
        ("P(T+) TRU", agg.p_t_pos_tru, params.t ** 2),
        ("P(U+|T+)", agg.p_u_pos_given_t_pos, params.u ** 2),
        ("P(R+|T+)", agg.p_r_pos_given_t_pos, params.r ** 2),
        ("P(R+|U+,T+)", agg.p_r_pos_given_u_pos_t_pos, ru_overlap_prob(params.u, params.r, params.theta_r)),
    ]
    print("quantity      empirical   model")
    for label, est, expected in rows:
        value = "n/a" if est is None else fmt(est.value)
        print(f"{label:<13} {value:>9}   {fmt(expected)}")
    return EXIT_OK


def cmd_spin_demo(args) -> int:
    initial, spec = preset_cascade(args.setup, args.shots)
    rng = np.random.default_rng(args.seed)
    counts = run_cascade(initial, spec, rng)
    print(f"Cascade setup {args.setup} ({args.shots} shots, seed {args.seed}, source X+)")
    print("stage  axis  blocked   plus  minus")
    for index, (stage, count) in enumerate(zip(spec.stages, counts), start=1):
        blocked = "none"
        if stage.block is not None:
            blocked = "plus" if stage.block.value == "+" else "minus"
        print(
            f"{index:>5}  {stage.label:<4}  {blocked:<7} {count.plus:>6} {count.minus:>6}"
        )
    return EXIT_OK


def cmd_sweep_theta(args) -> int:
    model = fileio.load_model(args.model)
    rows = sweep_theta(model.params, args.steps)
    if args.output:
        path = fileio.resolve_output(args.output)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["theta_deg", "interference", "p_direct", "p_ltp_sum"])
            for row in rows:
                writer.writerow(
                    [f"{row.theta_deg:.4f}", f"{row.interference:.6f}", f"{row.p_direct:.6f}", f"{row.p_ltp_sum:.6f}"]
                )
        print(f"wrote {path}")
    else:
        print("theta_deg,interference,p_direct,p_ltp_sum")
        for row in rows:
            print(
                f"{row.theta_deg:.4f},{row.interference:.6f},{row.p_direct:.6f},{row.p_ltp_sum:.6f}"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relspace",
        description="Fit, diagnose and simulate two-dimensional Hilbert-space models "
        "of sequential yes/no relevance judgments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit model parameters from responses or probabilities")
    p.add_argument("--input", required=True, help="response CSV or probability JSON")
    p.add_argument("--query-id", help="query to fit (required for multi-query CSVs)")
    p.add_argument("--output", help="write the fitted model document here")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("report", help="full analysis report for one query")
    p.add_argument("--input", required=True, help="response CSV or probability JSON")
    p.add_argument("--query-id")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("wigner", help="quasi-probability table and negativity")
    p.add_argument("--t2", type=float, help="P(T+) to build the table from")
    p.add_argument("--model", help="model document (alternative to --t2)")
    p.add_argument("--input", help="responses/probabilities to fit (alternative)")
    p.add_argument("--query-id")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--output")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("operators", help="question observables and commutator norms")
    p.add_argument("--model", help="model document")
    p.add_argument("--input", help="responses/probabilities to fit (alternative)")
    p.add_argument("--query-id")
    p.add_argument("--output")
    p.set_defaults(func=cmd_operators)

    p = sub.add_parser("ltp", help="total-probability (interference) check")
    p.add_argument("--input", required=True, help="response CSV or probability JSON")
    p.add_argument("--query-id")
    p.add_argument("--model", help="model document (default: fit from the input)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_ltp)

    p = sub.add_parser("simulate", help="generate a synthetic response CSV from a model")
    p.add_argument("--model", required=True, help="model document")
    p.add_argument("--n", type=int, required=True, help="number of respondents")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tur-fraction", type=float, default=0.5)
    p.add_argument("--exact-split", action="store_true")
    p.add_argument("--output", required=True, help="response CSV to write")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spin-demo", help="run one of the classic analyzer cascades")
    p.add_argument("--setup", choices=("a", "b", "c"), required=True)
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_spin_demo)

    p = sub.add_parser("sweep-theta", help="interference term across the phase range")
    p.add_argument("--model", required=True, help="model document")
    p.add_argument("--steps", type=int, default=19)
    p.add_argument("--output", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep_theta)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleModel as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (MissingProbability, EmptyGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RelspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
