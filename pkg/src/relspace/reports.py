"""Report assembly and rendering (markdown and JSON).

Rendered probabilities are the 4-decimal roundings of the internal
doubles; angles render in degrees with 2 decimals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .estimation import (
    FitReport,
    ProbEstimate,
    SequentialProbabilities,
    TwoProportionTest,
    fit_model,
)
from .model import Dimension, Outcome, predict_sequence_prob
from .quantumness import (
    CommutatorEntry,
    EffectTable,
    EffectTables,
    LtpReport,
    WignerDistribution,
    commutator_report,
    effect_tables,
    ltp_report,
    negativity,
    wigner,
)

_T, _U, _R = Dimension.TOPICALITY, Dimension.UNDERSTANDABILITY, Dimension.RELIABILITY
_POS, _NEG = Outcome.POSITIVE, Outcome.NEGATIVE

# label -> question chain for the measured-vs-model table
_JOINT_CHAINS = {
    "P(U+,T+)": ((_T, _POS), (_U, _POS)),
    "P(R+,T+)": ((_T, _POS), (_R, _POS)),
    "P(R+,U+,T+)": ((_T, _POS), (_U, _POS), (_R, _POS)),
    "P(R+,U-,T+)": ((_T, _POS), (_U, _NEG), (_R, _POS)),
    "P(U+,R+,T+)": ((_T, _POS), (_R, _POS), (_U, _POS)),
    "P(U+,R-,T+)": ((_T, _POS), (_R, _NEG), (_U, _POS)),
}


@dataclass(frozen=True)
class QueryReport:
    """Everything the report command renders for one query."""

    agg: SequentialProbabilities
    fit: FitReport
    wigner_dist: WignerDistribution
    commutators: list[CommutatorEntry]
    ltp: LtpReport
    effects: EffectTables


def build_query_report(agg: SequentialProbabilities) -> QueryReport:
    """Fit the model and compute every diagnostic for one aggregate."""
    fit = fit_model(agg)
    t2 = fit.model.params.t ** 2
    return QueryReport(
        agg=agg,
        fit=fit,
        wigner_dist=wigner(t2),
        commutators=commutator_report(fit.model),
        ltp=ltp_report(agg, fit.model),
        effects=effect_tables(agg),
    )


def fmt(x: float) -> str:
    return f"{x:.4f}"


def fmt_deg(x: float) -> str:
    return f"{x:.2f}"


def _fmt_est(est: ProbEstimate | None) -> str:
    if est is None:
        return "n/a"
    text = fmt(est.value)
    if est.has_counts:
        text += f" ({est.successes}/{est.trials})"
    return text


def _fmt_test(test: TwoProportionTest | None) -> str:
    if test is None:
        return "n/a"
    flag = "yes" if test.significant else "no"
    return f"chi2={test.statistic:.3f}, p={test.p_value:.4f}, significant={flag}"


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|")


def _effect_lines(table: EffectTable) -> list[str]:
    lines = [
        f"### {table.title}",
        "",
        "| conditional | value | vs baseline |",
        "| --- | --- | --- |",
        f"| {_md_cell(table.baseline.label)} | {_fmt_est(table.baseline.estimate)} | baseline |",
    ]
    for row in table.conditioned:
        lines.append(
            f"| {_md_cell(row.label)} | {_fmt_est(row.estimate)} | {_fmt_test(row.versus_baseline)} |"
        )
    lines.append("")
    return lines


def render_markdown(report: QueryReport) -> str:
    """Markdown rendering of a full query report."""
    agg = report.agg
    fit = report.fit
    params = fit.model.params
    lines: list[str] = []
    out = lines.append

    out(f"# Sequential judgment report: {fit.model.query_id}")
    out("")
    out("## Fitted parameters")
    out("")
    out("| quantity | value |")
    out("| --- | --- |")
    out(f"| t^2 | {fmt(params.t ** 2)} |")
    out(f"| u^2 | {fmt(params.u ** 2)} |")
    out(f"| r^2 | {fmt(params.r ** 2)} |")
    out(f"| theta_r (deg) | {fmt_deg(params.theta_r_deg)} |")
    out(f"| cos(theta_r) raw | {fmt(fit.cos_theta_raw)} |")
    out(f"| feasible | {'yes' if fit.feasible else 'no'} |")
    out(f"| degenerate phase | {'yes' if fit.degenerate_phase else 'no'} |")
    residual = (
        "n/a" if fit.residual_tru_third_step is None else fmt(fit.residual_tru_third_step)
    )
    out(f"| residual P(U+,R+,T+) measured - model | {residual} |")
    out("")

    out("## Sequential probabilities (measured vs model)")
    out("")
    out("| quantity | measured | model |")
    out("| --- | --- | --- |")
    t2 = params.t ** 2
    out(f"| P(T+) pooled | {_fmt_est(agg.p_t_pos)} | {fmt(t2)} |")
    out(f"| P(T+) TUR group | {_fmt_est(agg.p_t_pos_tur)} | {fmt(t2)} |")
    out(f"| P(T+) TRU group | {_fmt_est(agg.p_t_pos_tru)} | {fmt(t2)} |")
    measured_joints = {
        "P(U+,T+)": agg.p_u_pos_t_pos,
        "P(R+,T+)": agg.p_r_pos_t_pos,
        "P(R+,U+,T+)": agg.p_r_pos_u_pos_t_pos,
        "P(R+,U-,T+)": agg.p_r_pos_u_neg_t_pos,
        "P(U+,R+,T+)": agg.p_u_pos_r_pos_t_pos,
        "P(U+,R-,T+)": agg.p_u_pos_r_neg_t_pos,
    }
    for label, chain in _JOINT_CHAINS.items():
        predicted = predict_sequence_prob(report.fit.model, chain)
        out(f"| {label} | {_fmt_est(measured_joints[label])} | {fmt(predicted)} |")
    out("")

    out("## Conditional effects")
    out("")
    lines.extend(_effect_lines(report.effects.reliability_given_understandability))
    lines.extend(_effect_lines(report.effects.understandability_given_reliability))

    ltp = report.ltp
    out("## Total probability check")
    out("")
    out("| quantity | value |")
    out("| --- | --- |")
    out(f"| P(R+,T+) direct (TRU) | {fmt(ltp.p_direct)} |")
    out(f"| P(R+,U+,T+) + P(R+,U-,T+) (TUR) | {fmt(ltp.p_ltp_sum)} |")
    out(f"| delta (direct - sum) | {fmt(ltp.delta)} |")
    out(f"| model interference term | {fmt(ltp.model_interference)} |")
    out(f"| significance | {_fmt_test(ltp.significance)} |")
    out("")

    w = report.wigner_dist
    has_negative, min_entry = negativity(w)
    out("## Quasi-probability (Wigner) table")
    out("")
    out(f"| | {fmt(w.w[0, 0])} | {fmt(w.w[0, 1])} |")
    out(f"| | {fmt(w.w[1, 0])} | {fmt(w.w[1, 1])} |")
    out("")
    out(f"- r_x = {fmt(w.r_x)}, r_z = {fmt(w.r_z)}")
    out(f"- min entry = {fmt(min_entry)}")
    out(f"- negative entries: {'yes' if has_negative else 'no'}")
    out("")

    out("## Commutator norms")
    out("")
    out("| pair | Frobenius norm | commutes |")
    out("| --- | --- | --- |")
    for entry in report.commutators:
        pair = f"[{entry.pair[0].value},{entry.pair[1].value}]"
        out(f"| {pair} | {fmt(entry.frobenius_norm)} | {'yes' if entry.commutes else 'no'} |")
    out("")
    if fit.notes:
        out(f"Notes: {fit.notes}")
        out("")
    return "\n".join(lines)


def _round4(x: float) -> float:
    return round(x, 4)


def _est_payload(est: ProbEstimate | None):
    if est is None:
        return None
    payload = {"value": _round4(est.value)}
    if est.has_counts:
        payload["successes"] = est.successes
        payload["trials"] = est.trials
    return payload


def _test_payload(test: TwoProportionTest | None):
    if test is None:
        return None
    return {
        "statistic": round(test.statistic, 4),
        "p_value": round(test.p_value, 4),
        "alpha": test.alpha,
        "significant": test.significant,
    }


def _effect_payload(table: EffectTable) -> dict:
    return {
        "title": table.title,
        "baseline": {
            "label": table.baseline.label,
            "estimate": _est_payload(table.baseline.estimate),
        },
        "conditioned": [
            {
                "label": row.label,
                "estimate": _est_payload(row.estimate),
                "versus_baseline": _test_payload(row.versus_baseline),
            }
            for row in table.conditioned
        ],
    }


def render_json(report: QueryReport) -> dict:
    """JSON-ready payload mirroring the markdown report."""
    fit = report.fit
    params = fit.model.params
    agg = report.agg
    w = report.wigner_dist
    has_negative, min_entry = negativity(w)
    joints = {
        "P(U+,T+)": agg.p_u_pos_t_pos,
        "P(R+,T+)": agg.p_r_pos_t_pos,
        "P(R+,U+,T+)": agg.p_r_pos_u_pos_t_pos,
        "P(R+,U-,T+)": agg.p_r_pos_u_neg_t_pos,
        "P(U+,R+,T+)": agg.p_u_pos_r_pos_t_pos,
        "P(U+,R-,T+)": agg.p_u_pos_r_neg_t_pos,
    }
    return {
        "query_id": fit.model.query_id,
        "parameters": {
            "t_squared": _round4(params.t ** 2),
            "u_squared": _round4(params.u ** 2),
            "r_squared": _round4(params.r ** 2),
            "theta_r_deg": round(params.theta_r_deg, 2),
            "cos_theta_raw": _round4(fit.cos_theta_raw),
            "feasible": fit.feasible,
            "degenerate_phase": fit.degenerate_phase,
            "residual_tru_third_step": (
                None
                if fit.residual_tru_third_step is None
                else _round4(fit.residual_tru_third_step)
            ),
        },
        "sequential_probabilities": {
            "P(T+) pooled": _est_payload(agg.p_t_pos),
            "P(T+) TUR": _est_payload(agg.p_t_pos_tur),
            "P(T+) TRU": _est_payload(agg.p_t_pos_tru),
            "joints": {
                label: {
                    "measured": _est_payload(joints[label]),
                    "model": _round4(predict_sequence_prob(fit.model, chain)),
                }
                for label, chain in _JOINT_CHAINS.items()
            },
        },
        "effects": {
            "reliability_given_understandability": _effect_payload(
                report.effects.reliability_given_understandability
            ),
            "understandability_given_reliability": _effect_payload(
                report.effects.understandability_given_reliability
            ),
        },
        "total_probability": {
            "p_direct": _round4(report.ltp.p_direct),
            "p_ltp_sum": _round4(report.ltp.p_ltp_sum),
            "delta": _round4(report.ltp.delta),
            "model_interference": _round4(report.ltp.model_interference),
            "significance": _test_payload(report.ltp.significance),
        },
        "wigner": {
            "w": [[_round4(w.w[i, j]) for j in range(2)] for i in range(2)],
            "r_x": _round4(w.r_x),
            "r_z": _round4(w.r_z),
            "min_entry": _round4(min_entry),
            "has_negative": has_negative,
        },
        "commutators": [
            {
                "pair": f"[{entry.pair[0].value},{entry.pair[1].value}]",
                "frobenius_norm": _round4(entry.frobenius_norm),
                "commutes": entry.commutes,
            }
            for entry in report.commutators
        ],
        "notes": fit.notes,
    }
