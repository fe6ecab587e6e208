"""Shared fixtures: published golden values and replica data builders.

PUBLISHED holds, per query, the reported sequential probabilities, the
fitted squared amplitudes and phase, and the conditional-effect tables.
The two question-order groups do not share an empirical P(T+): the
headline P(T+) belongs to the TUR group (it reproduces the TUR joints),
while the TRU group's P(T+) is recovered as P(R+,T+) / P(R+|T+).
"""

from __future__ import annotations

import json
import math

import pytest

from relspace import QueryModel, RelevanceParams
from relspace.estimation import (
    QuestionOrder,
    ResponseDataset,
    ResponseRecord,
    SequentialProbabilities,
    probabilities_from_conditionals,
)

PUBLISHED = {
    "q1": {
        "p_t": 0.7622,
        "p_ut": 0.4405,
        "p_rt": 0.4609,
        "p_rut": 0.2587,
        "p_ru_neg_t": 0.1188,
        "p_urt": 0.2765,
        "p_ur_neg_t": 0.1560,
        "u2": 0.5779,
        "r2": 0.5462,
        "theta_deg": 80.62,
        "r_given_t": 0.5462,
        "r_given_u_pos": 0.5872,
        "r_given_u_neg": 0.3692,
        "u_given_t": 0.5779,
        "u_given_r_pos": 0.5999,
        "u_given_r_neg": 0.4074,
    },
    "q2": {
        "p_t": 0.6736,
        "p_ut": 0.5416,
        "p_rt": 0.4857,
        "p_rut": 0.4513,
        "p_ru_neg_t": 0.0694,
        "p_urt": 0.4285,
        "p_ur_neg_t": 0.0857,
        "u2": 0.8041,
        "r2": 0.7311,
        "theta_deg": 56.79,
        "r_given_t": 0.7311,
        "r_given_u_pos": 0.8332,
        "r_given_u_neg": 0.5261,
        "u_given_t": 0.8040,
        "u_given_r_pos": 0.8822,
        "u_given_r_neg": 0.4801,
    },
    "q3": {
        "p_t": 0.8993,
        "p_ut": 0.8724,
        "p_rt": 0.5616,
        "p_rut": 0.6442,
        "p_ru_neg_t": 0.0000,
        "p_urt": 0.5410,
        "p_ur_neg_t": 0.2739,
        "u2": 0.9701,
        "r2": 0.6456,
        "theta_deg": 51.43,
        "r_given_t": 0.6456,
        "r_given_u_pos": 0.7384,
        "r_given_u_neg": 0.0000,
        "u_given_t": 0.9701,
        "u_given_r_pos": 0.9633,
        "u_given_r_neg": 0.8887,
    },
}

WIGNER_PUBLISHED = {
    "q1": [[0.5939, 0.1683], [-0.0939, 0.3317]],
    "q2": [[0.5712, 0.1024], [-0.0712, 0.3976]],
    "q3": [[0.6001, 0.2992], [-0.1001, 0.2008]],
}

# Query-1 operators in standard-basis coordinates (4-decimal published form).
U_HAT_Q1 = [[0.1558, 0.9874], [0.9874, -0.1558]]
R_HAT_Q1_DIAG = 0.0924
R_HAT_Q1_OFF_MOD = 0.9955
R_HAT_Q1_OFF_PHASE_DEG = 80.62

QUERY_IDS = ("q1", "q2", "q3")


def published_params(query_id: str) -> RelevanceParams:
    row = PUBLISHED[query_id]
    return RelevanceParams(
        t=math.sqrt(row["p_t"]),
        u=math.sqrt(row["u2"]),
        r=math.sqrt(row["r2"]),
        theta_r=math.radians(row["theta_deg"]),
    )


def published_model(query_id: str) -> QueryModel:
    return QueryModel(query_id, published_params(query_id), provenance="published values")


def tru_group_p_t(query_id: str) -> float:
    row = PUBLISHED[query_id]
    return row["p_rt"] / row["r_given_t"]


def replica_aggregate(query_id: str) -> SequentialProbabilities:
    """Aggregate rebuilt from the published conditionals (no counts)."""
    row = PUBLISHED[query_id]
    return probabilities_from_conditionals(
        query_id,
        p_t_pos=row["p_t"],
        p_u_pos_given_t_pos=row["u_given_t"],
        p_r_pos_given_t_pos=row["r_given_t"],
        p_r_pos_given_u_pos_t_pos=row["r_given_u_pos"],
        p_r_pos_given_u_neg_t_pos=row["r_given_u_neg"],
        p_u_pos_given_r_pos_t_pos=row["u_given_r_pos"],
        p_u_pos_given_r_neg_t_pos=row["u_given_r_neg"],
        p_t_pos_tur=row["p_t"],
        p_t_pos_tru=tru_group_p_t(query_id),
    )


def probability_document(query_id: str) -> dict:
    """JSON-ready probability document for one query's replica."""
    row = PUBLISHED[query_id]
    return {
        "query_id": query_id,
        "p_t_pos": row["p_t"],
        "p_u_pos_given_t_pos": row["u_given_t"],
        "p_r_pos_given_t_pos": row["r_given_t"],
        "p_r_pos_given_u_pos_t_pos": row["r_given_u_pos"],
        "p_r_pos_given_u_neg_t_pos": row["r_given_u_neg"],
        "p_u_pos_given_r_pos_t_pos": row["u_given_r_pos"],
        "p_u_pos_given_r_neg_t_pos": row["u_given_r_neg"],
        "p_t_pos_tur": row["p_t"],
        "p_t_pos_tru": tru_group_p_t(query_id),
    }


def write_probability_document(path, query_id: str) -> None:
    path.write_text(json.dumps(probability_document(query_id), indent=2), encoding="utf-8")


def _pattern_records(
    query_id: str, order: QuestionOrder, patterns: list[tuple[tuple[bool, bool, bool], int]], start: int
) -> list[ResponseRecord]:
    records = []
    index = start
    for answers, count in patterns:
        for _ in range(count):
            records.append(
                ResponseRecord(
                    respondent_id=f"{order.value.lower()}{index:06d}",
                    query_id=query_id,
                    order=order,
                    answer1=answers[0],
                    answer2=answers[1],
                    answer3=answers[2],
                )
            )
            index += 1
    return records


def replica_dataset(query_id: str, n_per_group: int = 10000) -> ResponseDataset:
    """Synthetic records whose counts reproduce the published conditionals.

    Counts are nested roundings, so aggregated values match the published
    numbers up to count rounding at the chosen group size.
    """
    row = PUBLISHED[query_id]
    n = n_per_group

    k_t = round(n * row["p_t"])
    k_tu = round(k_t * row["u_given_t"])
    k_tur = round(k_tu * row["r_given_u_pos"])
    k_tu_neg_r = round((k_t - k_tu) * row["r_given_u_neg"])
    tur_patterns = [
        ((True, True, True), k_tur),
        ((True, True, False), k_tu - k_tur),
        ((True, False, True), k_tu_neg_r),
        ((True, False, False), (k_t - k_tu) - k_tu_neg_r),
        ((False, False, False), n - k_t),
    ]

    k_t2 = round(n * tru_group_p_t(query_id))
    k_tr = round(k_t2 * row["r_given_t"])
    k_tru = round(k_tr * row["u_given_r_pos"])
    k_tr_neg_u = round((k_t2 - k_tr) * row["u_given_r_neg"])
    tru_patterns = [
        ((True, True, True), k_tru),
        ((True, True, False), k_tr - k_tru),
        ((True, False, True), k_tr_neg_u),
        ((True, False, False), (k_t2 - k_tr) - k_tr_neg_u),
        ((False, False, False), n - k_t2),
    ]

    records = _pattern_records(query_id, QuestionOrder.TUR, tur_patterns, 1)
    records += _pattern_records(query_id, QuestionOrder.TRU, tru_patterns, 1)
    return ResponseDataset(tuple(records))


@pytest.fixture
def q1_aggregate() -> SequentialProbabilities:
    return replica_aggregate("q1")


@pytest.fixture
def q1_model() -> QueryModel:
    return published_model("q1")
