"""File formats: response CSV, probability documents, model documents.

Response CSV schema (header required, answers case-insensitive yes/no):

    respondent_id,query_id,sequence,answer1,answer2,answer3

Probability documents and model documents are JSON objects.  Angles are
serialized in degrees and parsed into radians.
"""

from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path

from .errors import DuplicateRespondent, ParseError, UnknownSequenceTag
from .estimation import (
    QuestionOrder,
    ResponseDataset,
    ResponseRecord,
    SequentialProbabilities,
    probabilities_from_conditionals,
)
from .model import QueryModel, RelevanceParams

RESPONSE_HEADER = ("respondent_id", "query_id", "sequence", "answer1", "answer2", "answer3")

PROBABILITY_REQUIRED_FIELDS = (
    "p_t_pos",
    "p_u_pos_given_t_pos",
    "p_r_pos_given_t_pos",
    "p_r_pos_given_u_pos_t_pos",
)
PROBABILITY_OPTIONAL_FIELDS = (
    "p_r_pos_given_u_neg_t_pos",
    "p_u_pos_given_r_pos_t_pos",
    "p_u_pos_given_r_neg_t_pos",
    "p_t_pos_tur",
    "p_t_pos_tru",
)

OUTPUT_DIR_ENV = "RELSPACE_OUTDIR"


def resolve_output(path: str | Path) -> Path:
    """Resolve an output path against the optional default output directory.

    A relative path is joined onto ``$RELSPACE_OUTDIR`` when that variable
    is set; absolute paths and unset environments pass through unchanged.
    """
    path = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        return Path(base) / path
    return path


def _parse_answer(token: str, column: str, line: int) -> bool:
    norm = token.strip().lower()
    if norm == "yes":
        return True
    if norm == "no":
        return False
    raise ParseError(f"{column} must be yes or no, got {token!r}", line=line)


def load_responses(path: str | Path) -> ResponseDataset:
    """Parse a response CSV, validating enumerations and uniqueness."""
    records: list[ResponseRecord] = []
    seen: dict[tuple[str, str], int] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ParseError("missing header row", line=1)
        if tuple(cell.strip() for cell in header) != RESPONSE_HEADER:
            raise ParseError(
                f"header must be {','.join(RESPONSE_HEADER)}", line=1
            )
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 6:
                raise ParseError(f"expected 6 fields, got {len(row)}", line=line)
            respondent_id = row[0].strip()
            query_id = row[1].strip()
            if not respondent_id or not query_id:
                raise ParseError("respondent_id and query_id must be non-empty", line=line)
            tag = row[2].strip().upper()
            try:
                order = QuestionOrder(tag)
            except ValueError:
                raise UnknownSequenceTag(
                    f"sequence must be TUR or TRU, got {row[2]!r}", line=line
                ) from None
            key = (respondent_id, query_id)
            if key in seen:
                raise DuplicateRespondent(
                    f"duplicate respondent {respondent_id!r} for query {query_id!r} "
                    f"(first seen on line {seen[key]})",
                    line=line,
                )
            seen[key] = line
            records.append(
                ResponseRecord(
                    respondent_id=respondent_id,
                    query_id=query_id,
                    order=order,
                    answer1=_parse_answer(row[3], "answer1", line),
                    answer2=_parse_answer(row[4], "answer2", line),
                    answer3=_parse_answer(row[5], "answer3", line),
                )
            )
    return ResponseDataset(tuple(records))


def save_responses(dataset: ResponseDataset, path: str | Path) -> None:
    """Write a dataset back to the response CSV schema (lossless round trip)."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RESPONSE_HEADER)
        for rec in dataset:
            writer.writerow(
                [
                    rec.respondent_id,
                    rec.query_id,
                    rec.order.value,
                    "yes" if rec.answer1 else "no",
                    "yes" if rec.answer2 else "no",
                    "yes" if rec.answer3 else "no",
                ]
            )


def _load_json_object(path: str | Path, what: str) -> dict:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {what}: {exc}") from None
    if not isinstance(payload, dict):
        raise ParseError(f"{what} must be a JSON object")
    return payload


def _number_field(payload: dict, field: str, what: str, lo: float, hi: float) -> float:
    value = payload[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{what} field {field!r} must be a number")
    value = float(value)
    if not math.isfinite(value) or value < lo or value > hi:
        raise ParseError(f"{what} field {field!r} must lie in [{lo}, {hi}]")
    return value


def load_probabilities(path: str | Path) -> SequentialProbabilities:
    """Parse a probability document into an aggregate (counts unavailable)."""
    what = "probability document"
    payload = _load_json_object(path, what)
    if "query_id" not in payload or not isinstance(payload["query_id"], str) or not payload["query_id"]:
        raise ParseError(f"{what} field 'query_id' must be a non-empty string")
    for field in PROBABILITY_REQUIRED_FIELDS:
        if field not in payload:
            raise ParseError(f"{what} is missing required field {field!r}")
    known = set(PROBABILITY_REQUIRED_FIELDS) | set(PROBABILITY_OPTIONAL_FIELDS) | {"query_id"}
    for field in payload:
        if field not in known:
            raise ParseError(f"{what} has unknown field {field!r}")
    values = {
        field: _number_field(payload, field, what, 0.0, 1.0)
        for field in payload
        if field != "query_id"
    }
    required = {field: values[field] for field in PROBABILITY_REQUIRED_FIELDS}
    optional = {field: values[field] for field in PROBABILITY_OPTIONAL_FIELDS if field in values}
    return probabilities_from_conditionals(payload["query_id"], **required, **optional)


def load_model(path: str | Path) -> QueryModel:
    """Parse a model document: query_id, amplitudes t/u/r, theta_r_deg."""
    what = "model document"
    payload = _load_json_object(path, what)
    if "query_id" not in payload or not isinstance(payload["query_id"], str) or not payload["query_id"]:
        raise ParseError(f"{what} field 'query_id' must be a non-empty string")
    for field in ("t", "u", "r", "theta_r_deg"):
        if field not in payload:
            raise ParseError(f"{what} is missing required field {field!r}")
    t = _number_field(payload, "t", what, 0.0, 1.0)
    u = _number_field(payload, "u", what, 0.0, 1.0)
    r = _number_field(payload, "r", what, 0.0, 1.0)
    theta_deg = _number_field(payload, "theta_r_deg", what, 0.0, 180.0)
    provenance = payload.get("provenance", "")
    if not isinstance(provenance, str):
        raise ParseError(f"{what} field 'provenance' must be a string")
    params = RelevanceParams(t=t, u=u, r=r, theta_r=math.radians(theta_deg))
    return QueryModel(query_id=payload["query_id"], params=params, provenance=provenance)


def save_model(model: QueryModel, path: str | Path) -> None:
    """Write a model document (angle in degrees, full float precision)."""
    payload = {
        "query_id": model.query_id,
        "t": model.params.t,
        "u": model.params.u,
        "r": model.params.r,
        "theta_r_deg": model.params.theta_r_deg,
        "provenance": model.provenance,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
