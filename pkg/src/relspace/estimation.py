"""Parameter estimation from sequential yes/no response data.

The elicitation protocol asks each respondent three questions in one of
two orders (TUR or TRU, between subjects).  Conditional probabilities are
always computed within their own order group: the TUR group yields
P(U+|T+) and P(R+|U+/-,T+), the TRU group yields P(R+|T+) and
P(U+|R+/-,T+).  Joint probabilities are group-total fractions, i.e.
products of the group's empirical conditionals.  The two groups need not
share the same empirical P(T+); both per-group values and the pooled
value are retained.

Fitting is exactly identified: t^2 = P(T+), u^2 = P(U+|T+),
r^2 = P(R+|T+), and cos(theta_r) is solved from P(R+|U+,T+).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import (
    DomainError,
    DuplicateRespondent,
    EmptyGroup,
    InfeasibleModel,
    MissingProbability,
)
from .model import (
    Dimension,
    Outcome,
    QueryModel,
    RelevanceParams,
    predict_sequence_prob,
)

# Band around [-1, 1] inside which a raw cos(theta) is clamped rather than
# declared infeasible.
COS_CLAMP_EPS = 1e-6

# Amplitudes this close to 0 or 1 leave the phase unidentifiable.
DEGENERATE_EPS = 1e-9

SIGNIFICANCE_ALPHA = 0.05


class QuestionOrder(Enum):
    """Between-subjects question order; the first question is always Topicality."""

    TUR = "TUR"
    TRU = "TRU"

    @property
    def dimensions(self) -> tuple[Dimension, Dimension, Dimension]:
        if self is QuestionOrder.TUR:
            return (Dimension.TOPICALITY, Dimension.UNDERSTANDABILITY, Dimension.RELIABILITY)
        return (Dimension.TOPICALITY, Dimension.RELIABILITY, Dimension.UNDERSTANDABILITY)


@dataclass(frozen=True)
class ResponseRecord:
    """One respondent's three answers to one query, in asked order.

    ``order`` fixes what answer2 and answer3 mean: U then R for TUR,
    R then U for TRU.  answer1 is always the Topicality answer.
    """

    respondent_id: str
    query_id: str
    order: QuestionOrder
    answer1: bool
    answer2: bool
    answer3: bool

    def __post_init__(self):
        if not self.respondent_id:
            raise DomainError("respondent_id must be non-empty")
        if not self.query_id:
            raise DomainError("query_id must be non-empty")

    @property
    def answers(self) -> tuple[bool, bool, bool]:
        return (self.answer1, self.answer2, self.answer3)


@dataclass(frozen=True)
class ResponseDataset:
    """Immutable collection of response records, unique per (respondent, query)."""

    records: tuple[ResponseRecord, ...]

    def __post_init__(self):
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        seen: set[tuple[str, str]] = set()
        for rec in records:
            key = (rec.respondent_id, rec.query_id)
            if key in seen:
                raise DuplicateRespondent(
                    f"duplicate (respondent_id, query_id) pair {key!r}"
                )
            seen.add(key)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ResponseRecord]:
        return iter(self.records)

    def query_ids(self) -> tuple[str, ...]:
        seen: list[str] = []
        for rec in self.records:
            if rec.query_id not in seen:
                seen.append(rec.query_id)
        return tuple(seen)

    def for_query(self, query_id: str) -> tuple[ResponseRecord, ...]:
        return tuple(rec for rec in self.records if rec.query_id == query_id)


@dataclass(frozen=True)
class ProbEstimate:
    """A probability plus the (successes, trials) count it came from, when known."""

    value: float
    successes: int | None = None
    trials: int | None = None

    def __post_init__(self):
        value = float(self.value)
        if not math.isfinite(value) or value < 0.0 or value > 1.0:
            raise DomainError(f"probability must lie in [0, 1], got {value!r}")
        object.__setattr__(self, "value", value)
        if (self.successes is None) != (self.trials is None):
            raise DomainError("successes and trials must be given together")
        if self.trials is not None:
            if self.trials < 1 or self.successes < 0 or self.successes > self.trials:
                raise DomainError(
                    f"invalid counts ({self.successes}, {self.trials})"
                )
            if abs(value - self.successes / self.trials) > 1e-12:
                raise DomainError("value inconsistent with counts")

    @classmethod
    def from_counts(cls, successes: int, trials: int) -> "ProbEstimate":
        if trials < 1:
            raise DomainError("trials must be >= 1")
        return cls(successes / trials, successes, trials)

    @property
    def has_counts(self) -> bool:
        return self.trials is not None


def _ratio(successes: int, trials: int) -> ProbEstimate | None:
    """Count ratio, or None when the conditioning event never occurred."""
    if trials == 0:
        return None
    return ProbEstimate.from_counts(successes, trials)


@dataclass(frozen=True)
class SequentialProbabilities:
    """Per-query sequential response probabilities with their counts.

    Conditionals live in their own order group; joints are fractions of the
    group total.  A conditional is None when its conditioning event has no
    observations (reported, not an error).  Counts are None when the data
    came from a pre-aggregated probability document.
    """

    query_id: str
    p_t_pos: ProbEstimate | None = None
    p_t_pos_tur: ProbEstimate | None = None
    p_t_pos_tru: ProbEstimate | None = None
    # TUR-group conditionals
    p_u_pos_given_t_pos: ProbEstimate | None = None
    p_r_pos_given_u_pos_t_pos: ProbEstimate | None = None
    p_r_pos_given_u_neg_t_pos: ProbEstimate | None = None
    # TRU-group conditionals
    p_r_pos_given_t_pos: ProbEstimate | None = None
    p_u_pos_given_r_pos_t_pos: ProbEstimate | None = None
    p_u_pos_given_r_neg_t_pos: ProbEstimate | None = None
    # TUR-group joints (fractions of the TUR group)
    p_u_pos_t_pos: ProbEstimate | None = None
    p_r_pos_u_pos_t_pos: ProbEstimate | None = None
    p_r_pos_u_neg_t_pos: ProbEstimate | None = None
    # TRU-group joints (fractions of the TRU group)
    p_r_pos_t_pos: ProbEstimate | None = None
    p_u_pos_r_pos_t_pos: ProbEstimate | None = None
    p_u_pos_r_neg_t_pos: ProbEstimate | None = None

    def __post_init__(self):
        if not self.query_id:
            raise DomainError("query_id must be non-empty")
        # Each joint must not exceed its marginal.
        slack = 1e-9
        chains = (
            (self.p_r_pos_u_pos_t_pos, self.p_u_pos_t_pos),
            (self.p_u_pos_t_pos, self.p_t_pos_tur),
            (self.p_r_pos_t_pos, self.p_t_pos_tru),
            (self.p_u_pos_r_pos_t_pos, self.p_r_pos_t_pos),
        )
        for narrow, wide in chains:
            if narrow is not None and wide is not None:
                if narrow.value > wide.value + slack:
                    raise DomainError(
                        f"joint {narrow.value!r} exceeds its marginal {wide.value!r}"
                    )


def aggregate(dataset: ResponseDataset, query_id: str) -> SequentialProbabilities:
    """Empirical sequential probabilities for one query.

    Requires at least one record in each order group; raises
    :class:`EmptyGroup` otherwise.  Conditioning events with zero count
    leave the dependent conditional None.
    """
    records = dataset.for_query(query_id)
    tur = [rec for rec in records if rec.order is QuestionOrder.TUR]
    tru = [rec for rec in records if rec.order is QuestionOrder.TRU]
    if not tur:
        raise EmptyGroup(f"no TUR records for query {query_id!r}")
    if not tru:
        raise EmptyGroup(f"no TRU records for query {query_id!r}")

    n_tur = len(tur)
    n_tru = len(tru)

    # TUR: answer2 is Understandability, answer3 is Reliability.
    k_t_tur = sum(r.answer1 for r in tur)
    k_tu = sum(r.answer1 and r.answer2 for r in tur)
    k_tu_neg = k_t_tur - k_tu
    k_tur_all = sum(r.answer1 and r.answer2 and r.answer3 for r in tur)
    k_tu_neg_r = sum(r.answer1 and not r.answer2 and r.answer3 for r in tur)

    # TRU: answer2 is Reliability, answer3 is Understandability.
    k_t_tru = sum(r.answer1 for r in tru)
    k_tr = sum(r.answer1 and r.answer2 for r in tru)
    k_tr_neg = k_t_tru - k_tr
    k_tru_all = sum(r.answer1 and r.answer2 and r.answer3 for r in tru)
    k_tr_neg_u = sum(r.answer1 and not r.answer2 and r.answer3 for r in tru)

    return SequentialProbabilities(
        query_id=query_id,
        p_t_pos=ProbEstimate.from_counts(k_t_tur + k_t_tru, n_tur + n_tru),
        p_t_pos_tur=ProbEstimate.from_counts(k_t_tur, n_tur),
        p_t_pos_tru=ProbEstimate.from_counts(k_t_tru, n_tru),
        p_u_pos_given_t_pos=_ratio(k_tu, k_t_tur),
        p_r_pos_given_u_pos_t_pos=_ratio(k_tur_all, k_tu),
        p_r_pos_given_u_neg_t_pos=_ratio(k_tu_neg_r, k_tu_neg),
        p_r_pos_given_t_pos=_ratio(k_tr, k_t_tru),
        p_u_pos_given_r_pos_t_pos=_ratio(k_tru_all, k_tr),
        p_u_pos_given_r_neg_t_pos=_ratio(k_tr_neg_u, k_tr_neg),
        p_u_pos_t_pos=ProbEstimate.from_counts(k_tu, n_tur),
        p_r_pos_u_pos_t_pos=ProbEstimate.from_counts(k_tur_all, n_tur),
        p_r_pos_u_neg_t_pos=ProbEstimate.from_counts(k_tu_neg_r, n_tur),
        p_r_pos_t_pos=ProbEstimate.from_counts(k_tr, n_tru),
        p_u_pos_r_pos_t_pos=ProbEstimate.from_counts(k_tru_all, n_tru),
        p_u_pos_r_neg_t_pos=ProbEstimate.from_counts(k_tr_neg_u, n_tru),
    )


def probabilities_from_conditionals(
    query_id: str,
    p_t_pos: float,
    p_u_pos_given_t_pos: float,
    p_r_pos_given_t_pos: float,
    p_r_pos_given_u_pos_t_pos: float,
    *,
    p_r_pos_given_u_neg_t_pos: float | None = None,
    p_u_pos_given_r_pos_t_pos: float | None = None,
    p_u_pos_given_r_neg_t_pos: float | None = None,
    p_t_pos_tur: float | None = None,
    p_t_pos_tru: float | None = None,
) -> SequentialProbabilities:
    """Aggregate built from pre-computed conditionals (no raw counts).

    Per-group P(T+) defaults to the pooled value.  Joints are derived as
    products of conditionals within their group; joints whose conditional
    is not given stay None.
    """

    def est(value: float | None) -> ProbEstimate | None:
        return None if value is None else ProbEstimate(value)

    pt_tur = p_t_pos if p_t_pos_tur is None else p_t_pos_tur
    pt_tru = p_t_pos if p_t_pos_tru is None else p_t_pos_tru

    p_ut = pt_tur * p_u_pos_given_t_pos
    p_rut = p_ut * p_r_pos_given_u_pos_t_pos
    p_ru_neg_t = None
    if p_r_pos_given_u_neg_t_pos is not None:
        p_ru_neg_t = (pt_tur - p_ut) * p_r_pos_given_u_neg_t_pos
    p_rt = pt_tru * p_r_pos_given_t_pos
    p_urt = None
    if p_u_pos_given_r_pos_t_pos is not None:
        p_urt = p_rt * p_u_pos_given_r_pos_t_pos
    p_ur_neg_t = None
    if p_u_pos_given_r_neg_t_pos is not None:
        p_ur_neg_t = (pt_tru - p_rt) * p_u_pos_given_r_neg_t_pos

    return SequentialProbabilities(
        query_id=query_id,
        p_t_pos=est(p_t_pos),
        p_t_pos_tur=est(pt_tur),
        p_t_pos_tru=est(pt_tru),
        p_u_pos_given_t_pos=est(p_u_pos_given_t_pos),
        p_r_pos_given_u_pos_t_pos=est(p_r_pos_given_u_pos_t_pos),
        p_r_pos_given_u_neg_t_pos=est(p_r_pos_given_u_neg_t_pos),
        p_r_pos_given_t_pos=est(p_r_pos_given_t_pos),
        p_u_pos_given_r_pos_t_pos=est(p_u_pos_given_r_pos_t_pos),
        p_u_pos_given_r_neg_t_pos=est(p_u_pos_given_r_neg_t_pos),
        p_u_pos_t_pos=est(p_ut),
        p_r_pos_u_pos_t_pos=est(p_rut),
        p_r_pos_u_neg_t_pos=est(p_ru_neg_t),
        p_r_pos_t_pos=est(p_rt),
        p_u_pos_r_pos_t_pos=est(p_urt),
        p_u_pos_r_neg_t_pos=est(p_ur_neg_t),
    )


def _amplitude_from_prob(p: float, what: str) -> float:
    p = float(p)
    if not math.isfinite(p) or p < 0.0 or p > 1.0:
        raise DomainError(f"{what} must lie in [0, 1], got {p!r}")
    return math.sqrt(p)


def fit_t(p_t_pos: float) -> float:
    """Amplitude t = sqrt(P(T+))."""
    return _amplitude_from_prob(p_t_pos, "p_t_pos")


def fit_u(p_u_pos_given_t_pos: float) -> float:
    """Amplitude u = sqrt(P(U+|T+)), the TUR-group conditional."""
    return _amplitude_from_prob(p_u_pos_given_t_pos, "p_u_pos_given_t_pos")


def fit_r(p_r_pos_given_t_pos: float) -> float:
    """Amplitude r = sqrt(P(R+|T+)), the TRU-group conditional."""
    return _amplitude_from_prob(p_r_pos_given_t_pos, "p_r_pos_given_t_pos")


@dataclass(frozen=True)
class ThetaFit:
    """Outcome of the phase fit.

    ``cos_theta_raw`` is the pre-clamp value; it is set to 0.0 (and is
    meaningless) when ``degenerate_phase`` is set.
    """

    theta_r: float
    cos_theta_raw: float
    feasible: bool
    degenerate_phase: bool


def fit_theta(u: float, r: float, p_r_pos_given_u_pos_t_pos: float) -> ThetaFit:
    """Solve cos(theta_r) from the third-question conditional q = P(R+|U+,T+).

    cos(theta_r) = (q - (ur)^2 - (1-u^2)(1-r^2)) / (2ur sqrt((1-u^2)(1-r^2))).

    When u or r sits at 0 or 1 the denominator vanishes and the phase is
    unidentifiable; theta_r is set to 0 and flagged degenerate.  A raw
    cosine outside [-1, 1] by more than ``COS_CLAMP_EPS`` raises
    :class:`InfeasibleModel`; inside the band it is clamped.
    """
    for name, value in (("u", u), ("r", r)):
        if not math.isfinite(value) or value < 0.0 or value > 1.0:
            raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    q = float(p_r_pos_given_u_pos_t_pos)
    if not math.isfinite(q) or q < 0.0 or q > 1.0:
        raise DomainError(f"p_r_pos_given_u_pos_t_pos must lie in [0, 1], got {q!r}")

    if min(u, 1.0 - u, r, 1.0 - r) <= DEGENERATE_EPS:
        return ThetaFit(theta_r=0.0, cos_theta_raw=0.0, feasible=True, degenerate_phase=True)

    u2 = u * u
    r2 = r * r
    comp = (1.0 - u2) * (1.0 - r2)
    denom = 2.0 * u * r * math.sqrt(comp)
    cos_raw = (q - u2 * r2 - comp) / denom
    if abs(cos_raw) > 1.0 + COS_CLAMP_EPS:
        raise InfeasibleModel(cos_raw)
    theta = math.acos(min(1.0, max(-1.0, cos_raw)))
    return ThetaFit(theta_r=theta, cos_theta_raw=cos_raw, feasible=True, degenerate_phase=False)


@dataclass(frozen=True)
class FitReport:
    """Fitted model plus feasibility diagnostics.

    ``residual_tru_third_step`` is measured P(U+,R+,T+) minus the model's
    prediction for the TRU chain; the protocol does not constrain that
    probability, so a nonzero residual is a data/model gap, not an error.
    """

    model: QueryModel
    cos_theta_raw: float
    feasible: bool
    degenerate_phase: bool
    residual_tru_third_step: float | None
    notes: str


_TRU_CHAIN = (
    (Dimension.TOPICALITY, Outcome.POSITIVE),
    (Dimension.RELIABILITY, Outcome.POSITIVE),
    (Dimension.UNDERSTANDABILITY, Outcome.POSITIVE),
)


def fit_model(agg: SequentialProbabilities, query_id: str | None = None) -> FitReport:
    """Three-step elicitation fit from aggregated probabilities.

    t comes from the TUR group's P(T+) when available (the group whose
    chain also fixes u and theta_r), falling back to the pooled value.
    Raises :class:`MissingProbability` when a required input is absent and
    propagates :class:`InfeasibleModel` from the phase fit.
    """
    qid = query_id if query_id is not None else agg.query_id

    t_source = agg.p_t_pos_tur if agg.p_t_pos_tur is not None else agg.p_t_pos
    if t_source is None:
        raise MissingProbability("p_t_pos")
    if agg.p_u_pos_given_t_pos is None:
        raise MissingProbability("p_u_pos_given_t_pos")
    if agg.p_r_pos_given_t_pos is None:
        raise MissingProbability("p_r_pos_given_t_pos")
    if agg.p_r_pos_given_u_pos_t_pos is None:
        raise MissingProbability("p_r_pos_given_u_pos_t_pos")

    t = fit_t(t_source.value)
    u = fit_u(agg.p_u_pos_given_t_pos.value)
    r = fit_r(agg.p_r_pos_given_t_pos.value)
    theta = fit_theta(u, r, agg.p_r_pos_given_u_pos_t_pos.value)

    params = RelevanceParams(t=t, u=u, r=r, theta_r=theta.theta_r)
    model = QueryModel(
        query_id=qid,
        params=params,
        provenance="fitted from sequential response probabilities",
    )

    residual = None
    if agg.p_u_pos_r_pos_t_pos is not None:
        residual = agg.p_u_pos_r_pos_t_pos.value - predict_sequence_prob(model, _TRU_CHAIN)

    notes = ["theta_r sign is unidentifiable (only cos theta_r is measured); fixed to [0, pi]"]
    if theta.degenerate_phase:
        notes.append("phase degenerate: u or r at 0/1, theta_r set to 0")
    return FitReport(
        model=model,
        cos_theta_raw=theta.cos_theta_raw,
        feasible=theta.feasible,
        degenerate_phase=theta.degenerate_phase,
        residual_tru_third_step=residual,
        notes="; ".join(notes),
    )


@dataclass(frozen=True)
class TwoProportionTest:
    """Pearson chi-square test of equal proportions on a 2x2 table."""

    statistic: float
    p_value: float
    alpha: float = SIGNIFICANCE_ALPHA

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha


def chi_square_two_proportions(k1: int, n1: int, k2: int, n2: int) -> TwoProportionTest:
    """Two-tailed test of equality of two binomial proportions.

    Plain Pearson statistic on the 2x2 table, no continuity correction
    (equivalently the squared pooled-variance z statistic).  The p-value
    uses the closed form for one degree of freedom,
    p = erfc(sqrt(statistic / 2)).
    """
    for name, value in (("k1", k1), ("n1", n1), ("k2", k2), ("n2", n2)):
        if int(value) != value:
            raise DomainError(f"{name} must be an integer, got {value!r}")
    k1, n1, k2, n2 = int(k1), int(n1), int(k2), int(n2)
    if n1 < 1 or n2 < 1:
        raise DomainError("group sizes must be >= 1")
    if not (0 <= k1 <= n1) or not (0 <= k2 <= n2):
        raise DomainError("success counts must lie in [0, n]")

    pooled = (k1 + k2) / (n1 + n2)
    if pooled <= 0.0 or pooled >= 1.0:
        # All successes or all failures in both groups: proportions equal.
        statistic = 0.0
    else:
        diff = k1 / n1 - k2 / n2
        statistic = diff * diff / (pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))
    p_value = math.erfc(math.sqrt(statistic / 2.0))
    return TwoProportionTest(statistic=statistic, p_value=p_value)
