"""Diagnostics that separate genuinely quantum statistics from classical ones.

Three independent witnesses are computed for a fitted model and its data:

* a discrete quasi-probability (Wigner) table for the initial state, whose
  negative entries certify non-classical statistics;
* pairwise commutators of the three question observables, whose nonzero
  norms quantify incompatibility (and hence order effects);
* the gap between the directly measured P(R+, T+) and its two-path
  total-probability sum, matched against the model's interference term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, MissingProbability
from .estimation import (
    ProbEstimate,
    SequentialProbabilities,
    TwoProportionTest,
    chi_square_two_proportions,
)
from .hilbert import commutator
from .model import (
    Dimension,
    QueryModel,
    RelevanceParams,
    interference_term,
    observable,
)

# Entries below this are treated as genuinely negative rather than -0.0.
NEGATIVITY_EPS = 1e-12

COMMUTE_NORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class WignerDistribution:
    """2x2 real quasi-probability table with the Bloch components that built it.

    Entries sum to 1 but individual entries may be negative; each lies in
    [-0.25, 0.75].
    """

    w: np.ndarray
    r_x: float
    r_z: float

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.shape != (2, 2):
            raise DomainError(f"distribution must be 2x2, got shape {w.shape}")
        if abs(w.sum() - 1.0) > 1e-9:
            raise DomainError(f"entries must sum to 1, got {w.sum()!r}")
        if w.min() < -0.25 - 1e-9 or w.max() > 0.75 + 1e-9:
            raise DomainError("entries must lie in [-0.25, 0.75]")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)


def wigner(t_squared: float) -> WignerDistribution:
    """Discrete quasi-probability table for the initial state.

    With r_x = 2 sqrt(t^2 (1 - t^2)) and r_z = 2 t^2 - 1:

        W = (1/4) [[1 + r_x + r_z, 1 - r_x + r_z],
                   [1 - r_x - r_z, 1 + r_x - r_z]]

    The 1/4 factor normalizes the table to total mass 1; row sums then
    equal (t^2, 1 - t^2), the Topicality outcome distribution.
    """
    t2 = float(t_squared)
    if not math.isfinite(t2) or t2 < 0.0 or t2 > 1.0:
        raise DomainError(f"t_squared must lie in [0, 1], got {t_squared!r}")
    r_x = 2.0 * math.sqrt(t2 * (1.0 - t2))
    r_z = 2.0 * t2 - 1.0
    w = 0.25 * np.array(
        [
            [1.0 + r_x + r_z, 1.0 - r_x + r_z],
            [1.0 - r_x - r_z, 1.0 + r_x - r_z],
        ]
    )
    return WignerDistribution(w=w, r_x=r_x, r_z=r_z)


def negativity(dist: WignerDistribution) -> tuple[bool, float]:
    """(has_negative, min_entry) for a quasi-probability table."""
    min_entry = float(dist.w.min())
    return (min_entry < -NEGATIVITY_EPS, min_entry)


@dataclass(frozen=True)
class CommutatorEntry:
    """Magnitude of one pairwise commutator of question observables."""

    pair: tuple[Dimension, Dimension]
    frobenius_norm: float
    commutes: bool


def commutator_report(model: QueryModel) -> list[CommutatorEntry]:
    """Frobenius norms of the three pairwise commutators [T,U], [T,R], [R,U]."""
    obs = {dim: observable(model.params, dim) for dim in Dimension}
    pairs = (
        (Dimension.TOPICALITY, Dimension.UNDERSTANDABILITY),
        (Dimension.TOPICALITY, Dimension.RELIABILITY),
        (Dimension.RELIABILITY, Dimension.UNDERSTANDABILITY),
    )
    report = []
    for left, right in pairs:
        norm = float(np.linalg.norm(commutator(obs[left], obs[right])))
        report.append(
            CommutatorEntry(pair=(left, right), frobenius_norm=norm, commutes=norm < COMMUTE_NORM_TOL)
        )
    return report


@dataclass(frozen=True)
class LtpReport:
    """Total-probability check for the third question.

    ``p_direct`` is the measured P(R+, T+) from the TRU group;
    ``p_ltp_sum`` is P(R+, U+, T+) + P(R+, U-, T+) from the TUR group;
    ``delta = p_direct - p_ltp_sum`` is the measured gap, and
    ``model_interference`` is the model's prediction for it.
    ``significance`` compares the two proportions when counts exist.
    """

    p_direct: float
    p_ltp_sum: float
    delta: float
    model_interference: float
    significance: TwoProportionTest | None = None


def ltp_report(agg: SequentialProbabilities, model: QueryModel) -> LtpReport:
    """Measured total-probability gap with the model's interference term attached."""
    if agg.p_r_pos_u_pos_t_pos is None:
        raise MissingProbability("p_r_pos_u_pos_t_pos")
    if agg.p_r_pos_u_neg_t_pos is None:
        raise MissingProbability("p_r_pos_u_neg_t_pos")
    if agg.p_r_pos_t_pos is None:
        raise MissingProbability("p_r_pos_t_pos")

    via_plus = agg.p_r_pos_u_pos_t_pos
    via_minus = agg.p_r_pos_u_neg_t_pos
    direct = agg.p_r_pos_t_pos
    p_ltp_sum = via_plus.value + via_minus.value
    delta = direct.value - p_ltp_sum

    significance = None
    if via_plus.has_counts and via_minus.has_counts and direct.has_counts:
        if via_plus.trials == via_minus.trials:
            significance = chi_square_two_proportions(
                via_plus.successes + via_minus.successes,
                via_plus.trials,
                direct.successes,
                direct.trials,
            )

    return LtpReport(
        p_direct=direct.value,
        p_ltp_sum=p_ltp_sum,
        delta=delta,
        model_interference=interference_term(model.params),
        significance=significance,
    )


@dataclass(frozen=True)
class EffectRow:
    """One conditional probability, optionally tested against its baseline."""

    label: str
    estimate: ProbEstimate
    versus_baseline: TwoProportionTest | None = None


@dataclass(frozen=True)
class EffectTable:
    """A baseline conditional and its context-conditioned counterparts."""

    title: str
    baseline: EffectRow
    conditioned: tuple[EffectRow, ...]


@dataclass(frozen=True)
class EffectTables:
    """Conditional-effect tables in both directions between U and R."""

    reliability_given_understandability: EffectTable
    understandability_given_reliability: EffectTable


def _effect_row(
    label: str, estimate: ProbEstimate, baseline: ProbEstimate
) -> EffectRow:
    test = None
    if estimate.has_counts and baseline.has_counts:
        test = chi_square_two_proportions(
            estimate.successes, estimate.trials, baseline.successes, baseline.trials
        )
    return EffectRow(label=label, estimate=estimate, versus_baseline=test)


def effect_tables(agg: SequentialProbabilities) -> EffectTables:
    """Six conditionals showing how answering one dimension shifts another.

    Each conditioned row gets a two-proportion test against its baseline
    when counts are available.  Raises :class:`MissingProbability` for any
    absent cell.
    """
    cells = {
        "p_r_pos_given_t_pos": agg.p_r_pos_given_t_pos,
        "p_r_pos_given_u_pos_t_pos": agg.p_r_pos_given_u_pos_t_pos,
        "p_r_pos_given_u_neg_t_pos": agg.p_r_pos_given_u_neg_t_pos,
        "p_u_pos_given_t_pos": agg.p_u_pos_given_t_pos,
        "p_u_pos_given_r_pos_t_pos": agg.p_u_pos_given_r_pos_t_pos,
        "p_u_pos_given_r_neg_t_pos": agg.p_u_pos_given_r_neg_t_pos,
    }
    for name, cell in cells.items():
        if cell is None:
            raise MissingProbability(name)

    r_table = EffectTable(
        title="Effect of Understandability on Reliability",
        baseline=EffectRow("P(R+|T+)", cells["p_r_pos_given_t_pos"]),
        conditioned=(
            _effect_row("P(R+|U+,T+)", cells["p_r_pos_given_u_pos_t_pos"], cells["p_r_pos_given_t_pos"]),
            _effect_row("P(R+|U-,T+)", cells["p_r_pos_given_u_neg_t_pos"], cells["p_r_pos_given_t_pos"]),
        ),
    )
    u_table = EffectTable(
        title="Effect of Reliability on Understandability",
        baseline=EffectRow("P(U+|T+)", cells["p_u_pos_given_t_pos"]),
        conditioned=(
            _effect_row("P(U+|R+,T+)", cells["p_u_pos_given_r_pos_t_pos"], cells["p_u_pos_given_t_pos"]),
            _effect_row("P(U+|R-,T+)", cells["p_u_pos_given_r_neg_t_pos"], cells["p_u_pos_given_t_pos"]),
        ),
    )
    return EffectTables(
        reliability_given_understandability=r_table,
        understandability_given_reliability=u_table,
    )


@dataclass(frozen=True)
class ThetaSweepRow:
    """Interference and total-probability quantities at one phase value."""

    theta_deg: float
    interference: float
    p_direct: float
    p_ltp_sum: float


def sweep_theta(params: RelevanceParams, steps: int) -> list[ThetaSweepRow]:
    """Interference term across theta_r in [0, 180] degrees, t/u/r held fixed.

    ``p_direct`` is the model's t^2 r^2 (phase-independent) and
    ``p_ltp_sum = p_direct - interference``.  The interference term is
    affine in cos(theta_r), so the endpoints bracket its extremes.
    """
    if steps < 2:
        raise DomainError("steps must be >= 2")
    p_direct = params.t * params.t * params.r * params.r
    rows = []
    for k in range(steps):
        theta = math.pi * k / (steps - 1)
        swept = replace(params, theta_r=theta)
        inter = interference_term(swept)
        rows.append(
            ThetaSweepRow(
                theta_deg=math.degrees(theta),
                interference=inter,
                p_direct=p_direct,
                p_ltp_sum=p_direct - inter,
            )
        )
    return rows
