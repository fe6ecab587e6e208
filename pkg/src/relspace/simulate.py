"""Monte Carlo engine for sequential projective measurements.

Two front ends share the same sampling core: a survey simulator that
generates synthetic respondent datasets from a fitted model, and a
physical cascade simulator that sends particles through chains of
two-outcome analyzers with optional beam blocking.

Determinism contract: ``simulate_dataset`` is a pure function of its
config.  All randomness comes from numpy's ``default_rng(seed)`` (PCG64,
whose bit stream is pinned by numpy's RNG compatibility policy) drawn as a
single (n_respondents, 4) uniform block; respondent i consumes exactly row
i (group draw, then one draw per question), so results do not depend on
processing order and parallel evaluation cannot change them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .estimation import QuestionOrder, ResponseDataset, ResponseRecord
from .hilbert import Basis2, Ket2, prob_projection
from .model import Outcome, QueryModel, basis_kets, initial_state

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


class SpinAxis(Enum):
    """Measurement axis preset for the physical cascade demos."""

    Z = "Z"
    X = "X"
    Y = "Y"


def spin_basis(axis: SpinAxis) -> Basis2:
    """Analyzer basis for one axis, in Z standard-basis coordinates.

    Z is the standard basis; X is the equal real superposition; Y needs the
    imaginary unit to stay distinct from X.  Any two distinct axes overlap
    with probability 1/2.
    """
    if axis is SpinAxis.Z:
        return Basis2(Ket2(1.0, 0.0), Ket2(0.0, 1.0))
    if axis is SpinAxis.X:
        return Basis2(
            Ket2(_INV_SQRT2, _INV_SQRT2),
            Ket2(_INV_SQRT2, -_INV_SQRT2),
        )
    return Basis2(
        Ket2(_INV_SQRT2, 1j * _INV_SQRT2),
        Ket2(_INV_SQRT2, -1j * _INV_SQRT2),
    )


@dataclass(frozen=True)
class CascadeStage:
    """One analyzer stage: a measurement basis plus an optional blocked outcome."""

    basis: Basis2
    block: Outcome | None = None
    label: str = ""


@dataclass(frozen=True)
class CascadeSpec:
    """Ordered analyzer stages and the number of particles to send through."""

    stages: tuple[CascadeStage, ...]
    shots: int

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if not self.stages:
            raise DomainError("cascade needs at least one stage")
        if self.shots < 1:
            raise DomainError("shots must be >= 1")


@dataclass(frozen=True)
class StageCounts:
    """Measured outcome counts at one stage, before any blocking is applied."""

    plus: int
    minus: int

    @property
    def total(self) -> int:
        return self.plus + self.minus


def run_cascade(
    initial: Ket2, spec: CascadeSpec, rng: np.random.Generator
) -> list[StageCounts]:
    """Send ``spec.shots`` particles through the analyzer chain.

    Each particle is measured at every stage it reaches; particles whose
    outcome is blocked leave the beam.  Returns the per-stage outcome
    counts among the particles that reached that stage.  A stage with no
    blocking conserves the count it receives.
    """
    # Outcome state after a stage is the measured basis ket, so transition
    # probabilities depend only on the previous outcome: two numbers per stage.
    counts: list[StageCounts] = []
    n_alive = spec.shots
    prev_basis: Basis2 | None = None
    prev_plus: np.ndarray | None = None  # outcome bools of surviving particles

    for stage in spec.stages:
        if n_alive == 0:
            counts.append(StageCounts(0, 0))
            continue
        if prev_basis is None:
            p_plus = np.full(n_alive, prob_projection(initial, stage.basis.plus))
        else:
            from_plus = prob_projection(prev_basis.plus, stage.basis.plus)
            from_minus = prob_projection(prev_basis.minus, stage.basis.plus)
            p_plus = np.where(prev_plus, from_plus, from_minus)
        outcome_plus = rng.random(n_alive) < p_plus
        counts.append(StageCounts(int(outcome_plus.sum()), int((~outcome_plus).sum())))

        if stage.block is Outcome.POSITIVE:
            keep = ~outcome_plus
        elif stage.block is Outcome.NEGATIVE:
            keep = outcome_plus
        else:
            keep = np.ones(n_alive, dtype=bool)
        prev_plus = outcome_plus[keep]
        prev_basis = stage.basis
        n_alive = int(keep.sum())
    return counts


def preset_cascade(setup: str, shots: int) -> tuple[Ket2, CascadeSpec]:
    """The three classic analyzer arrangements, fed by an X+ beam.

    a: Z (block -) then Z   -- the second analyzer confirms the first;
    b: Z (block -) then X   -- the surviving beam splits 50/50;
    c: Z (block -), X (block -), Z -- the final Z analyzer shows both
       outcomes again, although Z- was blocked upstream.

    The source beam is |X+> so the first analyzer visibly splits it.
    """
    z = spin_basis(SpinAxis.Z)
    x = spin_basis(SpinAxis.X)
    arrangements = {
        "a": (
            CascadeStage(z, block=Outcome.NEGATIVE, label="Z"),
            CascadeStage(z, label="Z"),
        ),
        "b": (
            CascadeStage(z, block=Outcome.NEGATIVE, label="Z"),
            CascadeStage(x, label="X"),
        ),
        "c": (
            CascadeStage(z, block=Outcome.NEGATIVE, label="Z"),
            CascadeStage(x, block=Outcome.NEGATIVE, label="X"),
            CascadeStage(z, label="Z"),
        ),
    }
    if setup not in arrangements:
        raise DomainError(f"setup must be one of a, b, c; got {setup!r}")
    return x.plus, CascadeSpec(stages=arrangements[setup], shots=shots)


@dataclass(frozen=True)
class SimConfig:
    """Synthetic-survey configuration.

    ``tur_fraction`` is the probability of assigning a respondent to the
    TUR group (stochastic by default; ``exact_split`` instead assigns
    exactly round(n * tur_fraction) respondents, chosen by their group
    draws, to TUR).  ``seed`` is a 64-bit unsigned integer.
    """

    model: QueryModel
    n_respondents: int
    tur_fraction: float = 0.5
    seed: int = 0
    exact_split: bool = False

    def __post_init__(self):
        if self.n_respondents < 1:
            raise DomainError("n_respondents must be >= 1")
        frac = float(self.tur_fraction)
        if not math.isfinite(frac) or frac < 0.0 or frac > 1.0:
            raise DomainError("tur_fraction must lie in [0, 1]")
        if int(self.seed) != self.seed or not (0 <= int(self.seed) < 2**64):
            raise DomainError("seed must be a 64-bit unsigned integer")


def _chain_probs(model: QueryModel, order: QuestionOrder) -> tuple[float, tuple[float, float], tuple[float, float]]:
    """Positive-answer probabilities along one question order.

    Returns (p1, (p2 | first +, p2 | first -), (p3 | second +, p3 | second -)).
    The post-measurement state is the outcome's basis ket, so each
    question's probability depends only on the previous answer.
    """
    params = model.params
    first, second, third = (basis_kets(params, dim) for dim in order.dimensions)
    p1 = prob_projection(initial_state(params), first.plus)
    p2 = (
        prob_projection(first.plus, second.plus),
        prob_projection(first.minus, second.plus),
    )
    p3 = (
        prob_projection(second.plus, third.plus),
        prob_projection(second.minus, third.plus),
    )
    return p1, p2, p3


def simulate_respondent(
    model: QueryModel,
    order: QuestionOrder,
    rng: np.random.Generator,
    respondent_id: str = "r0",
) -> ResponseRecord:
    """Sample one respondent's three answers along ``order``.

    Draws exactly three uniforms from ``rng`` (one per question, in asked
    order); an answer is positive when its uniform falls below the
    projection probability of the positive outcome, after which the state
    collapses to the measured basis ket.
    """
    p1, p2, p3 = _chain_probs(model, order)
    a1 = bool(rng.random() < p1)
    a2 = bool(rng.random() < (p2[0] if a1 else p2[1]))
    a3 = bool(rng.random() < (p3[0] if a2 else p3[1]))
    return ResponseRecord(
        respondent_id=respondent_id,
        query_id=model.query_id,
        order=order,
        answer1=a1,
        answer2=a2,
        answer3=a3,
    )


def simulate_dataset(config: SimConfig) -> ResponseDataset:
    """Generate a synthetic dataset; a pure function of (seed, config).

    Respondent i consumes row i of a single seeded uniform block
    (see the module docstring), so output is independent of evaluation
    order.  Respondent ids are r000001, r000002, ...
    """
    n = config.n_respondents
    rng = np.random.default_rng(config.seed)
    draws = rng.random((n, 4))

    if config.exact_split:
        n_tur = round(n * config.tur_fraction)
        ranks = np.argsort(draws[:, 0], kind="stable")
        is_tur = np.zeros(n, dtype=bool)
        is_tur[ranks[:n_tur]] = True
    else:
        is_tur = draws[:, 0] < config.tur_fraction

    probs = {
        QuestionOrder.TUR: _chain_probs(config.model, QuestionOrder.TUR),
        QuestionOrder.TRU: _chain_probs(config.model, QuestionOrder.TRU),
    }

    answers = np.zeros((n, 3), dtype=bool)
    for order, mask in ((QuestionOrder.TUR, is_tur), (QuestionOrder.TRU, ~is_tur)):
        if not mask.any():
            continue
        p1, p2, p3 = probs[order]
        u = draws[mask]
        a1 = u[:, 1] < p1
        a2 = u[:, 2] < np.where(a1, p2[0], p2[1])
        a3 = u[:, 3] < np.where(a2, p3[0], p3[1])
        answers[mask, 0] = a1
        answers[mask, 1] = a2
        answers[mask, 2] = a3

    width = max(6, len(str(n)))
    records = tuple(
        ResponseRecord(
            respondent_id=f"r{i + 1:0{width}d}",
            query_id=config.model.query_id,
            order=QuestionOrder.TUR if is_tur[i] else QuestionOrder.TRU,
            answer1=bool(answers[i, 0]),
            answer2=bool(answers[i, 1]),
            answer3=bool(answers[i, 2]),
        )
        for i in range(n)
    )
    return ResponseDataset(records)
