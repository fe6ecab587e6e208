"""Three-dimension judgment model over a shared two-outcome state space.

A respondent's pre-judgment state lives in C^2.  Three questions --
Topicality, Understandability, Reliability -- are three bases of that
space, pinned down by four numbers: amplitudes t, u, r and a relative
phase theta_r.  Topicality is the standard basis; the Understandability
basis is a real rotation of it; the Reliability basis carries the complex
phase, which is what makes the third question genuinely distinct from the
first two (and is the source of path interference).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DomainError, InvalidSequence
from .hilbert import Basis2, Ket2, Observable2, observable_from_basis, prob_projection, sequential_prob


class Dimension(Enum):
    """Judgment dimension, i.e. which question is asked."""

    TOPICALITY = "T"
    UNDERSTANDABILITY = "U"
    RELIABILITY = "R"


class Outcome(Enum):
    """Answer to a two-outcome question."""

    POSITIVE = "+"
    NEGATIVE = "-"


# Values this close to a bound are snapped onto it (absorbs float round
# trips such as radians(degrees(theta))); anything further out is rejected.
_BOUND_SNAP = 1e-9


def _bounded(value: float, lo: float, hi: float, what: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < lo - _BOUND_SNAP or value > hi + _BOUND_SNAP:
        raise DomainError(f"{what} must lie in [{lo}, {hi}], got {value!r}")
    return min(hi, max(lo, value))


def _unit_interval(value: float, what: str) -> float:
    return _bounded(value, 0.0, 1.0, what)


@dataclass(frozen=True)
class RelevanceParams:
    """Model parameters: amplitudes t, u, r in [0, 1], phase theta_r in [0, pi] radians.

    Only cos(theta_r) is observable, so the phase sign is a convention;
    we fix theta_r to the upper half interval.
    """

    t: float
    u: float
    r: float
    theta_r: float

    def __post_init__(self):
        for name in ("t", "u", "r"):
            object.__setattr__(self, name, _unit_interval(getattr(self, name), name))
        object.__setattr__(
            self, "theta_r", _bounded(self.theta_r, 0.0, math.pi, "theta_r")
        )

    @property
    def theta_r_deg(self) -> float:
        return math.degrees(self.theta_r)


@dataclass(frozen=True)
class QueryModel:
    """Fitted parameters bound to a query id, with a free-text provenance note."""

    query_id: str
    params: RelevanceParams
    provenance: str = ""

    def __post_init__(self):
        if not self.query_id:
            raise DomainError("query_id must be non-empty")


def initial_state(params: RelevanceParams) -> Ket2:
    """Pre-judgment state t|T+> + sqrt(1 - t^2)|T-> in the standard basis."""
    t = params.t
    return Ket2(t, math.sqrt(max(0.0, 1.0 - t * t)))


def basis_kets(params: RelevanceParams, dim: Dimension) -> Basis2:
    """Orthonormal basis for one dimension, in standard-basis coordinates.

    Topicality is the standard basis itself.  Understandability is the
    real rotation (u, sqrt(1-u^2)) / (sqrt(1-u^2), -u).  Reliability adds
    the phase: (r, sqrt(1-r^2) e^{i theta_r}) / (sqrt(1-r^2) e^{-i theta_r}, -r).
    """
    if dim is Dimension.TOPICALITY:
        return Basis2(Ket2(1.0, 0.0), Ket2(0.0, 1.0))
    if dim is Dimension.UNDERSTANDABILITY:
        u = params.u
        s = math.sqrt(max(0.0, 1.0 - u * u))
        return Basis2(Ket2(u, s), Ket2(s, -u))
    r = params.r
    s = math.sqrt(max(0.0, 1.0 - r * r))
    phase = cmath.exp(1j * params.theta_r)
    return Basis2(Ket2(r, s * phase), Ket2(s * phase.conjugate(), -r))


def observable(params: RelevanceParams, dim: Dimension) -> Observable2:
    """+1/-1 observable for one dimension's question."""
    return observable_from_basis(basis_kets(params, dim))


def predict_sequence_prob(
    model: QueryModel, seq: Sequence[tuple[Dimension, Outcome]]
) -> float:
    """Model-predicted probability of a sequence of (dimension, outcome) answers.

    Questions are asked left to right starting from the initial state.
    Consecutive repeats of the same dimension are rejected: a repeated
    measurement is deterministic and must be collapsed by the caller.
    """
    if not seq:
        raise InvalidSequence("sequence must contain at least one question")
    previous_dim: Dimension | None = None
    chain: list[Ket2] = []
    for dim, outcome in seq:
        if dim is previous_dim:
            raise InvalidSequence(f"dimension {dim.value} repeated consecutively")
        basis = basis_kets(model.params, dim)
        chain.append(basis.plus if outcome is Outcome.POSITIVE else basis.minus)
        previous_dim = dim
    return sequential_prob(initial_state(model.params), chain)


def ru_overlap_prob(u: float, r: float, theta_r: float) -> float:
    """Closed trigonometric form of |<R+|U+>|^2.

    Equals (ur)^2 + (1-u^2)(1-r^2) + 2ur sqrt((1-u^2)(1-r^2)) cos(theta_r);
    agrees with the direct complex-amplitude computation and is the form
    inverted by the phase fit.
    """
    u = _unit_interval(u, "u")
    r = _unit_interval(r, "r")
    if not math.isfinite(theta_r):
        raise DomainError("theta_r must be finite")
    ur = u * r
    comp = (1.0 - u * u) * (1.0 - r * r)
    value = ur * ur + comp + 2.0 * ur * math.sqrt(comp) * math.cos(theta_r)
    return min(max(value, 0.0), 1.0)


def interference_term(params: RelevanceParams) -> float:
    """Gap between the direct third-question probability and its two-path sum.

    Returns t^2 r^2 - t^2 [u^2 |<R+|U+>|^2 + (1-u^2) |<R+|U->|^2]: the
    cross term that restores exactness of the two-path decomposition of
    P(R+, T+).  Vanishes when u is 0 or 1 (coincident paths) or when the
    phase makes the cross term purely imaginary.
    """
    t2 = params.t * params.t
    u2 = params.u * params.u
    basis_u = basis_kets(params, Dimension.UNDERSTANDABILITY)
    basis_r = basis_kets(params, Dimension.RELIABILITY)
    via_plus = prob_projection(basis_u.plus, basis_r.plus)
    via_minus = prob_projection(basis_u.minus, basis_r.plus)
    path_sum = u2 * via_plus + (1.0 - u2) * via_minus
    return t2 * params.r * params.r - t2 * path_sum
