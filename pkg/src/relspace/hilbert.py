"""Minimal complex two-dimensional Hilbert-space primitives.

States are unit vectors over C^2, two-outcome questions are orthonormal
bases, and question observables are Hermitian 2x2 matrices with +1/-1
eigenvalues.  Every type here is an immutable value and every operation is
a pure function, so objects can be shared freely across threads.

Global phase is physically meaningless: two kets are considered the same
state when ``same_up_to_phase`` holds, i.e. |<x|y>| = 1 within tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, ZeroProbabilityCollapse

# Tolerance for algebraic identities (normalization, orthogonality,
# Hermiticity).  Published 4-decimal values are checked at 1e-3 in tests.
ATOL = 1e-9

# Below this projection probability an outcome counts as impossible and
# collapse refuses to renormalize.
COLLAPSE_MIN_PROB = 1e-12


def _finite_complex(value: complex, what: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{what} must have finite components, got {value!r}")
    return z


@dataclass(frozen=True)
class Ket2:
    """Normalized state vector over C^2.

    ``a0`` and ``a1`` are the complex amplitudes on the first and second
    standard basis vectors.  The constructor rejects amplitudes that are
    not unit-norm within ``ATOL``; use :meth:`from_amplitudes` to rescale
    arbitrary amplitudes.
    """

    a0: complex
    a1: complex

    def __post_init__(self):
        object.__setattr__(self, "a0", _finite_complex(self.a0, "a0"))
        object.__setattr__(self, "a1", _finite_complex(self.a1, "a1"))
        norm_sq = abs(self.a0) ** 2 + abs(self.a1) ** 2
        if abs(norm_sq - 1.0) > ATOL:
            raise DomainError(f"ket must be normalized, |a0|^2 + |a1|^2 = {norm_sq!r}")

    @classmethod
    def from_amplitudes(cls, a0: complex, a1: complex) -> "Ket2":
        """Build a ket from arbitrary finite amplitudes, rescaled to unit norm."""
        a0 = _finite_complex(a0, "a0")
        a1 = _finite_complex(a1, "a1")
        norm = math.sqrt(abs(a0) ** 2 + abs(a1) ** 2)
        if norm < 1e-150:
            raise DomainError("cannot normalize the zero vector")
        return cls(a0 / norm, a1 / norm)

    def as_array(self) -> np.ndarray:
        """Amplitudes as a length-2 complex numpy array."""
        return np.array([self.a0, self.a1], dtype=complex)


@dataclass(frozen=True)
class Basis2:
    """Orthonormal ket pair representing one two-outcome question."""

    plus: Ket2
    minus: Ket2

    def __post_init__(self):
        overlap = abs(inner(self.plus, self.minus))
        if overlap > ATOL:
            raise DomainError(f"basis kets must be orthogonal, |<plus|minus>| = {overlap!r}")


@dataclass(frozen=True, eq=False)
class Observable2:
    """Hermitian 2x2 matrix representing a yes/no question.

    Only Hermiticity is enforced here; matrices built through
    :func:`observable_from_basis` additionally square to the identity and
    have eigenvalues +1 and -1.
    """

    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"observable must be 2x2, got shape {m.shape}")
        if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
            raise DomainError("observable entries must be finite")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=ATOL):
            raise DomainError("observable must equal its conjugate transpose")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)


def inner(bra: Ket2, ket: Ket2) -> complex:
    """Inner product <bra|ket>; the bra side is conjugated."""
    return bra.a0.conjugate() * ket.a0 + bra.a1.conjugate() * ket.a1


def same_up_to_phase(x: Ket2, y: Ket2, atol: float = ATOL) -> bool:
    """True when the kets differ only by a global phase factor."""
    return abs(abs(inner(x, y)) - 1.0) <= atol


def prob_projection(state: Ket2, onto: Ket2) -> float:
    """Probability of observing ``onto`` when measuring ``state``.

    Returns |<onto|state>|^2 clamped to [0, 1] against float round-off.
    """
    p = abs(inner(onto, state)) ** 2
    return min(max(p, 0.0), 1.0)


def collapse(state: Ket2, onto: Ket2) -> Ket2:
    """Post-measurement state after observing ``onto``.

    The result equals ``onto`` up to the global phase inherited from the
    projection amplitude.  Raises :class:`ZeroProbabilityCollapse` when the
    outcome probability does not exceed ``COLLAPSE_MIN_PROB``.
    """
    amp = inner(onto, state)
    p = abs(amp) ** 2
    if p <= COLLAPSE_MIN_PROB:
        raise ZeroProbabilityCollapse(
            f"outcome probability {p!r} too small to collapse onto"
        )
    phase = amp / abs(amp)
    return Ket2(phase * onto.a0, phase * onto.a1)


def sequential_prob(state: Ket2, chain: Sequence[Ket2]) -> float:
    """Probability that every outcome in ``chain`` is observed in order.

    The first link projects ``state`` onto ``chain[0]``, each further link
    projects the previous outcome ket onto the next one, and the link
    probabilities multiply.  Zero is a legal return (orthogonal links).
    """
    if not chain:
        raise DomainError("chain must contain at least one ket")
    prob = 1.0
    previous = state
    for ket in chain:
        prob *= prob_projection(previous, ket)
        previous = ket
    return prob


def projector(ket: Ket2) -> np.ndarray:
    """Rank-1 projector |k><k| as a 2x2 complex matrix.

    The result is Hermitian and idempotent.
    """
    v = ket.as_array()
    return np.outer(v, v.conj())


def observable_from_basis(basis: Basis2) -> Observable2:
    """Spectral observable |plus><plus| - |minus><minus|.

    Assigns +1 to the ``plus`` outcome and -1 to ``minus``; the result
    squares to the identity.
    """
    return Observable2(projector(basis.plus) - projector(basis.minus))


def commutator(a: Observable2, b: Observable2) -> np.ndarray:
    """AB - BA as a 2x2 complex matrix.

    Anti-Hermitian by construction; the zero matrix iff the two questions
    are compatible.
    """
    return a.m @ b.m - b.m @ a.m


def change_of_basis(a: float, b: float, c: float, d: float) -> tuple[Ket2, Ket2]:
    """Express one real orthonormal basis in terms of another.

    A state with coordinates (a, b) in basis {|A>, |B>} and (c, d) in basis
    {|C>, |D>} fixes the second basis in terms of the first:

        |C> = (ac + bd)|A> + (bc - ad)|B>
        |D> = (ad - bc)|A> + (ac + bd)|B>

    Only the real-coefficient case is supported; complex bases are built
    explicitly by the model module.  Returns (|C>, |D>), an orthonormal
    pair expressed in {|A>, |B>} coordinates.
    """
    for label, (x, y) in (("(a, b)", (a, b)), ("(c, d)", (c, d))):
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DomainError(f"{label} must be finite")
        norm_sq = x * x + y * y
        if abs(norm_sq - 1.0) > ATOL:
            raise DomainError(f"{label} must be normalized, got squared norm {norm_sq!r}")
    first = Ket2(a * c + b * d, b * c - a * d)
    second = Ket2(a * d - b * c, a * c + b * d)
    return first, second
