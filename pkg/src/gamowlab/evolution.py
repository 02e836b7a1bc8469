"""Time evolution operators on the Gamow sector and their Heisenberg action.

Three operator variants are built from the resonance poles z_j:

* ``SEMIGROUP_D``: sum_j e^{-i t z_j} |D_j)(G_j| -- acts on the decaying
  sector only; singular (zero on the growing slots), a one-sided
  semigroup for t >= 0.
* ``INVERTIBLE``: diagonal (e^{-i t z_j}, e^{-i t z_j^*}) -- the
  exponential of the full pseudo-Hermitian Hamiltonian. It satisfies
  U(t) U(-t) = I, but conjugating an observable with it produces terms
  growing like e^{+t Gamma} (see ``growth_witness`` in the commutator
  module), which is why it is kept only as a counterexample.
* ``HERMITIAN``: diagonal (e^{-i t z_j}, e^{+i t z_j^*}) -- both entries
  have modulus e^{-t Gamma_j / 2} for t >= 0, so conjugation damps every
  observable entry. This is the default workhorse for commutator decay.

Heisenberg conjugation per variant: INVERTIBLE uses U(t) O U(-t);
HERMITIAN uses U(t) O U(t) (the operator equals its own pseudo-adjoint,
A U^dag A = U); SEMIGROUP_D has no canonical conjugation rule, so
U(t) O U(t)^dag is provided with a RuntimeWarning -- treat its results
as an extrapolation, not a prescription.

Time is in inverse-energy units with hbar = 1, so widths are inverse
lifetimes. Negative t is always computed; ``taqm_validity`` tells you
whether a semigroup domain covers it (decaying vectors propagate
forward, growing vectors backward, with the usual sign conversion
mapping the growing rule onto forward time).
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cmatrix import as_complex_matrix
from .gamow import GamowSpace, basis_index

__all__ = [
    "EvolutionVariant",
    "HamiltonianKind",
    "GamowHamiltonian",
    "EvolutionOperator",
    "TaqmValidity",
    "VariantError",
    "hamiltonian",
    "evolution_operator",
    "inverse",
    "hermitian_square_law",
    "heisenberg_evolve",
    "taqm_validity",
    "semigroup_via_roots",
    "full_hermitian_via_roots",
]


class VariantError(ValueError):
    """Raised when an operation is undefined for an evolution variant."""


class EvolutionVariant(enum.Enum):
    SEMIGROUP_D = "semigroup_d"
    INVERTIBLE = "invertible"
    HERMITIAN = "hermitian"


class HamiltonianKind(enum.Enum):
    #: z_j on the decaying slots, 0 on the growing slots.
    EFFECTIVE = "effective"
    #: z_j on the decaying slots, z_j^* on the growing slots (pseudo-Hermitian).
    FULL_HERMITIAN = "full_hermitian"


@dataclass(frozen=True)
class GamowHamiltonian:
    space: GamowSpace
    kind: HamiltonianKind
    mat: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class EvolutionOperator:
    space: GamowSpace
    t: float
    variant: EvolutionVariant
    mat: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class TaqmValidity:
    """Semigroup-domain flags for a Gamow vector kind at time t.

    ``valid`` is the raw rule (decaying: t >= 0, growing: t <= 0);
    ``valid_converted`` applies the sign conversion that re-expresses the
    growing rule as a forward evolution, so both kinds are converted-valid
    exactly when t >= 0.
    """

    kind: str
    t: float
    valid: bool
    valid_converted: bool


def hamiltonian(space: GamowSpace, kind: HamiltonianKind) -> GamowHamiltonian:
    """Diagonal Hamiltonian on the Gamow sector, per ``kind``."""
    kind = HamiltonianKind(kind)
    diag = np.zeros(space.dim, dtype=complex)
    for j, res in enumerate(space.resonances, start=1):
        diag[basis_index(space, j, "D")] = res.pole
        if kind is HamiltonianKind.FULL_HERMITIAN:
            diag[basis_index(space, j, "G")] = res.conjugate_pole
    return GamowHamiltonian(space=space, kind=kind, mat=np.diag(diag))


def evolution_operator(space: GamowSpace, t: float, variant: EvolutionVariant) -> EvolutionOperator:
    """Evolution operator at time ``t`` for the given variant."""
    variant = EvolutionVariant(variant)
    if not np.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    diag = np.zeros(space.dim, dtype=complex)
    for j, res in enumerate(space.resonances, start=1):
        z = res.pole
        diag[basis_index(space, j, "D")] = np.exp(-1j * t * z)
        if variant is EvolutionVariant.INVERTIBLE:
            diag[basis_index(space, j, "G")] = np.exp(-1j * t * np.conj(z))
        elif variant is EvolutionVariant.HERMITIAN:
            diag[basis_index(space, j, "G")] = np.exp(+1j * t * np.conj(z))
    return EvolutionOperator(space=space, t=float(t), variant=variant, mat=np.diag(diag))


def inverse(op: EvolutionOperator) -> EvolutionOperator:
    """U(t)^-1 = U(-t), defined for the INVERTIBLE variant only.

    The SEMIGROUP_D operator is singular; the HERMITIAN operator has a
    matrix inverse, but it is not U(-t), so treating it as a group
    element would be misleading.
    """
    if op.variant is not EvolutionVariant.INVERTIBLE:
        raise VariantError(f"inverse is only defined for INVERTIBLE, got {op.variant.name}")
    return evolution_operator(op.space, -op.t, EvolutionVariant.INVERTIBLE)


def hermitian_square_law(space: GamowSpace, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Return (U(t) @ U(t), D(t)) for the HERMITIAN variant.

    D(t) is the predicted decay envelope: diagonal with e^{-t Gamma_j} on
    both slots of resonance j (for a single resonance, e^{-t Gamma} times
    the identity). The squared operator equals D(t) exactly when every
    resonance energy is zero; otherwise its diagonal carries the extra
    phases e^{-2 i t E_j} / e^{+2 i t E_j} and only the entry moduli
    follow D(t).
    """
    u = evolution_operator(space, t, EvolutionVariant.HERMITIAN).mat
    envelope = np.zeros(space.dim)
    for j, res in enumerate(space.resonances, start=1):
        envelope[basis_index(space, j, "D")] = np.exp(-t * res.width)
        envelope[basis_index(space, j, "G")] = np.exp(-t * res.width)
    return u @ u, np.diag(envelope).astype(complex)


def heisenberg_evolve(op: EvolutionOperator, obs) -> np.ndarray:
    """Conjugate an observable with the evolution operator, per variant."""
    obs = as_complex_matrix(obs)
    dim = op.space.dim
    if obs.shape != (dim, dim):
        raise ValueError(f"observable shape {obs.shape} does not match space dimension {dim}")
    if op.variant is EvolutionVariant.INVERTIBLE:
        u_minus = evolution_operator(op.space, -op.t, EvolutionVariant.INVERTIBLE).mat
        return op.mat @ obs @ u_minus
    if op.variant is EvolutionVariant.HERMITIAN:
        return op.mat @ obs @ op.mat
    warnings.warn(
        "SEMIGROUP_D has no canonical Heisenberg conjugation; using U O U^dag as an "
        "extrapolation",
        RuntimeWarning,
        stacklevel=2,
    )
    return op.mat @ obs @ op.mat.conj().T


def taqm_validity(kind: str, t: float) -> TaqmValidity:
    """Semigroup-domain flags for a decaying ('D') or growing ('G') vector."""
    k = kind.upper() if isinstance(kind, str) else kind
    if k not in ("D", "G"):
        raise ValueError(f"kind must be 'D' or 'G', got {kind!r}")
    if k == "D":
        return TaqmValidity(kind=k, t=t, valid=t >= 0, valid_converted=t >= 0)
    return TaqmValidity(kind=k, t=t, valid=t <= 0, valid_converted=t >= 0)


def _plain_dyad_decaying(space: GamowSpace, j: int) -> np.ndarray:
    """Coordinate matrix of the plain-bracket dyad |psi_j^D><psi_j^G|.

    The root transport B |psi_j^D> = |psi_j^D) (with the matching bra
    rule) realizes this dyad as C E C, E being the unit matrix at the D
    diagonal slot, so that B (C E C) B collapses onto the round dyad.
    """
    e = np.zeros((space.dim, space.dim), dtype=complex)
    idx = basis_index(space, j, "D")
    e[idx, idx] = 1.0
    return space.root_c @ e @ space.root_c


def _plain_dyad_growing(space: GamowSpace, j: int) -> np.ndarray:
    """Coordinate matrix of |psi_j^G><psi_j^D|, realized as B E B.

    Mirror of :func:`_plain_dyad_decaying`: the transport
    |psi_j^G) = C |psi_j^G> makes C (B E B) C collapse onto the round
    dyad at the G diagonal slot.
    """
    e = np.zeros((space.dim, space.dim), dtype=complex)
    idx = basis_index(space, j, "G")
    e[idx, idx] = 1.0
    return space.root_b @ e @ space.root_b


def semigroup_via_roots(space: GamowSpace, t: float) -> np.ndarray:
    """Rebuild the SEMIGROUP_D operator by sandwiching with the metric roots.

    Computes B [ sum_j e^{-i t z_j} |D_j><G_j| ] B with the plain dyads
    realized through the root transport. Exercises B C = C B = I through
    the tiled complex arithmetic; agrees with
    ``evolution_operator(space, t, SEMIGROUP_D)`` to roundoff.
    """
    inner = np.zeros((space.dim, space.dim), dtype=complex)
    for j, res in enumerate(space.resonances, start=1):
        inner += np.exp(-1j * t * res.pole) * _plain_dyad_decaying(space, j)
    return space.root_b @ inner @ space.root_b


def full_hermitian_via_roots(space: GamowSpace) -> np.ndarray:
    """Rebuild the FULL_HERMITIAN Hamiltonian from the two root sandwiches.

    B [ sum_j z_j |D_j><G_j| ] B + C [ sum_j z_j^* |G_j><D_j| ] C with the
    plain dyads realized through the root transport. Agrees with
    ``hamiltonian(space, FULL_HERMITIAN)`` to roundoff; the residual is a
    consistency measure of the constructed roots, not a tolerance knob.
    """
    first = np.zeros((space.dim, space.dim), dtype=complex)
    second = np.zeros((space.dim, space.dim), dtype=complex)
    for j, res in enumerate(space.resonances, start=1):
        first += res.pole * _plain_dyad_decaying(space, j)
        second += np.conj(res.pole) * _plain_dyad_growing(space, j)
    return space.root_b @ first @ space.root_b + space.root_c @ second @ space.root_c
