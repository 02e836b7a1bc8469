"""Quantum operations in the Schrodinger and Heisenberg pictures.

A channel is a finite Kraus family {E_mu} with the completeness property
sum_mu E_mu^dag E_mu = I (trace preservation of the Schrodinger map).
Its Heisenberg dual

    O  ->  sum_mu E_mu^dag O E_mu

preserves every mean value Tr(rho(t) O) = Tr(rho_0 O(t)).

The amplitude damping channel on a qubit,

    E0 = [[1, 0       ],      E1 = [[0, sqrt(p)],
          [0, sqrt(1-p)]],          [0, 0      ]],

is the worked example of a commutation process: iterating its dual sends
every observable to a multiple of the identity, so any initially
non-commuting family becomes commuting in the limit.

The per-step probability p and the iteration count n are the primitive
parameters here; no relation between p and a physical interval tau is
imposed (calibrating p against a decay time is left to the caller).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cmatrix import as_complex_matrix, frobenius_norm

__all__ = [
    "KrausChannel",
    "DensityMatrix",
    "jacobi_eigenvalues",
    "damping_channel",
    "apply_schrodinger",
    "apply_heisenberg",
    "iterate_heisenberg",
    "damping_closed_form",
    "damping_limit",
]

COMPLETENESS_TOL = 1e-12
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10

# Symmetrization threshold for Heisenberg outputs of Hermitian inputs.
_HERMITIAN_DRIFT_TOL = 1e-14


def _antihermitian_gap(m: np.ndarray) -> float:
    """max |m - m^dag| entrywise; scalar arithmetic for the 2x2 hot path."""
    if m.shape == (2, 2):
        return max(
            abs(m[0, 1] - m[1, 0].conjugate()),
            2.0 * abs(m[0, 0].imag),
            2.0 * abs(m[1, 1].imag),
        )
    return float(np.abs(m - m.conj().T).max())


def _entry_scale(m: np.ndarray) -> float:
    if m.shape == (2, 2):
        return max(1.0, abs(m[0, 0]), abs(m[0, 1]), abs(m[1, 0]), abs(m[1, 1]))
    return max(1.0, float(np.abs(m).max()))


def jacobi_eigenvalues(mat, tol: float = 1e-14, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by the cyclic Jacobi method.

    Sweeps over all off-diagonal pairs, annihilating each with a complex
    plane rotation, until the off-diagonal mass drops below ``tol`` times
    the matrix scale. Returns the eigenvalues in ascending order.
    """
    h = as_complex_matrix(mat).copy()
    n = h.shape[0]
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"eigenvalues need a square matrix, got {h.shape}")
    if frobenius_norm(h - h.conj().T) > 1e-10 * max(1.0, frobenius_norm(h)):
        raise ValueError("jacobi_eigenvalues expects a Hermitian matrix")
    scale = max(1.0, float(np.abs(h).max()))
    for _ in range(max_sweeps):
        off = np.sqrt(max(0.0, float(np.sum(np.abs(h) ** 2) - np.sum(np.abs(np.diag(h)) ** 2))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                m = abs(apq)
                if m <= 0.25 * tol * scale / max(1, n):
                    continue
                phase = apq / m
                app = h[p, p].real
                aqq = h[q, q].real
                tau = (aqq - app) / (2.0 * m)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J restricted to (p, q): [[c, s], [-s/phase, c/phase]]
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                h[:, [p, q]] = h[:, [p, q]] @ rot
                h[[p, q], :] = rot.conj().T @ h[[p, q], :]
    return np.sort(np.diag(h).real)


@dataclass(frozen=True)
class KrausChannel:
    """A finite Kraus family on a d-dimensional system.

    Attributes:
        dim: Hilbert-space dimension d.
        kraus: tuple of d x d complex matrices E_mu.
    """

    dim: int
    kraus: tuple[np.ndarray, ...]
    kraus_adjoints: tuple[np.ndarray, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"channel dimension must be positive, got {self.dim}")
        if len(self.kraus) == 0:
            raise ValueError("a channel needs at least one Kraus operator")
        ops = tuple(as_complex_matrix(k) for k in self.kraus)
        for k in ops:
            if k.shape != (self.dim, self.dim):
                raise ValueError(
                    f"Kraus operator of shape {k.shape} does not match dimension {self.dim}"
                )
        adjoints = tuple(k.conj().T for k in ops)
        total = sum(a @ k for a, k in zip(adjoints, ops))
        defect = frobenius_norm(total - np.eye(self.dim))
        if defect > COMPLETENESS_TOL:
            raise ValueError(
                f"Kraus operators are not complete: sum E^dag E deviates from the identity "
                f"by {defect:.3e}"
            )
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "kraus_adjoints", adjoints)


@dataclass(frozen=True)
class DensityMatrix:
    """A quantum state: Hermitian, unit trace, nonnegative spectrum.

    The eigenvalue floor is checked on the Hermitian part with the cyclic
    Jacobi method (see :func:`jacobi_eigenvalues`), tolerating -1e-10 of
    numerical leakage.
    """

    mat: np.ndarray

    def __post_init__(self) -> None:
        m = as_complex_matrix(self.mat)
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got {m.shape}")
        if frobenius_norm(m - m.conj().T) > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian to 1e-12")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {np.trace(m):.6g}, expected 1")
        herm = (m + m.conj().T) / 2.0
        smallest = jacobi_eigenvalues(herm)[0]
        if smallest < EIGENVALUE_FLOOR:
            raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def damping_channel(p: float) -> KrausChannel:
    """Amplitude damping channel with decay probability ``p``.

    E0 = [[1, 0], [0, sqrt(1-p)]], E1 = [[0, sqrt(p)], [0, 0]].
    p = 0 gives the identity channel.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {p}")
    e0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=complex)
    e1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]], dtype=complex)
    return KrausChannel(dim=2, kraus=(e0, e1))


def apply_schrodinger(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Schrodinger-picture action: sum_mu E_mu rho E_mu^dag."""
    if rho.dim != ch.dim:
        raise ValueError(f"state dimension {rho.dim} does not match channel dimension {ch.dim}")
    out = sum(k @ rho.mat @ a for k, a in zip(ch.kraus, ch.kraus_adjoints))
    return DensityMatrix(out)


def apply_heisenberg(ch: KrausChannel, obs) -> np.ndarray:
    """Heisenberg dual action: sum_mu E_mu^dag obs E_mu.

    Maps Hermitian inputs to Hermitian outputs; roundoff drift above
    1e-14 is removed by symmetrizing (O + O^dag)/2.
    """
    obs = as_complex_matrix(obs)
    if obs.shape != (ch.dim, ch.dim):
        raise ValueError(f"observable shape {obs.shape} does not match channel dimension {ch.dim}")
    out = ch.kraus_adjoints[0] @ obs @ ch.kraus[0]
    for k, a in zip(ch.kraus[1:], ch.kraus_adjoints[1:]):
        out = out + a @ obs @ k
    if _antihermitian_gap(obs) <= _HERMITIAN_DRIFT_TOL * _entry_scale(obs):
        if _antihermitian_gap(out) > _HERMITIAN_DRIFT_TOL:
            out = (out + out.conj().T) / 2.0
    return out


def iterate_heisenberg(ch: KrausChannel, obs, n: int) -> np.ndarray:
    """n-fold composition of the Heisenberg dual; n = 0 returns obs."""
    if n < 0:
        raise ValueError(f"iteration count must be nonnegative, got {n}")
    out = as_complex_matrix(obs)
    for _ in range(n):
        out = apply_heisenberg(ch, out)
    return out


def damping_closed_form(p: float, n: int, obs) -> np.ndarray:
    """Closed form of the n-fold damped Heisenberg evolution of a qubit observable.

    [[O00,               sqrt(1-p)^n O01                ],
     [sqrt(1-p)^n O10,   (1-p)^n O11 + O00 (1-(1-p)^n)  ]]
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError(f"iteration count must be nonnegative, got {n}")
    obs = as_complex_matrix(obs)
    if obs.shape != (2, 2):
        raise ValueError(f"closed form needs a 2x2 observable, got shape {obs.shape}")
    half = np.sqrt(1.0 - p) ** n
    full = (1.0 - p) ** n
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = obs[0, 0]
    out[0, 1] = half * obs[0, 1]
    out[1, 0] = half * obs[1, 0]
    out[1, 1] = full * obs[1, 1] + obs[0, 0] * (1.0 - full)
    return out


def damping_limit(obs) -> np.ndarray:
    """n -> infinity limit of the damped evolution: O00 times the identity.

    This is the limit for every p in (0, 1]; at p = 0 the channel is the
    identity map and nothing converges.
    """
    obs = as_complex_matrix(obs)
    if obs.shape != (2, 2):
        raise ValueError(f"damping limit needs a 2x2 observable, got shape {obs.shape}")
    return obs[0, 0] * np.eye(2, dtype=complex)
