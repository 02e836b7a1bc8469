"""Dense complex-matrix kernel.

Every operator in this package (observables, density matrices, channels,
evolution operators, metric matrices) is a small dense complex matrix.
This module wraps the handful of primitives everything else consumes,
with explicit shape errors and finiteness checks on construction.

Dimensions stay tiny (a few dozen at most), so everything is dense
``numpy.complex128``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_complex_matrix",
    "mul",
    "adjoint",
    "commutator",
    "frobenius_norm",
    "approx_eq",
]


def as_complex_matrix(data) -> np.ndarray:
    """Coerce ``data`` to a 2-d complex128 array, rejecting NaN/Inf entries."""
    mat = np.asarray(data, dtype=np.complex128)
    if mat.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got array of shape {mat.shape}")
    if mat.shape[0] < 1 or mat.shape[1] < 1:
        raise ValueError(f"matrix dimensions must be positive, got shape {mat.shape}")
    # isfinite on complex checks both components in one pass
    if not np.isfinite(mat).all():
        raise ValueError("matrix entries must be finite (no NaN or Inf)")
    return mat


def mul(a, b) -> np.ndarray:
    """Matrix product a @ b."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex_matrix(a).conj().T


def commutator(a, b) -> np.ndarray:
    """a @ b - b @ a for square matrices of equal dimension."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise ValueError(f"commutator needs square matrices, got {a.shape} and {b.shape}")
    if a.shape != b.shape:
        raise ValueError(f"commutator needs equal dimensions, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def frobenius_norm(a) -> float:
    """Square root of the sum of squared entry moduli."""
    return float(np.linalg.norm(as_complex_matrix(a)))


def approx_eq(a, b, tol: float) -> bool:
    """True iff the Frobenius norm of (a - b) is at most ``tol``."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"cannot compare shapes {a.shape} and {b.shape}")
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    return float(np.linalg.norm(a - b)) <= tol
