"""Shared random factories and fixed matrices for the test suite."""

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

P_ZERO = np.array([[1, 0], [0, 0]], dtype=complex)
P_PLUS = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
P_MINUS = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)


def random_complex(rng, shape, scale=1.0):
    return scale * (rng.normal(size=shape) + 1j * rng.normal(size=shape))


def random_hermitian(rng, dim, scale=1.0):
    m = random_complex(rng, (dim, dim), scale)
    return (m + m.conj().T) / 2.0


def random_density(rng, dim):
    g = random_complex(rng, (dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_unitary(rng, dim):
    q, r = np.linalg.qr(random_complex(rng, (dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_kraus_family(rng, dim, n_ops=2):
    """A random completeness-normalized Kraus family."""
    raw = [random_complex(rng, (dim, dim)) for _ in range(n_ops)]
    total = sum(g.conj().T @ g for g in raw)
    vals, vecs = np.linalg.eigh(total)
    inv_half = vecs @ np.diag(vals**-0.5) @ vecs.conj().T
    return [g @ inv_half for g in raw]


def random_projector(rng, dim, rank=None):
    if rank is None:
        rank = int(rng.integers(1, dim))
    u = random_unitary(rng, dim)
    cols = u[:, :rank]
    return cols @ cols.conj().T


def block_xy_pair(rng, n_res):
    """Per-resonance real combinations of sigma_x and sigma_y.

    The commutator of two such observables is diagonal in every 2x2
    block, so the evolved commutator stays diagonal for any energies.
    """
    dim = 2 * n_res
    o1 = np.zeros((dim, dim), dtype=complex)
    o2 = np.zeros((dim, dim), dtype=complex)
    for j in range(n_res):
        a, b, c, d = rng.normal(size=4)
        sl = slice(2 * j, 2 * j + 2)
        o1[sl, sl] = a * SIGMA_X + b * SIGMA_Y
        o2[sl, sl] = c * SIGMA_X + d * SIGMA_Y
    return o1, o2
