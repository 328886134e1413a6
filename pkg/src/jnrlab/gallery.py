"""Named operator constructions used across tests, docs, and the CLI gallery.

Everything here is an explicit small matrix tuple or head-plus-tail spec with
a known range geometry (sphere, cone, triangle, square, window interval), so
they double as ground truth for the solvers.
"""

import numpy as np

from .model import (
    HermitianTuple,
    MatrixTuple,
    OperatorSpec,
    tail_constant,
    tail_cycle,
    tail_harmonic,
)

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def pauli_xyz():
    """(X, Y, Z): rank-1 joint range is the unit sphere in R^3."""
    return HermitianTuple((PAULI_X.copy(), PAULI_Y.copy(), PAULI_Z.copy()))


def pauli_xy():
    """(X, Y): rank-1 joint range is the closed unit disk."""
    return HermitianTuple((PAULI_X.copy(), PAULI_Y.copy()))


def _pad(block, total):
    z = np.zeros((total, total), dtype=complex)
    z[: block.shape[0], : block.shape[0]] = block
    return z


def sphere_slice_tuple(rank, pad):
    """Four Hermitian components whose rank-(rank+1) range is nonconvex.

    Pauli block padded by `pad` zeros plus a step diagonal with `rank` ones
    then minus ones: the slice of the rank-(rank+1) range at top step value
    is the unit sphere, so exactly that rank is nonconvex (for pad large
    enough that the complementary reflection stays out of the probed window).
    """
    if pad < rank:
        raise ValueError("need pad >= rank")
    n = 2 + pad
    step = np.zeros((n, n), dtype=complex)
    for i in range(rank):
        step[2 + i, 2 + i] = 1.0
    for i in range(2 + rank, n):
        step[i, i] = -1.0
    return HermitianTuple(
        (_pad(PAULI_X, n), _pad(PAULI_Y, n), _pad(PAULI_Z, n), step)
    )


def nonnormal_triangle_operator(copies):
    """Nilpotent 2x2 block plus `copies` cube-roots-of-unity diagonals.

    Not normal, yet every k-range up to `copies` is the triangle with
    vertices k, k*w, k*w^2 - geometry alone cannot certify normality.
    """
    w = np.exp(2j * np.pi / 3)
    diag = np.concatenate([[1.0, w, w * w] for _ in range(copies)])
    n = 2 + 3 * copies
    a = np.zeros((n, n), dtype=complex)
    a[0, 1] = 1.0
    a[2:, 2:] = np.diag(diag)
    return MatrixTuple((a,))


def square_range_spec():
    """Hermitian pair spec whose k-ranges are squares with vertices k(+-1, +-1).

    Head is the noncommuting (Z, X) block; the tails cycle through the four
    sign patterns, which dominate every support direction.
    """
    head = MatrixTuple((PAULI_Z.copy(), PAULI_X.copy()))
    return OperatorSpec(
        head=head,
        tails=(tail_cycle([1, 1, -1, -1]), tail_cycle([1, -1, 1, -1])),
        accumulation=[[1, 1], [1, -1], [-1, 1], [-1, -1]],
    )


def window_interval_spec(k):
    """I_k + 0_k head with a harmonic tail: W_k = [0, k], W_{k+1} = (0, k+1].

    The standard fixture for closure and attainment probes.
    """
    head = np.diag(np.concatenate([np.ones(k), np.zeros(k)])).astype(complex)
    return OperatorSpec(
        head=MatrixTuple((head,)),
        tails=(tail_harmonic(),),
        accumulation=[[0.0]],
    )


def zero_spec(m=1, dim=1):
    """All-zero head and tails; every range collapses to the origin."""
    head = MatrixTuple(tuple(np.zeros((dim, dim), dtype=complex) for _ in range(m)))
    return OperatorSpec(
        head=head,
        tails=tuple(tail_constant(0.0) for _ in range(m)),
        accumulation=[[0.0] * m],
    )


def commuting_normal_tuple(n, m, seed, hermitian=False):
    """Random commuting normal tuple: unitary conjugation of joint diagonals."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * (np.sign(np.diagonal(r).real) + (np.diagonal(r).real == 0))[None, :]
    mats = []
    for _ in range(m):
        if hermitian:
            d = rng.uniform(-1.0, 1.0, size=n)
        else:
            d = rng.uniform(-1.0, 1.0, size=n) + 1j * rng.uniform(-1.0, 1.0, size=n)
        mats.append(q @ np.diag(d) @ q.conj().T)
    return MatrixTuple(tuple(mats))
