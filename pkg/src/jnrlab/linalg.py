"""Dense complex linear algebra: Hermitian eigendecomposition, Hermitian/skew
splitting, and commutator/normality defect norms.

The eigensolver runs on the kernel backend selected in ``jnrlab._kernels``
(compiled extension when built, numpy fallback otherwise).  Eigenvalues come
back sorted descending; eigenvector columns carry a fixed phase convention
(first component above 1e-8 of the column's max modulus is made real
positive) so downstream certificates are reproducible.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._util import frob
from .errors import DimensionMismatch, NoConvergence, NonSquare, NotHermitian

HERMITICITY_RTOL = 1e-12
_PHASE_FLOOR = 1e-8


def as_square_matrix(a):
    """Validate and return a square complex128 array (finite entries only)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted non-increasing with unitary column eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self):
        return self.values.size


def _fix_phases(v):
    n = v.shape[0]
    for j in range(v.shape[1]):
        col = v[:, j]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        idx = 0
        for i in range(n):
            if mags[i] > _PHASE_FLOOR * top:
                idx = i
                break
        ph = col[idx] / mags[idx]
        v[:, j] = col * np.conj(ph)
    return v


def hermitian_eigh(h, tol=HERMITICITY_RTOL):
    """Full eigendecomposition of a Hermitian matrix.

    The input is checked against ``tol`` (relative Frobenius asymmetry) and
    then symmetrized to kill rounding drift before factorization.
    """
    m = as_square_matrix(h)
    scale = frob(m)
    if scale > 0.0 and frob(m - m.conj().T) > tol * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    ms = 0.5 * (m + m.conj().T)
    status, w, v = _kernels.eigh_raw(ms)
    if status:
        raise NoConvergence("QL iteration budget exhausted")
    order = np.argsort(-w, kind="stable")
    w = np.ascontiguousarray(w[order])
    v = np.ascontiguousarray(v[:, order])
    _fix_phases(v)
    w.flags.writeable = False
    v.flags.writeable = False
    return EigenDecomposition(w, v)


def split_hermitian(a):
    """A = H + iG with H, G Hermitian: H = (A+A*)/2, G = (A-A*)/(2i)."""
    m = as_square_matrix(a)
    h = 0.5 * (m + m.conj().T)
    g = (m - m.conj().T) / 2j
    return h, g


def algebra_defects(mats):
    """Commutator and normality defect norms for a tuple of square matrices.

    Returns (commutators, normality): commutators[i][j] = ||A_i A_j - A_j A_i||_F
    (symmetric, zero diagonal) and normality[j] = ||A_j* A_j - A_j A_j*||_F.
    """
    ms = [as_square_matrix(a) for a in mats]
    if not ms:
        raise DimensionMismatch("empty tuple")
    n = ms[0].shape[0]
    for a in ms:
        if a.shape[0] != n:
            raise DimensionMismatch("all matrices must share one dimension")
    m = len(ms)
    comm = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            comm[i, j] = comm[j, i] = frob(ms[i] @ ms[j] - ms[j] @ ms[i])
    normality = np.array([frob(a.conj().T @ a - a @ a.conj().T) for a in ms])
    return comm, normality
