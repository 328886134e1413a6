"""Core evaluation of joint k-numerical ranges of Hermitian tuples.

The support function of the closed convex hull in direction u is the sum of
the k largest eigenvalues of A_u = sum_j u_j A_j; the projection onto the
top-k eigenspace realizes a boundary point.  Inner points come from Haar
random isometries X via (tr X*A_1 X, ..., tr X*A_m X).
"""

from dataclasses import dataclass

import numpy as np

from ._util import normalize, pmap, rng_stream, unit_directions
from .errors import KOutOfRange
from .linalg import hermitian_eigh
from .model import HermitianTuple, RangePoint

GAP_TOL_REL = 1e-8
_TIEBREAK_EPS = 1e-6


@dataclass(frozen=True)
class SupportSample:
    """One support-function evaluation: direction, value, optional witness."""

    u: np.ndarray
    value: float
    point: RangePoint = None
    gap: float = np.inf
    face_dim: int = 0


@dataclass(frozen=True)
class InnerCloud:
    """Reproducible batch of inner points (isometry traces + boundary mix)."""

    k: int
    points: np.ndarray
    seed: int

    def range_points(self):
        return [RangePoint(p, "inner-sample") for p in self.points]


def _as_hermitian(tup):
    if not isinstance(tup, HermitianTuple):
        raise TypeError("range engine operates on HermitianTuple (use real_form)")
    return tup


def _check_k(tup, k):
    if not 1 <= k <= tup.dim:
        raise KOutOfRange(f"k={k} outside 1..{tup.dim}")


def direction_matrix(tup, u):
    return np.tensordot(np.asarray(u, dtype=float), tup.stack(), axes=1)


def _tiebreak_direction(u):
    d = u.size
    t = np.ones(d) / np.sqrt(d)
    if abs(float(t @ u)) > 1.0 - 1e-9:
        t = np.zeros(d)
        t[: (d + 1) // 2] = 1.0
        t[(d + 1) // 2 :] = -1.0
        if np.linalg.norm(t) == 0.0:
            t = np.zeros(d)
            t[0] = 1.0
        t /= np.linalg.norm(t)
    return t


def _trace_point(tup, cols):
    """(tr A_1 P, ..., tr A_m P) for P the projector onto the given columns."""
    return np.array(
        [float(np.real(np.sum(cols.conj() * (a @ cols)))) for a in tup.mats]
    )


def support_value(tup, k, u, gap_tol=None):
    """Support sample in direction u: value = sum of k largest eigs of A_u.

    The spectral gap at position k is reported (infinite when k = dim); a
    boundary point is attached only for clean gaps, the degenerate case being
    handled by boundary_face.
    """
    tup = _as_hermitian(tup)
    _check_k(tup, k)
    u = normalize(u)
    if gap_tol is None:
        gap_tol = GAP_TOL_REL * tup.scale
    eig = hermitian_eigh(direction_matrix(tup, u))
    w = eig.values
    value = float(np.sum(w[:k]))
    gap = float(w[k - 1] - w[k]) if k < tup.dim else np.inf
    point = None
    if gap > gap_tol:
        point = RangePoint(_trace_point(tup, eig.vectors[:, :k]), "boundary")
    return SupportSample(u=u, value=value, point=point, gap=gap, face_dim=0)


def boundary_face(tup, k, u, gap_tol=None):
    """Boundary point in direction u, with degenerate faces resolved.

    When the k-th spectral gap of A_u is below gap_tol the direction exposes
    a face of positive dimension; a deterministic perturbed direction picks
    one exposed representative from inside the tied eigenspace, so the
    returned point still attains the support value.
    """
    tup = _as_hermitian(tup)
    _check_k(tup, k)
    u = normalize(u)
    scale = tup.scale
    if gap_tol is None:
        gap_tol = GAP_TOL_REL * scale
    eig = hermitian_eigh(direction_matrix(tup, u))
    w, v = eig.values, eig.vectors
    n = tup.dim
    value = float(np.sum(w[:k]))
    gap = float(w[k - 1] - w[k]) if k < n else np.inf
    if gap > gap_tol:
        return SupportSample(
            u=u,
            value=value,
            point=RangePoint(_trace_point(tup, v[:, :k]), "boundary"),
            gap=gap,
            face_dim=0,
        )
    # tied cluster straddling position k: eigenvalues within gap_tol of w[k-1]
    lo = k - 1
    while lo > 0 and w[lo - 1] - w[k - 1] <= gap_tol:
        lo -= 1
    hi = k
    while hi < n and w[k - 1] - w[hi] <= gap_tol:
        hi += 1
    need = k - lo
    cluster = v[:, lo:hi]
    face_dim = (hi - lo) - need
    # split the tie with a perturbed direction, restricted to the cluster
    upert = normalize(u + _TIEBREAK_EPS * _tiebreak_direction(u))
    b = direction_matrix(tup, upert)
    compressed = cluster.conj().T @ b @ cluster
    sub = hermitian_eigh(compressed)
    chosen = np.hstack([v[:, :lo], cluster @ sub.vectors[:, :need]])
    return SupportSample(
        u=u,
        value=value,
        point=RangePoint(_trace_point(tup, chosen), "boundary"),
        gap=gap,
        face_dim=face_dim,
    )


def support_sweep(tup, k, directions, gap_tol=None, with_points=False):
    """Support samples over a direction set (parallel over directions)."""
    fn = boundary_face if with_points else support_value
    return pmap(lambda u: fn(tup, k, u, gap_tol), list(np.atleast_2d(directions)))


def haar_isometry(n, k, rng):
    """Haar-distributed isometry C^k -> C^n via QR with phase normalization."""
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r).copy()
    diag[diag == 0] = 1.0
    return q * (diag / np.abs(diag))[None, :]


def sample_inner(tup, k, count, seed=0):
    """Inner cloud: Haar isometry traces, with count//10 boundary points mixed in.

    Boundary directions are drawn from the same seed so extreme regions are
    represented; every point is reproducible from (tuple, k, count, seed).
    """
    tup = _as_hermitian(tup)
    _check_k(tup, k)
    n, d = tup.dim, tup.m
    n_boundary = count // 10
    n_haar = count - n_boundary

    def draw(i):
        x = haar_isometry(n, k, rng_stream(seed, 0x15, i))
        return _trace_point(tup, x)

    pts = pmap(draw, range(n_haar))
    if n_boundary:
        rng = rng_stream(seed, 0xB0)
        dirs = rng.standard_normal((n_boundary, d))
        nrm = np.linalg.norm(dirs, axis=1)
        nrm[nrm == 0] = 1.0
        dirs /= nrm[:, None]
        samples = support_sweep(tup, k, dirs, with_points=True)
        pts.extend(s.point.coords for s in samples)
    arr = np.array(pts) if pts else np.zeros((0, d))
    arr.flags.writeable = False
    return InnerCloud(k=k, points=arr, seed=seed)


def outer_polytope(tup, k, directions, gap_tol=None):
    """One half-space {x : <u, x> <= h_k(u)} per direction; returns (U, h)."""
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    if dirs.shape[0] == 0:
        raise ValueError("need at least one direction")
    samples = support_sweep(tup, k, dirs, gap_tol=gap_tol)
    u_mat = np.vstack([s.u for s in samples])
    h = np.array([s.value for s in samples])
    return u_mat, h


def default_directions(d, count, seed=0):
    """Direction set sized for sweeps in d real coordinates."""
    if d == 1:
        return unit_directions(1, min(count, 2), seed)
    return unit_directions(d, count, seed)
