"""Operator-tuple data model and transformation calculus.

Covers the bookkeeping every other module leans on: tuples of equal-size
square matrices, their Hermitian real form, affine reparametrizations and the
affine dimension of the tuple's span, block-diagonal direct sums, and the
"finite head plus declared diagonal tail" model of infinite operators with
its truncation and essential-point augmentation.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._util import frob
from .errors import (
    ComponentCountMismatch,
    EmptyAccumulation,
    ShapeMismatch,
    ValidationError,
)
from .linalg import HERMITICITY_RTOL, as_square_matrix

_RANK_CUTOFF = 1e-10


def _freeze(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class MatrixTuple:
    """An m-tuple of n x n complex matrices sharing one dimension."""

    mats: tuple
    labels: tuple = None

    def __post_init__(self):
        if len(self.mats) < 1:
            raise ComponentCountMismatch("tuple needs at least one component")
        ms = tuple(_freeze(np.array(as_square_matrix(a))) for a in self.mats)
        n = ms[0].shape[0]
        for a in ms:
            if a.shape[0] != n:
                raise ShapeMismatch("all components must share one dimension")
        object.__setattr__(self, "mats", ms)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(ms):
                raise ShapeMismatch("label count must match component count")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return self.mats[0].shape[0]

    @property
    def m(self):
        return len(self.mats)

    @property
    def scale(self):
        """max_j ||A_j||_F; the reference scale for relative tolerances."""
        return max(frob(a) for a in self.mats)

    def stack(self):
        return np.stack(self.mats)

    def traces(self):
        return np.array([np.trace(a) for a in self.mats])

    def is_hermitian(self, rtol=HERMITICITY_RTOL):
        return all(
            frob(a - a.conj().T) <= rtol * frob(a) if frob(a) > 0 else True
            for a in self.mats
        )


class HermitianTuple(MatrixTuple):
    """MatrixTuple whose components are Hermitian to 1e-12 relative.

    Components are symmetrized on construction so later arithmetic cannot
    drift; range points of such tuples live in real m-space.
    """

    def __post_init__(self):
        super().__post_init__()
        fixed = []
        for a in self.mats:
            nrm = frob(a)
            if nrm > 0 and frob(a - a.conj().T) > HERMITICITY_RTOL * nrm:
                raise ValidationError("component is not Hermitian within 1e-12")
            fixed.append(_freeze(0.5 * (a + a.conj().T)))
        object.__setattr__(self, "mats", tuple(fixed))


@dataclass(frozen=True)
class AffineMap:
    """x -> x T + k s on range points; tuples map by A_i -> sum T_ij A_i + s_j I."""

    T: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        t = np.atleast_2d(np.asarray(self.T))
        s = np.atleast_1d(np.asarray(self.s))
        if t.shape[1] != s.shape[0]:
            raise ShapeMismatch("T columns must match s length")
        object.__setattr__(self, "T", _freeze(t))
        object.__setattr__(self, "s", _freeze(s))


@dataclass(frozen=True)
class RangePoint:
    """A point of (or near) a joint range, with how it was obtained."""

    coords: np.ndarray
    provenance: str = "inner-sample"

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if not np.all(np.isfinite(c)):
            raise ValidationError("range point coordinates must be finite")
        object.__setattr__(self, "coords", _freeze(c))


def real_form(tup, compact=False):
    """Split A_j = H_j + iG_j and return the Hermitian tuple (H_1,G_1,...).

    With ``compact=True`` the zero G_j of components that are already
    Hermitian are dropped, so Hermitian tuples pass through unchanged.
    Returns (hermitian_tuple, coord_map) where coord_map[r] = (j, part) tells
    which complex coordinate (part 0 = Re, 1 = Im) the r-th real axis is.
    """
    comps = []
    coord_map = []
    for j, a in enumerate(tup.mats):
        h = 0.5 * (a + a.conj().T)
        g = (a - a.conj().T) / 2j
        comps.append(h)
        coord_map.append((j, 0))
        if compact and frob(g) <= HERMITICITY_RTOL * max(frob(a), 1e-300):
            continue
        comps.append(g)
        coord_map.append((j, 1))
    return HermitianTuple(tuple(comps)), tuple(coord_map)


def affine_push(tup, amap, k):
    """B_j = sum_i T_ij A_i + s_j I; returns the transformed tuple.

    The companion ``point_push`` sends sampled range points the same way, so
    the two commute with range computation.
    """
    t, s = amap.T, amap.s
    if t.shape[0] != tup.m:
        raise ShapeMismatch("T rows must match component count")
    del k  # the tuple map itself is k-independent; k enters in point_push
    n = tup.dim
    eye = np.eye(n)
    stack = tup.stack()
    out = []
    for j in range(t.shape[1]):
        b = np.tensordot(t[:, j], stack, axes=1) + s[j] * eye
        out.append(b)
    return MatrixTuple(tuple(out))


def point_push(point, amap, k):
    """Range-point image under the affine map: p T + k s (real coordinates)."""
    p = np.asarray(point.coords if isinstance(point, RangePoint) else point, dtype=float)
    t = amap.T
    if np.iscomplexobj(t) or np.iscomplexobj(amap.s):
        raise ShapeMismatch("point_push needs a real-coordinate affine map")
    if p.shape[0] != t.shape[0]:
        raise ShapeMismatch("point length must match T rows")
    coords = p @ t + k * np.asarray(amap.s, dtype=float)
    prov = point.provenance if isinstance(point, RangePoint) else "formula"
    return RangePoint(coords, prov)


def _hermitian_to_real_vector(h):
    """Isometric real embedding of a Hermitian matrix (trace inner product)."""
    n = h.shape[0]
    parts = [h.diagonal().real]
    iu = np.triu_indices(n, k=1)
    if iu[0].size:
        parts.append(math.sqrt(2.0) * h[iu].real)
        parts.append(math.sqrt(2.0) * h[iu].imag)
    return np.concatenate(parts)


def _real_vector_to_hermitian(vec, n):
    h = np.zeros((n, n), dtype=complex)
    h[np.diag_indices(n)] = vec[:n]
    iu = np.triu_indices(n, k=1)
    m = iu[0].size
    if m:
        re = vec[n : n + m] / math.sqrt(2.0)
        im = vec[n + m : n + 2 * m] / math.sqrt(2.0)
        h[iu] = re + 1j * im
        h[(iu[1], iu[0])] = re - 1j * im
    return h


def affine_dimension(tup):
    """Affine dimension q of the tuple modulo scalars, with a reduced basis.

    Gram-Schmidt (via SVD) under the trace inner product on the real span of
    the traceless real-form components.  Returns (q, basis, amap) where basis
    is a HermitianTuple of q orthonormal traceless components and amap
    reconstructs the original tuple: A_j = sum_i T_ij C_i + s_j I.
    q = 0 iff every component is scalar; q = 1 iff the range is a segment.
    """
    n = tup.dim
    rows_h = []
    rows_g = []
    shifts = []
    for a in tup.mats:
        h = 0.5 * (a + a.conj().T)
        g = (a - a.conj().T) / 2j
        th = np.trace(h).real / n
        tg = np.trace(g).real / n
        shifts.append(th + 1j * tg)
        rows_h.append(_hermitian_to_real_vector(h - th * np.eye(n)))
        rows_g.append(_hermitian_to_real_vector(g - tg * np.eye(n)))
    mat = np.vstack(rows_h + rows_g)
    u, sv, vt = np.linalg.svd(mat, full_matrices=False)
    if sv.size and sv[0] > 0:
        q = int(np.sum(sv > _RANK_CUTOFF * sv[0]))
    else:
        q = 0
    if q == 0:
        basis = None
        t = np.zeros((0, tup.m))
    else:
        basis = HermitianTuple(
            tuple(_real_vector_to_hermitian(vt[i], n) for i in range(q))
        )
        coef = u[:, :q] * sv[:q]  # row j: coefficients of component j in basis
        m = tup.m
        t = (coef[:m] + 1j * coef[m:]).T  # (q, m) with A_j = sum_i T_ij C_i + s_j I
        if np.max(np.abs(t.imag)) <= 1e-14 * max(1.0, np.max(np.abs(t.real))):
            t = t.real
    s = np.asarray(shifts)
    if np.max(np.abs(s.imag)) <= 1e-14 * max(1.0, np.max(np.abs(s.real)), 1e-300):
        s = s.real
    return q, basis, AffineMap(t, s)


def direct_sum(a, b):
    """Componentwise block-diagonal sum of two tuples with the same m."""
    if a.m != b.m:
        raise ComponentCountMismatch("tuples must have the same number of components")
    na, nb = a.dim, b.dim
    out = []
    for x, y in zip(a.mats, b.mats):
        z = np.zeros((na + nb, na + nb), dtype=complex)
        z[:na, :na] = x
        z[na:, na:] = y
        out.append(z)
    cls = HermitianTuple if isinstance(a, HermitianTuple) and isinstance(b, HermitianTuple) else MatrixTuple
    return cls(tuple(out))


# --- diagonal tail rules -----------------------------------------------------

_TAIL_KINDS = ("constant", "harmonic", "signed-harmonic", "root-of-unity", "cycle")


@dataclass(frozen=True)
class TailRule:
    """Closed-form diagonal tail: a pure rule ell (1-based) -> complex entry.

    Built-ins: constant c; harmonic 1/ell; signed-harmonic (-1)^(ell+1)/ell;
    root-of-unity cycle exp(2*pi*i*(ell-1)/order); explicit value cycle.
    """

    kind: str
    params: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in _TAIL_KINDS:
            raise ValidationError(f"unknown tail kind {self.kind!r}")
        if self.kind == "constant":
            object.__setattr__(self, "params", (complex(self.params[0]),))
        elif self.kind == "root-of-unity":
            order = int(self.params[0])
            if order < 1:
                raise ValidationError("root-of-unity order must be >= 1")
            object.__setattr__(self, "params", (order,))
        elif self.kind == "cycle":
            vals = tuple(complex(v) for v in self.params)
            if not vals:
                raise ValidationError("cycle tail needs at least one value")
            object.__setattr__(self, "params", vals)
        else:
            object.__setattr__(self, "params", ())

    def value(self, ell):
        if ell < 1:
            raise ValueError("tail index is 1-based")
        if self.kind == "constant":
            return self.params[0]
        if self.kind == "harmonic":
            return complex(1.0 / ell)
        if self.kind == "signed-harmonic":
            return complex((-1.0) ** (ell + 1) / ell)
        if self.kind == "root-of-unity":
            order = self.params[0]
            return complex(np.exp(2j * np.pi * ((ell - 1) % order) / order))
        return self.params[(ell - 1) % len(self.params)]

    def values(self, count, start=1):
        return np.array([self.value(start + i) for i in range(count)])


def tail_constant(c):
    return TailRule("constant", (c,))


def tail_harmonic():
    return TailRule("harmonic")


def tail_signed_harmonic():
    return TailRule("signed-harmonic")


def tail_root_of_unity(order):
    return TailRule("root-of-unity", (order,))


def tail_cycle(values):
    return TailRule("cycle", tuple(values))


@dataclass(frozen=True)
class OperatorSpec:
    """Finite head plus declared diagonal tails: the infinite-operator model.

    ``accumulation`` lists the declared accumulation points of the joint tail
    sequence (points in complex m-space); they determine the essential range.
    Validation checks each declared point is approached by the generated
    sequence: min over ell in [N, 2N] of the distance falls below 10/N.
    """

    head: MatrixTuple
    tails: tuple
    accumulation: np.ndarray
    validate_n: int = 64

    def __post_init__(self):
        if len(self.tails) != self.head.m:
            raise ComponentCountMismatch("one tail rule per head component")
        for t in self.tails:
            if not isinstance(t, TailRule):
                raise ValidationError("tails must be TailRule instances")
        acc = np.atleast_2d(np.asarray(self.accumulation, dtype=complex))
        if acc.size == 0:
            raise EmptyAccumulation("declared accumulation set is empty")
        if acc.shape[1] != self.head.m:
            raise ShapeMismatch("accumulation points live in complex m-space")
        object.__setattr__(self, "accumulation", _freeze(acc))
        n = int(self.validate_n)
        ells = np.arange(n, 2 * n + 1)
        seq = np.column_stack([t.values(len(ells), start=n) for t in self.tails])
        for p in acc:
            dist = np.min(np.linalg.norm(seq - p[None, :], axis=1))
            if dist > 10.0 / n:
                raise ValidationError(
                    f"declared accumulation point {p} is not approached by the tail "
                    f"(min distance {dist:.3g} over ell in [{n},{2*n}])"
                )

    @property
    def m(self):
        return self.head.m

    def tail_values(self, count):
        """(count, m) array of tail entries for ell = 1..count."""
        return np.column_stack([t.values(count) for t in self.tails])

    def is_compact(self, tol=1e-12):
        acc = self.accumulation
        return acc.shape[0] == 1 and np.max(np.abs(acc[0])) <= tol


def truncate(spec, n_tail):
    """head + diag(tail(1..N)) per component; a principal compression chain.

    truncate(N) is the leading principal compression of truncate(N') for any
    N' > N, which drives the interlacing-based refinement tests.
    """
    if n_tail < 1:
        raise ValidationError("truncation size must be >= 1")
    vals = spec.tail_values(n_tail)
    out = []
    n0 = spec.head.dim
    for j, a in enumerate(spec.head.mats):
        z = np.zeros((n0 + n_tail, n0 + n_tail), dtype=complex)
        z[:n0, :n0] = a
        z[n0:, n0:] = np.diag(vals[:, j])
        out.append(z)
    return MatrixTuple(tuple(out))


def augment_with_essential(spec, k, n_tail, essential_points=None):
    """truncate(spec, N) padded with k scalar blocks per essential extreme point.

    For compact specs (accumulation {0}) this is A_N + a k-dim zero block; in
    general each extreme point xi of the essential range contributes a block
    xi_j I_k to component j.  ``essential_points`` overrides the extreme-point
    computation (the essential module passes them in to avoid a cycle).
    """
    if spec.accumulation.size == 0:
        raise EmptyAccumulation("spec declares no accumulation points")
    if essential_points is None:
        from .essential import essential_range

        essential_points = essential_range(spec).points
    pts = np.atleast_2d(np.asarray(essential_points, dtype=complex))
    base = truncate(spec, n_tail)
    pad = pts.shape[0] * k
    n = base.dim
    out = []
    for j, a in enumerate(base.mats):
        z = np.zeros((n + pad, n + pad), dtype=complex)
        z[:n, :n] = a
        block = np.repeat(pts[:, j], k)
        z[n:, n:] = np.diag(block)
        out.append(z)
    return MatrixTuple(tuple(out))
