"""Pure-python (numpy) Hermitian eigensolver.

Same algorithm as the compiled kernel: unitary Householder reduction of the
Hermitian matrix to a real symmetric tridiagonal, a diagonal phase transform
making the subdiagonal real nonnegative, then implicit-shift QL with the
rotations accumulated into the complex eigenvector matrix.
"""

import math

import numpy as np

_EPS = float(np.finfo(np.float64).eps)


def _tridiagonalize(a):
    """Reduce Hermitian ``a`` in place to (d, e, q) with a = q @ tridiag(d, e) @ q*."""
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = a[k + 1 :, k]
        xn = np.linalg.norm(x)
        if xn == 0.0:
            continue
        x0 = x[0]
        ax0 = abs(x0)
        ph = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        alpha = -ph * xn
        v = x.copy()
        v[0] -= alpha
        vn = np.linalg.norm(v)
        if vn == 0.0:
            continue
        v /= vn
        b = a[k + 1 :, k + 1 :]
        w = b @ v
        kappa = np.real(np.vdot(v, w))
        u = 2.0 * (w - kappa * v)
        b -= np.outer(v, u.conj())
        b -= np.outer(u, v.conj())
        a[k + 1, k] = alpha
        a[k + 2 :, k] = 0.0
        a[k, k + 1] = np.conj(alpha)
        a[k, k + 2 :] = 0.0
        qv = q[:, k + 1 :] @ v
        q[:, k + 1 :] -= 2.0 * np.outer(qv, v.conj())
    d = a.diagonal().real.copy()
    if n == 1:
        return d, np.zeros(0), q
    esub = a.diagonal(-1).copy()
    e = np.abs(esub)
    # phase transform: make the subdiagonal real nonnegative
    phi = np.ones(n, dtype=np.complex128)
    for k in range(n - 1):
        if e[k] > 0.0:
            phi[k + 1] = phi[k] * (esub[k] / e[k])
    q *= phi[np.newaxis, :]
    return d, e, q


def _tql2(d, e, q, max_iter):
    """Implicit-shift QL on tridiagonal (d, e); rotations accumulate into q.

    Returns 0 on success, 1 if the per-eigenvalue iteration budget ran out.
    """
    n = d.size
    if n == 1:
        return 0
    e = np.append(e, 0.0)
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col_i = q[:, i].copy()
                col_i1 = q[:, i + 1].copy()
                q[:, i + 1] = s * col_i + c * col_i1
                q[:, i] = c * col_i - s * col_i1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


def eigh_raw(h, max_iter=64):
    """Raw eigendecomposition: returns (status, values, vectors), unsorted."""
    a = np.array(h, dtype=np.complex128, copy=True)
    d, e, q = _tridiagonalize(a)
    status = _tql2(d, e, q, max_iter)
    return status, d, q
