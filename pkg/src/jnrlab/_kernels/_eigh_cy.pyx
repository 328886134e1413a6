# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Hermitian eigensolver kernel.

Mirrors _eigh_py: complex Householder tridiagonalization, diagonal phase
transform, implicit-shift QL with eigenvector accumulation.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, hypot, sqrt

cnp.import_array()

cdef double _EPS = 2.220446049250313e-16


cdef void _tridiagonalize(double complex[:, :] a, double[:] d, double[:] e,
                          double complex[:, :] q) nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k, r
    cdef double xn, vn, ax0, kappa, emag
    cdef double complex x0, ph, alpha, acc, u0, phk

    for i in range(n):
        for j in range(n):
            q[i, j] = 0.0
        q[i, i] = 1.0

    # workspace stored in the eliminated part of `a` is avoided: use locals
    for k in range(n - 2):
        xn = 0.0
        for i in range(k + 1, n):
            xn += a[i, k].real * a[i, k].real + a[i, k].imag * a[i, k].imag
        xn = sqrt(xn)
        if xn == 0.0:
            continue
        x0 = a[k + 1, k]
        ax0 = sqrt(x0.real * x0.real + x0.imag * x0.imag)
        if ax0 > 0.0:
            ph = x0 / ax0
        else:
            ph = 1.0
        alpha = -ph * xn
        # v (unit Householder vector) overwrites a[k+1:, k]
        a[k + 1, k] = x0 - alpha
        vn = 0.0
        for i in range(k + 1, n):
            vn += a[i, k].real * a[i, k].real + a[i, k].imag * a[i, k].imag
        vn = sqrt(vn)
        if vn == 0.0:
            a[k + 1, k] = x0
            continue
        for i in range(k + 1, n):
            a[i, k] = a[i, k] / vn
        # w = B v stored in column k of q scratch? use row 0..: allocate on stack not possible;
        # reuse a[k, k+1:] (to be overwritten anyway) as w storage.
        for i in range(k + 1, n):
            acc = 0.0
            for j in range(k + 1, n):
                acc = acc + a[i, j] * a[j, k]
            a[k, i] = acc
        kappa = 0.0
        for i in range(k + 1, n):
            kappa += (a[i, k].conjugate() * a[k, i]).real
        # u = 2(w - kappa v); B -= v u* + u v*
        for i in range(k + 1, n):
            a[k, i] = 2.0 * (a[k, i] - kappa * a[i, k])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i, j] = a[i, j] - a[i, k] * a[k, j].conjugate() - a[k, i] * a[j, k].conjugate()
        # accumulate Q <- Q (I - 2 v v*): qv = Q[:, k+1:] v
        for r in range(n):
            acc = 0.0
            for j in range(k + 1, n):
                acc = acc + q[r, j] * a[j, k]
            for j in range(k + 1, n):
                q[r, j] = q[r, j] - 2.0 * acc * a[j, k].conjugate()
        # restore the reduced column/row
        for i in range(k + 1, n):
            a[i, k] = 0.0
            a[k, i] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha.conjugate()

    for i in range(n):
        d[i] = a[i, i].real
    if n == 1:
        return
    # phase transform
    phk = 1.0
    for k in range(n - 1):
        x0 = a[k + 1, k]
        emag = sqrt(x0.real * x0.real + x0.imag * x0.imag)
        e[k] = emag
        if emag > 0.0:
            ph = phk * (x0 / emag)
        else:
            ph = phk
        # column k+1 of q scaled by ph (phi[k+1]); phi[0] = 1
        for r in range(n):
            q[r, k + 1] = q[r, k + 1] * ph
        phk = ph


cdef int _tql2(double[:] d, double[:] e, double complex[:, :] q, int max_iter) nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t l, m, i, r
    cdef int it
    cdef double dd, g, rr, s, c, p, f, b
    cdef double complex ci, ci1
    cdef bint underflow

    if n == 1:
        return 0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            rr = hypot(g, 1.0)
            if g >= 0.0:
                g = d[m] - d[l] + e[l] / (g + rr)
            else:
                g = d[m] - d[l] + e[l] / (g - rr)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                rr = hypot(f, g)
                e[i + 1] = rr
                if rr == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / rr
                c = g / rr
                g = d[i + 1] - p
                rr = (d[i] - g) * s + 2.0 * c * b
                p = s * rr
                d[i + 1] = g + p
                g = c * rr - b
                for r in range(q.shape[0]):
                    ci = q[r, i]
                    ci1 = q[r, i + 1]
                    q[r, i + 1] = s * ci + c * ci1
                    q[r, i] = c * ci - s * ci1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


def eigh_raw(h, int max_iter=64):
    """Raw eigendecomposition: returns (status, values, vectors), unsorted."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.array(h, dtype=np.complex128, copy=True, order="C")
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.empty(n, dtype=np.float64)
    # one spare slot: the QL recurrence writes e[n-1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.zeros(n + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] q = np.empty((n, n), dtype=np.complex128, order="C")
    cdef int status
    _tridiagonalize(a, d, e, q)
    status = _tql2(d, e, q, max_iter)
    return status, d, q
