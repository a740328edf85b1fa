# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled propagation kernels: Numerov recurrence and Milne RK4."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, log

cnp.import_array()

BACKEND = "cython"

OVERFLOW_LIMIT = 1e300


def numerov_uniform(cnp.ndarray[cnp.float64_t, ndim=1] q, double h, double y0, double y1):
    """Propagate y'' = q(x) y across a uniform mesh from its first two values."""
    cdef Py_ssize_t n = q.shape[0]
    if n < 2:
        raise ValueError("need at least two mesh points")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.empty(n, dtype=np.float64)
    cdef double c = h * h / 12.0
    cdef double tprev, tcur, tnext, ynew
    cdef Py_ssize_t j
    cdef int overflow = 0
    y[0] = y0
    y[1] = y1
    if n == 2:
        return y
    with nogil:
        tprev = c * q[0]
        tcur = c * q[1]
        for j in range(1, n - 1):
            tnext = c * q[j + 1]
            ynew = (2.0 * (1.0 + 5.0 * tcur) * y[j] - (1.0 - tprev) * y[j - 1]) / (1.0 - tnext)
            if fabs(ynew) > 1e300:
                overflow = 1
                break
            y[j + 1] = ynew
            tprev = tcur
            tcur = tnext
    if overflow:
        from ..errors import Overflow
        raise Overflow("solution magnitude exceeded 1e300; renormalize the seed")
    return y


def milne_rk4(cnp.ndarray[cnp.float64_t, ndim=1] q_half, double h,
              double w0, double dw0, double phi0):
    """Amplitude-equation integrator; returns (ln w, w'/w, phi) on the nodes."""
    cdef Py_ssize_t nh = q_half.shape[0]
    if nh % 2 == 0:
        raise ValueError("q_half must have odd length (nodes plus midpoints)")
    cdef Py_ssize_t n = (nh + 1) // 2
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lw = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mm = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] phi = np.empty(n, dtype=np.float64)
    cdef double l_ = log(w0)
    cdef double m_ = dw0 / w0
    cdef double p_ = phi0
    cdef double qa, qm, qb
    cdef double k1l, k1m, k1p, k2l, k2m, k2p, k3l, k3m, k3p, k4l, k4m, k4p
    cdef double tl, tm, e2
    cdef Py_ssize_t j
    lw[0] = l_
    mm[0] = m_
    phi[0] = p_
    with nogil:
        for j in range(n - 1):
            qa = q_half[2 * j]
            qm = q_half[2 * j + 1]
            qb = q_half[2 * j + 2]

            e2 = exp(-2.0 * l_)
            k1l = m_
            k1m = qa - m_ * m_ + e2 * e2
            k1p = e2

            tl = l_ + 0.5 * h * k1l
            tm = m_ + 0.5 * h * k1m
            e2 = exp(-2.0 * tl)
            k2l = tm
            k2m = qm - tm * tm + e2 * e2
            k2p = e2

            tl = l_ + 0.5 * h * k2l
            tm = m_ + 0.5 * h * k2m
            e2 = exp(-2.0 * tl)
            k3l = tm
            k3m = qm - tm * tm + e2 * e2
            k3p = e2

            tl = l_ + h * k3l
            tm = m_ + h * k3m
            e2 = exp(-2.0 * tl)
            k4l = tm
            k4m = qb - tm * tm + e2 * e2
            k4p = e2

            l_ = l_ + (h / 6.0) * (k1l + 2.0 * k2l + 2.0 * k3l + k4l)
            m_ = m_ + (h / 6.0) * (k1m + 2.0 * k2m + 2.0 * k3m + k4m)
            p_ = p_ + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)

            lw[j + 1] = l_
            mm[j + 1] = m_
            phi[j + 1] = p_
    return lw, mm, phi
