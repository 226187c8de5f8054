# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gaussian lattice sum. Mirrors ``_pykernels.lattice_sum``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, M_PI

cnp.import_array()


def lattice_sum(double m11, double m12, double m22, int radius,
                double s1, double s2, xs, ws):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(ws, dtype=np.float64)
    cdef Py_ssize_t npts = x.shape[0]
    cdef Py_ssize_t side = 2 * radius + 1
    cdef cnp.ndarray[cnp.float64_t, ndim=2] weight = np.empty((side, side), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] re = np.zeros(npts, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] im = np.zeros(npts, dtype=np.float64)
    cdef double[::1] cx = np.empty(side), sx = np.empty(side)
    cdef double[::1] cw = np.empty(side), sw = np.empty(side)
    cdef Py_ssize_t i, j, p
    cdef double u, v, acc_r, acc_i, row_r, row_i, wt, twopi = 2.0 * M_PI

    for i in range(side):
        u = (i - radius) + s1
        for j in range(side):
            v = (j - radius) + s2
            weight[i, j] = exp(-M_PI * (m11 * u * u + 2.0 * m12 * u * v + m22 * v * v))

    for p in range(npts):
        if x[p] == 0.0 and w[p] == 0.0:
            acc_r = 0.0
            for i in range(side):
                for j in range(side):
                    acc_r += weight[i, j]
            re[p] = acc_r
            continue
        for i in range(side):
            cx[i] = cos(twopi * (i - radius) * x[p])
            sx[i] = sin(twopi * (i - radius) * x[p])
            cw[i] = cos(twopi * (i - radius) * w[p])
            sw[i] = sin(twopi * (i - radius) * w[p])
        acc_r = 0.0
        acc_i = 0.0
        for i in range(side):
            row_r = 0.0
            row_i = 0.0
            for j in range(side):
                wt = weight[i, j]
                row_r += wt * cw[j]
                row_i += wt * sw[j]
            # (cx + i sx)(row_r + i row_i)
            acc_r += cx[i] * row_r - sx[i] * row_i
            acc_i += cx[i] * row_i + sx[i] * row_r
        re[p] = acc_r
        im[p] = acc_i
    return re, im
