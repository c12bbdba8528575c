# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Hecke generator step (int64 coefficients).

Same contract as ``_kernels_py.apply_generator``.  Callers guarantee the input
magnitude is below 2**60, so the at most four contributions per output entry
cannot overflow.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

MODE_T = 0
MODE_NABLA = 1


cdef inline Py_ssize_t _slot(int64_t key, int64_t[::1] scratch, int64_t[::1] out_ids,
                             Py_ssize_t* m) noexcept nogil:
    cdef int64_t s = scratch[key]
    if s < 0:
        s = m[0]
        scratch[key] = s
        out_ids[s] = key
        m[0] += 1
    return s


def apply_generator(const int64_t[::1] ids, const int64_t[:, ::1] coef,
                    const int64_t[::1] tgt, const uint8_t[::1] up,
                    int mode, int64_t[::1] scratch):
    cdef Py_ssize_t n = ids.shape[0]
    cdef Py_ssize_t D = coef.shape[1]
    cdef Py_ssize_t k, d, sx, sy, m = 0, j, r
    cdef int64_t c
    out_ids_a = np.empty(2 * n, dtype=np.int64)
    out_a = np.zeros((2 * n, D + 1), dtype=np.int64)
    cdef int64_t[::1] out_ids = out_ids_a
    cdef int64_t[:, ::1] out = out_a
    if mode != 0 and mode != 1:
        raise ValueError(f"unknown mode {mode}")
    with nogil:
        for k in range(n):
            sy = _slot(tgt[k], scratch, out_ids, &m)
            if mode == 0:
                if up[k]:
                    for d in range(D):
                        out[sy, d] += coef[k, d]
                else:
                    sx = _slot(ids[k], scratch, out_ids, &m)
                    for d in range(D):
                        c = coef[k, d]
                        out[sy, d + 1] += c
                        out[sx, d + 1] += c
                        out[sx, d] -= c
            else:
                if up[k]:
                    sx = _slot(ids[k], scratch, out_ids, &m)
                    for d in range(D):
                        c = coef[k, d]
                        out[sy, d] -= c
                        out[sx, d + 1] += c
                        out[sx, d] -= c
                else:
                    for d in range(D):
                        out[sy, d + 1] -= coef[k, d]
        for k in range(m):
            scratch[out_ids[k]] = -1
        # compact away zero rows
        r = 0
        for k in range(m):
            for d in range(D + 1):
                if out[k, d] != 0:
                    break
            else:
                continue
            if r != k:
                out_ids[r] = out_ids[k]
                for j in range(D + 1):
                    out[r, j] = out[k, j]
            r += 1
    return out_ids_a[:r], out_a[:r]
