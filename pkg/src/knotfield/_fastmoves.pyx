# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled move-application kernel for orbit closure.

Same contract as knotfield._slowmoves.expand; selected at import time by
knotfield.kernels.
"""

BACKEND = "cython"


def expand(const unsigned char[::1] state,
           const int[:, ::1] pos,
           const unsigned char[:, ::1] pat_a,
           const unsigned char[:, ::1] pat_b,
           const int[::1] lens):
    cdef Py_ssize_t n_inst = lens.shape[0]
    cdef Py_ssize_t i, j
    cdef int k
    cdef bint match_a, match_b
    cdef unsigned char v
    cdef bytearray new
    out = []
    for i in range(n_inst):
        k = lens[i]
        match_a = True
        match_b = True
        for j in range(k):
            v = state[pos[i, j]]
            if v != pat_a[i, j]:
                match_a = False
            if v != pat_b[i, j]:
                match_b = False
            if not match_a and not match_b:
                break
        if match_a == match_b:
            continue
        new = bytearray(state)
        if match_a:
            for j in range(k):
                new[pos[i, j]] = pat_b[i, j]
        else:
            for j in range(k):
                new[pos[i, j]] = pat_a[i, j]
        out.append(bytes(new))
    return out
