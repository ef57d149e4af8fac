# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled threshold-sweep kernel.

Same contract as ``rejectviz._sweep_py.sweep_counts``; see that module
for the algorithm description. Inputs are assumed validated by
``rejectviz.sweep``.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def sweep_counts(true_idx, pred_idx, certainty, Py_ssize_t num_classes):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cert = np.ascontiguousarray(certainty, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ti = np.ascontiguousarray(true_idx, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pi = np.ascontiguousarray(pred_idx, dtype=np.int64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] order = np.argsort(cert, kind="stable").astype(np.intp, copy=False)

    cdef Py_ssize_t n = cert.shape[0]
    cdef Py_ssize_t t_count = 1
    cdef Py_ssize_t i
    for i in range(1, n):
        if cert[order[i]] != cert[order[i - 1]]:
            t_count += 1

    cdef cnp.ndarray[cnp.float64_t, ndim=1] thresholds = np.empty(t_count, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=3] counts = np.zeros((t_count, num_classes, num_classes), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] running = np.zeros((num_classes, num_classes), dtype=np.int64)

    cdef Py_ssize_t k = t_count - 1
    cdef Py_ssize_t s, a, b
    cdef double v
    i = n - 1
    while i >= 0:
        v = cert[order[i]]
        while i >= 0 and cert[order[i]] == v:
            s = order[i]
            running[ti[s], pi[s]] += 1
            i -= 1
        thresholds[k] = v
        for a in range(num_classes):
            for b in range(num_classes):
                counts[k, a, b] = running[a, b]
        k -= 1

    return thresholds, counts
