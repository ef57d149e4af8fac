"""Pure-Python threshold-sweep kernel.

Reference implementation of the confusion sweep: for every distinct
certainty value v (ascending) it yields the confusion-count matrix of
the samples with certainty >= v. This is the fallback used when the
compiled extension (``rejectviz._sweep_cy``) is unavailable; both
backends implement the identical contract and are compared in
``benchmarks/bench_sweep.py``.

The loop walks the samples once in descending certainty order and
accumulates a running count matrix, snapshotting it at every group of
tied values, so samples sharing a certainty value are always counted
together. Cost is O(N log N + T*C^2) for N samples, T distinct values
and C classes; output memory is T*C*C int64 entries.
"""

from __future__ import annotations

import numpy as np


def sweep_counts(true_idx, pred_idx, certainty, num_classes):
    """Confusion counts at every distinct certainty threshold.

    Args:
        true_idx: 0-based true class per sample.
        pred_idx: 0-based predicted class per sample.
        certainty: finite, non-negative certainty per sample.
        num_classes: number of classes C.

    Returns:
        (thresholds, counts): thresholds is a float64 array of the
        distinct certainty values in ascending order; counts is an
        int64 array of shape (T, C, C) where counts[k][t][p] is the
        number of samples with certainty >= thresholds[k], true class
        t and predicted class p.

    Inputs are assumed validated (see ``rejectviz.sweep``).
    """
    cert = [float(v) for v in certainty]
    ti = [int(v) for v in true_idx]
    pi = [int(v) for v in pred_idx]
    n = len(cert)

    order = sorted(range(n), key=cert.__getitem__)
    running = [[0] * num_classes for _ in range(num_classes)]
    thresholds_desc = []
    counts_desc = []

    i = n - 1
    while i >= 0:
        v = cert[order[i]]
        while i >= 0 and cert[order[i]] == v:
            s = order[i]
            running[ti[s]][pi[s]] += 1
            i -= 1
        thresholds_desc.append(v)
        counts_desc.append([row[:] for row in running])

    thresholds = np.array(thresholds_desc[::-1], dtype=np.float64)
    counts = np.array(counts_desc[::-1], dtype=np.int64)
    return thresholds, counts
