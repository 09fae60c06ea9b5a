"""Numpy reference kernel for syndrome message passing.

Quaternary variable nodes, binary check nodes: every check constrains
the XOR of per-edge commutation bits t = herm(e, label), so check
updates are standard parity-message combinations and all the GF(4)
structure lives in the variable-node marginalisation over the four
symbols.  The flooding schedule, the log-domain update rules, and the
stopping contract here are the reference semantics the compiled kernel
must reproduce.
"""

from __future__ import annotations

import numpy as np

from ..gf4 import HERM_ARR

# TBIT[label, sym] = herm(sym, label); label 0 never appears on an edge.
TBIT = HERM_ARR.T.copy()

# Symbols with indicator bit 0 under a label are {0, label}; the two
# anticommuting symbols are the rest, in ascending code order.
_ZEROS = {1: (0, 1), 2: (0, 2), 3: (0, 3)}
_ONES = {1: (2, 3), 2: (1, 3), 3: (1, 2)}


def run_bp(edge_qubit, edge_label, check_ptr, syndrome, log_prior,
           max_iters, use_min_sum, scale, clamp, n):
    """Decode one syndrome; returns (hard decisions, converged, iterations).

    Edges must be sorted by check (CSR via check_ptr).  ``log_prior`` is
    the length-4 vector of per-symbol log priors.
    """
    E = edge_qubit.shape[0]
    m = check_ptr.shape[0] - 1
    syndrome = np.asarray(syndrome, dtype=np.uint8)

    tmat = TBIT[edge_label].astype(np.float64)           # (E, 4)
    coe = np.repeat(np.arange(m, dtype=np.int64), np.diff(check_ptr))
    ar = np.arange(E)
    i01 = edge_label.astype(np.int64)                    # second zero-symbol
    ones = np.array([[0, 0], [2, 3], [1, 3], [1, 2]], dtype=np.int64)
    i10 = ones[edge_label, 0]
    i11 = ones[edge_label, 1]
    sgn_syn = 1.0 - 2.0 * syndrome[coe]
    eq = edge_qubit.astype(np.int64)
    starts = check_ptr[:-1].astype(np.int64)

    def variable_pass(lam):
        # The quaternary marginalisation to bit messages is a sum for
        # both algorithms; min-sum only changes the check-node rule.
        contrib = lam[:, None] * tmat                    # (E, 4)
        sums = np.empty((n, 4))
        for k in range(4):
            sums[:, k] = np.bincount(eq, weights=contrib[:, k], minlength=n)
        scores = log_prior[None, :] - sums               # (n, 4)
        hard = np.argmax(scores, axis=1).astype(np.uint8)
        excl = scores[eq] + contrib                      # (E, 4)
        b0 = np.logaddexp(excl[ar, 0], excl[ar, i01])
        b1 = np.logaddexp(excl[ar, i10], excl[ar, i11])
        v2c = np.clip(b0 - b1, -clamp, clamp)
        return hard, v2c

    def check_pass(v2c):
        if use_min_sum:
            av = np.abs(v2c)
            neg = (v2c < 0).astype(np.int64)
            min1 = np.minimum.reduceat(av, starts)
            cand = np.where(av == min1[coe], ar, E)
            first = np.minimum.reduceat(cand, starts)
            av2 = av.copy()
            av2[first[first < E]] = np.inf
            min2 = np.minimum.reduceat(av2, starts)
            excl_min = np.where(ar == first[coe], min2[coe], min1[coe])
            negc = np.bincount(coe, weights=neg, minlength=m)
            excl_sign = 1.0 - 2.0 * ((negc[coe] - neg) % 2)
            lam = scale * sgn_syn * excl_sign * excl_min
        else:
            t = np.tanh(v2c / 2.0)
            la = np.log(np.maximum(np.abs(t), 1e-300))
            neg = (t < 0).astype(np.int64)
            sum_la = np.bincount(coe, weights=la, minlength=m)
            negc = np.bincount(coe, weights=neg, minlength=m)
            prod = np.exp(sum_la[coe] - la)
            prod = np.clip(prod, None, 1.0 - 1e-12)
            excl_sign = 1.0 - 2.0 * ((negc[coe] - neg) % 2)
            lam = sgn_syn * 2.0 * np.arctanh(excl_sign * prod)
        return np.clip(lam, -clamp, clamp)

    def syndrome_match(hard):
        bits = TBIT[edge_label, hard[eq]]
        return np.array_equal(np.bitwise_xor.reduceat(bits, starts), syndrome)

    hard, v2c = variable_pass(np.zeros(E))
    if syndrome_match(hard):
        return hard, True, 0
    for it in range(1, max_iters + 1):
        lam = check_pass(v2c)
        hard, v2c = variable_pass(lam)
        if syndrome_match(hard):
            return hard, True, it
    return hard, False, max_iters
