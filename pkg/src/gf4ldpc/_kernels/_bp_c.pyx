# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for syndrome message passing.

Mirrors bp_python.run_bp exactly: flooding schedule, log-domain
messages, sum marginalisation at variable nodes for both algorithms,
tanh-product or sign-min check rule, symmetric clamping, and the
stop-on-syndrome-match contract.
"""

from libc.math cimport atanh, exp, fabs, log, log1p, tanh

import numpy as np

cdef double INF = float("inf")

# herm(sym, label) indicator table and, per label, the two symbols with
# indicator one (ascending code order).
cdef int[4][4] TBIT
cdef int[4] ONE_A
cdef int[4] ONE_B

cdef int _L, _s
for _L in range(4):
    for _s in range(4):
        TBIT[_L][_s] = ((_s & 1) & (_L >> 1)) ^ ((_s >> 1) & (_L & 1))
ONE_A[0] = 0; ONE_B[0] = 0
ONE_A[1] = 2; ONE_B[1] = 3
ONE_A[2] = 1; ONE_B[2] = 3
ONE_A[3] = 1; ONE_B[3] = 2


cdef inline double _logaddexp(double a, double b) noexcept nogil:
    cdef double hi, lo
    if a > b:
        hi = a; lo = b
    else:
        hi = b; lo = a
    if hi == -INF:
        return -INF
    return hi + log1p(exp(lo - hi))


cdef inline double _clip(double x, double bound) noexcept nogil:
    if x > bound:
        return bound
    if x < -bound:
        return -bound
    return x


cdef void _variable_pass(Py_ssize_t E, Py_ssize_t nq,
                         const int[::1] eq, const unsigned char[::1] lab,
                         const double[::1] lp, const double[::1] lam,
                         double[::1] scores, unsigned char[::1] hard,
                         double[::1] v2c, double bound) noexcept nogil:
    cdef Py_ssize_t e, q, k, bsym
    cdef double bst, s0, s1, s2, s3, b0, b1
    for q in range(nq):
        for k in range(4):
            scores[4 * q + k] = lp[k]
    for e in range(E):
        q = eq[e]
        for k in range(4):
            if TBIT[lab[e]][k]:
                scores[4 * q + k] -= lam[e]
    for q in range(nq):
        bst = scores[4 * q]
        bsym = 0
        for k in range(1, 4):
            if scores[4 * q + k] > bst:
                bst = scores[4 * q + k]
                bsym = k
        hard[q] = <unsigned char> bsym
    for e in range(E):
        q = eq[e]
        # indicator-0 symbols: 0 and the label itself (label term was
        # subtracted only for indicator-1 symbols, so add lam back there)
        s0 = scores[4 * q + 0]
        s1 = scores[4 * q + lab[e]]
        b0 = _logaddexp(s0, s1)
        s2 = scores[4 * q + ONE_A[lab[e]]] + lam[e]
        s3 = scores[4 * q + ONE_B[lab[e]]] + lam[e]
        b1 = _logaddexp(s2, s3)
        v2c[e] = _clip(b0 - b1, bound)


cdef bint _syndrome_match(Py_ssize_t m, const int[::1] cptr,
                          const int[::1] eq, const unsigned char[::1] lab,
                          const unsigned char[::1] hard,
                          const unsigned char[::1] syn) noexcept nogil:
    cdef Py_ssize_t c, e
    cdef int parity
    for c in range(m):
        parity = 0
        for e in range(cptr[c], cptr[c + 1]):
            parity ^= TBIT[lab[e]][hard[eq[e]]]
        if parity != syn[c]:
            return 0
    return 1


cdef void _check_pass(Py_ssize_t m, const int[::1] cptr,
                      const unsigned char[::1] syn, bint minsum,
                      double ms_scale, double bound,
                      const double[::1] v2c, double[::1] lam,
                      double[::1] mag, int[::1] neg) noexcept nogil:
    cdef Py_ssize_t c, e, first
    cdef double sum_la, m1, m2, v, p, sgn
    cdef int negc, ng
    for c in range(m):
        if minsum:
            m1 = INF
            m2 = INF
            first = -1
            negc = 0
            for e in range(cptr[c], cptr[c + 1]):
                v = v2c[e]
                neg[e] = 1 if v < 0 else 0
                negc += neg[e]
                v = fabs(v)
                mag[e] = v
                if v < m1:
                    m2 = m1
                    m1 = v
                    first = e
                elif v < m2:
                    m2 = v
            for e in range(cptr[c], cptr[c + 1]):
                v = m2 if e == first else m1
                ng = negc - neg[e]
                sgn = -1.0 if (ng & 1) else 1.0
                if syn[c]:
                    sgn = -sgn
                lam[e] = _clip(ms_scale * sgn * v, bound)
        else:
            sum_la = 0.0
            negc = 0
            for e in range(cptr[c], cptr[c + 1]):
                v = tanh(v2c[e] / 2.0)
                neg[e] = 1 if v < 0 else 0
                negc += neg[e]
                v = fabs(v)
                if v < 1e-300:
                    v = 1e-300
                mag[e] = log(v)
                sum_la += mag[e]
            for e in range(cptr[c], cptr[c + 1]):
                p = exp(sum_la - mag[e])
                if p > 1.0 - 1e-12:
                    p = 1.0 - 1e-12
                ng = negc - neg[e]
                sgn = -1.0 if (ng & 1) else 1.0
                if syn[c]:
                    sgn = -sgn
                lam[e] = _clip(sgn * 2.0 * atanh(p), bound)


def run_bp(edge_qubit, edge_label, check_ptr, syndrome, log_prior,
           max_iters, use_min_sum, scale, clamp, n):
    """See bp_python.run_bp for the contract."""
    cdef int[::1] eq = np.ascontiguousarray(edge_qubit, dtype=np.int32)
    cdef unsigned char[::1] lab = np.ascontiguousarray(edge_label, dtype=np.uint8)
    cdef int[::1] cptr = np.ascontiguousarray(check_ptr, dtype=np.int32)
    cdef unsigned char[::1] syn = np.ascontiguousarray(syndrome, dtype=np.uint8)
    cdef double[::1] lp = np.ascontiguousarray(log_prior, dtype=np.float64)

    cdef Py_ssize_t E = eq.shape[0]
    cdef Py_ssize_t m = cptr.shape[0] - 1
    cdef Py_ssize_t nq = n
    cdef int iters_cap = max_iters
    cdef bint minsum = bool(use_min_sum)
    cdef double ms_scale = scale
    cdef double bound = clamp

    lam_arr = np.zeros(E, dtype=np.float64)
    v2c_arr = np.empty(E, dtype=np.float64)
    scores_arr = np.empty(4 * nq, dtype=np.float64)
    hard_arr = np.zeros(nq, dtype=np.uint8)
    mag_arr = np.empty(E, dtype=np.float64)
    neg_arr = np.empty(E, dtype=np.int32)

    cdef double[::1] lam = lam_arr
    cdef double[::1] v2c = v2c_arr
    cdef double[::1] scores = scores_arr
    cdef unsigned char[::1] hard = hard_arr
    cdef double[::1] mag = mag_arr
    cdef int[::1] neg = neg_arr

    cdef int it

    _variable_pass(E, nq, eq, lab, lp, lam, scores, hard, v2c, bound)
    if _syndrome_match(m, cptr, eq, lab, hard, syn):
        return hard_arr, True, 0
    for it in range(1, iters_cap + 1):
        _check_pass(m, cptr, syn, minsum, ms_scale, bound, v2c, lam, mag, neg)
        _variable_pass(E, nq, eq, lab, lp, lam, scores, hard, v2c, bound)
        if _syndrome_match(m, cptr, eq, lab, hard, syn):
            return hard_arr, True, it
    return hard_arr, False, iters_cap
