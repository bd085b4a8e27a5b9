# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewriting kernel; same contract as the pure-Python module."""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize, PyBytes_GET_SIZE
from libc.string cimport memcmp, memcpy


cdef inline bytes _splice(const char* w, Py_ssize_t n, Py_ssize_t p, Py_ssize_t m,
                          const char* rep, Py_ssize_t k):
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n - m + k)
    cdef char* buf = PyBytes_AS_STRING(out)
    memcpy(buf, w, p)
    memcpy(buf + p, rep, k)
    memcpy(buf + p + k, w + p + m, n - p - m)
    return out


def expand_level(frontier, rules, Py_ssize_t max_len, dict seen):
    cdef list out = []
    cdef list pats = [r[0] for r in rules]
    cdef list reps = [r[1] for r in rules]
    cdef list shifts = [r[2] for r in rules]
    cdef Py_ssize_t nrules = len(rules)
    cdef Py_ssize_t n, m, k, p, ri
    cdef const char* w
    cdef const char* pat
    cdef const char* rep
    cdef bytes word, new, bpat, brep
    cdef object exp
    for word in frontier:
        exp = (<tuple>seen[word])[0]
        w = PyBytes_AS_STRING(word)
        n = PyBytes_GET_SIZE(word)
        for ri in range(nrules):
            bpat = <bytes>pats[ri]
            brep = <bytes>reps[ri]
            m = PyBytes_GET_SIZE(bpat)
            k = PyBytes_GET_SIZE(brep)
            if n - m + k > max_len:
                continue
            pat = PyBytes_AS_STRING(bpat)
            rep = PyBytes_AS_STRING(brep)
            for p in range(n - m + 1):
                if m and (w[p] != pat[0] or memcmp(w + p, pat, m) != 0):
                    continue
                new = _splice(w, n, p, m, rep, k)
                if new not in seen:
                    seen[new] = (exp + shifts[ri], word, ri, p)
                    out.append(new)
    return out


def rewrite_neighbors(bytes word, rules, Py_ssize_t max_len):
    cdef list out = []
    cdef Py_ssize_t n = PyBytes_GET_SIZE(word), m, k, p, ri = 0
    cdef const char* w = PyBytes_AS_STRING(word)
    cdef bytes bpat, brep
    for rule in rules:
        bpat = <bytes>rule[0]
        brep = <bytes>rule[1]
        m = PyBytes_GET_SIZE(bpat)
        k = PyBytes_GET_SIZE(brep)
        if n - m + k <= max_len:
            for p in range(n - m + 1):
                if m == 0 or memcmp(w + p, PyBytes_AS_STRING(bpat), m) == 0:
                    out.append((_splice(w, n, p, m, PyBytes_AS_STRING(brep), k), ri, p))
        ri += 1
    return out
