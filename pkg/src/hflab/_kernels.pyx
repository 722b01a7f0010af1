# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the axiom-battery hot loops.

Mirrors _kernels_py exactly (same scan order, same witnesses); addition
sets arrive as n*n rows of w little-endian uint64 words.
"""

from libc.stdlib cimport free, malloc
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long)

BACKEND = "cython"

DEF MAXW = 64   # up to 4096 elements, far over the CLI safety bound


def first_assoc_violation(int n, int w, object words_obj):
    cdef const uint64_t[::1] words = words_obj
    cdef uint64_t lhs[MAXW]
    cdef uint64_t rhs[MAXW]
    cdef uint64_t word
    cdef int a, b, c, i, k, m, x, y, differ
    cdef Py_ssize_t base
    cdef int *sab
    if w > MAXW:
        raise ValueError("carrier too large for the compiled kernel")
    sab = <int *> malloc(n * sizeof(int))
    if sab == NULL:
        raise MemoryError()
    try:
        for a in range(n):
            for b in range(n):
                m = 0
                base = (<Py_ssize_t> a * n + b) * w
                for k in range(w):
                    word = words[base + k]
                    while word:
                        sab[m] = k * 64 + __builtin_ctzll(word)
                        m += 1
                        word &= word - 1
                for c in range(n):
                    for k in range(w):
                        lhs[k] = 0
                        rhs[k] = 0
                    for i in range(m):
                        x = sab[i]
                        base = (<Py_ssize_t> x * n + c) * w
                        for k in range(w):
                            lhs[k] |= words[base + k]
                    base = (<Py_ssize_t> b * n + c) * w
                    for k in range(w):
                        word = words[base + k]
                        while word:
                            y = k * 64 + __builtin_ctzll(word)
                            word &= word - 1
                            for i in range(w):
                                rhs[i] |= words[(<Py_ssize_t> a * n + y) * w + i]
                    differ = 0
                    for k in range(w):
                        if lhs[k] != rhs[k]:
                            differ = 1
                            break
                    if differ:
                        return (a, b, c)
        return None
    finally:
        free(sab)


def first_distrib_violation(int n, int w, object words_obj, object mul_obj):
    cdef const uint64_t[::1] words = words_obj
    cdef const long[::1] mul = mul_obj
    cdef uint64_t word
    cdef int a, b, c, k, x, p, ab, ac
    cdef Py_ssize_t base, tbase
    for a in range(n):
        for b in range(n):
            for c in range(n):
                ab = mul[<Py_ssize_t> a * n + b]
                ac = mul[<Py_ssize_t> a * n + c]
                tbase = (<Py_ssize_t> ab * n + ac) * w
                base = (<Py_ssize_t> b * n + c) * w
                for k in range(w):
                    word = words[base + k]
                    while word:
                        x = k * 64 + __builtin_ctzll(word)
                        word &= word - 1
                        p = mul[<Py_ssize_t> a * n + x]
                        if not (words[tbase + (p >> 6)] >> (p & 63)) & 1:
                            return (a, b, c)
    return None


def first_mul_assoc_violation(int n, object mul_obj):
    cdef const long[::1] mul = mul_obj
    cdef int a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[<Py_ssize_t> mul[<Py_ssize_t> a * n + b] * n + c] != \
                        mul[<Py_ssize_t> a * n + mul[<Py_ssize_t> b * n + c]]:
                    return (a, b, c)
    return None
