"""Kernel selection: compiled extension if available, pure Python otherwise.

The compiled module is optional; build it with ``python setup.py
build_ext --inplace`` (requires Cython and a C compiler).  Both backends
implement identical scan orders and are cross-checked in the test suite;
``benchmarks/bench_kernels.py`` compares their speed.
"""

from array import array

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _to_words(n, masks):
    w = (n + 63) // 64
    words = array("Q", bytearray(8 * w * len(masks)))
    full = (1 << 64) - 1
    for i, m in enumerate(masks):
        base = i * w
        k = 0
        while m:
            words[base + k] = m & full
            m >>= 64
            k += 1
    return w, words


def first_assoc_violation(n, masks):
    if _compiled is not None:
        w, words = _to_words(n, masks)
        return _compiled.first_assoc_violation(n, w, words)
    return _kernels_py.first_assoc_violation(n, masks)


def first_distrib_violation(n, masks, mul):
    if _compiled is not None:
        w, words = _to_words(n, masks)
        return _compiled.first_distrib_violation(n, w, words, array("l", mul))
    return _kernels_py.first_distrib_violation(n, masks, mul)


def first_mul_assoc_violation(n, mul):
    if _compiled is not None:
        return _compiled.first_mul_assoc_violation(n, array("l", mul))
    return _kernels_py.first_mul_assoc_violation(n, mul)
