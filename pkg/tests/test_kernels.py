"""The compiled kernels must agree with the pure-Python reference on both
passing and failing tables, witness for witness."""

import pytest

from hflab import _kernels_py, kernels

from conftest import fq, padic, paper_three_element_table, two_adic

compiled = pytest.importorskip("hflab._kernels", reason="compiled kernels not built")


def _tables(h):
    return h.n, list(h._masks), list(h._mul)


def _words(n, masks):
    return kernels._to_words(n, masks)


@pytest.mark.parametrize("model", ["f3", "f5", "q3", "q2"])
def test_backends_agree_on_valid_tables(model):
    h = {"f3": fq(3), "f5": fq(5), "q3": padic(3), "q2": two_adic()}[model]
    n, masks, mul = _tables(h)
    w, words = _words(n, masks)
    assert compiled.first_assoc_violation(n, w, words) is None
    assert _kernels_py.first_assoc_violation(n, masks) is None
    from array import array
    assert compiled.first_distrib_violation(n, w, words, array("l", mul)) is None
    assert _kernels_py.first_distrib_violation(n, masks, mul) is None
    assert compiled.first_mul_assoc_violation(n, array("l", mul)) is None
    assert _kernels_py.first_mul_assoc_violation(n, mul) is None


def test_backends_agree_on_broken_tables():
    from array import array
    h = paper_three_element_table()
    n = h.n
    mul = list(h._mul)
    for pos, newmask in [(1 * n + 2, 0b010), (1 * n + 1, 0b110), (2 * n + 2, 0b001)]:
        masks = list(h._masks)
        masks[pos] = newmask
        mirror = (pos % n) * n + pos // n
        masks[mirror] = newmask
        w, words = _words(n, masks)
        assert (compiled.first_assoc_violation(n, w, words)
                == _kernels_py.first_assoc_violation(n, masks))
        assert (compiled.first_distrib_violation(n, w, words, array("l", mul))
                == _kernels_py.first_distrib_violation(n, masks, mul))
    bad_mul = list(h._mul)
    bad_mul[1 * n + 2] = 1
    assert (compiled.first_mul_assoc_violation(n, array("l", bad_mul))
            == _kernels_py.first_mul_assoc_violation(n, bad_mul))


def test_backends_agree_on_a_large_extension():
    from array import array
    from hflab import group_extension
    ext, _ = group_extension(two_adic(), 3)      # 65 elements
    n, masks, mul = _tables(ext)
    w, words = _words(n, masks)
    assert compiled.first_assoc_violation(n, w, words) is None
    # poke one entry and require identical witnesses
    masks[7 * n + 9] &= ~(1 << 7)
    masks[7 * n + 9] |= 1
    masks[9 * n + 7] = masks[7 * n + 9]
    w, words = _words(n, masks)
    assert (compiled.first_assoc_violation(n, w, words)
            == _kernels_py.first_assoc_violation(n, masks))
