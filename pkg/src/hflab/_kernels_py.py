"""Pure-Python reference kernels for the axiom-battery hot loops.

Addition tables are handed over as a flat list of ``n*n`` integer bitmasks,
row-major: ``masks[a*n + b]`` has bit ``c`` set iff ``c`` is in ``a+b``.
Multiplication is a flat list of ``n*n`` element indices.

All scans run in ascending (a, b, c) index order so the first violation
returned is the lexicographically first counterexample in element order.
The compiled twin in ``_kernels.pyx`` must keep the same scan order.
"""

BACKEND = "python"


def _bit_lists(n, masks):
    out = []
    for m in masks:
        bits = []
        x = m
        while x:
            low = x & -x
            bits.append(low.bit_length() - 1)
            x ^= low
        out.append(bits)
    return out


def first_assoc_violation(n, masks):
    """First (a,b,c) with (a+b)+c != a+(b+c), or None."""
    bits = _bit_lists(n, masks)
    for a in range(n):
        arow = a * n
        for b in range(n):
            sab = bits[arow + b]
            brow = b * n
            for c in range(n):
                lhs = 0
                for x in sab:
                    lhs |= masks[x * n + c]
                rhs = 0
                for y in bits[brow + c]:
                    rhs |= masks[arow + y]
                if lhs != rhs:
                    return (a, b, c)
    return None


def first_distrib_violation(n, masks, mul):
    """First (a,b,c) with a(b+c) not a subset of ab+ac, or None."""
    bits = _bit_lists(n, masks)
    for a in range(n):
        arow = a * n
        for b in range(n):
            ab = mul[arow + b]
            for c in range(n):
                target = masks[ab * n + mul[arow + c]]
                img = 0
                for x in bits[b * n + c]:
                    img |= 1 << mul[arow + x]
                if img & ~target:
                    return (a, b, c)
    return None


def first_mul_assoc_violation(n, mul):
    """First (a,b,c) with (ab)c != a(bc), or None."""
    for a in range(n):
        arow = a * n
        for b in range(n):
            ab = mul[arow + b]
            brow = b * n
            for c in range(n):
                if mul[ab * n + c] != mul[arow + mul[brow + c]]:
                    return (a, b, c)
    return None
