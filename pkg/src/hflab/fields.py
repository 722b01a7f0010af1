"""Quadratic hyperfields of concrete fields, computed exactly.

Finite fields are handled by brute force over all elements (with a
searched irreducible modulus for prime powers).  Local fields with odd
residue characteristic are modeled two independent ways: as a rank-one
group extension of the residue hyperfield, and by a p-adic representability
oracle that searches primitive solutions at certified precision; the two
tables must agree exactly.  The dyadic field Q_2 is handled by the oracle
alone.  Also here: the dyadic-likeness predicate on value sets, nominal
transcendence degree arithmetic, and the square-ideal group of Q.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .construct import group_extension
from .core import Hyperfield, is_quadratic, relabel, validated
from .errors import (
    DyadicResidueError,
    InequalityViolationError,
    InvalidHyperfieldError,
    OracleDisagreementError,
    PrecisionTooLowError,
    PreconditionError,
    UnsupportedFieldError,
)

MAX_Q = 101


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1 or not _is_prime(p):
                raise UnsupportedFieldError(f"{q} is not a prime power")
            return p, k
    raise UnsupportedFieldError(f"{q} is not a prime power")


# -- finite field arithmetic ---------------------------------------------------

def _poly_mul_mod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_divmod(num, den, p):
    num = list(num)
    dd = len(den) - 1
    inv = pow(den[-1], p - 2, p)
    quo = [0] * max(0, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * inv % p
        quo[i - dd] = c
        if c:
            for j, y in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * y) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quo, num


def _is_irreducible(coeffs, p):
    # monic polynomial given as low-to-high coefficient list
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]
            _, rem = _poly_divmod(coeffs, den, p)
            if rem == [0]:
                return False
    return True


@lru_cache(maxsize=None)
def _find_modulus(p, k):
    """First irreducible monic modulus x^k + c_{k-1}x^{k-1} + ... + c_0 in
    lexicographic order of (c_0, ..., c_{k-1})."""
    for tail in itertools.product(range(p), repeat=k):
        coeffs = list(tail) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(tail)
    raise UnsupportedFieldError(f"no irreducible modulus for p={p}, k={k}")


@dataclass(frozen=True)
class FiniteFieldSpec:
    """F_{p^k} with a deterministic internal modulus for k > 1."""

    p: int
    k: int = 1

    def __post_init__(self):
        if not _is_prime(self.p):
            raise UnsupportedFieldError(f"{self.p} is not prime")
        if self.k < 1:
            raise UnsupportedFieldError("degree must be >= 1")
        if self.q > MAX_Q:
            raise UnsupportedFieldError(f"q = {self.q} exceeds the bound {MAX_Q}")
        if self.k > (6 if self.p == 2 else 4):
            raise UnsupportedFieldError(f"degree {self.k} exceeds the bound")
        if self.k > 1:
            _find_modulus(self.p, self.k)   # verified irreducible at construction

    @property
    def q(self):
        return self.p ** self.k

    @property
    def modulus(self):
        return _find_modulus(self.p, self.k) if self.k > 1 else ()


class _GF:
    """Arithmetic in F_{p^k}; elements are integers 0..q-1 encoding base-p
    digit vectors, digit i = coefficient of x^i."""

    def __init__(self, spec: FiniteFieldSpec):
        self.p, self.k, self.q = spec.p, spec.k, spec.q
        self.modulus = spec.modulus

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def add(self, a, b):
        return self._undigits([(x + y) % self.p
                               for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        prod = _poly_mul_mod(self._digits(a), self._digits(b), self.p)
        # reduce by x^k = -(c_{k-1} x^{k-1} + ... + c_0)
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, m in enumerate(self.modulus):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * m) % self.p
        return self._undigits(prod[: self.k] + [0] * (self.k - len(prod)))


# -- quadratic hyperfields of finite fields ---------------------------------------

def _square_class_tables(q):
    """Brute-force square classes and class addition of F_q: returns
    (labels, zero-first element list, neg, mul, add) label tables for the
    plain quotient modulo squares (no prime step)."""
    p, k = _factor_prime_power(q)
    gf = _GF(FiniteFieldSpec(p, k))
    star = [a for a in range(1, q)]
    squares = sorted({gf.mul(a, a) for a in star})
    square_set = set(squares)

    minus_one = gf.neg(1)
    if len(square_set) == q - 1:
        classes = {a: "1" for a in star}
        labels = ["1"]
    else:
        ns_label = "-1" if minus_one not in square_set else "s"
        classes = {a: ("1" if a in square_set else ns_label) for a in star}
        labels = ["1", ns_label]
    class_rep = {}
    for a in star:
        class_rep.setdefault(classes[a], a)

    elements = ["0"] + labels
    classes[0] = "0"
    neg = {"0": "0"}
    mul = {}
    add = {}
    for la in labels:
        neg[la] = classes[gf.neg(class_rep[la])]
    for la in elements:
        for lb in elements:
            if la == "0" or lb == "0":
                mul[(la, lb)] = "0"
                add[(la, lb)] = [lb if la == "0" else la]
                continue
            a, b = class_rep[la], class_rep[lb]
            mul[(la, lb)] = classes[gf.mul(a, b)]
            vals = {classes[gf.add(gf.mul(a, s), gf.mul(b, t))]
                    for s in squares for t in squares}
            add[(la, lb)] = sorted(vals, key=elements.index)
    return elements, neg, mul, add


def square_class_hyperfield(q) -> Hyperfield:
    """The quotient of F_q modulo nonzero squares, with the addition
    induced by the field (no prime step)."""
    if isinstance(q, FiniteFieldSpec):
        q = q.q
    if q > MAX_Q:
        raise UnsupportedFieldError(f"q = {q} exceeds the bound {MAX_Q}")
    elements, neg, mul, add = _square_class_tables(q)
    h = Hyperfield.from_tables(elements, "0", "1", neg, mul, add,
                               metadata={"generator": "fq-square-classes", "q": q})
    return validated(h)


def q_finite_field(spec) -> Hyperfield:
    """The quadratic hyperfield of F_q: prime of the square-class quotient.
    Two nonzero classes for odd q, one for even q (everything is a square)."""
    from .construct import prime
    h = prime(square_class_hyperfield(spec))
    meta = dict(h.metadata)
    meta["generator"] = "fq"
    return Hyperfield(h.elements, h.zero, h.one, h._neg, h._mul, h._masks, meta)


def q_local(spec) -> Hyperfield:
    """Quadratic hyperfield of the Laurent field F_q((t)) (equivalently of
    the unramified local field with that residue field): a rank-one group
    extension of the residue hyperfield, uniformizer labeled t."""
    if isinstance(spec, int):
        spec = FiniteFieldSpec(*_factor_prime_power(spec))
    if spec.p == 2:
        raise DyadicResidueError(
            "residue characteristic 2: the square-class group of the local "
            "field is infinite; use q_2adic for Q_2 itself")
    ext, _ = group_extension(q_finite_field(spec), 1, gens=("t",))
    meta = {"generator": "local", "q": spec.q}
    return Hyperfield(ext.elements, ext.zero, ext.one, ext._neg, ext._mul,
                      ext._masks, meta)


# -- p-adic representability oracle ------------------------------------------------

@dataclass(frozen=True)
class PadicOracleConfig:
    """Working precision for the p-adic oracle: solutions are sought modulo
    p^N with primitivity bookkeeping.  Square classes of Z_2* need N >= 3
    (detection mod 8); odd p needs N >= 1.  Representability searches run
    at max(N, v_max + margin) where v_max is the largest coefficient
    valuation and the lifting margin is 1 for odd p and 3 for p = 2."""

    p: int
    N: int = 0

    def __post_init__(self):
        if not _is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")
        n = self.N or (9 if self.p == 2 else 2)
        object.__setattr__(self, "N", n)
        if self.p == 2 and self.N < 3:
            raise PrecisionTooLowError("p = 2 needs N >= 3 for unit square classes")
        if self.p != 2 and self.N < 1:
            raise PrecisionTooLowError("odd p needs N >= 1")


@lru_cache(maxsize=None)
def _square_strata(p, exp):
    """(unit squares, all squares) modulo p^exp."""
    m = p ** exp
    unit = {x * x % m for x in range(1, m) if x % p}
    alls = set(unit)
    alls.add(0)
    for x in range(p, m, p):
        alls.add(x * x % m)
    return frozenset(unit), frozenset(alls)


def _vp(x, p):
    v = 0
    x = abs(x)
    while x and x % p == 0:
        x //= p
        v += 1
    return v


def padic_isotropic(p, coeffs, min_exp=0):
    """Is the diagonal ternary form with the given nonzero integer
    coefficients isotropic over Q_p?

    Searches primitive solutions modulo p^N with N = max(min_exp,
    v_max + margin); a primitive solution at that precision lifts to a
    genuine zero (standard Hensel margin: 1 for odd p, 3 for p = 2), and a
    genuine zero reduces to a primitive solution at every precision, so
    both answers are certificates.
    """
    vmax = max(_vp(c, p) for c in coeffs)
    margin = 3 if p == 2 else 1
    exp = max(min_exp, vmax + margin)
    m = p ** exp
    unit_sq, all_sq = _square_strata(p, exp)
    a, b, c = coeffs
    strata = [(unit_sq, all_sq, all_sq),
              (all_sq, unit_sq, all_sq),
              (all_sq, all_sq, unit_sq)]
    for sx, sy, sw in strata:
        partial = {(a * x + b * y) % m for x in sx for y in sy}
        if any((-c * w) % m in partial for w in sw):
            return True
    return False


def _padic_class_table(p, u_int):
    """Square-class labels and integer representatives of Q_p, p odd:
    1, u, p, up with u a unit non-residue (-1 when p = 3 mod 4)."""
    lab_u = str(u_int)
    labels = ["1", lab_u, str(p), str(u_int * p)]
    reps = {"1": 1, lab_u: u_int, str(p): p, str(u_int * p): u_int * p}
    return labels, reps


def _least_nonresidue(p):
    res = {pow(x, 2, p) for x in range(1, p)}
    for u in range(2, p):
        if u % p not in res:
            return u
    raise PreconditionError(f"no non-residue mod {p}")


def _oracle_q_padic(p, cfg):
    u_int = -1 if p % 4 == 3 else _least_nonresidue(p)
    labels, reps = _padic_class_table(p, u_int)
    elements = ["0"] + labels
    # classes form (Z/2)^2 via (non-residue bit, valuation parity bit)
    bits = {"1": (0, 0), labels[1]: (1, 0), labels[2]: (0, 1), labels[3]: (1, 1)}
    by_bits = {v: k for k, v in bits.items()}
    neg_bits = bits[labels[1]] if p % 4 == 3 else (0, 0)

    def cmul(a, b):
        return by_bits[(bits[a][0] ^ bits[b][0], bits[a][1] ^ bits[b][1])]

    def cneg(a):
        return by_bits[(bits[a][0] ^ neg_bits[0], bits[a][1] ^ neg_bits[1])]

    neg = {"0": "0", **{a: cneg(a) for a in labels}}
    mul, add = {}, {}
    for a in elements:
        for b in elements:
            if a == "0" or b == "0":
                mul[(a, b)] = "0"
                add[(a, b)] = [b if a == "0" else a]
                continue
            mul[(a, b)] = cmul(a, b)
            if b == neg[a]:
                add[(a, b)] = list(elements)
            else:
                add[(a, b)] = [z for z in labels
                               if padic_isotropic(p, (reps[a], reps[b], -reps[z]),
                                                  cfg.N)]
    h = Hyperfield.from_tables(elements, "0", "1", neg, mul, add,
                               metadata={"generator": "padic", "p": p})
    return validated(h), u_int


def q_padic(p, cfg: PadicOracleConfig = None) -> Hyperfield:
    """Quadratic hyperfield of Q_p for odd p, computed two independent ways
    and asserted equal: (a) a rank-one group extension of the residue
    hyperfield; (b) the representability oracle on square classes
    {1, u, p, up}.  Disagreement signals an implementation bug."""
    if p == 2:
        raise DyadicResidueError("use q_2adic for p = 2")
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    cfg = cfg or PadicOracleConfig(p)
    oracle, u_int = _oracle_q_padic(p, cfg)

    ext, _ = group_extension(q_finite_field(FiniteFieldSpec(p)), 1, gens=(str(p),))
    if p % 4 == 3:
        mapping = {f"-1·{p}": str(-p)}
    else:
        mapping = {"s": str(u_int), f"s·{p}": str(u_int * p)}
    ext = relabel(ext, mapping)

    if not (ext.elements == oracle.elements and ext._neg == oracle._neg
            and ext._mul == oracle._mul and ext._masks == oracle._masks):
        raise OracleDisagreementError(
            f"extension table and p-adic oracle differ for p = {p}")
    meta = {"generator": "padic", "p": p}
    return Hyperfield(oracle.elements, "0", "1", oracle._neg, oracle._mul,
                      oracle._masks, meta)


TWO_ADIC_REPS = (1, -1, 2, -2, 5, -5, 10, -10)


def q_2adic(cfg: PadicOracleConfig = None) -> Hyperfield:
    """Quadratic hyperfield of Q_2: eight square classes represented by
    {±1, ±2, ±5, ±10}; units are squares iff = 1 mod 8; value sets come
    from the primitive-solution search modulo 2^N."""
    cfg = cfg or PadicOracleConfig(2, 9)
    if cfg.p != 2:
        raise PreconditionError("q_2adic needs a p = 2 oracle config")
    if cfg.N < 9:
        raise PrecisionTooLowError(
            "q_2adic needs N >= 9 so every value-set membership carries a "
            "lifting certificate")

    def class_bits(r):
        v = _vp(r, 2)
        unit = (r // (1 << v)) % 8
        return ({1: (0, 0), 7: (1, 0), 5: (0, 1), 3: (1, 1)}[unit], v % 2)

    bits = {str(r): class_bits(r) for r in TWO_ADIC_REPS}
    by_bits = {v: k for k, v in bits.items()}
    reps = {str(r): r for r in TWO_ADIC_REPS}
    labels = [str(r) for r in TWO_ADIC_REPS]
    elements = ["0"] + labels

    def cmul(a, b):
        (e1, e5), v1 = bits[a]
        (f1, f5), v2 = bits[b]
        return by_bits[((e1 ^ f1, e5 ^ f5), v1 ^ v2)]

    def cneg(a):
        (e1, e5), v = bits[a]
        return by_bits[((e1 ^ 1, e5), v)]

    neg = {"0": "0", **{a: cneg(a) for a in labels}}
    mul, add = {}, {}
    for a in elements:
        for b in elements:
            if a == "0" or b == "0":
                mul[(a, b)] = "0"
                add[(a, b)] = [b if a == "0" else a]
                continue
            mul[(a, b)] = cmul(a, b)
            if b == neg[a]:
                add[(a, b)] = list(elements)
            else:
                add[(a, b)] = [z for z in labels
                               if padic_isotropic(2, (reps[a], reps[b], -reps[z]),
                                                  cfg.N)]
    h = Hyperfield.from_tables(elements, "0", "1", neg, mul, add,
                               metadata={"generator": "2adic"})
    h = validated(h)
    if not is_quadratic(h):
        raise InvalidHyperfieldError("2-adic table lost the quadratic properties")
    return h


# -- dyadic-likeness predicate -------------------------------------------------------

def char2_criterion(h: Hyperfield) -> bool:
    """True iff for all nonzero x, y != 1 with y in D<1,x>, the value sets
    D<1,y> and D<1,x> coincide.

    Over a field of characteristic 2 this always holds; its failure
    certifies that the hyperfield is not characteristic-2-like.
    """
    if not is_quadratic(h):
        raise PreconditionError("predicate needs a quadratic hyperfield")
    one = h.one
    star = [a for a in h.star if a != one]
    dsets = {x: frozenset(v for v in h.add_of(one, x) if v != h.zero) for x in star}
    for x in star:
        for y in dsets[x]:
            if y != one and y in dsets and dsets[y] != dsets[x]:
                return False
    return True


# -- nominal transcendence degree bookkeeping ------------------------------------------

@dataclass(frozen=True)
class ValuationDescriptor:
    """(rational rank of the value group, nominal transcendence degree of
    the residue field, residue characteristic); the j-index of the bucket
    is 0/2/1 for residue characteristic 0/2/other."""

    rkQ: int
    ntd_residue: int
    residue_char: int

    def __post_init__(self):
        if self.rkQ < 0:
            raise PreconditionError("rational rank must be >= 0")
        if self.ntd_residue < -1:
            raise PreconditionError("residue ntd must be >= -1")
        if self.residue_char != 0 and not _is_prime(self.residue_char):
            raise PreconditionError("residue characteristic must be 0 or prime")

    @property
    def j(self):
        if self.residue_char == 0:
            return 0
        if self.residue_char == 2:
            return 2
        return 1


@dataclass(frozen=True)
class NtdResult:
    abhyankar: bool
    bucket: tuple   # (i, j), or None when the residue field is finite


def ntd_arithmetic(desc: ValuationDescriptor, ambient_ntd: int) -> NtdResult:
    """Abhyankar bookkeeping: the valuation is Abhyankar iff the ambient
    nominal transcendence degree equals rkQ + residue ntd; strictly smaller
    is impossible."""
    total = desc.rkQ + desc.ntd_residue
    if ambient_ntd < total:
        raise InequalityViolationError(
            f"ntd {ambient_ntd} < rkQ + residue ntd = {total}")
    bucket = (desc.ntd_residue, desc.j) if desc.ntd_residue >= 0 else None
    return NtdResult(abhyankar=(ambient_ntd == total), bucket=bucket)


# -- the square-ideal group of Q ------------------------------------------------------

def _squarefree_part(n):
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return out * n


def v_q_membership(r) -> bool:
    """Does the fractional ideal (r) of Q have a square ideal class
    representative, i.e. is every prime exponent of r even?"""
    r = Fraction(r)
    if r == 0:
        raise PreconditionError("zero input")
    return (_squarefree_part(r.numerator) == 1
            and _squarefree_part(r.denominator) == 1)


def v_q_2rank(bound: int = 50) -> int:
    """2-rank of V_Q / Q*^2, computed by enumerating the sign-and-parity
    data of members up to the bound: the member classes are exactly ±1."""
    classes = set()
    for d in range(-bound, bound + 1):
        if d == 0:
            continue
        if v_q_membership(d):
            sign = -1 if d < 0 else 1
            classes.add(sign * _squarefree_part(d))
    size = len(classes)
    if size & (size - 1):
        raise InvalidHyperfieldError("class enumeration is not a 2-group")
    return size.bit_length() - 1
