"""Hyperfield constructions: quotients, prime addition, ordered-group
hyperfields, group extensions of quadratic hyperfields, and the builder
that turns a value-set table (an abstract quadratic form scheme) into a
hyperfield.

Every constructor returns tables that pass the full axiom battery; a
construction that cannot is a bug and raises InvalidHyperfieldError.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Hyperfield,
    Morphism,
    SquareClassSubgroup,
    classify_morphism,
    is_quadratic,
    validated,
)
from .errors import (
    InvalidSubgroupError,
    InvalidValueSetTableError,
    MalformedTableError,
    PreconditionError,
)


def krasner() -> Hyperfield:
    """The two-element hyperfield {0,1} with 1+1 = {0,1}."""
    h = Hyperfield(
        ["0", "1"], "0", "1",
        neg=[0, 1],
        mul=[0, 0, 0, 1],
        masks=[0b01, 0b10, 0b10, 0b11],
        metadata={"generator": "krasner"},
    )
    return validated(h)


def identity_morphism(h: Hyperfield) -> Morphism:
    return Morphism(h, h, {a: a for a in h.elements}, kind="isomorphism")


# -- quotient -----------------------------------------------------------------

def quotient(h: Hyperfield, t: SquareClassSubgroup):
    """The quotient hyperfield H/T modulo a multiplicative subgroup T,
    together with the canonical morphism.

    Nonzero classes are the cosets aT, labeled by their least member in
    element order; a class A lies in B+C iff some member of A lies in
    bt+cu for coset representatives b, c and t, u ranging over T.
    """
    if t.ambient is not h and t.ambient != h:
        raise InvalidSubgroupError("subgroup belongs to a different ambient")
    n = h.n
    z = h.zero_i
    t_idx = sorted(h.index(x) for x in t.members)

    rep_of = [None] * n          # element index -> representative index
    rep_of[z] = z
    reps = [z]
    for a in range(n):
        if a == z or rep_of[a] is not None:
            continue
        coset = sorted(h.mul_i(a, s) for s in t_idx)
        for x in coset:
            rep_of[x] = coset[0]
        reps.append(coset[0])
    reps = [z] + sorted(r for r in reps if r != z)

    q_index = {r: i for i, r in enumerate(reps)}
    labels = [h.label(r) for r in reps]
    m = len(reps)

    neg_q = [q_index[rep_of[h.neg_i(r)]] for r in reps]
    mul_q = [0] * (m * m)
    masks_q = [0] * (m * m)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            mul_q[i * m + j] = q_index[rep_of[h.mul_i(a, b)]]
            if a == z or b == z:
                union = h.add_mask(a, b)
            else:
                union = 0
                for s in t_idx:
                    at = h.mul_i(a, s)
                    for u in t_idx:
                        union |= h.add_mask(at, h.mul_i(b, u))
            mask = 0
            for x in range(n):
                if union >> x & 1:
                    mask |= 1 << q_index[rep_of[x]]
            masks_q[i * m + j] = mask

    meta = {"generator": "quotient",
            "subgroup": sorted(t.members, key=h.index),
            "base": h.metadata.get("generator")}
    hq = validated(Hyperfield(labels, h.zero, labels[q_index[rep_of[h.one_i]]],
                              neg_q, mul_q, masks_q, meta))
    phi = Morphism(h, hq, {h.label(a): h.label(rep_of[a]) for a in range(n)})
    phi.kind = classify_morphism(phi)
    return hq, phi


# -- prime addition -------------------------------------------------------------

def prime(h: Hyperfield) -> Hyperfield:
    """The prime of H: adjoin {a,b} to every sum of nonzero a, b, and let
    a + (-a) be the whole carrier."""
    n = h.n
    z = h.zero_i
    full = (1 << n) - 1
    masks = list(h._masks)
    for a in range(n):
        if a == z:
            continue
        for b in range(n):
            if b == z:
                continue
            if b == h.neg_i(a):
                masks[a * n + b] = full
            else:
                masks[a * n + b] |= (1 << a) | (1 << b)
    meta = dict(h.metadata)
    meta["generator"] = "prime"
    return validated(Hyperfield(h.elements, h.zero, h.one,
                                h._neg, h._mul, masks, meta))


# -- group extensions ------------------------------------------------------------

def group_extension(h0: Hyperfield, r: int, gens=None):
    """Extend a quadratic hyperfield by the group (Z/2)^r: every element
    outside the embedded base is rigid, sums inside a coset are inherited
    from the base, and sums across distinct cosets are {x, y}.

    Returns the extension together with the embedding, which classifies as
    a group extension (as an isomorphism when r = 0).  The base must have
    exponent-2 multiplication with 1+a a subgroup for a != -1.
    """
    if r < 0:
        raise PreconditionError("rank must be nonnegative")
    if not is_quadratic(h0):
        raise PreconditionError(
            "base lacks the quadratic-hyperfield properties "
            "(exponent-2 squares, 1+a a subgroup for a != -1)")
    if r == 0:
        return h0, identity_morphism(h0)

    star0 = h0.star                      # base labels, element order
    ngroup = 1 << r

    def make_labels(gens):
        def glabel(g):
            return "·".join(gens[i] for i in range(r) if g >> i & 1)

        def pair_label(u, g):
            if g == 0:
                return u
            word = glabel(g)
            return word if u == h0.one else f"{u}·{word}"

        pairs = [(u, g) for g in range(ngroup) for u in star0]
        return pairs, [h0.zero] + [pair_label(u, g) for u, g in pairs], pair_label

    if gens is None:
        # pick generator names that collide with nothing already present
        # (iterated extensions keep their earlier e_i labels)
        offset = 0
        while True:
            gens = tuple(f"e{offset + i + 1}" for i in range(r))
            pairs, labels, pair_label = make_labels(gens)
            if len(set(labels)) == len(labels):
                break
            offset += 1
    else:
        gens = tuple(gens)
        if len(gens) != r:
            raise PreconditionError("need one generator label per rank")
        pairs, labels, pair_label = make_labels(gens)
        if len(set(labels)) != len(labels):
            raise MalformedTableError("generator labels collide with the base")
    pos = {p: i + 1 for i, p in enumerate(pairs)}
    n = len(labels)
    full = (1 << n) - 1

    neg_t = [0] * n
    for (u, g), i in pos.items():
        neg_t[i] = pos[(h0.neg_of(u), g)]
    mul_t = [0] * (n * n)
    masks = [0] * (n * n)
    masks[0] = 1
    for (u, g), i in pos.items():
        mul_t[i * n + 0] = 0
        mul_t[0 * n + i] = 0
        masks[i * n + 0] = 1 << i
        masks[0 * n + i] = 1 << i
        for (v, h), j in pos.items():
            mul_t[i * n + j] = pos[(h0.mul_of(u, v), g ^ h)]
            if v == h0.neg_of(u) and h == g:
                masks[i * n + j] = full
            elif g == h:
                m = 0
                for w in h0.add_of(u, v):
                    if w != h0.zero:
                        m |= 1 << pos[(w, g)]
                masks[i * n + j] = m
            else:
                masks[i * n + j] = (1 << i) | (1 << j)

    meta = {"generator": "extension", "rank": r, "gens": list(gens),
            "base": h0.metadata.get("generator")}
    ext = validated(Hyperfield(labels, h0.zero, h0.one, neg_t, mul_t, masks, meta))
    iota = Morphism(h0, ext,
                    {h0.zero: h0.zero, **{u: pair_label(u, 0) for u in star0}})
    iota.kind = classify_morphism(iota)
    return ext, iota


def sub_hyperfield(h: Hyperfield, members, validate=True) -> Hyperfield:
    """Restriction of H to a multiplicatively closed set of nonzero
    elements plus zero; addition sets are intersected with the new carrier.

    Raises MalformedTableError if some intersection is empty, and (when
    ``validate``) InvalidHyperfieldError if the restriction fails axioms.
    """
    members = set(members)
    order = [lab for lab in h.elements if lab in members and lab != h.zero]
    for a in order:
        if h.neg_of(a) not in members:
            raise InvalidSubgroupError(f"not closed under negation: {a!r}")
        for b in order:
            if h.mul_of(a, b) not in members:
                raise InvalidSubgroupError(f"not closed under product: {a!r}*{b!r}")
    carrier = [h.zero] + order
    keep = set(carrier)
    add = {}
    mul = {}
    for a in carrier:
        for b in carrier:
            mul[(a, b)] = h.mul_of(a, b)
            vals = [c for c in h.add_of(a, b) if c in keep]
            add[(a, b)] = vals
    sub = Hyperfield.from_tables(carrier, h.zero, h.one,
                                 {a: h.neg_of(a) for a in carrier}, mul, add,
                                 metadata={"generator": "restriction"})
    return validated(sub) if validate else sub


# -- the hyperfield of an ordered abelian group -----------------------------------

class OrderedGroupHyperfield:
    """Lazy hyperfield on Z^rank (lexicographically ordered) plus a zero.

    Elements are integer tuples of length ``rank`` or None for the zero.
    The additive value-group convention is used: the sum of two distinct
    elements is their lexicographic minimum, and a + a is {0} together
    with everything >= a.  Only membership queries and products are
    offered; the carrier is infinite, so there is no table form.
    """

    def __init__(self, rank: int):
        if rank < 1:
            raise PreconditionError("rank must be >= 1")
        self.rank = rank
        self.zero = None
        self.one = (0,) * rank

    def _check(self, a):
        if a is None:
            return
        if not (isinstance(a, tuple) and len(a) == self.rank
                and all(isinstance(x, int) for x in a)):
            raise MalformedTableError(f"not a rank-{self.rank} vector: {a!r}")

    def mul(self, a, b):
        self._check(a), self._check(b)
        if a is None or b is None:
            return None
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        self._check(a)
        return a

    def add_contains(self, c, a, b):
        """Is c a member of a + b?"""
        for x in (a, b, c):
            self._check(x)
        if a is None:
            return c == b
        if b is None:
            return c == a
        if a != b:
            return c == min(a, b)
        return c is None or c >= a

    def dominant(self, a, b):
        """The unique member of a + b for distinct nonzero a, b."""
        self._check(a), self._check(b)
        if a is None or b is None or a == b:
            raise PreconditionError("dominance needs distinct nonzero operands")
        return min(a, b)


def ordered_group_hyperfield(rank: int) -> OrderedGroupHyperfield:
    return OrderedGroupHyperfield(rank)


# -- scheme-to-hyperfield builder ---------------------------------------------------

@dataclass(frozen=True)
class ValueSetTable:
    """Input of the scheme builder: an exponent-2 group G with a
    distinguished element -1 and a value-set map V with 1, a in V(a) and
    every V(a) a subgroup of G."""

    group: tuple
    minus_one: str
    mul: dict          # (a, b) -> label, half or full
    value_sets: dict   # label -> frozenset of labels

    def product(self, a, b):
        if (a, b) in self.mul:
            return self.mul[(a, b)]
        if (b, a) in self.mul:
            return self.mul[(b, a)]
        raise InvalidValueSetTableError(f"mul undefined for ({a!r}, {b!r})")

    def identity(self):
        for e in self.group:
            if all(self.product(e, a) == a for a in self.group):
                return e
        raise InvalidValueSetTableError("group has no identity")

    def validate(self):
        g = self.group
        if len(set(g)) != len(g):
            raise InvalidValueSetTableError("duplicate group labels")
        if self.minus_one not in g:
            raise InvalidValueSetTableError("-1 not in group")
        one = self.identity()
        for a in g:
            for b in g:
                if self.product(a, b) not in g:
                    raise InvalidValueSetTableError("group not closed")
            if self.product(a, a) != one:
                raise InvalidValueSetTableError(f"{a!r} does not square to identity")
        for a in g:
            if a not in self.value_sets:
                raise InvalidValueSetTableError(f"V undefined for {a!r}")
            v = self.value_sets[a]
            if one not in v or a not in v:
                raise InvalidValueSetTableError(f"V({a!r}) must contain 1 and {a!r}")
            for x in v:
                if x not in g:
                    raise InvalidValueSetTableError(f"V({a!r}) leaves the group")
                for y in v:
                    if self.product(x, y) not in v:
                        raise InvalidValueSetTableError(f"V({a!r}) is not a subgroup")
        return one


def scheme_to_hyperfield(table: ValueSetTable, zero_label="0") -> Hyperfield:
    """Adjoin a zero to a value-set table: a + b is a·V(ab) for distinct
    cosets and the whole carrier when b = -a.

    The result must pass the axiom battery and the quadratic-hyperfield
    properties; a table whose value sets are inconsistent (the builder's
    output fails either) raises InvalidValueSetTableError.
    """
    one = table.validate()
    if zero_label in table.group:
        raise InvalidValueSetTableError("zero label collides with a group label")
    carrier = [zero_label] + list(table.group)
    neg = {zero_label: zero_label}
    mul = {}
    add = {}
    for a in table.group:
        neg[a] = table.product(table.minus_one, a)
    for a in carrier:
        for b in carrier:
            if a == zero_label or b == zero_label:
                mul[(a, b)] = zero_label
                add[(a, b)] = [b] if a == zero_label else [a]
                continue
            mul[(a, b)] = table.product(a, b)
            if b == neg[a]:
                add[(a, b)] = list(carrier)
            else:
                v = table.value_sets[table.product(a, b)]
                add[(a, b)] = [table.product(a, x) for x in v]
    h = Hyperfield.from_tables(carrier, zero_label, one, neg, mul, add,
                               metadata={"generator": "scheme"})
    try:
        h = validated(h)
    except Exception as e:
        raise InvalidValueSetTableError(
            f"value sets do not generate a hyperfield: {e}") from e
    if not is_quadratic(h):
        raise InvalidValueSetTableError(
            "builder output lacks the quadratic-hyperfield properties")
    return h
