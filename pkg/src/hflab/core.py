"""Finite hyperfields with exact tables: the carrier type, the axiom
battery, morphism checking and classification, and isomorphism search.

A hyperfield is a field-like structure whose addition is multivalued:
``a + b`` is a nonempty subset of the carrier.  Everything here is exact
and exhaustive; no floating point, no sampling.

Representation: element labels are opaque strings; internally every table
is compiled to index form, with addition sets stored as integer bitmasks
(bit ``c`` of ``add[a][b]`` set iff element ``c`` lies in ``a+b``).
Instances are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import kernels
from .errors import (
    InvalidHyperfieldError,
    InvalidSubgroupError,
    MalformedTableError,
    PreconditionError,
)

AXIOM_IDS = (
    "I(1)", "I(2)", "I(3)", "I(4)", "II", "III", "IV", "V",
    "(i)", "(ii)", "(iii)", "(iv)", "(v)",
)

DERIVED_IDS = ("(i)", "(ii)", "(iii)", "(iv)", "(v)")


class Hyperfield:
    """Exact tables for a (candidate) hyperfield on a finite carrier.

    Use :meth:`from_tables` to build from label-keyed mappings.  That
    constructor performs structural checks only (totality, known labels,
    nonempty addition sets); semantic validity is the business of
    :func:`check_axioms`.  Library constructors (``krasner``, ``quotient``,
    ``prime``, ...) only ever emit instances that pass the full battery.
    """

    __slots__ = ("elements", "zero", "one", "metadata",
                 "_idx", "n", "_neg", "_mul", "_masks", "_full", "_cache")

    def __init__(self, elements, zero, one, neg, mul, masks, metadata=None):
        # index-level constructor; see from_tables for the label-level one
        self.elements = tuple(elements)
        self.n = len(self.elements)
        if len(set(self.elements)) != self.n:
            raise MalformedTableError("duplicate element labels")
        self.zero = zero
        self.one = one
        self._idx = {lab: i for i, lab in enumerate(self.elements)}
        self._neg = tuple(neg)
        self._mul = tuple(mul)
        self._masks = tuple(masks)
        self._full = (1 << self.n) - 1
        self._cache = {}      # memo store for pure derived data
        self.metadata = dict(metadata or {})

    # -- construction -----------------------------------------------------

    @classmethod
    def from_tables(cls, elements, zero, one, neg, mul, add, metadata=None):
        """Build from label-keyed tables.

        ``mul`` and ``add`` may be keyed by either or both orientations of
        each unordered pair; a missing orientation is mirrored.  If both
        orientations are present they are kept as given, so a genuinely
        asymmetric table can be fed to check_axioms and fail I(4)/II there.

        Raises MalformedTableError on structural defects (the distinct
        error channel that fires before any axiom is evaluated).
        """
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise MalformedTableError("duplicate element labels")
        idx = {lab: i for i, lab in enumerate(elements)}
        for special, name in ((zero, "zero"), (one, "one")):
            if special not in idx:
                raise MalformedTableError(f"{name} label {special!r} not in carrier")
        n = len(elements)

        neg_t = [None] * n
        for a, i in idx.items():
            if a not in neg:
                raise MalformedTableError(f"neg undefined for {a!r}")
            v = neg[a]
            if v not in idx:
                raise MalformedTableError(f"neg({a!r}) = {v!r} not in carrier")
            neg_t[i] = idx[v]

        def resolve(table, what, pair):
            a, b = pair
            if (a, b) in table:
                return table[(a, b)]
            if (b, a) in table:
                return table[(b, a)]
            raise MalformedTableError(f"{what} undefined for ({a!r}, {b!r})")

        mul_t = [0] * (n * n)
        masks = [0] * (n * n)
        for a, i in idx.items():
            for b, j in idx.items():
                v = resolve(mul, "mul", (a, b))
                if v not in idx:
                    raise MalformedTableError(f"mul({a!r},{b!r}) = {v!r} not in carrier")
                mul_t[i * n + j] = idx[v]
                vals = resolve(add, "add", (a, b))
                m = 0
                for c in vals:
                    if c not in idx:
                        raise MalformedTableError(f"add({a!r},{b!r}) contains unknown {c!r}")
                    m |= 1 << idx[c]
                if m == 0:
                    raise MalformedTableError(f"add({a!r},{b!r}) is empty")
                masks[i * n + j] = m
        return cls(elements, zero, one, neg_t, mul_t, masks, metadata)

    # -- index-level access -----------------------------------------------

    @property
    def zero_i(self):
        return self._idx[self.zero]

    @property
    def one_i(self):
        return self._idx[self.one]

    def index(self, label):
        return self._idx[label]

    def label(self, i):
        return self.elements[i]

    def neg_i(self, i):
        return self._neg[i]

    def mul_i(self, i, j):
        return self._mul[i * self.n + j]

    def add_mask(self, i, j):
        return self._masks[i * self.n + j]

    def star_i(self):
        z = self.zero_i
        return tuple(i for i in range(self.n) if i != z)

    def mask_labels(self, mask):
        """Decode a bitmask into a tuple of labels in element order."""
        return tuple(self.elements[i] for i in range(self.n) if mask >> i & 1)

    def labels_mask(self, labels):
        m = 0
        for lab in labels:
            m |= 1 << self._idx[lab]
        return m

    # -- label-level access -------------------------------------------------

    @property
    def star(self):
        """Nonzero element labels, in element order."""
        return tuple(lab for lab in self.elements if lab != self.zero)

    def neg_of(self, a):
        return self.elements[self._neg[self._idx[a]]]

    def mul_of(self, a, b):
        return self.elements[self.mul_i(self._idx[a], self._idx[b])]

    def add_of(self, a, b):
        return frozenset(self.mask_labels(self.add_mask(self._idx[a], self._idx[b])))

    def inv_i(self, i):
        """Index of the multiplicative inverse, or None; cached."""
        inv = self._cache.get("inv")
        if inv is None:
            inv = [None] * self.n
            o = self.one_i
            for a in self.star_i():
                for b in self.star_i():
                    if self.mul_i(a, b) == o:
                        inv[a] = b
                        break
            self._cache["inv"] = inv
        return inv[i]

    def inverse_of(self, a):
        """Multiplicative inverse of a nonzero element, or None."""
        j = self.inv_i(self._idx[a])
        return None if j is None else self.elements[j]

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Hyperfield):
            return NotImplemented
        return (self.elements == other.elements and self.zero == other.zero
                and self.one == other.one and self._neg == other._neg
                and self._mul == other._mul and self._masks == other._masks)

    def __hash__(self):
        return hash((self.elements, self.zero, self.one,
                     self._neg, self._mul, self._masks))

    def __repr__(self):
        return f"Hyperfield({list(self.elements)!r})"


def relabel(h: Hyperfield, mapping: Mapping[str, str]) -> Hyperfield:
    """Rename elements; identity on labels not in ``mapping``."""
    new = [mapping.get(lab, lab) for lab in h.elements]
    if len(set(new)) != len(new):
        raise MalformedTableError("relabeling collides")
    return Hyperfield(new, mapping.get(h.zero, h.zero), mapping.get(h.one, h.one),
                      h._neg, h._mul, h._masks, h.metadata)


# -- axiom battery ----------------------------------------------------------

@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    passed: bool
    witness: tuple = ()
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the full axiom battery, one entry per axiom identifier.

    Derived consequences (i)-(v) are reported separately; a derived failure
    without an axiom failure flags a checker bug.
    """

    checks: tuple

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return tuple(c for c in self.checks if not c.passed)

    @property
    def flags_checker_bug(self):
        axioms_ok = all(c.passed for c in self.checks if c.axiom not in DERIVED_IDS)
        derived_bad = any(not c.passed for c in self.checks if c.axiom in DERIVED_IDS)
        return axioms_ok and derived_bad

    def to_dict(self):
        return {
            "valid": self.ok,
            "checker_bug": self.flags_checker_bug,
            "checks": [
                {"axiom": c.axiom, "passed": c.passed,
                 "witness": list(c.witness), "detail": c.detail}
                for c in self.checks
            ],
        }


def check_axioms(h: Hyperfield) -> AxiomReport:
    """Exhaustively check the hyperfield axioms and derived consequences.

    Every check scans in ascending element order, so a reported witness is
    the lexicographically first counterexample.  Structural defects are not
    reported here: they raise MalformedTableError at table construction,
    before any axiom is evaluated.
    """
    n = h.n
    lab = h.elements
    z, o = h.zero_i, h.one_i
    masks, mul, neg = h._masks, h._mul, h._neg
    checks = []

    def add_check(axiom, witness, detail=""):
        checks.append(AxiomCheck(axiom, witness is None,
                                 tuple(lab[i] for i in witness) if witness else (),
                                 detail))

    # I(1) reversibility: c in a+b  =>  a in c+(-b)
    w = None
    for a in range(n):
        if w:
            break
        for b in range(n):
            if w:
                break
            m = masks[a * n + b]
            nb = neg[b]
            for c in range(n):
                if m >> c & 1 and not masks[c * n + nb] >> a & 1:
                    w = (a, b, c)
                    break
    add_check("I(1)", w, "reversibility")

    # I(2): a in b+0 iff a = b
    w = None
    for b in range(n):
        if masks[b * n + z] != 1 << b or masks[z * n + b] != 1 << b:
            w = (b,)
            break
    add_check("I(2)", w, "zero is the additive identity")

    # I(3) associativity, as set equality of (a+b)+c and a+(b+c)
    w = kernels.first_assoc_violation(n, masks)
    add_check("I(3)", w, "associativity")

    # I(4) commutativity of addition
    w = None
    for a in range(n):
        if w:
            break
        for b in range(n):
            if masks[a * n + b] != masks[b * n + a]:
                w = (a, b)
                break
    add_check("I(4)", w, "commutativity of addition")

    # II: commutative monoid under multiplication
    w, detail = None, ""
    for a in range(n):
        if mul[a * n + o] != a:
            w, detail = (a,), "1 is not a multiplicative identity"
            break
    if w is None:
        for a in range(n):
            if w:
                break
            for b in range(n):
                if mul[a * n + b] != mul[b * n + a]:
                    w, detail = (a, b), "multiplication not commutative"
                    break
    if w is None:
        w = kernels.first_mul_assoc_violation(n, mul)
        if w:
            detail = "multiplication not associative"
    add_check("II", w, detail or "commutative monoid")

    # III: a*0 = 0
    w = None
    for a in range(n):
        if mul[a * n + z] != z:
            w = (a,)
            break
    add_check("III", w, "zero absorbs")

    # IV: a(b+c) subset of ab+ac
    w = kernels.first_distrib_violation(n, masks, mul)
    add_check("IV", w, "distributivity inclusion")

    # V: 1 != 0 and every nonzero element is invertible
    w = None
    if z == o:
        w = (o,)
        detail = "zero equals one"
    else:
        detail = "missing multiplicative inverse"
        for a in range(n):
            if a == z:
                continue
            if not any(mul[a * n + b] == o for b in range(n)):
                w = (a,)
                break
    add_check("V", w, detail if w else "units")

    # derived consequences
    add_check("(i)", None if neg[z] == z else (z,), "-0 = 0")
    w = None
    for a in range(n):
        if neg[neg[a]] != a:
            w = (a,)
            break
    add_check("(ii)", w, "-(-a) = a")
    w = None
    for a in range(n):
        if w:
            break
        for b in range(n):
            if masks[a * n + b] == 0:
                w = (a, b)
                break
    add_check("(iii)", w, "a+b nonempty")
    w = None
    for a in range(n):
        if w:
            break
        for b in range(n):
            if mul[a * n + neg[b]] != neg[mul[a * n + b]]:
                w = (a, b)
                break
    add_check("(iv)", w, "a(-b) = -(ab)")
    w = None
    for a in range(n):
        if w:
            break
        for b in range(n):
            if mul[neg[a] * n + neg[b]] != mul[a * n + b]:
                w = (a, b)
                break
    add_check("(v)", w, "(-a)(-b) = ab")

    return AxiomReport(tuple(checks))


def validated(h: Hyperfield) -> Hyperfield:
    """Return ``h`` if it passes the axiom battery, else raise."""
    report = check_axioms(h)
    if not report.ok:
        bad = ", ".join(c.axiom for c in report.failures)
        raise InvalidHyperfieldError(f"table fails axiom(s) {bad}", report)
    return h


def is_quadratic(h: Hyperfield) -> bool:
    """True iff every nonzero element squares to 1 and 1+a is a subgroup
    of the multiplicative group for every a != -1.

    These are the two structural properties of quadratic hyperfields; they
    are exactly what the scheme builder produces and what group extensions
    require of their base.
    """
    o = h.one_i
    star = h.star_i()
    for a in star:
        if h.mul_i(a, a) != o:
            return False
    neg_one = h.neg_i(o)
    zbit = 1 << h.zero_i
    for a in star:
        if a == neg_one:
            continue
        m = h.add_mask(o, a)
        if m & zbit or not m >> o & 1:
            return False
        members = [i for i in range(h.n) if m >> i & 1]
        for x in members:
            for y in members:
                if not m >> h.mul_i(x, y) & 1:
                    return False
    return True


# -- subgroups of the multiplicative group ----------------------------------

@dataclass(frozen=True)
class SquareClassSubgroup:
    """A subgroup of H*; in exponent-2 ambients, a subspace over GF(2)."""

    ambient: Hyperfield
    members: frozenset

    def __post_init__(self):
        h = self.ambient
        if h.zero in self.members:
            raise InvalidSubgroupError("subgroup contains zero")
        if h.one not in self.members:
            raise InvalidSubgroupError("subgroup misses one")
        for a in self.members:
            if a not in h._idx:
                raise InvalidSubgroupError(f"unknown element {a!r}")
            inv = h.inverse_of(a)
            if inv is None or inv not in self.members:
                raise InvalidSubgroupError(f"no inverse for {a!r} in subgroup")
            for b in self.members:
                if h.mul_of(a, b) not in self.members:
                    raise InvalidSubgroupError(
                        f"not closed under multiplication: {a!r}*{b!r}")

    @property
    def mask(self):
        return self.ambient.labels_mask(self.members)

    def sorted_labels(self):
        idx = self.ambient.index
        return tuple(sorted(self.members, key=idx))

    def __contains__(self, label):
        return label in self.members

    def __len__(self):
        return len(self.members)


def subgroup(h: Hyperfield, labels: Iterable[str]) -> SquareClassSubgroup:
    return SquareClassSubgroup(h, frozenset(labels))


def generated_subgroup(h: Hyperfield, gens: Iterable[str]) -> SquareClassSubgroup:
    """Subgroup of H* generated by the given nonzero elements."""
    members = {h.one}
    frontier = [h.one] + [g for g in gens]
    while frontier:
        x = frontier.pop()
        for y in list(members):
            for p in (h.mul_of(x, y),):
                if p not in members:
                    members.add(p)
                    frontier.append(p)
        if x not in members:
            members.add(x)
            frontier.append(x)
    # close under inverses for ambients of exponent > 2
    changed = True
    while changed:
        changed = False
        for x in list(members):
            inv = h.inverse_of(x)
            if inv is not None and inv not in members:
                members.add(inv)
                changed = True
    return SquareClassSubgroup(h, frozenset(members))


# -- morphisms ----------------------------------------------------------------

@dataclass
class Morphism:
    """A carrier map between hyperfields with a classification flag."""

    source: Hyperfield
    target: Hyperfield
    map: dict
    kind: str = "general"

    def __call__(self, label):
        return self.map[label]

    def image_star(self):
        return frozenset(self.map[a] for a in self.source.star)

    def is_bijective(self):
        return (self.source.n == self.target.n
                and len(set(self.map.values())) == self.source.n)

    def inverse(self):
        if not self.is_bijective():
            raise PreconditionError("morphism is not bijective")
        return Morphism(self.target, self.source,
                        {v: k for k, v in self.map.items()}, kind=self.kind)

    def to_dict(self):
        return {"map": dict(sorted(self.map.items())), "kind": self.kind}


@dataclass(frozen=True)
class MorphismCheck:
    ok: bool
    violation: tuple = ()


def is_morphism(f: Morphism) -> MorphismCheck:
    """Check the five morphism conditions; on failure report the first
    violation as (condition, labels...).

    Sources and targets are assumed to pass check_axioms (precondition).
    """
    h1, h2, m = f.source, f.target, f.map
    for a in h1.elements:
        if a not in m:
            raise MalformedTableError(f"map undefined for {a!r}")
        if m[a] not in h2._idx:
            raise MalformedTableError(f"map({a!r}) = {m[a]!r} not in target")
    if m[h1.zero] != h2.zero:
        return MorphismCheck(False, ("zero",))
    if m[h1.one] != h2.one:
        return MorphismCheck(False, ("one",))
    for a in h1.elements:
        if m[h1.neg_of(a)] != h2.neg_of(m[a]):
            return MorphismCheck(False, ("neg", a))
    for a in h1.elements:
        for b in h1.elements:
            if m[h1.mul_of(a, b)] != h2.mul_of(m[a], m[b]):
                return MorphismCheck(False, ("mul", a, b))
    for a in h1.elements:
        for b in h1.elements:
            target = h2.add_of(m[a], m[b])
            for c in h1.add_of(a, b):
                if m[c] not in target:
                    return MorphismCheck(False, ("add", a, b, c))
    return MorphismCheck(True)


def _is_quotient_morphism(f: Morphism) -> bool:
    h1, h2, m = f.source, f.target, f.map
    if frozenset(m.values()) != frozenset(h2.elements):
        return False
    delta = [a for a in h1.star if m[a] == h2.one]
    n1 = h1.n
    for a in range(n1):
        for b in range(n1):
            sat = 0
            for t in delta:
                at = h1.mul_i(a, h1.index(t))
                for u in delta:
                    sat |= h1.add_mask(at, h1.mul_i(b, h1.index(u)))
            # saturate by delta: c qualifies iff some c*s lands in sat
            reach = 0
            for x in range(n1):
                if sat >> x & 1:
                    for s in delta:
                        reach |= 1 << h1.mul_i(x, h1.index(s))
            lhs = 0
            fa, fb = h2.index(m[h1.label(a)]), h2.index(m[h1.label(b)])
            tgt = h2.add_mask(fa, fb)
            for c in range(n1):
                if tgt >> h2.index(m[h1.label(c)]) & 1:
                    lhs |= 1 << c
            if lhs != reach:
                return False
    return True


def _is_group_extension(f: Morphism) -> bool:
    h1, h2, m = f.source, f.target, f.map
    if len(set(m.values())) != h1.n:
        return False
    image = f.image_star()
    for y in h2.star:
        if y in image:
            continue
        allowed = {h2.one, y}
        if not h2.add_of(h2.one, y) <= allowed:
            return False
    neg_one = h1.neg_of(h1.one)
    for y in h1.elements:
        if y == neg_one:
            continue
        lhs = frozenset(m[c] for c in h1.add_of(h1.one, y))
        if lhs != h2.add_of(h2.one, m[y]):
            return False
    return True


def classify_morphism(f: Morphism) -> str:
    """Classify as the strongest of isomorphism > quotient > group-extension
    > general."""
    chk = is_morphism(f)
    if not chk.ok:
        raise PreconditionError(f"not a morphism: violates {chk.violation}")
    if f.is_bijective() and is_morphism(f.inverse()).ok:
        return "isomorphism"
    if _is_quotient_morphism(f):
        return "quotient"
    if _is_group_extension(f):
        return "group-extension"
    return "general"


# -- isomorphism search --------------------------------------------------------

def fingerprint(h: Hyperfield, label: str):
    """Isomorphism-invariant signature of a nonzero element:
    (squares to one, |1+a|, sorted multiset of |a+b| over nonzero b)."""
    i = h.index(label)
    o = h.one_i
    sizes = tuple(sorted(bin(h.add_mask(i, b)).count("1") for b in h.star_i()))
    return (h.mul_i(i, i) == o,
            bin(h.add_mask(o, i)).count("1"),
            sizes)


def find_isomorphisms(h1: Hyperfield, h2: Hyperfield, limit: Optional[int] = None):
    """All hyperfield isomorphisms h1 -> h2, up to ``limit``.

    Backtracking over multiplicative-group isomorphisms fixing 0 and 1 and
    mapping -1 to -1, pruned by per-element fingerprints; results are in
    lexicographic order of the image tuple (in h1's element order).  The
    empty list means no isomorphism exists: fingerprints are isomorphism
    invariants, so pruning never discards a valid map.
    """
    if h1.n != h2.n:
        return []
    n = h1.n
    fp1 = {x: fingerprint(h1, h1.label(x)) for x in h1.star_i()}
    fp2_cache = {y: fingerprint(h2, h2.label(y)) for y in h2.star_i()}
    fp2 = {}
    for y in h2.star_i():
        fp2.setdefault(fp2_cache[y], []).append(y)

    m = [None] * n
    used = [False] * n
    results = []

    def assign(x, y, trail):
        """Assign x->y and propagate forced consequences; False on clash."""
        queue = [(x, y)]
        while queue:
            u, v = queue.pop()
            if m[u] is not None:
                if m[u] != v:
                    return False
                continue
            if used[v]:
                return False
            if u == h1.zero_i:
                if v != h2.zero_i:
                    return False
            elif v == h2.zero_i or fp1[u] != fp2_key(v):
                return False
            m[u] = v
            used[v] = True
            trail.append((u, v))
            queue.append((h1.neg_i(u), h2.neg_i(v)))
            for w in range(n):
                if m[w] is None:
                    continue
                queue.append((h1.mul_i(u, w), h2.mul_i(v, m[w])))
                # partial addition pruning: sizes must match, assigned
                # members must land inside the target set
                t = h2.add_mask(v, m[w])
                s = h1.add_mask(u, w)
                if bin(s).count("1") != bin(t).count("1"):
                    return False
                for c in range(n):
                    if s >> c & 1 and m[c] is not None and not t >> m[c] & 1:
                        return False
        return True

    def fp2_key(v):
        return fp2_cache.get(v)

    trail0 = []
    if not assign(h1.zero_i, h2.zero_i, trail0):
        return []
    if not assign(h1.one_i, h2.one_i, trail0):
        return []
    # alpha(-1) = -1 is forced by the morphism conditions and kept even
    # when -1 = 1 (vacuous then)
    if not assign(h1.neg_i(h1.one_i), h2.neg_i(h2.one_i), trail0):
        return []

    order = [x for x in h1.star_i()]

    def complete_ok():
        for a in range(n):
            for b in range(n):
                s = h1.add_mask(a, b)
                img = 0
                for c in range(n):
                    if s >> c & 1:
                        img |= 1 << m[c]
                if img != h2.add_mask(m[a], m[b]):
                    return False
        return True

    def search(pos):
        if limit is not None and len(results) >= limit:
            return
        while pos < len(order) and m[order[pos]] is not None:
            pos += 1
        if pos == len(order):
            if complete_ok():
                results.append(Morphism(
                    h1, h2,
                    {h1.label(i): h2.label(m[i]) for i in range(n)},
                    kind="isomorphism"))
            return
        x = order[pos]
        for y in fp2.get(fp1[x], ()):
            if used[y]:
                continue
            trail = []
            if assign(x, y, trail):
                search(pos + 1)
            for u, v in trail:
                m[u] = None
                used[v] = False
            if limit is not None and len(results) >= limit:
                return

    search(0)
    results.sort(key=lambda f: tuple(h2.index(f.map[a]) for a in h1.elements))
    return results
