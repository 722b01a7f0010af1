"""Rigidity analysis on quadratic hyperfields: T-rigid elements, basic
parts, exceptional subgroups, subgroup enumeration over GF(2), detection
of valuation-shaped subgroups, and transport of subgroups along an
isomorphism.

An element x is T-rigid when T + Tx is contained in T ∪ Tx; the basic
part B(T) collects the x for which x or -x fails to be rigid.  A nontrivial
valuation leaves a footprint: a subgroup T (the principal-unit classes)
whose basic part is the unit-class subgroup U, with everything outside U
rigid and the restriction to U a quadratic hyperfield in its own right.
Detection scans all subgroups for that footprint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import log2

from .construct import quotient, sub_hyperfield
from .core import (
    Hyperfield,
    Morphism,
    SquareClassSubgroup,
    is_morphism,
    is_quadratic,
    subgroup,
)
from .errors import (
    HflabError,
    NotAnIsomorphismError,
    PreconditionError,
    SizeBoundExceededError,
)

SUBGROUP_STAR_BOUND = 256

FINITE_MODEL_NOTE = (
    "subgroup detection on finite tables covers finite-residue shapes only; "
    "residue fields with infinite square-class groups have no finite model "
    "and their shape is exercised through basic-part transport instead"
)


def _subgroup_of(h, t):
    if isinstance(t, SquareClassSubgroup):
        if t.ambient != h:
            raise PreconditionError("subgroup belongs to a different ambient")
        return t
    return subgroup(h, t)


def _coset_mask(h, t_idx, x):
    m = 0
    for t in t_idx:
        m |= 1 << h.mul_i(t, x)
    return m


def _sum_mask(h, t_idx, x):
    """Bitmask of T + Tx."""
    out = 0
    for t in t_idx:
        for u in t_idx:
            out |= h.add_mask(t, h.mul_i(u, x))
    return out


def is_t_rigid(h: Hyperfield, t, x: str) -> bool:
    """T + Tx contained in T ∪ Tx, evaluated exhaustively."""
    t = _subgroup_of(h, t)
    xi = h.index(x)
    if xi == h.zero_i:
        raise PreconditionError("rigidity is asked of nonzero elements")
    t_idx = [h.index(a) for a in t.members]
    allowed = t.mask | _coset_mask(h, t_idx, xi)
    return _sum_mask(h, t_idx, xi) & ~allowed == 0


def _additively_closed(h, t_idx, t_mask):
    zbit = 1 << h.zero_i
    for a in t_idx:
        for b in t_idx:
            if h.add_mask(a, b) & ~(t_mask | zbit):
                return False
    return True


@dataclass(frozen=True)
class RigidityReport:
    """Per-subgroup rigidity data: which elements are rigid, the basic part
    B(T) = {x : x or -x not T-rigid}, coset indices, and the exceptional
    flag (B(T) = ±T and -1 in T or T additively closed)."""

    ambient: Hyperfield
    t_members: tuple
    rigid: dict
    basic_part: tuple
    basic_is_subgroup: bool
    index_t: int
    index_basic: int
    exceptional: bool

    def to_dict(self):
        return {
            "subgroup": list(self.t_members),
            "rigid": dict(sorted(self.rigid.items())),
            "basic_part": list(self.basic_part),
            "basic_is_subgroup": self.basic_is_subgroup,
            "index_of_T": self.index_t,
            "index_of_basic_part": self.index_basic,
            "exceptional": self.exceptional,
        }


def basic_part(h: Hyperfield, t) -> RigidityReport:
    """Compute B(T) and the exceptional flag.

    ±T is always contained in B(T) (zero lies in T - T, so -1 is never
    rigid), and B(T) is a union of T-cosets; both are consequences, not
    assumptions, and the report carries enough data to re-check them.
    """
    t = _subgroup_of(h, t)
    t_idx = sorted(h.index(a) for a in t.members)
    t_mask = t.mask
    star = h.star_i()
    rigid = {}
    for x in star:
        allowed = t_mask | _coset_mask(h, t_idx, x)
        rigid[x] = _sum_mask(h, t_idx, x) & ~allowed == 0
    basic = tuple(x for x in star if not rigid[x] or not rigid[h.neg_i(x)])
    basic_set = set(basic)
    is_sub = (h.one_i in basic_set
              and all(h.mul_i(a, b) in basic_set for a in basic for b in basic))
    pm_t = t_mask
    for a in t_idx:
        pm_t |= 1 << h.neg_i(a)
    basic_mask = 0
    for x in basic:
        basic_mask |= 1 << x
    minus_one_in_t = t_mask >> h.neg_i(h.one_i) & 1 == 1
    exceptional = basic_mask == pm_t and (
        minus_one_in_t or _additively_closed(h, t_idx, t_mask))
    return RigidityReport(
        ambient=h,
        t_members=tuple(h.label(i) for i in t_idx),
        rigid={h.label(i): rigid[i] for i in star},
        basic_part=tuple(h.label(i) for i in basic),
        basic_is_subgroup=is_sub,
        index_t=len(star) // len(t_idx),
        index_basic=len(star) // len(basic),
        exceptional=exceptional,
    )


# -- subgroup enumeration -----------------------------------------------------------

def _gf2_coordinates(h):
    """Coordinates of H* as a GF(2) vector space; requires exponent 2."""
    o = h.one_i
    for a in h.star_i():
        if h.mul_i(a, a) != o:
            raise PreconditionError("H* is not of exponent 2")
    coords = {o: 0}
    basis = []
    for e in h.star_i():
        if e in coords:
            continue
        i = len(basis)
        basis.append(e)
        for lab, vec in list(coords.items()):
            coords[h.mul_i(lab, e)] = vec | (1 << i)
    inv = {v: k for k, v in coords.items()}
    return basis, coords, inv


def gaussian_binomial(n, k):
    num = den = 1
    for i in range(k):
        num *= 2 ** (n - i) - 1
        den *= 2 ** (i + 1) - 1
    return num // den


def subgroup_count(h: Hyperfield) -> int:
    basis, _, _ = _gf2_coordinates(h)
    d = len(basis)
    return sum(gaussian_binomial(d, k) for k in range(d + 1))


def _rref_matrices(d, k):
    """All reduced-row-echelon k x d matrices over GF(2), rows as ints."""
    for pivots in itertools.combinations(range(d), k):
        free_cells = []
        for r, p in enumerate(pivots):
            for c in range(p + 1, d):
                if c not in pivots:
                    free_cells.append((r, c))
        for bits in itertools.product((0, 1), repeat=len(free_cells)):
            rows = [1 << p for p in pivots]
            for (r, c), b in zip(free_cells, bits):
                if b:
                    rows[r] |= 1 << c
            yield rows


def enumerate_subgroups(h: Hyperfield):
    """All subgroups of H* (exponent 2), in increasing size and then
    lexicographic order of the member index tuples; the total count is the
    Gaussian binomial sum."""
    star = h.star_i()
    if len(star) > SUBGROUP_STAR_BOUND:
        raise SizeBoundExceededError(
            f"|H*| = {len(star)} exceeds the subgroup enumeration bound "
            f"{SUBGROUP_STAR_BOUND}")
    basis, coords, inv = _gf2_coordinates(h)
    d = len(basis)
    for k in range(d + 1):
        batch = []
        for rows in _rref_matrices(d, k):
            members = []
            for sel in range(1 << k):
                vec = 0
                for r in range(k):
                    if sel >> r & 1:
                        vec ^= rows[r]
                members.append(inv[vec])
            batch.append(tuple(sorted(members)))
        for members in sorted(batch):
            yield subgroup(h, [h.label(i) for i in members])


# -- valuation-shaped subgroup detection -----------------------------------------------

@dataclass(frozen=True)
class DetectionEntry:
    """One subgroup's worth of detection data.

    ``case`` is "i" when B(T) is a proper supergroup U of T with everything
    outside U rigid both ways, the restriction to U a quadratic hyperfield,
    and T unexceptional; "ii" when B(T) = T and some index-2 supergroup
    carries a valid restriction with everything outside rigid; None
    otherwise.  ``base_candidates`` lists every supergroup U of T whose
    outside is rigid both ways and whose restriction is a quadratic
    hyperfield; for extensions it contains the designed unit-class
    subgroup.  ``rank_bound`` is log2(H*:U): any valuation with this
    footprint has rational rank at least that.
    """

    t_members: tuple
    basic: RigidityReport
    case: str
    candidate_u: tuple
    base_candidates: tuple
    rank_bound: int

    def to_dict(self):
        return {
            "subgroup": list(self.t_members),
            "case": self.case,
            "candidate_U": [list(u) for u in self.candidate_u],
            "base_candidates": [list(u) for u in self.base_candidates],
            "rank_bound": self.rank_bound,
            "rigidity": self.basic.to_dict(),
        }


@dataclass(frozen=True)
class DecompositionReport:
    ambient: Hyperfield
    entries: tuple
    note: str = FINITE_MODEL_NOTE

    @property
    def shaped(self):
        return tuple(e for e in self.entries if e.case)

    def to_dict(self):
        return {
            "entries": [e.to_dict() for e in self.entries],
            "shaped": [list(e.t_members) for e in self.shaped],
            "note": self.note,
        }


def _outside_rigid_both_ways(h, report, u_members):
    rigid = report.rigid
    for x in h.star:
        if x in u_members:
            continue
        if not rigid[x] or not rigid[h.neg_of(x)]:
            return False
    return True


def _restriction_is_base(h, u_members):
    try:
        sub = sub_hyperfield(h, u_members)
    except HflabError:
        return False
    return is_quadratic(sub)


def _index2_supergroups(h, t_members):
    t_set = set(t_members)
    seen = set()
    for g in h.star:
        if g in t_set:
            continue
        u = frozenset(t_set | {h.mul_of(g, t) for t in t_set})
        if u not in seen:
            seen.add(u)
            yield tuple(sorted(u, key=h.index))


def detect_valuation_subgroups(h: Hyperfield) -> DecompositionReport:
    """Scan every subgroup of H* for the footprint a valuation would leave.

    Case (i): B(T) is a subgroup properly containing T, everything outside
    it is rigid both ways, the restriction to B(T) is a quadratic
    hyperfield, and T is unexceptional.  Case (ii): B(T) = T and some
    index-2 supergroup has the same outside-rigid/valid-restriction shape.
    Entries are reported for every subgroup, in increasing size then
    lexicographic order.
    """
    if not is_quadratic(h):
        raise PreconditionError("detection needs a quadratic hyperfield")
    all_subgroups = [t.sorted_labels() for t in enumerate_subgroups(h)]
    entries = []
    for t_members in all_subgroups:
        report = basic_part(h, t_members)
        basic = set(report.basic_part)

        t_set = set(t_members)
        base_candidates = []
        for u in all_subgroups:
            if not t_set <= set(u):
                continue
            if (_outside_rigid_both_ways(h, report, set(u))
                    and _restriction_is_base(h, u)):
                base_candidates.append(u)

        case = None
        candidate_u = ()
        if (report.basic_is_subgroup and basic != set(t_members)
                and not report.exceptional
                and _outside_rigid_both_ways(h, report, basic)
                and _restriction_is_base(h, report.basic_part)):
            case = "i"
            candidate_u = (report.basic_part,)
        elif basic == set(t_members):
            twos = [u for u in _index2_supergroups(h, t_members)
                    if _outside_rigid_both_ways(h, report, set(u))
                    and _restriction_is_base(h, u)]
            if twos:
                case = "ii"
                candidate_u = tuple(sorted(twos))
        rank_bound = 0
        if case:
            u_size = len(candidate_u[0])
            rank_bound = int(log2(len(h.star) // u_size))
        entries.append(DetectionEntry(
            t_members=t_members,
            basic=report,
            case=case,
            candidate_u=candidate_u,
            base_candidates=tuple(base_candidates),
            rank_bound=rank_bound,
        ))
    return DecompositionReport(h, tuple(entries))


# -- transport of subgroups along an isomorphism ------------------------------------------

def match_subgroups(alpha: Morphism, t) -> SquareClassSubgroup:
    """Image subgroup under an isomorphism, with the induced structure
    verified: the quotients modulo T and alpha(T) are isomorphic via the
    induced map (square compatible with the canonical projections), and
    basic parts transport onto basic parts.
    """
    h1, h2 = alpha.source, alpha.target
    if not (alpha.is_bijective() and is_morphism(alpha).ok
            and is_morphism(alpha.inverse()).ok):
        raise NotAnIsomorphismError("match_subgroups needs an isomorphism")
    t = _subgroup_of(h1, t)
    image = subgroup(h2, [alpha(x) for x in t.members])

    q1, proj1 = quotient(h1, t)
    q2, proj2 = quotient(h2, image)
    induced = Morphism(q1, q2,
                       {c: proj2.map[alpha.map[c]] for c in q1.elements})
    chk = is_morphism(induced)
    if not (chk.ok and induced.is_bijective() and is_morphism(induced.inverse()).ok):
        raise HflabError("induced quotient map is not an isomorphism")
    for x in h1.elements:
        if induced.map[proj1.map[x]] != proj2.map[alpha.map[x]]:
            raise HflabError("quotient transport square does not commute")

    b1 = basic_part(h1, t)
    b2 = basic_part(h2, image)
    if {alpha(x) for x in b1.basic_part} != set(b2.basic_part):
        raise HflabError("basic part does not transport onto basic part")
    if b1.basic_is_subgroup and b1.basic_part != t.sorted_labels():
        u1 = set(b1.basic_part)
        u2 = {alpha(x) for x in u1}
        cosets1 = {frozenset(h1.mul_of(g, u) for u in u1) for g in h1.star}
        cosets2 = {frozenset(h2.mul_of(g, u) for u in u2) for g in h2.star}
        if {frozenset(alpha(x) for x in c) for c in cosets1} != cosets2:
            raise HflabError("unit-class cosets do not transport")
    return image


def rank_lower_bound(quotient_size: int) -> int:
    """Given |G/2G| = 2^r for a torsion-free abelian group G, the rational
    rank of G is at least r; returns r."""
    if quotient_size < 1 or quotient_size & (quotient_size - 1):
        raise PreconditionError(f"{quotient_size} is not a power of two")
    return quotient_size.bit_length() - 1
