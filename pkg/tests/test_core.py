import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hflab import (
    Hyperfield,
    Morphism,
    check_axioms,
    classify_morphism,
    find_isomorphisms,
    fingerprint,
    is_morphism,
    is_quadratic,
    krasner,
    quotient,
    relabel,
    subgroup,
    validated,
)
from hflab.errors import (
    InvalidHyperfieldError,
    InvalidSubgroupError,
    MalformedTableError,
)

from conftest import fq, padic, paper_three_element_table, small_corpus


def test_krasner_passes_axioms():
    assert check_axioms(krasner()).ok


def test_paper_three_element_table_passes():
    report = check_axioms(paper_three_element_table())
    assert report.ok
    assert not report.flags_checker_bug


def _mutated_three_element(one_plus_p):
    h = paper_three_element_table()
    elements = list(h.elements)
    neg = {a: h.neg_of(a) for a in elements}
    mul = {(a, b): h.mul_of(a, b) for a in elements for b in elements}
    add = {(a, b): sorted(h.add_of(a, b), key=h.index)
           for a in elements for b in elements}
    add[("1", "p")] = list(one_plus_p)
    add[("p", "1")] = list(one_plus_p)
    return Hyperfield.from_tables(elements, "0", "1", neg, mul, add)


def test_mutated_table_fails_reversibility_with_witness():
    h = _mutated_three_element(["1"])
    report = check_axioms(h)
    assert not report.ok
    failed = {c.axiom: c for c in report.failures}
    assert "I(1)" in failed
    # lexicographically first counterexample: 1 in p+p but p not in 1+(-p)
    assert failed["I(1)"].witness == ("p", "p", "1")
    with pytest.raises(InvalidHyperfieldError):
        validated(h)


def test_witness_replay():
    # reported witnesses must actually violate the axiom they flag
    h = _mutated_three_element(["1"])
    report = check_axioms(h)
    for c in report.failures:
        if c.axiom == "I(1)":
            a, b, cc = c.witness
            assert cc in h.add_of(a, b)
            assert a not in h.add_of(cc, h.neg_of(b))
        if c.axiom == "I(3)":
            a, b, cc = c.witness
            lhs = set()
            for x in h.add_of(a, b):
                lhs |= h.add_of(x, cc)
            rhs = set()
            for y in h.add_of(b, cc):
                rhs |= h.add_of(a, y)
            assert lhs != rhs


def test_malformed_tables_raise_before_axioms():
    with pytest.raises(MalformedTableError):
        Hyperfield.from_tables(["0", "1"], "0", "1", {"0": "0", "1": "1"},
                               {("0", "0"): "0", ("0", "1"): "0"},  # partial mul
                               {("0", "0"): ["0"], ("0", "1"): ["1"],
                                ("1", "1"): ["0", "1"]})
    with pytest.raises(MalformedTableError):
        Hyperfield.from_tables(["0", "1"], "0", "1", {"0": "0", "1": "x"},
                               {("0", "0"): "0", ("0", "1"): "0", ("1", "1"): "1"},
                               {("0", "0"): ["0"], ("0", "1"): ["1"],
                                ("1", "1"): ["0", "1"]})
    with pytest.raises(MalformedTableError):
        Hyperfield.from_tables(["0", "1"], "0", "1", {"0": "0", "1": "1"},
                               {("0", "0"): "0", ("0", "1"): "0", ("1", "1"): "1"},
                               {("0", "0"): ["0"], ("0", "1"): ["1"],
                                ("1", "1"): []})  # empty addition set
    with pytest.raises(MalformedTableError):
        Hyperfield.from_tables(["0", "1", "1"], "0", "1", {}, {}, {})


def test_asymmetric_addition_fails_commutativity():
    h = paper_three_element_table()
    elements = list(h.elements)
    neg = {a: h.neg_of(a) for a in elements}
    mul = {(a, b): h.mul_of(a, b) for a in elements for b in elements}
    add = {(a, b): sorted(h.add_of(a, b), key=h.index)
           for a in elements for b in elements}
    add[("1", "p")] = ["1"]          # but (p, 1) keeps {1, p}
    bad = Hyperfield.from_tables(elements, "0", "1", neg, mul, add)
    report = check_axioms(bad)
    assert any(c.axiom == "I(4)" for c in report.failures)


def test_constructed_instances_are_valid():
    for _, h in small_corpus():
        assert check_axioms(h).ok


def test_report_covers_exactly_the_axiom_battery():
    report = check_axioms(krasner())
    assert tuple(c.axiom for c in report.checks) == (
        "I(1)", "I(2)", "I(3)", "I(4)", "II", "III", "IV", "V",
        "(i)", "(ii)", "(iii)", "(iv)", "(v)")


# -- morphisms ---------------------------------------------------------------

def test_identity_is_morphism_and_isomorphism():
    h = fq(5)
    ident = Morphism(h, h, {a: a for a in h.elements})
    assert is_morphism(ident).ok
    assert classify_morphism(ident) == "isomorphism"


def test_collapse_to_krasner_is_morphism():
    h = fq(5)
    k = krasner()
    f = Morphism(h, k, {"0": "0", "1": "1", "s": "1"})
    assert is_morphism(f).ok
    assert classify_morphism(f) == "quotient"


def test_minus_one_must_map_to_minus_one():
    f = Morphism(fq(3), fq(5), {"0": "0", "1": "1", "-1": "s"})
    chk = is_morphism(f)
    assert not chk.ok
    # first witness in element order: f(-1) = s but -f(1) = -1 = 1 there
    assert chk.violation == ("neg", "1")


def test_canonical_quotient_classifies_as_quotient():
    h = padic(3)
    _, phi = quotient(h, subgroup(h, ["1", "-1"]))
    assert phi.kind == "quotient"


def test_hand_built_embedding_classifies_as_group_extension():
    base, ext = fq(3), padic(3)
    iota = Morphism(base, ext, {"0": "0", "1": "1", "-1": "-1"})
    assert is_morphism(iota).ok
    assert classify_morphism(iota) == "group-extension"


def test_subgroup_validation():
    h = padic(3)
    with pytest.raises(InvalidSubgroupError):
        subgroup(h, ["1", "3", "-3"])   # not closed: 3 * -3 = -1
    with pytest.raises(InvalidSubgroupError):
        subgroup(h, ["-1"])             # misses 1
    with pytest.raises(InvalidSubgroupError):
        subgroup(h, ["0", "1"])         # contains zero


# -- isomorphism search ---------------------------------------------------------

def test_paper_table_vs_brute_force_f5():
    isos = find_isomorphisms(paper_three_element_table(), fq(5))
    assert len(isos) == 1
    assert isos[0].map == {"0": "0", "1": "1", "p": "s"}


def test_self_isomorphisms_contain_identity():
    h = fq(5)
    isos = find_isomorphisms(h, h)
    assert {a: a for a in h.elements} in [m.map for m in isos]


def test_f3_f5_not_isomorphic():
    assert find_isomorphisms(fq(3), fq(5)) == []


def test_isomorphism_search_symmetry_and_soundness():
    models = [h for _, h in small_corpus()]
    for h1, h2 in itertools.combinations(models, 2):
        fwd = find_isomorphisms(h1, h2)
        bwd = find_isomorphisms(h2, h1)
        assert bool(fwd) == bool(bwd)
        for m in fwd:
            assert is_morphism(m).ok
            assert is_morphism(m.inverse()).ok
            assert m.map[h1.neg_of(h1.one)] == h2.neg_of(h2.one)
            for a in h1.star:
                assert fingerprint(h1, a) == fingerprint(h2, m.map[a])


def test_iso_search_is_deterministic_and_ordered():
    h = padic(3)
    isos = find_isomorphisms(h, h)
    keys = [tuple(h.index(m.map[a]) for a in h.elements) for m in isos]
    assert keys == sorted(keys)
    assert find_isomorphisms(h, h, limit=1) == isos[:1]


def test_relabel_roundtrip():
    h = fq(5)
    g = relabel(h, {"s": "u"})
    assert g.elements == ("0", "1", "u")
    assert relabel(g, {"u": "s"}) == h
    with pytest.raises(MalformedTableError):
        relabel(h, {"s": "1"})


def test_is_quadratic():
    assert is_quadratic(krasner())
    assert is_quadratic(fq(3))
    assert is_quadratic(padic(5))
    from hflab import square_class_hyperfield
    assert not is_quadratic(square_class_hyperfield(3))  # 1+1 = {-1}


# -- randomized table mutations ---------------------------------------------------

@st.composite
def _mutations(draw):
    pair = draw(st.sampled_from([("1", "1"), ("1", "p"), ("p", "p")]))
    newset = draw(st.sets(st.sampled_from(["0", "1", "p"]), min_size=1))
    return pair, sorted(newset)


@settings(max_examples=80, deadline=None)
@given(_mutations())
def test_mutated_tables_never_fool_the_checker(mutation):
    (a, b), new = mutation
    h = paper_three_element_table()
    elements = list(h.elements)
    neg = {x: h.neg_of(x) for x in elements}
    mul = {(x, y): h.mul_of(x, y) for x in elements for y in elements}
    add = {(x, y): sorted(h.add_of(x, y), key=h.index)
           for x in elements for y in elements}
    add[(a, b)] = new
    add[(b, a)] = new
    mutated = Hyperfield.from_tables(elements, "0", "1", neg, mul, add)
    report = check_axioms(mutated)
    if sorted(h.add_of(a, b), key=h.index) == new:
        assert report.ok
    else:
        # this table is rigidly determined: any change breaks an axiom
        assert not report.ok
        assert not report.flags_checker_bug
