"""Acceptance suite: one test per acceptance criterion, each printing a
pass/fail line.  Every check is exact (set/table equality); the only
numeric tolerance anywhere is the 60-second budget of the axiom battery.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion
lines as they print.
"""

import time

from hflab import (
    basic_part,
    char2_criterion,
    check_axioms,
    detect_valuation_subgroups,
    find_isomorphisms,
    gauss_extend,
    group_extension,
    harrison_check,
    identity_morphism,
    is_quadratic,
    krasner,
    prime,
    q_2adic,
    q_finite_field,
    q_local,
    q_padic,
    square_class_hyperfield,
    v_q_2rank,
    witt_ring,
)
from hflab.gauss import GaussValuation, Polynomial

from conftest import (
    ODD_PRIMES_23,
    PRIME_POWERS_101,
    axiom_corpus,
    extension_corpus,
    fq,
    padic,
    paper_three_element_table,
    two_adic,
)


def _criterion(number, ok, detail):
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_01_axiom_suite_under_budget():
    t0 = time.monotonic()
    count = 0
    freshly_built = [("krasner", krasner())]
    freshly_built += [(f"fq{q}", q_finite_field(q)) for q in PRIME_POWERS_101]
    bases = [krasner(), q_finite_field(3), q_finite_field(5),
             q_padic(3), q_padic(5), q_2adic()]
    for base in bases:
        for r in (1, 2, 3):
            ext, _ = group_extension(base, r)
            freshly_built.append((f"ext{base.n}r{r}", ext))
    freshly_built += [(f"padic{p}", q_padic(p)) for p in ODD_PRIMES_23]
    freshly_built.append(("2adic", q_2adic()))
    failures = []
    for name, h in freshly_built:
        report = check_axioms(h)
        count += 1
        if not report.ok:
            failures.append(name)
    elapsed = time.monotonic() - t0
    _criterion(1, not failures and elapsed < 60.0,
               f"{count} models, {len(failures)} axiom failures, "
               f"{elapsed:.1f}s of 60s budget")


def test_criterion_02_prime_theorem_and_idempotence():
    bad = []
    for name, h in axiom_corpus():
        once = prime(h)
        if not check_axioms(once).ok:
            bad.append((name, "axioms"))
        if prime(once)._masks != once._masks:
            bad.append((name, "idempotence"))
    _criterion(2, not bad, f"prime checked on {len(axiom_corpus())} models; "
                           f"violations: {bad or 'none'}")


def test_criterion_03_three_element_example():
    ext, _ = group_extension(krasner(), 1, gens=("p",))
    verbatim = ext == paper_three_element_table()
    isos = find_isomorphisms(ext, q_finite_field(5))
    _criterion(3, verbatim and len(isos) == 1,
               f"table verbatim: {verbatim}; isomorphisms to the brute-force "
               f"model: {len(isos)} (map {isos[0].map if isos else None})")


def test_criterion_04_prime_step_exactness():
    noop = all(prime(square_class_hyperfield(q))._masks
               == square_class_hyperfield(q)._masks for q in (7, 9, 11, 13))
    strict = True
    for q in (3, 5):
        raw = square_class_hyperfield(q)
        primed = prime(raw)
        grew = any(raw.add_of(a, b) < primed.add_of(a, b)
                   for a in raw.elements for b in raw.elements)
        strict = strict and grew and primed._masks != raw._masks
    _criterion(4, noop and strict,
               f"no-op for q in 7,9,11,13: {noop}; strict enlargement for "
               f"q in 3,5: {strict}")


def test_criterion_05_springer_cross_check():
    # q_padic computes the group extension and the p-adic oracle
    # independently and raises on any disagreement
    agreed = []
    for p in ODD_PRIMES_23:
        h = q_padic(p)
        agreed.append(check_axioms(h).ok)
    dyadic = q_2adic()
    dy_ok = check_axioms(dyadic).ok and is_quadratic(dyadic)
    _criterion(5, all(agreed) and dy_ok,
               f"dual paths agree for p in {ODD_PRIMES_23}; dyadic model "
               f"axioms+quadratic: {dy_ok}")


def test_criterion_06_case_table_witnesses():
    expected = {
        5: ("one mod four", 2, "T", True),
        3: ("three mod four", 2, "pmT=U", False),
        4: ("even", 1, "T=U", True),
    }
    results = {}
    ok = True
    for q, (label, want_index, want_basic, want_exc) in expected.items():
        base = q_finite_field(q)
        ext, iota = group_extension(base, 1)
        u = {iota.map[x] for x in base.star}
        report = basic_part(ext, [ext.one])
        index_u_over_t = len(u)
        basic = set(report.basic_part)
        pm_t = {ext.one, ext.neg_of(ext.one)}
        if want_basic == "T":
            basic_ok = basic == {ext.one}
        elif want_basic == "pmT=U":
            basic_ok = basic == pm_t == u
        else:
            basic_ok = basic == {ext.one} == u
        got = (index_u_over_t == want_index, basic_ok,
               report.exceptional == want_exc)
        results[q] = got
        ok = ok and all(got)
    _criterion(6, ok, f"(index, basic part, exceptional) per residue witness: "
                      f"{results}")


def test_criterion_07_basic_part_transport():
    bad = []
    for name, base, r, ext, iota in extension_corpus():
        inner = basic_part(base, [base.one])
        outer = basic_part(ext, [ext.one])
        if set(outer.basic_part) != {iota.map[x] for x in inner.basic_part}:
            bad.append(name)
    _criterion(7, not bad,
               f"B(1) transports through all {len(extension_corpus())} corpus "
               f"extensions; failures: {bad or 'none'}")


def test_criterion_08_witt_rings_and_transport():
    sizes = {}
    for name, h, want in (("krasner", krasner(), (2, 2)),
                          ("f3", fq(3), (4, 4)),
                          ("f5", fq(5), (4, 2))):
        ring = witt_ring(h)
        sizes[name] = (ring.size, ring.order_of_one) == want
    iso_pairs = [
        (paper_three_element_table(), fq(5)),
        (padic(5), padic(13)),
        (padic(3), padic(7)),
        (q_local(9), q_local(5)),
    ]
    transported = True
    checked = 0
    for h1, h2 in iso_pairs:
        for alpha in find_isomorphisms(h1, h2):
            transported = transported and harrison_check(alpha).ok
            checked += 1
    for h in (fq(3), padic(3), two_adic()):
        transported = transported and harrison_check(identity_morphism(h)).ok
        checked += 1
    _criterion(8, all(sizes.values()) and transported and checked >= 7,
               f"(|W|, order<1>) checks: {sizes}; transport on {checked} "
               f"corpus isomorphisms: {transported}")


def test_criterion_09_gauss_valuation():
    import random
    rng = random.Random(991)

    def rand_poly():
        p = Polynomial()
        for _ in range(rng.randint(1, 4)):
            expo = (rng.randint(0, 3), rng.randint(0, 3))
            from fractions import Fraction
            c = Fraction(rng.randint(-80, 80), rng.randint(1, 80))
            p = p + Polynomial(("x", "y"), {expo: c})
        return p

    failures = 0
    pairs = 0
    for p in (2, 3, 5):
        v = GaussValuation(p)
        done = 0
        while done < 1000:
            f, g = rand_poly(), rand_poly()
            if f.is_zero() or g.is_zero():
                continue
            if v.of_polynomial(f * g) != v.of_polynomial(f) + v.of_polynomial(g):
                failures += 1
            done += 1
            pairs += 1
    witnesses = all(gauss_extend(p, str(p)) == 1 and gauss_extend(p, "1") == 0
                    for p in (2, 3, 5))
    _criterion(9, failures == 0 and witnesses,
               f"multiplicativity on {pairs} random pairs, {failures} failures; "
               f"value-group witnesses found: {witnesses}")


def test_criterion_10_char2_criterion():
    # As stated: the predicate must be false on every Q(Q_p) model for odd
    # p <= 23 and true on the Krasner hyperfield.  The computed tables
    # (extension path and p-adic oracle agreeing) make the predicate TRUE
    # when -1 is a square in the residue field (p = 1 mod 4): every value
    # set D<1,x> there is the rigid {1,x}, exactly as in the
    # characteristic-2 models, so no witness pair exists.  The failure
    # below is the faithful outcome for p in {5, 13, 17}.
    krasner_ok = char2_criterion(krasner())
    verdicts = {p: char2_criterion(padic(p)) for p in ODD_PRIMES_23}
    offending = sorted(p for p, verdict in verdicts.items() if verdict)
    _criterion(10, krasner_ok and not offending,
               f"krasner: {krasner_ok}; models where the predicate holds "
               f"(criterion expects none): {offending or 'none'}")


def test_criterion_11_designed_shape_uniqueness():
    ok = True
    details = {}
    for q in (3, 5, 4):
        ext, _ = group_extension(q_finite_field(q), 1)
        report = detect_valuation_subgroups(ext)
        designed = next(e for e in report.entries if e.t_members == (ext.one,))
        key = (designed.case, designed.basic.index_t,
               designed.basic.index_basic, designed.basic.exceptional)
        matches = [e.t_members for e in report.entries if e.case is not None
                   and (e.case, e.basic.index_t, e.basic.index_basic,
                        e.basic.exceptional) == key]
        details[q] = (key, len(matches))
        ok = ok and designed.case is not None and len(matches) == 1
    ext, _ = group_extension(q_padic(3), 1)
    report = detect_valuation_subgroups(ext)
    designed = next(e for e in report.entries if e.t_members == (ext.one,))
    key = (designed.case, designed.basic.index_t,
           designed.basic.index_basic, designed.basic.exceptional)
    matches = [e for e in report.entries if e.case is not None
               and (e.case, e.basic.index_t, e.basic.index_basic,
                    e.basic.exceptional) == key]
    details["q3-base"] = (key, len(matches))
    ok = ok and len(matches) == 1
    _criterion(11, ok, f"designed-shape keys and match counts: {details}")


def test_criterion_12_square_ideal_rank():
    rank = v_q_2rank()
    _criterion(12, rank == 1, f"2-rank of the square-ideal class group of the "
                              f"rationals: {rank}")
