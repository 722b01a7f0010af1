import pathlib
import sys
from functools import lru_cache

try:
    import hflab  # noqa: F401
except ImportError:  # running from a checkout without installing
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from hflab import (  # noqa: E402
    group_extension,
    krasner,
    q_2adic,
    q_finite_field,
    q_padic,
)

GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


def _is_prime_power(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


PRIME_POWERS_101 = tuple(q for q in range(2, 102) if _is_prime_power(q))

ODD_PRIMES_23 = (3, 5, 7, 11, 13, 17, 19, 23)


@lru_cache(maxsize=None)
def fq(q):
    return q_finite_field(q)


@lru_cache(maxsize=None)
def padic(p):
    return q_padic(p)


@lru_cache(maxsize=None)
def two_adic():
    return q_2adic()


@lru_cache(maxsize=None)
def extension_bases():
    """Bases with |H*| <= 8 used for the extension corpus."""
    return (
        ("krasner", krasner()),
        ("q_f3", fq(3)),
        ("q_f5", fq(5)),
        ("q_q3", padic(3)),
        ("q_q5", padic(5)),
        ("q_q2", two_adic()),
    )


@lru_cache(maxsize=None)
def extension_corpus():
    """(name, base, rank, extension, embedding) for ranks 1..3."""
    out = []
    for name, base in extension_bases():
        for r in (1, 2, 3):
            ext, iota = group_extension(base, r)
            out.append((f"{name}+r{r}", base, r, ext, iota))
    return tuple(out)


@lru_cache(maxsize=None)
def axiom_corpus():
    """The full corpus of the acceptance axiom suite."""
    models = [("krasner", krasner())]
    models.extend((f"q_f{q}", fq(q)) for q in PRIME_POWERS_101)
    models.extend((name, ext) for name, _, _, ext, _ in extension_corpus())
    models.extend((f"q_q{p}", padic(p)) for p in ODD_PRIMES_23)
    models.append(("q_q2", two_adic()))
    return tuple(models)


@lru_cache(maxsize=None)
def small_corpus():
    """Small models used by exhaustive form/rigidity tests."""
    return (
        ("krasner", krasner()),
        ("q_f3", fq(3)),
        ("q_f5", fq(5)),
        ("q_q3", padic(3)),
        ("q_q5", padic(5)),
    )


def paper_three_element_table():
    """The {0,1,p} table: 1+1 = p+p = {0,1,p}, 1+p = {1,p}."""
    from hflab import Hyperfield
    elements = ["0", "1", "p"]
    neg = {"0": "0", "1": "1", "p": "p"}
    mul = {("0", "0"): "0", ("0", "1"): "0", ("0", "p"): "0",
           ("1", "1"): "1", ("1", "p"): "p", ("p", "p"): "1"}
    add = {("0", "0"): ["0"], ("0", "1"): ["1"], ("0", "p"): ["p"],
           ("1", "1"): ["0", "1", "p"], ("1", "p"): ["1", "p"],
           ("p", "p"): ["0", "1", "p"]}
    return Hyperfield.from_tables(elements, "0", "1", neg, mul, add)
