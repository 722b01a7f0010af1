#!/usr/bin/env python3
"""Regenerate the golden files under tests/golden/.

Golden tables pin exact computed output: element order, labels, and every
addition set, plus the ordered-group convention witnesses.  Regenerate only
when a deliberate format or labeling change is made, and re-verify the key
entries by hand (the test suite lists which ones).
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from hflab import (  # noqa: E402
    group_extension,
    krasner,
    ordered_group_hyperfield,
    q_2adic,
    q_finite_field,
    q_padic,
    quotient,
    serialize,
    subgroup,
)

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"


def write(name, text):
    path = GOLDEN / name
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    write("fq_3.json", serialize(q_finite_field(3)))
    write("fq_5.json", serialize(q_finite_field(5)))
    write("padic_3.json", serialize(q_padic(3)))
    write("padic_5.json", serialize(q_padic(5)))
    write("two_adic.json", serialize(q_2adic()))
    ext, _ = group_extension(krasner(), 1, gens=("p",))
    write("ext_krasner_1.json", serialize(ext))

    q3 = q_padic(3)
    signs, _ = quotient(q3, subgroup(q3, ["1", "-1"]))
    write("quotient_q3_signs.json", serialize(signs))

    g1 = ordered_group_hyperfield(1)
    g2 = ordered_group_hyperfield(2)
    witness = {
        "rank_1": [
            {"c": [2], "a": [3], "b": [3], "member": g1.add_contains((2,), (3,), (3,))},
            {"c": [3], "a": [3], "b": [3], "member": g1.add_contains((3,), (3,), (3,))},
            {"c": None, "a": [3], "b": [3], "member": g1.add_contains(None, (3,), (3,))},
            {"c": [2], "a": [2], "b": [3], "member": g1.add_contains((2,), (2,), (3,))},
            {"c": [3], "a": [2], "b": [3], "member": g1.add_contains((3,), (2,), (3,))},
        ],
        "rank_2_lex": [
            {"c": [0, 5], "a": [1, 0], "b": [0, 5],
             "member": g2.add_contains((0, 5), (1, 0), (0, 5))},
            {"c": [1, 0], "a": [1, 0], "b": [0, 5],
             "member": g2.add_contains((1, 0), (1, 0), (0, 5))},
        ],
        "convention": "additive value vectors; lexicographic order; the "
                      "smaller value dominates a sum of distinct elements",
    }
    write("ordered_group_witness.json",
          json.dumps(witness, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
