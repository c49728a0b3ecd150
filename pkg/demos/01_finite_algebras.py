"""
Finite algebras as flat operation tables
========================================

An algebra is a carrier {0..n-1} plus one flat table per operation
symbol.  A k-ary table over size n has n**k entries with the first
argument most significant, so the entry for (a1, ..., ak) lives at
index a1*n**(k-1) + ... + ak.
"""

import json
import tempfile

from ultracon import (
    ElemMap,
    direct_product,
    is_homomorphism,
    load_algebra,
    make_algebra,
    save_algebra,
)
from ultracon.corpus import corpus_by_name

# a three-element meet chain 0 < 1 < 2: op(a, b) = min(a, b)
c3 = make_algebra([("op", 2)], 3, {"op": [min(a, b) for a in range(3) for b in range(3)]}, name="C3")
print("C3 table:", c3.tables["op"])
print("op(1, 2) =", c3.apply("op", (1, 2)))
assert c3.apply("op", (1, 2)) == 1
assert c3.tables["op"][1 * 3 + 2] == 1  # same entry by flat index

# operations of any arity work the same way; here a pair of unary maps
u3 = corpus_by_name()["U3"]
print("U3 signature:", [(s, a) for s, a in u3.signature])
assert u3.apply("f", (2,)) == u3.tables["f"][2]

# direct products act coordinatewise on mixed-radix encoded tuples
s2 = corpus_by_name()["S2"]
prod = direct_product([s2, c3])
print("S2 x C3 size:", prod.size)
assert prod.size == 6
assert prod.decode(5) == (1, 2)  # coordinate 0 is most significant
x, y = prod.encode((1, 1)), prod.encode((0, 2))
got = prod.decode(prod.apply("op", (x, y)))
print("(1,1) op (0,2) =", got)
assert got == (s2.apply("op", (1, 0)), c3.apply("op", (1, 2)))

# homomorphisms are element maps that commute with every table
embed = ElemMap(2, 3, [0, 2])  # 0 -> 0, 1 -> 2 embeds the 2-chain in the 3-chain
assert is_homomorphism(embed, s2, c3)
collapse = ElemMap(3, 2, [0, 0, 1])  # squash 0 and 1 together
assert is_homomorphism(collapse, c3, s2)
assert not is_homomorphism(ElemMap(3, 2, [0, 1, 0]), c3, s2)  # not compatible

# algebras round-trip through a small JSON format
with tempfile.NamedTemporaryFile("r", suffix=".json") as fh:
    save_algebra(c3, fh.name)
    data = json.load(open(fh.name))
    print("JSON keys:", sorted(data))
    assert load_algebra(fh.name) == c3

print("all gates passed")
