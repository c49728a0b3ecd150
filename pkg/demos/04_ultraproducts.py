"""
Direct products, almost-everywhere equality, ultraproducts
==========================================================

The ultraproduct of a family of algebras modulo an ultrafilter D is
the direct product divided by the congruence relating tuples that
agree on a member of D.  Over a finite index set every ultrafilter is
principal, so the ultraproduct collapses onto a single factor; the
point of the construction is that everything here is computable and
checkable.
"""

from ultracon import (
    ElemMap,
    direct_product,
    dstar,
    find_isomorphism,
    format_partition,
    is_homomorphism,
    natural_embedding,
    principal_ultrafilter,
    ultraproduct,
)
from ultracon.corpus import corpus_by_name

by = corpus_by_name()
c3, z2, z3, z4 = by["C3"], by["Z2"], by["Z3"], by["Z4"]

# warm-up: the direct product Z2 x Z3 is the cyclic group of order 6
prod = direct_product([z2, z3])
result = find_isomorphism(prod, by["Z6"])
print("Z2 x Z3 ~ Z6:", result.found, "witness", list(result.witness.image))
assert result.found

# almost-everywhere equality on C3 x C3 under principal:1 ignores
# coordinate 0 entirely: classes group by the second coordinate
ultra = principal_ultrafilter(2, 1)
agree = dstar([c3, c3], ultra)
print("D* blocks:", format_partition(agree))
assert agree.num_classes == 3

# the ultraproduct of (C3, Z4, Z3) over principal:1 is a copy of Z4
factors = (c3, z4, z3)
power = ultraproduct(factors, principal_ultrafilter(3, 1))
print("ultraproduct size:", power.size)
assert power.size == 4
print("class representatives:", [power.product.decode(r) for r in power.class_reps])
result = find_isomorphism(power, z4)
assert result.found
# re-check the witness in both directions
witness = ElemMap(power.size, z4.size, list(result.witness.image))
assert is_homomorphism(witness, power, z4)
assert is_homomorphism(witness.inverse(), z4, power)
print("collapse onto factor 1 verified both ways")

# an ultrapower (all factors equal) reproduces the base algebra, and the
# natural embedding a -> class of (a, a, ...) is the isomorphism
emb = natural_embedding(z4, principal_ultrafilter(3, 0))
print("natural embedding image:", list(emb.image))
assert emb.is_bijective()
assert is_homomorphism(emb, z4, ultraproduct((z4, z4, z4), principal_ultrafilter(3, 0)))

print("all gates passed")
