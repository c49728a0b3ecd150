"""
Restricting a transferred family back to the base algebra
=========================================================

Take one algebra A, a congruence sigma_i of A for each index i, and an
ultrafilter D over the indices.  Inside the ultrapower, the natural
embedding a -> class of (a, a, ...) identifies A with the diagonal.
Pulling the product congruence of the family back along it relates a
and b exactly when {i : (a, b) in sigma_i} is a member of D, and that
relation has two closed forms: the union over members K of the meet of
{sigma_k : k in K}, which is also their congruence join.  verify_thm3
checks all three descriptions against each other.
"""

from ultracon import (
    diagonal_restriction,
    format_partition,
    is_homomorphism,
    join_of_meets,
    natural_embedding,
    parse_partition,
    principal_ultrafilter,
    ultraproduct,
    union_of_meets,
    verify_thm3,
)
from ultracon.corpus import corpus_by_name

z4 = corpus_by_name()["Z4"]
sigmas = (parse_partition("[[0,2],[1,3]]", 4),
          parse_partition("[[0,1,2,3]]", 4),
          parse_partition("[[0],[1],[2],[3]]", 4))
ultra = principal_ultrafilter(3, 0)

# the restriction asks, pair by pair, whether the agreeing indices form a member
restricted = diagonal_restriction(z4, sigmas, ultra)
print("restriction:", format_partition(restricted))
assert restricted == sigmas[0]  # principal:0 only consults sigma_0

# closed form 1: union over members of the meet of the indexed congruences
union = union_of_meets(z4, sigmas, ultra)
print("union of meets:", format_partition(union))
assert union == restricted  # and it is an equivalence, not just a union

# closed form 2: the congruence join of those same meets
join = join_of_meets(z4, sigmas, ultra)
assert join == restricted
print("join of meets agrees; union needed no transitive closure")

# the embedding into the ultrapower realizes the restriction as a pullback
emb = natural_embedding(z4, ultra)
power = ultraproduct((z4,) * 3, ultra)
assert emb.is_injective() and is_homomorphism(emb, z4, power)
print("natural embedding is an injective homomorphism")

report = verify_thm3(z4, sigmas, ultra)
print()
print("\n".join(report.summary_lines()))
assert report.passed

# a non-principal-looking family over 2 indices, same story
report = verify_thm3(corpus_by_name()["LZ3"],
                     (parse_partition("[[0,1],[2]]", 3), parse_partition("[[0],[1,2]]", 3)),
                     principal_ultrafilter(2, 1))
assert report.passed
print("LZ3 instance:", "PASS" if report.passed else "FAIL")

print("all gates passed")
