"""
Transferring congruence families into the ultraproduct
======================================================

Pick one congruence per factor.  Relating two product tuples when the
set of coordinates where they are related is an ultrafilter member
gives a congruence on the product that contains almost-everywhere
equality, so it drops to a congruence on the ultraproduct.  The map
(family -> congruence on the ultraproduct) is well defined on
almost-everywhere-equal families, injective there, and turns
coordinatewise meets into meets.  verify_thm1 checks all of that over
every family at once.
"""

from ultracon import (
    CongruenceFamily,
    congruence_on_ultraproduct,
    format_partition,
    parse_partition,
    principal_ultrafilter,
    ultraproduct,
    verify_thm1,
)
from ultracon.corpus import corpus_by_name

by = corpus_by_name()
factors = (by["C3"], by["Z4"])
ultra = principal_ultrafilter(2, 1)
power = ultraproduct(factors, ultra)
print("ultraproduct size:", power.size)

sig_a = CongruenceFamily(factors, (parse_partition("[[0,1],[2]]", 3),
                                   parse_partition("[[0,2],[1,3]]", 4)))
image_a = congruence_on_ultraproduct(sig_a, ultra)
print("image of family A:", format_partition(image_a))

# well defined: replace coordinate 0 (outside the member {1}) by anything
sig_b = CongruenceFamily(factors, (parse_partition("[[0],[1,2]]", 3),
                                   parse_partition("[[0,2],[1,3]]", 4)))
image_b = congruence_on_ultraproduct(sig_b, ultra)
assert image_a == image_b
print("families agreeing on a member map to the same congruence")

# injective on classes: change the coordinate that matters and the image moves
sig_c = CongruenceFamily(factors, (sig_a.choice[0], parse_partition("[[0,1,2,3]]", 4)))
image_c = congruence_on_ultraproduct(sig_c, ultra)
print("image of family C:", format_partition(image_c))
assert image_a != image_c

# meets transfer: image(A meet C) = image(A) meet image(C)
meet_family = CongruenceFamily(factors, tuple(a & c for a, c in zip(sig_a.choice, sig_c.choice)))
assert congruence_on_ultraproduct(meet_family, ultra) == (image_a & image_c)
print("meet of families maps to meet of images")

# the full check sweeps every family of Con(C3) x Con(Z4)
report = verify_thm1(factors, ultra)
print()
print("\n".join(report.summary_lines()))
print("families checked:", report.info["families_checked"],
      "| distinct images:", report.info["image_size"],
      "| joins preserved too:", report.info["joins_preserved"])
assert report.passed

print("all gates passed")
