"""
Ultrafilters over a finite index set
====================================

A family of subsets of {0..n-1} is an ultrafilter when (1) it contains
the whole set and not the empty set, (2) it is closed under
intersection, (3) it is closed under supersets, and (4) it decides
every subset: A or its complement is a member.  On a finite set every
ultrafilter is principal, i.e. all supersets of one fixed singleton.
"""

from ultracon import (
    check_4star,
    check_ultrafilter,
    enumerate_ultrafilters,
    is_filter,
    is_ultrafilter,
    principal_ultrafilter,
    subset_mask,
)

# axiom diagnostics name the first broken axiom and a witness
bad = [0b011, 0b101]  # {0,1} and {0,2} without their intersection {0}
v = check_ultrafilter(3, bad + [0b111])
print("axiom", v.axiom, ":", v.message)
assert v.axiom == 2

v = check_ultrafilter(3, [0b001])  # {0} alone: no universe, not upward closed
print("axiom", v.axiom, ":", v.message)
assert v.axiom == 1

# a filter that is not ultra: nothing decides the singletons
trivial = [0b11]  # just the universe of a 2-element index set
assert is_filter(2, trivial) and not is_ultrafilter(2, trivial)
v = check_ultrafilter(2, trivial)
print("axiom", v.axiom, ":", v.message)
assert v.axiom == 4

# the prime-filter condition (union of two sets a member => one of them is)
# fails for the same family, and in general matches axiom (4) exactly
assert check_4star(2, trivial) is False
for n in (1, 2, 3):
    for fam_bits in range(1 << (1 << n)):
        members = [m for m in range(1 << n) if (fam_bits >> m) & 1]
        if is_filter(n, members):
            assert check_4star(n, members) == is_ultrafilter(n, members)
print("(4) <=> (4*) over every filter with up to 3 indices")

# enumeration finds exactly n ultrafilters over n indices, all principal
for n in (1, 2, 3, 4):
    found = enumerate_ultrafilters(n)
    assert len(found) == n
    assert all(d.principal_index() is not None for d in found)
    print(f"n={n}: {len(found)} ultrafilters, principal at",
          [d.principal_index() for d in found])

d = principal_ultrafilter(3, 1)
print("principal:1 over 3 indices:", [sorted(s) for s in d.members_as_sets()])
assert d.member(subset_mask(3, [1, 2]))
assert not d.member(subset_mask(3, [0, 2]))

print("all gates passed")
