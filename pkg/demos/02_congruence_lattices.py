"""
Partitions, congruences, and the congruence lattice
===================================================

A congruence is an equivalence relation compatible with every
operation.  The congruences of a finite algebra form a lattice; this
package computes it by closing the principal congruences under join
and cross-checks against a Bell-number brute force.
"""

from ultracon import (
    Congruence,
    Partition,
    ValidationError,
    all_partitions,
    con_lattice,
    con_lattice_bruteforce,
    con_lattice_dot,
    format_partition,
    is_congruence,
    principal_congruence,
)
from ultracon.corpus import corpus_by_name

by = corpus_by_name()
c3, c4, z4 = by["C3"], by["C4"], by["Z4"]

# partitions in least-member canonical form
parts = list(all_partitions(3))
print("partitions of a 3-set:", [format_partition(p) for p in parts])
assert len(parts) == 5  # Bell(3)

p = Partition.from_blocks(3, [[0, 1], [2]])
q = Partition.from_blocks(3, [[0], [1, 2]])
print("meet:", format_partition(p & q), " join:", format_partition(p | q))
assert (p & q) == Partition.identity(3)
assert (p | q) == Partition.full(3)

# compatibility: merging 0 and 1 in the chain 0 < 1 < 2 is fine,
# merging the endpoints 0 and 2 without 1 is not
assert is_congruence(c3, p)
assert not is_congruence(c3, Partition.from_blocks(3, [[0, 2], [1]]))
try:
    Congruence(c3, Partition.from_blocks(3, [[0, 2], [1]]))
except ValidationError as exc:
    print("rejected:", exc)

# the principal congruence Cg(a, b) is the least congruence relating a, b;
# in the chain, gluing the endpoints drags the middle element along
cg = principal_congruence(c3, 0, 2)
print("Cg(0, 2) on C3:", format_partition(cg))
assert cg == Partition.full(3)

# the full lattice, from principals + join closure, equals brute force
for alg in (c3, c4, z4):
    fast = con_lattice(alg)
    assert list(fast) == list(con_lattice_bruteforce(alg))
    print(f"Con({alg.name}): {len(fast)} congruences")
    for theta in fast:
        print("  ", format_partition(theta))

# the lattice order is refinement; meet/join tables come precomputed
lat = con_lattice(z4)
assert lat.leq(lat.index(Partition.identity(4)), lat.index(Partition.full(4)))
print("Z4 meet table:\n", lat.meet_table())

# DOT export of the Hasse diagram, for graphviz
print(con_lattice_dot(con_lattice(c3)).splitlines()[0], "...")

print("all gates passed")
