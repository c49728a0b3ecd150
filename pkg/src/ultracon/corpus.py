"""Small benchmark algebras used by the tests, the demos, and `ultracon sweep`.

All binary-operation members share the symbol name "op" so any of them can
sit together in a direct product; the unary member U3 has its own
signature and only combines with itself.
"""

from .algebra import Algebra, make_algebra

BINARY = [("op", 2)]


def min_chain(n: int, name: str = "") -> Algebra:
    """Chain semilattice on 0 < 1 < ... < n-1 under minimum."""
    table = [min(a, b) for a in range(n) for b in range(n)]
    return make_algebra(BINARY, n, {"op": table}, name or f"C{n}")


def cyclic_group(n: int, name: str = "") -> Algebra:
    """Addition modulo n."""
    table = [(a + b) % n for a in range(n) for b in range(n)]
    return make_algebra(BINARY, n, {"op": table}, name or f"Z{n}")


# permutations of {0,1,2} in lexicographic order; index 0 is the identity
_PERMS3 = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def symmetric_group_3() -> Algebra:
    """Composition of permutations of a 3-element set (apply right first)."""
    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    table = [_PERMS3.index(compose(_PERMS3[a], _PERMS3[b])) for a in range(6) for b in range(6)]
    return make_algebra(BINARY, 6, {"op": table}, "S3")


def left_zero(n: int = 3) -> Algebra:
    """f(x, y) = x; non-commutative for n >= 2, every partition is a congruence."""
    table = [a for a in range(n) for _ in range(n)]
    return make_algebra(BINARY, n, {"op": table}, f"LZ{n}")


def rock_paper_scissors() -> Algebra:
    """op(x, y) = the winner (0 rock, 1 paper, 2 scissors); commutative, simple."""
    table = [0, 1, 0,
             1, 1, 2,
             0, 2, 2]
    return make_algebra(BINARY, 3, {"op": table}, "RPS")


def boolean_meet_square() -> Algebra:
    """Bitwise AND on {0,1,2,3}: the meet-semilattice of a 2x2 boolean cube."""
    table = [a & b for a in range(4) for b in range(4)]
    return make_algebra(BINARY, 4, {"op": table}, "B22")


def unary_pair() -> Algebra:
    """Two unary operations on {0,1,2}: f clamps downward, g clamps upward.

    f = (0,0,1), g = (1,2,2); together they leave only the trivial
    congruences.
    """
    return make_algebra([("f", 1), ("g", 1)], 3, {"f": [0, 0, 1], "g": [1, 2, 2]}, "U3")


def two_element_semilattice() -> Algebra:
    return min_chain(2, "S2")


def standard_corpus() -> tuple:
    """The benchmark corpus: twelve named algebras of size at most 6."""
    return (
        two_element_semilattice(),
        min_chain(3),
        min_chain(4),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        cyclic_group(6),
        symmetric_group_3(),
        left_zero(3),
        rock_paper_scissors(),
        boolean_meet_square(),
        unary_pair(),
    )


def corpus_by_name() -> dict:
    return {a.name: a for a in standard_corpus()}
