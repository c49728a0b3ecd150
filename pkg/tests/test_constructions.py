import pytest

from ultracon import (
    CongruenceFamily,
    Partition,
    ValidationError,
    con_lattice,
    direct_product,
    dstar,
    find_isomorphism,
    induced_congruence,
    isomorphic_by_bruteforce,
    principal_ultrafilter,
    product_congruence,
    quotient,
    ultraproduct,
)
from ultracon.congruence import parse_partition

from oracles import naive_product_relates


def test_family_validation(c3, s2):
    fam = CongruenceFamily([c3, s2], [parse_partition("[[0,1],[2]]", 3), Partition.identity(2)])
    assert len(fam) == 2
    with pytest.raises(ValidationError):
        CongruenceFamily([c3, s2], [Partition.identity(3)])  # wrong length
    with pytest.raises(ValidationError, match="not a congruence"):
        CongruenceFamily([c3], [parse_partition("[[0,2],[1]]", 3)])
    with pytest.raises(ValidationError):
        CongruenceFamily([], [])


def test_dstar_agreement_classes(s2, c3):
    d0 = principal_ultrafilter(2, 0)
    d1 = principal_ultrafilter(2, 1)
    assert dstar([s2, s2], d0).blocks() == ((0, 1), (2, 3))
    assert dstar([s2, s2], d1).blocks() == ((0, 2), (1, 3))
    # a single factor: almost-everywhere equality is equality
    assert dstar([c3], principal_ultrafilter(1, 0)) == Partition.identity(3)
    # principal at 2 on a triple product groups by the last coordinate
    theta = dstar([c3, c3, c3], principal_ultrafilter(3, 2))
    prod = direct_product([c3, c3, c3])
    assert theta.num_classes == 3
    for x in range(27):
        for y in range(27):
            assert theta.relates(x, y) == (prod.decode(x)[2] == prod.decode(y)[2])


def test_dstar_index_mismatch(s2):
    with pytest.raises(ValidationError):
        dstar([s2, s2], principal_ultrafilter(3, 0))


def test_dstar_is_product_congruence_of_identities(c3, s2, by_name):
    for factors in ([c3, c3], [s2, c3], [by_name["Z4"], s2]):
        for i0 in range(2):
            ultra = principal_ultrafilter(2, i0)
            fam = CongruenceFamily.identities(factors)
            assert dstar(factors, ultra) == product_congruence(fam, ultra)


def test_product_congruence_matches_naive_oracle(c3):
    lattice = list(con_lattice(c3))
    prod = direct_product([c3, c3])
    for sa in lattice:
        for sb in lattice:
            fam = CongruenceFamily([c3, c3], [sa, sb])
            for i0 in range(2):
                ultra = principal_ultrafilter(2, i0)
                theta = product_congruence(fam, ultra)
                member_sets = ultra.members_as_sets()
                for x in range(9):
                    for y in range(9):
                        want = naive_product_relates(
                            [c3, c3], [sa, sb], member_sets, prod.decode(x), prod.decode(y))
                        assert theta.relates(x, y) == want


def test_product_congruence_contains_agreement(c3):
    lattice = list(con_lattice(c3))
    for sa in lattice:
        for sb in lattice:
            fam = CongruenceFamily([c3, c3], [sa, sb])
            for i0 in range(2):
                ultra = principal_ultrafilter(2, i0)
                assert dstar([c3, c3], ultra).refines(product_congruence(fam, ultra))


def test_product_congruence_of_fulls_is_full(c3, s2):
    ultra = principal_ultrafilter(2, 0)
    fam = CongruenceFamily.fulls([c3, s2])
    assert product_congruence(fam, ultra).num_classes == 1


def test_product_congruence_monotone(c3):
    lattice = list(con_lattice(c3))
    ultra = principal_ultrafilter(2, 1)
    for sa in lattice:
        for sb in lattice:
            if not sa.refines(sb):
                continue
            fine = product_congruence(CongruenceFamily([c3, c3], [sa, sa]), ultra)
            coarse = product_congruence(CongruenceFamily([c3, c3], [sb, sb]), ultra)
            assert fine.refines(coarse)


def test_ultraproduct_collapses_to_chosen_factor(c3, s2, by_name):
    u = ultraproduct([c3, c3, c3], principal_ultrafilter(3, 2))
    assert u.size == 3
    assert find_isomorphism(u, c3).found
    assert isomorphic_by_bruteforce(u, c3).found
    u2 = ultraproduct([s2, c3], principal_ultrafilter(2, 1))
    assert find_isomorphism(u2, c3).found
    u3 = ultraproduct([by_name["Z4"], s2], principal_ultrafilter(2, 0))
    assert find_isomorphism(u3, by_name["Z4"]).found


def test_ultraproduct_fields(c3, s2):
    ultra = principal_ultrafilter(2, 0)
    u = ultraproduct([s2, c3], ultra)
    assert u.factors == (s2, c3)
    assert u.ultrafilter == ultra
    assert u.product == direct_product([s2, c3])
    assert u.congruence == dstar([s2, c3], ultra)
    # class representatives are least members, ascending
    assert u.class_reps == tuple(sorted(u.class_reps))
    for c, rep in enumerate(u.class_reps):
        assert u.projection[rep] == c
    # repeated construction is cached
    assert ultraproduct([s2, c3], ultra) is u


def test_single_factor_ultraproduct_is_isomorphic_copy(corpus):
    ultra = principal_ultrafilter(1, 0)
    for alg in corpus:
        u = ultraproduct([alg], ultra)
        assert u.size == alg.size
        assert u.tables == alg.tables


def test_induced_congruence_round_trip(c4):
    lattice = list(con_lattice(c4))
    for base in lattice:
        quot = quotient(c4, base)
        for theta in lattice:
            if not base.refines(theta):
                with pytest.raises(ValidationError, match="refine"):
                    induced_congruence(theta, base)
                continue
            ind = induced_congruence(theta, base, quotient_algebra=quot)
            # pulling back along the projection recovers theta
            pulled = Partition([ind.class_id[quot.projection[e]] for e in range(4)])
            assert pulled.blocks() == theta.blocks()


def test_induced_congruence_degenerate_cases(c3):
    theta = Partition.full(3)
    base = parse_partition("[[0,1],[2]]", 3)
    from ultracon import Congruence

    full_ind = induced_congruence(Congruence(c3, theta), Congruence(c3, base))
    assert full_ind.num_classes == 1
    same = induced_congruence(Congruence(c3, base), Congruence(c3, base))
    assert same == Partition.identity(2)


def test_induced_congruence_rejects_foreign_quotient(c3, s2):
    from ultracon import Congruence

    base = Congruence(c3, parse_partition("[[0,1],[2]]", 3))
    theta = Congruence(c3, Partition.full(3))
    wrong = quotient(s2, Partition.identity(2))
    with pytest.raises(ValidationError):
        induced_congruence(theta, base, quotient_algebra=wrong)
