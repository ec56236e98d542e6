import pytest
from hypothesis import given, settings

from synchro import (
    Automaton,
    Partition,
    cerny,
    inductive_synchronize,
    is_congruence,
    is_simple,
    kernel_partition,
    largest_congruence_below,
    principal_congruence,
    quotient,
    rank,
    transformation_of,
)
from synchro.errors import InvalidPartition, InvalidState, NotACongruence, Undefined

from conftest import automata, automata_with_word


def all_partitions(n):
    """Every partition of range(n), as Partition objects (Bell-number many)."""
    if n == 0:
        return
    assignments = [[0]]
    for q in range(1, n):
        new = []
        for ass in assignments:
            top = max(ass)
            for b in range(top + 2):
                new.append(ass + [b])
        assignments = new
    for ass in assignments:
        yield Partition(ass)


def all_congruences(a):
    return [p for p in all_partitions(a.n) if is_congruence(a, p)]


def test_partition_normalization():
    assert Partition([2, 2, 5, 2]).blocks == (0, 0, 1, 0)
    assert Partition([1, 0]).blocks == (0, 1)
    assert Partition.identity(3).is_identity()
    assert Partition.universal(3).is_universal()


def test_trivial_partitions_are_congruences():
    a = cerny(4)
    assert is_congruence(a, Partition.identity(4))
    assert is_congruence(a, Partition.universal(4))


def test_cerny_pair_block_not_congruence():
    # letter a sends {0,1} to {1,2}, straddling the blocks
    assert not is_congruence(cerny(4), Partition([0, 0, 1, 2]))


def test_size_mismatch_raises():
    with pytest.raises(InvalidPartition):
        is_congruence(cerny(4), Partition([0, 0]))


def test_principal_congruence_trivial_pair():
    a = cerny(4)
    assert principal_congruence(a, 2, 2).is_identity()
    with pytest.raises(InvalidState):
        principal_congruence(a, 0, 9)


def test_principal_congruence_cerny_is_universal():
    a = cerny(4)
    for q1 in range(4):
        for q2 in range(q1 + 1, 4):
            assert principal_congruence(a, q1, q2).is_universal()


@given(automata(min_n=2, max_n=4, max_m=2))
@settings(max_examples=60)
def test_principal_congruence_matches_meet_oracle(a):
    congs = all_congruences(a)
    for q1 in range(a.n):
        for q2 in range(q1 + 1, a.n):
            got = principal_congruence(a, q1, q2)
            containing = [c for c in congs if c.same_block(q1, q2)]
            # the principal congruence refines every congruence containing the pair
            assert got in congs
            assert got.same_block(q1, q2)
            for c in containing:
                assert got.refines(c)


def test_is_simple_examples():
    assert is_simple(cerny(4))
    assert is_simple(Automaton([[1, 0], [0, 1]]))
    with pytest.raises(Undefined):
        is_simple(Automaton([[0]]))


def test_disjoint_cycle_product_not_simple():
    # two 2-cycles glued by one letter: {0,1}/{2,3} blocks are preserved
    a = Automaton([[1, 2], [0, 3], [3, 0], [2, 1]])
    p = Partition([0, 0, 1, 1])
    assert is_congruence(a, p)
    assert not is_simple(a)


@given(automata(min_n=2, max_n=4, max_m=2))
@settings(max_examples=60)
def test_is_simple_matches_enumeration_oracle(a):
    only_trivial = all(
        p.is_identity() or p.is_universal() for p in all_congruences(a)
    )
    assert is_simple(a) == only_trivial


def test_largest_congruence_below_trivialities():
    a = cerny(4)
    ident = Partition.identity(4)
    assert largest_congruence_below(a, ident) == ident
    top = largest_congruence_below(a, Partition.universal(4))
    assert is_congruence(a, top)
    assert top.is_universal()  # cerny(4) is synchronizing, universal is a congruence


@given(automata(min_n=2, max_n=4, max_m=2))
@settings(max_examples=60)
def test_largest_congruence_below_oracle(a):
    congs = all_congruences(a)
    for p in all_partitions(a.n):
        got = largest_congruence_below(a, p)
        assert is_congruence(a, got)
        assert got.refines(p)
        for c in congs:
            if c.refines(p):
                assert c.refines(got)


def test_quotient_by_universal_and_identity():
    a = cerny(4)
    b, proj = quotient(a, Partition.universal(4))
    assert b.n == 1
    c, proj2 = quotient(a, Partition.identity(4))
    assert c.n == 4
    assert c.delta == a.delta
    with pytest.raises(NotACongruence):
        quotient(a, Partition([0, 0, 1, 2]))


@given(automata_with_word(min_n=2, max_n=4, max_m=2, max_len=5))
@settings(max_examples=80)
def test_quotient_projection_commutes(aw):
    a, w = aw
    for c in all_congruences(a):
        b, proj = quotient(a, c)
        for q in range(a.n):
            img = transformation_of(a, w).image[q]
            img_b = transformation_of(b, w).image[proj[q]]
            assert proj[img] == img_b


def test_kernel_partition():
    a = cerny(4)
    t = transformation_of(a, (1,))
    assert kernel_partition(t).blocks == (0, 0, 1, 2)


def test_inductive_synchronize_semisimple_uses_bfs():
    from synchro import shortest_reset_word

    a = cerny(4)
    assert inductive_synchronize(a) == shortest_reset_word(a)


def test_inductive_synchronize_single_state():
    assert inductive_synchronize(Automaton([[0]])) == ()


def test_inductive_synchronize_on_census_sample(census3):
    for a in census3[::17]:
        w = inductive_synchronize(a)
        assert rank(a, w) == 1
