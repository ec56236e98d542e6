import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from synchro import (
    Automaton,
    cerny,
    rank,
    shortest_reset_word,
    transformation_of,
)
from synchro.algebra import (
    AlgebraData,
    algebra_basis,
    algebra_of_automaton,
    center_dim,
    enumerate_monoid,
    is_radical_word,
    is_semisimple,
    radical,
    radical_element_flags,
    rep_matrix,
    semisimple_quotient,
    shortest_radical_word,
    theta_support,
    wedderburn_decompose,
)
from synchro.automaton import Transformation, letter_transformations
from synchro.errors import MonoidTooLarge, NotSynchronizing
from synchro.linalg import Matrix, Subspace

from conftest import automata


def naive_monoid_closure(a):
    letters = letter_transformations(a)
    elems = {Transformation.identity(a.n).image}
    changed = True
    while changed:
        changed = False
        for img in list(elems):
            for t in letters:
                c = Transformation(img).compose(t).image
                if c not in elems:
                    elems.add(c)
                    changed = True
    return elems


def test_enumerate_monoid_identity_letter():
    mt = enumerate_monoid(Automaton([[0], [1]]))
    assert len(mt.elements) == 1


def test_enumerate_monoid_matches_closure_oracle():
    for a in (cerny(3), cerny(4), Automaton([[1, 0], [0, 0]])):
        mt = enumerate_monoid(a)
        assert {t.image for t in mt.elements} == naive_monoid_closure(a)


def test_monoid_cap():
    with pytest.raises(MonoidTooLarge):
        enumerate_monoid(cerny(3), cap=1)


def test_witnesses_evaluate_and_are_lex_least():
    a = cerny(3)
    mt = enumerate_monoid(a)
    for i, t in enumerate(mt.elements):
        assert transformation_of(a, mt.witness[i]) == t
    # oracle: first word per element in (length, lex) order
    seen = {}
    for length in range(7):
        for w in itertools.product(range(a.m), repeat=length):
            img = transformation_of(a, w).image
            seen.setdefault(img, w)
    for i, t in enumerate(mt.elements):
        if len(mt.witness[i]) < 7:
            assert mt.witness[i] == seen[t.image]


def test_reset_elements_form_an_ideal():
    mt = enumerate_monoid(cerny(4))
    for i, flag in enumerate(mt.reset_flags):
        if flag:
            for j in range(len(mt.elements)):
                assert mt.reset_flags[mt.mul(i, j)]
                assert mt.reset_flags[mt.mul(j, i)]


def test_rep_matrix_identity_and_reset():
    a = cerny(4)
    assert rep_matrix(a, Transformation.identity(4)) == Matrix.identity(3)
    w = shortest_reset_word(a)
    assert rep_matrix(a, transformation_of(a, w)).is_zero()


def test_rep_matrix_cycle_rows():
    a = cerny(3)
    m = rep_matrix(a, transformation_of(a, (0,)))
    assert m.data == ((Fraction(-1), Fraction(1)), (Fraction(-1), Fraction(0)))


@given(automata(min_n=2, max_n=5, max_m=2))
@settings(max_examples=40, deadline=None)
def test_rep_matrix_multiplicative(a):
    mt = enumerate_monoid(a)
    els = mt.elements[: min(len(mt.elements), 12)]
    for s in els:
        for t in els:
            assert rep_matrix(a, s.compose(t)) == rep_matrix(a, s) @ rep_matrix(a, t)


@given(automata(min_n=2, max_n=5, max_m=2))
@settings(max_examples=40, deadline=None)
def test_rank_one_iff_zero_matrix(a):
    for t in enumerate_monoid(a).elements:
        assert (t.rank == 1) == rep_matrix(a, t).is_zero()


def test_algebra_identity_letter_dim_one():
    a = Automaton([[0], [1]])
    assert algebra_of_automaton(a).dim == 1


def test_algebra_contains_identity():
    for a in (cerny(3), cerny(4), Automaton([[1, 1], [0, 1]])):
        alg = algebra_of_automaton(a)
        assert alg.contains(Matrix.identity(a.n - 1))


def test_algebra_dim_matches_span_oracle():
    for a in (cerny(3), Automaton([[1, 0], [2, 1], [0, 0]])):
        mt = enumerate_monoid(a)
        alg = algebra_basis(mt, a)
        oracle = Subspace.from_vectors(
            [rep_matrix(a, t).flatten() for t in mt.elements], (a.n - 1) ** 2
        )
        assert alg.space == oracle


def test_radical_of_identity_span_is_zero():
    assert radical(algebra_of_automaton(Automaton([[0], [1]]))).dim == 0


def test_radical_of_identity_plus_nilpotent():
    ident = Matrix.identity(2)
    nil = Matrix([[0, 1], [0, 0]])
    space = Subspace.from_vectors([ident.flatten(), nil.flatten()], 4)
    alg = AlgebraData(cerny(3), space)
    rad = radical(alg)
    assert rad.dim == 1
    assert rad.contains_matrix(nil)
    assert not rad.contains_matrix(ident)


def test_cerny_radical_zero():
    assert radical(algebra_of_automaton(cerny(4))).dim == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cerny_semisimple(n):
    assert is_semisimple(cerny(n))


def test_semisimple_needs_synchronizing():
    with pytest.raises(NotSynchronizing):
        is_semisimple(Automaton([[0], [1]]))


def test_two_state_constant_semisimple():
    assert is_semisimple(Automaton([[0], [0]]))


def test_census_has_non_semisimple_instances(census3):
    flags = [radical(algebra_of_automaton(a)).dim > 0 for a in census3]
    assert any(flags)
    a = census3[flags.index(True)]
    assert not is_semisimple(a)


def test_radical_words_basics():
    a = cerny(4)
    alg = algebra_of_automaton(a)
    rad = radical(alg)
    w = shortest_reset_word(a)
    assert is_radical_word(a, w, alg=alg, rad=rad)
    assert not is_radical_word(a, (), alg=alg, rad=rad)


def test_semisimple_radical_words_equal_reset_words(census3):
    for a in census3[::23]:
        alg = algebra_of_automaton(a)
        rad = radical(alg)
        if rad.dim != 0:
            continue
        mt = enumerate_monoid(a)
        flags = radical_element_flags(mt, alg, rad)
        assert flags == mt.reset_flags


def test_shortest_radical_word_properties(census3):
    for a in census3[::19]:
        u = shortest_radical_word(a)
        assert rank(a, u * (a.n - 1)) == 1
        if is_semisimple(a):
            assert len(u) == len(shortest_reset_word(a))
    assert shortest_radical_word(Automaton([[0]])) == ()


def test_radical_ideal_invariants(census3):
    for a in census3[::31]:
        alg = algebra_of_automaton(a)
        rad = radical(alg)
        for x in rad.mats:
            assert x.power(max(a.n - 1, 1)).is_zero()
            for b in alg.mats:
                assert rad.contains_matrix(x @ b)
                assert rad.contains_matrix(b @ x)


def test_semisimple_quotient_dimension(census3):
    for a in census3[::29]:
        alg = algebra_of_automaton(a)
        rad = radical(alg)
        ss = semisimple_quotient(alg, rad)
        assert ss.dim == alg.dim - rad.dim


def test_center_of_identity_span():
    a = Automaton([[0], [1]])
    alg = algebra_of_automaton(a)
    ss = semisimple_quotient(alg, radical(alg))
    assert center_dim(ss) == 1


def test_center_dim_at_most_quotient_dim(census3):
    for a in census3[::37]:
        alg = algebra_of_automaton(a)
        ss = semisimple_quotient(alg, radical(alg))
        assert 0 <= center_dim(ss) <= ss.dim


def test_wedderburn_identity_span():
    a = Automaton([[0], [0]])
    alg = algebra_of_automaton(a)
    ss = semisimple_quotient(alg, radical(alg))
    wd = wedderburn_decompose(ss)
    assert wd.k == 1 and wd.dims == (1,)


def test_wedderburn_invariants(census3):
    for a in census3[::13]:
        alg = algebra_of_automaton(a)
        ss = semisimple_quotient(alg, radical(alg))
        wd = wedderburn_decompose(ss, seed=2)
        assert sum(d * d for d in wd.dims) == ss.dim
        assert wd.k == center_dim(ss)
        assert wd.max_idempotent_residual < wd.tol.zero


def test_wedderburn_dims_stable_across_seeds():
    alg = algebra_of_automaton(cerny(4))
    ss = semisimple_quotient(alg, radical(alg))
    dims = {tuple(sorted(wedderburn_decompose(ss, seed=s).dims)) for s in range(10)}
    assert dims == {(3,)}


def test_theta_support_examples():
    a = cerny(4)
    alg = algebra_of_automaton(a)
    ss = semisimple_quotient(alg, radical(alg))
    wd = wedderburn_decompose(ss)
    assert theta_support(ss, wd, shortest_reset_word(a)) == frozenset()
    assert theta_support(ss, wd, ()) == frozenset(range(wd.k))


def test_theta_support_shrinks_under_factors(census3):
    import random

    rng = random.Random(7)
    for a in census3[::41]:
        alg = algebra_of_automaton(a)
        ss = semisimple_quotient(alg, radical(alg))
        wd = wedderburn_decompose(ss)
        for _ in range(5):
            u = tuple(rng.randrange(a.m) for _ in range(rng.randrange(0, 5)))
            x = tuple(rng.randrange(a.m) for _ in range(rng.randrange(0, 3)))
            y = tuple(rng.randrange(a.m) for _ in range(rng.randrange(0, 3)))
            assert theta_support(ss, wd, x + u + y) <= theta_support(ss, wd, u)
