import random

import pytest

from synchro import Automaton, cerny, former_rank, rank
from synchro.algebra import algebra_of_automaton, radical
from synchro.errors import InvalidParameter, NotSemisimple, NotSynchronizing
from synchro.ideals import (
    ComponentMonoid,
    build_theta,
    element_ideal,
    minimal_core,
    minimal_section,
    rnk_ideal,
    sigma_classes,
    synthesize_reset_word,
)
from synchro.packing import packing_number


def theta_for(a, seed=0):
    return build_theta(a, seed=seed)


@pytest.fixture(scope="module")
def census3_theta(census3):
    """Pipeline objects for a thinned sample of the synchronizing 3-census."""
    out = []
    for a in census3[::11]:
        out.append(theta_for(a))
    return out


def test_supports_identity_full_reset_empty(census3_theta):
    for th in census3_theta:
        assert th.supports[0] == frozenset(range(th.k))
        for x, flag in enumerate(th.mt.reset_flags):
            if flag:
                assert th.supports[x] == frozenset()


def test_component_monoid_trivial_case():
    th = theta_for(Automaton([[0], [0]]))
    cm = ComponentMonoid(th, 0)
    assert cm.size() == 2  # identity and zero
    assert cm.ideal_classes == (cm.identity_class,)
    assert rnk_ideal(cm).rnk == 2


def test_component_monoid_bad_index():
    th = theta_for(cerny(3))
    with pytest.raises(InvalidParameter):
        ComponentMonoid(th, 5)


def test_zero_class_absorbs(census3_theta):
    for th in census3_theta:
        for i in range(th.k):
            cm = ComponentMonoid(th, i)
            z = cm.zero_class
            for c in range(cm.size()):
                assert cm.product(z, c) == z
                assert cm.product(c, z) == z


def test_class_product_independent_of_representatives(census3_theta):
    rng = random.Random(3)
    for th in census3_theta[:12]:
        for i in range(th.k):
            cm = ComponentMonoid(th, i)
            for _ in range(20):
                ci = rng.randrange(cm.size())
                cj = rng.randrange(cm.size())
                xi = rng.choice(cm.class_elements[ci])
                xj = rng.choice(cm.class_elements[cj])
                assert cm.class_of[th.mt.mul(xi, xj)] == cm.product(ci, cj)


def test_constant_rank_on_minimal_ideal(census3_theta):
    for th in census3_theta:
        for i in range(th.k):
            ideal = rnk_ideal(ComponentMonoid(th, i))
            assert len(set(ideal.per_class.values())) == 1
            assert ideal.rnk == next(iter(ideal.per_class.values()))


def test_former_rank_vs_component_ranks(census3_theta):
    for th in census3_theta:
        a = th.automaton
        fr = former_rank(a)
        rnks = [rnk_ideal(ComponentMonoid(th, i)).rnk for i in range(th.k)]
        assert fr <= min(rnks)
        if th.ss.rad.dim == 0:
            assert fr == min(rnks)


def test_minimal_section_none_for_reset_source():
    a = cerny(3)
    th = theta_for(a)
    from synchro import shortest_reset_word

    assert minimal_section(th, shortest_reset_word(a)) is None


def test_minimal_section_witness_contains_source(census3_theta):
    rng = random.Random(5)
    for th in census3_theta[:15]:
        a = th.automaton
        v = tuple(rng.randrange(a.m) for _ in range(rng.randrange(1, 5)))
        sec = minimal_section(th, v)
        if sec is None:
            continue
        joined = "".join(map(str, sec.witness))
        assert "".join(map(str, v)) in joined
        el = th.mt.element_of_word(sec.witness)
        assert th.supports[el] == sec.support


def test_sections_equal_or_disjoint(census3_theta):
    rng = random.Random(11)
    for th in census3_theta[:20]:
        a = th.automaton
        secs = []
        for _ in range(6):
            v = tuple(rng.randrange(a.m) for _ in range(rng.randrange(1, 6)))
            s = minimal_section(th, v)
            if s is not None:
                secs.append(s.support)
        for s1 in secs:
            for s2 in secs:
                assert s1 == s2 or not (s1 & s2)


def test_sections_are_support_atoms(census3_theta):
    # vanishing on one component of a section support forces vanishing on all of it
    for th in census3_theta[:20]:
        core, sections = minimal_core(th)
        for sec in sections:
            for sup in th.supports:
                inter = sup & sec.support
                assert inter == frozenset() or inter == sec.support


def test_factor_stability_of_section_witness(census3_theta):
    rng = random.Random(13)
    for th in census3_theta[:15]:
        mt = th.mt
        core, sections = minimal_core(th)
        for sec in sections:
            e_u = mt.element_of_word(sec.witness)
            for _ in range(10):
                s = rng.randrange(len(mt.elements))
                t = rng.randrange(len(mt.elements))
                x = mt.mul(mt.mul(s, e_u), t)
                assert th.supports[x] in (frozenset(), sec.support)


def test_minimal_core_trivial_cases():
    th = theta_for(Automaton([[0], [0]]))
    core, sections = minimal_core(th)
    assert core.indices == frozenset({0})
    assert core.minimal
    assert len(sections) == 1


def test_full_component_set_is_core(census3_theta):
    for th in census3_theta:
        full = frozenset(range(th.k))
        assert all(s & full for s in th.supports if s)


def test_covering_sections_disjoint_and_cover(census3_theta):
    for th in census3_theta:
        core, sections = minimal_core(th)
        covered = frozenset()
        for sec in sections:
            assert not (sec.support & covered)
            covered |= sec.support
        assert core.indices <= covered


def test_sigma_classes_bounds(census3_theta):
    for th in census3_theta:
        if th.ss.rad.dim != 0:
            continue
        a = th.automaton
        core, sections = minimal_core(th)
        for sec in sections:
            for i in sorted(sec.support):
                cm = ComponentMonoid(th, i)
                sc = sigma_classes(th, cm, sec)
                bound = packing_number(2, rnk_ideal(cm).rnk, a.n) + 1
                assert sc.num_classes <= bound
                assert sc.zero_sigma_size() == 1


def test_sigma_requires_component_in_support():
    th = theta_for(cerny(3))
    core, sections = minimal_core(th)
    cm = ComponentMonoid(th, 0)
    other = sections[0]
    import dataclasses

    fake = dataclasses.replace(other, support=frozenset())
    with pytest.raises(InvalidParameter):
        sigma_classes(th, cm, fake)


def _sigma_edge(sc, g, f):
    if g == f:
        return True
    return any(
        (mg & mf).bit_count() >= 2
        for mg in sc.rep_images[g]
        for mf in sc.rep_images[f]
    )


def test_sigma_right_compatible(census3_theta):
    rng = random.Random(17)
    for th in census3_theta[:12]:
        if th.ss.rad.dim != 0:
            continue
        core, sections = minimal_core(th)
        for sec in sections:
            for i in sorted(sec.support):
                cm = ComponentMonoid(th, i)
                sc = sigma_classes(th, cm, sec)
                classes = sc.ideal_classes
                letter_classes = [cm.class_of[g] for g in th.mt.gens]
                for g in classes:
                    for f in classes:
                        if g == f or not _sigma_edge(sc, g, f):
                            continue
                        for lc in letter_classes:
                            g2 = cm.product(g, lc)
                            f2 = cm.product(f, lc)
                            if g2 in sc.sigma_of and f2 in sc.sigma_of:
                                assert _related_in_closure(sc, g2, f2)


def _related_in_closure(sc, g, f):
    return sc.sigma_of[g] == sc.sigma_of[f]


def test_representative_product_law(census3_theta):
    rng = random.Random(23)
    for th in census3_theta[:10]:
        if th.ss.rad.dim != 0:
            continue
        mt = th.mt
        core, sections = minimal_core(th)
        for sec in sections:
            for i in sorted(sec.support):
                cm = ComponentMonoid(th, i)
                ideal = rnk_ideal(cm)
                sc = sigma_classes(th, cm, sec)
                for g in cm.ideal_classes:
                    for w in sc.rep_elements[g][:3]:
                        for _ in range(6):
                            s = rng.randrange(len(mt.elements))
                            t = rng.randrange(len(mt.elements))
                            x = mt.mul(mt.mul(s, w), t)
                            cx = cm.class_of[x]
                            expected = cm.product(
                                cm.product(cm.class_of[s], g), cm.class_of[t]
                            )
                            assert cx == expected
                            if cx in cm.ideal_classes:
                                assert (
                                    min(
                                        mt.elements[y].rank
                                        for y in element_ideal(mt, x)
                                        if cm.class_of[y] == cx
                                    )
                                    == ideal.rnk
                                )


def test_synthesize_cerny4():
    w, cert = synthesize_reset_word(cerny(4))
    assert rank(cerny(4), w) == 1
    assert cert.length <= 3 * packing_number(2, 2, 4) == 18
    assert not cert.violations()


def test_synthesize_two_state():
    w, cert = synthesize_reset_word(Automaton([[0], [0]]))
    assert cert.length <= 1


def test_synthesize_single_state():
    w, cert = synthesize_reset_word(Automaton([[0]]))
    assert w == () and cert.length == 0


def test_synthesize_rejects_non_semisimple(census3):
    for a in census3:
        if radical(algebra_of_automaton(a)).dim > 0:
            with pytest.raises(NotSemisimple):
                synthesize_reset_word(a)
            break


def test_synthesize_rejects_non_synchronizing():
    with pytest.raises(NotSynchronizing):
        synthesize_reset_word(Automaton([[0], [1]]))


def test_synthesize_census_sample(census3):
    for a in census3[::15]:
        if radical(algebra_of_automaton(a)).dim != 0:
            continue
        w, cert = synthesize_reset_word(a, seed=4)
        assert rank(a, w) == 1
        assert cert.length <= cert.bound_component
        assert cert.length <= cert.bound_former
