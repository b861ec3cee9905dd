import pytest

from diagram_spaces.core.errors import IterationCapError
from diagram_spaces.core.fincat import sgn_of_J_morphism
from diagram_spaces.core.graded import (
    GradedMonoidMap, GradedSignedMonoid, check_axioms, check_logification_idempotent,
    check_logification_well_defined, check_units_universal, find_isomorphism, free_monoid_on,
    hocolim_quotient_comparison, is_grouplike, is_log_structure, ku_like_monoid, laurent_like_J_monoid,
    laurent_monoid, logification, odd_endomorphism, pi0_of_J_monoid, terminal_J_monoid, trivial_monoid, units,
)


def identity_on(M):
    return GradedMonoidMap(M, M, {x: x for x in M.elements()})


def test_fixture_monoids_satisfy_axioms(corpus):
    monoids = corpus.graded_monoids()
    assert len(monoids) >= 5
    for M in monoids:
        assert check_axioms(M).passed, M.name


def test_builders():
    L = laurent_monoid(4)
    assert sorted(L.carriers) == [-4, -2, 0, 2, 4]
    assert L.product('+u^1', '-u^-1') == '-u^0'
    assert L.neg('+u^2') == '-u^2'
    assert trivial_monoid().size() == 1
    F = free_monoid_on(2, 2)
    assert F.product('+x^2', '+x^1') is None


def test_broken_unit_is_reported():
    M = laurent_monoid(2)
    broken = GradedSignedMonoid(M.carriers, M.involution, '+u^1', M.mult, True, 'broken')
    result = check_axioms(broken)
    assert not result.passed
    assert result.witnesses[0]['axiom'] == 'unit in degree 0'


def test_units():
    L = laurent_monoid(4)
    assert units(L).size() == L.size()
    assert is_grouplike(L)
    ku = units(ku_like_monoid(2))
    assert sorted(ku.carriers) == [0]
    assert sorted(ku.elements()) == ['+u^0', '-u^0']
    assert units(free_monoid_on(2, 2)).size() == 2


def test_units_are_universal():
    L = laurent_monoid(4)
    U = units(L)
    assert check_units_universal(U, GradedMonoidMap(U, L, {x: x for x in U.elements()})).passed
    with pytest.raises(ValueError):
        check_units_universal(free_monoid_on(2, 1), identity_on(free_monoid_on(2, 1)))


def test_homomorphism_check():
    L = laurent_monoid(2)
    assert identity_on(L).check().passed
    flipped = GradedMonoidMap(L, L, {x: L.neg(x) for x in L.elements()})
    assert not flipped.check().passed


def test_find_isomorphism():
    assert find_isomorphism(laurent_monoid(2), laurent_monoid(2, symbol='v')) is not None
    assert find_isomorphism(laurent_monoid(2), free_monoid_on(2, 2)) is None


def test_log_structures_from_fixtures(corpus):
    fixtures = {f.name: f for f in corpus.log_structures()}
    assert is_log_structure(fixtures['laurent-inclusion'].alpha) is False
    assert is_log_structure(identity_on(laurent_monoid(4)))
    for fixture in fixtures.values():
        assert fixture.alpha.check().passed, fixture.name
        result = logification(fixture.alpha)
        assert result.trivial == fixture.expect_trivial, fixture.name
        assert check_logification_well_defined(result, fixture.alpha).passed
        assert check_logification_idempotent(result).passed


def test_logification_of_laurent_inclusion_is_grouplike(corpus):
    alpha = next(f.alpha for f in corpus.log_structures() if f.name == 'laurent-inclusion')
    result = logification(alpha)
    Ma = result.monoid
    assert Ma.size() == alpha.target.size()
    assert units(Ma).size() == Ma.size()
    assert is_grouplike(Ma)
    up, down = result.from_units('+u^2'), result.from_units('+u^-2')
    assert Ma.product(up, down) == Ma.unit
    assert logification(result.alpha).monoid.size() == Ma.size()


def test_logification_of_identity_on_units():
    L = laurent_monoid(2)
    result = logification(identity_on(L))
    assert result.trivial
    assert result.monoid.size() == L.size()


def test_logification_respects_its_cap(corpus):
    alpha = next(f.alpha for f in corpus.log_structures() if f.name == 'laurent-inclusion')
    with pytest.raises(IterationCapError):
        logification(alpha, cap=0)


def test_odd_endomorphism():
    assert sgn_of_J_morphism(odd_endomorphism(0, 2)) == -1
    assert sgn_of_J_morphism(odd_endomorphism(2, 0)) == -1
    with pytest.raises(ValueError):
        odd_endomorphism(1, 1)


def test_pi0_of_laurent_like_monoid():
    A = laurent_like_J_monoid(4)
    M, report = pi0_of_J_monoid(A, 4)
    assert report.not_stabilized == []
    assert sorted(M.carriers) == [-2, 0, 2]
    assert M.size() == 6
    assert check_axioms(M).passed
    assert is_grouplike(M)
    assert report.to_dict()['not_stabilized'] == []


def test_pi0_of_terminal_monoid():
    A = terminal_J_monoid(3)
    M, report = pi0_of_J_monoid(A, 3)
    assert sorted(M.carriers) == [-1, 0, 1]
    assert all(M.neg(x) == x for x in M.elements())
    assert check_axioms(M).passed
    assert hocolim_quotient_comparison(A, M, report).passed


def test_pi0_needs_room_for_degree_zero():
    with pytest.raises(ValueError):
        pi0_of_J_monoid(terminal_J_monoid(1), 1)
