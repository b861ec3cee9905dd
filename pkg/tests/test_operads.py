import pytest

from diagram_spaces.core.ambient import Ambient
from diagram_spaces.core.dayconv import free_F
from diagram_spaces.core.errors import ArityCapError
from diagram_spaces.core.fincat import MorI
from diagram_spaces.core.operads import (
    OperadMonad, check_algebra_laws, check_reflexive_pair, check_terminal_projection, check_u0_is_forgetful,
    check_uk_commutative, check_uk_free, compositions, cyclic_monoid, free_algebra, left_zero_monoid,
    monoid_algebra, on_tail, operad_by_name, shifted, term_arity, u_k,
)


@pytest.fixture
def two_points(finsets):
    return finsets.finite_set(['a', 'b'], 'X')


def test_operad_elements():
    assert operad_by_name('C', 3).elements(3) == ['*']
    assert len(operad_by_name('A', 3).elements(3)) == 6
    with pytest.raises(ArityCapError):
        operad_by_name('A', 2).elements(3)
    with pytest.raises(ValueError):
        operad_by_name('E', 2)


def test_associativity_operad_composes_words():
    A = operad_by_name('A', 4)
    assert A.compose((2, 1), [(1,), (1, 2)]) == (2, 3, 1)
    assert A.act((1, 2), MorI(2, (2, 1))) == (2, 1)
    assert A.compose_with_units((1,), [], 1) == (1,)


@pytest.mark.parametrize('name, cap', [('C', 3), ('A', 3)])
def test_operad_axioms(name, cap):
    assert operad_by_name(name, cap).check_axioms(cap).passed


def test_compositions():
    assert compositions(2, 2) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert compositions(3, 0) == [()]


def test_block_permutations():
    swap = MorI(2, (2, 1))
    assert shifted(swap, 1) == MorI(3, (2, 1, 3))
    assert on_tail(swap, 1) == MorI(3, (1, 3, 2))
    assert on_tail(swap, 0) == swap
    assert term_arity(None, (2, 'c', ())) == term_arity('L', (2, 'c', ())) == 2


def test_monad_needs_its_arity(finsets):
    with pytest.raises(ArityCapError):
        OperadMonad(operad_by_name('C', 2), finsets, 3)


@pytest.mark.parametrize('name, size', [('C', 6), ('A', 7)])
def test_free_monad_sizes(finsets, two_points, name, size):
    monad = OperadMonad(operad_by_name(name, 2), finsets, 2)
    assert monad.free(two_points).sizes() == {'0': size}
    assert monad.check_laws(two_points).passed


@pytest.mark.parametrize('name', ['C', 'A'])
def test_free_algebra_and_uk(finsets, two_points, name):
    monad = OperadMonad(operad_by_name(name, 2), finsets, 2)
    A = free_algebra(monad, two_points)
    assert check_algebra_laws(monad, A).passed
    assert check_u0_is_forgetful(monad, A).passed
    for k in (0, 1):
        assert check_uk_free(monad, two_points, k).passed
        assert check_reflexive_pair(monad, A, k).passed
        assert check_terminal_projection(monad, A, k).passed


def test_uk_beyond_truncation(finsets, two_points):
    monad = OperadMonad(operad_by_name('C', 2), finsets, 2)
    with pytest.raises(ArityCapError):
        u_k(monad, free_algebra(monad, two_points), 3)


def test_monoids_as_algebras(finsets):
    commutative = OperadMonad(operad_by_name('C', 2), finsets, 2)
    associative = OperadMonad(operad_by_name('A', 2), finsets, 2)
    Z2 = cyclic_monoid(2)
    assert check_algebra_laws(commutative, monoid_algebra(commutative, Z2)).passed
    assert check_algebra_laws(associative, monoid_algebra(associative, Z2)).passed
    assert check_algebra_laws(associative, monoid_algebra(associative, left_zero_monoid())).passed
    with pytest.raises(ValueError):
        monoid_algebra(commutative, left_zero_monoid())


def test_uk_of_commutative_monoid_is_the_monoid(finsets):
    monad = OperadMonad(operad_by_name('C', 2), finsets, 2)
    A = monoid_algebra(monad, cyclic_monoid(3))
    assert check_uk_commutative(monad, A, 1).passed
    with pytest.raises(ArityCapError):
        check_uk_commutative(monad, A, 2)


def test_uk_commutative_rejects_other_operads(finsets):
    monad = OperadMonad(operad_by_name('A', 2), finsets, 2)
    with pytest.raises(ValueError):
        check_uk_commutative(monad, monoid_algebra(monad, cyclic_monoid(2)), 1)


def test_exactness_on_diagrams():
    diagrams = Ambient.diagrams('I', 2)
    F1 = free_F(diagrams.cat, 1)
    F0 = free_F(diagrams.cat, 0)
    assert OperadMonad(operad_by_name('C', 2), diagrams, 2).is_exact(F1)
    assert not OperadMonad(operad_by_name('C', 2), diagrams, 1).is_exact(F1)
    assert not OperadMonad(operad_by_name('C', 2), diagrams, 2).is_exact(F0)
    assert not OperadMonad(operad_by_name('C', 2), Ambient.finite_sets(), 2).is_exact(F1)


def test_uk_on_diagrams():
    diagrams = Ambient.diagrams('I', 2)
    monad = OperadMonad(operad_by_name('C', 2), diagrams, 2)
    F1 = free_F(diagrams.cat, 1)
    assert monad.check_laws(F1).passed
    assert check_uk_free(monad, F1, 1).passed
    assert u_k(monad, free_algebra(monad, F1), 0).exact
