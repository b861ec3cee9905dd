import pytest

from diagram_spaces.core.ambient import Ambient, as_cell, permute_cell
from diagram_spaces.core.dayconv import DayProduct, free_F
from diagram_spaces.core.errors import InvariantViolation
from diagram_spaces.core.fincat import MorI


def test_finite_sets(finsets):
    assert finsets.name == 'FinSet'
    assert finsets.is_finite_sets
    X = finsets.finite_set(['a', 'b'], 'X')
    assert X.sizes() == {'0': 2}
    assert finsets.power(X, 2).sizes() == {'0': 4}
    assert finsets.power(X, 3).sizes() == {'0': 8}
    assert finsets.unit().sizes() == {'0': 1}


def test_diagram_ambient():
    amb = Ambient.diagrams('I', 2)
    assert amb.name == 'I-spaces'
    assert not amb.is_finite_sets
    with pytest.raises(ValueError):
        amb.finite_set(['a'])
    assert amb.is_positive(free_F(amb.cat, 1))
    assert not amb.is_positive(free_F(amb.cat, 0))


def test_products_agree_with_day_convolution():
    amb = Ambient.diagrams('I', 3)
    F1 = free_F(amb.cat, 1)
    assert amb.tensor([F1, F1]).sizes() == DayProduct(F1, F1).sizes()
    assert amb.unit().sizes() == free_F(amb.cat, 0).sizes()


def test_products_are_cached(finsets):
    X = finsets.finite_set(['a'], 'X')
    assert finsets.power(X, 2) is finsets.power(X, 2)


def test_permuting_cells(finsets):
    cat = finsets.cat
    X = finsets.finite_set(['a', 'b'], 'X')
    square = finsets.power(X, 2)
    cell = ((0, 0), cat.identity(0), ('a', 'b'))
    swapped = permute_cell(cat, cell, MorI(2, (2, 1)))
    assert swapped == ((0, 0), cat.identity(0), ('b', 'a'))
    assert square.permute(0, cell, MorI(2, (2, 1))) == square.class_of(0, (0, 0), cat.identity(0), ('b', 'a'))


def test_unknown_cell_is_an_invariant_violation(finsets):
    X = finsets.finite_set(['a'], 'X')
    square = finsets.power(X, 2)
    with pytest.raises(InvariantViolation):
        square.class_of(0, (0, 0), finsets.cat.identity(0), ('a', 'z'))
    assert square.find(0, ((0, 0), finsets.cat.identity(0), ('a', 'z'))) is None


def test_single_cells(finsets):
    X = finsets.finite_set(['a'], 'X')
    assert as_cell(finsets.cat, 0, 'a') == ((0,), finsets.cat.identity(0), ('a',))
    assert finsets.power(X, 1).elements(0) == [as_cell(finsets.cat, 0, 'a')]
