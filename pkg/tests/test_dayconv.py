import random

import pytest

from diagram_spaces.core.dayconv import (
    DayProduct, DiagMap, DiagSpace, check_associativity, check_free_adjunction, check_free_product_iso,
    check_hocolim_additivity, day_convolution,
    check_kan_shift_agreement, check_monoid, check_semifree_product_iso, check_symmetry, check_unit_law,
    coproduct_diagram, diagram_from_recipe, empty_diagram, free_F, identity_map, levelwise_pushout,
    map_from_empty, quotient_diagram, random_discrete_diagram, semifree_G, unit_monoid, vertex_action, x_bullet,
)
from diagram_spaces.core.errors import DegreeCapError, FixtureError, IterationCapError
from diagram_spaces.core.fincat import CategoryI, ObjJ
from diagram_spaces.core.sset import FinSSet


def trivial(g, v):
    return v


def test_free_diagram_levels(cat_I3):
    assert free_F(cat_I3, 1).sizes() == {'0': 0, '1': 1, '2': 2, '3': 3}
    assert free_F(cat_I3, 0).sizes() == {'0': 1, '1': 1, '2': 1, '3': 1}
    with pytest.raises(DegreeCapError):
        free_F(cat_I3, 4)


def test_semifree_point_takes_orbits(cat_I3):
    point = FinSSet.point()
    G = semifree_G(cat_I3, 2, point, vertex_action(point, trivial))
    assert G.sizes() == {'0': 0, '1': 0, '2': 1, '3': 3}


def test_semifree_rejects_non_action(cat_I3):
    two = FinSSet.discrete([0, 1])
    with pytest.raises(ValueError):
        semifree_G(cat_I3, 2, two, vertex_action(two, lambda g, v: 1 - v))


def test_free_box_free_has_free_levels(cat_I3):
    D = DayProduct(free_F(cat_I3, 1), free_F(cat_I3, 1))
    assert D.sizes() == free_F(cat_I3, 2).sizes()


def test_unit_symmetry_associativity(cat_I2):
    F1 = free_F(cat_I2, 1)
    bullet = x_bullet(['a', 'b'], 'a', 2).carrier
    assert check_unit_law(F1).passed
    assert check_unit_law(bullet).passed
    assert check_symmetry(F1, bullet).passed
    assert check_associativity(F1, bullet, F1).passed


def test_laws_over_J(cat_J1):
    X = free_F(cat_J1, ObjJ(0, 1))
    Y = free_F(cat_J1, ObjJ(1, 0))
    assert check_unit_law(X).passed
    assert check_symmetry(X, Y).passed


def test_law_checks_need_discrete_inputs(cat_I2):
    circle = DiagSpace.constant(cat_I2, FinSSet.circle(), name='S1')
    with pytest.raises(ValueError):
        check_unit_law(circle)


def test_kan_shift_matches_box_with_free(cat_I3):
    assert check_kan_shift_agreement(1, free_F(cat_I3, 1)).passed
    rng = random.Random(7)
    X = random_discrete_diagram(cat_I3, rng, generators=2, relations=1, max_generator_degree=1)
    assert check_kan_shift_agreement(1, X).passed


def test_free_and_semifree_products(cat_I3):
    point = FinSSet.point()
    assert check_free_product_iso(cat_I3, 1, point, 1, point).passed
    assert check_free_product_iso(cat_I3, 1, point, 2, FinSSet.discrete(['x', 'y'])).passed
    assert check_semifree_product_iso(cat_I3, 1, point, trivial, 1, point, trivial).passed


def test_semifree_product_with_sign_action(cat_I3):
    signs = FinSSet.discrete([0, 1])
    by_sign = lambda g, v: v if g.sign() > 0 else 1 - v
    assert check_semifree_product_iso(cat_I3, 2, signs, by_sign, 1, FinSSet.point(), trivial).passed


def test_monoids(cat_I2):
    assert check_monoid(unit_monoid(cat_I2)).passed
    bullet = x_bullet(['a', 'b', 'c'], 'a', 3)
    assert check_monoid(bullet).passed
    assert bullet.carrier.sizes() == {'0': 1, '1': 3, '2': 9, '3': 27}


def test_x_bullet_needs_its_basepoint():
    with pytest.raises(ValueError):
        x_bullet(['a'], 'z', 2)


def test_coproduct_and_pushout(cat_I2):
    F1, F0 = free_F(cat_I2, 1), free_F(cat_I2, 0)
    total, (i0, i1) = coproduct_diagram([F1, F0])
    assert total.sizes() == {'0': 1, '1': 2, '2': 3}
    P, into_b, into_c = levelwise_pushout(map_from_empty(F1), map_from_empty(F0))
    assert P.sizes() == total.sizes()
    assert into_b.check_naturality().passed


def test_quotient_is_a_natural_surjection(cat_I3):
    F2 = free_F(cat_I3, 2)
    x, y = F2.elements(2)
    Q, q = quotient_diagram(F2, [(2, x, y)])
    assert Q.sizes() == {'0': 0, '1': 0, '2': 1, '3': 3}
    assert q.check_naturality().passed


def test_recipes(cat_I2):
    recipe = {'name': 'collapse', 'kind': 'quotient', 'generators': ['1', '1'], 'relations': [['2', 0, 2]]}
    D = diagram_from_recipe(recipe, cat_I2)
    assert D.name == 'collapse'
    assert D.sizes()['1'] == 2
    with pytest.raises(FixtureError):
        diagram_from_recipe({'kind': 'quotient', 'generators': ['1'], 'relations': [['1', 0, 5]]}, cat_I2)
    with pytest.raises(FixtureError):
        diagram_from_recipe({'kind': 'blob'}, cat_I2)


def test_random_diagrams_are_seeded(cat_I2):
    first = random_discrete_diagram(cat_I2, random.Random(3))
    second = random_discrete_diagram(cat_I2, random.Random(3))
    assert first.sizes() == second.sizes()
    assert first.name == second.name


def test_hocolim_additivity(cat_I2):
    assert check_hocolim_additivity(free_F(cat_I2, 1), free_F(cat_I2, 0)).passed


def test_maps_compose(cat_I2):
    F1 = free_F(cat_I2, 1)
    E = empty_diagram(cat_I2)
    assert E.sizes() == {'0': 0, '1': 0, '2': 0}
    composite = identity_map(F1).compose(map_from_empty(F1))
    assert composite.source.sizes() == E.sizes()
    assert composite.target is F1


def test_day_convolution_levels(cat_I2):
    F1 = free_F(cat_I2, 1)
    assert day_convolution(F1, F1, 2).size() == 2
    assert day_convolution(F1, F1, 1).size() == 0


def test_free_adjunction(cat_I2):
    pair = FinSSet.discrete(['x', 'y'])
    result = check_free_adjunction(cat_I2, 1, pair, free_F(cat_I2, 0))
    assert result.passed
    assert result.details['maps_checked'] == 1
    bullet = x_bullet(['a', 'b'], 'a', 2).carrier
    assert check_free_adjunction(cat_I2, 1, pair, bullet).passed
    with pytest.raises(ValueError):
        check_free_adjunction(cat_I2, 1, FinSSet.circle(), bullet)


def test_quotient_names_classes_by_least_member(cat_I3):
    F2 = free_F(cat_I3, 2)
    x, y = F2.elements(2)
    Q, q = quotient_diagram(F2, [(2, y, x)])
    assert Q.elements(2) == [min([x, y], key=repr)]
    ranked, _ = quotient_diagram(F2, [(2, x, y)], rank=lambda k, e: 0 if e == y else 1)
    assert ranked.elements(2) == [y]


def test_quotient_respects_its_cap(cat_I3):
    F2 = free_F(cat_I3, 2)
    x, y = F2.elements(2)
    with pytest.raises(IterationCapError):
        quotient_diagram(F2, [(2, x, y)], cap=0)
    assert quotient_diagram(F2, [(2, x, x)], cap=0)[0].sizes() == F2.sizes()
