import pytest

from diagram_spaces.core.cofib import (
    FLAVORS, attach_cell, check_cofibration_closure, check_latching_equivariance, cofibration_check,
    flatness_check_I, h_cofibration_check, latching_space,
)
from diagram_spaces.core.dayconv import (
    DiagMap, diagram_from_recipe, empty_diagram, free_F, map_from_empty, semifree_G, vertex_action, x_bullet,
)
from diagram_spaces.core.sset import FinSSet, SSetMap


def from_empty(E, X):
    return DiagMap(E, X, {k: SSetMap(E.level(k), X.level(k), {}) for k in X.objects()})


def test_latching_space_of_free_diagram(cat_I2):
    F1 = free_F(cat_I2, 1)
    assert latching_space(F1, 1).space.size() == 0
    data = latching_space(F1, 2)
    assert data.space.size() == 2
    assert data.latching_map.is_bijective()


def test_free_diagrams_are_projective_cofibrant(cat_I2):
    for k in (0, 1, 2):
        for flavor in FLAVORS:
            if flavor.startswith('positive') and k == 0:
                continue
            assert cofibration_check(map_from_empty(free_F(cat_I2, k)), flavor).passed, (k, flavor)


def test_positive_flavors_reject_degree_zero(cat_I2):
    result = cofibration_check(map_from_empty(free_F(cat_I2, 0)), 'positive-flat')
    assert not result.passed
    assert result.witnesses[0]['condition'] == 'isomorphism outside A'
    assert cofibration_check(map_from_empty(free_F(cat_I2, 0)), 'flat').passed


def test_x_bullet_is_flat_but_not_projective(cat_I2):
    X = x_bullet(['a', 'b'], 'a', 2).carrier
    assert flatness_check_I(X).passed
    assert cofibration_check(map_from_empty(X), 'flat').passed
    projective = cofibration_check(map_from_empty(X), 'projective')
    assert not projective.passed
    assert projective.witnesses[0]['object'] == '2'
    assert projective.witnesses[0]['condition'] == 'isotropy inside A(k)'


def test_semifree_orbit_diagram_is_flat_not_projective(cat_I2):
    point = FinSSet.point()
    G = semifree_G(cat_I2, 2, point, vertex_action(point, lambda g, v: v))
    assert cofibration_check(map_from_empty(G), 'flat').passed
    assert not cofibration_check(map_from_empty(G), 'projective').passed


def test_collapse_is_rejected(cat_I2):
    recipe = {'name': 'collapse', 'kind': 'quotient', 'generators': ['1', '1'], 'relations': [['2', 0, 2]]}
    D = diagram_from_recipe(recipe, cat_I2)
    result = flatness_check_I(D)
    assert not result.passed
    assert result.witnesses
    assert not cofibration_check(map_from_empty(D), 'flat').passed


@pytest.mark.parametrize('points', [['a'], ['a', 'b'], ['a', 'b', 'c']])
def test_flatness_criteria_agree_on_x_bullet(points):
    X = x_bullet(points, 'a', 3).carrier
    assert flatness_check_I(X).passed == cofibration_check(map_from_empty(X), 'flat').passed


def test_flatness_is_for_I_spaces(cat_J1):
    with pytest.raises(ValueError):
        flatness_check_I(free_F(cat_J1, cat_J1.unit))


def test_unknown_flavor(cat_I2):
    with pytest.raises(ValueError):
        cofibration_check(map_from_empty(free_F(cat_I2, 1)), 'reedy')


def test_cell_attachment(cat_I2):
    E = empty_diagram(cat_I2)
    dim_cap = E.level(1).dim_cap
    X, inclusion = attach_cell(E, 1, 0, SSetMap(FinSSet.simplex_boundary(0, dim_cap), E.level(1), {}))
    assert X.sizes() == free_F(cat_I2, 1).sizes()
    assert cofibration_check(inclusion, 'projective').passed
    assert h_cofibration_check(inclusion)

    base = X.elements(1)[0]
    boundary = FinSSet.simplex_boundary(1, dim_cap)
    Y, second = attach_cell(X, 1, 1, SSetMap.from_vertex_map(boundary, X.level(1), lambda v: base))
    assert Y.level(1).simplices[1]
    assert cofibration_check(second, 'projective').passed
    assert cofibration_check(second, 'flat').passed


def test_closure_under_cobase_change(cat_I2):
    E = empty_diagram(cat_I2)
    f = from_empty(E, free_F(cat_I2, 1))
    along = from_empty(E, free_F(cat_I2, 2))
    for flavor in ('projective', 'flat'):
        assert check_cofibration_closure(f, along, flavor).passed


def test_latching_map_is_equivariant(cat_I2):
    X = x_bullet(['a', 'b'], 'a', 2).carrier
    for k in cat_I2.objects():
        assert check_latching_equivariance(X, k).passed
