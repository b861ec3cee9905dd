import pytest

from diagram_spaces.core.dayconv import DiagMap, DiagSpace, free_F, levelwise_pullback
from diagram_spaces.core.errors import DimensionCapError
from diagram_spaces.core.fincat import CategoryI, CategoryJ
from diagram_spaces.core.sset import (
    FinSSet, SSetMap, check_consistent, contractible_certificate, homology, hocolim, hocolim_point_comparison,
    k_equivalence_evidence, nerve, pullback_preservation,
)


def test_circle_homology():
    groups = homology(FinSSet.circle(), 2)
    assert groups.ranks == {0: 1, 1: 1, 2: 0}
    assert not groups.reduced_is_zero()


def test_sphere_homology():
    groups = homology(FinSSet.simplex_boundary(3, dim_cap=3), 2)
    assert groups.ranks == {0: 1, 1: 0, 2: 1}
    assert all(t == [] for t in groups.torsion.values())


def test_full_simplex_is_acyclic():
    assert homology(FinSSet.simplex_boundary(2, full=True), 2).reduced_is_zero()


def test_empty_boundary_of_point():
    assert FinSSet.simplex_boundary(0).size() == 0


def test_homology_needs_room_above():
    with pytest.raises(DimensionCapError):
        homology(FinSSet.point(dim_cap=2), 2)


def test_boundary_satisfies_simplicial_identities():
    check_consistent(FinSSet.simplex_boundary(3, dim_cap=3))
    assert FinSSet.simplex_boundary(3, dim_cap=3).check_simplicial_identities() == []


def test_formal_simplices_count_degeneracies():
    # one vertex: a single formal simplex in every dimension
    assert len(FinSSet.point().formal_simplices(2)) == 1
    # an edge: two degenerate 1-simplices on its vertices plus the edge itself
    edge = FinSSet.simplex_boundary(1, full=True)
    assert len(edge.formal_simplices(1)) == 3
    with pytest.raises(DimensionCapError):
        edge.formal_simplices(4)


def test_non_injective_witness():
    two = FinSSet.discrete(['a', 'b'])
    collapse = SSetMap.from_vertex_map(two, FinSSet.point(), lambda v: '*')
    assert not collapse.is_injective()
    assert collapse.non_injective_witness()['image'] == '*'
    assert SSetMap.identity(two).is_bijective()


def test_nerve_of_I_is_acyclic():
    cat = CategoryI(3)
    assert contractible_certificate(cat)
    assert homology(nerve(cat, 3), 2).reduced_is_zero()


@pytest.mark.parametrize('N', [1, 2])
def test_nerve_of_J_has_one_component_per_difference(N):
    assert len(nerve(CategoryJ(N), dim_cap=1).components()) == 2 * N + 1


def test_hocolim_of_point_is_nerve():
    cat = CategoryI(2)
    assert hocolim_point_comparison(DiagSpace.constant(cat, FinSSet.point(), name='*'), dim_cap=2).passed


def test_hocolim_of_free_diagram_is_contractible():
    cat = CategoryI(2)
    H = hocolim(free_F(cat, 1), 3)
    assert homology(H, 2).reduced_is_zero()


def test_free_to_point_is_an_equivalence():
    cat = CategoryI(2)
    point = DiagSpace.constant(cat, FinSSet.point(), name='*')
    result = k_equivalence_evidence(DiagMap.from_vertex_fn(free_F(cat, 1), point, lambda k, v: '*'), 1)
    assert result.passed
    assert result.details['mapping_cone_acyclic']


def test_two_copies_to_point_is_not_an_equivalence():
    cat = CategoryI(1)
    two = DiagSpace.constant(cat, FinSSet.discrete(['a', 'b']), name='2')
    point = DiagSpace.constant(cat, FinSSet.point(), name='*')
    result = k_equivalence_evidence(DiagMap.from_vertex_fn(two, point, lambda k, v: '*'), 1)
    assert not result.passed
    assert result.witnesses


def test_pullback_over_point_is_preserved():
    cat = CategoryI(1)
    point = DiagSpace.constant(cat, FinSSet.point(), name='*')
    X, Y = free_F(cat, 0), free_F(cat, 1)
    xz = DiagMap.from_vertex_fn(X, point, lambda k, v: '*')
    yz = DiagMap.from_vertex_fn(Y, point, lambda k, v: '*')
    _, wx, wy = levelwise_pullback(xz, yz)
    assert pullback_preservation({'wx': wx, 'wy': wy, 'xz': xz, 'yz': yz}, dim_cap=2).passed
