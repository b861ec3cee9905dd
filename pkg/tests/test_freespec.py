import pytest

from diagram_spaces.core.dayconv import empty_diagram, free_F
from diagram_spaces.core.fincat import CategoryI, CategoryJ, MorI, ObjJ, identity_J
from diagram_spaces.core.freespec import (
    FreeSpec, check_functoriality, check_monoidal_naturality, check_monoidal_symmetry,
    check_restriction_functoriality, compose_and_check, induced_map, monoidal_iso, sj_level_census,
)


def test_free_spectrum_bookkeeping():
    F = FreeSpec(1, 2)
    assert F.obj == ObjJ(1, 2)
    assert len(F.summands(3)) == 3
    assert F.index_set(MorI(3, (2,))) == [('s', 1), ('s', 2), ('c', 1), ('c', 3)]
    with pytest.raises(ValueError):
        FreeSpec(-1, 0)


def test_induced_maps_carry_bijections(cat_J1):
    for f in cat_J1.hom(ObjJ(0, 0), ObjJ(1, 1)) + cat_J1.hom(ObjJ(1, 1), ObjJ(1, 1)):
        induced = induced_map(f)
        assert induced.source == FreeSpec(1, 1)
        for p in range(4):
            assert induced.check_bijections(p).passed


def test_identity_induces_identity():
    identity = induced_map(identity_J(ObjJ(1, 1)))
    for p in range(3):
        for gamma, (delta, phi) in identity.eval(p).items():
            assert delta == gamma
            assert all(k == v for k, v in phi.items())


def test_composition_needs_matching_spectra(cat_J1):
    f = cat_J1.hom(ObjJ(0, 0), ObjJ(1, 1))[0]
    g = identity_J(ObjJ(1, 0))
    with pytest.raises(ValueError):
        induced_map(g).compose(induced_map(f))


def test_functoriality_small():
    assert check_functoriality(1, 3).passed


def test_single_composite(cat_J2):
    f = cat_J2.hom(ObjJ(0, 0), ObjJ(1, 1))[0]
    for g in cat_J2.hom(ObjJ(1, 1), ObjJ(2, 2)):
        assert compose_and_check(g, f, 3).passed


def test_restriction_to_I():
    assert check_restriction_functoriality(2, 2).passed


@pytest.mark.parametrize('a, b, p, summands', [
    (FreeSpec(1, 0), FreeSpec(1, 0), 2, 2),
    (FreeSpec(0, 0), FreeSpec(1, 1), 3, 3),
    (FreeSpec(1, 1), FreeSpec(1, 0), 2, 2),
])
def test_monoidal_iso(a, b, p, summands):
    data, result = monoidal_iso(a, b, p)
    assert result.passed
    assert data.bijective
    assert data.summands == summands


def test_monoidal_iso_below_total_degree_is_empty():
    data, result = monoidal_iso(FreeSpec(1, 0), FreeSpec(1, 0), 1)
    assert result.passed
    assert data.summands == 0


def test_monoidal_naturality(cat_J1):
    f = cat_J1.hom(ObjJ(0, 0), ObjJ(1, 1))[0]
    g = identity_J(ObjJ(1, 0))
    for p in range(4):
        assert check_monoidal_naturality(f, g, p).passed
        assert check_monoidal_naturality(g, f, p).passed


def test_monoidal_symmetry():
    for p in range(4):
        assert check_monoidal_symmetry(FreeSpec(1, 1), FreeSpec(1, 0), p).passed


def test_sj_census_of_unit():
    J = CategoryJ(2)
    assert sj_level_census(free_F(J, J.unit), 0, 2) == {0: 1, 1: 0, 2: 0}


def test_sj_census_of_free_on_one_one():
    J = CategoryJ(2)
    F = free_F(J, ObjJ(1, 1))
    assert sj_level_census(F, 1, 2) == {0: 0, 1: 1, 2: 0}
    # Sigma_2 acts freely on the four maps (1, 1) -> (2, 2)
    assert sj_level_census(F, 2, 2) == {0: 0, 1: 0, 2: 2}


def test_sj_census_of_empty_diagram():
    assert sj_level_census(empty_diagram(CategoryJ(2)), 1, 2) == {0: 0, 1: 0, 2: 0}


def test_sj_census_needs_J_space():
    I = CategoryI(2)
    with pytest.raises(ValueError):
        sj_level_census(free_F(I, 1), 0, 2)
