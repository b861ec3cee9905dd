import pytest

from diagram_spaces.core.errors import DegreeCapError, DomainMismatchError, InvariantViolation
from diagram_spaces.core.fincat import (
    CategoryI, CategoryJ, CategorySigma, MorI, MorJ, ObjJ, block_shuffle, category_by_name, check_category_laws,
    check_comma_components, check_permutative, check_sigma_inv_sigma, check_well_structured, chi_I, chi_J,
    comma_category, compose_I, compose_J, identity_I, identity_J, inclusion_I, morphism_from_dict, perm_sign,
    sgn_of_J_morphism, sign_of_J_morphism,
)


def test_injection_counts(cat_I3):
    assert len(cat_I3.hom(0, 3)) == 1
    assert len(cat_I3.hom(1, 3)) == 3
    assert len(cat_I3.hom(2, 3)) == 6
    assert len(cat_I3.hom(3, 3)) == 6
    assert cat_I3.hom(3, 1) == ()


def test_J_hom_sets(cat_J2):
    # beta1, beta2 and a bijection of the complements
    assert len(cat_J2.hom(ObjJ(0, 0), ObjJ(1, 1))) == 1
    assert len(cat_J2.hom(ObjJ(0, 0), ObjJ(2, 2))) == 2
    assert len(cat_J2.hom(ObjJ(1, 1), ObjJ(2, 2))) == 4
    assert cat_J2.hom(ObjJ(1, 0), ObjJ(2, 2)) == ()
    assert cat_J2.hom(ObjJ(1, 1), ObjJ(0, 0)) == ()


def test_hom_beyond_cap_raises(cat_I2):
    with pytest.raises(DegreeCapError):
        cat_I2.hom(0, 3)


def test_compose_I_rejects_mismatch():
    with pytest.raises(DomainMismatchError) as exc:
        compose_I(identity_I(2), inclusion_I(1, 3))
    assert '3' in str(exc.value) and '2' in str(exc.value)


def test_compose_J_rejects_mismatch():
    f = identity_J(ObjJ(1, 0))
    g = identity_J(ObjJ(0, 1))
    with pytest.raises(DomainMismatchError):
        compose_J(g, f)


def test_non_injective_image_is_invariant_violation():
    with pytest.raises(InvariantViolation):
        MorI(2, (1, 1))


def test_MorJ_requires_complement_bijection():
    with pytest.raises(InvariantViolation):
        MorJ(inclusion_I(0, 1), inclusion_I(0, 2), (1,))


def test_compose_J_identity_and_complement():
    f = MorJ(MorI(1, ()), MorI(1, ()), (1,))
    g = MorJ(MorI(2, (2,)), MorI(2, (1,)), (2,))
    gf = compose_J(g, f)
    assert gf.src == ObjJ(0, 0)
    assert gf.dst == ObjJ(2, 2)
    # the complement of the composite pairs 1 -> 2 (from g) and 2 -> 1 (transported f)
    assert gf.sigma_map() == {1: 2, 2: 1}
    assert compose_J(identity_J(ObjJ(2, 2)), gf) == gf


def test_perm_sign_and_block_shuffle():
    assert perm_sign((1, 2, 3)) == 1
    assert perm_sign((2, 1)) == -1
    assert perm_sign((2, 3, 1)) == 1
    assert block_shuffle([1, 2], [2, 1]) == chi_I(1, 2)
    assert chi_I(1, 2).image == (3, 1, 2)


def test_J_signs():
    swap = MorI(2, (2, 1))
    assert sgn_of_J_morphism(MorJ(swap, identity_I(1), ())) == -1
    assert sgn_of_J_morphism(MorJ(swap, swap, ())) == 1
    assert sign_of_J_morphism(chi_J(ObjJ(1, 1), ObjJ(1, 1))) == 1
    with pytest.raises(ValueError):
        sgn_of_J_morphism(MorJ(MorI(1, ()), MorI(1, ()), (1,)))


def test_sign_is_multiplicative_on_small_J(cat_J1):
    objects = cat_J1.objects()
    for a in objects:
        for b in objects:
            for c in objects:
                for f in cat_J1.hom(a, b):
                    for g in cat_J1.hom(b, c):
                        assert sign_of_J_morphism(compose_J(g, f)) == sign_of_J_morphism(g) * sign_of_J_morphism(f)


def test_keys_and_lookup():
    assert CategoryI(2).key(2) == '2'
    assert CategoryJ(2).key(ObjJ(1, 0)) == '1,0'
    assert CategoryJ(2).parse_key('1,0') == ObjJ(1, 0)
    assert isinstance(category_by_name('Sigma', 2), CategorySigma)
    with pytest.raises(ValueError):
        category_by_name('K', 2)


def test_morphism_from_dict_inverts_to_dict(cat_J1):
    for f in cat_J1.hom(ObjJ(0, 0), ObjJ(1, 1)) + cat_J1.hom(ObjJ(0, 1), ObjJ(1, 1)):
        assert morphism_from_dict(f.to_dict()) == f


def test_category_laws():
    assert check_category_laws(CategoryI(3)).passed
    assert check_category_laws(CategoryJ(2)).passed


def test_permutative_structure():
    assert check_permutative(CategoryI(2)).passed
    assert check_permutative(CategoryJ(1)).passed


def test_sigma_inv_sigma_small():
    result = check_sigma_inv_sigma(2)
    assert result.passed, result.witnesses[:3]


def test_comma_components_biject():
    assert check_comma_components(CategoryI(3)).passed
    assert check_comma_components(CategoryJ(2)).passed


def test_comma_category_of_I_has_one_component_per_injection(cat_I3):
    comma = comma_category(cat_I3, 1, 2)
    assert len(comma.components) == len(cat_I3.hom(1, 2))
    assert all(len(t) >= 1 for t in comma.terminals)


@pytest.mark.parametrize('cat', [CategoryI(3), CategoryJ(2)])
def test_positive_discrete_is_very_well_structured(cat):
    report = check_well_structured(cat, 'positive-discrete')
    assert report.degree_functor_ok
    assert report.terminal_per_component
    assert report.free_component_action
    assert report.very_well_structured
    assert report.counterexamples == []


def test_discrete_I_fails_only_very_well_at_zero():
    report = check_well_structured(CategoryI(3), 'discrete')
    assert report.degree_functor_ok and report.terminal_per_component and report.free_component_action
    assert not report.very_well_structured
    assert any(c['condition'] == 'very-well' and c['k'] == 0 for c in report.counterexamples)


def test_full_J_fails_very_well_at_unit():
    report = check_well_structured(CategoryJ(2), 'full')
    assert not report.very_well_structured
    assert any(c['condition'] == 'very-well' and c['k'] == ObjJ(0, 0) for c in report.counterexamples)
    assert 'cofinality_note' in report.to_dict()
