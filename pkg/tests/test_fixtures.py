import json

import pytest

from diagram_spaces.core.config import DEFAULT_FIXTURES_DIR
from diagram_spaces.core.errors import FixtureError
from diagram_spaces.core.fincat import CategoryI, CategoryJ
from diagram_spaces.core.fixtures import FIXTURE_FILES, FixtureLoader, graded_monoid_from_record, validate_corpus


def write_family(root, family, document):
    (root / FIXTURE_FILES[family]).write_text(json.dumps(document), encoding='utf-8')


def test_bundled_corpus_decodes():
    assert validate_corpus(DEFAULT_FIXTURES_DIR) == {family: [] for family in FIXTURE_FILES}


def test_loader_families(corpus):
    assert len(corpus.graded_monoids()) == 8
    assert {f.name for f in corpus.log_structures()} >= {'laurent-inclusion', 'ku-like-identity'}
    assert [M.name for M in corpus.finite_monoids()] == ['Z/2', 'Z/3', 'LZ']
    spans = {s.name: s for s in corpus.spans()}
    assert spans['two-into-three'].injective
    assert not spans['fold'].injective


def test_diagram_recipes_by_category(corpus):
    for recipe, D in corpus.diagrams(CategoryI(2)):
        assert D.name == recipe.get('name', D.name)
        assert D.cat.name == 'I'
    assert all(r.get('cat', 'I') == 'J' for r in corpus.diagram_recipes('J'))
    built = corpus.diagrams(CategoryJ(1))
    assert all(D.cat.name == 'J' for _, D in built)


def test_builder_records():
    assert graded_monoid_from_record({'builder': 'laurent', 'width': 2}).size() == 6
    assert graded_monoid_from_record({'builder': 'trivial'}).size() == 1
    with pytest.raises(FixtureError):
        graded_monoid_from_record({'builder': 'laurent'})
    with pytest.raises(FixtureError):
        graded_monoid_from_record({'builder': 'polynomial'})


def test_missing_directory(tmp_path):
    loader = FixtureLoader(tmp_path / 'nowhere')
    with pytest.raises(FixtureError):
        loader.spans()
    with pytest.raises(FixtureError):
        loader.load('unknown')


def test_invalid_json(tmp_path):
    (tmp_path / FIXTURE_FILES['spans']).write_text('{"spans": [', encoding='utf-8')
    with pytest.raises(FixtureError):
        FixtureLoader(tmp_path).spans()


def test_records_must_be_a_list(tmp_path):
    write_family(tmp_path, 'finite_monoids', {'monoids': {'name': 'Z/2'}})
    with pytest.raises(FixtureError):
        FixtureLoader(tmp_path).finite_monoids()


def test_span_maps_must_match_their_sets(tmp_path):
    write_family(tmp_path, 'spans', {'spans': [
        {'name': 'bad', 'x0': ['a'], 'x1': ['b'], 'x2': ['c'], 'f1': {'a': 'z'}, 'f2': {'a': 'c'}},
    ]})
    with pytest.raises(FixtureError):
        FixtureLoader(tmp_path).spans()


def test_log_mapping_must_cover_the_source(tmp_path):
    write_family(tmp_path, 'log_structures', {'structures': [
        {'name': 'partial', 'source': {'builder': 'laurent', 'width': 2},
         'target': {'builder': 'laurent', 'width': 4}, 'mapping': {'+u^0': '+u^0'}},
    ]})
    with pytest.raises(FixtureError):
        FixtureLoader(tmp_path).log_structures()


def test_validate_corpus_reports_per_family(tmp_path):
    write_family(tmp_path, 'spans', {'spans': []})
    errors = validate_corpus(tmp_path)
    assert errors['spans'] == []
    assert errors['graded_monoids']
    assert set(errors) == set(FIXTURE_FILES)
