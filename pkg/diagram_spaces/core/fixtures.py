"""
Loader for the JSON fixture corpus.

The corpus lives in one directory with a file per record family: graded
monoids, log structures, finite monoids, spans of finite sets and diagram
recipes. Malformed files raise FixtureError; malformed optional entries are
skipped with a warning.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from diagram_spaces.core.dayconv import DiagSpace, MonoidData, diagram_from_recipe
from diagram_spaces.core.errors import FixtureError
from diagram_spaces.core.fincat import IndexCategory, category_by_name
from diagram_spaces.core.graded import (
    GradedMonoidMap, GradedSignedMonoid, free_monoid_on, ku_like_monoid, laurent_monoid, trivial_monoid,
)
from diagram_spaces.core.operads import finite_monoid

logger = logging.getLogger(__name__)

FIXTURE_FILES = {
    'graded_monoids': 'graded_monoids.json',
    'log_structures': 'log_structures.json',
    'finite_monoids': 'finite_monoids.json',
    'spans': 'spans.json',
    'diagrams': 'diagrams.json',
}


@dataclass
class LogFixture:
    """A graded pre-log structure alpha: M -> Omega"""
    name: str
    alpha: GradedMonoidMap
    expect_trivial: bool


@dataclass
class SpanFixture:
    """A span X2 <- X0 -> X1 of finite sets; f1: X0 -> X1, f2: X0 -> X2"""
    name: str
    x0: List[str]
    x1: List[str]
    x2: List[str]
    f1: Dict[str, str]
    f2: Dict[str, str]

    @property
    def injective(self) -> bool:
        return len(set(self.f1.values())) == len(self.f1)


def graded_monoid_from_record(record: Dict[str, Any]) -> GradedSignedMonoid:
    """
    Build a graded signed monoid from a fixture record.

    Records either name a builder ('laurent', 'free', 'ku-like', 'trivial') with
    its parameters or give elements and multiplication explicitly.
    """
    builder = record.get('builder')
    try:
        if builder is None:
            return GradedSignedMonoid.from_dict(record)
        if builder == 'laurent':
            return laurent_monoid(int(record['width']), record.get('symbol', 'u'), int(record.get('step', 2)))
        if builder == 'free':
            return free_monoid_on(int(record['degree']), int(record['max_power']), record.get('symbol', 'x'))
        if builder == 'ku-like':
            return ku_like_monoid(int(record['max_power']))
        if builder == 'trivial':
            return trivial_monoid()
    except (KeyError, TypeError, ValueError) as e:
        raise FixtureError(f"Malformed graded monoid builder {builder!r}: {e}")
    raise FixtureError(f"Unknown graded monoid builder: {builder!r}")


class FixtureLoader:
    """Reads and decodes the fixture corpus of one directory"""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.logger = logging.getLogger(__name__)
        self._cache: Dict[str, Dict[str, Any]] = {}

    def load(self, family: str) -> Dict[str, Any]:
        """
        Load the raw JSON document of a record family.

        Args:
            family: One of the keys of FIXTURE_FILES

        Returns:
            The decoded document
        """
        if family not in FIXTURE_FILES:
            raise FixtureError(f"Unknown fixture family: {family}")
        if family in self._cache:
            return self._cache[family]
        path = self.root / FIXTURE_FILES[family]
        if not path.exists():
            raise FixtureError(f"Fixture file not found: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                document = json.load(f)
        except json.JSONDecodeError as e:
            raise FixtureError(f"Invalid JSON in {path}: {e}")
        if not isinstance(document, dict):
            raise FixtureError(f"{path} must hold a JSON object")
        self._cache[family] = document
        return document

    def _records(self, family: str, key: str) -> List[Dict[str, Any]]:
        records = self.load(family).get(key)
        if not isinstance(records, list):
            raise FixtureError(f"{FIXTURE_FILES[family]} needs a list under {key!r}")
        return records

    def graded_monoids(self) -> List[GradedSignedMonoid]:
        monoids = [graded_monoid_from_record(record) for record in self._records('graded_monoids', 'monoids')]
        self.logger.info(f"Loaded {len(monoids)} graded monoids")
        return monoids

    def log_structures(self) -> List[LogFixture]:
        fixtures = []
        for record in self._records('log_structures', 'structures'):
            try:
                source = graded_monoid_from_record(record['source'])
                target = graded_monoid_from_record(record['target'])
                mapping = record['mapping']
            except KeyError as e:
                raise FixtureError(f"Log structure record lacks {e}")
            if mapping == 'same-names':
                mapping = {x: x for x in source.elements()}
            if not isinstance(mapping, dict):
                raise FixtureError(f"Mapping of {record.get('name')!r} must be an object or 'same-names'")
            missing = [x for x in source.elements() if x not in mapping]
            if missing:
                raise FixtureError(f"Mapping of {record.get('name')!r} misses {missing[:3]}")
            alpha = GradedMonoidMap(source, target, dict(mapping))
            fixtures.append(LogFixture(record.get('name', source.name), alpha, bool(record.get('expect_trivial'))))
        self.logger.info(f"Loaded {len(fixtures)} log structures")
        return fixtures

    def finite_monoids(self) -> List[MonoidData]:
        monoids = []
        for record in self._records('finite_monoids', 'monoids'):
            try:
                table = {(x, y): z for x, y, z in record['table']}
                monoids.append(finite_monoid(record['elements'], table, record['unit'],
                                             bool(record.get('commutative')), record.get('name', 'M')))
            except (KeyError, TypeError, ValueError) as e:
                raise FixtureError(f"Malformed finite monoid {record.get('name')!r}: {e}")
        self.logger.info(f"Loaded {len(monoids)} finite monoids")
        return monoids

    def spans(self) -> List[SpanFixture]:
        spans = []
        for record in self._records('spans', 'spans'):
            try:
                span = SpanFixture(record['name'], list(record['x0']), list(record['x1']), list(record['x2']),
                                   dict(record['f1']), dict(record['f2']))
            except (KeyError, TypeError) as e:
                raise FixtureError(f"Malformed span record: {e}")
            for label, fn, source, target in (('f1', span.f1, span.x0, span.x1), ('f2', span.f2, span.x0, span.x2)):
                if sorted(fn) != sorted(source) or any(v not in target for v in fn.values()):
                    raise FixtureError(f"{label} of span {span.name!r} is not a map of the listed sets")
            spans.append(span)
        self.logger.info(f"Loaded {len(spans)} spans")
        return spans

    def diagram_recipes(self, cat_name: Optional[str] = None) -> List[Dict[str, Any]]:
        recipes = []
        for record in self._records('diagrams', 'diagrams'):
            if 'kind' not in record:
                self.logger.warning(f"Skipping diagram recipe without kind: {record.get('name')!r}")
                continue
            if cat_name is None or record.get('cat', 'I') == cat_name:
                recipes.append(record)
        return recipes

    def diagrams(self, cat: IndexCategory, tag: Optional[str] = None) -> List[Tuple[Dict[str, Any], DiagSpace]]:
        """
        Instantiate the recipes for cat's index category at cat's truncation.

        Args:
            cat: Category whose truncation the diagrams are built at
            tag: Only recipes listing this tag

        Returns:
            Pairs (recipe, diagram)
        """
        built = []
        for recipe in self.diagram_recipes(cat.name):
            if tag is not None and tag not in recipe.get('tags', []):
                continue
            D = diagram_from_recipe(recipe, cat)
            D.name = recipe.get('name', D.name)
            built.append((recipe, D))
        self.logger.info(f"Built {len(built)} {cat.name}-diagrams at max_degree={cat.max_degree}")
        return built


def validate_corpus(root: Path) -> Dict[str, List[str]]:
    """
    Decode every record family of a corpus directory.

    Returns:
        Errors per family; an empty list means the family decoded cleanly
    """
    loader = FixtureLoader(root)
    checks = {
        'graded_monoids': loader.graded_monoids,
        'log_structures': loader.log_structures,
        'finite_monoids': loader.finite_monoids,
        'spans': loader.spans,
        'diagrams': lambda: [diagram_from_recipe(r, category_by_name(r.get('cat', 'I'), 2))
                             for r in loader.diagram_recipes()],
    }
    errors: Dict[str, List[str]] = {}
    for family, decode in checks.items():
        try:
            decode()
            errors[family] = []
        except (FixtureError, KeyError, TypeError, ValueError) as e:
            errors[family] = [str(e)]
    return errors
