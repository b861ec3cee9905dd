#!/usr/bin/env python3
"""
Schema Verification Script for the Fixture Corpus

Verifies that the JSON fixture files match the expected record layout and
that every record decodes into library objects.
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, List

from diagram_spaces.core.config import DEFAULT_FIXTURES_DIR
from diagram_spaces.core.fixtures import FIXTURE_FILES, validate_corpus

# Expected schema definition: family -> list key, required record fields, optional record fields
EXPECTED_SCHEMA = {
    'graded_monoids': {
        'list_key': 'monoids',
        'required_fields': set(),
        'optional_fields': {'name', 'builder', 'width', 'symbol', 'step', 'degree', 'max_power',
                            'elements', 'mult', 'unit', 'commutative', 'note'},
    },
    'log_structures': {
        'list_key': 'structures',
        'required_fields': {'name', 'source', 'target', 'mapping'},
        'optional_fields': {'expect_trivial', 'note'},
    },
    'finite_monoids': {
        'list_key': 'monoids',
        'required_fields': {'name', 'elements', 'unit', 'table'},
        'optional_fields': {'commutative', 'note'},
    },
    'spans': {
        'list_key': 'spans',
        'required_fields': {'name', 'x0', 'x1', 'x2', 'f1', 'f2'},
        'optional_fields': {'note'},
    },
    'diagrams': {
        'list_key': 'diagrams',
        'required_fields': {'name', 'kind'},
        'optional_fields': {'cat', 'k', 'points', 'basepoint', 'generators', 'relations', 'tags', 'note'},
    },
}

VALID_DIAGRAM_KINDS = {'json', 'free', 'semifree-point', 'x_bullet', 'quotient'}
VALID_BUILDERS = {'laurent', 'free', 'ku-like', 'trivial'}


def validate_record(family: str, record: Any, idx: int) -> List[str]:
    """Validate one record against the family schema"""
    errors = []
    schema = EXPECTED_SCHEMA[family]

    if not isinstance(record, dict):
        return [f"Record {idx}: Expected object, got {type(record).__name__}"]

    for field in schema['required_fields']:
        if field not in record:
            errors.append(f"Record {idx}: Missing required field '{field}'")

    known = schema['required_fields'] | schema['optional_fields']
    for field in record:
        if field not in known:
            errors.append(f"Record {idx}: Unknown field '{field}'")

    if family == 'diagrams' and record.get('kind') not in VALID_DIAGRAM_KINDS:
        errors.append(f"Record {idx}: Unknown diagram kind '{record.get('kind')}'")

    if family == 'diagrams' and record.get('cat', 'I') not in ('I', 'J'):
        errors.append(f"Record {idx}: Unknown category '{record.get('cat')}'")

    if family == 'graded_monoids':
        builder = record.get('builder')
        if builder is None and not {'elements', 'mult'} <= set(record):
            errors.append(f"Record {idx}: Explicit monoid needs 'elements' and 'mult'")
        if builder is not None and builder not in VALID_BUILDERS:
            errors.append(f"Record {idx}: Unknown builder '{builder}'")

    return errors


def verify_file_schema(family: str, file_path: Path) -> tuple[bool, List[str]]:
    """
    Verify the schema of a single fixture file.

    Returns:
        (is_valid, errors) tuple
    """
    if not file_path.exists():
        return False, [f"File not found: {file_path}"]

    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        return False, [f"Invalid JSON - {e}"]

    list_key = EXPECTED_SCHEMA[family]['list_key']
    records = document.get(list_key) if isinstance(document, dict) else None
    if not isinstance(records, list):
        return False, [f"Expected a list under '{list_key}'"]
    if not records:
        return False, ["File holds no records"]

    errors = []
    for idx, record in enumerate(records):
        errors.extend(validate_record(family, record, idx))

    return len(errors) == 0, errors


def main():
    """Main verification script"""
    import argparse

    parser = argparse.ArgumentParser(
        description="Verify the fixture corpus used by the verification suites"
    )
    parser.add_argument(
        "--fixtures",
        type=Path,
        default=DEFAULT_FIXTURES_DIR,
        help="Fixture corpus directory"
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        help="Show detailed validation results"
    )

    args = parser.parse_args()

    decode_errors = validate_corpus(args.fixtures)
    failed_files = []

    print(f"Verifying {len(FIXTURE_FILES)} fixture file(s) in {args.fixtures}...\n")

    for family, filename in FIXTURE_FILES.items():
        file_path = args.fixtures / filename
        print(f"📄 Checking: {filename}")

        is_valid, schema_errors = verify_file_schema(family, file_path)
        all_errors = schema_errors + decode_errors.get(family, [])

        if not all_errors:
            print(f"   ✅ Schema valid and records decode")
        else:
            print(f"   ❌ Validation failed")
            failed_files.append(filename)
            for error in all_errors:
                print(f"      - {error}")

        if args.verbose and not all_errors:
            print(f"      ({EXPECTED_SCHEMA[family]['list_key']} records checked)")

        print()

    # Summary
    print("=" * 60)
    if failed_files:
        print(f"❌ FAILED: {len(failed_files)}/{len(FIXTURE_FILES)} files failed validation")
        sys.exit(1)
    else:
        print(f"✅ SUCCESS: All {len(FIXTURE_FILES)} file(s) passed validation")
        sys.exit(0)


if __name__ == "__main__":
    main()
