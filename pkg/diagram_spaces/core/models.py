"""
Report models shared by all verification modules
"""
from dataclasses import dataclass, field, is_dataclass, fields
from typing import Any, Dict, List, Optional
import json

REPORT_SCHEMA_VERSION = "1.0"
TRUNCATION_LABEL = "evidence at truncation"


def jsonable(value: Any) -> Any:
    """Convert nested library values into JSON-compatible structures"""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=repr)
    if is_dataclass(value):
        return {f.name: jsonable(getattr(value, f.name)) for f in fields(value)}
    return repr(value)


@dataclass
class CheckResult:
    """Outcome of a single property check"""
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    witnesses: List[Any] = field(default_factory=list)

    def fail(self, witness: Any) -> None:
        """Record a counterexample and mark the check failed"""
        self.passed = False
        self.witnesses.append(witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'details': jsonable(self.details),
            'witnesses': jsonable(self.witnesses),
        }

    @classmethod
    def combine(cls, name: str, parts: List['CheckResult']) -> 'CheckResult':
        """Fold several checks into one that passes iff all parts pass"""
        result = cls(name=name, passed=all(p.passed for p in parts))
        result.details = {p.name: p.passed for p in parts}
        for part in parts:
            result.witnesses.extend({'check': part.name, 'witness': w} for w in part.witnesses)
        return result


@dataclass
class SuiteReport:
    """Full report for one suite run"""
    suite: str
    config: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)
    label: Optional[str] = TRUNCATION_LABEL
    schema_version: str = REPORT_SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': self.schema_version,
            'suite': self.suite,
            'config': jsonable(self.config),
            'label': self.label,
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)
