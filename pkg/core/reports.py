"""
Check reports shared by the verifiers of every app.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity checked over a finite index set."""
    name: str
    passed: bool
    witness: Any = None
    detail: str = ''

    def as_dict(self) -> Dict[str, Any]:
        data = {'name': self.name, 'passed': self.passed}
        if self.witness is not None:
            data['witness'] = _jsonable(self.witness)
        if self.detail:
            data['detail'] = self.detail
        return data


@dataclass
class CheckReport:
    """An ordered list of check results; passes iff every result passes."""
    title: str
    results: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, witness: Any = None, detail: str = '') -> CheckResult:
        """Record a check; a witness of None means it passed."""
        result = CheckResult(name=name, passed=witness is None, witness=witness, detail=detail)
        self.results.append(result)
        return result

    def extend(self, other: 'CheckReport', prefix: str = '') -> None:
        for result in other.results:
            self.results.append(CheckResult(
                name=f"{prefix}{result.name}",
                passed=result.passed,
                witness=result.witness,
                detail=result.detail,
            ))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self) -> bool:
        return self.passed

    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    def get(self, name: str) -> Optional[CheckResult]:
        return next((r for r in self.results if r.name == name), None)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'title': self.title,
            'passed': self.passed,
            'checks': [r.as_dict() for r in self.results],
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)
