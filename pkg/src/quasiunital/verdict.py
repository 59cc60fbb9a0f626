"""Machine-readable verdicts shared by the checkers and the CLI."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, is_dataclass
from typing import Any


@dataclass
class Verdict:
    property: str
    N: int | None
    holds: bool
    witnesses: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "N": self.N,
            "verdict": "pass" if self.holds else "fail",
            "witnesses": jsonable(self.witnesses),
            "counterexamples": jsonable(self.counterexamples),
            "notes": list(self.notes),
            "seconds": round(self.seconds, 4),
        }


def jsonable(value: Any):
    """Best-effort conversion of cell ids and reports into JSON values."""
    if is_dataclass(value) and not isinstance(value, type):
        return jsonable(asdict(value))
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return repr(value)


def _key(k):
    if isinstance(k, str):
        return k
    from .interchange import cell_name

    return cell_name(k)


