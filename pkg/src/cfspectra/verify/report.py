"""Report records produced by the verification sweeps."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from ..exact_core import QuadSurd, surd_decimal

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Row:
    """One index of a sweep.

    ``ordering`` compares ``value`` with ``bound`` and was produced by an exact
    comparison; ``limit_ordering`` (when present) compares ``value`` with the
    relevant spectrum constant.
    """

    n: int
    q: int
    value: QuadSurd
    bound: str
    ordering: str
    certified: bool = False
    limit_ordering: str = ""
    tag: str = ""

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "value": [self.value.a, self.value.b, self.value.c, self.value.d],
            "value_expr": str(self.value),
            "bound": self.bound,
            "ordering": self.ordering,
            "certified": self.certified,
            "limit_ordering": self.limit_ordering,
            "tag": self.tag,
        }

    @staticmethod
    def from_dict(d: dict) -> "Row":
        return Row(
            n=d["n"],
            q=d["q"],
            value=QuadSurd(*d["value"]),
            bound=d["bound"],
            ordering=d["ordering"],
            certified=d["certified"],
            limit_ordering=d["limit_ordering"],
            tag=d["tag"],
        )

    def decimal(self, digits: int = 30) -> str:
        return surd_decimal(self.value, digits)


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[Row] = None
    reason: str = ""

    def __post_init__(self):
        if self.status not in (CONFIRMED, REFUTED, INCONCLUSIVE):
            raise ValueError(f"bad verdict status {self.status!r}")
        if self.status == REFUTED and self.witness is None:
            raise ValueError("a refutation must carry a witness row")

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.to_dict() if self.witness else None,
            "reason": self.reason,
        }

    @staticmethod
    def from_dict(d: dict) -> "Verdict":
        w = d["witness"]
        return Verdict(d["status"], Row.from_dict(w) if w else None, d["reason"])


@dataclass(frozen=True)
class VerifyReport:
    statement: str
    params: dict[str, Any]
    rows: tuple[Row, ...]
    verdict: Verdict
    details: dict[str, Any] = field(default_factory=dict)
    parts: tuple["VerifyReport", ...] = ()

    @property
    def confirmed(self) -> bool:
        return self.verdict.status == CONFIRMED

    def to_dict(self) -> dict:
        return {
            "statement": self.statement,
            "params": self.params,
            "verdict": self.verdict.to_dict(),
            "details": self.details,
            "rows": [r.to_dict() for r in self.rows],
            "parts": [p.to_dict() for p in self.parts],
        }

    @staticmethod
    def from_dict(d: dict) -> "VerifyReport":
        return VerifyReport(
            statement=d["statement"],
            params=d["params"],
            rows=tuple(Row.from_dict(r) for r in d["rows"]),
            verdict=Verdict.from_dict(d["verdict"]),
            details=d["details"],
            parts=tuple(VerifyReport.from_dict(p) for p in d["parts"]),
        )

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @staticmethod
    def from_json(text: str) -> "VerifyReport":
        return VerifyReport.from_dict(json.loads(text))

    def iter_rows(self):
        """Rows of this report and all parts, each with its statement id."""
        for r in self.rows:
            yield self.statement, r
        for p in self.parts:
            yield from p.iter_rows()

    def to_jsonl(self) -> str:
        """Line-delimited rows, one record per row, stable field order."""
        lines = []
        for stmt, r in self.iter_rows():
            rec = {"statement": stmt}
            rec.update(r.to_dict())
            lines.append(json.dumps(rec))
        return "\n".join(lines)


def combine(statement: str, params: dict, parts: list[VerifyReport], details=None) -> VerifyReport:
    """Aggregate verdict: refuted if any part is, confirmed if all are."""
    details = dict(details or {})
    for p in parts:
        if p.verdict.status == REFUTED:
            v = Verdict(REFUTED, p.verdict.witness, f"{p.statement}: {p.verdict.reason}")
            break
    else:
        if all(p.confirmed for p in parts):
            v = Verdict(CONFIRMED, reason="all parts confirmed")
        else:
            bad = next(p for p in parts if not p.confirmed)
            v = Verdict(INCONCLUSIVE, reason=f"{bad.statement}: {bad.verdict.reason}")
    return VerifyReport(statement, params, (), v, details, tuple(parts))
