"""Per-case suite reports with summary counts."""

from __future__ import annotations

import json
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

FAILING = frozenset({"fail", "embedded", "inconclusive", "disagree"})


@dataclass
class CaseRecord:
    params: dict
    verdict: str
    witness: str | None = None
    seconds: float = 0.0
    note: str | None = None

    @property
    def failed(self) -> bool:
        return self.verdict in FAILING


@dataclass
class SuiteReport:
    suite: str
    cases: list[CaseRecord] = field(default_factory=list)

    def add(self, params: dict, verdict: str, witness: str | None = None,
            seconds: float = 0.0, note: str | None = None) -> CaseRecord:
        if verdict in FAILING and witness is None:
            raise ValueError(f"failing case {params} needs a witness")
        rec = CaseRecord(params, verdict, witness, seconds, note)
        self.cases.append(rec)
        return rec

    @contextmanager
    def timed(self):
        """Yields a dict; set 'params', 'verdict' and optionally 'witness'/'note'."""
        slot: dict = {}
        start = time.perf_counter()
        yield slot
        self.add(slot["params"], slot["verdict"], slot.get("witness"),
                 time.perf_counter() - start, slot.get("note"))

    @property
    def counts(self) -> dict[str, int]:
        return dict(sorted(Counter(c.verdict for c in self.cases).items()))

    @property
    def failures(self) -> list[CaseRecord]:
        return [c for c in self.cases if c.failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        counts = ", ".join(f"{k}: {v}" for k, v in self.counts.items()) or "no cases"
        return f"{self.suite}: {'OK' if self.ok else 'FAILED'} ({counts})"

    def render(self, limit: int = 20) -> str:
        lines = [self.summary()]
        for c in self.failures[:limit]:
            note = f"  [{c.note}]" if c.note else ""
            lines.append(f"  {c.verdict}: {c.params} -> {c.witness}{note}")
        if len(self.failures) > limit:
            lines.append(f"  ... {len(self.failures) - limit} more")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "counts": self.counts,
                "cases": [asdict(c) for c in self.cases]}

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2, ensure_ascii=False, default=str)
