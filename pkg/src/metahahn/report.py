"""Check records collected by the verifiers and serialised by the CLI."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, List, Optional


@dataclass
class Check:
    module: str
    operation: str
    name: str
    passed: bool
    params: dict = field(default_factory=dict)
    residual: Optional[str] = None
    info: Optional[str] = None


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)

    def add(self, module, operation, name, passed, params=None, residual=None, info=None) -> Check:
        c = Check(module, operation, name, bool(passed), dict(params or {}), residual, info)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def raise_if_failed(self, exc_type) -> None:
        bad = self.failures()
        if bad:
            first = bad[0]
            raise exc_type(
                f"{first.module}.{first.operation}: {first.name} failed"
                + (f" (residual {first.residual})" if first.residual else ""),
                report=self,
                residual=first.residual,
            )

    def __len__(self):
        return len(self.checks)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "n_checks": len(self.checks),
            "n_failed": len(self.failures()),
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self, **meta: Any) -> str:
        return json.dumps({**meta, **self.to_dict()}, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            line = f"{flag} {c.module}.{c.operation}: {c.name}"
            if c.residual:
                line += f"  residual={c.residual}"
            if c.info:
                line += f"  [{c.info}]"
            lines.append(line)
        lines.append(f"{len(self.checks) - len(self.failures())}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["module", "operation", "name", "passed", "params", "residual", "info"])
        for c in self.checks:
            w.writerow(
                [c.module, c.operation, c.name, c.passed, json.dumps(c.params, sort_keys=True), c.residual or "", c.info or ""]
            )
        return buf.getvalue()
