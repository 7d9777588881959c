import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class RecordStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Record:
    command: str
    input: dict[str, Any]
    verdict: Any
    status: RecordStatus = RecordStatus.PASS
    mode: str | None = None
    witness: Any = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "command": self.command,
            "input": self.input,
            "verdict": self.verdict,
            "status": self.status.value,
        }
        if self.mode is not None:
            data["mode"] = self.mode
        if self.witness is not None:
            data["witness"] = self.witness
        data.update(self.extra)
        return data

    def to_text(self) -> str:
        parts = [f"{self.status.value.upper():7} {self.command}"]
        parts += [f"{key}={value}" for key, value in self.input.items() if value not in ("", None)]
        parts.append(f"-> {self.verdict}")
        if self.mode is not None:
            parts.append(f"[{self.mode}]")
        if self.witness is not None:
            parts.append(f"witness={json.dumps(self.witness, sort_keys=True)}")
        return " ".join(str(part) for part in parts)


@dataclass
class Report:
    command: str
    config: dict[str, Any]
    records: list[Record] = field(default_factory=list)
    elapsed_ms: int = 0
    # replaces the per-record lines in text output
    body: str | None = None

    def add(self, record: Record) -> Record:
        self.records.append(record)
        return record

    @property
    def summary(self) -> dict[str, int]:
        counts = {status.value: 0 for status in RecordStatus}
        for record in self.records:
            counts[record.status.value] += 1
        return counts

    @property
    def ok(self) -> bool:
        return all(record.status is not RecordStatus.FAIL for record in self.records)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "records": [record.to_dict() for record in self.records],
            "summary": self.summary,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True, ensure_ascii=False)

    def to_text(self) -> str:
        if self.body:
            lines = [self.body.rstrip("\n")]
        else:
            lines = [record.to_text() for record in self.records]
        summary = ", ".join(f"{key} {value}" for key, value in self.summary.items())
        lines.append(f"{self.command}: {summary} ({self.elapsed_ms} ms)")
        return "\n".join(lines)
