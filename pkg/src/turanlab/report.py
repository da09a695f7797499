"""Reproducible run reports: manifest, witnesses, counters, and tables,
serialized as stable-order UTF-8 JSON with graphs embedded as graph6.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from .graphs import Graph, graph_from_graph6
from .witness import Witness, validate_witness


@dataclass
class RunManifest:
    argv: list[str]
    params: dict[str, str]
    seed: int
    version: str
    started: str = ""
    finished: str = ""
    input_digests: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "argv": list(self.argv),
            "params": dict(self.params),
            "seed": self.seed,
            "version": self.version,
            "started": self.started,
            "finished": self.finished,
            "input_digests": dict(self.input_digests),
        }

    @staticmethod
    def from_json(obj: dict[str, Any]) -> "RunManifest":
        return RunManifest(
            argv=list(obj["argv"]), params=dict(obj["params"]),
            seed=int(obj["seed"]), version=obj["version"],
            started=obj.get("started", ""), finished=obj.get("finished", ""),
            input_digests=dict(obj.get("input_digests", {})))


@dataclass
class Report:
    manifest: RunManifest
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    counters: dict[str, int] = field(default_factory=dict)
    tables: dict[str, str] = field(default_factory=dict)
    graphs: dict[str, str] = field(default_factory=dict)
    payload: dict[str, Any] = field(default_factory=dict)

    def add_witness(self, witness: Witness, host_g6: Optional[str] = None,
                    pattern_g6: Optional[str] = None) -> None:
        self.witnesses.append({
            "witness": witness.to_json(),
            "host": host_g6,
            "pattern": pattern_g6,
        })

    def to_json(self) -> dict[str, Any]:
        return {
            "manifest": self.manifest.to_json(),
            "witnesses": self.witnesses,
            "counters": dict(self.counters),
            "tables": dict(self.tables),
            "graphs": dict(self.graphs),
            "payload": self.payload,
        }

    @staticmethod
    def from_json(obj: dict[str, Any]) -> "Report":
        return Report(
            manifest=RunManifest.from_json(obj["manifest"]),
            witnesses=list(obj.get("witnesses", [])),
            counters=dict(obj.get("counters", {})),
            tables=dict(obj.get("tables", {})),
            graphs=dict(obj.get("graphs", {})),
            payload=dict(obj.get("payload", {})))


def now_stamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def digest_file(path: str) -> str:
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def report_to_text(report: Report) -> str:
    return json.dumps(report.to_json(), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def report_fingerprint(report: Report) -> str:
    """Digest of the report with the timestamps blanked; two runs of the
    same seeded command must agree on this value."""
    obj = report.to_json()
    obj["manifest"]["started"] = ""
    obj["manifest"]["finished"] = ""
    # worker count is execution infrastructure, never a result
    obj["manifest"]["params"].pop("threads", None)
    argv = []
    skip = False
    for tok in obj["manifest"]["argv"]:
        if skip:
            skip = False
        elif tok == "--threads":
            skip = True
        else:
            argv.append(tok)
    obj["manifest"]["argv"] = argv
    text = json.dumps(obj, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def write_report(report: Report, path: Optional[str] = None) -> None:
    text = report_to_text(report)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def load_report(path: str) -> Report:
    """Load a report and re-validate every embedded witness against its
    referenced graphs."""
    with open(path, encoding="utf-8") as f:
        obj = json.load(f)
    report = Report.from_json(obj)
    for entry in report.witnesses:
        witness = Witness.from_json(entry["witness"])
        host_g6 = entry.get("host")
        if host_g6 is None:
            continue
        host = graph_from_graph6(host_g6)
        pattern_g6 = entry.get("pattern")
        pattern: Optional[Graph] = (
            graph_from_graph6(pattern_g6) if pattern_g6 else None)
        if not validate_witness(witness, host, pattern):
            raise ValueError(f"stored {witness.kind} witness fails validation")
    return report
