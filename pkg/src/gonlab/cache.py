"""Append-only JSONL store of per-degree search outcomes."""

from __future__ import annotations

import json
import time
import warnings
from pathlib import Path

from .divisor import Divisor
from .search import DegreeOutcome

__all__ = ["CacheWarning", "ResultsCache"]


class CacheWarning(UserWarning):
    pass


class ResultsCache:
    """Outcomes keyed by ``(graph key, degree)``.

    The file is read once on open.  Lines that do not parse are skipped with
    a warning naming the line; records written by another engine version are
    ignored.  If the file cannot be written, the cache warns once and keeps
    results in memory only.
    """

    def __init__(self, path, engine_version: str | None = None):
        if engine_version is None:
            from . import ENGINE_VERSION as engine_version
        self.path = Path(path)
        self.engine_version = engine_version
        self.writable = True
        self.skipped_lines: list[int] = []
        self._records: dict[tuple[str, int], DegreeOutcome] = {}
        self._load()
        try:
            with self.path.open("a"):
                pass
        except OSError as exc:
            self.writable = False
            warnings.warn(f"results cache {self.path} is not writable ({exc}); running uncached", CacheWarning, 2)

    def _load(self) -> None:
        try:
            text = self.path.read_text()
        except FileNotFoundError:
            return
        except OSError as exc:
            warnings.warn(f"cannot read results cache {self.path}: {exc}", CacheWarning, 3)
            return
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                if rec.get("engine_version") != self.engine_version:
                    continue
                w = rec.get("witness")
                out = DegreeOutcome(
                    degree=int(rec["degree"]),
                    exists=bool(rec["exists"]),
                    witness=Divisor(w) if w is not None else None,
                    classes=int(rec["classes"]),
                    candidates=int(rec.get("candidates", 0)),
                    elapsed_ms=float(rec.get("elapsed_ms", 0.0)),
                )
                if out.exists and out.witness is None:
                    raise ValueError("positive record without witness")
                self._records[(str(rec["graph_key"]), out.degree)] = out
            except (ValueError, KeyError, TypeError, AttributeError) as exc:
                self.skipped_lines.append(lineno)
                warnings.warn(f"{self.path}:{lineno}: skipping corrupted cache record ({exc})", CacheWarning, 3)

    def lookup(self, graph_key: str, degree: int) -> DegreeOutcome | None:
        return self._records.get((graph_key, degree))

    def store(self, graph_key: str, outcome: DegreeOutcome) -> None:
        self._records[(graph_key, outcome.degree)] = outcome
        if not self.writable:
            return
        rec = {
            "graph_key": graph_key,
            "degree": outcome.degree,
            "exists": outcome.exists,
            "witness": outcome.witness.to_list() if outcome.witness is not None else None,
            "classes": outcome.classes,
            "candidates": outcome.candidates,
            "elapsed_ms": round(outcome.elapsed_ms, 3),
            "engine_version": self.engine_version,
            "written": time.strftime("%Y-%m-%dT%H:%M:%S"),
        }
        try:
            with self.path.open("a") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        except OSError as exc:
            self.writable = False
            warnings.warn(f"results cache {self.path} became unwritable ({exc}); continuing uncached", CacheWarning, 2)

    def __len__(self) -> int:
        return len(self._records)
