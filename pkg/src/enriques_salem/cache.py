"""Append-only JSON-lines store of analysed words.

Each line holds ``{"key": ..., "report": ...}``. The key combines the family
name, the digest of its generator matrices and the canonical word, so a cache
written for one configuration is never consulted for another. Lines that fail
to parse are skipped and dropped the next time the file is rewritten.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from .dynamics import Family, SalemReport, Word, canonical_form

log = logging.getLogger(__name__)


def cache_key(family: Family, word) -> str:
    w = ",".join(map(str, canonical_form(word)))
    return f"{family.name}|{family.digest()}|{w}"


class ReportCache:
    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._data: dict[str, dict] = {}
        self._pending: list[str] = []
        self.corrupt_lines = 0
        self.hits = 0
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self) -> None:
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                    key, rep = entry["key"], entry["report"]
                    SalemReport.from_dict(rep)
                except (ValueError, KeyError, TypeError) as exc:
                    self.corrupt_lines += 1
                    log.warning("skipping unreadable cache line: %s", exc)
                    continue
                self._data[key] = rep
        if self.corrupt_lines:
            self._rewrite()

    def _rewrite(self) -> None:
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            for key, rep in self._data.items():
                fh.write(_line(key, rep))
        os.replace(tmp, self.path)

    def __len__(self) -> int:
        return len(self._data)

    def lookup(self, family: Family, word) -> SalemReport | None:
        rep = self._data.get(cache_key(family, word))
        if rep is None:
            return None
        self.hits += 1
        return SalemReport.from_dict(rep).with_word(tuple(word))

    def store(self, family: Family, report: SalemReport) -> None:
        key = cache_key(family, report.word)
        if key in self._data:
            return
        canon: Word = canonical_form(report.word)
        d = report.with_word(canon).to_dict()
        self._data[key] = d
        self._pending.append(_line(key, d))

    def flush(self) -> None:
        if self.path is None or not self._pending:
            self._pending.clear()
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.writelines(self._pending)
        self._pending.clear()

    def __enter__(self) -> "ReportCache":
        return self

    def __exit__(self, *exc) -> None:
        self.flush()


def _line(key: str, rep: dict) -> str:
    return json.dumps({"key": key, "report": rep}, sort_keys=True, separators=(",", ":")) + "\n"
