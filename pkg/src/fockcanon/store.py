"""On-disk cache of canonical basis columns, one JSON file per block."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .fock import FockVector
from .partition import Partition, format_partition

ENV_VAR = "FOCKCANON_CACHE"


class BlockStore:
    """Columns ``B_mu`` keyed by ``(e, core, weight)``.

    Writes go to a temporary file in the same directory and are renamed
    into place, so readers never see a partial file.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    @classmethod
    def from_env(cls, override: str | None = None) -> "BlockStore | None":
        path = override or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def path(self, e: int, core: Partition, weight: int) -> Path:
        core_s = "empty" if not core else "-".join(map(str, core))
        return self.directory / f"e{e}_core{core_s}_w{weight}.json"

    def load(self, e: int, core: Partition, weight: int) -> dict[Partition, FockVector]:
        p = self.path(e, core, weight)
        if not p.exists():
            return {}
        data = json.loads(p.read_text())
        return {Partition(col["mu"]): FockVector.from_json(col["basis"]) for col in data["columns"]}

    def save(self, e: int, core: Partition, weight: int, columns: dict[Partition, FockVector]) -> Path:
        merged = self.load(e, core, weight)
        merged.update(columns)
        self.directory.mkdir(parents=True, exist_ok=True)
        data = {
            "e": e,
            "core": list(core),
            "weight": weight,
            "columns": [{"mu": list(mu), "basis": merged[mu].to_json()} for mu in sorted(merged, reverse=True)],
        }
        p = self.path(e, core, weight)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=p.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, indent=1, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p

    def entries(self) -> list[tuple[str, int]]:
        """``(file name, number of stored columns)`` for every block file."""
        if not self.directory.is_dir():
            return []
        out = []
        for p in sorted(self.directory.glob("e*_core*_w*.json")):
            out.append((p.name, len(json.loads(p.read_text())["columns"])))
        return out

    def clear(self) -> int:
        n = 0
        if self.directory.is_dir():
            for p in self.directory.glob("e*_core*_w*.json"):
                p.unlink()
                n += 1
        return n

    def describe(self, e: int, core: Partition, weight: int) -> str:
        return f"e={e} core={format_partition(core)} weight={weight}"
