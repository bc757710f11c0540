"""On-disk cache of Gram determinants: one JSON file per n."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import __version__
from . import combinatorics as cb
from .factored import FactoredValue


def default_dir() -> Path:
    env = os.environ.get("BMW_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "bmw"


def _key(f: int, lam) -> str:
    return f"{f}|{cb.format_partition(lam)}"


class DetCache:
    """Mapping (n, f, lam) -> FactoredValue backed by det-n<N>.json files.

    Files written by another tool version are ignored.  Writes go to a
    temporary file in the same directory and are renamed into place.
    """

    def __init__(self, directory=None):
        self.dir = Path(directory) if directory else default_dir()
        self._files: dict = {}
        self._dirty: set = set()

    def _path(self, n: int) -> Path:
        return self.dir / f"det-n{n}.json"

    def _load(self, n: int) -> dict:
        if n not in self._files:
            recs = {}
            try:
                data = json.loads(self._path(n).read_text())
                if data.get("toolVersion") == __version__ and data.get("n") == n:
                    recs = data.get("records", {})
            except (OSError, ValueError):
                pass
            self._files[n] = recs
        return self._files[n]

    def get(self, key, default=None):
        n, f, lam = key
        rec = self._load(n).get(_key(f, lam))
        if rec is None:
            return default
        return FactoredValue.from_json(rec)

    def __contains__(self, key):
        n, f, lam = key
        return _key(f, lam) in self._load(n)

    def __setitem__(self, key, value: FactoredValue):
        n, f, lam = key
        self._load(n)[_key(f, lam)] = value.to_json()
        self._dirty.add(n)

    def flush(self):
        if not self._dirty:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        for n in sorted(self._dirty):
            payload = {"toolVersion": __version__, "n": n, "records": self._files[n]}
            fd, tmp = tempfile.mkstemp(prefix=f".det-n{n}.", dir=self.dir)
            try:
                with os.fdopen(fd, "w") as fh:
                    json.dump(payload, fh, sort_keys=True)
                os.replace(tmp, self._path(n))
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        self._dirty.clear()
