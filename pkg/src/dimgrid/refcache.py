"""Persistent store for empirically calibrated neighbor-count anchors.

Generating a reference model is the expensive part of the calibrated
estimator, so anchors are memoized under a bucketed key: two runs that
agree on ambient dimension, candidate range, point-count bucket, noise
bucket and IP target share one calibration.  The store is a single JSON
document written atomically (temp file + rename), so concurrent writers
cannot corrupt it; the last writer wins.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, asdict

from .errors import CacheWriteError

CACHE_VERSION = 1

# buckets keep the key space small: point counts collapse to the nearest
# power of two, noise to a coarse geometric ladder
NOISE_BUCKETS = (0.0, 0.001, 0.003, 0.01, 0.03, 0.1, 0.3)


def bucket_points(n: int) -> int:
    if n < 1:
        raise ValueError("point count must be positive")
    if n == 1:
        return 1
    import math

    return int(2 ** round(math.log2(n)))


def bucket_noise(sigma: float) -> float:
    if sigma <= NOISE_BUCKETS[1] / 2.0:
        return 0.0
    import math

    log_s = math.log(min(sigma, NOISE_BUCKETS[-1]))
    return min(NOISE_BUCKETS[1:], key=lambda b: abs(math.log(b) - log_s))


@dataclass(frozen=True)
class ReferenceKey:
    d: int
    d_max: int
    n_bucket: int
    noise_bucket: float
    ip_target: float


class ReferenceCache:
    """JSON-backed map from ReferenceKey to an anchor list.

    With ``path=None`` the cache lives purely in memory.  ``readonly``
    suppresses writes (lookups still work), for shared cache files.
    """

    def __init__(self, path=None, readonly: bool = False):
        self.path = os.fspath(path) if path is not None else None
        self.readonly = readonly
        self._entries: dict[tuple, list[float]] = {}
        if self.path is not None and os.path.exists(self.path):
            self._load()

    @staticmethod
    def _tuple_key(key: ReferenceKey) -> tuple:
        return (key.d, key.d_max, key.n_bucket, key.noise_bucket, key.ip_target)

    def _load(self) -> None:
        with open(self.path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("version") != CACHE_VERSION:
            return
        for entry in doc.get("entries", []):
            k = entry["key"]
            key = ReferenceKey(
                int(k["d"]),
                int(k["d_max"]),
                int(k["n_bucket"]),
                float(k["noise_bucket"]),
                float(k["ip_target"]),
            )
            self._entries[self._tuple_key(key)] = [float(a) for a in entry["anchors"]]

    def get(self, key: ReferenceKey):
        return self._entries.get(self._tuple_key(key))

    def put(self, key: ReferenceKey, anchors) -> None:
        self._entries[self._tuple_key(key)] = [float(a) for a in anchors]
        if self.path is None or self.readonly:
            return
        doc = {
            "version": CACHE_VERSION,
            "entries": [
                {
                    "key": {
                        "d": k[0],
                        "d_max": k[1],
                        "n_bucket": k[2],
                        "noise_bucket": k[3],
                        "ip_target": k[4],
                    },
                    "anchors": anchors_,
                }
                for k, anchors_ in sorted(self._entries.items())
            ],
        }
        try:
            directory = os.path.dirname(os.path.abspath(self.path))
            fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(doc, fh, indent=1)
                os.replace(tmp, self.path)
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)
        except OSError as exc:
            raise CacheWriteError(f"could not persist anchor cache: {exc}") from exc

    def __len__(self) -> int:
        return len(self._entries)
