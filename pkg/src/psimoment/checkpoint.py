"""Versioned line-delimited checkpoints for long segment sweeps.

A checkpoint file starts with a header record carrying a digest of the run
config, followed by one record per completed segment holding its per-order
partial sums as hex floats.  Hex floats round-trip exactly, and the final
reduction is recomputed from the records in segment order, so a resumed run
is bit-identical to an uninterrupted one.
"""

from __future__ import annotations

import hashlib
import json
import os
from typing import Any

from .errors import CheckpointError

CHECKPOINT_VERSION = 1


def config_digest(payload: dict[str, Any]) -> str:
    """Stable digest of a run configuration."""
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load(path: str, digest: str) -> dict[int, dict[int, float]]:
    """Completed segment values from path, keyed segment index -> {k: value}.

    Raises CheckpointError on version or digest mismatch.
    """
    done: dict[int, dict[int, float]] = {}
    with open(path) as fh:
        header_line = fh.readline()
        if not header_line:
            raise CheckpointError(f"{path}: empty checkpoint file")
        header = json.loads(header_line)
        if header.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(
                f"{path}: checkpoint version {header.get('version')} != "
                f"{CHECKPOINT_VERSION}"
            )
        if header.get("digest") != digest:
            raise CheckpointError(
                f"{path}: config digest mismatch; refusing to resume"
            )
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            done[int(rec["segment"])] = {
                int(k): float.fromhex(v) for k, v in rec["values"].items()
            }
    return done


class CheckpointWriter:
    """Appends segment records; writes the header when creating a new file."""

    def __init__(self, path: str, digest: str, fresh: bool):
        self.path = path
        mode = "w" if fresh or not os.path.exists(path) else "a"
        self._fh = open(path, mode)
        if mode == "w":
            self._fh.write(
                json.dumps({"version": CHECKPOINT_VERSION, "digest": digest}) + "\n"
            )
            self._fh.flush()

    def append(self, segment: int, values: dict[int, float]) -> None:
        rec = {
            "segment": segment,
            "values": {str(k): float(v).hex() for k, v in values.items()},
        }
        self._fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()
