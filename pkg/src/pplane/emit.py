"""Deterministic file emission: CSV/JSON writers, digests, run manifests.

Every output is written atomically (temp file + rename) and in a canonical
form: floats in full-precision scientific notation for CSV, sorted keys
for JSON.  A manifest written alongside each output records the command,
its full parameter set and the SHA-256 digests of what was produced, so
identical manifests imply byte-identical outputs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from typing import Dict, Iterable, Optional, Sequence

__all__ = [
    "format_value",
    "csv_bytes",
    "json_bytes",
    "write_bytes",
    "write_manifest",
]


def format_value(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int,)):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17e")
    return str(v)


def csv_bytes(header: Sequence[str], rows: Iterable[Sequence]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue().encode()


def json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n").encode()


def write_bytes(path: Optional[str], data: bytes) -> Optional[str]:
    """Write atomically and return the SHA-256 digest; path None or '-'
    streams to stdout (no digest)."""
    if path is None or path == "-":
        sys.stdout.write(data.decode())
        return None
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return hashlib.sha256(data).hexdigest()


def write_manifest(
    out_path: str, command: str, params: Dict, outputs: Dict[str, Optional[str]], version: str
) -> str:
    """Write '<out>.manifest.json' describing a command run."""
    record = {
        "command": command,
        "params": params,
        "tool": "pplane",
        "version": version,
        "outputs": {os.path.basename(k): v for k, v in outputs.items() if v is not None},
    }
    path = out_path + ".manifest.json"
    write_bytes(path, json_bytes(record))
    return path
