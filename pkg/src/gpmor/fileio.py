"""On-disk formats: snapshot matrices, orthonormal frames, CSV/JSON reports.

Binary snapshot ("GPM1"): magic, u64-LE n, u64-LE n_t, f64-LE lambda, then
n * n_t f64-LE values in column-major order. Binary frame ("GPF1"): magic,
u64-LE n, u64-LE p, then the frame column-major; the distinct magic is the
orthonormal-frame marker. CSV variants carry the same metadata in a leading
comment line. All text output uses the shortest round-trip decimal form of
each 64-bit float, so re-reading a file reproduces the in-memory values
exactly; the binary format remains the source of truth.
"""

import json
import struct
from pathlib import Path

import numpy as np

from .errors import DataError
from .grassmann import GrassmannPoint
from .snapshots import SnapshotMatrix

SNAPSHOT_MAGIC = b"GPM1"
FRAME_MAGIC = b"GPF1"


def fmt(x):
    """Shortest decimal representation that round-trips a 64-bit float."""
    return repr(float(x))


# -- binary ------------------------------------------------------------------


def write_snapshot_bin(path, snap):
    with open(path, "wb") as fh:
        fh.write(SNAPSHOT_MAGIC)
        fh.write(struct.pack("<QQd", snap.n, snap.n_t, snap.param))
        fh.write(np.asarray(snap.data, dtype="<f8").tobytes(order="F"))


def read_snapshot_bin(path):
    raw = Path(path).read_bytes()
    if raw[:4] != SNAPSHOT_MAGIC:
        raise DataError(f"{path}: bad magic {raw[:4]!r}, expected {SNAPSHOT_MAGIC!r}")
    n, n_t, lam = struct.unpack_from("<QQd", raw, 4)
    body = raw[4 + struct.calcsize("<QQd"):]
    expected = n * n_t * 8
    if len(body) != expected:
        raise DataError(f"{path}: payload holds {len(body)} bytes, expected {expected}")
    data = np.frombuffer(body, dtype="<f8").reshape((n, n_t), order="F")
    return SnapshotMatrix(data=data, param=lam)


def write_frame_bin(path, point):
    with open(path, "wb") as fh:
        fh.write(FRAME_MAGIC)
        fh.write(struct.pack("<QQ", point.n, point.p))
        fh.write(np.asarray(point.frame, dtype="<f8").tobytes(order="F"))


def read_frame_bin(path):
    raw = Path(path).read_bytes()
    if raw[:4] != FRAME_MAGIC:
        raise DataError(f"{path}: bad magic {raw[:4]!r}, expected {FRAME_MAGIC!r}")
    n, p = struct.unpack_from("<QQ", raw, 4)
    body = raw[4 + struct.calcsize("<QQ"):]
    expected = n * p * 8
    if len(body) != expected:
        raise DataError(f"{path}: payload holds {len(body)} bytes, expected {expected}")
    frame = np.frombuffer(body, dtype="<f8").reshape((n, p), order="F")
    return GrassmannPoint(frame=frame)


# -- CSV ---------------------------------------------------------------------


def _write_matrix_csv(path, header, matrix):
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in matrix:
            fh.write(",".join(fmt(x) for x in row) + "\n")


def _read_matrix_csv(path):
    header = None
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if header is None:
                    header = line
                continue
            try:
                rows.append([float(x) for x in line.split(",")])
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: unparsable row: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: no data rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DataError(f"{path}: ragged rows (widths {sorted(widths)})")
    return header or "", np.array(rows)


def write_snapshot_csv(path, snap):
    _write_matrix_csv(path, f"# gpm-snapshot lambda={fmt(snap.param)}", snap.data)


def read_snapshot_csv(path):
    header, data = _read_matrix_csv(path)
    lam = 0.0
    if "lambda=" in header:
        lam = float(header.split("lambda=")[1].split()[0])
    return SnapshotMatrix(data=data, param=lam)


def write_frame_csv(path, point):
    _write_matrix_csv(path, "# gpm-frame orthonormal", point.frame)


def read_frame_csv(path):
    _, data = _read_matrix_csv(path)
    return GrassmannPoint(frame=data)


def read_snapshot(path):
    """Read a snapshot in either format, picked by file magic."""
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(4)
    if magic == SNAPSHOT_MAGIC:
        return read_snapshot_bin(path)
    return read_snapshot_csv(path)


def read_frame(path):
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(4)
    if magic == FRAME_MAGIC:
        return read_frame_bin(path)
    return read_frame_csv(path)


# -- JSON --------------------------------------------------------------------


def write_json(path, payload):
    """Deterministic JSON: sorted keys, fixed layout, trailing newline."""
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path):
    with open(path) as fh:
        return json.load(fh)
