"""Array file formats: self-describing complex arrays as CSV or raw binary.

Both formats carry the same JSON header {shape, dtype, layout, grid}.
CSV (.csv): first line is the header behind a '#', then a 're,im' column
header, then one row per entry printed with 17 significant digits (exact
for float64 roundtrips).  Binary (.bin): magic 'PSDO', a little-endian
uint32 header length, the header JSON, then raw little-endian complex128
payload, row-major.  Binary roundtrips are bit-exact.
"""

import json
import struct

import numpy as np

from .errors import ValidationError
from .grid import GridSpec

__all__ = ["write_array", "read_array"]

_MAGIC = b"PSDO"


def _header(data: np.ndarray, grid: GridSpec) -> dict:
    return {
        "shape": list(data.shape),
        "dtype": "complex128",
        "layout": "row-major",
        "grid": {"d": grid.d, "n": grid.n, "mode": grid.mode},
    }


def _parse_header(header: dict) -> GridSpec:
    try:
        g = header["grid"]
        return GridSpec(int(g["d"]), int(g["n"]), g.get("mode", "real"))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed array header: {exc}") from exc


def write_array(path, data, grid: GridSpec) -> None:
    """Write a complex array to .csv or .bin, selected by extension."""
    path = str(path)
    data = np.ascontiguousarray(np.asarray(data, dtype=np.complex128))
    header = _header(data, grid)
    if path.endswith(".csv"):
        flat = data.ravel()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# " + json.dumps(header, separators=(",", ":")) + "\n")
            fh.write("re,im\n")
            for z in flat:
                fh.write(f"{z.real:.17g},{z.imag:.17g}\n")
    elif path.endswith(".bin"):
        blob = json.dumps(header, separators=(",", ":")).encode("utf-8")
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<I", len(blob)))
            fh.write(blob)
            fh.write(data.astype("<c16").tobytes(order="C"))
    else:
        raise ValidationError(f"unsupported array extension (want .csv or .bin): {path}")


def read_array(path):
    """Read an array file; returns (data, grid)."""
    path = str(path)
    if path.endswith(".csv"):
        with open(path, "r", encoding="utf-8") as fh:
            first = fh.readline()
            if not first.startswith("#"):
                raise ValidationError(f"{path}: missing header line")
            header = json.loads(first[1:].strip())
            second = fh.readline().strip()
            if second != "re,im":
                raise ValidationError(f"{path}: expected 're,im' column line, got {second!r}")
            rows = np.loadtxt(fh, delimiter=",", ndmin=2)
    elif path.endswith(".bin"):
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != _MAGIC:
                raise ValidationError(f"{path}: bad magic {magic!r}")
            (hlen,) = struct.unpack("<I", fh.read(4))
            header = json.loads(fh.read(hlen).decode("utf-8"))
            payload = fh.read()
        rows = None
    else:
        raise ValidationError(f"unsupported array extension (want .csv or .bin): {path}")

    grid = _parse_header(header)
    shape = tuple(int(s) for s in header["shape"])
    count = int(np.prod(shape))
    if rows is None:
        if len(payload) != 16 * count:
            raise ValidationError(f"{path}: payload has {len(payload)} bytes, header says {16 * count}")
        data = np.frombuffer(payload, dtype="<c16")
        data = data.astype(np.complex128).reshape(shape)
    else:
        if rows.shape != (count, 2):
            raise ValidationError(f"{path}: payload has shape {rows.shape}, header says {count} rows")
        data = (rows[:, 0] + 1j * rows[:, 1]).reshape(shape)
    return data, grid
