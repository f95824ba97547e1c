"""Field snapshot files.

Layout: a fixed 16-byte magic, a UTF-8 text header of ``key = value`` lines
plus one ``field <name> <d0>x<d1>x...`` line per array, a terminating
``end_header`` line, then the raw row-major little-endian float64 payload of
each field in declaration order.  Round trips are bit-exact: payloads are the
in-memory bytes and header floats are written with repr().

Writes are whole-file atomic (temp file + rename).
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

from .grids import Grid1D, Grid3D
from .states import AugmentedState1D, State1D, State3D

MAGIC = b"THINFLOW-SNAP\x01\n\x00"
_END = b"end_header\n"


def _format_header(meta: dict, fields: dict) -> bytes:
    lines = []
    for key, val in meta.items():
        if isinstance(val, float):
            val = repr(val)
        lines.append(f"{key} = {val}")
    for name, arr in fields.items():
        dims = "x".join(str(d) for d in arr.shape)
        lines.append(f"field {name} {dims}")
    lines.append("end_header")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_snapshot(path, meta: dict, fields: dict) -> None:
    """Write arrays with their metadata; `meta` values must be str/int/float."""
    header = _format_header(meta, fields)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(MAGIC)
            fh.write(header)
            for arr in fields.values():
                fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_snapshot(path):
    """Return (meta, fields) as written by :func:`write_snapshot`."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:16] != MAGIC:
        raise ValueError(f"{path}: not a snapshot file (bad magic)")
    end = blob.find(_END, 16)
    if end < 0:
        raise ValueError(f"{path}: snapshot header not terminated")
    header = blob[16:end].decode("utf-8")
    offset = end + len(_END)
    meta = {}
    layout = []
    for line in header.splitlines():
        if not line.strip():
            continue
        if line.startswith("field "):
            _, name, dims = line.split(" ", 2)
            shape = tuple(int(d) for d in dims.split("x"))
            layout.append((name, shape))
        else:
            key, _, val = line.partition(" = ")
            meta[key.strip()] = val.strip()
    fields = {}
    for name, shape in layout:
        count = int(np.prod(shape))
        arr = np.frombuffer(blob, dtype="<f8", count=count, offset=offset)
        offset += count * 8
        fields[name] = arr.reshape(shape).astype(np.float64)
    return meta, fields


# ------------------------------------------------------- state convenience


def save_state(path, state, config_digest: str = "") -> None:
    meta = {"time": float(state.t)}
    if config_digest:
        meta["config_digest"] = config_digest
    if isinstance(state, State1D):
        meta.update(kind="state1d", n=state.grid.n)
        fields = {"rho": state.rho, "u": state.u}
    elif isinstance(state, AugmentedState1D):
        meta.update(kind="augmented1d", n=state.grid.n)
        fields = {"rho": state.rho, "v": state.v, "w": state.w}
    elif isinstance(state, State3D):
        g = state.grid
        meta.update(kind="state3d", eps=float(g.eps), n1=g.n1, n2=g.n2, n3=g.n3)
        fields = {"rho": state.rho, "u1": state.u1, "u2": state.u2, "u3": state.u3}
    else:
        raise TypeError(f"cannot snapshot {type(state)!r}")
    write_snapshot(path, meta, fields)


def load_state(path):
    meta, fields = read_snapshot(path)
    kind = meta.get("kind")
    t = float(meta["time"])
    if kind == "state1d":
        return State1D(Grid1D(int(meta["n"])), fields["rho"], fields["u"], t=t)
    if kind == "augmented1d":
        return AugmentedState1D(Grid1D(int(meta["n"])), fields["rho"],
                                fields["v"], fields["w"], t=t)
    if kind == "state3d":
        grid = Grid3D(float(meta["eps"]), int(meta["n1"]), int(meta["n2"]), int(meta["n3"]))
        return State3D(grid, fields["rho"], fields["u1"], fields["u2"], fields["u3"], t=t)
    raise ValueError(f"{path}: unknown snapshot kind {kind!r}")
