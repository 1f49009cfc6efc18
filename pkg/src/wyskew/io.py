"""Density-matrix file format.

A JSON object ``{"dims": [...], "matrix_re": [...], "matrix_im": [...]}`` with
row-major real and imaginary parts, every number written with 17 significant
digits so a write/read round trip is bit-exact.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .states import DensityMatrix


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValidationError(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def dumps_density(rho: DensityMatrix) -> str:
    m = np.asarray(rho.matrix)
    re = ", ".join(_fmt(float(x)) for x in m.real.reshape(-1))
    im = ", ".join(_fmt(float(x)) for x in m.imag.reshape(-1))
    dims = json.dumps(list(rho.dims))
    return f'{{\n  "dims": {dims},\n  "matrix_re": [{re}],\n  "matrix_im": [{im}]\n}}\n'


def loads_density(text: str) -> DensityMatrix:
    try:
        obj = json.loads(text)
        dims = [int(d) for d in obj["dims"]]
        re = np.asarray(obj["matrix_re"], dtype=float)
        im = np.asarray(obj["matrix_im"], dtype=float)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed density-matrix file: {exc}") from exc
    d = int(np.prod(dims))
    if re.size != d * d or im.size != d * d:
        raise DimensionMismatch(f"expected {d * d} entries for dims {dims}")
    return DensityMatrix((re + 1j * im).reshape(d, d), tuple(dims))


def write_density(rho: DensityMatrix, path) -> None:
    Path(path).write_text(dumps_density(rho))


def read_density(path) -> DensityMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    return loads_density(text)


def digest(rho: DensityMatrix) -> str:
    """SHA-256 of the dims and the raw complex128 entries."""
    h = hashlib.sha256()
    h.update(json.dumps(list(rho.dims)).encode())
    h.update(np.ascontiguousarray(rho.matrix, dtype=np.complex128).tobytes())
    return h.hexdigest()
