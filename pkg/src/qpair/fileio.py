"""JSON and CSV formats shared by the library and the command line.

Floats are written with Python's ``repr``, the shortest decimal string that
reads back to the identical double, so files round-trip exactly.
"""
import csv
import io
import json

import numpy as np

from .errors import DimMismatch, QpairError
from .tomography import TomographySeries


class FormatError(QpairError):
    """A file does not follow the expected layout."""


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def density_to_dict(rho, dims):
    rho = np.asarray(rho, dtype=np.complex128)
    dims = [int(d) for d in np.atleast_1d(dims)]
    if int(np.prod(dims)) != rho.shape[0]:
        raise DimMismatch(f"dims {dims} do not match a {rho.shape[0]}x{rho.shape[0]} matrix")
    return {"dims": dims, "re": rho.real.tolist(), "im": rho.imag.tolist()}


def density_from_dict(data):
    """``(rho, dims)`` from the density JSON object; shape checks only."""
    try:
        dims = [int(d) for d in data["dims"]]
        re = np.array(data["re"], dtype=np.float64)
        im = np.array(data["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"density JSON needs numeric 'dims', 're', 'im': {exc}") from exc
    if len(dims) not in (1, 2) or min(dims) < 1:
        raise FormatError(f"dims must be [N] or [N_A, N_B] with positive entries, got {dims}")
    n = int(np.prod(dims))
    if re.shape != (n, n) or im.shape != (n, n):
        raise FormatError(f"'re' and 'im' must both be {n}x{n}")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise FormatError("matrix entries must be finite")
    return re + 1j * im, tuple(dims)


def write_density(path, rho, dims):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(density_to_dict(rho, dims)))


def read_density(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    return density_from_dict(data)


def series_to_dict(series):
    return {
        "n": series.n,
        "exact": series.exact,
        "shots": series.shots,
        "complete": series.complete,
        "series": [np.asarray(v, dtype=np.float64).tolist() for v in series.series],
    }


def series_from_dict(data):
    try:
        return TomographySeries(
            int(data["n"]),
            tuple(np.array(v, dtype=np.float64) for v in data["series"]),
            bool(data["exact"]),
            None if data.get("shots") is None else int(data["shots"]),
            None,
            bool(data.get("complete", False)),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"series JSON is missing fields: {exc}") from exc


def write_series(path, series):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(series_to_dict(series)))


def read_series(path):
    with open(path, encoding="utf-8") as fh:
        return series_from_dict(json.load(fh))


def _cell(x):
    if x is None:
        return "undefined"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def vector_csv(values, prefix="o"):
    """Header of outcome labels and one data row."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"{prefix}{k}" for k in range(len(values))])
    w.writerow([_cell(v) for v in values])
    return buf.getvalue()


def table_csv(rows, ncols, prefix="b"):
    """Header ``b0..`` and one line per row; a ``None`` row becomes ``undefined`` cells."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"{prefix}{k}" for k in range(ncols)])
    for row in rows:
        w.writerow(["undefined"] * ncols if row is None else [_cell(v) for v in row])
    return buf.getvalue()


def sweep_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "S_sys", "S_A", "S_B"])
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def write_text(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
