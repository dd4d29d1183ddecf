"""Reading and writing point sets, isometries and benchmark output.

Point sets are stored either as CSV (a header line, then one point per
row) or as JSON::

    {"model": "loid", "d": 2, "N": 3, "rows": [[...], [...], [...]]}

``model`` selects the coordinates of the rows: ``loid`` (d + 1 columns on
the hyperboloid), ``euclidean`` (d columns, lifted through ``lift``) or
``poincare`` (d columns inside the unit ball).  In memory a point set is
always the ``(N, d + 1)`` hyperboloid array.
"""

import csv
import json
import os

import numpy as np

from .bench import TRIAL_FIELDS, TrialRecord
from .errors import ValidationError
from .lorentz import as_pointset, lift, on_sheet, renormalize
from .poincare import from_poincare, to_poincare

MODELS = ("loid", "poincare", "euclidean")
FLOAT_FMT = ".17g"


def _fmt(x):
    return format(float(x), FLOAT_FMT)


def _guess_format(path, fmt):
    if fmt is not None:
        fmt = fmt.lower()
    else:
        fmt = os.path.splitext(str(path))[1].lstrip(".").lower()
    if fmt not in ("csv", "json"):
        raise ValidationError(f"cannot tell file format of {path!r}; use .csv or .json")
    return fmt


def _check_model(model):
    if model not in MODELS:
        raise ValidationError(f"unknown model {model!r}; expected one of {MODELS}")
    return model


def to_model(X, model):
    """Express a hyperboloid point set in ``model`` coordinates."""
    X = as_pointset(X)
    model = _check_model(model)
    if model == "loid":
        return X
    if model == "euclidean":
        return X[:, 1:].copy()
    return to_poincare(X)


def from_model(rows, model, auto_lift=False):
    """Turn raw rows in ``model`` coordinates into a hyperboloid point set.

    With ``auto_lift`` off-sheet ``loid`` rows are repaired by recomputing
    coordinate 0 from the remaining ones instead of raising.
    """
    rows = np.asarray(rows, dtype=float)
    model = _check_model(model)
    if rows.ndim != 2 or rows.shape[0] < 1:
        raise ValidationError("expected a nonempty table of rows")
    if not np.all(np.isfinite(rows)):
        raise ValidationError("non-finite entries in point table")
    if model == "euclidean":
        return lift(rows)
    if model == "poincare":
        return from_poincare(rows)
    if auto_lift and not np.all(on_sheet(rows)):
        rows = renormalize(rows)
    return as_pointset(rows)


def _read_csv_rows(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ValidationError(
                    f"{path}:{lineno}: {len(row)} fields, header has {len(header)}")
            try:
                rows.append([float(c) for c in row])
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    return np.array(rows)


def read_pointset(path, model="loid", fmt=None, auto_lift=False):
    """Load a point set; JSON files carry their own model tag."""
    fmt = _guess_format(path, fmt)
    if fmt == "csv":
        return from_model(_read_csv_rows(path), model, auto_lift)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ValidationError(f"{path}: expected an object with a 'rows' field")
    model = doc.get("model", model)
    try:
        rows = np.array(doc["rows"], dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(f"{path}: rows must be a rectangular numeric table") from None
    if rows.ndim != 2:
        raise ValidationError(f"{path}: rows must be a rectangular numeric table")
    if "N" in doc and doc["N"] != rows.shape[0]:
        raise ValidationError(f"{path}: N={doc['N']} but {rows.shape[0]} rows")
    width = rows.shape[1] - 1 if model == "loid" else rows.shape[1]
    if "d" in doc and doc["d"] != width:
        raise ValidationError(f"{path}: d={doc['d']} does not match row length")
    return from_model(rows, model, auto_lift)


def write_pointset(path, X, model="loid", fmt=None):
    fmt = _guess_format(path, fmt)
    rows = to_model(X, model)
    d = X.shape[1] - 1 if np.ndim(X) == 2 else len(X) - 1
    if fmt == "csv":
        if model == "loid":
            header = [f"x{i}" for i in range(d + 1)]
        else:
            prefix = "z" if model == "euclidean" else "y"
            header = [f"{prefix}{i}" for i in range(1, d + 1)]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows([[_fmt(v) for v in row] for row in rows])
    else:
        doc = {"model": model, "d": int(d), "N": int(rows.shape[0]),
               "rows": rows.tolist()}
        write_json(path, doc)


def read_weights(path):
    """Per-point weights from a JSON list or a one-column CSV with header."""
    fmt = _guess_format(path, None)
    if fmt == "json":
        with open(path) as fh:
            w = json.load(fh)
        if isinstance(w, dict):
            w = w.get("weights")
        w = np.asarray(w, dtype=float)
    else:
        w = _read_csv_rows(path)
        if w.shape[1] != 1:
            raise ValidationError(f"{path}: weights CSV must have one column")
    return w.ravel()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def write_json(path, obj):
    text = json.dumps(_jsonable(obj), indent=2)
    if path is None or path == "-":
        print(text)
        return
    with open(path, "w") as fh:
        fh.write(text + "\n")


def alignment_to_dict(result):
    b, U = result.factors()
    return {
        "R_est": result.R_est,
        "b": b,
        "U": U,
        "m_target": result.m_target,
        "m_source": result.m_source,
        "U_hat": result.U_hat,
        "residual": result.residual,
        "iterations": result.iterations,
        "converged": result.converged,
    }


def write_results(path, result):
    """Dump an ``AlignmentResult`` as JSON (matrices row-major)."""
    write_json(path, alignment_to_dict(result))


def write_trials_csv(path, records):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRIAL_FIELDS)
        for r in records:
            w.writerow([r.d, r.N, r.trial, _fmt(r.e_baseline), _fmt(r.e_P),
                        _fmt(r.e_GD), _fmt(r.e_GDP), r.gd_iterations])


def read_trials_csv(path):
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(TrialRecord(
                int(row["d"]), int(row["N"]), int(row["trial"]),
                float(row["e_baseline"]), float(row["e_P"]),
                float(row["e_GD"]), float(row["e_GDP"]),
                int(row["gd_iterations"])))
    return out
