"""JSON interchange for matrices, subspaces, spectra and analysis reports.

Exact scalars travel as canonical "p/q" strings (q > 0, gcd 1) inside
{"re", "im"} objects; float scalars use plain JSON numbers.  Reports are
serialized with sorted keys so identical inputs produce byte-identical
files apart from the timing field.  All writes go through a temp file and
an atomic rename; malformed inputs raise InputFileError.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile

from .errors import InputFileError
from .matrix import Matrix
from .scalar import (EXACT, FLOAT, GaussianRational, format_rational,
                     parse_rational)
from .spectral import SpectrumSpec, spectrum_from_roots
from . import subspace as sub

log = logging.getLogger("ultrainv")

SCHEMA_VERSION = 1


def scalar_to_json(value, backend):
    if backend == EXACT:
        return {"re": format_rational(value.re), "im": format_rational(value.im)}
    return {"re": value.real, "im": value.imag}


def scalar_from_json(obj, backend):
    if not isinstance(obj, dict) or "re" not in obj or "im" not in obj:
        raise InputFileError(f"scalar entry must be a re/im object, got {obj!r}")
    re, im = obj["re"], obj["im"]
    if backend == EXACT:
        if not isinstance(re, str) or not isinstance(im, str):
            raise InputFileError("exact scalars must be 'p/q' strings")
        try:
            return GaussianRational.from_fractions(parse_rational(re),
                                                   parse_rational(im))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFileError(f"bad rational string: {exc}") from exc
    if isinstance(re, str) or isinstance(im, str):
        raise InputFileError("float scalars must be JSON numbers")
    return complex(float(re), float(im))


def matrix_to_json(m: Matrix) -> dict:
    return {
        "backend": m.backend,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[scalar_to_json(x, m.backend) for x in row]
                    for row in m.data],
    }


def matrix_from_json(obj) -> Matrix:
    if not isinstance(obj, dict):
        raise InputFileError("matrix file must hold a JSON object")
    try:
        backend = obj["backend"]
        rows = obj["rows"]
        cols = obj["cols"]
        entries = obj["entries"]
    except KeyError as exc:
        raise InputFileError(f"matrix object missing key {exc}") from exc
    if backend not in (EXACT, FLOAT):
        raise InputFileError(f"unknown backend {backend!r}")
    if (not isinstance(rows, int) or not isinstance(cols, int)
            or rows < 1 or cols < 1):
        raise InputFileError("rows and cols must be positive integers")
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise InputFileError("entries shape disagrees with rows/cols")
    data = tuple(tuple(scalar_from_json(x, backend) for x in row)
                 for row in entries)
    return Matrix(data, backend, _raw=True)


def _infer_backend(columns, default=EXACT):
    for col in columns:
        for entry in col:
            if isinstance(entry, dict):
                return EXACT if isinstance(entry.get("re"), str) else FLOAT
    return default


def subspace_to_json(s: sub.Subspace) -> dict:
    return {
        "ambient_dim": s.ambient_dim,
        "basis": [[scalar_to_json(x, s.backend) for x in col]
                  for col in s.basis],
    }


def subspace_from_json(obj, backend=None) -> sub.Subspace:
    if not isinstance(obj, dict):
        raise InputFileError("subspace file must hold a JSON object")
    try:
        ambient = obj["ambient_dim"]
        basis = obj["basis"]
    except KeyError as exc:
        raise InputFileError(f"subspace object missing key {exc}") from exc
    if not isinstance(ambient, int) or ambient < 1:
        raise InputFileError("ambient_dim must be a positive integer")
    if backend is None:
        backend = _infer_backend(basis)
    columns = []
    for col in basis:
        if len(col) != ambient:
            raise InputFileError("basis column length != ambient_dim")
        columns.append(tuple(scalar_from_json(x, backend) for x in col))
    parsed = sub.canonicalize(columns, ambient, backend)
    if parsed.dim != len(columns):
        log.warning("subspace basis was dependent; canonicalized %d -> %d "
                    "columns", len(columns), parsed.dim)
    elif backend == EXACT and tuple(columns) != parsed.basis:
        log.warning("subspace basis was not in reduced column echelon form; "
                    "canonicalized on load")
    return parsed


def spectrum_to_json(spec: SpectrumSpec, backend=EXACT) -> dict:
    return {
        "source": spec.source,
        "roots": [{"value": scalar_to_json(lam, backend), "multiplicity": m}
                  for lam, m in spec.roots],
    }


def spectrum_from_json(obj, backend=EXACT) -> SpectrumSpec:
    if not isinstance(obj, dict) or "roots" not in obj:
        raise InputFileError("spectrum file needs a 'roots' list")
    roots = []
    for entry in obj["roots"]:
        try:
            lam = scalar_from_json(entry["value"], backend)
            mult = entry["multiplicity"]
        except (KeyError, TypeError) as exc:
            raise InputFileError(f"bad spectrum root entry: {entry!r}") from exc
        if not isinstance(mult, int) or mult < 1:
            raise InputFileError("multiplicity must be a positive integer")
        roots.append((lam, mult))
    return spectrum_from_roots(roots, backend,
                               source=obj.get("source", "user-provided"))


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path) -> Matrix:
    return matrix_from_json(load_json(path))


def load_subspace(path, backend=None) -> sub.Subspace:
    return subspace_from_json(load_json(path), backend)


def load_spectrum(path, backend=EXACT) -> SpectrumSpec:
    return spectrum_from_json(load_json(path), backend)


def canonical_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json_atomic(path, obj):
    """Serialize to a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    payload = canonical_dumps(obj)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def file_digest(path) -> str:
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc}") from exc


def input_stanza(path, m=None, s=None) -> dict:
    entry = {"path": os.path.basename(path), "sha256": file_digest(path)}
    if m is not None:
        entry.update(rows=m.rows, cols=m.cols, backend=m.backend)
    if s is not None:
        entry.update(ambient_dim=s.ambient_dim, dim=s.dim, backend=s.backend)
    return entry
