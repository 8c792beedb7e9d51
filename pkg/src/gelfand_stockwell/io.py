"""Text file formats: signals, coefficient/symbol arrays, spectra, pair JSON.

CSV files carry a header row.  Floats are written with 17 significant digits
so that write -> read is lossless.
"""
from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog
from .errors import GelfandError, ParseError, SchemaError
from .groups import build_group, check_automorphism, check_subgroup
from .spherical import certify_gelfand, spherical_dual

SIGNAL_HEADER = ["element_index", "re", "im"]
COEFF_HEADER = ["t_index", "phi_index", "re", "im"]
SPECTRUM_HEADER = ["phi_index", "weight", "re", "im"]


def _num(x) -> str:
    return "%.17g" % x


def _rows(path, header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise SchemaError("%s is empty" % path) from None
        if [h.strip() for h in first] != header:
            raise SchemaError("%s: expected header %s, got %s" % (path, ",".join(header), ",".join(first)))
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            yield reader.line_num, row


def _parse(line, row, kinds):
    if len(row) != len(kinds):
        raise ParseError(line, "expected %d fields, got %d" % (len(kinds), len(row)))
    out = []
    for cell, kind in zip(row, kinds):
        try:
            out.append(kind(cell.strip()))
        except ValueError:
            raise ParseError(line, "cannot parse %r as %s" % (cell, kind.__name__)) from None
    return out


def _is_json(path):
    return str(path).lower().endswith(".json")


def read_signal(path, order=None) -> np.ndarray:
    """Read a complex vector indexed by group element."""
    if _is_json(path):
        values = _complex_from_json(json.loads(Path(path).read_text()), path, 1)
    else:
        entries = {}
        for line, row in _rows(path, SIGNAL_HEADER):
            idx, re, im = _parse(line, row, (int, float, float))
            if idx in entries:
                raise ParseError(line, "duplicate element_index %d" % idx)
            entries[idx] = complex(re, im)
        n = len(entries)
        if sorted(entries) != list(range(n)):
            raise SchemaError("%s: element indices must be exactly 0..%d" % (path, n - 1))
        values = np.array([entries[i] for i in range(n)], dtype=complex)
    if order is not None and len(values) != order:
        raise SchemaError("%s: signal has length %d, group order is %d" % (path, len(values), order))
    if not np.all(np.isfinite(values)):
        raise SchemaError("%s: non-finite value" % path)
    return values


def _complex_from_json(data, path, ndim):
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError("%s: expected a JSON array of numbers or [re, im] pairs" % path) from None
    if arr.ndim == ndim + 1 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim == ndim:
        return arr.astype(complex)
    raise SchemaError("%s: expected a %d-d array of reals or of [re, im] pairs" % (path, ndim))


def write_signal(path, f, fmt="csv"):
    f = np.asarray(f, dtype=complex)
    if fmt == "json":
        _write_text(path, json.dumps([[float(z.real), float(z.imag)] for z in f]) + "\n")
        return
    lines = [",".join(SIGNAL_HEADER)]
    lines += ["%d,%s,%s" % (i, _num(z.real), _num(z.imag)) for i, z in enumerate(f)]
    _write_text(path, "\n".join(lines) + "\n")


def read_coeffs(path, shape=None) -> np.ndarray:
    """Read a [t, phi] complex array (coefficients or a symbol)."""
    if _is_json(path):
        arr = _complex_from_json(json.loads(Path(path).read_text()), path, 2)
    else:
        entries = {}
        for line, row in _rows(path, COEFF_HEADER):
            t, p, re, im = _parse(line, row, (int, int, float, float))
            if (t, p) in entries:
                raise ParseError(line, "duplicate entry (%d, %d)" % (t, p))
            entries[t, p] = complex(re, im)
        if not entries:
            raise SchemaError("%s: no rows" % path)
        nt = max(t for t, _ in entries) + 1
        npsi = max(p for _, p in entries) + 1
        if len(entries) != nt * npsi or min(min(k) for k in entries) < 0:
            raise SchemaError("%s: entries do not fill a %d x %d grid" % (path, nt, npsi))
        arr = np.empty((nt, npsi), dtype=complex)
        for (t, p), z in entries.items():
            arr[t, p] = z
    if shape is not None and arr.shape != tuple(shape):
        raise SchemaError("%s: array has shape %s, expected %s" % (path, arr.shape, tuple(shape)))
    return arr


read_symbol = read_coeffs


def write_coeffs(path, c, fmt="csv"):
    c = np.asarray(getattr(c, "matrix", c), dtype=complex)
    if fmt == "json":
        _write_text(path, json.dumps([[[float(z.real), float(z.imag)] for z in row] for row in c]) + "\n")
        return
    lines = [",".join(COEFF_HEADER)]
    for t in range(c.shape[0]):
        for p in range(c.shape[1]):
            z = c[t, p]
            lines.append("%d,%d,%s,%s" % (t, p, _num(z.real), _num(z.imag)))
    _write_text(path, "\n".join(lines) + "\n")


def write_spectrum(path, fhat, weights, fmt="csv"):
    if fmt == "json":
        rows = [{"phi_index": i, "weight": float(w), "re": float(z.real), "im": float(z.imag)}
                for i, (w, z) in enumerate(zip(weights, fhat))]
        _write_text(path, json.dumps(rows, indent=1) + "\n")
        return
    lines = [",".join(SPECTRUM_HEADER)]
    lines += ["%d,%s,%s,%s" % (i, _num(w), _num(z.real), _num(z.imag)) for i, (w, z) in enumerate(zip(weights, fhat))]
    _write_text(path, "\n".join(lines) + "\n")


def _write_text(path, text):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def pair_to_json(group, k, automorphisms) -> dict:
    return {
        "order": group.order,
        "mul": group.mul.tolist(),
        "subgroup": list(k.members),
        "automorphisms": {name: a.perm.tolist() for name, a in automorphisms.items()},
    }


def pair_from_json(data):
    """Return (pair, dual, automorphisms) from the group JSON schema."""
    for key in ("order", "mul", "subgroup"):
        if key not in data:
            raise SchemaError("pair JSON lacks %r" % key)
    g = build_group(data["mul"])
    if g.order != data["order"]:
        raise SchemaError("declared order %s does not match table size %d" % (data["order"], g.order))
    k = check_subgroup(g, data["subgroup"])
    auts = {name: check_automorphism(g, perm, name=name) for name, perm in data.get("automorphisms", {}).items()}
    pair = certify_gelfand(g, k)
    return pair, spherical_dual(pair), auts


def load_pair(source):
    """A catalog name or a path to pair JSON -> (name, pair, dual, automorphisms)."""
    if source in catalog.list_pairs():
        entry = catalog.get_pair(source)
        return entry.name, entry.pair, entry.dual, entry.automorphisms
    path = Path(source)
    if not path.exists():
        raise GelfandError("%r is neither a catalog pair nor a readable file" % source)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    pair, dual, auts = pair_from_json(data)
    return path.stem, pair, dual, auts
