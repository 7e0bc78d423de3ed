"""Plain-text file formats.

dense-csv
    n lines of n comma-separated reals.
edge-tsv
    a header line ``n=<n>`` followed by ``i<TAB>j<TAB>w`` lines, 1-based,
    each undirected edge listed once.  ``#`` starts a comment line.
labels-csv
    ``vertex,label`` lines, 1-based vertex ids, label 0 for unknown.
    Vertices that are not listed get label 0.
"""
from __future__ import annotations

import json
import os

import numpy as np

from .graph import GeneralGraph, LabelVector

FORMATS = ("dense-csv", "edge-tsv")


class DataError(ValueError):
    """Malformed input file; the message names the file and line."""


def guess_format(path) -> str:
    ext = os.path.splitext(str(path))[1].lower()
    if ext in (".tsv", ".edges", ".txt"):
        return "edge-tsv"
    return "dense-csv"


def _lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def _float(tok, path, lineno):
    try:
        v = float(tok)
    except ValueError:
        raise DataError(f"{path}:{lineno}: non-numeric field {tok!r}") from None
    if not np.isfinite(v):
        raise DataError(f"{path}:{lineno}: non-finite value {tok!r}")
    return v


def _int(tok, path, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise DataError(f"{path}:{lineno}: {what} {tok!r} is not an integer") from None


def read_dense_csv(path) -> GeneralGraph:
    rows = []
    width = None
    for lineno, line in _lines(path):
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DataError(f"{path}:{lineno}: ragged row ({len(fields)} fields, expected {width})")
        rows.append([_float(f.strip(), path, lineno) for f in fields])
    if not rows:
        raise DataError(f"{path}: empty graph file")
    if len(rows) != width:
        raise DataError(f"{path}: dense graph is {len(rows)} x {width}, not square")
    return GeneralGraph.from_dense(np.array(rows))


def read_edge_tsv(path) -> GeneralGraph:
    it = _lines(path)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise DataError(f"{path}: empty edge file") from None
    if not header.startswith("n="):
        raise DataError(f"{path}:{lineno}: expected header 'n=<vertex count>'")
    n = _int(header[2:].strip(), path, lineno, "vertex count")
    if n < 0:
        raise DataError(f"{path}:{lineno}: negative vertex count")
    r, c, w = [], [], []
    for lineno, line in it:
        fields = line.split("\t") if "\t" in line else line.split()
        if len(fields) not in (2, 3):
            raise DataError(f"{path}:{lineno}: expected 'i<TAB>j<TAB>w'")
        i = _int(fields[0], path, lineno, "index")
        j = _int(fields[1], path, lineno, "index")
        if not (1 <= i <= n and 1 <= j <= n):
            raise DataError(f"{path}:{lineno}: index out of range 1..{n}")
        r.append(i - 1)
        c.append(j - 1)
        w.append(_float(fields[2], path, lineno) if len(fields) == 3 else 1.0)
    return GeneralGraph.from_triplets(n, r, c, w, symmetric=True, convention="once")


def read_graph(path, format: str | None = None) -> GeneralGraph:
    fmt = format or guess_format(path)
    if fmt == "dense-csv":
        return read_dense_csv(path)
    if fmt == "edge-tsv":
        return read_edge_tsv(path)
    raise ValueError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def _fmt(v) -> str:
    return repr(float(v))


def write_graph(graph: GeneralGraph, path, format: str | None = None) -> None:
    fmt = format or guess_format(path)
    if fmt == "dense-csv":
        a = graph.to_array()
        with open(path, "w", encoding="utf-8") as fh:
            for row in a:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    elif fmt == "edge-tsv":
        if not graph.is_sparse:
            from .graph import sparsify

            graph = sparsify(graph)
        if graph.symmetric and graph.convention != "once":
            raise ValueError("edge-tsv stores each undirected edge once")
        r, c, w = graph.triplets()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"n={graph.n}\n")
            for i, j, x in zip(r.tolist(), c.tolist(), w.tolist()):
                fh.write(f"{i + 1}\t{j + 1}\t{_fmt(x)}\n")
    else:
        raise ValueError(f"unknown graph format {fmt!r}")


def read_labels(path, n_classes: int | None = None, n: int | None = None) -> LabelVector:
    """Read ``vertex,label`` lines; K is the max label unless ``n_classes`` is given."""
    seen = {}
    for lineno, line in _lines(path):
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise DataError(f"{path}:{lineno}: expected 'vertex,label'")
        if lineno == 1 and not fields[0].lstrip("-").isdigit():
            continue  # header
        v = _int(fields[0], path, lineno, "vertex id")
        lab = _int(fields[1], path, lineno, "label")
        if v < 1:
            raise DataError(f"{path}:{lineno}: vertex ids are 1-based")
        if lab < 0:
            raise DataError(f"{path}:{lineno}: negative label {lab}")
        if v in seen:
            raise DataError(f"{path}:{lineno}: duplicate vertex id {v}")
        seen[v] = lab
    if not seen:
        raise DataError(f"{path}: no labels")
    size = max(seen) if n is None else n
    if max(seen) > size:
        raise DataError(f"{path}: vertex id {max(seen)} exceeds graph size {size}")
    y = np.zeros(size, dtype=np.int64)
    for v, lab in seen.items():
        y[v - 1] = lab
    K = int(y.max()) if n_classes is None else int(n_classes)
    if y.max() > K:
        raise DataError(f"{path}: label {y.max()} exceeds --classes {K}")
    return LabelVector(y, max(K, 1))


def write_labels(labels: LabelVector, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v, lab in enumerate(labels.labels.tolist(), start=1):
            fh.write(f"{v},{lab}\n")


def read_features(path) -> np.ndarray:
    rows = []
    width = None
    for lineno, line in _lines(path):
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DataError(f"{path}:{lineno}: ragged row ({len(fields)} fields, expected {width})")
        rows.append([_float(f.strip(), path, lineno) for f in fields])
    if not rows:
        raise DataError(f"{path}: empty feature file")
    return np.array(rows)


def write_matrix(values, path, header=None) -> None:
    v = np.atleast_2d(np.asarray(values, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(",".join(header) + "\n")
        for row in v:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def write_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
