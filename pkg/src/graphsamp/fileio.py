"""Plain-text serialization for graphs, matrices, signals, and design traces.

Formats are line oriented and diffable:

* graph: header ``n <num_vertices>``, optional ``coords`` block of n
  ``x y`` lines, then one ``u v w`` line per edge (0-based indices);
* matrix: header ``<rows> <cols>``, then row-major decimals;
* signal: header ``n <len>``, then one decimal per line;
* design trace: CSV with columns ``iter,nuclear_norm,step_norm``.

Floats are written with ``repr`` so every file round-trips exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .design import SamplingDesign
from .graphs import Graph


def _fmt(value: float) -> str:
    return repr(float(value))


def save_graph(graph: Graph, path) -> None:
    lines = [f"n {graph.num_vertices}"]
    if graph.coordinates is not None:
        lines.append("coords")
        for x, y in graph.coordinates:
            lines.append(f"{_fmt(x)} {_fmt(y)}")
    for u, v, w in graph.edges:
        lines.append(f"{u} {v} {_fmt(w)}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_graph(path) -> Graph:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError(f"{path}: empty graph file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "n":
        raise ValueError(f"{path}: expected header 'n <num_vertices>', got {lines[0]!r}")
    n = int(header[1])
    pos = 1
    coords = None
    if pos < len(lines) and lines[pos] == "coords":
        pos += 1
        if len(lines) < pos + n:
            raise ValueError(f"{path}: coords block needs {n} lines")
        coords = np.array(
            [[float(tok) for tok in lines[pos + i].split()] for i in range(n)]
        )
        pos += n
    edges = []
    for ln in lines[pos:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"{path}: bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    return Graph(num_vertices=n, edges=edges, coordinates=coords)


def save_matrix(matrix: np.ndarray, path) -> None:
    M = np.atleast_2d(np.asarray(matrix, dtype=float))
    rows, cols = M.shape
    lines = [f"{rows} {cols}"]
    for r in range(rows):
        lines.append(" ".join(_fmt(v) for v in M[r]))
    Path(path).write_text("\n".join(lines) + "\n")


def load_matrix(path) -> np.ndarray:
    text = Path(path).read_text().split()
    if len(text) < 2:
        raise ValueError(f"{path}: expected '<rows> <cols>' header")
    rows, cols = int(text[0]), int(text[1])
    body = text[2:]
    if len(body) != rows * cols:
        raise ValueError(
            f"{path}: expected {rows * cols} entries for a {rows}x{cols} matrix, "
            f"found {len(body)}"
        )
    return np.array([float(tok) for tok in body]).reshape(rows, cols)


def save_signal(x: np.ndarray, path) -> None:
    values = np.asarray(x, dtype=float).ravel()
    lines = [f"n {values.size}"] + [_fmt(v) for v in values]
    Path(path).write_text("\n".join(lines) + "\n")


def load_signal(path) -> np.ndarray:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError(f"{path}: empty signal file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "n":
        raise ValueError(f"{path}: expected header 'n <len>', got {lines[0]!r}")
    length = int(header[1])
    if len(lines) - 1 != length:
        raise ValueError(f"{path}: expected {length} values, found {len(lines) - 1}")
    return np.array([float(ln) for ln in lines[1:]])


def save_trace_csv(design: SamplingDesign, path) -> None:
    lines = ["iter,nuclear_norm,step_norm"]
    for i, (nuc, step) in enumerate(zip(design.nuclear_norms, design.step_norms)):
        lines.append(f"{i},{_fmt(nuc)},{_fmt(step)}")
    Path(path).write_text("\n".join(lines) + "\n")
