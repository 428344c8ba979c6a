"""Circulant-1 QC-LDPC base matrices and their expanded parity-check matrices.

A base matrix holds one shift value per z-by-z block: a shift s >= 0 stands
for the identity cyclically right-shifted by s, and -1 stands for the all-zero
block.  Expansion produces a sparse binary matrix stored as row/column
adjacency lists; the dense matrix is never materialized here.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field

import numpy as np


class BaseMatrixParseError(ValueError):
    """Malformed base-matrix file; message names the offending line/column."""


@dataclass(frozen=True)
class BaseMatrix:
    """m_b x n_b matrix of shift values over {-1} union {0..z-1}."""

    entries: np.ndarray
    z: int

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.int64)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise ValueError("base matrix must be 2-D and non-empty")
        if self.z < 1:
            raise ValueError(f"expansion factor must be >= 1, got {self.z}")
        if entries.min() < -1 or entries.max() > self.z - 1:
            raise ValueError(f"shift values must lie in [-1, {self.z - 1}]")
        entries.setflags(write=False)

    @property
    def m_b(self) -> int:
        return self.entries.shape[0]

    @property
    def n_b(self) -> int:
        return self.entries.shape[1]

    @property
    def n(self) -> int:
        return self.n_b * self.z

    @property
    def m(self) -> int:
        return self.m_b * self.z


@dataclass(frozen=True)
class ParityCheckMatrix:
    """Sparse binary m x n matrix as mutually consistent adjacency lists."""

    m: int
    n: int
    row_adjacency: tuple  # row_adjacency[i]: sorted np.ndarray of column indices
    column_adjacency: tuple = field(repr=False)


def parse_base_matrix(text: str) -> BaseMatrix:
    """Parse the base-matrix file format.

    Line 1 is "m_b n_b z"; the next m_b lines hold n_b space-separated shift
    values each.  Lines starting with '#' are comments and are skipped.
    """
    lines = [
        (lineno, line)
        for lineno, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise BaseMatrixParseError("empty input: missing header line")

    header_lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 3:
        raise BaseMatrixParseError(
            f"line {header_lineno}: header must be 'm_b n_b z', got {header.strip()!r}"
        )
    try:
        m_b, n_b, z = (int(f) for f in fields)
    except ValueError:
        raise BaseMatrixParseError(f"line {header_lineno}: non-integer header field") from None
    if m_b < 1 or n_b < 1 or z < 1:
        raise BaseMatrixParseError(f"line {header_lineno}: m_b, n_b, z must all be >= 1")

    rows = lines[1:]
    if len(rows) != m_b:
        raise BaseMatrixParseError(f"expected {m_b} matrix rows, found {len(rows)}")

    entries = np.empty((m_b, n_b), dtype=np.int64)
    for u, (lineno, line) in enumerate(rows):
        fields = line.split()
        if len(fields) != n_b:
            raise BaseMatrixParseError(
                f"line {lineno}: expected {n_b} entries, found {len(fields)}"
            )
        for w, tok in enumerate(fields):
            try:
                s = int(tok)
            except ValueError:
                raise BaseMatrixParseError(
                    f"line {lineno}, column {w + 1}: non-integer entry {tok!r}"
                ) from None
            if s < -1 or s > z - 1:
                raise BaseMatrixParseError(
                    f"line {lineno}, column {w + 1}: shift {s} outside [-1, {z - 1}]"
                )
            entries[u, w] = s
    return BaseMatrix(entries=entries, z=z)


def serialize_base_matrix(base: BaseMatrix) -> str:
    """Inverse of parse_base_matrix (up to whitespace)."""
    out = [f"{base.m_b} {base.n_b} {base.z}"]
    for row in base.entries:
        out.append(" ".join(str(int(s)) for s in row))
    return "\n".join(out) + "\n"


def expand(base: BaseMatrix) -> ParityCheckMatrix:
    """Expand shift values into the full sparse parity-check matrix.

    Block (u, w) with shift s places a 1 at (u*z + r, w*z + (r + s) % z) for
    every r, i.e. a right-rotated identity; s = -1 places nothing.
    """
    z = base.z
    m, n = base.m, base.n
    row_cols: list[list[int]] = [[] for _ in range(m)]
    col_rows: list[list[int]] = [[] for _ in range(n)]
    r = np.arange(z)
    for u in range(base.m_b):
        for w in range(base.n_b):
            s = int(base.entries[u, w])
            if s < 0:
                continue
            rows = u * z + r
            cols = w * z + (r + s) % z
            for i, j in zip(rows, cols):
                row_cols[i].append(int(j))
                col_rows[j].append(int(i))
    row_adj = tuple(np.array(sorted(cols), dtype=np.int64) for cols in row_cols)
    col_adj = tuple(np.array(sorted(rows), dtype=np.int64) for rows in col_rows)
    return ParityCheckMatrix(m=m, n=n, row_adjacency=row_adj, column_adjacency=col_adj)


def syndrome(h: ParityCheckMatrix, v_hat: np.ndarray) -> np.ndarray:
    """GF(2) product H * v_hat^T via the row adjacency."""
    v_hat = np.asarray(v_hat)
    if v_hat.shape != (h.n,):
        raise ValueError(f"expected bit vector of length {h.n}, got shape {v_hat.shape}")
    out = np.empty(h.m, dtype=np.int8)
    for i, cols in enumerate(h.row_adjacency):
        out[i] = np.bitwise_xor.reduce(v_hat[cols].astype(np.int8)) if len(cols) else 0
    return out


def degrees(h: ParityCheckMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Per-row check degrees d_c and per-column variable degrees d_v."""
    d_c = np.array([len(cols) for cols in h.row_adjacency], dtype=np.int64)
    d_v = np.array([len(rows) for rows in h.column_adjacency], dtype=np.int64)
    return d_c, d_v


def to_alist(h: ParityCheckMatrix) -> str:
    """Serialize to the standard alist sparse-matrix text format.

    alist convention: dimensions are "n m", indices are 1-based, and each of
    the n column lists precedes the m row lists.  Short lists are not padded.
    """
    d_c, d_v = degrees(h)
    lines = [
        f"{h.n} {h.m}",
        f"{int(d_v.max(initial=0))} {int(d_c.max(initial=0))}",
        " ".join(str(int(d)) for d in d_v),
        " ".join(str(int(d)) for d in d_c),
    ]
    for rows in h.column_adjacency:
        lines.append(" ".join(str(int(i) + 1) for i in rows))
    for cols in h.row_adjacency:
        lines.append(" ".join(str(int(j) + 1) for j in cols))
    return "\n".join(lines) + "\n"


_WIFI_FILES = {
    27: "wifi_halfrate_z27.bm",
    54: "wifi_halfrate_z54.bm",
    81: "wifi_halfrate_z81.bm",
}


def wifi_base_matrix(z: int) -> BaseMatrix:
    """Bundled IEEE 802.11n rate-1/2 base matrix for z in {27, 54, 81}."""
    if z not in _WIFI_FILES:
        raise ValueError(f"no bundled 802.11n rate-1/2 matrix for z={z}")
    text = (
        importlib.resources.files("qcldpc.data").joinpath(_WIFI_FILES[z]).read_text()
    )
    return parse_base_matrix(text)
