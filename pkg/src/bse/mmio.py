"""Matrix Market array-format I/O and the CSV formats used by the CLI.

All numeric output is printed with 17 significant digits, so every file
round-trips through its loader without loss, and identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .core import BseOperator, make_operator


class FormatError(ValueError):
    """Malformed or unsupported file content."""


_FIELDS = ("real", "complex")
_SYMMETRIES = ("general", "symmetric", "hermitian", "skew-symmetric")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_matrix(path, a: np.ndarray, symmetry: str = "general",
                 comment: str | None = None) -> None:
    """Write a dense matrix in Matrix Market array format.

    ``symmetry`` one of general/symmetric/hermitian; for the latter two only
    the lower triangle is stored.  The field (real/complex) follows the dtype.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    rows, cols = a.shape
    is_complex = np.iscomplexobj(a)
    field = "complex" if is_complex else "real"
    if symmetry not in ("general", "symmetric", "hermitian"):
        raise ValueError(f"unsupported symmetry {symmetry!r}")
    if symmetry != "general" and rows != cols:
        raise ValueError("symmetric/hermitian storage needs a square matrix")
    lines = [f"%%MatrixMarket matrix array {field} {symmetry}"]
    if comment:
        lines.extend(f"% {c}" for c in comment.splitlines())
    lines.append(f"{rows} {cols}")
    for j in range(cols):
        i0 = j if symmetry != "general" else 0
        col = a[i0:, j]
        if is_complex:
            lines.extend(f"{_fmt(v.real)} {_fmt(v.imag)}" for v in col)
        else:
            lines.extend(_fmt(v.real) for v in col)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path) -> tuple[np.ndarray, str, str]:
    """Read a Matrix Market array file; returns (matrix, field, symmetry).

    Symmetric/hermitian/skew-symmetric storage is expanded to the full dense
    matrix.  Raises FormatError on malformed content or non-finite entries.
    """
    with open(path) as fh:
        header = fh.readline()
        parts = header.strip().split()
        if len(parts) != 5 or parts[0] != "%%MatrixMarket":
            raise FormatError(f"{path}: missing MatrixMarket header")
        _, obj, layout, field, symmetry = (p.lower() for p in parts)
        if obj != "matrix" or layout != "array":
            raise FormatError(f"{path}: only 'matrix array' files are supported")
        if field not in _FIELDS:
            raise FormatError(f"{path}: unsupported field {field!r}")
        if symmetry not in _SYMMETRIES:
            raise FormatError(f"{path}: unsupported symmetry {symmetry!r}")
        line = fh.readline()
        while line and line.lstrip().startswith("%"):
            line = fh.readline()
        try:
            rows, cols = (int(tok) for tok in line.split())
        except Exception as err:
            raise FormatError(f"{path}: bad size line {line!r}") from err
        values = []
        for raw in fh:
            raw = raw.strip()
            if not raw or raw.startswith("%"):
                continue
            toks = raw.split()
            try:
                if field == "complex":
                    values.append(complex(float(toks[0]), float(toks[1])))
                else:
                    values.append(float(toks[0]))
            except (ValueError, IndexError) as err:
                raise FormatError(f"{path}: bad entry line {raw!r}") from err

    dtype = np.complex128 if field == "complex" else np.float64
    a = np.zeros((rows, cols), dtype=dtype)
    if symmetry == "general":
        if len(values) != rows * cols:
            raise FormatError(f"{path}: expected {rows * cols} entries, got {len(values)}")
        a = np.array(values, dtype=dtype).reshape((cols, rows)).T
    else:
        if rows != cols:
            raise FormatError(f"{path}: {symmetry} storage needs a square matrix")
        expected = rows * (rows + 1) // 2
        if len(values) != expected:
            raise FormatError(f"{path}: expected {expected} entries, got {len(values)}")
        pos = 0
        for j in range(cols):
            count = rows - j
            a[j:, j] = values[pos:pos + count]
            pos += count
        upper = np.triu_indices(rows, 1)
        if symmetry == "symmetric":
            a[upper] = a.T[upper]
        elif symmetry == "hermitian":
            a[upper] = a.conj().T[upper]
        else:  # skew-symmetric
            a[upper] = -a.T[upper]
    if not np.isfinite(a).all():
        raise FormatError(f"{path}: non-finite entries")
    return a, field, symmetry


def write_operator(path_a, path_b, op: BseOperator) -> None:
    """Write the operator blocks as a pair of Matrix Market files, honoring
    the hermitian/symmetric qualifiers (real problems use real files)."""
    if op.kind == "real":
        write_matrix(path_a, np.ascontiguousarray(op.a.real), symmetry="symmetric")
        write_matrix(path_b, np.ascontiguousarray(op.b.real), symmetry="symmetric")
    else:
        write_matrix(path_a, op.a, symmetry="hermitian")
        write_matrix(path_b, op.b, symmetry="symmetric")


def load_operator(path_a, path_b, kind: str | None = None,
                  symmetrize: bool = False) -> BseOperator:
    """Load the operator pair, verifying the file headers against the
    requested kind: a real operator must come from real files.  Real files
    feeding a complex operator are upcast."""
    a, field_a, _ = read_matrix(path_a)
    b, field_b, _ = read_matrix(path_b)
    file_kind = "complex" if ("complex" in (field_a, field_b)) else "real"
    if kind is None:
        kind = file_kind
    elif kind == "real" and file_kind == "complex":
        raise FormatError(
            f"requested kind 'real' but {path_a if field_a == 'complex' else path_b} "
            f"holds a complex matrix")
    return make_operator(a, b, kind=kind, symmetrize=symmetrize)


def write_eigenvalues(path, lam: np.ndarray) -> None:
    """One eigenvalue per line under a 'lambda' header."""
    lines = ["lambda"]
    lines.extend(_fmt(v) for v in np.asarray(lam, dtype=np.float64))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_eigenvalues(path) -> np.ndarray:
    with open(path) as fh:
        rows = [line.strip() for line in fh if line.strip()]
    if not rows or rows[0] != "lambda":
        raise FormatError(f"{path}: expected a 'lambda' header")
    try:
        return np.array([float(r) for r in rows[1:]])
    except ValueError as err:
        raise FormatError(f"{path}: bad eigenvalue entry") from err


def write_spectrum(path, omegas: np.ndarray, values: np.ndarray) -> None:
    """Two-column CSV (omega, value) suitable for external plotting."""
    lines = ["omega,value"]
    lines.extend(f"{_fmt(o)},{_fmt(v)}" for o, v in zip(omegas, values))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_spectrum(path) -> tuple[np.ndarray, np.ndarray]:
    with open(path) as fh:
        rows = [line.strip() for line in fh if line.strip()]
    if not rows or rows[0] != "omega,value":
        raise FormatError(f"{path}: expected an 'omega,value' header")
    try:
        pairs = [tuple(float(tok) for tok in row.split(",")) for row in rows[1:]]
    except ValueError as err:
        raise FormatError(f"{path}: bad spectrum entry") from err
    arr = np.array(pairs) if pairs else np.zeros((0, 2))
    return arr[:, 0], arr[:, 1]


def load_dipoles(path) -> tuple[np.ndarray, np.ndarray]:
    """Dipole vectors stored as a 2n x 2 complex Matrix Market array with
    columns (d_r, d_l)."""
    arr, _, _ = read_matrix(path)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError(f"{path}: dipole file must be a 2n x 2 array")
    arr = arr.astype(np.complex128)
    return arr[:, 0], arr[:, 1]
