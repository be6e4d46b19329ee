"""Operator container, hypothesis validation, problem generator, residual metrics.

The block operator pair (A, B) defines the 2n x 2n non-Hermitian matrix

    H = [[ A,        B      ],
         [-conj(B), -conj(A)]]

with A Hermitian and B (complex) symmetric.  Everything downstream relies on
exactly this structure, so construction rejects inputs that violate it instead
of silently repairing them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = float(np.finfo(np.float64).eps)

#: Default relative symmetry tolerance; the threshold applied to the defect
#: ||A - A^H||_F is SYM_RTOL * max(1, ||A||_F).
SYM_RTOL = 100.0 * EPS


def _frob(x: np.ndarray) -> float:
    return float(np.linalg.norm(x))


def _sym_defect(x: np.ndarray, conjugate: bool) -> float:
    """Relative deviation of x from (conjugate-)symmetry."""
    ref = x.conj().T if conjugate else x.T
    nrm = _frob(x)
    if nrm == 0.0:
        return 0.0
    return _frob(x - ref) / nrm


def _readonly(x: np.ndarray) -> np.ndarray:
    x = np.ascontiguousarray(x)
    x.setflags(write=False)
    return x


@dataclass(frozen=True)
class BseOperator:
    """The pair (A, B) with A Hermitian and B symmetric; ``kind`` marks
    whether the problem is real (imaginary parts exactly zero) or complex.

    Instances are immutable; the stored arrays are complex128 and read-only.
    """

    a: np.ndarray
    b: np.ndarray
    kind: str

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.complex128)
        b = np.asarray(self.b, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"A must be square, got shape {a.shape}")
        if b.shape != a.shape:
            raise ValueError(f"A and B shapes differ: {a.shape} vs {b.shape}")
        if self.kind not in ("real", "complex"):
            raise ValueError(f"kind must be 'real' or 'complex', got {self.kind!r}")
        if not (np.isfinite(a).all() and np.isfinite(b).all()):
            raise ValueError("A and B must contain only finite entries")
        if self.kind == "real" and (np.any(a.imag != 0.0) or np.any(b.imag != 0.0)):
            raise ValueError("kind='real' requires exactly zero imaginary parts")
        object.__setattr__(self, "a", _readonly(a))
        object.__setattr__(self, "b", _readonly(b))

    @property
    def n(self) -> int:
        return self.a.shape[0]


def make_operator(a, b, kind: str | None = None, symmetrize: bool = False,
                  tol: float | None = None) -> BseOperator:
    """Build a validated BseOperator from array-likes.

    Inputs whose symmetry defect exceeds the tolerance are rejected unless
    ``symmetrize`` is set, in which case A <- (A + A^H)/2 and B <- (B + B^T)/2
    are applied first.

    Parameters
    ----------
    a, b : array_like, n x n
        Candidate Hermitian / symmetric blocks.
    kind : {'real', 'complex'}, optional
        Inferred from the data when omitted (real iff both imaginary parts
        are exactly zero).
    symmetrize : bool
        Average away symmetry defects instead of rejecting.
    tol : float, optional
        Relative symmetry tolerance; defaults to ``SYM_RTOL``.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise ValueError("A and B must contain only finite entries")
    if symmetrize:
        a = 0.5 * (a + a.conj().T)
        b = 0.5 * (b + b.T)
    rtol = SYM_RTOL if tol is None else float(tol)
    for name, mat, conj in (("A", a, True), ("B", b, False)):
        nrm = _frob(mat)
        defect = _frob(mat - (mat.conj().T if conj else mat.T))
        if defect > rtol * max(1.0, nrm):
            raise ValueError(
                f"{name} violates {'Hermitian' if conj else 'symmetric'} structure: "
                f"defect {defect:.3e} exceeds tolerance {rtol * max(1.0, nrm):.3e}; "
                f"pass symmetrize=True to average it away"
            )
    if kind is None:
        kind = "real" if (np.all(a.imag == 0.0) and np.all(b.imag == 0.0)) else "complex"
    if kind == "real":
        if np.any(a.imag != 0.0) or np.any(b.imag != 0.0):
            raise ValueError("kind='real' requested but inputs have nonzero imaginary parts")
    return BseOperator(a=a, b=b, kind=kind)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks on an operator pair.

    ``margin`` is the smallest diagonal pivot encountered by the Cholesky
    probe of the real embedding M (the failing, nonpositive pivot when the
    probe breaks down).
    """

    symmetry_ok: bool
    definiteness_ok: bool
    sym_defects: tuple[float, float]
    margin: float

    @property
    def ok(self) -> bool:
        return self.symmetry_ok and self.definiteness_ok


@dataclass(frozen=True)
class PositiveEigensystem:
    """Positive half of the spectrum: lambda_1 >= ... >= lambda_n > 0 with the
    right-eigenvector blocks X1, X2 normalized so X1^H X1 - X2^H X2 = I."""

    lambda_plus: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        lam = np.asarray(self.lambda_plus, dtype=np.float64)
        x1 = np.asarray(self.x1, dtype=np.complex128)
        x2 = np.asarray(self.x2, dtype=np.complex128)
        n = lam.shape[0]
        if x1.shape != (n, n) or x2.shape != (n, n):
            raise ValueError("eigenvector blocks must be n x n")
        if n and not np.all(lam > 0.0):
            raise ValueError("all eigenvalues must be strictly positive")
        if n > 1 and np.any(np.diff(lam) > 0.0):
            raise ValueError("eigenvalues must be sorted in descending order")
        object.__setattr__(self, "lambda_plus", _readonly(lam))
        object.__setattr__(self, "x1", _readonly(x1))
        object.__setattr__(self, "x2", _readonly(x2))

    @property
    def n(self) -> int:
        return self.lambda_plus.shape[0]


@dataclass(frozen=True)
class FullEigensystem:
    """All 2n eigenpairs: right eigenvectors X, left eigenvectors Y (with
    Y^H X = I), and eigenvalues ordered (lambda_+, -lambda_+); the negated
    half is the bitwise negation of the positive half."""

    x: np.ndarray
    y: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.complex128)
        y = np.asarray(self.y, dtype=np.complex128)
        lam = np.asarray(self.lam, dtype=np.float64)
        m = lam.shape[0]
        if m % 2 != 0:
            raise ValueError("eigenvalue count must be even")
        if x.shape != (m, m) or y.shape != (m, m):
            raise ValueError("X and Y must be 2n x 2n")
        n = m // 2
        if m and not np.array_equal(lam[n:], -lam[:n]):
            raise ValueError("lambda[n:] must be the exact negation of lambda[:n]")
        object.__setattr__(self, "x", _readonly(x))
        object.__setattr__(self, "y", _readonly(y))
        object.__setattr__(self, "lam", _readonly(lam))

    @property
    def n(self) -> int:
        return self.lam.shape[0] // 2


def validate(op: BseOperator, tol: float | None = None) -> ValidationReport:
    """Check the two structural hypotheses: (A Hermitian, B symmetric) and
    positive definiteness of [[A, B], [conj B, conj A]].

    The definiteness probe runs a Cholesky factorization of the real
    symmetric embedding M, never of the complex block matrix, so the whole
    check stays in real arithmetic.
    """
    # Imported here: embeddings/kernels import this module for the types.
    from .embeddings import build_m
    from .kernels import NotPositiveDefinite, cholesky

    rtol = SYM_RTOL if tol is None else float(tol)
    defect_a = _sym_defect(op.a, conjugate=True)
    defect_b = _sym_defect(op.b, conjugate=False)
    norm_a, norm_b = _frob(op.a), _frob(op.b)
    sym_ok = (_frob(op.a - op.a.conj().T) <= rtol * max(1.0, norm_a)
              and _frob(op.b - op.b.T) <= rtol * max(1.0, norm_b))

    m = build_m(op)
    try:
        low = cholesky(m)
        d = np.diagonal(low)
        margin = float(np.min(d) ** 2) if d.size else 0.0
        pd_ok = True
    except NotPositiveDefinite as err:
        margin = float(err.pivot_value)
        pd_ok = False
    return ValidationReport(symmetry_ok=bool(sym_ok), definiteness_ok=pd_ok,
                            sym_defects=(defect_a, defect_b), margin=margin)


def assemble_h(op: BseOperator) -> np.ndarray:
    """Materialize the dense 2n x 2n matrix H = [[A, B], [-conj B, -conj A]].

    Only tests and the cross-checking solver need the assembled matrix; the
    production pipeline works with the real embedding instead.
    """
    a, b = op.a, op.b
    return np.block([[a, b], [-b.conj(), -a.conj()]])


def random_bse(n: int, seed: int, margin: float = 1.0, kind: str = "complex") -> BseOperator:
    """Deterministic random operator that satisfies both validation checks.

    A Hermitian A0 and symmetric B0 with entries in [-1, 1] are drawn, then A
    is shifted by (||A0||_F + ||B0||_F + margin) I.  The Frobenius norms
    overestimate the spectral norms, so the shift guarantees definiteness;
    the probe is still run and the shift doubled in the (theoretically
    unreachable) event of failure.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if margin <= 0.0:
        raise ValueError("margin must be positive")
    rng = np.random.default_rng(seed)
    if kind == "complex":
        g = rng.uniform(-1.0, 1.0, (n, n)) + 1j * rng.uniform(-1.0, 1.0, (n, n))
        a0 = 0.5 * (g + g.conj().T)
        g2 = rng.uniform(-1.0, 1.0, (n, n)) + 1j * rng.uniform(-1.0, 1.0, (n, n))
        b0 = 0.5 * (g2 + g2.T)
    elif kind == "real":
        g = rng.uniform(-1.0, 1.0, (n, n))
        a0 = 0.5 * (g + g.T)
        g2 = rng.uniform(-1.0, 1.0, (n, n))
        b0 = 0.5 * (g2 + g2.T)
    else:
        raise ValueError(f"kind must be 'real' or 'complex', got {kind!r}")

    shift = _frob(a0) + _frob(b0) + margin
    for _ in range(64):
        op = make_operator(a0 + shift * np.eye(n), b0, kind=kind)
        if validate(op).definiteness_ok:
            return op
        shift *= 2.0
    raise RuntimeError("definiteness probe kept failing despite re-shifting")


def residual_metrics(op: BseOperator, full: FullEigensystem) -> tuple[float, float]:
    """The two accuracy metrics of a computed full eigensystem:

        r1 = ||Y^H H X - Lambda||_F / ||H||_F
        r2 = ||Y^H X - I||_F / sqrt(2n)
    """
    if full.n != op.n:
        raise ValueError(f"dimension mismatch: operator n={op.n}, eigensystem n={full.n}")
    h = assemble_h(op)
    m = 2 * op.n
    yh = full.y.conj().T
    r1 = _frob(yh @ (h @ full.x) - np.diag(full.lam)) / _frob(h)
    r2 = _frob(yh @ full.x - np.eye(m)) / np.sqrt(m)
    return float(r1), float(r2)
