"""Dense complex matrices and vectors, the norms used throughout the toolkit,
diagonal/row/column embeddings, and the four interpretation maps.

A complex m x n matrix is read in four ways: as a linear map on vectors
(``apply_fmap``/``apply_gmap``), as a bilinear form (``apply_bform``), as a
Schur (entrywise) multiplier (``schur_product``), and as a mixed bilinear map
into vectors (``apply_tmap``).  All values are immutable after construction
and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "ComplexMatrix",
    "ComplexVector",
    "MatrixLike",
    "VectorLike",
    "as_matrix",
    "as_vector",
    "op_norm",
    "hs_norm",
    "col_norm",
    "row_norm",
    "pairing",
    "schur_product",
    "apply_fmap",
    "apply_gmap",
    "apply_bform",
    "apply_tmap",
    "diag_embed",
    "col_embed",
    "row_embed",
    "ones_vector",
]


class ShapeError(ValueError):
    """Incompatible shapes or dimensions."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class ComplexMatrix:
    """Immutable dense matrix of complex128 scalars.

    Entries are validated to be finite at construction; rows and cols are
    positive.  ``a`` is a read-only ndarray view used by all numerics.
    """

    rows: int
    cols: int
    a: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ShapeError(f"matrix dims must be positive, got {self.rows}x{self.cols}")
        if self.a.shape != (self.rows, self.cols):
            raise ShapeError(f"entries shape {self.a.shape} != {self.rows}x{self.cols}")
        if not np.all(np.isfinite(self.a.real)) or not np.all(np.isfinite(self.a.imag)):
            raise ValueError("matrix entries must be finite (no NaN/Inf)")

    @staticmethod
    def from_array(arr) -> "ComplexMatrix":
        a = np.atleast_2d(np.asarray(arr, dtype=np.complex128))
        return ComplexMatrix(a.shape[0], a.shape[1], _freeze(a))

    @staticmethod
    def zeros(m: int, n: int) -> "ComplexMatrix":
        return ComplexMatrix.from_array(np.zeros((m, n)))

    @staticmethod
    def identity(n: int) -> "ComplexMatrix":
        return ComplexMatrix.from_array(np.eye(n))

    @staticmethod
    def ones(m: int, n: int) -> "ComplexMatrix":
        return ComplexMatrix.from_array(np.ones((m, n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def adjoint(self) -> "ComplexMatrix":
        return ComplexMatrix.from_array(self.a.conj().T)

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.a],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "ComplexMatrix":
        m, n = int(d["rows"]), int(d["cols"])
        ent = d["entries"]
        if len(ent) != m or any(len(r) != n for r in ent):
            raise ShapeError("entries do not match rows x cols")
        a = np.array([[complex(p[0], p[1]) for p in row] for row in ent], dtype=np.complex128)
        return ComplexMatrix(m, n, _freeze(a))


@dataclass(frozen=True)
class ComplexVector:
    """Immutable dense vector of complex128 scalars; dim must be positive."""

    dim: int
    a: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeError(f"vector dim must be positive, got {self.dim}")
        if self.a.shape != (self.dim,):
            raise ShapeError(f"entries shape {self.a.shape} != ({self.dim},)")
        if not np.all(np.isfinite(self.a.real)) or not np.all(np.isfinite(self.a.imag)):
            raise ValueError("vector entries must be finite (no NaN/Inf)")

    @staticmethod
    def from_array(arr) -> "ComplexVector":
        a = np.asarray(arr, dtype=np.complex128).reshape(-1)
        return ComplexVector(a.shape[0], _freeze(a))

    def norm2(self) -> float:
        return float(np.linalg.norm(self.a))

    def to_json_dict(self) -> dict:
        return {"dim": self.dim, "entries": [[float(z.real), float(z.imag)] for z in self.a]}

    @staticmethod
    def from_json_dict(d: dict) -> "ComplexVector":
        n = int(d["dim"])
        ent = d["entries"]
        if len(ent) != n:
            raise ShapeError("entries do not match dim")
        a = np.array([complex(p[0], p[1]) for p in ent], dtype=np.complex128)
        return ComplexVector(n, _freeze(a))


MatrixLike = Union[ComplexMatrix, np.ndarray, Sequence[Sequence[complex]]]
VectorLike = Union[ComplexVector, np.ndarray, Sequence[complex]]


def as_matrix(x: MatrixLike) -> ComplexMatrix:
    """Coerce an array-like to a validated ComplexMatrix."""
    if isinstance(x, ComplexMatrix):
        return x
    return ComplexMatrix.from_array(x)


def as_vector(x: VectorLike) -> ComplexVector:
    """Coerce an array-like to a validated ComplexVector."""
    if isinstance(x, ComplexVector):
        return x
    return ComplexVector.from_array(x)


def _arr(x: MatrixLike) -> np.ndarray:
    return as_matrix(x).a


def _vec(x: VectorLike) -> np.ndarray:
    return as_vector(x).a


# ---------------------------------------------------------------------------
# norms and the trace pairing
# ---------------------------------------------------------------------------

def op_norm(x: MatrixLike) -> float:
    """Operator norm (largest singular value)."""
    return float(np.linalg.norm(_arr(x), 2))


def hs_norm(x: MatrixLike) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(_arr(x)))


def col_norm(x: MatrixLike) -> float:
    """Maximum Euclidean norm over columns."""
    a = _arr(x)
    return float(np.sqrt(np.max(np.sum(np.abs(a) ** 2, axis=0))))


def row_norm(x: MatrixLike) -> float:
    """Maximum Euclidean norm over rows (column norm of the adjoint)."""
    a = _arr(x)
    return float(np.sqrt(np.max(np.sum(np.abs(a) ** 2, axis=1))))


def pairing(x: MatrixLike, y: MatrixLike) -> complex:
    """Trace pairing <X, Y> = Tr(Y* X); linear in X, conjugate-linear in Y."""
    ax, ay = _arr(x), _arr(y)
    if ax.shape != ay.shape:
        raise ShapeError(f"pairing needs equal shapes, got {ax.shape} and {ay.shape}")
    return complex(np.sum(np.conj(ay) * ax))


def schur_product(x: MatrixLike, a: MatrixLike) -> ComplexMatrix:
    """Entrywise (Schur/Hadamard) product of equal-shape matrices."""
    ax, aa = _arr(x), _arr(a)
    if ax.shape != aa.shape:
        raise ShapeError(f"schur product needs equal shapes, got {ax.shape} and {aa.shape}")
    return ComplexMatrix.from_array(ax * aa)


# ---------------------------------------------------------------------------
# the four interpretation maps, applied pointwise
# ---------------------------------------------------------------------------

def apply_fmap(x: MatrixLike, a: VectorLike) -> ComplexVector:
    """Linear-map interpretation: a |-> X a (a has dim n, result dim m)."""
    ax, va = _arr(x), _vec(a)
    if va.shape[0] != ax.shape[1]:
        raise ShapeError(f"vector dim {va.shape[0]} != cols {ax.shape[1]}")
    return ComplexVector.from_array(ax @ va)


def apply_gmap(x: MatrixLike, a: VectorLike) -> ComplexVector:
    """Row-map interpretation: a |-> a_- X (a has dim m, result dim n, no conjugation)."""
    ax, va = _arr(x), _vec(a)
    if va.shape[0] != ax.shape[0]:
        raise ShapeError(f"vector dim {va.shape[0]} != rows {ax.shape[0]}")
    return ComplexVector.from_array(ax.T @ va)


def apply_bform(x: MatrixLike, a: VectorLike, b: VectorLike) -> complex:
    """Bilinear-form interpretation: sum_ij X_ij a_i b_j (bilinear, not sesquilinear)."""
    ax, va, vb = _arr(x), _vec(a), _vec(b)
    if va.shape[0] != ax.shape[0] or vb.shape[0] != ax.shape[1]:
        raise ShapeError(
            f"bform needs dims ({ax.shape[0]},{ax.shape[1]}), got ({va.shape[0]},{vb.shape[0]})"
        )
    return complex(va @ ax @ vb)


def apply_tmap(x: MatrixLike, a: VectorLike, b: MatrixLike) -> ComplexVector:
    """Mixed bilinear interpretation: (a, B) |-> vector with entries
    sum_i a_i X_ij B_ij, i.e. (X o B)^T a."""
    ax, va, ab = _arr(x), _vec(a), _arr(b)
    if ab.shape != ax.shape:
        raise ShapeError(f"matrix argument shape {ab.shape} != {ax.shape}")
    if va.shape[0] != ax.shape[0]:
        raise ShapeError(f"vector dim {va.shape[0]} != rows {ax.shape[0]}")
    return ComplexVector.from_array((ax * ab).T @ va)


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

def diag_embed(xi: VectorLike) -> ComplexMatrix:
    """Square diagonal matrix with the vector on the diagonal."""
    return ComplexMatrix.from_array(np.diag(_vec(xi)))


def col_embed(xi: VectorLike) -> ComplexMatrix:
    """n x 1 column matrix holding the vector."""
    return ComplexMatrix.from_array(_vec(xi).reshape(-1, 1))


def row_embed(xi: VectorLike) -> ComplexMatrix:
    """1 x n row matrix holding the vector."""
    return ComplexMatrix.from_array(_vec(xi).reshape(1, -1))


def ones_vector(n: int) -> ComplexVector:
    """All-ones vector of dimension n."""
    return ComplexVector.from_array(np.ones(n))
