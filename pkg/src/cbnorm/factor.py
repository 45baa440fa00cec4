"""Norm-optimal factorizations extracted from SDP certificates.

Five shapes are produced, one per interpretation of the matrix:

    F:  X = C D(xi)          cost ||C||_inf ||xi||_2
    G:  X = D(eta) D         cost ||eta||_2 ||D||_inf
    B:  X = D(eta)* C D(xi)  cost ||eta||_2 ||C||_inf ||xi||_2
    S:  X = L* R             cost ||L||_c ||R||_c,   rank(L) = rank(R) = rank(X)
    T:  X = D(gamma) L* R    cost ||gamma||_2 ||L||_c ||R||_c, same rank statement

The S and T extractions Gram-factor the PSD block witness of the matching norm
certificate and then pass through ``rank_reduce``, which never increases the
operator, Hilbert-Schmidt, row or column norms of either factor while cutting
both down to the rank of the product.  Scaling
vectors are canonicalized to nonnegative reals, with phases absorbed into the
matrix factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from . import sdp
from .core import MatrixLike, as_matrix, col_norm, hs_norm, op_norm
from .norms import NormCertificate

__all__ = [
    "Factorization",
    "FactorizationError",
    "rank_reduce",
    "scale_split",
    "schur_factor",
    "fx_factor",
    "gx_factor",
    "bilinear_factor",
    "tx_factor",
    "factor",
]

RECONSTRUCT_RTOL = 1e-7


class FactorizationError(RuntimeError):
    """Witness could not be turned into a valid factorization."""


@dataclass
class Factorization:
    """A typed factorization with declared rank and its norm-product cost."""

    kind: str                      # 'F' | 'G' | 'B' | 'S' | 'T'
    factors: dict
    rank: int
    cost: float

    def reconstruct(self) -> np.ndarray:
        f = self.factors
        if self.kind == "F":
            return f["C"] @ np.diag(f["xi"])
        if self.kind == "G":
            return np.diag(f["eta"]) @ f["D"]
        if self.kind == "B":
            return np.diag(f["eta"]).conj().T @ f["C"] @ np.diag(f["xi"])
        if self.kind == "S":
            return f["L"].conj().T @ f["R"]
        if self.kind == "T":
            return np.diag(f["gamma"]) @ f["L"].conj().T @ f["R"]
        raise ValueError(f"unknown factorization kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        def enc(a):
            arr = np.atleast_2d(np.asarray(a, dtype=complex))
            return [[[float(z.real), float(z.imag)] for z in row] for row in arr]

        return {
            "kind": self.kind,
            "factors": {k: enc(v) for k, v in self.factors.items()},
            "rank": int(self.rank),
            "cost": float(self.cost),
        }


def _check_reconstruction(fact: Factorization, x: np.ndarray):
    err = np.linalg.norm(fact.reconstruct() - x)
    bound = RECONSTRUCT_RTOL * max(np.linalg.norm(x), 1e-12)
    if err > bound:
        raise FactorizationError(
            f"kind-{fact.kind} reconstruction error {err:.3e} exceeds {bound:.3e}"
        )
    return fact


# ---------------------------------------------------------------------------
# rank reduction and the column split
# ---------------------------------------------------------------------------

def rank_reduce(a: MatrixLike, b: MatrixLike, floor: float = sdp.RANK_FLOOR) -> Tuple[np.ndarray, np.ndarray]:
    """Cut a product A (m x k) times B (k x n) down to factors of full rank.

    Returns (L, R) with L R = A B, L of shape (m, r), R of shape (r, n), and
    r the numerical rank of A B.  None of the operator, Hilbert-Schmidt, row
    or column norms of L (resp. R) exceed those of A (resp. B): L = A W and
    R = W* B for an isometry W onto the support of A restricted to the range
    of B.
    """
    A = as_matrix(a).a
    B = as_matrix(b).a
    m, k = A.shape
    k2, n = B.shape
    if k != k2:
        raise ValueError(f"inner dimensions differ: {A.shape} vs {B.shape}")
    ab = A @ B
    r = sdp.numerical_rank(ab, floor)      # r is the rank of the product
    ub, sb, _ = np.linalg.svd(B, full_matrices=False)
    rb = int(np.sum(sb > sdp.rank_threshold(sb, B.shape, floor)))
    r = min(r, rb)
    if r == 0:
        return np.zeros((m, 0), dtype=complex), np.zeros((0, n), dtype=complex)
    ub = ub[:, :rb]
    ae = (A @ ub) @ ub.conj().T            # A restricted to the range of B
    _, _, vh = np.linalg.svd(ae, full_matrices=False)
    w = vh[:r].conj().T                    # isometry onto the support of AE
    return A @ w, w.conj().T @ B


def scale_split(t: MatrixLike) -> Tuple[np.ndarray, np.ndarray]:
    """Split T = R D(xi) with xi the nonnegative column norms of T and the
    nonzero columns of R normalized to norm one (zero columns stay zero)."""
    T = as_matrix(t).a
    xi = np.sqrt(np.sum(np.abs(T) ** 2, axis=0))
    r = T.copy()
    nz = xi > 0
    r[:, nz] = r[:, nz] / xi[nz]
    return r, xi


# ---------------------------------------------------------------------------
# witness extraction per factorization shape
# ---------------------------------------------------------------------------

def _unit(v: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        out = np.zeros_like(v)
        out[0] = 1.0
        return out
    return v / nrm


def _diag_pinv(v: np.ndarray, rel: float = 1e-12) -> np.ndarray:
    cut = rel * (np.max(v) if v.size else 0.0)
    out = np.zeros_like(v)
    nz = v > cut
    out[nz] = 1.0 / v[nz]
    return out


def _gram_split(w: np.ndarray, viol_tol: float = 1e-6) -> np.ndarray:
    """psd_factor of an interior-point block witness.

    Witnesses are PSD only to solver tolerance; a diagonal shift absorbs the
    violation (it perturbs the factor column norms, never the pinned data
    block).  Violations beyond viol_tol relative mean the witness is unusable.
    """
    sym = (w + w.conj().T) / 2.0
    wmin = float(np.linalg.eigvalsh(sym)[0])
    scale = max(float(np.linalg.norm(sym, 2)), 1e-300)
    if wmin < -viol_tol * scale:
        raise FactorizationError(
            f"witness PSD violation {wmin:.3e} beyond {viol_tol:.0e} relative"
        )
    if wmin < 0.0:
        sym = sym + (-wmin) * (1.0 + 1e-6) * np.eye(sym.shape[0])
    return sdp.psd_factor(sym)


def schur_factor(x: MatrixLike, cert: NormCertificate) -> Factorization:
    """Extract X = L*R with ||L||_c ||R||_c equal to the multiplier norm.

    Gram-factors the certificate's PSD block [[P, X], [X*, Q]] and rank-reduces
    the split, so rank(L) = rank(R) = rank(X).
    """
    X = as_matrix(x).a
    m, n = X.shape
    p, q = cert.primal_witness["P"], cert.primal_witness["Q"]
    w = np.block([[p, X], [X.conj().T, q]])
    g = _gram_split(w)
    gl, gr = g[:, :m], g[:, m:]
    lfull, rfull = rank_reduce(gl.conj().T, gr)
    fact = Factorization(
        kind="S",
        factors={"L": lfull.conj().T, "R": rfull},
        rank=lfull.shape[1],
        cost=col_norm(lfull.conj().T) * col_norm(rfull) if lfull.size else 0.0,
    )
    return _check_reconstruction(fact, X)


def fx_factor(x: MatrixLike, cert: NormCertificate) -> Factorization:
    """Extract X = C D(xi) from the diagonal-majorization witness v:
    xi = sqrt(v) normalized, C = X D(xi)^+."""
    X = as_matrix(x).a
    v = np.asarray(cert.primal_witness["v"], dtype=float)
    xi = _unit(np.sqrt(np.clip(v, 0.0, None)))
    c = X * _diag_pinv(xi)[None, :]
    fact = Factorization(
        kind="F",
        factors={"C": c, "xi": xi},
        rank=sdp.numerical_rank(X),
        cost=op_norm(c) if np.linalg.norm(X) else 0.0,
    )
    return _check_reconstruction(fact, X)


def gx_factor(x: MatrixLike, cert: NormCertificate) -> Factorization:
    """Extract X = D(eta) D, the row-sided mirror of fx_factor."""
    X = as_matrix(x).a
    w = np.asarray(cert.primal_witness["w"], dtype=float)
    eta = _unit(np.sqrt(np.clip(w, 0.0, None)))
    d = _diag_pinv(eta)[:, None] * X
    fact = Factorization(
        kind="G",
        factors={"eta": eta, "D": d},
        rank=sdp.numerical_rank(X),
        cost=op_norm(d) if np.linalg.norm(X) else 0.0,
    )
    return _check_reconstruction(fact, X)


def bilinear_factor(x: MatrixLike, cert: NormCertificate) -> Factorization:
    """Extract X = D(eta)* C D(xi) from the diagonal-block witness (p, q)."""
    X = as_matrix(x).a
    p = np.asarray(cert.primal_witness["p"], dtype=float)
    q = np.asarray(cert.primal_witness["q"], dtype=float)
    eta = _unit(np.sqrt(np.clip(p, 0.0, None)))
    xi = _unit(np.sqrt(np.clip(q, 0.0, None)))
    c = _diag_pinv(eta)[:, None] * X * _diag_pinv(xi)[None, :]
    fact = Factorization(
        kind="B",
        factors={"eta": eta, "C": c, "xi": xi},
        rank=sdp.numerical_rank(X),
        cost=op_norm(c) if np.linalg.norm(X) else 0.0,
    )
    return _check_reconstruction(fact, X)


def tx_factor(x: MatrixLike, cert: NormCertificate) -> Factorization:
    """Extract X = D(gamma) L*R from the mixed trace/diagonal witness (P, Q).

    gamma collects the row scales sqrt(P_ii); the remaining L*R part is
    Gram-factored from the block witness and rank-reduced, so
    rank(L) = rank(R) = rank(X).
    """
    X = as_matrix(x).a
    m, n = X.shape
    p, q = cert.primal_witness["P"], cert.primal_witness["Q"]
    gamma0 = np.sqrt(np.clip(np.real(np.diag(p)), 0.0, None))
    total = np.linalg.norm(gamma0)
    if total == 0.0 or np.linalg.norm(X) == 0.0:
        fact = Factorization(
            kind="T",
            factors={"gamma": np.zeros(m), "L": np.zeros((0, m), dtype=complex),
                     "R": np.zeros((0, n), dtype=complex)},
            rank=0,
            cost=0.0,
        )
        return _check_reconstruction(fact, X)
    gamma = gamma0 / total
    w = np.block([[p, X], [X.conj().T, q]])
    g = _gram_split(w)
    # pull D(gamma)^-1 through the first block, then reduce the rank
    support = gamma0 > 1e-9 * total
    scale = np.where(support, _diag_pinv(gamma), 0.0)
    a = scale[:, None] * g[:, :m].conj().T
    lfull, rfull = rank_reduce(a, g[:, m:])
    fact = Factorization(
        kind="T",
        factors={"gamma": gamma, "L": lfull.conj().T, "R": rfull},
        rank=lfull.shape[1],
        cost=col_norm(lfull.conj().T) * col_norm(rfull) if lfull.size else 0.0,
    )
    return _check_reconstruction(fact, X)


_EXTRACTORS = {
    "S": schur_factor,
    "F": fx_factor,
    "G": gx_factor,
    "B": bilinear_factor,
    "T": tx_factor,
}


def factor(kind: str, x: MatrixLike, cert: NormCertificate) -> Factorization:
    """Dispatch to the factorization extractor for the given kind."""
    if kind not in _EXTRACTORS:
        raise ValueError(f"unknown factorization kind {kind!r}")
    return _EXTRACTORS[kind](x, cert)
