"""Hermitian eigensolver, PSD utilities, and a small dense semidefinite-program
layer with primal/dual certificates.

Problems are stated over a single Hermitian PSD variable Z:

    minimize    Re<C, Z>
    subject to  Re<A_k, Z> == b_k   (equalities)
                Re<A_l, Z> <= b_l   (inequalities)
                Z >= 0

with <A, B> = Tr(B* A).  The conic core is Clarabel's interior-point solver;
this module owns the Hermitian -> real-symmetric embedding, the scaled-triangle
vectorization, dual extraction, and the gap/residual based status contract.
Returned solutions always satisfy weak duality up to solver tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import clarabel
import numpy as np
from scipy import sparse

__all__ = [
    "SdpProblem",
    "SdpSolution",
    "SdpError",
    "NonHermitianError",
    "IndefiniteError",
    "herm_eig",
    "psd_factor",
    "numerical_rank",
    "rank_threshold",
    "solve",
]

EPS = 2.0 ** -52
RANK_FLOOR = 1e-9          # absolute floor for numerical-rank decisions
DEFAULT_TOL = 1e-8
MAX_ITER = 500


class SdpError(RuntimeError):
    """Solver failed to produce a usable iterate."""


class NonHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class IndefiniteError(ValueError):
    """Input matrix has an eigenvalue below the PSD tolerance."""


# ---------------------------------------------------------------------------
# eigensolver and PSD utilities
# ---------------------------------------------------------------------------

def herm_eig(m, herm_tol: float = 1e-10) -> Tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition M = U diag(w) U* of a Hermitian matrix.

    Returns eigenvalues ascending and a unitary U.  Raises NonHermitianError
    if ||M - M*|| exceeds herm_tol relative to ||M||.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got shape {a.shape}")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > herm_tol * max(scale, 1e-300):
        raise NonHermitianError("matrix is not Hermitian within tolerance")
    w, u = np.linalg.eigh((a + a.conj().T) / 2.0)
    return w, u


def psd_factor(m, psd_tol: float = 1e-9) -> np.ndarray:
    """Gram factor F with F*F = M for Hermitian PSD M.

    F has one row per eigenvalue above the relative rank cut, so its row count
    is the numerical rank of M.  Eigenvalues in [-psd_tol*||M||, 0) are clipped
    to zero; anything lower raises IndefiniteError.
    """
    w, u = herm_eig(m)
    d = w.shape[0]
    scale = float(np.max(np.abs(w))) if d else 0.0
    if scale > 0.0 and w[0] < -psd_tol * scale:
        raise IndefiniteError(f"matrix has eigenvalue {w[0]:.3e} < -{psd_tol:.1e}*||M||")
    w = np.clip(w, 0.0, None)
    keep = w > d * EPS * scale
    return (np.sqrt(w[keep])[:, None] * u[:, keep].conj().T)


def rank_threshold(sigmas: np.ndarray, shape: Tuple[int, int], floor: float = RANK_FLOOR) -> float:
    """Singular-value cutoff: max(max(m,n) * 2^-52 * sigma_max, floor)."""
    smax = float(sigmas[0]) if len(sigmas) else 0.0
    return max(max(shape) * EPS * smax, floor)


def numerical_rank(a, floor: float = RANK_FLOOR) -> int:
    """Number of singular values above the rank threshold."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > rank_threshold(s, a.shape, floor)))


# ---------------------------------------------------------------------------
# problem / solution containers
# ---------------------------------------------------------------------------

def _check_hermitian(a: np.ndarray, what: str):
    if np.linalg.norm(a - a.conj().T) > 1e-12 * max(np.linalg.norm(a), 1.0):
        raise NonHermitianError(f"{what} must be Hermitian")


@dataclass(frozen=True)
class SdpProblem:
    """Linear-matrix-inequality minimization over one Hermitian PSD variable."""

    dim: int
    objective: np.ndarray
    eq: Tuple[Tuple[np.ndarray, float], ...] = ()
    ineq: Tuple[Tuple[np.ndarray, float], ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        c = np.asarray(self.objective, dtype=np.complex128)
        if c.shape != (self.dim, self.dim):
            raise ValueError(f"objective shape {c.shape} != ({self.dim},{self.dim})")
        _check_hermitian(c, "objective")
        object.__setattr__(self, "objective", c)
        for name in ("eq", "ineq"):
            fixed = []
            for a, b in getattr(self, name):
                a = np.asarray(a, dtype=np.complex128)
                if a.shape != (self.dim, self.dim):
                    raise ValueError(f"constraint shape {a.shape} != ({self.dim},{self.dim})")
                _check_hermitian(a, "constraint matrix")
                fixed.append((a, float(b)))
            object.__setattr__(self, name, tuple(fixed))


@dataclass
class SdpSolution:
    """Primal/dual solution with measured gap and residuals.

    Conventions: dual slack S = C + sum_k y_k A_k + sum_l lam_l A_l >= 0 with
    lam >= 0, and dual value -(sum_k y_k b_k + sum_l lam_l b_l) <= primal value.
    On status "infeasible" the multipliers hold the dual improving ray; on
    "max-iterations" all fields carry the best iterate reached.
    """

    z: np.ndarray
    eq_duals: np.ndarray
    ineq_duals: np.ndarray
    dual_slack: np.ndarray
    primal_value: float
    dual_value: float
    gap: float
    status: str                     # optimal | max-iterations | infeasible
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# scaled-triangle vectorization and the Hermitian embedding
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _svec_index(d: int):
    iu, ju = np.triu_indices(d)
    order = np.lexsort((iu, ju))          # column-major upper triangle
    ii, jj = iu[order], ju[order]
    w = np.where(ii == jj, 1.0, np.sqrt(2.0))
    return ii, jj, w


def _svec(a: np.ndarray) -> np.ndarray:
    ii, jj, w = _svec_index(a.shape[0])
    return a[ii, jj] * w


def _unsvec(v: np.ndarray, d: int) -> np.ndarray:
    ii, jj, w = _svec_index(d)
    out = np.zeros((d, d))
    out[ii, jj] = v / w
    out[jj, ii] = out[ii, jj]
    return out


def _embed(a: np.ndarray) -> np.ndarray:
    return np.block([[a.real, -a.imag], [a.imag, a.real]])


def _unembed(ahat: np.ndarray, d: int) -> np.ndarray:
    # average over the embedding symmetry before reading off real/imag parts
    b11, b12 = ahat[:d, :d], ahat[:d, d:]
    b21, b22 = ahat[d:, :d], ahat[d:, d:]
    u = (b11 + b22) / 2.0
    v = (b21 - b12) / 2.0
    z = u + 1j * v
    return (z + z.conj().T) / 2.0


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _is_real_problem(p: SdpProblem) -> bool:
    mats = [p.objective] + [a for a, _ in p.eq] + [a for a, _ in p.ineq]
    return all(np.all(m.imag == 0.0) for m in mats)


def solve(problem: SdpProblem, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SdpSolution:
    """Solve the SDP to a relative duality gap <= tol.

    status "optimal" certifies: relative gap <= tol and constraint residuals
    <= tol relative to the data scale.  On non-convergence the best iterate is
    returned with status "max-iterations"; detected infeasibility is reported
    as status "infeasible" with the improving-ray certificate in meta.
    """
    if not (0.0 < tol <= 1e-2):
        raise ValueError("tol must lie in (0, 1e-2]")
    d = problem.dim
    real = _is_real_problem(problem)
    dh = d if real else 2 * d
    scale_in = 1.0 if real else 0.5
    big = dh * (dh + 1) // 2

    def row(a: np.ndarray) -> np.ndarray:
        return scale_in * _svec(a.real if real else _embed(a))

    q = row(problem.objective)
    ne, ni = len(problem.eq), len(problem.ineq)
    rows = [row(a) for a, _ in problem.eq] + [row(a) for a, _ in problem.ineq]
    bvec = np.array([b for _, b in problem.eq] + [b for _, b in problem.ineq], dtype=float)

    blocks = []
    cones = []
    if rows:
        blocks.append(sparse.csc_matrix(np.asarray(rows)))
    if ne:
        cones.append(clarabel.ZeroConeT(ne))
    if ni:
        cones.append(clarabel.NonnegativeConeT(ni))
    blocks.append(-sparse.identity(big, format="csc"))
    cones.append(clarabel.PSDTriangleConeT(dh))
    amat = sparse.vstack(blocks, format="csc")
    b = np.concatenate([bvec, np.zeros(big)])

    settings = clarabel.DefaultSettings()
    settings.verbose = False
    settings.max_iter = max_iter
    solver_tol = min(max(tol * 1e-2, 1e-12), 1e-8)
    settings.tol_gap_abs = solver_tol
    settings.tol_gap_rel = solver_tol
    settings.tol_feas = solver_tol
    solver = clarabel.DefaultSolver(sparse.csc_matrix((big, big)), q, amat, b, cones, settings)
    sol = solver.solve()
    cl_status = str(sol.status)

    x = np.asarray(sol.x)
    zdual = np.asarray(sol.z)
    zhat = _unsvec(x, dh)
    z = zhat if real else _unembed(zhat, d)
    if real:
        z = (z + z.T) / 2.0 + 0j
    eq_duals = zdual[:ne].copy()
    ineq_duals = np.clip(zdual[ne:ne + ni], 0.0, None)

    slack = problem.objective.astype(np.complex128).copy()
    for y, (a, _) in zip(eq_duals, problem.eq):
        slack = slack + y * a
    for lam, (a, _) in zip(ineq_duals, problem.ineq):
        slack = slack + lam * a

    primal = float(np.real(np.sum(np.conj(problem.objective) * z)))
    dual = -float(eq_duals @ bvec[:ne] + ineq_duals @ bvec[ne:]) if (ne + ni) else primal
    gap = primal - dual

    bscale = 1.0 + (float(np.max(np.abs(bvec))) if ne + ni else 0.0)
    res_eq = 0.0
    for a, bk in problem.eq:
        res_eq = max(res_eq, abs(float(np.real(np.sum(np.conj(a) * z))) - bk))
    res_in = 0.0
    for a, bk in problem.ineq:
        res_in = max(res_in, max(0.0, float(np.real(np.sum(np.conj(a) * z))) - bk))
    relgap = abs(gap) / (1.0 + abs(primal))

    if cl_status in ("SolverStatus.PrimalInfeasible", "PrimalInfeasible"):
        status = "infeasible"
    elif relgap <= tol and res_eq <= tol * bscale and res_in <= tol * bscale:
        status = "optimal"
    else:
        status = "max-iterations"

    meta = {
        "solver": "clarabel",
        "solver_status": cl_status,
        "iterations": int(sol.iterations),
        "solve_time": float(sol.solve_time),
        "residual_eq": res_eq,
        "residual_ineq": res_in,
        "relative_gap": relgap,
        "real_embedding": real,
    }
    return SdpSolution(
        z=z,
        eq_duals=eq_duals,
        ineq_duals=ineq_duals,
        dual_slack=(slack + slack.conj().T) / 2.0,
        primal_value=primal,
        dual_value=dual,
        gap=gap,
        status=status,
        meta=meta,
    )


# ---------------------------------------------------------------------------
# constraint-matrix helpers used by the norm SDP builders
# ---------------------------------------------------------------------------

def pin_real(d: int, i: int, j: int) -> np.ndarray:
    """Hermitian A with Re<A, Z> = Re(Z_ij)."""
    a = np.zeros((d, d), dtype=np.complex128)
    a[i, j] += 0.5
    a[j, i] += 0.5
    return a


def pin_imag(d: int, i: int, j: int) -> np.ndarray:
    """Hermitian A with Re<A, Z> = Im(Z_ij)."""
    a = np.zeros((d, d), dtype=np.complex128)
    a[i, j] += 0.5j
    a[j, i] += -0.5j
    return a
