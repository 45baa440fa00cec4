"""Norm certificates for the four matrix interpretations.

Each completely bounded norm is computed by a semidefinite reformulation of
its factorization characterization and returns a certificate carrying the
optimal value, the primal block witness (from which the factorization modules
extract the actual factors), a dual pairing witness living in the polar unit
ball, and the measured duality gap:

* ``gamma2``  -- Schur multiplier: min ||L||_c ||R||_c over X = L*R.
* ``bx_cb``   -- bilinear form: min ||eta|| ||C|| ||xi|| over X = D(eta)* C D(xi).
* ``fx_cb`` / ``gx_cb`` -- vector maps: min ||C|| ||xi|| over X = C D(xi) and
  the row-sided mirror X = D(eta) D.
* ``tx_cb``   -- mixed map: min ||gamma|| ||L||_c ||R||_c over X = D(gamma) L*R,
  cross-validated at runtime against its polar characterization.

The classical norms are nonconvex; ``bx_norm``, ``fx_norm``, ``schur_norm_lb``
and ``tx_norm`` run seeded multistart ascent and report certified lower bounds
(exact only where enumeration is feasible).  All randomness flows through
counter-based per-start streams, so results do not depend on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from . import sdp
from .core import MatrixLike, as_matrix

__all__ = [
    "NormCertificate",
    "SearchConfig",
    "CrossValidationError",
    "gamma2",
    "bx_cb",
    "fx_cb",
    "gx_cb",
    "tx_cb",
    "bx_norm",
    "fx_norm",
    "gx_norm",
    "schur_norm_lb",
    "tx_norm",
    "cb_norm",
    "classical_norm",
]

ENUM_SIDE_LIMIT = 20       # exhaustive sign enumeration: one-sided, real data
ENUM_JOINT_LIMIT = 22      # exhaustive sign enumeration: both sides, complex data


class CrossValidationError(RuntimeError):
    """Primal SDP value and its polar dual characterization disagree."""


@dataclass
class NormCertificate:
    """A norm value with primal and dual witnesses.

    ``gap`` bounds |value - true norm| for SDP-based certificates; heuristic
    certificates set gap = 0 and flag ``meta['heuristic'] = True``, meaning the
    value is a certified lower bound attained by the witness but possibly below
    the true norm.
    """

    kind: str
    value: float
    primal_witness: dict
    dual_witness: dict
    gap: float
    meta: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return bool(self.meta.get("exact", False))


@dataclass(frozen=True)
class SearchConfig:
    """Multistart search parameters for the classical-norm oracles."""

    multistarts: int = 100
    phase_grid: int = 16
    seed: int = 0
    real_signs: bool = False
    sweeps: int = 300
    stall_tol: float = 1e-13


def _rng_for(seed: int, stream: int) -> np.random.Generator:
    # counter-based Philox keyed by (seed, stream): parallel-order independent
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


def _phase(z: np.ndarray) -> np.ndarray:
    out = np.ones_like(z)
    nz = z != 0
    out[nz] = z[nz] / np.abs(z[nz])
    return out


def _grid_phases(rng: np.random.Generator, size: int, k: int) -> np.ndarray:
    return np.exp(2j * np.pi * rng.integers(0, k, size=size) / k)


def _random_unimodular(rng: np.random.Generator, size: int, stream: int, k: int) -> np.ndarray:
    # alternate continuous starts with phase-grid candidates; the ascent that
    # follows is the local polish in either case
    if stream % 2 == 0:
        return _phase(rng.normal(size=size) + 1j * rng.normal(size=size))
    return _grid_phases(rng, size, max(2, k))


# ---------------------------------------------------------------------------
# SDP builders for the completely bounded norms
# ---------------------------------------------------------------------------

def _pin_block(d: int, row0: int, col0: int, x: np.ndarray, use_imag: bool):
    """Equality constraints pinning Z[row0:row0+m, col0:col0+n] to x."""
    m, n = x.shape
    cons = []
    for i in range(m):
        for j in range(n):
            cons.append((sdp.pin_real(d, row0 + i, col0 + j), float(x[i, j].real)))
            if use_imag:
                cons.append((sdp.pin_imag(d, row0 + i, col0 + j), float(x[i, j].imag)))
    return cons


def _pin_duals_to_matrix(eq_duals: np.ndarray, m: int, n: int, use_imag: bool) -> np.ndarray:
    """Reassemble the complex dual matrix of a pinned block (polar witness is -this)."""
    y = np.asarray(eq_duals, dtype=float)
    if use_imag:
        ymat = y[0::2] + 1j * y[1::2]
    else:
        ymat = y.astype(complex)
    return ymat.reshape(m, n)


def _zero_offdiag_pins(d: int, lo: int, hi: int, use_imag: bool):
    """Force the diagonal block Z[lo:hi, lo:hi] to be diagonal."""
    cons = []
    for i in range(lo, hi):
        for j in range(i + 1, hi):
            cons.append((sdp.pin_real(d, i, j), 0.0))
            if use_imag:
                cons.append((sdp.pin_imag(d, i, j), 0.0))
    return cons


def _solver_meta(sol: sdp.SdpSolution) -> dict:
    return {
        "exact": sol.status == "optimal",
        "heuristic": False,
        "status": sol.status,
        "solver": sol.meta,
    }


def _zero_cert(kind: str, primal: dict, dual: dict) -> NormCertificate:
    return NormCertificate(
        kind=kind, value=0.0, primal_witness=primal, dual_witness=dual, gap=0.0,
        meta={"exact": True, "heuristic": False, "status": "optimal", "solver": {}},
    )


def gamma2(x: MatrixLike, tol: float = sdp.DEFAULT_TOL) -> NormCertificate:
    """Factorization norm min ||L||_c ||R||_c over X = L*R.

    Equals both the Schur multiplier norm and its completely bounded norm.
    SDP: min t with [[P, X], [X*, Q]] >= 0 and all diagonal entries of P, Q
    at most t.  Dual witness: Y with ||B_Y||_cb <= 1 attaining <X, Y>.
    """
    X = as_matrix(x).a
    m, n = X.shape
    s = float(np.linalg.norm(X))
    if s == 0.0:
        return _zero_cert("S-cb", {"P": np.zeros((m, m)), "Q": np.zeros((n, n))},
                          {"Y": np.zeros((m, n)), "pairing": 0.0})
    xn = X / s                         # solve at unit scale, rescale after
    use_imag = bool(np.any(X.imag != 0))
    d = m + n + 1                      # trailing 1x1 block carries t
    c = np.zeros((d, d), dtype=complex)
    c[d - 1, d - 1] = 1.0
    eq = _pin_block(d, 0, m, xn, use_imag)
    ineq = []
    for k in range(m + n):
        a = np.zeros((d, d), dtype=complex)
        a[k, k] = 1.0
        a[d - 1, d - 1] = -1.0
        ineq.append((a, 0.0))
    sol = sdp.solve(sdp.SdpProblem(d, c, tuple(eq), tuple(ineq)), tol=tol)
    value = s * max(sol.primal_value, 0.0)
    p = s * sol.z[:m, :m]
    q = s * sol.z[m:m + n, m:m + n]
    y = -_pin_duals_to_matrix(sol.eq_duals, m, n, use_imag)
    return NormCertificate(
        kind="S-cb",
        value=value,
        primal_witness={"P": p, "Q": q},
        dual_witness={"Y": y, "pairing": float(np.real(np.sum(np.conj(y) * X)))},
        gap=s * abs(sol.gap),
        meta=_solver_meta(sol),
    )


def bx_cb(x: MatrixLike, tol: float = sdp.DEFAULT_TOL) -> NormCertificate:
    """Completely bounded bilinear-form norm.

    min ||eta||_2 ||C||_inf ||xi||_2 over X = D(eta)* C D(xi), solved as
    min (sum p + sum q)/2 with [[D(p), X], [X*, D(q)]] >= 0.  Dual witness:
    Y with gamma2(Y) <= 1 attaining <X, Y> (the polar relation).
    """
    X = as_matrix(x).a
    m, n = X.shape
    s = float(np.linalg.norm(X))
    if s == 0.0:
        return _zero_cert("B-cb", {"p": np.zeros(m), "q": np.zeros(n)},
                          {"Y": np.zeros((m, n)), "pairing": 0.0})
    xn = X / s
    use_imag = bool(np.any(X.imag != 0))
    d = m + n
    c = 0.5 * np.eye(d, dtype=complex)
    eq = _pin_block(d, 0, m, xn, use_imag)
    npins = len(eq)
    eq += _zero_offdiag_pins(d, 0, m, use_imag)
    eq += _zero_offdiag_pins(d, m, d, use_imag)
    sol = sdp.solve(sdp.SdpProblem(d, c, tuple(eq)), tol=tol)
    value = s * max(sol.primal_value, 0.0)
    p = s * np.clip(np.real(np.diag(sol.z))[:m], 0.0, None)
    q = s * np.clip(np.real(np.diag(sol.z))[m:], 0.0, None)
    y = -_pin_duals_to_matrix(sol.eq_duals[:npins], m, n, use_imag)
    return NormCertificate(
        kind="B-cb",
        value=value,
        primal_witness={"p": p, "q": q},
        dual_witness={"Y": y, "pairing": float(np.real(np.sum(np.conj(y) * X)))},
        gap=s * abs(sol.gap),
        meta=_solver_meta(sol),
    )


def _diag_majorize_cb(gram: np.ndarray, tol: float):
    """min sum(v) with D(v) >= gram, plus the dual correlation matrix."""
    n = gram.shape[0]
    use_imag = bool(np.any(gram.imag != 0))
    c = np.eye(n, dtype=complex)
    eq = []
    for i in range(n):
        for j in range(i + 1, n):
            eq.append((sdp.pin_real(n, i, j), float(-gram[i, j].real)))
            if use_imag:
                eq.append((sdp.pin_imag(n, i, j), float(-gram[i, j].imag)))
    sol = sdp.solve(sdp.SdpProblem(n, c, tuple(eq)), tol=tol)
    shift = float(np.real(np.trace(gram)))
    v = np.clip(np.real(np.diag(sol.z)) + np.real(np.diag(gram)), 0.0, None)
    value_sq = max(sol.primal_value + shift, 0.0)
    dual_sq = max(sol.dual_value + shift, 0.0)
    corr = sol.dual_slack            # PSD with unit diagonal
    return value_sq, dual_sq, v, corr, sol


def fx_cb(x: MatrixLike, tol: float = sdp.DEFAULT_TOL) -> NormCertificate:
    """Completely bounded norm of the vector map a |-> Xa.

    value^2 = min sum(v) with D(v) >= X*X; the witness scaling vector v gives
    the column factorization X = C D(xi).  Dual witness: a correlation matrix
    S and Y = X S / value, which lies in the mixed-map cb unit ball and attains
    the pairing (the other polar relation).
    """
    X = as_matrix(x).a
    m, n = X.shape
    s = float(np.linalg.norm(X))
    if s == 0.0:
        return _zero_cert("F-cb", {"v": np.zeros(n)}, {"corr": np.eye(n) + 0j})
    value_sq, dual_sq, v, corr, sol = _diag_majorize_cb((X.conj().T @ X) / s ** 2, tol)
    value = s * float(np.sqrt(value_sq))
    y = X @ corr / value
    dual_witness = {
        "corr": corr,
        "Y": y,
        "pairing": float(np.real(np.sum(np.conj(y) * X))),
    }
    return NormCertificate(
        kind="F-cb",
        value=value,
        primal_witness={"v": s ** 2 * v},
        dual_witness=dual_witness,
        gap=s * abs(float(np.sqrt(value_sq)) - float(np.sqrt(dual_sq))),
        meta=_solver_meta(sol),
    )


def gx_cb(x: MatrixLike, tol: float = sdp.DEFAULT_TOL) -> NormCertificate:
    """Row-sided mirror of fx_cb: value^2 = min sum(w) with D(w) >= XX*."""
    X = as_matrix(x).a
    m, n = X.shape
    s = float(np.linalg.norm(X))
    if s == 0.0:
        return _zero_cert("G-cb", {"w": np.zeros(m)}, {"corr": np.eye(m) + 0j})
    value_sq, dual_sq, w, corr, sol = _diag_majorize_cb((X @ X.conj().T) / s ** 2, tol)
    value = s * float(np.sqrt(value_sq))
    y = corr @ X / value
    dual_witness = {
        "corr": corr,
        "Y": y,
        "pairing": float(np.real(np.sum(np.conj(y) * X))),
    }
    return NormCertificate(
        kind="G-cb",
        value=value,
        primal_witness={"w": s ** 2 * w},
        dual_witness=dual_witness,
        gap=s * abs(float(np.sqrt(value_sq)) - float(np.sqrt(dual_sq))),
        meta=_solver_meta(sol),
    )


def tx_cb(x: MatrixLike, tol: float = sdp.DEFAULT_TOL, cross_tol: float = 1e-5) -> NormCertificate:
    """Completely bounded norm of the mixed map (a, B) |-> (X o B)^T a.

    value^2 = min Tr(P) with [[P, X], [X*, Q]] >= 0 and diag(Q) <= 1.  This
    reformulation is cross-validated at runtime against the polar
    characterization value = max |<X, Y>| over the F-map cb unit ball; a
    mismatch beyond cross_tol raises CrossValidationError.
    """
    X = as_matrix(x).a
    m, n = X.shape
    s = float(np.linalg.norm(X))
    if s == 0.0:
        return _zero_cert("T-cb", {"P": np.zeros((m, m)), "Q": np.zeros((n, n))}, {})
    xn = X / s
    use_imag = bool(np.any(X.imag != 0))
    d = m + n
    c = np.zeros((d, d), dtype=complex)
    c[:m, :m] = np.eye(m)
    eq = _pin_block(d, 0, m, xn, use_imag)
    ineq = []
    for j in range(n):
        a = np.zeros((d, d), dtype=complex)
        a[m + j, m + j] = 1.0
        ineq.append((a, 1.0))
    sol = sdp.solve(sdp.SdpProblem(d, c, tuple(eq), tuple(ineq)), tol=tol)
    value = s * float(np.sqrt(max(sol.primal_value, 0.0)))
    p = s ** 2 * sol.z[:m, :m]
    q = sol.z[m:, m:]
    gap_sq = s ** 2 * abs(sol.gap)
    gap = gap_sq / (2.0 * value) if value > 1e-12 * s else float(np.sqrt(gap_sq))
    dual_witness = {}
    meta = _solver_meta(sol)
    yraw = -_pin_duals_to_matrix(sol.eq_duals, m, n, use_imag)
    if np.linalg.norm(yraw) > 1e-12:
        fcert = fx_cb(yraw, tol=tol)
        if fcert.value > 1e-12:
            yhat = yraw / fcert.value
            cross = abs(complex(np.sum(np.conj(yhat) * X)))
            dual_witness = {"Y": yhat, "pairing": cross}
            meta["cross_check"] = cross
            if abs(cross - value) > cross_tol * (1.0 + value):
                raise CrossValidationError(
                    f"primal {value:.9g} vs polar dual {cross:.9g} differ beyond {cross_tol:g}"
                )
    return NormCertificate(
        kind="T-cb",
        value=value,
        primal_witness={"P": p, "Q": q},
        dual_witness=dual_witness,
        gap=gap,
        meta=meta,
    )


# ---------------------------------------------------------------------------
# classical norms: multistart ascent / enumeration oracles
# ---------------------------------------------------------------------------

def _heuristic_meta(cfg: SearchConfig, exact: bool, method: str) -> dict:
    return {
        "exact": exact,
        "heuristic": not exact,
        "method": method,
        "multistarts": cfg.multistarts,
        "seed": cfg.seed,
        "real_signs": cfg.real_signs,
    }


def _sign_chunks(n: int, chunk: int = 1 << 13):
    """All vectors in {+1, -1}^n, yielded as (size, n) blocks."""
    total = 1 << n
    cols = np.arange(n)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))[:, None]
        yield 1.0 - 2.0 * ((idx >> cols) & 1)


def _bx_enum_real(X: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    # enumerate signs on the smaller side; the other side separates for real X
    transposed = X.shape[1] > X.shape[0]
    w = X.T if transposed else X
    wr = w.real
    best, best_b = -1.0, None
    for signs in _sign_chunks(wr.shape[1]):
        vals = np.abs(wr @ signs.T).sum(axis=0)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, best_b = float(vals[k]), signs[k].copy()
    a = np.sign(wr @ best_b)
    a[a == 0] = 1.0
    if transposed:
        a, best_b = best_b, a
    return best, a.astype(complex), best_b.astype(complex)


def _bx_enum_joint(X: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    # enumerate the smaller side in full, the larger side in blocks sized to
    # keep the score table bounded
    transposed = X.shape[0] > X.shape[1]
    w = X.T if transposed else X
    m, n = w.shape
    signs_a = np.concatenate(list(_sign_chunks(m)), axis=0)
    chunk = max(1, (1 << 21) >> m)
    best, best_a, best_b = -1.0, None, None
    for signs_b in _sign_chunks(n, chunk=chunk):
        u = w @ signs_b.T                      # (m, chunk)
        vals = np.abs(signs_a @ u)             # (2^m, chunk)
        k = int(np.argmax(vals))
        ia, ib = np.unravel_index(k, vals.shape)
        if vals[ia, ib] > best:
            best = float(vals[ia, ib])
            best_a, best_b = signs_a[ia].copy(), signs_b[ib].copy()
    if transposed:
        best_a, best_b = best_b, best_a
    return best, best_a.astype(complex), best_b.astype(complex)


def _bx_ascent(X: np.ndarray, b0: np.ndarray, cfg: SearchConfig) -> Tuple[float, np.ndarray, np.ndarray]:
    scale = np.abs(X).sum() + 1e-300
    b = b0.copy()
    val = -np.inf
    for _ in range(cfg.sweeps):
        u = X @ b
        a = np.conj(_phase(u))
        w = X.T @ a
        b = np.conj(_phase(w))
        new = float(np.abs(w).sum())
        if new <= val + cfg.stall_tol * scale:
            val = max(val, new)
            break
        val = new
    u = X @ b
    return float(np.abs(u).sum()), np.conj(_phase(u)), b


def _sign_flip_ascent(X: np.ndarray, a0: np.ndarray, b0: np.ndarray, cfg: SearchConfig):
    # greedy +-1 coordinate flips on |a^T X b| until a local maximum
    a, b = a0.copy(), b0.copy()
    val = abs(complex(a @ X @ b))
    improved = True
    sweeps = 0
    while improved and sweeps < cfg.sweeps:
        improved = False
        sweeps += 1
        for i in range(len(a)):
            a[i] = -a[i]
            new = abs(complex(a @ X @ b))
            if new > val + 1e-15:
                val, improved = new, True
            else:
                a[i] = -a[i]
        for j in range(len(b)):
            b[j] = -b[j]
            new = abs(complex(a @ X @ b))
            if new > val + 1e-15:
                val, improved = new, True
            else:
                b[j] = -b[j]
    return val, a, b


def bx_norm(x: MatrixLike, config: SearchConfig = SearchConfig()) -> NormCertificate:
    """Classical bilinear-form norm max |sum X_ij a_i b_j| over unit-modulus entries.

    Equals max over unimodular b of ||Xb||_1.  Alternating phase iteration with
    multistart; with ``real_signs`` both arguments are restricted to +-1 and the
    value is exact (enumeration) whenever the size permits.
    """
    X = as_matrix(x).a
    m, n = X.shape
    if config.real_signs:
        if np.all(X.imag == 0) and min(m, n) <= ENUM_SIDE_LIMIT:
            val, a, b = _bx_enum_real(X)
            method = "sign-enumeration"
            exact = True
        elif m + n <= ENUM_JOINT_LIMIT:
            val, a, b = _bx_enum_joint(X)
            method = "sign-enumeration-joint"
            exact = True
        else:
            val, a, b = -1.0, None, None
            for k in range(config.multistarts):
                rng = _rng_for(config.seed, k)
                a0 = np.where(rng.random(m) < 0.5, -1.0, 1.0).astype(complex)
                b0 = np.where(rng.random(n) < 0.5, -1.0, 1.0).astype(complex)
                v, aa, bb = _sign_flip_ascent(X, a0, b0, config)
                if v > val:
                    val, a, b = v, aa, bb
            method = "sign-flip-ascent"
            exact = False
        return NormCertificate(
            kind="B-classical",
            value=float(val),
            primal_witness={"a": a, "b": b},
            dual_witness={},
            gap=0.0,
            meta=_heuristic_meta(config, exact, method),
        )

    starts = [np.ones(n, dtype=complex)]
    if min(m, n) >= 1:
        _, _, vh = np.linalg.svd(X)
        starts.append(np.conj(_phase(vh[0].conj())))
    val, a, b = -1.0, None, None
    for k in range(config.multistarts):
        if k < len(starts):
            b0 = starts[k]
        else:
            rng = _rng_for(config.seed, k)
            b0 = _random_unimodular(rng, n, k, config.phase_grid)
        v, aa, bb = _bx_ascent(X, b0, config)
        if v > val:
            val, a, b = v, aa, bb
    return NormCertificate(
        kind="B-classical",
        value=float(val),
        primal_witness={"a": a, "b": b},
        dual_witness={},
        gap=0.0,
        meta=_heuristic_meta(config, False, "alternating-phase"),
    )


def _phase_ascent_quadratic(mmat: np.ndarray, a0: np.ndarray, cfg: SearchConfig) -> Tuple[float, np.ndarray]:
    """Monotone coordinate ascent of a* M a over unimodular a (M Hermitian PSD)."""
    nloc = mmat.shape[0]
    a = a0.copy()
    val = float(np.real(np.conj(a) @ mmat @ a))
    scale = float(np.trace(np.abs(mmat))) + 1e-300
    for _ in range(cfg.sweeps):
        prev = val
        for j in range(nloc):
            cj = mmat[j] @ a - mmat[j, j] * a[j]
            if cj != 0:
                a[j] = cj / abs(cj)
        val = float(np.real(np.conj(a) @ mmat @ a))
        if val <= prev + cfg.stall_tol * scale:
            break
    return val, a


def _fx_enum_signs(X: np.ndarray) -> Tuple[float, np.ndarray]:
    best, best_a = -1.0, None
    for signs in _sign_chunks(X.shape[1]):
        vals = np.linalg.norm(X @ signs.T, axis=0)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, best_a = float(vals[k]), signs[k].copy()
    return best, best_a.astype(complex)


def fx_norm(x: MatrixLike, config: SearchConfig = SearchConfig()) -> NormCertificate:
    """Classical norm of the vector map: max ||Xa||_2 over |a_j| <= 1."""
    X = as_matrix(x).a
    n = X.shape[1]
    if config.real_signs:
        if n <= ENUM_SIDE_LIMIT:
            val, a = _fx_enum_signs(X)
            return NormCertificate(
                kind="F-classical", value=val, primal_witness={"a": a}, dual_witness={},
                gap=0.0, meta=_heuristic_meta(config, True, "sign-enumeration"),
            )
        # fall through to phase ascent rounded to signs
    mmat = X.conj().T @ X
    starts = [np.ones(n, dtype=complex)]
    w, u = np.linalg.eigh(mmat)
    starts.append(_phase(u[:, -1]))
    val, a = -1.0, None
    for k in range(config.multistarts):
        if k < len(starts):
            a0 = starts[k]
        else:
            rng = _rng_for(config.seed, k)
            a0 = _random_unimodular(rng, n, k, config.phase_grid)
        v, aa = _phase_ascent_quadratic(mmat, a0, config)
        if v > val:
            val, a = v, aa
    if config.real_signs:
        a = np.sign(a.real)
        a[a == 0] = 1.0
        a = a.astype(complex)
        val = float(np.linalg.norm(X @ a)) ** 2
        method = "phase-ascent-sign-rounded"
    else:
        method = "phase-coordinate-ascent"
    return NormCertificate(
        kind="F-classical",
        value=float(np.sqrt(max(val, 0.0))),
        primal_witness={"a": a},
        dual_witness={},
        gap=0.0,
        meta=_heuristic_meta(config, False, method),
    )


def gx_norm(x: MatrixLike, config: SearchConfig = SearchConfig()) -> NormCertificate:
    """Classical norm of the row map: max ||X^T a||_2 over |a_i| <= 1."""
    X = as_matrix(x).a
    cert = fx_norm(X.T, config)
    cert.kind = "G-classical"
    return cert


def _contraction_argmax(coeff: np.ndarray) -> np.ndarray:
    """argmax over ||A||_inf <= 1 of Re sum coeff_ij A_ij (nuclear-norm step)."""
    u, _, vh = np.linalg.svd(coeff.T, full_matrices=False)
    return vh.conj().T @ u.conj().T


def schur_norm_lb(x: MatrixLike, config: SearchConfig = SearchConfig()) -> NormCertificate:
    """Heuristic lower bound for the Schur multiplier norm.

    Alternating ascent of ||X o A||_inf over contractions A: top singular pair
    of X o A, then the exact linearized argmax over the unit ball.
    """
    X = as_matrix(x).a
    m, n = X.shape
    scale = np.linalg.norm(X)
    if scale == 0.0:
        return NormCertificate(
            kind="S-classical", value=0.0,
            primal_witness={"A": np.zeros_like(X)}, dual_witness={},
            gap=0.0, meta=_heuristic_meta(config, True, "zero"),
        )

    def ascent(a0):
        amat = a0
        val = -np.inf
        for _ in range(config.sweeps):
            za = X * amat
            u, s, vh = np.linalg.svd(za)
            new = float(s[0])
            if new <= val + config.stall_tol * scale:
                val = max(val, new)
                break
            val = new
            coeff = np.conj(u[:, 0])[:, None] * X * np.conj(vh[0])[None, :]
            amat = _contraction_argmax(coeff)
        return val, amat

    phase_start = _phase(np.conj(X))
    starts = [phase_start / max(np.linalg.norm(phase_start, 2), 1e-300)]
    u, _, vh = np.linalg.svd(X)
    k = min(m, n)
    starts.append(u[:, :k] @ vh[:k, :])
    val, best = -1.0, None
    for s in range(config.multistarts):
        if s < len(starts):
            a0 = starts[s]
        else:
            rng = _rng_for(config.seed, s)
            g = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
            a0 = g / np.linalg.norm(g, 2)
        v, amat = ascent(a0)
        if v > val:
            val, best = v, amat
    return NormCertificate(
        kind="S-classical",
        value=float(val),
        primal_witness={"A": best},
        dual_witness={},
        gap=0.0,
        meta=_heuristic_meta(config, False, "alternating-svd"),
    )


def tx_norm(x: MatrixLike, config: SearchConfig = SearchConfig()) -> NormCertificate:
    """Classical norm of the mixed map: max ||(X o B)^T a||_2 over |a_i| <= 1,
    ||B||_inf <= 1, alternating the phase ascent in a with the contraction
    ascent in B."""
    X = as_matrix(x).a
    m, n = X.shape
    scale = np.linalg.norm(X)
    if scale == 0.0:
        return NormCertificate(
            kind="T-classical", value=0.0,
            primal_witness={"a": np.ones(m, dtype=complex), "B": np.zeros_like(X)},
            dual_witness={}, gap=0.0, meta=_heuristic_meta(config, True, "zero"),
        )

    def value_of(a, bmat):
        return float(np.linalg.norm((X * bmat).T @ a))

    def ascent(a0, b0):
        a, bmat = a0.copy(), b0
        val = -np.inf
        for _ in range(config.sweeps):
            z = X * bmat
            mloc = np.conj(z) @ z.T            # (Z^T)* (Z^T), Hermitian PSD
            _, a = _phase_ascent_quadratic(mloc, a, config)
            w = (X * bmat).T @ a
            nw = np.linalg.norm(w)
            if nw > 0:
                w = w / nw
            coeff = a[:, None] * X * np.conj(w)[None, :]
            bmat = _contraction_argmax(coeff)
            new = value_of(a, bmat)
            if new <= val + config.stall_tol * scale:
                val = max(val, new)
                break
            val = new
        return val, a, bmat

    phase_start = _phase(np.conj(X))
    starts = [
        (np.ones(m, dtype=complex), phase_start / max(np.linalg.norm(phase_start, 2), 1e-300)),
    ]
    u, _, vh = np.linalg.svd(X)
    k = min(m, n)
    starts.append((np.ones(m, dtype=complex), u[:, :k] @ vh[:k, :]))
    val, best_a, best_b = -1.0, None, None
    for s in range(config.multistarts):
        if s < len(starts):
            a0, b0 = starts[s]
        else:
            rng = _rng_for(config.seed, s)
            a0 = _random_unimodular(rng, m, s, config.phase_grid)
            g = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
            b0 = g / np.linalg.norm(g, 2)
        v, a, bmat = ascent(a0, b0)
        if v > val:
            val, best_a, best_b = v, a, bmat
    return NormCertificate(
        kind="T-classical",
        value=float(val),
        primal_witness={"a": best_a, "B": best_b},
        dual_witness={},
        gap=0.0,
        meta=_heuristic_meta(config, False, "alternating-phase-contraction"),
    )


# ---------------------------------------------------------------------------
# dispatch used by the CLI
# ---------------------------------------------------------------------------

_CB = {"F": fx_cb, "G": gx_cb, "B": bx_cb, "S": gamma2, "T": tx_cb}
_CLASSICAL = {"F": fx_norm, "G": gx_norm, "B": bx_norm, "S": schur_norm_lb, "T": tx_norm}


def cb_norm(kind: str, x: MatrixLike, tol: float = sdp.DEFAULT_TOL) -> NormCertificate:
    """Completely bounded norm of interpretation kind F, G, B, S or T."""
    if kind not in _CB:
        raise ValueError(f"unknown interpretation kind {kind!r}")
    return _CB[kind](x, tol=tol)


def classical_norm(kind: str, x: MatrixLike, config: SearchConfig = SearchConfig()) -> NormCertificate:
    """Classical norm of interpretation kind F, G, B, S or T."""
    if kind not in _CLASSICAL:
        raise ValueError(f"unknown interpretation kind {kind!r}")
    return _CLASSICAL[kind](x, config)
