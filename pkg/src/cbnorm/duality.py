"""Machine checks of the polar-duality relations, unit-ball membership, the
trace-pairing identity, and the Grothendieck-ratio search.

Six unit balls are handled, tagged B, S, CB, CS, CF, CT: the classical
bilinear ball, the closed convex hull of unimodular rank-one matrices, and the
completely bounded balls of the bilinear form, the Schur multiplier, the
vector map and the mixed map.  Under the trace pairing <X, Y> = Tr(Y*X) the
three polar pairs checked here are (B, S), (CB, CS) and (CF, CT).

Membership in S cannot be decided exactly at finite sampling; it is bracketed
by a sampled-pairing lower bound and a column-generation LP upper bound over a
phase-grid dictionary of unimodular rank-one atoms, and reports carry the
bracket instead of a verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy import optimize

from . import factor as factor_mod
from . import norms
from .core import MatrixLike, as_matrix, pairing
from .norms import NormCertificate, SearchConfig

__all__ = [
    "BallKind",
    "MembershipReport",
    "PolarReport",
    "RatioReport",
    "membership",
    "sball_gauge_bracket",
    "sball_sample",
    "polar_check",
    "pairing_identity_check",
    "grothendieck_ratio",
    "amplification_witness",
]


class BallKind(str, enum.Enum):
    """The six unit balls: classical bilinear (B), unimodular rank-one hull (S),
    and the cb balls of the bilinear form (CB), Schur multiplier (CS),
    vector map (CF) and mixed map (CT)."""

    B = "B"
    S = "S"
    CB = "CB"
    CS = "CS"
    CF = "CF"
    CT = "CT"


@dataclass
class MembershipReport:
    ball: str
    status: str                  # inside | outside | boundary
    value: Optional[float]       # defining norm, when a single value exists
    bracket: Optional[Tuple[float, float]]
    gap: float                   # signed distance of the deciding value to 1
    certified: bool
    meta: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "ball": self.ball,
            "status": self.status,
            "value": self.value,
            "bracket": list(self.bracket) if self.bracket is not None else None,
            "gap": self.gap,
            "certified": self.certified,
            "meta": {k: v for k, v in self.meta.items() if not isinstance(v, np.ndarray)},
        }


def _rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


def _grid_round(z: np.ndarray, k: int) -> np.ndarray:
    """Nearest k-th roots of unity to the phases of z (zero maps to 1)."""
    ang = np.angle(z)
    steps = np.round(ang / (2 * np.pi / k))
    return np.exp(2j * np.pi * steps / k)


def _atom(l: np.ndarray, r: np.ndarray) -> np.ndarray:
    return np.conj(l)[:, None] * r[None, :]


# ---------------------------------------------------------------------------
# the hull ball: sampling and the gauge bracket
# ---------------------------------------------------------------------------

def sball_sample(m: int, n: int, rng: np.random.Generator, atoms: int = 6) -> np.ndarray:
    """A random element of the unimodular rank-one hull (gauge <= 1)."""
    weights = rng.dirichlet(np.ones(atoms))
    out = np.zeros((m, n), dtype=complex)
    for w in weights:
        l = np.exp(2j * np.pi * rng.random(m))
        r = np.exp(2j * np.pi * rng.random(n))
        out += w * _atom(l, r)
    return out


def _price_atom(wmat: np.ndarray, k: int, rng: np.random.Generator, rounds: int = 8):
    """Search the phase grid for the atom maximizing Re<atom coefficients, y>."""
    m, n = wmat.shape
    wc = np.conj(wmat)

    def score(l, r):
        return float(np.real(np.conj(l) @ (wc @ r)))

    best = (-np.inf, None, None)
    starts = []
    u, _, vh = np.linalg.svd(wc)
    starts.append(_grid_round(u[:, 0], k))
    for _ in range(4):
        starts.append(np.exp(2j * np.pi * rng.integers(0, k, size=m) / k))
    for l in starts:
        r = np.ones(n, dtype=complex)
        for _ in range(rounds):
            h = wc.T @ np.conj(l)
            r = _grid_round(np.conj(h), k)
            g = wc @ r
            l = _grid_round(g, k)
        s = score(l, r)
        if s > best[0]:
            best = (s, l, r)
    return best


def sball_gauge_bracket(
    x: MatrixLike,
    config: SearchConfig = SearchConfig(),
    samples: int = 40,
    max_cg_iters: int = 60,
) -> Tuple[float, float, dict]:
    """Bracket the gauge of X in the unimodular rank-one hull.

    Lower bound: max |<X, Y>| over sampled Y with classical bilinear norm
    one (heuristically normalized).  Upper bound: least total weight writing X
    as a nonnegative combination of phase-grid atoms, tightened by column
    generation; any feasible decomposition upper-bounds the gauge.
    """
    X = as_matrix(x).a
    m, n = X.shape
    k = max(4, config.phase_grid)
    rng = _rng(config.seed, 977)

    # ----- lower bound by polarity against the classical bilinear ball
    lo = 0.0
    lo_cfg = SearchConfig(multistarts=max(20, config.multistarts // 2), seed=config.seed)
    directions = [X]
    for s in range(max(1, samples)):
        g = _rng(config.seed, 100 + s)
        directions.append(g.normal(size=(m, n)) + 1j * g.normal(size=(m, n)))
    for y in directions:
        bnorm = norms.bx_norm(y, lo_cfg).value
        if bnorm > 1e-12:
            lo = max(lo, abs(complex(np.sum(np.conj(y) * X))) / bnorm)

    # ----- upper bound by column generation over the atom dictionary
    target = np.concatenate([X.real.reshape(-1), X.imag.reshape(-1)])

    def col(a):
        return np.concatenate([a.real.reshape(-1), a.imag.reshape(-1)])

    atoms = []
    u, sv, vh = np.linalg.svd(X)
    for t in range(min(m, n)):
        l0 = _grid_round(np.conj(u[:, t]), k)
        r0 = _grid_round(np.conj(vh[t]), k)
        for li in range(k):
            atoms.append(_atom(l0 * np.exp(2j * np.pi * li / k), r0))
    while len(atoms) < 8 * (m + n) * k:
        l = np.exp(2j * np.pi * rng.integers(0, k, size=m) / k)
        r = np.exp(2j * np.pi * rng.integers(0, k, size=n) / k)
        atoms.append(_atom(l, r))

    hi = np.inf
    status = "no-decomposition"
    for _ in range(max_cg_iters):
        acols = np.stack([col(a) for a in atoms], axis=1)
        res = optimize.linprog(
            c=np.ones(acols.shape[1]),
            A_eq=acols,
            b_eq=target,
            bounds=(0, None),
            method="highs",
        )
        if not res.success:
            extra = []
            for _ in range(4 * (m + n)):
                l = np.exp(2j * np.pi * rng.integers(0, k, size=m) / k)
                r = np.exp(2j * np.pi * rng.integers(0, k, size=n) / k)
                extra.append(_atom(l, r))
            atoms.extend(extra)
            continue
        hi = float(res.fun)
        status = "decomposed"
        y = np.asarray(res.eqlin.marginals)
        wmat = y[: m * n].reshape(m, n) + 1j * y[m * n:].reshape(m, n)
        price, l, r = _price_atom(wmat, k, rng)
        if price <= 1.0 + 1e-7:
            status = "column-generation-converged"
            break
        atoms.append(_atom(l, r))

    meta = {"atoms": len(atoms), "phase_grid": k, "cg_status": status}
    return lo, float(hi), meta


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def membership(
    x: MatrixLike,
    ball: BallKind,
    tol: float = 1e-6,
    config: SearchConfig = SearchConfig(),
) -> MembershipReport:
    """Locate X relative to a unit ball: inside, outside, or boundary.

    Norm balls evaluate their defining norm (heuristic for B, certified SDP for
    CB/CS/CF/CT) and compare to 1 +- tol.  The hull ball S only brackets; its
    status is decided from the bracket and carries it in the report.
    """
    ball = BallKind(ball)
    X = as_matrix(x)
    if ball == BallKind.S:
        lo, hi, meta = sball_gauge_bracket(X, config)
        if hi < 1.0 - tol:
            status, gap = "inside", hi - 1.0
        elif lo > 1.0 + tol:
            status, gap = "outside", lo - 1.0
        else:
            status, gap = "boundary", 0.5 * (lo + hi) - 1.0
        return MembershipReport(
            ball=ball.value, status=status, value=None, bracket=(lo, hi),
            gap=gap, certified=False, meta=meta,
        )

    if ball == BallKind.B:
        cert = norms.bx_norm(X, config)
        certified_inside = False
    elif ball == BallKind.CB:
        cert = norms.bx_cb(X)
        certified_inside = True
    elif ball == BallKind.CS:
        cert = norms.gamma2(X)
        certified_inside = True
    elif ball == BallKind.CF:
        cert = norms.fx_cb(X)
        certified_inside = True
    else:
        cert = norms.tx_cb(X)
        certified_inside = True

    v = cert.value
    if v > 1.0 + tol:
        status, certified = "outside", True      # lower bounds certify exclusion
    elif v < 1.0 - tol:
        status, certified = "inside", certified_inside
    else:
        status, certified = "boundary", certified_inside
    return MembershipReport(
        ball=ball.value, status=status, value=v, bracket=None, gap=v - 1.0,
        certified=certified, meta={"norm_kind": cert.kind, **cert.meta},
    )


# ---------------------------------------------------------------------------
# the pairing identity and the polar-duality check
# ---------------------------------------------------------------------------

def pairing_identity_check(x: MatrixLike, c: MatrixLike, xi, eta) -> float:
    """Deviation |Tr(X* D(eta)* C D(xi)) - <(conj(X) o C) xi, eta>|.

    The two sides are an exact algebraic identity; the deviation is rounding
    noise only (<= 1e-12 relative to the data scale).
    """
    X = as_matrix(x).a
    C = as_matrix(c).a
    if X.shape != C.shape:
        raise ValueError(f"shape mismatch {X.shape} vs {C.shape}")
    xiv = np.asarray(xi, dtype=complex).reshape(-1)
    etav = np.asarray(eta, dtype=complex).reshape(-1)
    if xiv.shape[0] != X.shape[1] or etav.shape[0] != X.shape[0]:
        raise ValueError("scaling vector dimensions do not match the matrices")
    lhs = complex(np.trace(X.conj().T @ np.diag(etav).conj().T @ C @ np.diag(xiv)))
    rhs = complex(((np.conj(X) * C) @ xiv) @ np.conj(etav))
    return abs(lhs - rhs)


@dataclass
class PolarReport:
    pair: str
    samples: int
    max_pairing: float
    worst_sharpness: float       # min over samples of attained/required pairing
    violations: list
    meta: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "pair": self.pair,
            "samples": self.samples,
            "max_pairing": self.max_pairing,
            "worst_sharpness": self.worst_sharpness,
            "violations": self.violations,
            "meta": self.meta,
        }


def _rand_complex(rng, m, n):
    return rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))


def polar_check(
    m: int,
    n: int,
    samples: int = 20,
    seed: int = 0,
    pair: str = "all",
    pair_tol: float = 1e-6,
    sharp_tol: float = 1e-5,
    config: SearchConfig = SearchConfig(),
) -> PolarReport:
    """Sample both sides of the polar pairs and verify |<X, Y>| <= 1 plus, for
    the cb pairs, sharpness of the SDP dual witnesses.

    pair is one of "B-S", "CB-CS", "CF-CT", or "all" for the three relations
    in one merged report.  Violations are returned in the report payload,
    never raised.
    """
    if m > 16 or n > 16:
        raise ValueError("polar_check expects desk-scale dims (<= 16)")
    if pair == "all":
        parts = [
            polar_check(m, n, samples, seed, p, pair_tol, sharp_tol, config)
            for p in ("B-S", "CB-CS", "CF-CT")
        ]
        return PolarReport(
            pair="all",
            samples=samples,
            max_pairing=max(r.max_pairing for r in parts),
            worst_sharpness=min(r.worst_sharpness for r in parts),
            violations=[{"pair": r.pair, **v} for r in parts for v in r.violations],
            meta={"m": m, "n": n, "seed": seed,
                  "per_pair": {r.pair: r.to_json_dict() for r in parts}},
        )
    violations = []
    max_pair = 0.0
    worst_sharp = np.inf

    for s in range(samples):
        rng = _rng(seed, 3000 + s)
        X = _rand_complex(rng, m, n)
        Y = _rand_complex(rng, m, n)

        if pair == "CB-CS":
            cx = norms.bx_cb(X)
            g2y = norms.gamma2(Y)
            if cx.value < 1e-12 or g2y.value < 1e-12:
                continue
            xh, yh = X / cx.value, Y / g2y.value
            p = abs(pairing(xh, yh))
            max_pair = max(max_pair, p)
            if p > 1.0 + pair_tol:
                violations.append({"kind": "pairing", "sample": s, "pairing": p})
            ystar = cx.dual_witness["Y"]
            g2s = norms.gamma2(ystar).value
            if g2s > 1e-12:
                attained = abs(pairing(X, ystar / g2s)) / cx.value
                worst_sharp = min(worst_sharp, attained)
                if attained < 1.0 - sharp_tol:
                    violations.append({"kind": "sharpness", "sample": s, "attained": attained})
        elif pair == "CF-CT":
            cf = norms.fx_cb(X)
            ct = norms.tx_cb(Y)
            if cf.value < 1e-12 or ct.value < 1e-12:
                continue
            xh, yh = X / cf.value, Y / ct.value
            p = abs(pairing(xh, yh))
            max_pair = max(max_pair, p)
            if p > 1.0 + pair_tol:
                violations.append({"kind": "pairing", "sample": s, "pairing": p})
            # sharpness from the mixed-map side: its dual witness lives in the
            # F-ball and must attain the mixed-map norm
            if "pairing" in ct.dual_witness:
                attained = ct.dual_witness["pairing"] / ct.value
                worst_sharp = min(worst_sharp, attained)
                if attained < 1.0 - sharp_tol:
                    violations.append({"kind": "sharpness", "sample": s, "attained": attained})
            # and from the vector-map side via its hull witness
            if "pairing" in cf.dual_witness:
                ywit = cf.dual_witness["Y"]
                tval = norms.tx_cb(ywit).value
                if tval > 1e-12:
                    attained = abs(pairing(X, ywit / tval)) / cf.value
                    worst_sharp = min(worst_sharp, attained)
                    if attained < 1.0 - sharp_tol:
                        violations.append({"kind": "sharpness-F", "sample": s, "attained": attained})
        elif pair == "B-S":
            bx = norms.bx_norm(X, config)
            if bx.value < 1e-12:
                continue
            xh = X / bx.value
            yh = sball_sample(m, n, rng)
            p = abs(pairing(xh, yh))
            max_pair = max(max_pair, p)
            if p > 1.0 + pair_tol:
                violations.append({"kind": "pairing", "sample": s, "pairing": p})
        else:
            raise ValueError(f"unknown polar pair {pair!r}")

    return PolarReport(
        pair=pair,
        samples=samples,
        max_pairing=max_pair,
        worst_sharpness=float(worst_sharp) if worst_sharp != np.inf else 1.0,
        violations=violations,
        meta={"m": m, "n": n, "seed": seed, "certified": pair != "B-S"},
    )


# ---------------------------------------------------------------------------
# amplified bilinear witness (finite-sum realization of the cb norm)
# ---------------------------------------------------------------------------

def amplification_witness(x: MatrixLike, cert: Optional[NormCertificate] = None) -> dict:
    """Vectors {a_s}, {b_s} with sum_s |a_s(i)|^2 <= 1 and sum_s |b_s(j)|^2 <= 1
    whose bilinear sum sum_s B_X(a_s, b_s) attains the cb norm of the form.

    The construction Gram-splits the certificate's dual witness (an element of
    the Schur-multiplier unit ball) into row vectors.
    """
    X = as_matrix(x).a
    m, n = X.shape
    l_amp = min(m, n)
    if cert is None:
        cert = norms.bx_cb(X)
    y = cert.dual_witness.get("Y")
    if y is None or np.linalg.norm(y) < 1e-14:
        return {
            "a_vectors": np.zeros((l_amp, m), dtype=complex),
            "b_vectors": np.zeros((l_amp, n), dtype=complex),
            "value": 0.0,
            "cb_value": cert.value,
        }
    g2 = norms.gamma2(y)
    fact = factor_mod.schur_factor(y, g2)
    lmat, rmat = fact.factors["L"], fact.factors["R"]
    cl = max(np.sqrt(np.max(np.sum(np.abs(lmat) ** 2, axis=0))), 1e-300)
    cr = max(np.sqrt(np.max(np.sum(np.abs(rmat) ** 2, axis=0))), 1e-300)
    bal = np.sqrt(cr / cl)
    lmat, rmat = lmat * bal, rmat / bal
    over = max(
        np.sqrt(np.max(np.sum(np.abs(lmat) ** 2, axis=0))),
        np.sqrt(np.max(np.sum(np.abs(rmat) ** 2, axis=0))),
        1.0,
    )
    lmat, rmat = lmat / over, rmat / over
    r = lmat.shape[0]
    if r < l_amp:
        lmat = np.vstack([lmat, np.zeros((l_amp - r, m))])
        rmat = np.vstack([rmat, np.zeros((l_amp - r, n))])
    avecs = lmat
    bvecs = np.conj(rmat)
    total = complex(np.sum(X * (avecs.T @ bvecs)))
    return {
        "a_vectors": avecs,
        "b_vectors": bvecs,
        "value": abs(total),
        "cb_value": cert.value,
    }


# ---------------------------------------------------------------------------
# Grothendieck-ratio search
# ---------------------------------------------------------------------------

@dataclass
class RatioReport:
    kind: str
    dims: Tuple[int, int]
    best_ratio: float
    argmax: np.ndarray
    numerator: NormCertificate
    denominator: NormCertificate
    trials: int
    seed: int

    def to_json_dict(self) -> dict:
        from .core import ComplexMatrix

        return {
            "kind": self.kind,
            "dims": list(self.dims),
            "best_ratio": self.best_ratio,
            "argmax": ComplexMatrix.from_array(self.argmax).to_json_dict(),
            "numerator": {"kind": self.numerator.kind, "value": self.numerator.value,
                          "gap": self.numerator.gap},
            "denominator": {"kind": self.denominator.kind, "value": self.denominator.value,
                            "exact": self.denominator.exact},
            "trials": self.trials,
            "seed": self.seed,
        }


def _hadamard2() -> np.ndarray:
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)


def grothendieck_ratio(
    kind: str,
    dims: Tuple[int, int],
    trials: int = 200,
    seed: int = 0,
    config: SearchConfig = SearchConfig(),
) -> RatioReport:
    """Search for matrices maximizing cb-norm / classical-norm.

    kind "little" measures the vector map (a one-sided ratio), kind "big" the
    bilinear form.  Random starts plus perturbation ascent around the
    incumbent with decaying step; the denominator is the multistart oracle, so
    every reported ratio is a certified lower bound for the corresponding
    supremum (and always >= 1 up to solver tolerance, since the oracle value
    never exceeds the true classical norm).
    """
    if kind not in ("little", "big"):
        raise ValueError(f"ratio kind must be 'little' or 'big', got {kind!r}")
    m, n = dims
    if m > 8 or n > 8:
        raise ValueError("ratio search expects desk-scale dims (<= 8)")
    oracle_cfg = config

    def evaluate(xmat):
        if kind == "big":
            num = norms.bx_cb(xmat)
            den = norms.bx_norm(xmat, oracle_cfg)
        else:
            num = norms.fx_cb(xmat)
            den = norms.fx_norm(xmat, oracle_cfg)
        if den.value < 1e-12:
            return None
        return num.value / den.value, num, den

    starts = []
    if (m, n) == (2, 2):
        starts.append(_hadamard2())
    h = _hadamard2()
    if m >= 2 and n >= 2:
        pad = np.zeros((m, n), dtype=complex)
        pad[:2, :2] = h
        starts.append(pad)
    starts.append(np.ones((m, n), dtype=complex))

    best = None
    for t in range(trials):
        rng = _rng(seed, 5000 + t)
        if t < len(starts):
            x = starts[t]
        elif best is not None and t % 2 == 1:
            sigma = 0.5 * (1.0 - t / max(trials, 1)) + 0.02
            x = best[3] + sigma * _rand_complex(rng, m, n)
            if config.real_signs:
                x = x.real.astype(complex)
        else:
            x = _rand_complex(rng, m, n)
            if config.real_signs:
                x = x.real.astype(complex)
        out = evaluate(x)
        if out is None:
            continue
        ratio, num, den = out
        if best is None or ratio > best[0]:
            best = (ratio, num, den, x)

    if best is None:
        raise RuntimeError("ratio search produced no valid sample")
    ratio, num, den, xbest = best
    return RatioReport(
        kind=kind,
        dims=(m, n),
        best_ratio=float(ratio),
        argmax=xbest,
        numerator=num,
        denominator=den,
        trials=trials,
        seed=seed,
    )
