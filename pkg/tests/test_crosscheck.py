"""Cross-checks of the cb-norm SDP values against an independent modeling
layer (cvxpy), exercising a completely different canonicalization of the same
optimization problems.  Skipped when cvxpy is not installed."""

import numpy as np
import pytest

cp = pytest.importorskip("cvxpy")

from cbnorm.norms import bx_cb, fx_cb, gamma2, tx_cb
from conftest import rand_complex


def cvx_gamma2(x):
    m, n = x.shape
    p = cp.Variable((m, m), hermitian=True)
    q = cp.Variable((n, n), hermitian=True)
    t = cp.Variable()
    w = cp.bmat([[p, cp.Constant(x)], [cp.Constant(x).H, q]])
    cons = [w >> 0]
    cons += [cp.real(p[i, i]) <= t for i in range(m)]
    cons += [cp.real(q[j, j]) <= t for j in range(n)]
    prob = cp.Problem(cp.Minimize(t), cons)
    return prob.solve(solver=cp.CLARABEL)


def cvx_bx_cb(x):
    m, n = x.shape
    p = cp.Variable(m, nonneg=True)
    q = cp.Variable(n, nonneg=True)
    w = cp.bmat([[cp.diag(p), cp.Constant(x)], [cp.Constant(x).H, cp.diag(q)]])
    prob = cp.Problem(cp.Minimize(0.5 * (cp.sum(p) + cp.sum(q))), [w >> 0])
    return prob.solve(solver=cp.CLARABEL)


def cvx_fx_cb(x):
    n = x.shape[1]
    v = cp.Variable(n, nonneg=True)
    gram = cp.Constant(x.conj().T @ x)
    prob = cp.Problem(cp.Minimize(cp.sum(v)), [cp.diag(v) - gram >> 0])
    return float(np.sqrt(prob.solve(solver=cp.CLARABEL)))


def cvx_tx_cb(x):
    m, n = x.shape
    p = cp.Variable((m, m), hermitian=True)
    q = cp.Variable((n, n), hermitian=True)
    w = cp.bmat([[p, cp.Constant(x)], [cp.Constant(x).H, q]])
    cons = [w >> 0] + [cp.real(q[j, j]) <= 1 for j in range(n)]
    prob = cp.Problem(cp.Minimize(cp.real(cp.trace(p))), cons)
    return float(np.sqrt(prob.solve(solver=cp.CLARABEL)))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gamma2_matches_independent_model(seed):
    rng = np.random.default_rng(400 + seed)
    x = rand_complex(rng, 3, 4)
    assert gamma2(x).value == pytest.approx(cvx_gamma2(x), abs=2e-6)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_bx_cb_matches_independent_model(seed):
    rng = np.random.default_rng(410 + seed)
    x = rand_complex(rng, 3, 3)
    assert bx_cb(x).value == pytest.approx(cvx_bx_cb(x), abs=2e-6)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_fx_cb_matches_independent_model(seed):
    rng = np.random.default_rng(420 + seed)
    x = rand_complex(rng, 4, 3)
    assert fx_cb(x).value == pytest.approx(cvx_fx_cb(x), abs=2e-6)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_tx_cb_matches_independent_model(seed):
    rng = np.random.default_rng(430 + seed)
    x = rand_complex(rng, 3, 3)
    assert tx_cb(x).value == pytest.approx(cvx_tx_cb(x), abs=2e-6)
