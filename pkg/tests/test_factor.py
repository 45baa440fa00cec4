import numpy as np
import pytest

from cbnorm.core import col_norm, hs_norm, op_norm, row_norm
from cbnorm.factor import (
    bilinear_factor,
    fx_factor,
    gx_factor,
    rank_reduce,
    scale_split,
    schur_factor,
    tx_factor,
)
from cbnorm.norms import bx_cb, fx_cb, gamma2, gx_cb, tx_cb
from cbnorm.sdp import numerical_rank
from conftest import rand_complex, rand_rank

SQRT2 = np.sqrt(2.0)
H2 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)
E11 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)


def reconstruct_ok(fact, x, rtol=1e-7):
    return np.linalg.norm(fact.reconstruct() - x) <= rtol * max(np.linalg.norm(x), 1e-12)


class TestRankReduce:
    def test_rank_one_product(self):
        a = np.array([[1.0, 0.0], [1.0, 0.0]])
        b = np.array([[1.0, 1.0], [0.0, 0.0]])
        l, r = rank_reduce(a, b)
        assert l.shape == (2, 1) and r.shape == (1, 2)
        assert np.allclose(l @ r, a @ b, atol=1e-12)

    def test_identity(self):
        l, r = rank_reduce(np.eye(2), np.eye(2))
        assert l.shape == (2, 2) and r.shape == (2, 2)
        assert np.allclose(l @ r, np.eye(2), atol=1e-12)

    def test_zero_b(self):
        l, r = rank_reduce(np.ones((3, 2)), np.zeros((2, 4)))
        assert l.shape == (3, 0) and r.shape == (0, 4)
        assert np.allclose(l @ r, np.zeros((3, 4)))

    def test_cancellation(self):
        a = np.array([[1.0, 1.0]])
        b = np.array([[1.0], [-1.0]])
        l, r = rank_reduce(a, b)
        assert l.shape[1] == 0

    def test_norm_monotonicities(self, rng):
        for _ in range(40):
            m, k, n = rng.integers(1, 7), rng.integers(1, 7), rng.integers(1, 7)
            a = rand_complex(rng, m, k)
            b = rand_complex(rng, k, n)
            l, r = rank_reduce(a, b)
            ab = a @ b
            assert np.linalg.norm(l @ r - ab) <= 1e-8 * max(np.linalg.norm(ab), 1e-12)
            assert l.shape[1] == r.shape[0] == numerical_rank(ab)
            slack = 1e-9
            if l.size:
                assert op_norm(l) <= op_norm(a) + slack
                assert hs_norm(l) <= hs_norm(a) + slack
                assert row_norm(l) <= row_norm(a) + slack
            if r.size:
                assert op_norm(r) <= op_norm(b) + slack
                assert hs_norm(r) <= hs_norm(b) + slack
                assert col_norm(r) <= col_norm(b) + slack


class TestScaleSplit:
    def test_already_normalized(self):
        t = np.array([[0.6, 0.0], [0.8, 0.0]])
        r, xi = scale_split(t)
        assert np.allclose(r, t)
        assert np.allclose(xi, [1.0, 0.0])

    def test_scaled_identity(self):
        t = np.eye(2) / SQRT2
        r, xi = scale_split(t)
        assert np.allclose(r, np.eye(2))
        assert np.allclose(xi, [1 / SQRT2, 1 / SQRT2])

    def test_row(self):
        r, xi = scale_split(np.array([[0.6, 0.8]]))
        assert np.allclose(r, [[1.0, 1.0]])
        assert np.allclose(xi, [0.6, 0.8])

    def test_roundtrip_and_idempotence(self, rng):
        for _ in range(20):
            t = rand_complex(rng, 4, 3)
            t[:, 0] = 0.0                       # keep a zero column in play
            r, xi = scale_split(t)
            assert np.linalg.norm(r @ np.diag(xi) - t) <= 1e-12 * max(np.linalg.norm(t), 1.0)
            assert np.linalg.norm(xi) == pytest.approx(hs_norm(t), rel=1e-12)
            cols = np.sqrt(np.sum(np.abs(r) ** 2, axis=0))
            assert np.all((np.abs(cols - 1.0) < 1e-12) | (cols < 1e-12))
            r2, xi2 = scale_split(r)
            nz = cols > 0
            assert np.allclose(r2[:, nz], r[:, nz], atol=1e-12)


class TestSchurFactor:
    def test_identity(self):
        cert = gamma2(np.eye(2))
        fact = schur_factor(np.eye(2), cert)
        assert fact.cost == pytest.approx(1.0, abs=1e-6)
        assert fact.rank == 2
        assert reconstruct_ok(fact, np.eye(2))

    def test_rank_one_unimodular(self, rng):
        u = np.exp(2j * np.pi * rng.random(3))
        v = np.exp(2j * np.pi * rng.random(2))
        x = np.outer(u, v)
        cert = gamma2(x)
        fact = schur_factor(x, cert)
        assert fact.rank == 1
        assert fact.cost == pytest.approx(1.0, abs=1e-5)
        assert reconstruct_ok(fact, x)

    def test_hadamard(self):
        cert = gamma2(H2)
        fact = schur_factor(H2, cert)
        assert fact.cost == pytest.approx(SQRT2, abs=1e-5)
        assert fact.rank == 2
        assert reconstruct_ok(fact, H2)

    def test_column_norm_structure(self, rng):
        x = rand_complex(rng, 3, 4)
        cert = gamma2(x)
        fact = schur_factor(x, cert)
        l, r = fact.factors["L"], fact.factors["R"]
        assert col_norm(l) * col_norm(r) == pytest.approx(cert.value, abs=1e-5 * (1 + cert.value))
        assert np.linalg.norm(l.conj().T @ r - x) <= 1e-7 * np.linalg.norm(x)


class TestFxGxFactor:
    def test_row_example(self):
        x = np.array([[1.0, 1.0]])
        cert = fx_cb(x)
        fact = fx_factor(x, cert)
        assert np.allclose(fact.factors["xi"], [1 / SQRT2, 1 / SQRT2], atol=1e-6)
        assert op_norm(fact.factors["C"]) == pytest.approx(2.0, abs=1e-6)
        assert reconstruct_ok(fact, x)

    def test_identity(self):
        x = np.eye(2)
        fact = fx_factor(x, fx_cb(x))
        assert np.allclose(fact.factors["xi"], np.ones(2) / SQRT2, atol=1e-6)
        assert op_norm(fact.factors["C"]) == pytest.approx(SQRT2, abs=1e-6)
        assert reconstruct_ok(fact, x)

    def test_zero(self):
        x = np.zeros((2, 2))
        fact = fx_factor(x, fx_cb(x))
        assert np.all(fact.factors["C"] == 0)
        assert np.linalg.norm(fact.factors["xi"]) == pytest.approx(1.0)

    def test_zero_column_support(self, rng):
        x = rand_complex(rng, 3, 4)
        x[:, 1] = 0.0
        fact = fx_factor(x, fx_cb(x))
        assert reconstruct_ok(fact, x)

    def test_gx_mirror(self, rng):
        x = rand_complex(rng, 3, 2)
        cert = gx_cb(x)
        fact = gx_factor(x, cert)
        assert reconstruct_ok(fact, x)
        assert fact.cost == pytest.approx(cert.value, abs=1e-5 * (1 + cert.value))


class TestBilinearFactor:
    def test_all_ones(self):
        x = np.ones((2, 2))
        cert = bx_cb(x)
        fact = bilinear_factor(x, cert)
        assert np.allclose(fact.factors["eta"], np.ones(2) / SQRT2, atol=1e-5)
        assert np.allclose(fact.factors["xi"], np.ones(2) / SQRT2, atol=1e-5)
        assert fact.cost == pytest.approx(4.0, abs=1e-5)
        assert reconstruct_ok(fact, x)

    def test_zero(self):
        x = np.zeros((2, 3))
        fact = bilinear_factor(x, bx_cb(x))
        assert np.all(fact.factors["C"] == 0)

    def test_hadamard(self):
        cert = bx_cb(H2)
        fact = bilinear_factor(H2, cert)
        assert fact.cost == pytest.approx(2 * SQRT2, abs=1e-5)
        assert reconstruct_ok(fact, H2)

    def test_zero_row_support(self, rng):
        x = rand_complex(rng, 3, 3)
        x[1, :] = 0.0
        fact = bilinear_factor(x, bx_cb(x))
        assert reconstruct_ok(fact, x)


class TestTxFactor:
    def test_matrix_unit(self):
        cert = tx_cb(E11)
        fact = tx_factor(E11, cert)
        assert fact.cost == pytest.approx(1.0, abs=1e-5)
        assert fact.rank == 1
        assert np.allclose(np.abs(fact.factors["gamma"]), [1.0, 0.0], atol=1e-5)
        assert reconstruct_ok(fact, E11)

    def test_zero(self):
        x = np.zeros((2, 2))
        fact = tx_factor(x, tx_cb(x))
        assert fact.rank == 0
        assert fact.cost == 0.0

    def test_unit_diagonal(self, rng):
        g = rng.random(3) + 0.2          # nonnegative entries, then normalized
        g = g / np.linalg.norm(g)
        x = np.diag(g)
        cert = tx_cb(x)
        fact = tx_factor(x, cert)
        assert fact.cost == pytest.approx(1.0, abs=1e-5)
        assert reconstruct_ok(fact, x)

    def test_gamma_canonical_nonnegative(self, rng):
        x = rand_complex(rng, 3, 4)
        fact = tx_factor(x, tx_cb(x))
        gam = fact.factors["gamma"]
        assert np.all(gam.real >= -1e-12)
        assert np.all(np.abs(gam.imag) < 1e-12)
        assert np.linalg.norm(gam) == pytest.approx(1.0, abs=1e-9)


class TestFactorizationInvariants:
    def test_reconstruction_all_kinds(self, rng):
        from cbnorm.factor import factor as extract
        from cbnorm.norms import cb_norm
        for _ in range(3):
            m, n = int(rng.integers(2, 5)), int(rng.integers(2, 5))
            x = rand_complex(rng, m, n)
            for kind in "FGBST":
                fact = extract(kind, x, cb_norm(kind, x))
                assert reconstruct_ok(fact, x), kind

    def test_rank_statement(self, rng):
        for r in (1, 2, 3):
            x = rand_rank(rng, 4, 4, r)
            sf = schur_factor(x, gamma2(x))
            assert sf.rank == r
            assert np.linalg.matrix_rank(sf.factors["L"]) == r
            assert np.linalg.matrix_rank(sf.factors["R"]) == r
            tf = tx_factor(x, tx_cb(x))
            assert tf.rank == r

    def test_cost_matches_certificate(self, rng):
        from cbnorm.factor import factor as extract
        from cbnorm.norms import cb_norm
        x = rand_complex(rng, 3, 3)
        for kind in "FGBST":
            cert = cb_norm(kind, x)
            fact = extract(kind, x, cert)
            assert fact.cost == pytest.approx(cert.value, abs=1e-5 * (1 + cert.value)), kind

    def test_json_roundtrip(self, rng):
        x = rand_complex(rng, 2, 3)
        fact = schur_factor(x, gamma2(x))
        d = fact.to_json_dict()
        assert d["kind"] == "S"
        assert d["rank"] == fact.rank
        assert isinstance(d["factors"]["L"], list)
