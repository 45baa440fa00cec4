import numpy as np
import pytest

from cbnorm.core import (
    ComplexMatrix,
    ComplexVector,
    ShapeError,
    apply_bform,
    apply_fmap,
    apply_gmap,
    apply_tmap,
    col_embed,
    col_norm,
    diag_embed,
    hs_norm,
    ones_vector,
    op_norm,
    pairing,
    row_embed,
    row_norm,
    schur_product,
)
from conftest import rand_complex

SQRT2 = np.sqrt(2.0)


class TestOpNorm:
    def test_identity(self):
        assert op_norm(np.eye(2)) == pytest.approx(1.0, abs=1e-12)

    def test_single_column(self):
        assert op_norm([[3, 0], [4, 0]]) == pytest.approx(5.0, abs=1e-12)

    def test_hadamard(self):
        # X*X = 2I, so both singular values are sqrt(2)
        assert op_norm([[1, 1], [1, -1]]) == pytest.approx(SQRT2, rel=1e-12)


class TestHsNorm:
    def test_zero(self):
        assert hs_norm(np.zeros((3, 2))) == 0.0

    def test_identity(self):
        assert hs_norm(np.eye(2)) == pytest.approx(SQRT2, rel=1e-12)

    def test_three_four_five(self):
        assert hs_norm([[0.6], [0.8]]) == pytest.approx(1.0, abs=1e-12)


class TestColRowNorm:
    def test_identity(self):
        for n in (1, 3, 5):
            assert col_norm(np.eye(n)) == pytest.approx(1.0)
            assert row_norm(np.eye(n)) == pytest.approx(1.0)

    def test_example(self):
        x = [[3, 0], [4, 1]]
        assert col_norm(x) == pytest.approx(5.0)
        assert row_norm(x) == pytest.approx(np.sqrt(17.0))

    def test_all_ones(self):
        j = np.ones((2, 3))
        assert col_norm(j) == pytest.approx(SQRT2)
        assert row_norm(j) == pytest.approx(np.sqrt(3.0))

    def test_col_norm_is_max_gram_diagonal(self, rng):
        for _ in range(25):
            x = rand_complex(rng, rng.integers(1, 7), rng.integers(1, 7))
            g = x.conj().T @ x
            assert col_norm(x) ** 2 == pytest.approx(np.max(np.real(np.diag(g))), abs=1e-12 * max(1, np.max(np.abs(g))))
            assert row_norm(x) == pytest.approx(col_norm(x.conj().T), abs=1e-13)


class TestPairing:
    def test_identity_with_itself(self):
        assert pairing(np.eye(2), np.eye(2)) == pytest.approx(2.0)

    def test_zero(self):
        assert pairing([[1, 2], [3, 4]], np.zeros((2, 2))) == 0.0

    def test_trace(self):
        assert pairing([[1, 2], [3, 4]], np.eye(2)) == pytest.approx(5.0)

    def test_is_inner_product(self, rng):
        for _ in range(25):
            x = rand_complex(rng, 3, 4)
            assert pairing(x, x).real == pytest.approx(hs_norm(x) ** 2, rel=1e-12)
            assert abs(pairing(x, x).imag) < 1e-12 * hs_norm(x) ** 2

    def test_sesquilinearity(self, rng):
        x, y = rand_complex(rng, 2, 3), rand_complex(rng, 2, 3)
        c = 0.7 - 1.3j
        assert pairing(c * np.asarray(x), y) == pytest.approx(c * pairing(x, y))
        assert pairing(x, c * np.asarray(y)) == pytest.approx(np.conj(c) * pairing(x, y))

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            pairing(np.eye(2), np.ones((2, 3)))


class TestSchurProduct:
    def test_all_ones_identity(self, rng):
        x = rand_complex(rng, 3, 2)
        assert np.array_equal(schur_product(x, np.ones((3, 2))).a, x)

    def test_zero(self, rng):
        x = rand_complex(rng, 2, 2)
        assert np.all(schur_product(x, np.zeros((2, 2))).a == 0)

    def test_arithmetic(self):
        out = schur_product([[1, 2], [3, 4]], [[0, 1], [1, 0]])
        assert np.array_equal(out.a, np.array([[0, 2], [3, 0]], dtype=complex))

    def test_commutative_associative(self, rng):
        # exact as algebra; vectorized complex multiply leaves last-bit noise
        x, y, z = (rand_complex(rng, 2, 3) for _ in range(3))
        assert np.allclose(schur_product(x, y).a, schur_product(y, x).a, rtol=1e-15, atol=0.0)
        lhs = schur_product(schur_product(x, y), z).a
        rhs = schur_product(x, schur_product(y, z)).a
        assert np.allclose(lhs, rhs, rtol=1e-14, atol=0.0)


class TestInterpretationMaps:
    def test_bform_identity(self):
        assert apply_bform(np.eye(2), [1, 1], [1, 1]) == pytest.approx(2.0)

    def test_tmap_column_sums(self, rng):
        x = rand_complex(rng, 3, 4)
        out = apply_tmap(x, np.ones(3), np.ones((3, 4)))
        assert np.allclose(out.a, x.sum(axis=0))

    def test_fmap_row(self):
        out = apply_fmap([[1, 1]], [1, 1])
        assert np.allclose(out.a, [2.0])

    def test_fmap_is_matvec(self, rng):
        x, a = rand_complex(rng, 4, 3), rng.normal(size=3) + 1j * rng.normal(size=3)
        assert np.allclose(apply_fmap(x, a).a, x @ a)

    def test_gmap_no_conjugation(self, rng):
        x, a = rand_complex(rng, 3, 4), rng.normal(size=3) + 1j * rng.normal(size=3)
        assert np.allclose(apply_gmap(x, a).a, x.T @ a)

    def test_bform_no_conjugation(self, rng):
        x = rand_complex(rng, 3, 4)
        a = rng.normal(size=3) + 1j * rng.normal(size=3)
        b = rng.normal(size=4) + 1j * rng.normal(size=4)
        direct = sum(x[i, j] * a[i] * b[j] for i in range(3) for j in range(4))
        assert apply_bform(x, a, b) == pytest.approx(direct)
        assert apply_bform(x, a, b) == pytest.approx(complex(a @ x @ b))

    def test_tmap_formula(self, rng):
        x, bmat = rand_complex(rng, 2, 3), rand_complex(rng, 2, 3)
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        out = apply_tmap(x, a, bmat).a
        for j in range(3):
            assert out[j] == pytest.approx(sum(a[i] * x[i, j] * bmat[i, j] for i in range(2)))

    def test_dimension_errors(self):
        with pytest.raises(ShapeError):
            apply_fmap(np.eye(2), [1, 1, 1])
        with pytest.raises(ShapeError):
            apply_bform(np.ones((2, 3)), [1, 1, 1], [1, 1, 1])
        with pytest.raises(ShapeError):
            apply_tmap(np.ones((2, 3)), [1, 1], np.ones((3, 2)))


class TestEmbeddings:
    def test_diag(self):
        assert np.array_equal(diag_embed([1, 2]).a, np.diag([1.0, 2.0]).astype(complex))

    def test_ones_vector_diag(self):
        assert np.array_equal(diag_embed(ones_vector(2)).a, np.eye(2, dtype=complex))

    def test_empty_rejected(self):
        with pytest.raises((ShapeError, ValueError)):
            ComplexVector.from_array([])

    def test_embedding_norms_match_vector_norm(self, rng):
        for _ in range(20):
            xi = rng.normal(size=5) + 1j * rng.normal(size=5)
            nrm = np.linalg.norm(xi)
            assert op_norm(col_embed(xi)) == pytest.approx(nrm, rel=1e-12)
            assert op_norm(row_embed(xi)) == pytest.approx(nrm, rel=1e-12)


class TestValidation:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            ComplexMatrix.from_array([[np.nan, 0], [0, 1]])

    def test_rejects_inf(self):
        with pytest.raises(ValueError):
            ComplexMatrix.from_array([[np.inf, 0]])

    def test_immutability(self):
        m = ComplexMatrix.from_array([[1, 2]])
        with pytest.raises(ValueError):
            m.a[0, 0] = 5.0

    def test_json_roundtrip(self, rng):
        x = ComplexMatrix.from_array(rand_complex(rng, 3, 2))
        assert np.array_equal(ComplexMatrix.from_json_dict(x.to_json_dict()).a, x.a)
        v = ComplexVector.from_array(rng.normal(size=4) + 1j * rng.normal(size=4))
        assert np.array_equal(ComplexVector.from_json_dict(v.to_json_dict()).a, v.a)
