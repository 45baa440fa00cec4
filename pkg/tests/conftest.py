import numpy as np
import pytest


def rand_complex(rng, m, n, scale=1.0):
    return scale * (rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n)))


def rand_rank(rng, m, n, r):
    """Random m x n matrix of exact rank r."""
    u = rng.normal(size=(m, r)) + 1j * rng.normal(size=(m, r))
    v = rng.normal(size=(r, n)) + 1j * rng.normal(size=(r, n))
    return u @ v


def rand_hermitian(rng, n):
    a = rand_complex(rng, n, n)
    return (a + a.conj().T) / 2.0


def rand_psd(rng, n):
    a = rand_complex(rng, n, n)
    return a @ a.conj().T / n


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
