"""Random test matrices."""

import numpy as np


def ginibre(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_hermitian(rng, m, scale=1.0):
    g = ginibre(rng, m)
    return scale * 0.5 * (g + g.conj().T)


def random_psd(rng, m, rank=None, scale=1.0):
    g = ginibre(rng, m, m if rank is None else rank)
    return scale * (g @ g.conj().T) / m


def random_unitary(rng, m):
    q, r = np.linalg.qr(ginibre(rng, m))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, n):
    rho = random_psd(rng, n)
    return rho / np.trace(rho)
