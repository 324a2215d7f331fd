"""Orthonormal SU(N) generator bases and their structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InconsistentBasisError, InvalidArgumentError

ORTHONORMAL_TOL = 1e-12
IMAG_TOL = 1e-13


@dataclass(frozen=True)
class GeneratorBasis:
    """``matrices[0]`` is ``I/sqrt(n)``; ``matrices[1:]`` are the traceless generators.

    All ``n**2`` matrices are orthonormal in the Hilbert-Schmidt inner product.
    """

    n: int
    matrices: np.ndarray

    @property
    def m(self) -> int:
        return self.n * self.n - 1

    @property
    def identity(self) -> np.ndarray:
        return self.matrices[0]

    @property
    def generators(self) -> np.ndarray:
        return self.matrices[1:]

    def orthonormality_residual(self) -> float:
        gram = np.einsum("iab,kab->ik", self.matrices, self.matrices.conj())
        return float(np.max(np.abs(gram - np.eye(self.n * self.n))))

    def coherence_vector(self, rho) -> np.ndarray:
        """Real coefficients ``v_i = Tr(rho F_i)``, so ``rho = I/n + sum_i v_i F_i``."""
        rho = np.asarray(rho)
        return np.einsum("ab,iba->i", rho, self.generators).real

    def density_matrix(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return np.eye(self.n) / self.n + np.einsum("i,iab->ab", v, self.generators)


@dataclass(frozen=True)
class StructureConstants:
    """Antisymmetric ``f_ijk = -i Tr([F_i,F_j] F_k)`` and symmetric ``d_ijk = Tr({F_i,F_j} F_k)``."""

    n: int
    f: np.ndarray
    d: np.ndarray

    @property
    def m(self) -> int:
        return self.f.shape[0]


def _symmetric(n, j, k):
    x = np.zeros((n, n), dtype=complex)
    x[j, k] = x[k, j] = 1.0
    return x


def _antisymmetric(n, j, k):
    x = np.zeros((n, n), dtype=complex)
    x[j, k] = -1j
    x[k, j] = 1j
    return x


def _diagonal(n, l):
    # l = 1..n-1: l ones followed by -l, normalized to Tr(x^2) = 2
    x = np.zeros((n, n), dtype=complex)
    x[np.arange(l), np.arange(l)] = 1.0
    x[l, l] = -l
    return x * np.sqrt(2.0 / (l * (l + 1)))


def _gell_mann_3():
    # standard lambda_1 .. lambda_8 order
    return [
        _symmetric(3, 0, 1),
        _antisymmetric(3, 0, 1),
        _diagonal(3, 1),
        _symmetric(3, 0, 2),
        _antisymmetric(3, 0, 2),
        _symmetric(3, 1, 2),
        _antisymmetric(3, 1, 2),
        _diagonal(3, 2),
    ]


def _generalized_gell_mann(n):
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    mats = [_symmetric(n, j, k) for j, k in pairs]
    mats += [_antisymmetric(n, j, k) for j, k in pairs]
    mats += [_diagonal(n, l) for l in range(1, n)]
    return mats


@lru_cache(maxsize=None)
def _basis_array(n):
    gens = _gell_mann_3() if n == 3 else _generalized_gell_mann(n)
    mats = np.array([np.eye(n, dtype=complex) / np.sqrt(n)] + [g / np.sqrt(2.0) for g in gens])
    mats.setflags(write=False)
    return mats


def generate_basis(n: int) -> GeneratorBasis:
    """Unit-norm generalized Gell-Mann basis for dimension ``n``.

    Order is symmetric off-diagonal pairs, antisymmetric pairs, then diagonal
    matrices, except ``n == 3`` which follows the standard lambda_1..lambda_8
    numbering. For ``n == 2`` this is the Pauli matrices over sqrt(2).
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidArgumentError(f"dimension must be an integer >= 2, got {n!r}")
    return GeneratorBasis(int(n), _basis_array(int(n)))


def check_basis(basis: GeneratorBasis) -> None:
    """Raise :class:`InconsistentBasisError` unless the basis meets its invariants."""
    mats = basis.matrices
    n = basis.n
    if mats.shape != (n * n, n, n):
        raise InconsistentBasisError(f"expected {n * n} matrices of size {n}x{n}, got {mats.shape}")
    res = basis.orthonormality_residual()
    if res > ORTHONORMAL_TOL:
        raise InconsistentBasisError(f"basis is not orthonormal (residual {res:.3e})")
    if not np.allclose(mats[0], np.eye(n) / np.sqrt(n), atol=ORTHONORMAL_TOL):
        raise InconsistentBasisError("F_0 must equal I/sqrt(n)")
    gens = basis.generators
    if np.max(np.abs(gens - np.conj(np.swapaxes(gens, 1, 2))), initial=0.0) > ORTHONORMAL_TOL:
        raise InconsistentBasisError("generators must be Hermitian")


def structure_constants(basis: GeneratorBasis) -> StructureConstants:
    check_basis(basis)
    gens = basis.generators
    # triple[i, j, k] = Tr(F_i F_j F_k)
    triple = np.einsum("iab,jbc,kca->ijk", gens, gens, gens, optimize=True)
    f = -1j * (triple - triple.transpose(1, 0, 2))
    d = triple + triple.transpose(1, 0, 2)
    worst = max(np.max(np.abs(f.imag)), np.max(np.abs(d.imag)))
    if worst >= IMAG_TOL:
        raise InconsistentBasisError(f"structure constants not real (imaginary residue {worst:.3e})")
    f, d = np.ascontiguousarray(f.real), np.ascontiguousarray(d.real)
    f.setflags(write=False)
    d.setflags(write=False)
    return StructureConstants(basis.n, f, d)


@lru_cache(maxsize=None)
def su_n(n: int) -> tuple[GeneratorBasis, StructureConstants]:
    """Cached ``(basis, structure constants)`` pair for dimension ``n``."""
    basis = generate_basis(n)
    return basis, structure_constants(basis)


def check_sum_rule(sc: StructureConstants, t) -> float:
    """Largest violation of ``sum_ik T_{sm,ik} f_ikp = i N d_msp / 2``.

    ``t`` is a :class:`~lindform.kossakowski.TransformationTensor` or the bare
    ``M^2 x M^2`` square tensor.
    """
    square = getattr(t, "T_square", t)
    m = sc.m
    square = np.asarray(square)
    if square.shape != (m * m, m * m) or getattr(t, "n", sc.n) != sc.n:
        raise InvalidArgumentError(
            f"tensor of shape {square.shape} does not match structure constants with M={m}"
        )
    lhs = square.reshape(m, m, m, m)
    lhs = np.einsum("smik,ikp->smp", lhs, sc.f)
    rhs = 0.5j * sc.n * np.einsum("msp->smp", sc.d)
    return float(np.max(np.abs(lhs - rhs)))
