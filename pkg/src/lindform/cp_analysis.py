"""Spectra, complete-positivity verdicts and the diagonal Lindblad form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .kossakowski import KossakowskiMatrix, require_hermitian, as_kossakowski
from .linalg_core import hermitian_eig
from .sun_basis import GeneratorBasis, generate_basis
from .superop import Dissipator, VecOrdering, from_map, reorder, row_major

CP_RTOL = 1e-12
NONZERO_RTOL = 1e-9


@dataclass(frozen=True)
class CpVerdict:
    is_cp: bool
    min_eigenvalue: float
    tolerance_used: float
    eigenvalues: np.ndarray


def spectrum(A) -> np.ndarray:
    """Descending eigenvalues of a Kossakowski matrix."""
    A = as_kossakowski(A)
    require_hermitian(A)
    return hermitian_eig(A.A).eigenvalues


def default_cp_tolerance(eigenvalues) -> float:
    return CP_RTOL * max(1.0, float(np.max(eigenvalues, initial=0.0)))


def cp_verdict(A, tol: float | None = None) -> CpVerdict:
    """CP holds iff the smallest eigenvalue is ``>= -tol``.

    ``tol`` defaults to ``1e-12 * max(1, lambda_max)``.
    """
    evals = spectrum(A)
    if tol is None:
        tol = default_cp_tolerance(evals)
    lo = float(evals[-1])
    return CpVerdict(lo >= -tol, lo, float(tol), evals)


def count_nonzero(eigenvalues, rtol: float = NONZERO_RTOL) -> int:
    """Eigenvalues above ``rtol * max(1, lambda_max)``."""
    eigenvalues = np.asarray(eigenvalues)
    return int(np.count_nonzero(eigenvalues > rtol * max(1.0, float(np.max(eigenvalues)))))


@dataclass(frozen=True)
class LindbladForm:
    """``L[rho] = sum_k rate_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho})``."""

    n: int
    rates: np.ndarray
    operators: np.ndarray

    def apply(self, rho) -> np.ndarray:
        rho = np.asarray(rho)
        out = np.zeros((self.n, self.n), dtype=complex)
        for rate, op in zip(self.rates, self.operators):
            dag = op.conj().T
            out += rate * (op @ rho @ dag - 0.5 * (dag @ op @ rho + rho @ dag @ op))
        return out

    def dissipator(self, ordering: VecOrdering | None = None) -> Dissipator:
        L = from_map(self.apply, self.n, row_major(self.n))
        if ordering is not None and ordering.name != L.ordering.name:
            L = reorder(L, ordering)
        return L


def lindblad_form(A, basis: GeneratorBasis | None = None) -> LindbladForm:
    """Diagonalize ``A = U diag(rates) U^dag``; jump operators ``L_k = sum_i U_ik F_i``."""
    A = as_kossakowski(A)
    require_hermitian(A)
    basis = basis or generate_basis(A.n)
    if basis.n != A.n:
        raise InvalidArgumentError(f"basis is for n={basis.n}, Kossakowski matrix has n={A.n}")
    eig = hermitian_eig(A.A)
    ops = np.einsum("ik,iab->kab", eig.eigenvectors, basis.generators)
    return LindbladForm(A.n, eig.eigenvalues, ops)


def restore_cp(A) -> KossakowskiMatrix:
    """Nearest positive semidefinite matrix in Frobenius norm (negative eigenvalues set to zero)."""
    A = as_kossakowski(A)
    require_hermitian(A)
    eig = hermitian_eig(A.A)
    if eig.eigenvalues[-1] >= 0.0:
        return A
    u = eig.eigenvectors
    clipped = (u * np.maximum(eig.eigenvalues, 0.0)) @ u.conj().T
    clipped = 0.5 * (clipped + clipped.conj().T)
    return KossakowskiMatrix(A.n, clipped)


def compare_spectra(A1, A2) -> float:
    """Largest difference between the sorted spectra of two Kossakowski matrices."""
    A1, A2 = as_kossakowski(A1), as_kossakowski(A2)
    if A1.A.shape != A2.A.shape:
        raise InvalidArgumentError(f"dimension mismatch: {A1.A.shape} vs {A2.A.shape}")
    return float(np.max(np.abs(spectrum(A1) - spectrum(A2))))
