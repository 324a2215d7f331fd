"""Kossakowski matrix extraction and the inverse map back to a supermatrix.

Two independent routes are provided:

* :func:`kossakowski_trace` evaluates the dissipator on the full basis and
  contracts with matrix-product traces.
* :func:`kossakowski_pinv` goes through the coherence-vector rate matrix
  ``R`` and driving vector ``k`` and solves the augmented linear system
  ``T a = r`` with the Moore-Penrose pseudo-inverse of ``T``.

Composite indices use one convention throughout: the pair ``(s, m)`` of
``R`` and the pair ``(i, k)`` of ``A`` both map to ``first * M + second``
(row-major), so ``r = concat(R.ravel(), k)`` and ``A = a.reshape(M, M)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import linalg_core
from .errors import (
    InvalidArgumentError,
    InvalidDissipatorError,
    NonGKLSRepresentableError,
    NonHermiticityPreservingError,
    TensorConstructionError,
)
from .sun_basis import GeneratorBasis, StructureConstants, generate_basis, su_n
from .superop import (
    Dissipator,
    VecOrdering,
    apply,
    reorder,
    row_major,
    validate_dissipator,
)

HERMITIAN_RTOL = 1e-10
IMAG_TOL = 1e-10
PINV_RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class KossakowskiMatrix:
    """Hermitian coefficient matrix over the traceless generators.

    ``hermitization_residual`` is ``||A_raw - A_raw^dagger||_F`` of the matrix
    before it was replaced by ``(A_raw + A_raw^dagger)/2``.
    """

    n: int
    A: np.ndarray
    hermitization_residual: float = 0.0

    @property
    def m(self) -> int:
        return self.n * self.n - 1

    def __array__(self, dtype=None, copy=None):
        return self.A if dtype is None else self.A.astype(dtype)


def as_kossakowski(a, n=None) -> KossakowskiMatrix:
    if isinstance(a, KossakowskiMatrix):
        return a
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidArgumentError(f"Kossakowski matrix must be square, got {arr.shape}")
    if n is None:
        n = int(round(np.sqrt(arr.shape[0] + 1)))
    if n * n - 1 != arr.shape[0]:
        raise InvalidArgumentError(f"size {arr.shape[0]} is not n^2-1 for any integer n")
    return KossakowskiMatrix(n, arr)


def hermitize(raw, n) -> KossakowskiMatrix:
    raw = np.asarray(raw, dtype=complex)
    residual = float(np.linalg.norm(raw - raw.conj().T))
    return KossakowskiMatrix(n, 0.5 * (raw + raw.conj().T), residual)


def require_hermitian(A: KossakowskiMatrix):
    res = np.linalg.norm(A.A - A.A.conj().T)
    if res > HERMITIAN_RTOL * max(1.0, np.linalg.norm(A.A)):
        raise InvalidArgumentError(f"Kossakowski matrix is not Hermitian (residual {res:.3e})", residual=res)


def _basis_for(L: Dissipator, basis: GeneratorBasis | None) -> GeneratorBasis:
    if basis is None:
        return generate_basis(L.n)
    if basis.n != L.n:
        raise InvalidArgumentError(f"basis is for n={basis.n}, dissipator has n={L.n}")
    return basis


def _images(L: Dissipator, basis: GeneratorBasis) -> np.ndarray:
    return np.array([apply(L, f) for f in basis.matrices])


def kossakowski_trace(L: Dissipator, basis: GeneratorBasis | None = None) -> KossakowskiMatrix:
    """Kossakowski matrix from ``a_ij = sum_{m=0}^{M} Tr(F_i L[F_m] F_j F_m)``.

    The ``m = 0`` term (``F_0 = I/sqrt(n)``) is included. Any Hamiltonian
    commutator contained in ``L`` drops out of this contraction.

    Raises
    ------
    InvalidDissipatorError
        If ``L`` fails :func:`~lindform.superop.validate_dissipator`.
    """
    basis = _basis_for(L, basis)
    report = validate_dissipator(L)
    if not report.passed:
        raise InvalidDissipatorError(
            "dissipator is not trace-annihilating and Hermiticity-preserving: "
            f"trace residual {report.trace_residual:.3e}, "
            f"hermiticity residual {report.hermiticity_residual:.3e}",
            report,
        )
    full = basis.matrices
    gens = basis.generators
    images = _images(L, basis)
    raw = np.einsum("iab,mbc,jcd,mda->ij", gens, images, gens, full, optimize=True)
    return hermitize(raw, L.n)


@dataclass(frozen=True)
class CoherenceAffineForm:
    """Dissipative part of ``dv/dt = R v + k`` for ``rho = I/n + sum_i v_i F_i``."""

    R: np.ndarray
    k: np.ndarray

    def derivative(self, v) -> np.ndarray:
        return self.R @ np.asarray(v) + self.k

    def rhs_vector(self) -> np.ndarray:
        """``r = concat(vec(R), k)`` with row-major ``vec``."""
        return np.concatenate([self.R.reshape(-1), self.k])


def coherence_form(L: Dissipator, basis: GeneratorBasis | None = None) -> CoherenceAffineForm:
    """``R_sm = Tr(F_s L[F_m])`` and ``k_s = Tr(F_s L[I]) / n``."""
    basis = _basis_for(L, basis)
    gens = basis.generators
    images = _images(L, basis)[1:]
    R = np.einsum("sab,mba->sm", gens, images)
    drive = apply(L, np.eye(L.n))
    k = np.einsum("sab,ba->s", gens, drive) / L.n
    scale = max(1.0, float(np.max(np.abs(R), initial=0.0)), float(np.max(np.abs(k), initial=0.0)))
    worst = max(float(np.max(np.abs(R.imag), initial=0.0)), float(np.max(np.abs(k.imag), initial=0.0)))
    if worst >= IMAG_TOL * scale:
        raise NonHermiticityPreservingError(
            f"rate matrix or driving vector has imaginary residue {worst:.3e}"
        )
    return CoherenceAffineForm(np.ascontiguousarray(R.real), np.ascontiguousarray(k.real))


@dataclass(frozen=True)
class TransformationTensor:
    """Square tensor mapping ``vec(A)`` to ``vec(R)`` and its augmented form.

    ``T_aug`` stacks ``M`` extra rows below ``T_square`` whose entries are the
    coefficients of ``a_ik`` in the driving vector ``k_s``.
    """

    n: int
    T_square: np.ndarray
    T_aug: np.ndarray

    @property
    def m(self) -> int:
        return self.n * self.n - 1

    @cached_property
    def pinv(self) -> np.ndarray:
        return linalg_core.pseudo_inverse(self.T_aug)

    @cached_property
    def square_singular_values(self) -> np.ndarray:
        return linalg_core.singular_values(self.T_square)


def square_tensor(sc: StructureConstants) -> np.ndarray:
    """``T[s,m,i,k] = -1/4 sum_l [(f_mil + i d_mil) f_kls + (f_klm - i d_klm) f_ils]``.

    Returned reshaped to ``(M^2, M^2)`` with rows ``(s, m)`` and columns ``(i, k)``.
    """
    f, d = sc.f, sc.d
    m = sc.m
    z = f + 1j * d
    first = np.einsum("mil,kls->smik", z, f, optimize=True)
    second = np.einsum("klm,ils->smik", np.conj(z), f, optimize=True)
    return (-0.25 * (first + second)).reshape(m * m, m * m)


def drive_rows(sc: StructureConstants) -> np.ndarray:
    """Rows ``[s, (i, k)] = (i/n) f_iks``, from ``L[I] = sum_ik a_ik [F_i, F_k]``."""
    m = sc.m
    return (1j / sc.n) * np.einsum("iks->sik", sc.f).reshape(m, m * m)


def build_tensor(sc: StructureConstants, n: int | None = None) -> TransformationTensor:
    """Assemble the square and augmented tensors and check their ranks.

    Raises
    ------
    TensorConstructionError
        If the square tensor does not have exactly ``M`` zero singular values or
        the augmented tensor is not of full column rank.
    """
    n = sc.n if n is None else n
    if n != sc.n:
        raise InvalidArgumentError(f"structure constants are for n={sc.n}, requested n={n}")
    m = sc.m
    sq = square_tensor(sc)
    aug = np.vstack([sq, drive_rows(sc)])
    sq.setflags(write=False)
    aug.setflags(write=False)
    t = TransformationTensor(n, sq, aug)
    zeros = m * m - linalg_core.numerical_rank(t.square_singular_values)
    if zeros != m:
        raise TensorConstructionError(f"square tensor has {zeros} zero singular values, expected {m}")
    aug_rank = linalg_core.numerical_rank(linalg_core.singular_values(aug))
    if aug_rank != m * m:
        raise TensorConstructionError(f"augmented tensor has rank {aug_rank}, expected {m * m}")
    return t


@lru_cache(maxsize=None)
def tensor_for(n: int) -> TransformationTensor:
    """Cached, validated tensor for dimension ``n``; safe to share."""
    return build_tensor(su_n(n)[1], n)


def kossakowski_pinv(form: CoherenceAffineForm, t: TransformationTensor | None = None) -> KossakowskiMatrix:
    """Solve ``T a = concat(vec(R), k)`` with ``a = T^+ r``.

    Raises
    ------
    NonGKLSRepresentableError
        If ``||T a - r|| > 1e-9 * max(1, ||r||)``: no Hermitian ``A`` produces
        this ``(R, k)``, e.g. because the input carries a Hamiltonian part.
    """
    m = form.R.shape[0]
    if t is None:
        n = int(round(np.sqrt(m + 1)))
        t = tensor_for(n)
    if form.R.shape != (t.m, t.m) or form.k.shape != (t.m,):
        raise InvalidArgumentError(
            f"rate matrix {form.R.shape} / drive {form.k.shape} do not match M={t.m}"
        )
    r = form.rhs_vector()
    a = t.pinv @ r
    residual = float(np.linalg.norm(t.T_aug @ a - r))
    if residual > PINV_RESIDUAL_RTOL * max(1.0, float(np.linalg.norm(r))):
        raise NonGKLSRepresentableError(
            f"rates are not reproducible by any Kossakowski matrix (residual {residual:.3e})",
            residual,
        )
    return hermitize(a.reshape(t.m, t.m), t.n)


def kossakowski_via_coherence(L: Dissipator, basis: GeneratorBasis | None = None) -> KossakowskiMatrix:
    basis = _basis_for(L, basis)
    return kossakowski_pinv(coherence_form(L, basis), tensor_for(L.n))


def reconstruct_dissipator(
    A, basis: GeneratorBasis | None = None, ordering: VecOrdering | None = None
) -> Dissipator:
    """Supermatrix of ``1/2 sum_ik a_ik (2 F_i rho F_k - rho F_k F_i - F_k F_i rho)``."""
    A = as_kossakowski(A)
    require_hermitian(A)
    n = A.n
    basis = basis or generate_basis(n)
    if basis.n != n:
        raise InvalidArgumentError(f"basis is for n={basis.n}, Kossakowski matrix has n={n}")
    gens = basis.generators
    eye = np.eye(n)
    # row-major vec: vec(X B Y) = (X kron Y^T) vec(B)
    sandwich = np.einsum("ik,iab,kdc->acbd", A.A, gens, gens, optimize=True).reshape(n * n, n * n)
    g = np.einsum("ik,kab,ibc->ac", A.A, gens, gens)
    mat = sandwich - 0.5 * (np.kron(g, eye) + np.kron(eye, g.T))
    L = Dissipator(n, row_major(n), mat)
    if ordering is not None and ordering.name != L.ordering.name:
        L = reorder(L, ordering)
    return L
