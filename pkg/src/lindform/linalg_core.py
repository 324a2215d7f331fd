"""Small dense linear algebra: Hermitian eigenproblem, singular values,
pseudo-inverse and LU solves.

Everything here targets matrices of at most a few hundred rows. The
eigensolver is a cyclic Jacobi method with round-robin (parallel) pair
ordering so that each round of disjoint rotations is one vectorized numpy
update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    InvalidArgumentError,
    RankDeficiencyError,
    SingularMatrixError,
)

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-14
ZERO_SV_RTOL = 1e-10
GRAM_CLAMP_RTOL = 1e-15
MAX_SWEEPS = 100


@dataclass(frozen=True)
class HermitianEig:
    """Eigenvalues in descending order and the matching unitary eigenvectors.

    Column ``k`` of ``eigenvectors`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _round_robin(m):
    """Yield rounds of disjoint index pairs covering every pair once."""
    players = list(range(m)) if m % 2 == 0 else list(range(m)) + [-1]
    size = len(players)
    for _ in range(size - 1):
        pairs = []
        for k in range(size // 2):
            a, b = players[k], players[size - 1 - k]
            if a >= 0 and b >= 0:
                pairs.append((min(a, b), max(a, b)))
        if pairs:
            p, q = np.array(pairs).T
            yield p, q
        players = [players[0]] + [players[-1]] + players[1:-1]


def _off_norm(h):
    off = h.copy()
    np.fill_diagonal(off, 0.0)
    return np.linalg.norm(off)


def _jacobi(h):
    m = h.shape[0]
    v = np.eye(m, dtype=complex)
    scale = np.linalg.norm(h)
    if m == 1 or scale == 0.0:
        return np.real(np.diag(h)).copy(), v
    rounds = list(_round_robin(m))
    for _ in range(MAX_SWEEPS):
        if _off_norm(h) <= JACOBI_TOL * scale:
            break
        for p, q in rounds:
            hpq = h[p, q]
            c = np.abs(hpq)
            active = c > 1e-300
            if not active.any():
                continue
            a = h[p, p].real
            b = h[q, q].real
            safe_c = np.where(active, c, 1.0)
            phase = np.where(active, hpq / safe_c, 1.0)
            tau = (b - a) / (2.0 * safe_c)
            sign = np.where(tau >= 0.0, 1.0, -1.0)
            t = sign / (np.abs(tau) + np.hypot(1.0, tau))
            cs = 1.0 / np.hypot(1.0, t)
            sn = np.where(active, t * cs, 0.0)
            cs = np.where(active, cs, 1.0)
            # J restricted to (p, q) is [[cs, sn], [-sn*conj(e), cs*conj(e)]]
            pc = np.conj(phase)
            colp, colq = h[:, p].copy(), h[:, q].copy()
            h[:, p] = colp * cs - colq * (sn * pc)
            h[:, q] = colp * sn + colq * (cs * pc)
            rowp, rowq = h[p, :].copy(), h[q, :].copy()
            h[p, :] = cs[:, None] * rowp - (sn * phase)[:, None] * rowq
            h[q, :] = sn[:, None] * rowp + (cs * phase)[:, None] * rowq
            h[p, q] = 0.0
            h[q, p] = 0.0
            idx = np.concatenate([p, q])
            h[idx, idx] = h[idx, idx].real
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * cs - vq * (sn * pc)
            v[:, q] = vp * sn + vq * (cs * pc)
    else:
        raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return np.real(np.diag(h)).copy(), v


def _fix_phases(vecs):
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        cutoff = 1e-12 * np.max(np.abs(col))
        lead = np.flatnonzero(np.abs(col) > cutoff)[0]
        out[:, k] = col * (np.abs(col[lead]) / col[lead])
    return out


def hermitian_eig(h) -> HermitianEig:
    """Diagonalize a complex Hermitian matrix.

    The input is Hermitized as ``(H + H^dagger)/2`` first. Eigenvalues come
    back descending (stable for ties); each eigenvector is scaled so its first
    non-negligible component is real and positive, which makes the output a
    deterministic function of the input.

    Raises
    ------
    InvalidArgumentError
        If ``||H - H^dagger||_F`` exceeds ``1e-10 * max(1, ||H||_F)``; the
        residual is attached as ``.residual``.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {h.shape}")
    residual = float(np.linalg.norm(h - h.conj().T))
    if residual > HERMITIAN_TOL * max(1.0, np.linalg.norm(h)):
        raise InvalidArgumentError(
            f"matrix is not Hermitian (residual {residual:.3e})", residual=residual
        )
    work = 0.5 * (h + h.conj().T)
    values, vectors = _jacobi(work)
    order = np.argsort(-values, kind="stable")
    return HermitianEig(values[order], _fix_phases(vectors[:, order]))


def eigvalsh_desc(h) -> np.ndarray:
    return hermitian_eig(h).eigenvalues


def singular_values(m) -> np.ndarray:
    """Singular values, descending, from the eigenvalues of the smaller Gram matrix.

    Gram eigenvalues below ``1e-15`` of the largest are clamped to zero before
    the square root, so analytic zeros are returned as exact zeros.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise InvalidArgumentError(f"expected a 2-D array, got shape {m.shape}")
    if m.size == 0:
        return np.zeros(0)
    gram = m.conj().T @ m if m.shape[0] >= m.shape[1] else m @ m.conj().T
    lam = eigvalsh_desc(gram)
    top = lam[0] if lam.size else 0.0
    lam = np.where(lam < GRAM_CLAMP_RTOL * top, 0.0, lam)
    return np.sqrt(lam)


def numerical_rank(sv, rtol=ZERO_SV_RTOL) -> int:
    sv = np.asarray(sv)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv >= rtol * sv[0]))


def lu_factor(a):
    """LU factorization with partial row pivoting, ``P A = L U`` packed in one array."""
    lu = np.array(a, dtype=complex)
    n = lu.shape[0]
    piv = np.arange(n)
    scale = np.max(np.abs(lu)) if lu.size else 0.0
    tiny = n * np.finfo(float).eps * scale
    for k in range(n):
        r = k + int(np.argmax(np.abs(lu[k:, k])))
        if np.abs(lu[r, k]) <= tiny:
            raise SingularMatrixError(f"matrix is singular to working precision (column {k})")
        if r != k:
            lu[[k, r]] = lu[[r, k]]
            piv[[k, r]] = piv[[r, k]]
        lu[k + 1 :, k] /= lu[k, k]
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, piv


def lu_solve(lu, piv, b):
    b = np.asarray(b, dtype=complex)
    x = b[piv].copy()
    n = lu.shape[0]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1 :] @ x[i + 1 :]) / lu[i, i]
    return x


def solve(a, b):
    """Solve ``A x = b`` for square nonsingular ``A``; ``b`` may hold several columns."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgumentError(f"A must be square, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise InvalidArgumentError(f"b has {b.shape[0]} rows, A has {a.shape[0]}")
    lu, piv = lu_factor(a)
    return lu_solve(lu, piv, b)


def pseudo_inverse(t) -> np.ndarray:
    """Moore-Penrose pseudo-inverse ``(T^dagger T)^{-1} T^dagger`` of a tall full-rank matrix.

    Raises
    ------
    InvalidArgumentError
        If ``T`` has more columns than rows.
    RankDeficiencyError
        If ``sigma_min / sigma_max <= 1e-10``.
    """
    t = np.asarray(t, dtype=complex)
    if t.ndim != 2 or t.shape[0] < t.shape[1]:
        raise InvalidArgumentError(f"need a tall matrix (p >= q), got shape {t.shape}")
    sv = singular_values(t)
    ratio = float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0
    if ratio <= ZERO_SV_RTOL:
        raise RankDeficiencyError(
            f"T is rank deficient: sigma_min/sigma_max = {ratio:.3e}", ratio=ratio
        )
    th = t.conj().T
    return solve(th @ t, th)
