"""Liouvillian supermatrices, vectorization orderings and the JSON document format.

A supermatrix acts on ``vec(X)``. Two orderings exist:

``row-major``
    slot ``i*n + j`` holds ``X[i, j]``.
``paper-v3``
    three-level only: ``(X11, X22, X33, X12, X21, X13, X31, X23, X32)``
    (1-based labels), i.e. populations first, then the 1-2, 1-3, 2-3
    coherence pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, InvalidDocumentError

ROW_MAJOR = "row-major"
PAPER_V3 = "paper-v3"
VALIDATION_RTOL = 1e-12

_PAPER_V3_PAIRS = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]


@dataclass(frozen=True)
class VecOrdering:
    """``permutation[i*n + j]`` is the slot of ``X[i, j]`` in ``vec(X)``."""

    name: str
    n: int
    permutation: tuple

    def __post_init__(self):
        if sorted(self.permutation) != list(range(self.n * self.n)):
            raise InvalidArgumentError(f"ordering {self.name!r} is not a bijection on 0..n^2-1")

    @property
    def index(self) -> np.ndarray:
        return np.asarray(self.permutation)


def row_major(n: int) -> VecOrdering:
    return VecOrdering(ROW_MAJOR, n, tuple(range(n * n)))


def paper_v3() -> VecOrdering:
    perm = [0] * 9
    for slot, (i, j) in enumerate(_PAPER_V3_PAIRS):
        perm[3 * i + j] = slot
    return VecOrdering(PAPER_V3, 3, tuple(perm))


def get_ordering(name: str, n: int) -> VecOrdering:
    if name == ROW_MAJOR:
        return row_major(n)
    if name == PAPER_V3:
        if n != 3:
            raise InvalidArgumentError(f"'{PAPER_V3}' ordering exists only for n=3, got n={n}")
        return paper_v3()
    raise InvalidArgumentError(f"unknown ordering {name!r}")


def vec(x, ordering: VecOrdering) -> np.ndarray:
    x = np.asarray(x)
    n = ordering.n
    if x.shape != (n, n):
        raise InvalidArgumentError(f"expected a {n}x{n} matrix, got shape {x.shape}")
    out = np.empty(n * n, dtype=complex)
    out[ordering.index] = x.reshape(-1)
    return out


def devec(v, ordering: VecOrdering) -> np.ndarray:
    v = np.asarray(v)
    n = ordering.n
    if v.shape != (n * n,):
        raise InvalidArgumentError(f"expected a vector of length {n * n}, got shape {v.shape}")
    return v[ordering.index].reshape(n, n).astype(complex)


@dataclass(frozen=True)
class Dissipator:
    """An ``n^2 x n^2`` supermatrix acting on ``vec(X)`` in the given ordering."""

    n: int
    ordering: VecOrdering
    matrix: np.ndarray

    def __post_init__(self):
        if self.ordering.n != self.n:
            raise InvalidArgumentError(
                f"ordering is for n={self.ordering.n}, dissipator has n={self.n}"
            )
        mat = np.array(self.matrix, dtype=complex)
        if mat.shape != (self.n**2, self.n**2):
            raise InvalidArgumentError(
                f"supermatrix must be {self.n**2}x{self.n**2}, got {mat.shape}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def __call__(self, x):
        return apply(self, x)


def dissipator(matrix, n=None, ordering=ROW_MAJOR) -> Dissipator:
    """Convenience constructor taking an ordering name or object."""
    matrix = np.asarray(matrix)
    if n is None:
        n = int(round(np.sqrt(matrix.shape[0])))
    if isinstance(ordering, str):
        ordering = get_ordering(ordering, n)
    return Dissipator(n, ordering, matrix)


def from_map(fn, n: int, ordering: VecOrdering | None = None) -> Dissipator:
    """Tabulate a linear map on ``n x n`` matrices as a supermatrix, column by column."""
    ordering = ordering or row_major(n)
    mat = np.zeros((n * n, n * n), dtype=complex)
    for slot in range(n * n):
        e = np.zeros(n * n)
        e[slot] = 1.0
        mat[:, slot] = vec(fn(devec(e, ordering)), ordering)
    return Dissipator(n, ordering, mat)


def apply(L: Dissipator, x) -> np.ndarray:
    return devec(L.matrix @ vec(x, L.ordering), L.ordering)


@dataclass(frozen=True)
class ValidationReport:
    trace_residual: float
    hermiticity_residual: float
    tolerance: float

    @property
    def trace_ok(self) -> bool:
        return self.trace_residual <= self.tolerance

    @property
    def hermiticity_ok(self) -> bool:
        return self.hermiticity_residual <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.trace_ok and self.hermiticity_ok

    def as_dict(self):
        return {
            "trace_residual": self.trace_residual,
            "hermiticity_residual": self.hermiticity_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def validate_dissipator(L: Dissipator) -> ValidationReport:
    """Check trace annihilation and Hermiticity preservation on all matrix units.

    Residuals are absolute; the pass threshold is ``1e-12 * ||L||_F``.
    """
    n = L.n
    images = {}
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n))
            unit[i, j] = 1.0
            images[i, j] = apply(L, unit)
    trace_res = max(abs(np.trace(y)) for y in images.values())
    herm_res = max(
        float(np.max(np.abs(images[j, i] - images[i, j].conj().T))) for i, j in images
    )
    tol = VALIDATION_RTOL * float(np.linalg.norm(L.matrix))
    return ValidationReport(float(trace_res), herm_res, tol)


def reorder(L: Dissipator, to: VecOrdering) -> Dissipator:
    """Same superoperator expressed in another ordering, ``P L P^T``."""
    if to.n != L.n:
        raise InvalidArgumentError(f"ordering is for n={to.n}, dissipator has n={L.n}")
    src, dst = L.ordering.index, to.index
    mat = np.empty_like(L.matrix)
    mat[np.ix_(dst, dst)] = L.matrix[np.ix_(src, src)]
    return Dissipator(L.n, to, mat)


def to_document(L: Dissipator) -> dict:
    pairs = np.stack([L.matrix.real, L.matrix.imag], axis=-1)
    return {"n": L.n, "ordering": L.ordering.name, "matrix": pairs.tolist()}


def from_document(doc) -> Dissipator:
    try:
        n = doc["n"]
        name = doc["ordering"]
        raw = doc["matrix"]
    except (KeyError, TypeError) as exc:
        raise InvalidDocumentError(f"missing field in Liouvillian document: {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidDocumentError(f"'n' must be a positive integer, got {n!r}")
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidDocumentError(f"'matrix' is not a numeric array: {exc}") from exc
    if arr.shape != (n * n, n * n, 2):
        raise InvalidDocumentError(
            f"'matrix' must be {n * n}x{n * n} [re, im] pairs, got shape {arr.shape}"
        )
    try:
        ordering = get_ordering(name, n)
    except InvalidArgumentError as exc:
        raise InvalidDocumentError(str(exc)) from exc
    return Dissipator(n, ordering, arr[..., 0] + 1j * arr[..., 1])


def dumps(L: Dissipator) -> str:
    return json.dumps(to_document(L))


def loads(text: str) -> Dissipator:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDocumentError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def save(L: Dissipator, path) -> None:
    Path(path).write_text(dumps(L))


def load(path) -> Dissipator:
    return loads(Path(path).read_text())
