"""Partial secular Bloch-Redfield dissipators for incoherently driven
three-level V and Lambda systems.

Both builders return 9x9 supermatrices in the ``paper-v3`` ordering
``(rho11, rho22, rho33, rho12, rho21, rho13, rho31, rho23, rho32)``. They are
block diagonal: a 5x5 block on populations and the 1-2 coherence, a 4x4 block
on the 1-3 and 2-3 coherences. In the V system levels 1, 2 are excited and 3
is the ground state; in the Lambda system 1, 2 are ground states and 3 is
excited. The splitting ``delta`` is Hamiltonian and never enters.

Conventions where the tabulated matrices admit more than one reading:

* V system, 4x4 block: the rho23 diagonal is ``-(r1 + 2 r2 + gamma2)/2``.
* Lambda system, populations: ``d rho_ii/dt = -r_i rho_ii + (r_i + gamma_i) rho33 + ...``;
  ground states are not depleted by spontaneous emission.
* V coherence-vector rate matrix: ``R_38`` and ``R_83`` follow from the
  V-system equations of motion; ``tabulated=True`` gives the alternative
  tabulated values, which those equations do not support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .kossakowski import CoherenceAffineForm
from .superop import Dissipator, paper_v3


@dataclass(frozen=True)
class PsbrParams:
    """Rates for one PSBR model.

    ``r1``/``r2`` default to ``nbar * gamma_i``; pass them explicitly to use
    pumping rates directly.
    """

    gamma1: float
    gamma2: float
    nbar: float = 0.0
    p: float = 0.0
    delta: float = 0.0
    r1: float | None = None
    r2: float | None = None

    def __post_init__(self):
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise InvalidArgumentError(
                f"spontaneous emission rates must be positive, got {self.gamma1}, {self.gamma2}"
            )
        if not self.nbar >= 0:
            raise InvalidArgumentError(f"nbar must be >= 0, got {self.nbar}")
        if not abs(self.p) <= 1:
            raise InvalidArgumentError(f"alignment p must lie in [-1, 1], got {self.p}")
        for name, gamma in (("r1", self.gamma1), ("r2", self.gamma2)):
            value = getattr(self, name)
            if value is None:
                object.__setattr__(self, name, self.nbar * gamma)
            elif not value >= 0:
                raise InvalidArgumentError(f"{name} must be >= 0, got {value}")

    @property
    def gamma12(self) -> float:
        return float(np.sqrt(self.gamma1 * self.gamma2))

    @property
    def r12(self) -> float:
        return float(np.sqrt(self.r1 * self.r2))

    def xi12(self) -> float:
        return -0.5 * self.p * (self.r12 + self.gamma12)


def _assemble(block5, block4) -> Dissipator:
    mat = np.zeros((9, 9))
    mat[:5, :5] = block5
    mat[5:, 5:] = block4
    return Dissipator(3, paper_v3(), mat)


def v_system_blocks(params: PsbrParams):
    r1, r2, g1, g2, p = params.r1, params.r2, params.gamma1, params.gamma2, params.p
    xi = params.xi12()
    pr = p * params.r12
    coh = -0.5 * (r1 + r2 + g1 + g2)
    block5 = np.array(
        [
            [-(r1 + g1), 0.0, r1, xi, xi],
            [0.0, -(r2 + g2), r2, xi, xi],
            [r1 + g1, r2 + g2, -(r1 + r2), -2 * xi, -2 * xi],
            [xi, xi, pr, coh, 0.0],
            [xi, xi, pr, 0.0, coh],
        ]
    )
    d13 = -0.5 * (2 * r1 + r2 + g1)
    d23 = -0.5 * (r1 + 2 * r2 + g2)
    block4 = np.array(
        [
            [d13, 0.0, xi, 0.0],
            [0.0, d13, 0.0, xi],
            [xi, 0.0, d23, 0.0],
            [0.0, xi, 0.0, d23],
        ]
    )
    return block5, block4


def lambda_system_blocks(params: PsbrParams):
    r1, r2, g1, g2, p = params.r1, params.r2, params.gamma1, params.gamma2, params.p
    xi = params.xi12()
    h = -0.5 * p * params.r12
    pr = p * params.r12
    coh = -0.5 * (r1 + r2)
    block5 = np.array(
        [
            [-r1, 0.0, r1 + g1, h, h],
            [0.0, -r2, r2 + g2, h, h],
            [r1, r2, -(r1 + r2 + g1 + g2), pr, pr],
            [h, h, -2 * xi, coh, 0.0],
            [h, h, -2 * xi, 0.0, coh],
        ]
    )
    d13 = -0.5 * (g1 + g2 + 2 * r1 + r2)
    d23 = -0.5 * (g1 + g2 + r1 + 2 * r2)
    block4 = np.array(
        [
            [d13, 0.0, h, 0.0],
            [0.0, d13, 0.0, h],
            [h, 0.0, d23, 0.0],
            [0.0, h, 0.0, d23],
        ]
    )
    return block5, block4


def v_system_dissipator(params: PsbrParams) -> Dissipator:
    return _assemble(*v_system_blocks(params))


def lambda_system_dissipator(params: PsbrParams) -> Dissipator:
    return _assemble(*lambda_system_blocks(params))


MODELS = ("v", "lambda")


def build_model(name: str, params: PsbrParams) -> Dissipator:
    if name == "v":
        return v_system_dissipator(params)
    if name == "lambda":
        return lambda_system_dissipator(params)
    raise InvalidArgumentError(f"unknown model {name!r}; expected one of {MODELS}")


def v_system_coherence_oracle(params: PsbrParams, tabulated: bool = False) -> CoherenceAffineForm:
    """Hand-written ``R`` and ``k`` of the V system in the Gell-Mann coherence vector.

    The layout is ``v = sqrt(2) (Re rho12, -Im rho12, (rho11 - rho22)/2,
    Re rho13, -Im rho13, Re rho23, -Im rho23, (rho11 + rho22 - 2 rho33)/sqrt(12))``.
    This is written out entry by entry and shares no code with
    :func:`~lindform.kossakowski.coherence_form`.
    """
    r1, r2, g1, g2, p = params.r1, params.r2, params.gamma1, params.gamma2, params.p
    r12, g12 = params.r12, params.gamma12
    rbar, gbar = 0.5 * (r1 + r2), 0.5 * (g1 + g2)
    s3 = np.sqrt(3.0)
    R = np.zeros((8, 8))
    # 1-based (row, col) labels
    entries = {
        (1, 1): -rbar - gbar,
        (1, 8): -p * s3 / 3 * (3 * r12 + g12),
        (2, 2): -rbar - gbar,
        (3, 3): -rbar - gbar,
        (3, 8): -(3 * (r1 - r2) + (g1 - g2)) / (2 * s3),
        (4, 4): -0.5 * (2 * r1 + r2 + g1),
        (4, 6): -0.5 * p * (r12 + g12),
        (5, 5): -0.5 * (2 * r1 + r2 + g1),
        (5, 7): -0.5 * p * (r12 + g12),
        (6, 4): -0.5 * p * (r12 + g12),
        (6, 6): -0.5 * (r1 + 2 * r2 + g2),
        (7, 5): -0.5 * p * (r12 + g12),
        (7, 7): -0.5 * (r1 + 2 * r2 + g2),
        (8, 1): -p * s3 * (r12 + g12),
        (8, 3): -0.5 * s3 * ((r1 + g1) - (r2 + g2)),
        (8, 8): -3 * rbar - gbar,
    }
    if tabulated:
        entries[3, 8] = -p * s3 / 3 * (3 * r12 + g12)
        entries[8, 3] = -0.5 * s3 * (-(r1 + g1) + r2 + g2)
    for (row, col), value in entries.items():
        R[row - 1, col - 1] = value
    k = np.array(
        [
            -p * np.sqrt(2.0) / 3 * g12,
            0.0,
            -(g1 - g2) / (3 * np.sqrt(2.0)),
            0.0,
            0.0,
            0.0,
            0.0,
            -(g1 + g2) / np.sqrt(6.0),
        ]
    )
    return CoherenceAffineForm(R, k)
