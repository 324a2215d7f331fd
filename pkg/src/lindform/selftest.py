"""Invariant checks run by ``lindform selftest``.

Each check returns ``(ok, detail)``. Model builders are looked up on their
module at call time so a patched builder is what gets checked.
"""

from __future__ import annotations

import itertools
import time

import numpy as np

from . import cp_analysis, kossakowski, linalg_core, models_psbr, sun_basis, superop
from .randmat import random_density, random_hermitian, random_psd, random_unitary

SEED = 20240607


def _frob(x):
    return float(np.linalg.norm(x))


def check_orthonormality():
    worst = max(sun_basis.generate_basis(n).orthonormality_residual() for n in range(2, 7))
    return worst < 1e-14, f"max residual {worst:.2e} for n=2..6"


def check_closure():
    worst = 0.0
    for n in (2, 3, 4):
        basis, sc = sun_basis.su_n(n)
        g = basis.generators
        for i, j in itertools.product(range(sc.m), repeat=2):
            comm = g[i] @ g[j] - g[j] @ g[i]
            anti = g[i] @ g[j] + g[j] @ g[i]
            comm_rec = 1j * np.einsum("l,lab->ab", sc.f[i, j], g)
            anti_rec = (2.0 / n) * (i == j) * np.eye(n) + np.einsum("l,lab->ab", sc.d[i, j], g)
            worst = max(worst, _frob(comm - comm_rec), _frob(anti - anti_rec))
    return worst < 1e-12, f"max closure error {worst:.2e}"


def check_structure_symmetry():
    worst = 0.0
    for n in (2, 3, 4):
        sc = sun_basis.su_n(n)[1]
        for perm in itertools.permutations(range(3)):
            sign = np.linalg.det(np.eye(3)[list(perm)])
            worst = max(worst, np.max(np.abs(sc.f.transpose(perm) - sign * sc.f)))
            worst = max(worst, np.max(np.abs(sc.d.transpose(perm) - sc.d)))
    return worst < 1e-14, f"max (anti)symmetry violation {worst:.2e}"


def check_sum_rule():
    res = max(
        sun_basis.check_sum_rule(sun_basis.su_n(n)[1], kossakowski.tensor_for(n)) for n in (2, 3)
    )
    return res < 1e-12, f"residual {res:.2e}"


def check_tensor_rank():
    t = kossakowski.tensor_for(3)
    zeros = t.m**2 - linalg_core.numerical_rank(t.square_singular_values)
    aug = linalg_core.numerical_rank(linalg_core.singular_values(t.T_aug))
    return zeros == 8 and aug == 64, f"N=3: {zeros} zero singular values, augmented rank {aug}"


def check_linalg():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for m in (3, 8, 20):
        h = random_hermitian(rng, m)
        eig = linalg_core.hermitian_eig(h)
        u, lam = eig.eigenvectors, eig.eigenvalues
        worst = max(
            worst,
            np.max(np.abs(h @ u - u * lam)) / _frob(h),
            np.max(np.abs(u.conj().T @ u - np.eye(m))),
            abs(lam.sum() - np.trace(h).real) / _frob(h),
            abs((lam**2).sum() - _frob(h) ** 2) / _frob(h) ** 2,
        )
        t = rng.normal(size=(m + 4, m)) + 1j * rng.normal(size=(m + 4, m))
        tp = linalg_core.pseudo_inverse(t)
        for lhs, rhs in (
            (t @ tp @ t, t),
            (tp @ t @ tp, tp),
            ((t @ tp).conj().T, t @ tp),
            ((tp @ t).conj().T, tp @ t),
        ):
            worst = max(worst, _frob(lhs - rhs) / max(1.0, _frob(rhs)))
        sv1 = linalg_core.singular_values(t)
        sv2 = linalg_core.singular_values(t.conj().T)
        worst = max(worst, np.max(np.abs(sv1 - sv2)))
    return worst < 1e-9, f"worst relative error {worst:.2e}"


def check_superop():
    rng = np.random.default_rng(SEED)
    params = models_psbr.PsbrParams(gamma1=2.0, gamma2=1.0, nbar=1.0, p=0.5)
    L = models_psbr.v_system_dissipator(params)
    x, y = random_hermitian(rng, 3), random_hermitian(rng, 3)
    a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    lin = _frob(superop.apply(L, a * x + b * y) - a * superop.apply(L, x) - b * superop.apply(L, y))
    rm = superop.reorder(L, superop.row_major(3))
    back = superop.reorder(rm, superop.paper_v3())
    equiv = max(_frob(superop.apply(rm, z) - superop.apply(L, z)) for z in (x, y))
    ev1 = np.sort_complex(np.linalg.eigvals(L.matrix))
    ev2 = np.sort_complex(np.linalg.eigvals(rm.matrix))
    spec = float(np.max(np.abs(ev1 - ev2)))
    ok = lin < 1e-12 and equiv < 1e-13 and np.array_equal(back.matrix, L.matrix) and spec < 1e-10
    return ok, f"linearity {lin:.1e}, reorder apply {equiv:.1e}, spectrum {spec:.1e}"


def _grid():
    for ratio, nbar, p in itertools.product((0.1, 0.5, 1.0, 2.0, 10.0), (0.01, 1.0, 100.0), (0.0, 0.5, 1.0)):
        yield models_psbr.PsbrParams(gamma1=ratio, gamma2=1.0, nbar=nbar, p=p)


def _models(params):
    return {
        "v": models_psbr.v_system_dissipator(params),
        "lambda": models_psbr.lambda_system_dissipator(params),
    }


def check_models_valid():
    bad = []
    for params in _grid():
        for name, L in _models(params).items():
            if not superop.validate_dissipator(L).passed:
                bad.append((name, params.gamma1, params.nbar, params.p))
    return not bad, f"{len(bad)} invalid model dissipators" + (f", first {bad[0]}" if bad else "")


def check_oracle():
    worst = 0.0
    for params in _grid():
        form = kossakowski.coherence_form(models_psbr.v_system_dissipator(params))
        oracle = models_psbr.v_system_coherence_oracle(params)
        worst = max(worst, np.max(np.abs(form.R - oracle.R)), np.max(np.abs(form.k - oracle.k)))
    return worst < 1e-11, f"max entry deviation {worst:.2e}"


def check_method_agreement():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for n in (2, 3):
        for _ in range(20):
            a = random_psd(rng, n * n - 1)
            L = kossakowski.reconstruct_dissipator(a)
            at = kossakowski.kossakowski_trace(L).A
            ap = kossakowski.kossakowski_via_coherence(L).A
            worst = max(worst, _frob(at - ap) / max(1.0, _frob(at)))
    for params in _grid():
        for L in _models(params).values():
            at = kossakowski.kossakowski_trace(L).A
            ap = kossakowski.kossakowski_via_coherence(L).A
            worst = max(worst, _frob(at - ap) / max(1.0, _frob(at)))
    return worst < 1e-9, f"max relative discrepancy {worst:.2e}"


def check_roundtrips():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for n in (2, 3):
        for _ in range(20):
            a = random_hermitian(rng, n * n - 1)
            back = kossakowski.kossakowski_trace(kossakowski.reconstruct_dissipator(a)).A
            worst = max(worst, _frob(back - a))
    for params in _grid():
        for L in _models(params).values():
            A = kossakowski.kossakowski_trace(L)
            rebuilt = kossakowski.reconstruct_dissipator(A, ordering=L.ordering)
            worst = max(worst, _frob(rebuilt.matrix - L.matrix) / max(1.0, _frob(L.matrix)))
    return worst < 1e-10, f"max roundtrip error {worst:.2e}"


def check_coherence_dynamics():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for params in list(_grid())[::5]:
        L = models_psbr.v_system_dissipator(params)
        basis = sun_basis.generate_basis(3)
        form = kossakowski.coherence_form(L, basis)
        rho = random_density(rng, 3)
        direct = basis.coherence_vector(superop.apply(L, rho))
        affine = form.derivative(basis.coherence_vector(rho))
        worst = max(worst, np.max(np.abs(direct - affine)) / max(1.0, np.max(np.abs(direct))))
    return worst < 1e-11, f"max deviation {worst:.2e}"


def check_cp_properties():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    ok = True
    for n in (2, 3):
        m = n * n - 1
        for _ in range(10):
            a = random_hermitian(rng, m)
            u = random_unitary(rng, m)
            v1 = cp_analysis.cp_verdict(a)
            v2 = cp_analysis.cp_verdict(u @ a @ u.conj().T)
            ok &= v1.is_cp == v2.is_cp
            form = cp_analysis.lindblad_form(a)
            ref = kossakowski.reconstruct_dissipator(a).matrix
            worst = max(worst, _frob(form.dissipator().matrix - ref))
            once = cp_analysis.restore_cp(a).A
            twice = cp_analysis.restore_cp(once).A
            worst = max(worst, _frob(once - twice))
    return ok and worst < 1e-10, f"reassembly/idempotence error {worst:.2e}"


def check_weak_pumping():
    ratios = np.logspace(-1, 1, 15)
    problems = []
    for p, expected in ((1.0, 2), (0.5, 4), (0.0, 4)):
        evs = []
        for ratio in ratios:
            params = models_psbr.PsbrParams(gamma1=ratio, gamma2=1.0, nbar=0.01, p=p)
            ev_v = cp_analysis.spectrum(kossakowski.kossakowski_trace(models_psbr.v_system_dissipator(params)))
            ev_l = cp_analysis.spectrum(kossakowski.kossakowski_trace(models_psbr.lambda_system_dissipator(params)))
            if np.max(np.abs(ev_v - ev_l)) >= 1e-10:
                problems.append(f"V/Lambda spectra differ at p={p}, ratio={ratio:.3g}")
            if ev_v[-1] < -cp_analysis.default_cp_tolerance(ev_v):
                problems.append(f"negative eigenvalue at p={p}, ratio={ratio:.3g}")
            if cp_analysis.count_nonzero(ev_v) != expected:
                problems.append(f"nonzero count {cp_analysis.count_nonzero(ev_v)} at p={p}")
            evs.append(ev_v[:expected])
        evs = np.array(evs)
        if np.min(np.diff(evs, axis=0)) < -1e-12 * max(1.0, evs.max()):
            problems.append(f"non-monotone eigenvalues at p={p}")
    return not problems, "; ".join(problems[:3]) or "counts, CP, monotonicity, V=Lambda ok"


CHECKS = [
    ("basis orthonormality", check_orthonormality),
    ("commutator/anticommutator closure", check_closure),
    ("structure constant symmetry", check_structure_symmetry),
    ("sum rule", check_sum_rule),
    ("tensor rank", check_tensor_rank),
    ("linear algebra invariants", check_linalg),
    ("superoperator linearity/reorder", check_superop),
    ("model dissipators valid", check_models_valid),
    ("coherence oracle agreement", check_oracle),
    ("trace vs pseudo-inverse agreement", check_method_agreement),
    ("roundtrips", check_roundtrips),
    ("coherence-vector dynamics", check_coherence_dynamics),
    ("CP analysis properties", check_cp_properties),
    ("weak-pumping spectrum structure", check_weak_pumping),
]


def run_all(out=print):
    """Run every check, print a table, return True when all pass."""
    all_ok = True
    width = max(len(name) for name, _ in CHECKS)
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        all_ok &= bool(ok)
        out(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {elapsed:6.2f}s  {detail}")
    return all_ok
