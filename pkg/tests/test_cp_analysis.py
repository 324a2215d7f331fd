import numpy as np
import pytest

from lindform import cp_analysis, kossakowski, sun_basis
from lindform.randmat import random_hermitian, random_psd, random_unitary


def test_spectrum_sorted_descending():
    ev = cp_analysis.spectrum(np.diag([1.0, -2.0, 3.0]))
    assert list(ev) == [3.0, 1.0, -2.0]


def test_verdict_psd_and_not():
    rng = np.random.default_rng(0)
    assert cp_analysis.cp_verdict(random_psd(rng, 8)).is_cp
    bad = cp_analysis.cp_verdict(np.diag([1.0, 0.0, -1e-3]))
    assert not bad.is_cp
    assert bad.min_eigenvalue == pytest.approx(-1e-3)


def test_tolerance_absorbs_roundoff():
    assert cp_analysis.cp_verdict(np.diag([1.0, 0.5, -1e-14])).is_cp
    assert not cp_analysis.cp_verdict(np.diag([1.0, 0.5, -1e-14]), tol=0.0).is_cp


def test_verdict_invariant_under_unitary_change_of_basis():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = random_hermitian(rng, 8)
        u = random_unitary(rng, 8)
        v1, v2 = cp_analysis.cp_verdict(a), cp_analysis.cp_verdict(u @ a @ u.conj().T)
        assert v1.is_cp == v2.is_cp
        assert np.allclose(v1.eigenvalues, v2.eigenvalues)


def test_count_nonzero():
    assert cp_analysis.count_nonzero(np.array([2.0, 1.0, 1e-12, 0.0])) == 2


@pytest.mark.parametrize("n", [2, 3])
def test_lindblad_form_reassembles_dissipator(n):
    rng = np.random.default_rng(n)
    a = random_hermitian(rng, n * n - 1)
    form = cp_analysis.lindblad_form(a)
    ref = kossakowski.reconstruct_dissipator(a)
    assert np.allclose(form.dissipator().matrix, ref.matrix, atol=1e-12)
    rho = random_psd(rng, n)
    assert np.allclose(form.apply(rho), ref(rho), atol=1e-12)


def test_lindblad_operators_are_traceless_and_orthonormal():
    a = random_psd(np.random.default_rng(2), 8)
    ops = cp_analysis.lindblad_form(a).operators
    assert np.allclose(np.einsum("kaa->k", ops), 0)
    gram = np.einsum("iba,jba->ij", ops.conj(), ops)
    assert np.allclose(gram, np.eye(8), atol=1e-12)


def test_restore_cp():
    a = np.diag([1.0, 0.5, -0.2])
    fixed = cp_analysis.restore_cp(a)
    assert np.allclose(fixed.A, np.diag([1.0, 0.5, 0.0]))
    psd = random_psd(np.random.default_rng(3), 8)
    assert np.array_equal(cp_analysis.restore_cp(psd).A, psd)
    assert np.allclose(cp_analysis.restore_cp(fixed).A, fixed.A)


def test_compare_spectra():
    a = random_hermitian(np.random.default_rng(4), 3)
    u = random_unitary(np.random.default_rng(5), 3)
    assert cp_analysis.compare_spectra(a, u @ a @ u.conj().T) < 1e-12
    assert sun_basis.generate_basis(2).m == 3
