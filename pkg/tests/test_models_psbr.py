import itertools

import numpy as np
import pytest

from lindform import kossakowski, models_psbr, superop
from lindform.errors import InvalidArgumentError

GRID = list(itertools.product((0.1, 1.0, 10.0), (0.0, 0.01, 100.0), (0.0, 0.5, 1.0)))


def _p(ratio, nbar, p):
    return models_psbr.PsbrParams(gamma1=ratio, gamma2=1.0, nbar=nbar, p=p)


@pytest.mark.parametrize("build", [models_psbr.v_system_dissipator, models_psbr.lambda_system_dissipator])
@pytest.mark.parametrize("ratio, nbar, p", GRID)
def test_models_are_trace_and_hermiticity_preserving(build, ratio, nbar, p):
    L = build(_p(ratio, nbar, p))
    assert L.ordering == superop.paper_v3()
    assert superop.validate_dissipator(L).passed


def test_v_system_populations_by_hand():
    params = models_psbr.PsbrParams(gamma1=2.0, gamma2=1.0, r1=0.3, r2=0.2, p=0.0)
    rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
    drho = superop.apply(models_psbr.v_system_dissipator(params), rho)
    # excited levels 1, 2 decay to and are pumped from ground level 3
    assert drho[0, 0] == pytest.approx(-(0.3 + 2.0) * 0.2 + 0.3 * 0.5)
    assert drho[1, 1] == pytest.approx(-(0.2 + 1.0) * 0.3 + 0.2 * 0.5)
    assert np.allclose(drho - np.diag(np.diag(drho)), 0)


def test_lambda_system_populations_by_hand():
    params = models_psbr.PsbrParams(gamma1=2.0, gamma2=1.0, r1=0.3, r2=0.2, p=0.0)
    rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
    drho = superop.apply(models_psbr.lambda_system_dissipator(params), rho)
    assert drho[0, 0] == pytest.approx(-0.3 * 0.2 + (0.3 + 2.0) * 0.5)
    assert drho[2, 2] == pytest.approx(0.3 * 0.2 + 0.2 * 0.3 - (0.3 + 0.2 + 2.0 + 1.0) * 0.5)


def test_secular_limit_decouples_coherence():
    L = models_psbr.v_system_dissipator(_p(2.0, 1.0, 0.0))
    rho = np.zeros((3, 3), dtype=complex)
    rho[0, 0] = 1.0
    assert superop.apply(L, rho)[0, 1] == 0


def test_pumping_defaults_to_nbar_times_gamma():
    params = models_psbr.PsbrParams(gamma1=2.0, gamma2=0.5, nbar=3.0)
    assert (params.r1, params.r2) == (6.0, 1.5)
    assert params.gamma12 == pytest.approx(1.0)


@pytest.mark.parametrize(
    "kwargs",
    [dict(gamma1=0.0, gamma2=1.0), dict(gamma1=1.0, gamma2=1.0, nbar=-1), dict(gamma1=1.0, gamma2=1.0, p=1.5),
     dict(gamma1=1.0, gamma2=1.0, r1=-0.1)],
)
def test_invalid_params(kwargs):
    with pytest.raises(InvalidArgumentError):
        models_psbr.PsbrParams(**kwargs)


def test_build_model_unknown_name():
    with pytest.raises(InvalidArgumentError):
        models_psbr.build_model("x", _p(1, 0, 0))


@pytest.mark.parametrize("ratio, nbar, p", GRID)
def test_generic_coherence_form_matches_oracle(ratio, nbar, p):
    params = _p(ratio, nbar, p)
    form = kossakowski.coherence_form(models_psbr.v_system_dissipator(params))
    oracle = models_psbr.v_system_coherence_oracle(params)
    assert np.allclose(form.R, oracle.R, atol=1e-11)
    assert np.allclose(form.k, oracle.k, atol=1e-11)


def test_tabulated_variant_differs_only_in_two_entries():
    params = _p(2.0, 1.0, 0.5)
    fixed = models_psbr.v_system_coherence_oracle(params).R
    printed = models_psbr.v_system_coherence_oracle(params, tabulated=True).R
    diff = np.argwhere(~np.isclose(fixed, printed))
    assert sorted(map(tuple, diff)) == [(2, 7), (7, 2)]


def test_block_entries_at_unit_rates():
    params = models_psbr.PsbrParams(gamma1=1.0, gamma2=1.0, nbar=1.0, p=1.0)
    v5, _ = models_psbr.v_system_blocks(params)
    assert v5[0, 0] == -2.0 and v5[0, 3] == -1.0
    l5, _ = models_psbr.lambda_system_blocks(params)
    assert l5[0, 2] == 2.0 and l5[3, 3] == -1.0
