import math

import numpy as np
import pytest

import stdsn


def test_record_round_trip():
    p = stdsn.StateParams(r=0.3, alpha1=0.5, alpha2=0.4, eps_mag=1.0, phi=math.pi)
    assert stdsn.StateParams.from_record(p.to_record()) == p
    assert p.classify() == "odd"
    assert p.swapped().alpha1 == 0.4


def test_odd_vacuum_is_degenerate():
    with pytest.raises(stdsn.DegenerateState):
        stdsn.derive(stdsn.StateParams(r=0.7, eps_mag=1.0, phi=math.pi))
    assert issubclass(stdsn.DegenerateState, stdsn.Error)


def test_bad_input_raises_domain_error():
    with pytest.raises(stdsn.DomainError):
        stdsn.StateParams(eps_mag=-1.0)
    with pytest.raises(stdsn.DomainError):
        stdsn.g2(stdsn.StateParams(alpha1=1.0), mode="c")


def test_squeezed_vacuum_coefficients_and_moments():
    r = 0.6
    p = stdsn.StateParams(r=r)
    for k in range(6):
        assert stdsn.fock_coefficient(p, k, k) == pytest.approx((-math.tanh(r)) ** k / math.cosh(r), abs=1e-14)
    assert stdsn.mean_photon(p) == pytest.approx(math.sinh(r) ** 2, rel=1e-12)
    assert stdsn.g2(p) == pytest.approx(1.0, abs=1e-12)
    assert stdsn.cs_factor(p) < 0


def test_amplitude_table_is_normalized():
    p = stdsn.StateParams(r=0.4, alpha1=1.0, alpha2=0.5, eps_mag=0.7, phi=2.0)
    amps = stdsn.fock_amplitudes(p, 1e-12)
    assert np.sum(np.abs(amps) ** 2) == pytest.approx(1.0, abs=1e-12)
    value, tail = stdsn.marginal_pnd(p, 1, amps.shape[0])
    assert value == pytest.approx(np.sum(np.abs(amps[1, :]) ** 2), abs=1e-12)
    assert tail < 1e-10


def test_squeeze_factors_vacuum_limits():
    r = 0.5
    f = stdsn.squeeze_factors(stdsn.StateParams(r=r), math.pi / 4)
    assert f.F == pytest.approx(math.exp(-2 * r) - 1, abs=1e-12)
    assert f.S == pytest.approx(math.exp(2 * r) - 1, abs=1e-12)
    rc = stdsn.squeezing_loss_r(stdsn.StateParams(alpha1=0.6, alpha2=0.6, eps_mag=1.0))
    assert 0.30 <= rc <= 0.40


def test_phase_space():
    vac = stdsn.StateParams()
    assert stdsn.wigner(vac, 0.0, 0.0) == pytest.approx(2 / math.pi, abs=1e-15)
    assert stdsn.qfunc(vac, 0.0, 0.0) == pytest.approx(1 / math.pi, abs=1e-15)
    assert stdsn.char_fn(vac, 0j) == pytest.approx(1.0)
    g = stdsn.grid(vac, "W", (-1.0, 1.0, 5), (-1.0, 1.0, 3))
    assert g.shape == (3, 5)
    assert g[1, 2] == pytest.approx(2 / math.pi, abs=1e-15)
    cat = stdsn.StateParams(alpha1=2.0, alpha2=0.9, eps_mag=1.0)
    assert stdsn.purity_numeric(cat) == pytest.approx(stdsn.purity_closed(cat), abs=1e-7)


def test_protocol_reaches_target():
    res = stdsn.run_protocol(stdsn.StateParams(r=0.4, alpha1=1.0, alpha2=0.5, eps_mag=1.0))
    assert res["fidelity"] >= 0.999
    assert res["probability_ground"] + res["probability_excited"] == pytest.approx(1.0, abs=1e-9)
    assert "pulse" in res["schedule"]
