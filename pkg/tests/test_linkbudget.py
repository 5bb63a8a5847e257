import math

import numpy as np
import pytest

from srleo.linkbudget import (
    LinkBudget,
    LinkBudgetError,
    db_to_linear,
    fspl_db,
    linear_to_db,
    noise_power_w,
    path_gain_linear,
    tx_power_w,
)

LB = LinkBudget()


def test_defaults():
    assert (LB.tx_psd_dbw_per_mhz, LB.bandwidth_hz, LB.carrier_hz) == (4.0, 30e6, 2e9)
    assert (LB.noise_psd_dbm_per_hz, LB.rx_gain_dbi, LB.extra_loss_db) == (-167.0, 0.0, 5.3)


def test_tx_power():
    assert tx_power_w(LB) == pytest.approx(10**0.4 * 30, rel=1e-12)
    assert tx_power_w(LB) == pytest.approx(75.357, abs=1e-3)
    assert tx_power_w(LinkBudget(tx_psd_dbw_per_mhz=0.0, bandwidth_hz=1e6)) == pytest.approx(1.0)
    ratio = tx_power_w(LinkBudget(tx_psd_dbw_per_mhz=7.0)) / tx_power_w(LB)
    assert ratio == pytest.approx(10**0.3, rel=1e-12)
    assert ratio == pytest.approx(2.0, rel=3e-3)


def test_noise_power():
    assert noise_power_w(LB) == pytest.approx(10 ** (-19.7) * 30e6, rel=1e-12)
    assert noise_power_w(LB) == pytest.approx(5.99e-13, rel=1e-3)
    assert noise_power_w(LinkBudget(noise_psd_dbm_per_hz=-160.0, bandwidth_hz=1.0)) == pytest.approx(1e-19)


@pytest.mark.parametrize("field", ["bandwidth_hz", "carrier_hz"])
def test_guards(field):
    with pytest.raises(LinkBudgetError):
        LinkBudget(**{field: 0.0})


def test_path_gain():
    lam = 299_792_458.0 / 2e9
    hand_fspl = 20 * math.log10(4 * math.pi * 500e3 / lam)
    assert fspl_db(500e3, LB) == pytest.approx(hand_fspl)
    assert hand_fspl == pytest.approx(152.4, abs=0.05)
    loss = -10 * math.log10(path_gain_linear(500e3, LB))
    assert loss == pytest.approx(157.7, abs=0.05)
    doubled = -10 * math.log10(path_gain_linear(1000e3, LB))
    assert doubled - loss == pytest.approx(20 * math.log10(2), abs=1e-9)
    pure = -10 * math.log10(path_gain_linear(500e3, LinkBudget(extra_loss_db=0.0)))
    assert pure == pytest.approx(hand_fspl, rel=1e-12)
    with pytest.raises(LinkBudgetError):
        path_gain_linear(0.0, LB)


def test_db_round_trip():
    x = np.logspace(-20, 20, 101)
    np.testing.assert_allclose(db_to_linear(linear_to_db(x)), x, rtol=1e-12)


def test_nominal_nadir_snr():
    # independent dB arithmetic: EIRP + path - noise, mean channel 2b + omega
    eirp_dbw = 4.0 + 10 * math.log10(30) + 30.0
    noise_dbw = -167.0 - 30 + 10 * math.log10(30e6)
    lam = 299_792_458.0 / 2e9
    path_db = -20 * math.log10(4 * math.pi * 500e3 / lam) - 5.3
    mean_snr_db = eirp_dbw + path_db - noise_dbw + 10 * math.log10(2 * 0.126 + 0.835)
    # golden figure, frozen from the hand calculation above
    assert mean_snr_db == pytest.approx(13.6145, abs=1e-3)
    lin = tx_power_w(LB) * 1000.0 * path_gain_linear(500e3, LB) / noise_power_w(LB) * 1.087
    assert 10 * math.log10(lin) == pytest.approx(mean_snr_db, abs=1e-9)
