import math

import pytest

import aemle


def test_schedule_and_probability():
    assert aemle.schedule("eis", 4, 100) == [(0, 100), (1, 100), (2, 100), (4, 100), (8, 100)]
    assert aemle.hit_probability(0, 0.375) == pytest.approx(0.375, abs=1e-15)


def test_classical_bound():
    f = aemle.fisher(0.3, 0.0, kind="classical", M=3, shots=100)
    assert f["epsilon_min"] == pytest.approx(math.sqrt(0.3 * 0.7 / 400), rel=1e-12)


def test_estimate_round_trip():
    counts = aemle.sample_counts(0.375, 0.067, M=6, seed=1)
    r = aemle.estimate(counts)
    assert abs(r["a_hat"] - 0.375) < 0.02
    assert r["likelihood_evaluations"] == 64 * 64 * len(counts)


def test_same_seed_same_counts():
    assert aemle.sample_counts(0.2, 0.01, seed=5) == aemle.sample_counts(0.2, 0.01, seed=5)


def test_anomalous_target():
    assert aemle.anomality(math.sin(math.pi / 8) ** 2, 1e-3, M=6) > 0.9


def test_hardware_spec():
    h = aemle.hardware_spec(kappa_bar=0.005)
    assert h["N_s"] == 12687
    assert h["m_bar"] == 99


def test_errors_are_value_errors():
    with pytest.raises(aemle.AemleError):
        aemle.fisher(0.0, 0.1)
    with pytest.raises(ValueError):
        aemle.schedule("fancy", 3, 10)


def test_integration_target():
    assert aemle.sin2_target(1, 2 * math.pi / 5) == pytest.approx(0.375, abs=1e-12)
