import math

import pytest

import tmm


def test_phase():
    assert tmm.classify_phase(-1, 1) == "Multicritical"
    assert tmm.gamma_of(-1, 1) == pytest.approx(1.0, abs=1e-14)


def test_curve():
    z = 0.3 + 0.7j
    for x in tmm.xi_branches(z):
        assert abs(x**4 - z * x**3 + z**2) < 1e-10


def test_density_and_mass():
    assert tmm.density("mu1", 0.0) == 0.0
    assert tmm.mass("mu1") == pytest.approx(1.0, abs=1e-6)


def test_painleve():
    q, qp, u = tmm.hastings_mcleod(0.0)
    assert q == pytest.approx(0.36706155154807, abs=1e-10)
    assert qp < 0


def test_kernels():
    assert tmm.kernel_cr_diag(1.0) == pytest.approx(0.2018517064, abs=1e-8)
    assert tmm.kernel_cr(1.0, 1.0) == tmm.kernel_cr_diag(1.0)
    assert tmm.kernel_tac(1.0, 2.0, 1.0, 0.3) == pytest.approx(0.2192, abs=1e-3)
    assert tmm.kernel_pii(0.3, -0.6, 1.0) == pytest.approx(tmm.kernel_pii(-0.3, 0.6, 1.0), abs=1e-6)
    with pytest.raises(tmm.TmmError):
        tmm.kernel_tac_diag(-1.0)


def test_extraction():
    v, target = tmm.hm_extraction(0.0, 0.0)
    assert abs(v - target) < 1e-3


def test_finite_n():
    r = tmm.finite_n(12)
    assert r["real_simple"]
    assert len(r["zeros"]) == 12
    assert r["ks"] < 0.15


def test_criterion():
    c = tmm.run_criterion(5)
    assert c["pass"]
    assert all(k["pass"] for k in c["checks"])
    assert not math.isnan(c["checks"][0]["value"])
