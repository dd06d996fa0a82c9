import pytest

import vbx


def test_canonical_and_total_derivative():
    assert vbx.canonical("q1'^2/2", 1) == "1/2*q1'^2"
    assert vbx.total_derivative("q1*q2'", 2) == "q1*q2'' + q1'*q2'"


def test_euler_lagrange():
    assert vbx.euler_lagrange("q1'^2/2", 1) == ["-q1''"]
    assert vbx.euler_lagrange("q1*q2", 2) == ["q2", "q1"]
    assert vbx.hilbert_form("q1''^2/2", 1) == "-q1'''*dq1 + q1''*dq1'"


def test_variational_derivative_dispatch():
    assert vbx.variational_derivative("q1'^2/2", 1) == "-q1''*dq1"
    assert vbx.variational_derivative("q1'*dq1", 1) == "-dq1 /\\ dq1'"


def test_helmholtz():
    bad = vbx.helmholtz("q1'", 1)
    assert bad["variational"] is False
    assert bad["dqdot_dq"] == [["1"]]
    good = vbx.helmholtz("-q1''; -q2'' - q2", 2)
    assert good["variational"] is True


def test_recovery():
    rep = vbx.recover_first_order("-q1''*dq1", 1)
    assert rep == {
        "lagrangian": "1/2*q1'^2",
        "kappa": "-q1'*dq1",
        "order": 1,
        "verified": True,
    }
    gen = vbx.recover("-q1''", 1)
    assert gen["lagrangian"] == "-1/2*q1*q1''"
    assert gen["verified"] is True


def test_homogenization():
    assert vbx.homogenize("q2'^2/2", 2) == "1/2*q2'^2/q1'"
    rep = vbx.check_homogeneous("sqrt(q1'^2 + q2'^2)", 2)
    assert rep["homogeneous"] is True
    assert rep["scaling_residual"] == "0"


def test_exceptions():
    with pytest.raises(ValueError, match="position 7"):
        vbx.euler_lagrange("q1'^2/", 1)
    with pytest.raises(vbx.NotVariationalError):
        vbx.recover("q1'", 1)
    with pytest.raises(vbx.NotSupportedError):
        vbx.recover("sin(q1)", 1)
    with pytest.raises(ValueError):
        vbx.euler_lagrange("q2", 1)
