import json
from fractions import Fraction

import pytest

import weylbound
from weylbound import oracles


def test_theta_pins():
    assert weylbound.phi_theta(3, 2) == (Fraction(7, 27), 3)
    assert weylbound.phi_theta(2, Fraction(3)) == (Fraction(1, 8), 2)
    assert weylbound.differencing_candidate(3, "2") == Fraction(28, 27)


def test_table_and_sigma():
    t = weylbound.converge(9)
    assert t.converged and t.s_max == 486 and len(t) == 486
    assert t.delta(10) == 35
    assert t.source(10) == "HuaInit"
    assert weylbound.check_table_invariants(t) == []
    s = weylbound.sigma(t, 10)
    assert s["rho"] * s["sigma"] == 1
    assert abs(float(s["rho"]) / 440.87 - 1) < 0.01
    assert weylbound.gtilde_bound(t, Fraction(1, 256))["bound"] == 365


def test_round_trip():
    t = weylbound.converge(5)
    assert weylbound.ExponentTable.from_json(t.to_json()) == t
    back = weylbound.ExponentTable.from_csv(t.to_csv(), 5)
    assert back.deltas() == t.deltas()
    doc = json.loads(t.to_json())
    doc["entries"][10]["delta_den"] = "0"
    with pytest.raises(ValueError):
        weylbound.ExponentTable.from_json(json.dumps(doc))


def test_errors():
    with pytest.raises(ValueError):
        weylbound.init_table(2, 3)
    with pytest.raises(ValueError):
        weylbound.sigma(weylbound.converge(2), 3)


def test_oracles():
    assert oracles.mean_value_count(2, 2, 3) == 15
    assert oracles.upsilon_direct(3, 2, 2) == (3, [4, 6])
    assert oracles.upsilon32_reduced(2, 3, 3) == 1
    assert abs(oracles.weyl_sum(2, 0.5, 3) + 1) < 1e-12
    assert oracles.minor_arc_membership(0.5, 10, 1.0, 3) == (False, 1, 2)
    assert oracles.omega_r(1, 1, 1, 2) == 4.0


def test_verify_subset():
    report = weylbound.verify(seed=3, only=["upsilon"])
    assert report["passed"] and report["seed"] == 3
    assert {p["group"] for p in report["properties"]} == {"upsilon"}
