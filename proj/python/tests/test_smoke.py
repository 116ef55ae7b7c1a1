import math
from fractions import Fraction

import pytest

import newton_osc


def mono(exp, coeff="1"):
    return {"n": len(exp), "terms": [{"exp": exp, "coeff": coeff}]}


def test_version():
    assert isinstance(newton_osc.__version__, str)


def test_distance_of_one_sided_phase():
    for p in (1, 2, 3):
        problem = {"f": mono([4, 0]), "g": mono([2 * p, 2 * p])}
        assert newton_osc.newton_distance(problem) == Fraction(4, 2 * p + 1)


def test_analyze_report():
    report = newton_osc.analyze({"f": mono([1, 1]), "g": mono([0, 2])})
    assert report["pair"]["d"] == "1"
    assert report["verdict"]["status"] == "PredictionOnly"
    assert report["ledger"]["notOddAndNonvanishing"] == "Fails"


def test_examples():
    assert "15.3" in newton_osc.example_ids()
    (case,) = newton_osc.example("15.3")
    assert case["d"] == "4/3" and case["m"] == 1


def test_fresnel_numbers():
    problem = {"f": mono([2])}
    z0 = newton_osc.eval_zeta(problem, 0.0)
    assert z0 == pytest.approx(0.221996908084, rel=1e-9)
    t = 1000.0
    value = newton_osc.eval_oscillatory(problem, t)
    assert abs(value) == pytest.approx(math.sqrt(math.pi / t) * math.exp(-1), rel=1e-3)


def test_errors_are_raised():
    with pytest.raises(newton_osc.NewtonOscError):
        newton_osc.example("nope")
    with pytest.raises(newton_osc.NewtonOscError):
        newton_osc.analyze({"g": mono([1])})
