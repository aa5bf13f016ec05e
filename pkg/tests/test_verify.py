import json
import math

import numpy as np

from opentomo.verify import CHECKS, Check, run_checks


def test_check_verdicts():
    assert Check("x", "a", 1e-3, 1e-3).passed
    assert not Check("x", "a", 1e-3, 1e-3, strict=True).passed
    assert not Check("x", "a", math.nan, 1.0).passed
    assert not Check("x", "a", math.inf, 1.0).passed


def test_check_serializes_numpy_values():
    c = Check("x", "a", np.float64(0.5), 1.0)
    rec = json.loads(json.dumps(c.as_dict()))
    assert rec["passed"] is True and rec["deviation"] == 0.5
    assert c.line() == "x/a: deviation=5.000e-01 <= tol=1.0e+00 PASS"


def test_deterministic_for_seed():
    a = [c.as_dict() for c in run_checks(["spin1", "qutrit"], seed=7)]
    b = [c.as_dict() for c in run_checks(["spin1", "qutrit"], seed=7)]
    assert a == b


def test_all_scenarios_registered():
    assert set(CHECKS) == {"qnd", "sgad", "two_qubit", "spin1", "qutrit", "optical"}
