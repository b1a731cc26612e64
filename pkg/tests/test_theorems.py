from fractions import Fraction

import pytest

from sos_cayley.energy import EVEN_ODD, TRANSLATION_INVARIANT, ParameterPoint
from sos_cayley.groundstate import PeriodicConfiguration, ground_state_region, is_ground_state, two_class_battery
from sos_cayley.regions import parse_region, region_equal, simplify
from sos_cayley.theorems import THEOREMS, oracle_agreement, verify, verify_theorem_3_1, verify_theorem_4_1

F = Fraction


@pytest.mark.parametrize("theorem", THEOREMS)
def test_verification_reports_pass(theorem):
    rep = verify(theorem)
    failed = [d for d in rep.details if not d["ok"]]
    assert rep.passed, failed
    js = rep.to_json()
    assert js["theorem"] == theorem and js["status"] == "pass"


def test_unknown_theorem():
    with pytest.raises(ValueError):
        verify("3.2")


def test_class_scope_enlarges_two_class_regions():
    # comparing only within a centre class lets the zero-field side go negative
    rep = verify_theorem_4_1(min_scope="class")
    failed = {d["check"]: d["got"] for d in rep.details if not d["ok"]}
    assert failed == {
        "part 3: evenodd:0,2 ground-state region": "J >= 0, a1 >= 0, a2 <= 0",
        "part 4: evenodd:2,0 ground-state region": "J >= 0, a1 <= 0, a2 >= 0",
        "remark: evenodd:1,2 ground-state region": "J = 0, a1 = 0, a2 <= 0",
        "remark: evenodd:2,1 ground-state region": "J = 0, a1 <= 0, a2 = 0",
    }


def _passing(params):
    return [c.label() for c in two_class_battery(2)
            if is_ground_state(c, 2, 2, TRANSLATION_INVARIANT, params).verdict]


def test_period_two_at_positive_coupling_and_field():
    # form "-3J + 0a" (centre 0, neighbours 2) beats every periodic ball here
    assert _passing(ParameterPoint.of(1, 1)) == []


def test_period_two_at_negative_field():
    assert _passing(ParameterPoint.of(-1, -2)) == ["evenodd:2,2"]


def test_zero_parameters_admit_non_constant_states():
    assert len(_passing(ParameterPoint.of(0, 0))) == 9


def test_sigma_two_needs_constant_field():
    cfg = PeriodicConfiguration.constant(2)
    for J in (F(-5), F(-1), F(0), F(1, 2), F(3)):
        assert not is_ground_state(cfg, 2, 2, EVEN_ODD, ParameterPoint.of(J, 1, 2)).verdict
    assert is_ground_state(cfg, 2, 2, EVEN_ODD, ParameterPoint.of(-1, -1, -1)).verdict
    eq = simplify(parse_region("2a1 <= 2a2, 2a2 <= 2a1", 2))
    assert region_equal(eq, parse_region("a1 = a2", 2))
    reg = ground_state_region(cfg, 2, 2, 2)
    assert region_equal(reg, parse_region("J <= 0, a1 = a2, a2 <= 0", 2))


def test_sigma_two_report_with_explicit_trials():
    rep = verify_theorem_3_1(trial_fields=[(F(1), F(2)), (F(-3), F(1, 2))])
    assert rep.passed


def test_oracle_agreement_helper():
    assert oracle_agreement(ParameterPoint.of(-1, -1)) == []
    assert oracle_agreement(ParameterPoint.of(0, 0, 0)) == []
