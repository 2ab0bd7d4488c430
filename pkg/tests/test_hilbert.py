from math import comb

import pytest

from thilb.hilbert import (
    Bundle,
    CoefficientVector,
    CohomologyProfile,
    binom,
    binom_alt,
    check_identities,
    extract_coefficients,
    h0_length,
    length_sequence,
    predict_buchsbaum,
)
from thilb.quotient import ParameterIdeal, PresentedRing


def test_binomial_conventions():
    assert binom(3, -1) == 0
    assert binom(-1, -1) == 0 and binom_alt(-1, -1) == 1
    assert binom(-1, 2) == 1 and binom(-2, 3) == -4
    assert binom(2, 3) == 0 and binom(5, 2) == 10


def test_extract_regular():
    cv = extract_coefficients([comb(n + 2, 2) for n in range(7)], 2)
    assert cv.e == (1, 0, 0) and cv.stable_from == 0 and cv.valid


def test_extract_shifted_tail():
    h = [3] + [5 * comb(n + 2, 2) - 4 for n in range(1, 9)]
    cv = extract_coefficients(h, 2)
    assert cv.e == (5, 0, -4)
    assert cv.stable_from == 1


def test_extract_needs_room():
    with pytest.raises(ValueError):
        extract_coefficients([1, 3, 6, 10, 15], 2)


def test_extract_reports_no_agreement():
    cv = extract_coefficients([0, 1, 0, 1, 0, 1, 0], 2)
    assert not cv.valid and cv.stable_from is None and cv.diagnostics


def test_predict_buchsbaum():
    prof = CohomologyProfile([0, 1], ["derived-H0", "derived-extension"])
    pred = predict_buchsbaum(prof, 2)
    assert pred["zero"][1] == -1 and pred["zero"][2] == 0
    cm = predict_buchsbaum(CohomologyProfile([0, 0, 0], ["user"] * 3), 3)
    assert all(v == 0 for v in cm["zero"].values())
    d3 = predict_buchsbaum(CohomologyProfile([0, 1, 0], ["user"] * 3), 3)
    assert d3["zero"][1] == -1


def test_predict_flags_degenerate_terms():
    # i = d = 2, j = 0 uses binom(-1, -1); H^0 != 0 makes the reading matter
    pred = predict_buchsbaum(CohomologyProfile([1, 0], ["user", "user"]), 2)
    assert pred["degenerate"] == [{"i": 2, "j": 0, "binom": [-1, -1]}]
    assert pred["zero"][2] == 0 and pred["one"][2] == 1


def test_profile_validation():
    with pytest.raises(ValueError):
        CohomologyProfile([0, 1], ["user"])
    with pytest.raises(ValueError):
        CohomologyProfile([-1], ["user"])


def test_h0_length():
    assert h0_length(PresentedRing(5, ["x", "y"])) == 0
    assert h0_length(PresentedRing(5, ["x", "y"], ["x^2", "x*y"])) == 1
    assert h0_length(PresentedRing(5, ["x", "y", "z", "w"], ["x*z", "x*w", "y*z", "y*w"])) == 0
    with pytest.raises(ValueError):
        h0_length(PresentedRing(5, ["x", "y"], ["x^2 - y"]))


def test_length_sequences():
    R = PresentedRing(5, ["x", "y"])
    Q = ParameterIdeal.make(R, ["x", "y"])
    seq = length_sequence(R, Q, "none", 5)
    assert seq.values == [comb(n + 2, 2) for n in range(6)]
    assert length_sequence(R, Q, "limit", 5).values == [1]
    with pytest.raises(ValueError):
        length_sequence(R, Q, "tight-candidate", 3)
    with pytest.raises(ValueError):
        length_sequence(R, Q, "integral", 3)


def test_buchsbaum_sequence():
    R = PresentedRing(5, ["x", "y", "z", "w"], ["x*z", "x*w", "y*z", "y*w"])
    Q = ParameterIdeal.make(R, ["x + z", "y + w"])
    seq = length_sequence(R, Q, "none", 5)
    assert seq.values[0] == 3
    cv = extract_coefficients(seq, 2)
    assert cv.e[:2] == (2, -1) and cv.stable_from == 0


def _statuses(checks):
    return {c.id: c.status for c in checks}


def test_checks_skip_without_data():
    st = _statuses(check_identities(Bundle(d=2)))
    assert set(st.values()) == {"SKIPPED"}


def test_checks_need_buchsbaum_assertion():
    prof = CohomologyProfile([0, 1], ["user", "user"])
    b = Bundle(d=2, e=CoefficientVector((2, -1, 0), 0, True), len_Q=3, len_lim=1, profile=prof)
    st = _statuses(check_identities(b))
    assert st["c:limit-colength"] == "SKIPPED"
    b.buchsbaum = True
    st = _statuses(check_identities(b))
    assert st["c:limit-colength"] == "PASS"
    assert st["i:buchsbaum-colength"] == "PASS"
    assert st["j:buchsbaum-hilbert"] == "PASS"
    assert st["b:cohomology-identity"] == "PASS"


def test_check_reports_failures_with_values():
    b = Bundle(d=2, e=CoefficientVector((6, -5, -1), 0, True), len_lim=3)
    (bound,) = [c for c in check_identities(b) if c.id == "b:cohomology-bound"]
    assert bound.status == "FAIL" and bound.lhs == -2 and bound.rhs == 0
