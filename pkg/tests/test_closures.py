import pytest

from thilb.closures import (
    ExtensionData,
    InvalidHomomorphism,
    contracted_closure,
    frobenius_closure_candidate,
    frobenius_kernel,
    frobenius_map,
    generator_independence_check,
    identity_extension,
    limit_closure,
    limit_closure_details,
    tight_closure_candidate,
)
from thilb.fieldpoly import PolyRing
from thilb.groebner import Ideal
from thilb.quotient import IdealInR, ParameterIdeal, PresentedRing, ideal_power_in_R


@pytest.fixture(scope="module")
def fermat():
    return PresentedRing(2, ["x", "y", "z"], ["x^3 + y^3 + z^3"])


def test_limit_closure_regular_is_Q():
    R = PresentedRing(5, ["x", "y"])
    Q = ParameterIdeal.make(R, ["x", "y^2"])
    det = limit_closure_details(Q)
    assert det.ideal == Q.as_ideal
    assert det.stable_at == 0


def test_limit_closure_two_planes_is_maximal():
    R = PresentedRing(5, ["x", "y", "z", "w"], ["x*z", "x*w", "y*z", "y*w"])
    Q = ParameterIdeal.make(R, ["x + z", "y + w"])
    assert limit_closure(Q) == R.maximal_ideal()
    assert generator_independence_check(Q, ["x + z + y + w", "y + w"])


def test_fermat_tight_candidate(fermat):
    Q = ParameterIdeal.make(fermat, ["x", "y"])
    res = tight_closure_candidate(Q, "x", 4)
    assert res.closure == IdealInR(fermat, ["x", "y", "z^2"])
    assert res.stabilized and res.contains_limit and res.semidecision
    assert res.length() == 2
    assert frobenius_closure_candidate(Q).closure == res.closure


@pytest.mark.parametrize("q", [2, 4, 8])
def test_fermat_membership_oracle(q):
    # c * z^(2q) in (x^q, y^q) + J with c = x, checked directly in P
    P = PolyRing(2, ["x", "y", "z"])
    I = Ideal(P, [P.parse(f"x^{q}"), P.parse(f"y^{q}"), P.parse("x^3 + y^3 + z^3")])
    assert I.contains(P.parse(f"x*z^{2 * q}"))
    # z itself stays outside the closure
    assert not I.contains(P.parse(f"x*z^{q}"))


def test_frobenius_map_and_kernel(fermat):
    A = IdealInR(fermat, ["x", "y"])
    assert frobenius_map(A, "x", 1, "z^2").is_zero()
    assert not frobenius_map(A, "x", 1, "z").is_zero()
    ker = frobenius_kernel(A, "x", 2)
    assert IdealInR(fermat, ["x", "y"] + ker) == IdealInR(fermat, ["x", "y", "z^2"])


def test_tight_candidate_errors(fermat):
    Q = ParameterIdeal.make(fermat, ["x", "y"])
    with pytest.raises(ValueError):
        tight_closure_candidate(Q, "x", 1)
    with pytest.raises(ValueError):
        tight_closure_candidate(Q, "x^3 + y^3 + z^3", 2)


def test_contracted_closure_identity(fermat):
    Q = IdealInR(fermat, ["x", "y"])
    assert contracted_closure(Q, 2, identity_extension(fermat)) == ideal_power_in_R(Q, 2)


def test_contracted_closure_cusp():
    # R = k[t^2, t^3] inside S = k[t]; (t^2) S ∩ R = (t^2, t^3)
    R = PresentedRing(5, ["a", "b"], ["a^3 - b^2"])
    S = PresentedRing(5, ["t"])
    ext = ExtensionData("presented", S, (S.elem("t^2"), S.elem("t^3")))
    Q = IdealInR(R, ["a"])
    assert Q.local_length() == 2
    C = contracted_closure(Q, 1, ext)
    assert C == R.maximal_ideal()
    assert C.local_length() == 1


def test_invalid_homomorphism():
    R = PresentedRing(5, ["a", "b"], ["a^3 - b^2"])
    S = PresentedRing(5, ["t"])
    with pytest.raises(InvalidHomomorphism):
        ExtensionData("presented", S, (S.elem("t^2"), S.elem("t^2"))).validate(R)
    with pytest.raises(InvalidHomomorphism):
        ExtensionData("presented", S, (S.elem("t"),)).validate(R)
