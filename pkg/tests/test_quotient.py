import pytest

from thilb.fieldpoly import PolyRing
from thilb.groebner import Ideal
from thilb.quotient import (
    IdealInR,
    NotLocalError,
    ParameterIdeal,
    PresentedRing,
    ideal_power_in_R,
    is_sop,
    is_superficial,
    make_ring,
    quotient_in_R,
)

THICK = ["x^2*z^2", "x^2*z*t", "x^2*t^2", "x*y*z^2", "x*y*z*t", "x*y*t^2", "y^2*z^2", "y^2*z*t", "y^2*t^2"]


@pytest.fixture(scope="module")
def thick():
    return PresentedRing(5, ["x", "y", "z", "t"], THICK)


def test_dimension_and_parameters(thick):
    assert thick.dim == 2
    assert is_sop(["x + z", "y + t"], thick)
    assert not is_sop(["x", "y"], thick)
    with pytest.raises(ValueError):
        ParameterIdeal.make(thick, ["x", "z"])


def test_colength_of_Q_by_substitution(thick):
    # z -> -x, t -> -y maps R/Q onto k[x,y]/(x,y)^4 which has 1 + 2 + 3 + 4 monomials
    P2 = PolyRing(5, ["x", "y"])
    x, y = P2.var(0), P2.var(1)
    images = {0: x, 1: y, 2: -x, 3: -y}
    sub = Ideal(P2, [thick.elem(g).substitute(images, target=P2) for g in THICK])
    assert sub.vs_length() == 10
    Q = ParameterIdeal.make(thick, ["x + z", "y + t"])
    assert Q.as_ideal.local_length() == 10


def test_power_lengths(thick):
    Q = ParameterIdeal.make(thick, ["x + z", "y + t"])
    assert [ideal_power_in_R(Q.as_ideal, n).local_length() for n in (1, 2, 3)] == [10, 27, 50]


def test_local_length_rejects_other_points():
    R = PresentedRing(5, ["x"])
    A = IdealInR(R, ["x*(x - 1)"])
    assert A.length() == 2
    with pytest.raises(NotLocalError):
        A.local_length()
    with pytest.raises(NotLocalError):
        IdealInR(PresentedRing(5, ["x", "y"]), ["x"]).local_length()


def test_ideal_arithmetic_in_R():
    R = make_ring({"p": 3, "variables": ["x", "y"], "defining": ["x*y"]})
    m = R.maximal_ideal()
    assert (m * m) == IdealInR(R, ["x^2", "y^2"])
    assert (m * m).issubset(m)
    assert quotient_in_R(IdealInR(R, ["x^2"]), "x") == IdealInR(R, ["x", "y"])
    with pytest.raises(ValueError):
        PresentedRing(5, ["x"], ["1"])


def test_superficial():
    R = PresentedRing(5, ["x", "y", "z", "w"], ["x*z", "x*w", "y*z", "y*w"])
    Q = IdealInR(R, ["x + z", "y + w"])
    assert is_superficial("x + z", Q, 1, 4)
    # x alone is a zero divisor of the wrong kind: x*z = 0 in R
    rep = is_superficial("x", IdealInR(R, ["x", "y", "z", "w"]), 1, 3)
    assert not rep.holds and rep.failures
    with pytest.raises(ValueError):
        is_superficial("x^2 + 1", Q, 1, 2)
