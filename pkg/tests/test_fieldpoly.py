import pytest

from thilb.fieldpoly import (
    GREVLEX,
    LEX,
    ExponentOverflow,
    ParseError,
    PolyRing,
    PrimeField,
    block,
    format_poly,
    frobenius_pow,
    is_prime,
)


@pytest.fixture
def P():
    return PolyRing(5, ["x", "y", "z"])


def test_prime_field():
    F = PrimeField(7)
    assert F.inv(3) * 3 % 7 == 1
    assert F(-1) == 6
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValueError):
        PrimeField(9)
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_arithmetic_reduces_mod_p(P):
    x, y = P.var("x"), P.var("y")
    f = (x + y) ** 5
    assert f == x**5 + y**5
    assert (x.scale(3) + x.scale(2)).is_zero()
    assert P(-1) == P(4)
    assert (x - y) * (x + y) == x**2 - y**2


def test_mixed_rings_rejected(P):
    Q = PolyRing(7, ["x", "y", "z"])
    with pytest.raises(ValueError):
        P.var(0) + Q.var(0)


def test_orders():
    a, b = (1, 0, 2), (0, 3, 0)
    assert LEX.compare(a, b) > 0
    # both degree 3; grevlex breaks ties by the smallest last exponent
    assert GREVLEX.compare(a, b) < 0
    blk = block(1)
    assert blk.compare((1, 0, 0), (0, 5, 5)) > 0
    assert blk.compare((0, 2, 0), (0, 0, 1)) > 0


def test_leading_terms(P):
    f = P.parse("x*z^2 + 3*y^3 + x")
    assert f.leading_monomial(LEX) == (1, 0, 2)
    assert f.leading_monomial(GREVLEX) == (0, 3, 0)
    assert f.leading_coefficient(GREVLEX) == 3
    assert f.total_degree() == 3
    assert not f.is_homogeneous()


def test_frobenius_pow_matches_power(P):
    f = P.parse("x + 2*y - z + 1")
    assert frobenius_pow(f, 1) == f**5
    assert frobenius_pow(f, 2) == frobenius_pow(frobenius_pow(f, 1), 1)
    with pytest.raises(ExponentOverflow):
        frobenius_pow(P.var(0) ** 2, 14)


def test_substitute(P):
    f = P.parse("x^2*y + z")
    g = f.substitute({0: P.parse("y + z")})
    assert g == P.parse("(y + z)^2*y + z")


@pytest.mark.parametrize(
    "text, pos",
    [("x +", 3), ("x y", 2), ("x^-2", 2), ("2x", 1), ("w + 1", 0), ("(x + y", 6), ("", 0)],
)
def test_parse_errors_carry_positions(P, text, pos):
    with pytest.raises(ParseError) as info:
        P.parse(text)
    assert info.value.position == pos


def test_parse_precedence(P):
    assert P.parse("-x^2") == -(P.var(0) ** 2)
    assert P.parse("2*x^2*y - (x - y)^2") == P.var(0) ** 2 * P.var(1).scale(2) - (P.var(0) - P.var(1)) ** 2
    assert P.parse("x^0") == P.one()


def test_format(P):
    assert format_poly(P.parse("y - x + 2*z^2 - 1")) == "2*z^2 - x + y - 1"
    # residues are shown in the symmetric range
    assert format_poly(P.parse("3*x")) == "-2*x"
    assert format_poly(P.zero()) == "0"
    assert str(P.parse("-x*y")) == "-x*y"
