"""Randomised property suites.

Each suite counts the cases it actually ran so the acceptance module can
insist on at least ``MIN_CASES`` of them.
"""

from __future__ import annotations

import random
from collections import Counter

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from thilb.closures import frobenius_map, limit_closure, tight_closure_candidate
from thilb.fieldpoly import PolyRing, format_poly
from thilb.groebner import Ideal
from thilb.hilbert import binom, extract_coefficients
from thilb.quotient import IdealInR, ParameterIdeal, PresentedRing, is_sop

MIN_CASES = 100
RUNS: Counter = Counter()

TWO_PLANES = PresentedRing(5, ["x", "y", "z", "w"], ["x*z", "x*w", "y*z", "y*w"])
REGULAR = PresentedRing(5, ["x", "y"])
FERMAT = PresentedRing(2, ["x", "y", "z"], ["x^3 + y^3 + z^3"])
EQUIDIMENSIONAL = {"regular-2d": REGULAR, "two-planes": TWO_PLANES, "fermat-cubic": FERMAT}


def _monos(nvars: int, deg: int):
    if nvars == 0:
        return [()]
    return [(a,) + rest for a in range(deg + 1) for rest in _monos(nvars - 1, deg - a)]


def poly_strategy(P: PolyRing, max_deg: int = 3, max_terms: int = 5):
    monos = _monos(P.nvars, max_deg)
    term = st.tuples(st.sampled_from(monos), st.integers(-3 * P.p, 3 * P.p))
    return st.lists(term, min_size=0, max_size=max_terms).map(
        lambda ts: sum((P.monomial(m, c) for m, c in ts), P.zero())
    )


def linear_form(P: PolyRing, coeffs):
    f = P.zero()
    for i, c in enumerate(coeffs):
        f = f + P.var(i).scale(c)
    return f


# -- Frobenius map linearity ---------------------------------------------------

_Q_TP = IdealInR(TWO_PLANES, ["x + z", "y + w"])


@settings(max_examples=MIN_CASES)
@given(
    poly_strategy(TWO_PLANES.poly_ring, 2, 4),
    poly_strategy(TWO_PLANES.poly_ring, 2, 4),
    st.integers(0, 4),
    st.integers(0, 4),
    st.integers(1, 2),
)
def frobenius_linearity(v, w, a, b, e):
    RUNS["frobenius-linearity"] += 1
    c = "x + z"
    lhs = frobenius_map(_Q_TP, c, e, v.scale(a) + w.scale(b))
    rhs = frobenius_map(_Q_TP, c, e, v).scale(a) + frobenius_map(_Q_TP, c, e, w).scale(b)
    assert lhs == rhs


# -- Q ⊆ Q^lim ⊆ tight candidate ----------------------------------------------


@settings(max_examples=MIN_CASES)
@given(
    st.sampled_from(sorted(EQUIDIMENSIONAL)),
    st.lists(st.integers(0, 4), min_size=8, max_size=8),
    st.integers(1, 2),
    st.integers(1, 2),
)
def closure_chain(name, coeffs, a, b):
    R = EQUIDIMENSIONAL[name]
    P = R.poly_ring
    n = P.nvars
    f = linear_form(P, coeffs[:n]) ** a
    g = linear_form(P, coeffs[4:4 + n]) ** b
    assume(is_sop([f, g], R))
    RUNS["closure-chain"] += 1
    Q = ParameterIdeal.make(R, [f, g])
    lim = limit_closure(Q)
    c = "x + z" if name == "two-planes" else "x" if name == "fermat-cubic" else "1"
    tight = tight_closure_candidate(Q, c, 2).closure
    assert Q.as_ideal.issubset(lim)
    assert lim.issubset(tight)


# -- limit closure does not depend on the generators ------------------------------


@settings(max_examples=MIN_CASES)
@given(
    st.sampled_from(["regular-2d", "two-planes"]),
    st.lists(st.integers(0, 4), min_size=8, max_size=8),
    st.integers(1, 4),
    st.integers(0, 4),
    st.sampled_from(["x", "y", "1", "x*y", "0"]),
)
def limit_generator_independence(name, coeffs, u, s, r):
    R = EQUIDIMENSIONAL[name]
    P = R.poly_ring
    n = P.nvars
    f = linear_form(P, coeffs[:n])
    g = linear_form(P, coeffs[4:4 + n])
    assume(is_sop([f, g], R))
    RUNS["limit-generator-independence"] += 1
    Q = ParameterIdeal.make(R, [f, g])
    f2 = f + g * P(r).scale(s)
    g2 = g.scale(u)
    alt = ParameterIdeal.make(R, [g2, f2])
    assert limit_closure(Q) == limit_closure(alt)


# -- coefficient extraction on exact binomial polynomials ---------------------------


@settings(max_examples=MIN_CASES)
@given(
    st.integers(0, 3),
    st.lists(st.integers(-50, 50), min_size=4, max_size=4),
    st.integers(0, 4),
    st.integers(0, 3),
    st.integers(1, 9),
)
def coefficient_exactness(d, raw, extra, k, bump):
    RUNS["coefficient-exactness"] += 1
    e = tuple(raw[: d + 1])
    n_max = d + 3 + extra

    def h(n):
        return sum((-1) ** i * e[i] * binom(n + d - i, d - i) for i in range(d + 1))

    vals = [h(n) for n in range(n_max + 1)]
    cv = extract_coefficients(vals, d)
    assert cv.valid and cv.e == e and cv.stable_from == 0
    # a perturbed prefix moves stable_from exactly past the perturbation
    k = min(k, n_max - d - 2)
    if k > 0:
        vals[k - 1] += bump
        cv = extract_coefficients(vals, d)
        assert cv.valid and cv.e == e and cv.stable_from == k


# -- reduced Gröbner bases ignore generator order ------------------------------------

_P3 = PolyRing(7, ["x", "y", "z"])


@settings(max_examples=MIN_CASES)
@given(st.lists(poly_strategy(_P3, 2, 3), min_size=1, max_size=4), st.randoms(use_true_random=False))
def gb_permutation(gens, rnd: random.Random):
    RUNS["gb-permutation"] += 1
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert Ideal(_P3, gens).gb() == Ideal(_P3, shuffled).gb()


# -- parse and format are inverse ----------------------------------------------

_P4 = PolyRing(11, ["x", "y", "z", "t"])


@settings(max_examples=MIN_CASES)
@given(poly_strategy(_P4, 4, 6))
def parse_format_roundtrip(f):
    RUNS["parse-format-roundtrip"] += 1
    text = format_poly(f)
    assert _P4.parse(text) == f
    assert format_poly(_P4.parse(text)) == text


SUITES = {
    "frobenius-linearity": frobenius_linearity,
    "closure-chain": closure_chain,
    "limit-generator-independence": limit_generator_independence,
    "coefficient-exactness": coefficient_exactness,
    "gb-permutation": gb_permutation,
    "parse-format-roundtrip": parse_format_roundtrip,
}
