"""Acceptance criteria, one test per criterion, each printing a single verdict line."""

from math import comb

import pytest

from thilb import semigroup as sg
from thilb.closures import limit_closure, tight_closure_candidate
from thilb.fieldpoly import PolyRing
from thilb.groebner import Ideal
from thilb.hilbert import (
    CohomologyProfile,
    extract_coefficients,
    h0_length,
    length_sequence,
    predict_buchsbaum,
)
from thilb.quotient import ParameterIdeal, PresentedRing, ideal_power_in_R
from thilb.verify import load_golden, run_bundled

import properties


@pytest.fixture(scope="module")
def reports():
    return run_bundled()


@pytest.fixture
def verdict(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{label}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def check(report, cid):
    (c,) = [c for c in report["checks"] if c["id"] == cid]
    return c


def test_criterion_1_veronese(verdict):
    S = sg.SemigroupRing([(5, 0), (4, 1), (1, 4), (0, 5)], 5)
    Q = S.ideal([(5, 0), (0, 5)])
    gaps = set(S.sorted_gaps())
    N, nq, nf = sg.sg_gap_module(S, Q, {(5, 0): 1, (0, 5): 1})
    # lattice-count oracle for e0: points of the saturation (a + b divisible by 5)
    # with a < 5 and b < 5, i.e. a basis of Sbar / Q Sbar
    e0_oracle = sum(1 for a in range(5) for b in range(5) if (a + b) % 5 == 0)
    contracted = length_sequence(S, Q, "contracted", 8)
    plain = length_sequence(S, Q, "none", 8)
    es = extract_coefficients(contracted, 2)
    e = extract_coefficients(plain, 2)
    n0 = es.stable_from
    formula = all(contracted.values[n] == e0_oracle * comb(n + 2, 2) - 4 for n in range(n0, 9))
    len_star = contracted.values[0]
    lhs, rhs = es.e[1], e.e[0] - len_star + e.e[1]
    ok = (
        gaps == {(2, 3), (3, 2), (3, 7), (7, 3)}
        and N == 4 and nq == 2 and nf == 2
        and es.e[1] == 0 and es.e[0] == e0_oracle == 5
        and n0 <= 3 and formula
        and lhs == rhs == 0
    )
    verdict("criterion 1", ok, f"gaps {sorted(gaps)}, l(N) = {N}, l(N/QN) = {nq}, l(N/fN) = {nf}, "
            f"e* = {list(es.e)} from n = {n0}, identity (f): {lhs} = {rhs}")


def test_criterion_2_thick_ring(reports, verdict):
    rep = reports["two-planes-thick"]
    P = PolyRing(5, ["x", "y", "z", "t"])
    H1 = Ideal(P, [P.parse(t) for t in ("x^2", "x*y", "y^2", "z^2", "z*t", "t^2")])
    count = sum(1 for a in range(2) for b in range(2 - a) for c in range(2) for d in range(2 - c))
    prop = check(rep, "e:superficial-e1")
    frozen = load_golden()["rings"]["two-planes-thick"]["checks"]["e:superficial-e1"]["lhs"]
    bound = check(rep, "b:cohomology-bound")
    s2 = [h for h in rep["hypotheses"] if h["hypothesis"] == "s2"]
    ok = (
        H1.vs_length() == count == 9
        and rep["cohomology"]["h_lengths"][1] == 9
        and prop["lhs"] <= -1 and prop["lhs"] == frozen
        and bound["status"] == "FAIL"
        and len(s2) == 1 and s2[0]["status"] == "violated"
    )
    verdict("criterion 2", ok, f"l(H^1) = {H1.vs_length()}, e0 - l(R/Q^lim) + e1 = {prop['lhs']} "
            f"(golden {frozen}), cohomology bound {bound['status']}, s2 {s2[0]['status']}")


def test_criterion_3_buchsbaum(verdict):
    R = PresentedRing(5, ["x", "y", "z", "w"], ["x*z", "x*w", "y*z", "y*w"])
    Q = ParameterIdeal.make(R, ["x + z", "y + w"])
    P = R.poly_ring
    h0 = h0_length(R)
    # S = P/(x,y) x P/(z,w); S/R is P/(x, y, z, w), one standard monomial
    h1 = Ideal(P, P.gens()).vs_length()
    seq = length_sequence(R, Q, "none", 6)
    e = extract_coefficients(seq, 2)
    predicted = predict_buchsbaum(CohomologyProfile([h0, h1], ["derived-H0", "derived-extension"]), 2)["zero"][1]
    lim = limit_closure(Q).local_length()
    h1_mod_Q = Ideal(P, P.gens() + list(Q.gens)).vs_length()
    h1_mod_a = Ideal(P, P.gens() + [Q.gens[0]]).vs_length()
    via_prop = h1_mod_Q - h1_mod_a - e.e[0] + lim
    lq = seq.values[0]
    ok = (
        h0 == 0 and h1 == 1 and lq == 3
        and e.e[1] == predicted == via_prop == -1
        and lq - lim == comb(2, 0) * h0 + comb(2, 1) * h1 == 2
        and lq - e.e[0] == comb(1, 0) * h0 + comb(1, 1) * h1 == 1
    )
    verdict("criterion 3", ok, f"e1: fit {e.e[1]}, predicted {predicted}, via H^1 quotients {via_prop}; "
            f"l(Q^lim/Q) = {lq - lim}; l(R/Q) - e0 = {lq - e.e[0]}")


def test_criterion_4_rank_identity(verdict):
    rows = []
    S = sg.SemigroupRing([(5, 0), (4, 1), (1, 4), (0, 5)], 5)
    Qs = S.ideal([(5, 0), (0, 5)])
    star = sg.contracted_ideal(Qs, 1)
    for n in range(1, 5):
        Qn = Qs.power(n)
        rows.append(("veronese", n, (Qn * star).length() - Qn.length(), comb(n + 1, 1) * star.length()))
    R = PresentedRing(5, ["x", "y"])
    Q = ParameterIdeal.make(R, ["x", "y"])
    tstar = tight_closure_candidate(Q, 1, 4).closure
    for n in range(1, 5):
        Qn = ideal_power_in_R(Q.as_ideal, n)
        rows.append(("regular-2d", n, (Qn * tstar).local_length() - Qn.local_length(),
                     comb(n + 1, 1) * tstar.local_length()))
    ok = all(lhs == rhs for _, _, lhs, rhs in rows)
    verdict("criterion 4", ok, "; ".join(f"{name} n={n}: {lhs}={rhs}" for name, n, lhs, rhs in rows))


def test_criterion_5_e1_star_bound(reports, verdict):
    rows = [(name, check(rep, "a:e1-star-bound")) for name, rep in reports.items()]
    ok = all(c["status"] == "PASS" and c["lhs"] >= c["rhs"] for _, c in rows)
    verdict("criterion 5", ok, "; ".join(f"{n}: {c['lhs']} >= {c['rhs']}" for n, c in rows))


def test_criterion_6_regular(reports, verdict):
    R = PresentedRing(5, ["x", "y"])
    Q = ParameterIdeal.make(R, ["x", "y"])
    tight = tight_closure_candidate(Q, 1, 2)
    rep = reports["regular-2d"]
    zero = (0, [0, 0])
    odd = [c["id"] for c in rep["checks"]
           if c["status"] != "PASS" or (not c["id"].startswith("g:") and (c["lhs"] not in zero or c["rhs"] not in zero))]
    ok = (
        limit_closure(Q) == Q.as_ideal
        and tight.closure == Q.as_ideal and tight.stabilized
        and rep["coefficients"]["none"]["e"] == [1, 0, 0]
        and not odd
    )
    verdict("criterion 6", ok, f"Q^lim = Q, candidate = Q stabilised at E = 2, e = {rep['coefficients']['none']['e']}, "
            f"{len(rep['checks'])} checks PASS" + (f", offending {odd}" if odd else ""))


def test_criterion_7_fermat(verdict):
    P = PolyRing(2, ["x", "y", "z"])
    oracle = all(
        Ideal(P, [P.parse(f"x^{q}"), P.parse(f"y^{q}"), P.parse("x^3 + y^3 + z^3")]).contains(P.parse(f"x*z^{2 * q}"))
        for q in (2, 4, 8)
    )
    R = PresentedRing(2, ["x", "y", "z"], ["x^3 + y^3 + z^3"])
    Q = ParameterIdeal.make(R, ["x", "y"])
    cand = tight_closure_candidate(Q, "x", 4)
    e = extract_coefficients(length_sequence(R, Q, "none", 6), 2)
    lq, ls = Q.as_ideal.local_length(), cand.length()
    ok = oracle and Q.as_ideal.issubset(cand.closure) and ls <= lq - 1 and e.e[1] <= 0
    verdict("criterion 7", ok, f"x*z^(2q) in (x^q, y^q) + J for q = 2, 4, 8: {oracle}; "
            f"l(R/Q) = {lq}, l(R/candidate) = {ls}; e1 = {e.e[1]}")


def test_criterion_8_properties(verdict):
    counts = {}
    for name in sorted(properties.SUITES):
        before = properties.RUNS[name]
        properties.SUITES[name]()
        counts[name] = properties.RUNS[name] - before
    ok = all(n >= properties.MIN_CASES for n in counts.values())
    verdict("criterion 8", ok, ", ".join(f"{k} {v} cases" for k, v in counts.items()) + "; no failures")
