from math import comb

import pytest

from thilb import semigroup as sg
from thilb.closures import contracted_closure
from thilb.quotient import IdealInR

VERONESE = [(5, 0), (4, 1), (1, 4), (0, 5)]


@pytest.fixture(scope="module")
def S():
    return sg.SemigroupRing(VERONESE, 5)


def brute_members(gens, bound):
    """All sums of generators with both coordinates <= bound."""
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = (v[0] + g[0], v[1] + g[1])
            if w[0] <= bound and w[1] <= bound and w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen


def test_gaps_and_certificate(S):
    assert set(S.sorted_gaps()) == {(2, 3), (3, 2), (3, 7), (7, 3)}
    cert = S.certificate.as_dict()
    assert cert["residues"]["2,3"] == [2, 1]
    assert cert["residues"]["3,2"] == [1, 2]


def test_membership_matches_brute_force(S):
    bound = 30
    members = brute_members(VERONESE, bound)
    for a in range(bound + 1):
        for b in range(bound + 1):
            assert S.member((a, b)) == ((a, b) in members)


def test_saturation(S):
    assert sorted(S.hilbert_basis) == [(0, 5), (1, 4), (2, 3), (3, 2), (4, 1), (5, 0)]
    Sbar = S.saturation()
    assert Sbar.sorted_gaps() == []
    assert S.in_saturation((3, 7)) and not S.member((3, 7))
    assert not S.in_saturation((1, 1))


def test_rank_one():
    N = sg.SemigroupRing([(2, 0), (3, 0)])
    assert N.rank == 1
    assert N.sorted_gaps() == [(1, 0)]
    assert N.member((5, 0)) and not N.member((1, 0))
    assert sg.SemigroupRing([(1, 0), (0, 1)]).sorted_gaps() == []


def test_bad_generators():
    with pytest.raises(ValueError):
        sg.SemigroupRing([(0, 0)])
    with pytest.raises(ValueError):
        sg.SemigroupRing([(-1, 2), (1, 0)])


def test_lengths(S):
    Q = S.ideal([(5, 0), (0, 5)])
    assert [sg.sg_length(Q, n) for n in range(1, 5)] == [7, 19, 36, 58]
    contracted = [sg.sg_length(Q, n, contracted=True) for n in range(1, 6)]
    assert contracted == [3, 11, 26, 46, 71]
    # l(R/(Q^n S ∩ R)) = 5 * binom(n + 1, 2) - 4 once n >= 2
    assert all(contracted[n - 1] == 5 * comb(n + 1, 2) - 4 for n in range(2, 6))
    with pytest.raises(ValueError):
        S.ideal([(2, 3)])


def test_gap_module(S):
    Q = S.ideal([(5, 0), (0, 5)])
    assert sg.sg_gap_module(S, Q, {(5, 0): 1, (0, 5): 1}) == (4, 2, 2)


def test_closures(S):
    Q = S.ideal([(5, 0), (0, 5)])
    lim = sg.sg_limit_closure(Q)
    assert sorted(lim.ideal.gens) == [(0, 5), (2, 8), (5, 0), (8, 2)]
    assert lim.ideal.length() == 3
    tight = sg.sg_tight_candidate(Q, (5, 0), 4)
    assert tight.ideal == lim.ideal and tight.stabilized
    assert sg.contracted_ideal(Q, 1) == lim.ideal
    frob = sg.sg_tight_candidate(Q, (0, 0), 4)
    assert frob.cumulative_dims == [4, 4, 4, 4]
    with pytest.raises(ValueError):
        sg.sg_tight_candidate(Q, (2, 3), 4)


def test_toric_presentation_agrees(S):
    """The Gröbner engine on the toric presentation sees the same lengths."""
    pres, ext, _ = sg.sg_to_presentation(S)
    R = pres.ring
    assert R.dim == 2
    Q = IdealInR(R, [pres.monomial((5, 0)), pres.monomial((0, 5))])
    QS = S.ideal([(5, 0), (0, 5)])
    for n in (1, 2, 3):
        assert Q.power(n).local_length() == sg.sg_length(QS, n)
    assert contracted_closure(Q, 2, ext).local_length() == sg.sg_length(QS, 2, contracted=True)
