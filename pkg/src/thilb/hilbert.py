"""Length sequences, Hilbert coefficients and the identity checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

from .closures import ExtensionData, contracted_closure, limit_closure, tight_closure_candidate
from .groebner import INFINITE, graded_hilbert_function, max_gb_degree, saturation
from .quotient import IdealInR, ParameterIdeal, PresentedRing, ideal_power_in_R
from . import semigroup as sg

CLOSURE_TAGS = ("none", "limit", "tight-candidate", "frobenius-candidate", "contracted")


def binom(a: int, b: int) -> int:
    """binom(a, b) = 0 for b < 0; the falling-factorial formula otherwise (any integer a)."""
    if b < 0:
        return 0
    if a >= 0:
        return comb(a, b) if b <= a else 0
    num = 1
    for k in range(b):
        num *= a - k
    return num // factorial(b)


def binom_alt(a: int, b: int) -> int:
    """Alternative reading for degenerate indices: binom(a, a) = 1 when a < 0."""
    if b < 0 and a == b:
        return 1
    return binom(a, b)


def _degenerate(a: int, b: int) -> bool:
    return b < 0 and a == b


# ---------------------------------------------------------------------------


@dataclass
class LengthSequence:
    closure_tag: str
    values: list
    notes: list = field(default_factory=list)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


def _local(A: IdealInR) -> int:
    n = A.local_length()
    if n is INFINITE:
        raise ValueError("infinite length: the power of Q is not m-primary")
    return n


def length_sequence(R, Q, closure_tag: str, n_max: int, test_element=None, e_bound: int = 4,
                    ext: ExtensionData | None = None) -> LengthSequence:
    """h(n) = ℓ(R/cl(Q^{n+1})) for n = 0..n_max.

    The limit closure is only defined for parameter ideals, so the ``limit``
    sequence has the single entry h(0) = ℓ(R/Q^lim).
    """
    if closure_tag not in CLOSURE_TAGS:
        raise ValueError(f"unknown closure {closure_tag!r}")
    if isinstance(R, sg.SemigroupRing):
        return _sg_sequence(R, Q, closure_tag, n_max, test_element, e_bound)
    Qi = Q.as_ideal if isinstance(Q, ParameterIdeal) else Q
    vals = []
    notes = []
    if closure_tag == "limit":
        vals.append(_local(limit_closure(Q)))
        return LengthSequence("limit", vals, ["limit closure is defined for Q itself only"])
    for n in range(n_max + 1):
        A = ideal_power_in_R(Qi, n + 1)
        if closure_tag == "none":
            vals.append(_local(A))
        elif closure_tag in ("tight-candidate", "frobenius-candidate"):
            c = 1 if closure_tag == "frobenius-candidate" else test_element
            if c is None:
                raise ValueError("test element required for the tight-closure candidate")
            res = tight_closure_candidate(A, c, e_bound)
            vals.append(_local(res.closure))
            if not res.stabilized:
                notes.append(f"n={n}: kernel intersection not stabilised at E={e_bound}")
        else:
            if ext is None:
                raise ValueError("contracted closure needs extension data")
            vals.append(_local(contracted_closure(Qi, n + 1, ext)))
    return LengthSequence(closure_tag, vals, notes)


def _sg_sequence(S, Q, closure_tag, n_max, test_element, e_bound) -> LengthSequence:
    if closure_tag == "limit":
        lim = sg.sg_limit_closure(Q)
        return LengthSequence("limit", [lim.ideal.length()], ["limit closure is defined for Q itself only"])
    vals = []
    notes = []
    for n in range(n_max + 1):
        if closure_tag == "none":
            vals.append(sg.sg_length(Q, n + 1))
        elif closure_tag == "contracted":
            vals.append(sg.sg_length(Q, n + 1, contracted=True))
        else:
            c = (0, 0) if closure_tag == "frobenius-candidate" else test_element
            if c is None:
                raise ValueError("test element required for the tight-closure candidate")
            res = sg.sg_tight_candidate(Q.power(n + 1), c, e_bound)
            vals.append(res.ideal.length())
            if not res.stabilized:
                notes.append(f"n={n}: kernel intersection not stabilised at E={e_bound}")
    return LengthSequence(closure_tag, vals, notes)


# ---------------------------------------------------------------------------


@dataclass
class CoefficientVector:
    e: tuple
    stable_from: int | None
    valid: bool
    diagnostics: str = ""

    def __getitem__(self, i):
        return self.e[i]


def hilbert_polynomial_value(e: Sequence[int], d: int, n: int) -> int:
    return sum((-1) ** i * e[i] * binom(n + d - i, d - i) for i in range(d + 1))


def _solve_window(h: Sequence[int], n0: int, d: int) -> tuple:
    # k-th forward differences at n0; Δ^k binom(n+d-i, d-i) = binom(n+d-i, d-i-k),
    # which is 1 at k = d-i and 0 beyond, so the system is anti-unitriangular.
    diffs = []
    row = list(h[n0:n0 + d + 1])
    for _ in range(d + 1):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    e = [0] * (d + 1)
    for k in range(d, -1, -1):
        i = d - k
        acc = diffs[k]
        for j in range(i):
            acc -= (-1) ** j * e[j] * binom(n0 + d - j, d - j - k)
        e[i] = acc * (-1) ** i
    return tuple(e)


def extract_coefficients(seq, d: int, min_slack: int = 1) -> CoefficientVector:
    """Fit h(n) = Σ (-1)^i e_i binom(n+d-i, d-i) on the last window and find where it starts to hold."""
    h = list(seq.values if isinstance(seq, LengthSequence) else seq)
    n_max = len(h) - 1
    if n_max < d + 3:
        raise ValueError(f"need n_max >= d + 3 = {d + 3}, got {n_max}")
    e = _solve_window(h, n_max - d, d)
    n0 = n_max + 1
    while n0 > 0 and hilbert_polynomial_value(e, d, n0 - 1) == h[n0 - 1]:
        n0 -= 1
    agreeing = n_max - n0 + 1
    valid = agreeing >= d + 1 + min_slack
    diag = "" if valid else f"only {agreeing} trailing values agree; need {d + 1 + min_slack}"
    return CoefficientVector(e, n0 if valid else None, valid, diag)


# ---------------------------------------------------------------------------


@dataclass
class CohomologyProfile:
    """ℓ(H^i_m(R)) for i < d with provenance, plus optional ℓ(0*_{H^d})."""

    h_lengths: list
    tags: list
    zero_star_len: int | None = None
    zero_star_tag: str | None = None

    def __post_init__(self):
        if len(self.tags) != len(self.h_lengths):
            raise ValueError("one provenance tag per entry")
        for v in self.h_lengths:
            if v is not None and v < 0:
                raise ValueError("lengths must be non-negative")

    def complete(self, d: int) -> bool:
        return len(self.h_lengths) >= d and all(v is not None for v in self.h_lengths[:d])

    def h(self, i: int) -> int:
        if 0 <= i < len(self.h_lengths) and self.h_lengths[i] is not None:
            return self.h_lengths[i]
        return 0


def predict_buchsbaum(profile: CohomologyProfile, d: int) -> dict:
    """Predicted e_1..e_d of a Buchsbaum ring under both degenerate-binomial readings."""
    out = {"zero": {}, "one": {}, "degenerate": []}
    for i in range(1, d + 1):
        v0 = v1 = 0
        for j in range(0, d - i + 1):
            a, b = d - i - 1, j - 1
            if _degenerate(a, b) and profile.h(j):
                out["degenerate"].append({"i": i, "j": j, "binom": [a, b]})
            v0 += binom(a, b) * profile.h(j)
            v1 += binom_alt(a, b) * profile.h(j)
        out["zero"][i] = (-1) ** i * v0
        out["one"][i] = (-1) ** i * v1
    return out


def h0_length(R: PresentedRing) -> int:
    """ℓ(H⁰_m(R)) = Σ_n dim (J^sat / J)_n for homogeneous J."""
    J = R.defining
    if not all(g.is_homogeneous() for g in J.gens):
        raise ValueError("h0_length needs a homogeneous defining ideal")
    if J.is_zero():
        return 0
    sat = saturation(J)
    # both ideals are generated in degree <= D, so equality in one degree >= D propagates
    D = max(max_gb_degree(J), max_gb_degree(sat))
    total = 0
    n = 0
    while True:
        diff = graded_hilbert_function(J, n) - graded_hilbert_function(sat, n)
        total += diff
        if n >= D and diff == 0:
            return total
        n += 1


# ---------------------------------------------------------------------------


@dataclass
class Check:
    id: str
    statement: str
    status: str
    lhs: object = None
    rhs: object = None
    relation: str = "="
    note: str = ""

    def as_dict(self):
        return {
            "id": self.id,
            "statement": self.statement,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "note": self.note,
        }


@dataclass
class Bundle:
    """Everything computed for one (R, Q) that the checkers read."""

    d: int
    e: CoefficientVector | None = None
    e_star: CoefficientVector | None = None
    star_source: str | None = None
    len_Q: int | None = None
    len_lim: int | None = None
    len_star: int | None = None
    free_rank: list = field(default_factory=list)
    profile: CohomologyProfile | None = None
    h1_mod_Q: int | None = None
    h1_mod_x: int | None = None
    superficial: dict | None = None
    buchsbaum: bool | None = None


def _cmp(lhs, rhs, rel) -> bool:
    return {"=": lhs == rhs, ">=": lhs >= rhs, "<=": lhs <= rhs}[rel]


def _verdict(cid, stmt, lhs, rhs, rel, note=""):
    return Check(cid, stmt, "PASS" if _cmp(lhs, rhs, rel) else "FAIL", lhs, rhs, rel, note)


def _skip(cid, stmt, reason):
    return Check(cid, stmt, "SKIPPED", note=reason)


def check_identities(b: Bundle) -> list[Check]:
    d = b.d
    out = []
    have_e = b.e is not None and b.e.valid
    have_es = b.e_star is not None and b.e_star.valid
    prof_ok = b.profile is not None and b.profile.complete(d)
    e0 = b.e[0] if have_e else None
    e1 = b.e[1] if have_e and d >= 1 else None

    # (a) lower bound for e1*
    st = "e1* >= e0 - l(R/Q*) + e1"
    if have_e and have_es and b.len_star is not None and d >= 1:
        out.append(_verdict("a:e1-star-bound", st, b.e_star[1], e0 - b.len_star + e1, ">=",
                            f"Q* from {b.star_source}"))
    else:
        out.append(_skip("a:e1-star-bound", st, "needs fitted e, e* and l(R/Q*)"))

    # (b) lower bound through the limit closure
    st = "e0 - l(R/Q^lim) + e1 >= 0"
    if have_e and b.len_lim is not None and d >= 1:
        note = "" if b.buchsbaum else "holds for Buchsbaum (S2) rings; hypotheses not all satisfied here"
        out.append(_verdict("b:cohomology-bound", st, e0 - b.len_lim + e1, 0, ">=", note))
    else:
        out.append(_skip("b:cohomology-bound", st, "needs fitted e and l(R/Q^lim)"))

    st = "e0 - l(R/Q^lim) + e1 = sum_{i=1}^{d-1} binom(d-2, i-2) l(H^i)"
    if not b.buchsbaum:
        out.append(_skip("b:cohomology-identity", st, "Buchsbaum hypothesis not asserted"))
    elif have_e and b.len_lim is not None and prof_ok:
        rhs = sum(binom(d - 2, i - 2) * b.profile.h(i) for i in range(1, d))
        out.append(_verdict("b:cohomology-identity", st, e0 - b.len_lim + e1, rhs, "="))
    else:
        out.append(_skip("b:cohomology-identity", st, "needs fitted e, l(R/Q^lim) and a complete profile"))

    # (c) length of Q^lim/Q
    st = "l(Q^lim/Q) = sum_{i<d} binom(d, i) l(H^i)"
    if not b.buchsbaum:
        out.append(_skip("c:limit-colength", st, "Buchsbaum hypothesis not asserted"))
    elif b.len_Q is not None and b.len_lim is not None and prof_ok:
        rhs = sum(binom(d, i) * b.profile.h(i) for i in range(d))
        out.append(_verdict("c:limit-colength", st, b.len_Q - b.len_lim, rhs, "="))
    else:
        out.append(_skip("c:limit-colength", st, "needs l(R/Q), l(R/Q^lim) and a complete profile"))

    # (d), (e) dimension-two statements through H^1
    st = "e0 - l(R/Q^lim) = l(H^1/QH^1)"
    if d != 2:
        out.append(_skip("d:e0-limit-gap", st, "dimension-two statement"))
    elif have_e and b.len_lim is not None and b.h1_mod_Q is not None:
        out.append(_verdict("d:e0-limit-gap", st, e0 - b.len_lim, b.h1_mod_Q, "="))
    else:
        out.append(_skip("d:e0-limit-gap", st, "needs l(H^1/QH^1) from extension or cohomology data"))

    st = "e0 - l(R/Q^lim) + e1 = l(H^1/QH^1) - l(H^1/xH^1), x superficial"
    if d != 2:
        out.append(_skip("e:superficial-e1", st, "dimension-two statement"))
    elif have_e and b.len_lim is not None and b.h1_mod_Q is not None and b.h1_mod_x is not None:
        sup = b.superficial or {}
        note = ""
        if sup:
            note = (f"superficiality of {sup.get('element')} checked for "
                    f"{sup.get('c')} <= n <= {sup.get('n_max')}: {'holds' if sup.get('holds') else 'FAILS'}")
        out.append(_verdict("e:superficial-e1", st, e0 - b.len_lim + e1, b.h1_mod_Q - b.h1_mod_x, "=", note))
    else:
        out.append(_skip("e:superficial-e1", st, "needs l(H^1/QH^1) and l(H^1/xH^1) for a superficial x"))

    # (f) tight Buchsbaum formulas
    caveat = "identity expected only under tight-Buchsbaum hypothesis"
    st = "e1* = e0 - l(R/Q*) + e1"
    if have_e and have_es and b.len_star is not None and d >= 1:
        out.append(_verdict("f:tight-buchsbaum-e1", st, b.e_star[1], e0 - b.len_star + e1, "=", caveat))
    else:
        out.append(_skip("f:tight-buchsbaum-e1", st, "needs fitted e, e* and l(R/Q*)"))
    for j in range(2, d + 1):
        st = f"e{j}* = e{j} + e{j - 1}"
        if have_e and have_es:
            out.append(_verdict(f"f:tight-buchsbaum-e{j}", st, b.e_star[j], b.e[j] + b.e[j - 1], "=", caveat))
        else:
            out.append(_skip(f"f:tight-buchsbaum-e{j}", st, "needs fitted e and e*"))
    st = "e1* = sum_{i=2}^{d-1} binom(d-2, i-2) l(H^i) + l(0*)"
    have_zs = prof_ok and b.profile.zero_star_len is not None
    if have_es and have_zs and d >= 1:
        rhs = sum(binom(d - 2, i - 2) * b.profile.h(i) for i in range(2, d)) + b.profile.zero_star_len
        note = caveat + f"; l(0*) is {b.profile.zero_star_tag}"
        out.append(_verdict("f:tight-profile-e1", st, b.e_star[1], rhs, "=", note))
    else:
        out.append(_skip("f:tight-profile-e1", st, "needs fitted e*, a complete profile and l(0*)"))
    for i in range(2, d + 1):
        st = f"e{i}* = (-1)^{i - 1} [sum_j binom(d-{i}-1, j-2) l(H^j) + l(H^(d-{i}+1))]"
        if have_es and prof_ok:
            rhs = (-1) ** (i - 1) * (sum(binom(d - i - 1, j - 2) * b.profile.h(j) for j in range(d - i + 1))
                                     + b.profile.h(d - i + 1))
            out.append(_verdict(f"f:tight-profile-e{i}", st, b.e_star[i], rhs, "=", caveat))
        else:
            out.append(_skip(f"f:tight-profile-e{i}", st, "needs fitted e* and a complete profile"))

    # (g) rank of Q^n/Q^nQ*
    for n, lhs, rank_len in b.free_rank:
        st = f"l(R/Q^{n}Q*) - l(R/Q^{n}) = binom({n}+d-1, d-1) l(R/Q*)"
        out.append(_verdict(f"g:free-rank[n={n}]", st, lhs, binom(n + d - 1, d - 1) * rank_len, "="))
    if not b.free_rank:
        out.append(_skip("g:free-rank", "l(R/Q^nQ*) - l(R/Q^n) = binom(n+d-1, d-1) l(R/Q*)",
                         "needs Q* (tight candidate or contracted closure)"))

    # (h) sign of e1
    st = "e1 <= 0"
    if have_e and d >= 1:
        out.append(_verdict("h:e1-sign", st, e1, 0, "<="))
    else:
        out.append(_skip("h:e1-sign", st, "needs fitted e"))

    # Buchsbaum formulas through the profile
    st = "l(R/Q) - e0 = sum_{i<d} binom(d-1, i) l(H^i)"
    if not b.buchsbaum:
        out.append(_skip("i:buchsbaum-colength", st, "Buchsbaum hypothesis not asserted"))
    elif have_e and b.len_Q is not None and prof_ok:
        rhs = sum(binom(d - 1, i) * b.profile.h(i) for i in range(d))
        out.append(_verdict("i:buchsbaum-colength", st, b.len_Q - e0, rhs, "="))
    else:
        out.append(_skip("i:buchsbaum-colength", st, "needs fitted e0, l(R/Q) and a complete profile"))

    st = "e_i = (-1)^i sum_j binom(d-i-1, j-1) l(H^j), i = 1..d"
    if not b.buchsbaum:
        out.append(_skip("j:buchsbaum-hilbert", st, "Buchsbaum hypothesis not asserted"))
    elif have_e and prof_ok:
        pred = predict_buchsbaum(b.profile, d)
        fitted = [b.e[i] for i in range(1, d + 1)]
        zero = [pred["zero"][i] for i in range(1, d + 1)]
        one = [pred["one"][i] for i in range(1, d + 1)]
        readings = [name for name, vals in (("binom(-1,-1)=0", zero), ("binom(-1,-1)=1", one)) if vals == fitted]
        if pred["degenerate"]:
            note = "degenerate binomials present; matching readings: " + (", ".join(readings) or "none")
        else:
            note = "no degenerate binomial contributes"
        out.append(Check("j:buchsbaum-hilbert", st, "PASS" if readings else "FAIL", fitted, zero, "=", note))
    else:
        out.append(_skip("j:buchsbaum-hilbert", st, "needs fitted e and a complete profile"))
    return out


def summarize(checks: Sequence[Check]) -> dict:
    out = {"PASS": 0, "FAIL": 0, "SKIPPED": 0}
    for c in checks:
        out[c.status] += 1
    return out
