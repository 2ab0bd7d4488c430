"""From a ring description to sequences, coefficients, identity checks and a hypothesis ledger."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import semigroup as sg
from .closures import (
    ExtensionData,
    InvalidHomomorphism,
    contracted_closure,
    limit_closure_details,
    tight_closure_candidate,
)
from .fieldpoly import ParseError, PolyRing
from .groebner import INFINITE, Ideal, default_budget
from .hilbert import (
    Bundle,
    CoefficientVector,
    CohomologyProfile,
    check_identities,
    extract_coefficients,
    h0_length,
    length_sequence,
    summarize,
)
from .quotient import IdealInR, ParameterIdeal, PresentedRing, ideal_power_in_R, is_superficial
from .ringspec import RingSpec, SpecError, parse_vector, parse_vector_poly

CLOSURE_ORDER = ("none", "limit", "tight-candidate", "frobenius-candidate", "contracted")
WHICH = {"limit": "limit", "tight": "tight-candidate", "frobenius": "frobenius-candidate", "contracted": "contracted"}


@dataclass
class Problem:
    spec: RingSpec
    engine: str
    ring: object
    Q: object
    d: int
    test_element: object = None
    ext: ExtensionData | None = None
    saturate: bool = False
    superficial: object = None
    superficial_c: int = 1
    superficial_n: int = 3
    h1_module: Ideal | None = None
    user_h: dict = field(default_factory=dict)
    zero_star: int | None = None
    options: dict = field(default_factory=dict)
    _presentation: object = None

    @property
    def is_semigroup(self) -> bool:
        return self.engine == "semigroup"

    def presentation(self):
        if self._presentation is None:
            self._presentation = sg.sg_to_presentation(self.ring)
        return self._presentation


# ---------------------------------------------------------------------------
# building


def _check_text(P: PolyRing, spec: RingSpec, section: str, key: str, texts):
    for t in texts:
        try:
            P.parse(t)
        except ParseError as exc:
            raise spec.error(f"{exc} in {t!r}", section, key) from None


def build_problem(spec: RingSpec) -> Problem:
    try:
        if spec.engine == "presented":
            return _build_presented(spec)
        return _build_semigroup(spec)
    except SpecError:
        raise
    except (ValueError, InvalidHomomorphism) as exc:
        raise SpecError(str(exc), None, spec.source) from None


def _options(spec: RingSpec, default_n: int, have_c: bool, have_ext: bool) -> dict:
    closures = spec.flags("options", "closures")
    if not closures:
        closures = ["none", "limit"] + (["tight-candidate"] if have_c else []) + (["contracted"] if have_ext else [])
    for c in closures:
        if c not in CLOSURE_ORDER:
            raise spec.error(f"unknown closure {c!r}", "options", "closures")
    return {
        "n_max": spec.int_value("options", "n_max", default_n),
        "e_bound": spec.int_value("options", "e_bound", 4),
        "rank_n": spec.int_value("options", "rank_n", 4),
        "closures": [c for c in CLOSURE_ORDER if c in closures],
    }


def _user_cohomology(spec: RingSpec, prob: Problem) -> None:
    for i in range(4):
        raw = spec.get("cohomology", f"h{i}")
        if raw is not None:
            v = spec.int_value("cohomology", f"h{i}")
            if v < 0:
                raise spec.error("lengths must be non-negative", "cohomology", f"h{i}")
            prob.user_h[i] = v
    if spec.get("cohomology", "zero_star") is not None:
        prob.zero_star = spec.int_value("cohomology", "zero_star")


def _build_presented(spec: RingSpec) -> Problem:
    p = spec.p
    names = spec.list_value("ring", "variables")
    P = PolyRing(p, names)
    defining = spec.list_value("ring", "defining")
    _check_text(P, spec, "ring", "defining", defining)
    R = PresentedRing(p, names, defining)
    gens = spec.list_value("parameter", "generators")
    _check_text(P, spec, "parameter", "generators", gens)
    try:
        Q = ParameterIdeal.make(R, gens)
    except ValueError as exc:
        raise spec.error(str(exc), "parameter", "generators") from None
    c = spec.get("options", "test_element")
    if c is not None:
        _check_text(P, spec, "options", "test_element", [c])
        c = R.elem(c)
        if R.is_zero(c):
            raise spec.error("test element is zero in R", "options", "test_element")
    ext = None
    if "extension" in spec.sections:
        ext = _presented_extension(spec, R)
    prob = Problem(spec, "presented", R, Q, Q.d, test_element=c, ext=ext)
    sup = spec.get("parameter", "superficial")
    if sup is not None:
        _check_text(P, spec, "parameter", "superficial", [sup])
        prob.superficial = R.elem(sup)
        if not Q.as_ideal.contains(prob.superficial):
            raise spec.error("superficial element must lie in Q", "parameter", "superficial")
    prob.superficial_c = spec.int_value("parameter", "superficial_c", 1)
    prob.superficial_n = spec.int_value("parameter", "superficial_n", 3)
    mod = spec.list_value("cohomology", "h1_module")
    if mod:
        _check_text(P, spec, "cohomology", "h1_module", mod)
        prob.h1_module = Ideal(R.poly_ring, [R.elem(t) for t in mod] + list(R.defining.gens))
        if prob.h1_module.vs_length() is INFINITE:
            raise spec.error("h1_module must have finite length", "cohomology", "h1_module")
    _user_cohomology(spec, prob)
    prob.options = _options(spec, 6, c is not None, ext is not None)
    return prob


def _presented_extension(spec: RingSpec, R: PresentedRing) -> ExtensionData:
    names = spec.list_value("extension", "variables")
    if not names:
        raise spec.error("[extension] needs variables", "extension", "kind")
    P = PolyRing(spec.p, names)
    defining = spec.list_value("extension", "defining")
    _check_text(P, spec, "extension", "defining", defining)
    images = spec.list_value("extension", "map")
    _check_text(P, spec, "extension", "map", images)
    S = PresentedRing(spec.p, names, defining)
    ext = ExtensionData("presented", S, tuple(S.elem(t) for t in images),
                        f_regular=spec.bool_value("extension", "f_regular"))
    try:
        ext.validate(R)
    except InvalidHomomorphism as exc:
        raise spec.error(str(exc), "extension", "map") from None
    return ext


def _build_semigroup(spec: RingSpec) -> Problem:
    gens = spec.vectors("ring", "generators")
    S = sg.SemigroupRing(gens, spec.p)
    qgens = spec.vectors("parameter", "generators")
    try:
        Q = S.ideal(qgens)
    except ValueError as exc:
        raise spec.error(str(exc), "parameter", "generators") from None
    if len(qgens) != S.rank:
        raise spec.error(f"need {S.rank} parameters, got {len(qgens)}", "parameter", "generators")
    c = spec.get("options", "test_element")
    if c is not None:
        try:
            c = parse_vector(c)
        except ValueError as exc:
            raise spec.error(f"{exc}; the semigroup engine needs a monomial test element", "options",
                             "test_element") from None
        if not S.member(c):
            raise spec.error(f"test element {c} is not in the semigroup", "options", "test_element")
    saturate = False
    if "extension" in spec.sections:
        kind = spec.get("extension", "kind", "saturate")
        if kind != "saturate":
            raise spec.error("the semigroup engine supports only kind = saturate", "extension", "kind")
        saturate = True
    prob = Problem(spec, "semigroup", S, Q, S.rank, test_element=c, saturate=saturate)
    sup = spec.get("parameter", "superficial")
    if sup is not None:
        try:
            prob.superficial = parse_vector_poly(sup)
        except ValueError as exc:
            raise spec.error(str(exc), "parameter", "superficial") from None
    prob.superficial_c = spec.int_value("parameter", "superficial_c", 1)
    prob.superficial_n = spec.int_value("parameter", "superficial_n", 3)
    _user_cohomology(spec, prob)
    prob.options = _options(spec, 8, c is not None, saturate)
    return prob


# ---------------------------------------------------------------------------
# closures of a single ideal


def _poly_gens(A: IdealInR) -> list[str]:
    """Reduced Gröbner basis of the lift minus what already lies in J, leading terms first."""
    J = A.ring.defining
    return [str(g) for g in reversed(A.lifted.gb()) if not J.contains(g)]


def _vec_gens(A) -> list:
    return [list(v) for v in sorted(A.gens)]


def closure_of_power(prob: Problem, tag: str, n: int = 1, e_bound: int | None = None) -> dict:
    """cl(Q^n) with its generators, colength and the diagnostics of the operator."""
    E = e_bound or prob.options.get("e_bound", 4)
    if prob.is_semigroup:
        return _sg_closure(prob, tag, n, E)
    Q = prob.Q
    A = ideal_power_in_R(Q.as_ideal, n)
    out: dict = {"closure": tag, "n": n}
    if tag == "none":
        ideal = A
    elif tag == "limit":
        if n != 1:
            raise ValueError("the limit closure is defined for the parameter ideal itself (n = 1)")
        det = limit_closure_details(Q)
        ideal = det.ideal
        out["stable_at"] = det.stable_at
        out["chain_lengths"] = det.chain_lengths
    elif tag in ("tight-candidate", "frobenius-candidate"):
        c = 1 if tag == "frobenius-candidate" else prob.test_element
        if c is None:
            raise ValueError("test element required for the tight-closure candidate")
        res = tight_closure_candidate(Q if n == 1 else A, c, E)
        ideal = res.closure
        out.update(test_element=str(res.test_element), e_bound=E, kernel_dims=res.kernel_dims,
                   cumulative_dims=res.cumulative_dims, stabilized=res.stabilized, semidecision=True)
        if res.contains_limit is not None:
            out["contains_limit"] = res.contains_limit
    elif tag == "contracted":
        if prob.ext is None:
            raise ValueError("contracted closure needs an [extension] block")
        ideal = contracted_closure(A, 1, prob.ext)
    else:
        raise ValueError(f"unknown closure {tag!r}")
    out["generators"] = _poly_gens(ideal)
    out["length"] = ideal.local_length()
    out["_ideal"] = ideal
    return out


def _sg_closure(prob: Problem, tag: str, n: int, E: int) -> dict:
    Q = prob.Q
    A = Q.power(n)
    out: dict = {"closure": tag, "n": n}
    if tag == "none":
        ideal = A
    elif tag == "limit":
        if n != 1:
            raise ValueError("the limit closure is defined for the parameter ideal itself (n = 1)")
        det = sg.sg_limit_closure(Q)
        ideal = det.ideal
        out["stable_at"] = det.stable_at
        out["chain_lengths"] = det.chain_lengths
    elif tag in ("tight-candidate", "frobenius-candidate"):
        c = (0,) * prob.d if tag == "frobenius-candidate" else prob.test_element
        if c is None:
            raise ValueError("test element required for the tight-closure candidate")
        res = sg.sg_tight_candidate(A, c, E)
        ideal = res.ideal
        out.update(test_element=list(c), e_bound=E, kernel_dims=res.kernel_dims,
                   cumulative_dims=res.cumulative_dims, stabilized=res.stabilized, semidecision=True)
        if n == 1:
            out["contains_limit"] = sg.sg_limit_closure(Q).ideal.issubset(ideal)
    elif tag == "contracted":
        if not prob.saturate:
            raise ValueError("contracted closure needs an [extension] block")
        ideal = sg.contracted_ideal(Q, n)
    else:
        raise ValueError(f"unknown closure {tag!r}")
    out["generators"] = _vec_gens(ideal)
    out["length"] = ideal.length()
    out["_ideal"] = ideal
    return out


def _public(d: dict) -> dict:
    return {k: v for k, v in d.items() if not k.startswith("_")}


# ---------------------------------------------------------------------------
# analysis


def _profile(prob: Problem) -> tuple[CohomologyProfile, dict]:
    d = prob.d
    vals: list = []
    tags: list = []
    extra: dict = {}
    if prob.is_semigroup:
        vals.append(0)
        tags.append("derived-H0")
        if d >= 2:
            vals.append(len(prob.ring.sorted_gaps()))
            tags.append("derived-extension")
    else:
        R = prob.ring
        if 0 in prob.user_h:
            vals.append(prob.user_h[0])
            tags.append("user")
        elif all(g.is_homogeneous() for g in R.defining.gens):
            vals.append(h0_length(R))
            tags.append("derived-H0")
        else:
            vals.append(None)
            tags.append("user")
        if d >= 2:
            if prob.h1_module is not None:
                h1 = prob.h1_module.vs_length()
                if 1 in prob.user_h and prob.user_h[1] != h1:
                    raise SpecError(f"h1 = {prob.user_h[1]} disagrees with the length {h1} of h1_module",
                                    prob.spec.line_of("cohomology", "h1"), prob.spec.source)
                vals.append(h1)
                tags.append("derived-extension")
            else:
                vals.append(prob.user_h.get(1))
                tags.append("user")
    for i in range(len(vals), d):
        vals.append(prob.user_h.get(i))
        tags.append("user")
    zs, zt = prob.zero_star, ("user" if prob.zero_star is not None else None)
    prof = CohomologyProfile(vals[:d], tags[:d], zs, zt)
    if d >= 2:
        extra.update(_h1_quotients(prob, vals[1]))
    return prof, extra


def _h1_quotients(prob: Problem, h1) -> dict:
    if h1 == 0:
        return {"h1_mod_Q": 0, "h1_mod_x": 0 if prob.superficial is not None else None}
    if prob.is_semigroup:
        _, lq, lf = sg.sg_gap_module(prob.ring, prob.Q, prob.superficial)
        return {"h1_mod_Q": lq, "h1_mod_x": lf}
    if prob.h1_module is None:
        return {"h1_mod_Q": None, "h1_mod_x": None}
    M = prob.h1_module
    lq = Ideal(M.ring, list(M.gens) + list(prob.Q.gens)).vs_length()
    lx = None
    if prob.superficial is not None:
        lx = Ideal(M.ring, list(M.gens) + [prob.superficial]).vs_length()
    return {"h1_mod_Q": lq, "h1_mod_x": lx}


def _superficial_report(prob: Problem) -> dict | None:
    x = prob.superficial
    if x is None:
        return None
    c, n = prob.superficial_c, prob.superficial_n
    if prob.is_semigroup:
        pres = prob.presentation()[0]
        Qi = IdealInR(pres.ring, [pres.monomial(v) for v in prob.Q.gens])
        res = is_superficial(pres.element(x), Qi, c, n)
        text = " + ".join(f"{a}*{list(v)}" if a != 1 else str(list(v)) for v, a in sorted(x.items()))
    else:
        res = is_superficial(x, prob.Q.as_ideal, c, n)
        text = str(x)
    return {"element": text, "c": c, "n_max": n, "holds": res.holds, "failures": res.failures}


def _hypotheses(prob: Problem, profile: CohomologyProfile, closures: list, sup: dict | None,
                tight_info: dict) -> list[dict]:
    spec = prob.spec
    assume = set(spec.flags("ring", "assume"))
    fails = set(spec.flags("ring", "fails"))
    out = []

    def declared(name, default_detail="not checked by the tool"):
        if name in fails:
            return "violated", "declared in [ring] fails"
        if name in assume:
            return "assumed", "declared in [ring] assume"
        return "unverified", default_detail

    def add(name, status, detail):
        out.append({"hypothesis": name, "status": status, "detail": detail})

    if prob.is_semigroup:
        add("reduced", "verified", "semigroup rings are domains")
        add("unmixed", "verified", "semigroup rings are domains")
    else:
        add("reduced", *declared("reduced"))
        add("unmixed", *declared("unmixed"))
    add("buchsbaum", *declared("buchsbaum"))
    h = profile.h_lengths
    low = [(i, v) for i, v in enumerate(h[:2]) if v]
    if prob.d >= 2 and low:
        add("s2", "violated", "; ".join(f"l(H^{i}) = {v} > 0" for i, v in low) + ", so depth R < 2")
    elif prob.d >= 2 and len(h) >= 2 and h[0] == 0 and h[1] == 0:
        add("s2", "unverified", "depth R >= 2 at the maximal ideal; other primes not checked")
    else:
        add("s2", "unverified", "local cohomology lengths not available")
    if "tight-candidate" in closures or "frobenius-candidate" in closures:
        if prob.test_element is not None:
            add("test-element", *declared("test-element", f"c = {_fmt_c(prob.test_element)} not proved to be a test element"))
        st = tight_info.get("stabilized")
        add("tight-closure-complete", "unverified",
            f"candidate intersects kernels for e <= {tight_info.get('e_bound')}; stabilised for all n: {st}")
        add("tight-buchsbaum", *declared("tight-buchsbaum", "no decision procedure; identity (f) reported with caveat"))
    elif "contracted" in closures:
        add("tight-buchsbaum", *declared("tight-buchsbaum", "no decision procedure; identity (f) reported with caveat"))
    if "contracted" in closures:
        if prob.is_semigroup:
            add("f-regular-extension", "verified", "the saturation is a normal affine semigroup ring, hence F-regular")
        elif prob.ext is not None and prob.ext.f_regular:
            add("f-regular-extension", "assumed", "declared f_regular = yes in [extension]")
        else:
            add("f-regular-extension", *declared("f-regular-extension"))
    if sup is not None:
        status = "checked-bounded" if sup["holds"] else "violated"
        add("superficial", status, f"{sup['element']}: checked for {sup['c']} <= n <= {sup['n_max']}")
    return out


def _fmt_c(c) -> str:
    return str(list(c)) if isinstance(c, tuple) else str(c)


def _ring_block(prob: Problem) -> dict:
    if prob.is_semigroup:
        S = prob.ring
        return {"p": S.p, "dim": S.rank, "generators": [list(g) for g in S.gens]}
    R = prob.ring
    return {"p": R.p, "dim": R.dim, "variables": list(R.names), "defining": [str(g) for g in R.defining.gens]}


def _semigroup_block(prob: Problem) -> dict:
    S = prob.ring
    out = {
        "gaps": [list(g) for g in S.sorted_gaps()],
        "hilbert_basis": [list(g) for g in S.hilbert_basis],
    }
    if S.rank == 2:
        out["certificate"] = S.certificate.as_dict()
    N, lq, lf = sg.sg_gap_module(S, prob.Q, prob.superficial)
    out["gap_module"] = {"length": N, "mod_Q": lq, "mod_f": lf}
    return out


def analyze(prob: Problem, closures=None, n_max: int | None = None, e_bound: int | None = None) -> dict:
    opts = dict(prob.options)
    if closures is not None:
        bad = [c for c in closures if c not in CLOSURE_ORDER]
        if bad:
            raise SpecError(f"unknown closure {bad[0]!r}")
        opts["closures"] = [c for c in CLOSURE_ORDER if c in closures]
    if n_max is not None:
        opts["n_max"] = n_max
    if e_bound is not None:
        opts["e_bound"] = e_bound
    if opts["e_bound"] < 2:
        raise SpecError("e_bound must be at least 2")
    needs_c = [c for c in opts["closures"] if c == "tight-candidate"]
    if needs_c and prob.test_element is None:
        raise SpecError("test element required for the tight-closure candidate")
    if "contracted" in opts["closures"] and not (prob.ext or prob.saturate):
        raise SpecError("contracted closure needs an [extension] block")
    budget = default_budget()
    used0 = budget.pairs_used
    d = prob.d
    R, Q = prob.ring, prob.Q
    ext_arg = prob.ext
    tags = opts["closures"]

    lengths, coeffs, closure_out = {}, {}, {}
    tight_info: dict = {"e_bound": opts["e_bound"]}
    for tag in tags:
        seq = length_sequence(R, Q, tag, opts["n_max"], prob.test_element, opts["e_bound"], ext_arg)
        lengths[tag] = {"values": seq.values, "notes": seq.notes}
        if tag in ("tight-candidate", "frobenius-candidate"):
            tight_info["stabilized"] = not seq.notes and tight_info.get("stabilized", True)
        if tag != "limit":
            try:
                cv = extract_coefficients(seq, d)
                coeffs[tag] = {"e": list(cv.e), "stable_from": cv.stable_from, "valid": cv.valid,
                               "diagnostics": cv.diagnostics}
            except ValueError as exc:
                coeffs[tag] = {"e": None, "stable_from": None, "valid": False, "diagnostics": str(exc)}
        cl = closure_of_power(prob, tag, 1, opts["e_bound"])
        closure_out[tag] = cl

    def cv_of(tag):
        c = coeffs.get(tag)
        if not c or not c["valid"]:
            return None
        return CoefficientVector(tuple(c["e"]), c["stable_from"], True)

    star = "contracted" if "contracted" in tags else ("tight-candidate" if "tight-candidate" in tags else None)
    profile, h1q = _profile(prob)
    sup = _superficial_report(prob)
    bundle = Bundle(
        d=d,
        e=cv_of("none"),
        e_star=cv_of(star) if star else None,
        star_source=star,
        len_Q=lengths["none"]["values"][0] if "none" in lengths else None,
        len_lim=closure_out["limit"]["length"] if "limit" in closure_out else None,
        len_star=closure_out[star]["length"] if star else None,
        profile=profile,
        h1_mod_Q=h1q.get("h1_mod_Q"),
        h1_mod_x=h1q.get("h1_mod_x"),
        superficial=sup,
        buchsbaum="buchsbaum" in prob.spec.flags("ring", "assume"),
    )
    if star:
        Qstar = closure_out[star]["_ideal"]
        for n in range(1, opts["rank_n"] + 1):
            bundle.free_rank.append((n, _free_rank_lhs(prob, Qstar, n), bundle.len_star))
    if profile.zero_star_len is None and star and "limit" in closure_out:
        profile.zero_star_len = closure_out["limit"]["length"] - bundle.len_star
        profile.zero_star_tag = "proxy"
    checks = check_identities(bundle)

    report = {
        "name": prob.spec.name,
        "source": Path(prob.spec.source).name,
        "engine": prob.engine,
        "version": __version__,
        "spec": {s: dict(v) for s, v in prob.spec.sections.items()},
        "effective_options": opts,
        "ring": _ring_block(prob),
        "parameter": [str(g) for g in Q.gens] if not prob.is_semigroup else [list(g) for g in Q.gens],
        "lengths": lengths,
        "coefficients": coeffs,
        "closures": {k: _public(v) for k, v in closure_out.items()},
        "cohomology": {
            "h_lengths": profile.h_lengths,
            "tags": profile.tags,
            "zero_star": profile.zero_star_len,
            "zero_star_tag": profile.zero_star_tag,
            "h1_mod_Q": bundle.h1_mod_Q,
            "h1_mod_x": bundle.h1_mod_x,
        },
        "superficial": sup,
        "checks": [c.as_dict() for c in checks],
        "summary": summarize(checks),
        "hypotheses": _hypotheses(prob, profile, tags, sup, tight_info),
        "budget": {"max_pairs": budget.max_pairs, "max_degree": budget.max_degree,
                   "pairs_used": budget.pairs_used - used0},
    }
    if prob.is_semigroup:
        report["semigroup"] = _semigroup_block(prob)
    return report


def _free_rank_lhs(prob: Problem, Qstar, n: int) -> int:
    if prob.is_semigroup:
        Qn = prob.Q.power(n)
        return (Qn * Qstar).length() - Qn.length()
    Qn = ideal_power_in_R(prob.Q.as_ideal, n)
    return (Qn * Qstar).local_length() - Qn.local_length()


# ---------------------------------------------------------------------------
# output


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False, ensure_ascii=False)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def render_text(report: dict) -> str:
    lines = [f"ring {report['name']} ({report['engine']} engine, p = {report['ring']['p']}, "
             f"dim {report['ring']['dim']})"]
    lines.append(f"parameters: {_fmt(report['parameter'])}")
    lines.append("")
    lines.append("lengths l(R/cl(Q^(n+1))), n = 0, 1, ...")
    for tag, block in report["lengths"].items():
        lines.append(f"  {tag:<20} {_fmt(block['values'])}")
        for note in block["notes"]:
            lines.append(f"  {'':<20} note: {note}")
    lines.append("")
    lines.append("coefficients")
    for tag, block in report["coefficients"].items():
        if block["valid"]:
            lines.append(f"  {tag:<20} e = {_fmt(block['e'])}  (from n = {block['stable_from']})")
        else:
            lines.append(f"  {tag:<20} invalid: {block['diagnostics']}")
    lines.append("")
    lines.append("closures of Q")
    for tag, block in report["closures"].items():
        lines.append(f"  {tag:<20} length {block['length']}: {_fmt(block['generators'])}")
    co = report["cohomology"]
    lines.append("")
    lines.append("local cohomology lengths")
    for i, (v, t) in enumerate(zip(co["h_lengths"], co["tags"])):
        lines.append(f"  l(H^{i}) = {_fmt(v)}  [{t}]")
    if co["zero_star"] is not None:
        lines.append(f"  l(0*) = {co['zero_star']}  [{co['zero_star_tag']}]")
    if "semigroup" in report:
        s = report["semigroup"]
        lines.append(f"  gaps: {_fmt(s['gaps'])}")
    lines.append("")
    lines.append("checks")
    width = max(len(c["id"]) for c in report["checks"])
    for c in report["checks"]:
        if c["status"] == "SKIPPED":
            lines.append(f"  {c['status']:<8} {c['id']:<{width}}  {c['note']}")
        else:
            tail = f"  ({c['note']})" if c["note"] else ""
            lines.append(f"  {c['status']:<8} {c['id']:<{width}}  {_fmt(c['lhs'])} {c['relation']} "
                         f"{_fmt(c['rhs'])}{tail}")
    s = report["summary"]
    lines.append(f"  {s['PASS']} passed, {s['FAIL']} failed, {s['SKIPPED']} skipped")
    lines.append("")
    lines.append("hypotheses")
    for h in report["hypotheses"]:
        lines.append(f"  {h['hypothesis']:<24} {h['status']:<16} {h['detail']}")
    b = report["budget"]
    lines.append("")
    lines.append(f"budget: {b['pairs_used']} critical pairs of {b['max_pairs']}")
    return "\n".join(lines) + "\n"
