"""Run the bundled examples, evaluate the acceptance assertions and compare with the golden file."""

from __future__ import annotations

import json
from importlib.resources import files
from math import comb
from pathlib import Path

from .hilbert import predict_buchsbaum, CohomologyProfile
from .report import analyze, build_problem, closure_of_power
from .ringspec import load_spec

BUNDLED = ("regular-2d", "two-planes", "two-planes-thick", "veronese", "fermat-cubic")


def data_dir():
    return files("thilb") / "data"


def bundled_path(name: str):
    stem = name[:-5] if name.endswith(".ring") else name
    if stem not in BUNDLED:
        raise KeyError(name)
    return data_dir() / f"{stem}.ring"


def default_golden():
    return data_dir() / "golden.json"


def run_bundled(names=BUNDLED) -> dict:
    return {name: analyze(build_problem(load_spec(bundled_path(name)))) for name in names}


def _check(report: dict, cid: str) -> dict:
    for c in report["checks"]:
        if c["id"] == cid:
            return c
    raise KeyError(cid)


def _hyp(report: dict, name: str) -> str | None:
    for h in report["hypotheses"]:
        if h["hypothesis"] == name:
            return h["status"]
    return None


def assertions(reports: dict) -> list[dict]:
    """Instance-level acceptance assertions; each entry records the values it compared."""
    out = []

    def add(aid, ok, detail):
        out.append({"id": aid, "ok": bool(ok), "detail": detail})

    v = reports["veronese"]
    sgb = v["semigroup"]
    gaps = sorted(tuple(g) for g in sgb["gaps"])
    add("1.veronese-gaps", gaps == [(2, 3), (3, 2), (3, 7), (7, 3)] and sgb["gap_module"]["length"] == 4,
        f"gaps {gaps}, l(N) = {sgb['gap_module']['length']}")
    gm = sgb["gap_module"]
    add("1.veronese-gap-module", gm["mod_Q"] == 2 and gm["mod_f"] == 2, f"l(N/QN) = {gm['mod_Q']}, l(N/fN) = {gm['mod_f']}")
    cc = v["coefficients"]["contracted"]
    add("1.veronese-e1-star", cc["valid"] and cc["e"][1] == 0, f"e* = {cc['e']}")
    h = v["lengths"]["contracted"]["values"]
    e0, n0 = cc["e"][0], cc["stable_from"]
    tail_ok = all(h[n] == e0 * comb(n + 2, 2) - 4 for n in range(n0, len(h)))
    add("1.veronese-contracted-formula", e0 == 5 and n0 is not None and n0 <= 3 and tail_ok,
        f"e0 = {e0}, stable_from = {n0}")
    f = _check(v, "f:tight-buchsbaum-e1")
    add("1.veronese-identity-f", f["status"] == "PASS" and f["lhs"] == 0 and f["rhs"] == 0,
        f"{f['lhs']} = {f['rhs']}")

    t = reports["two-planes-thick"]
    add("2.thick-h1", t["cohomology"]["h_lengths"][1] == 9, f"l(H^1) = {t['cohomology']['h_lengths'][1]}")
    e = _check(t, "e:superficial-e1")
    add("2.thick-superficial-e1", e["status"] == "PASS" and e["lhs"] <= -1, f"{e['lhs']} = {e['rhs']}")
    b = _check(t, "b:cohomology-bound")
    add("2.thick-cohomology-bound-fails", b["status"] == "FAIL", f"{b['lhs']} >= 0 is {b['status']}")
    add("2.thick-s2-flagged", _hyp(t, "s2") == "violated", f"s2: {_hyp(t, 's2')}")

    w = reports["two-planes"]
    ce = w["coefficients"]["none"]
    prof = w["cohomology"]
    pred = predict_buchsbaum(CohomologyProfile(prof["h_lengths"], prof["tags"]), 2)["zero"][1]
    lim = w["closures"]["limit"]["length"]
    via_prop = prof["h1_mod_Q"] - prof["h1_mod_x"] - ce["e"][0] + lim
    add("3.buchsbaum-e1", w["lengths"]["none"]["values"][0] == 3 and prof["h_lengths"] == [0, 1]
        and ce["e"][:2] == [2, -1] and pred == -1 and via_prop == -1,
        f"fit {ce['e'][1]}, predicted {pred}, via H^1 quotients {via_prop}")
    lq = w["lengths"]["none"]["values"][0]
    add("3.buchsbaum-remarks", lq - lim == 2 and lq - ce["e"][0] == 1,
        f"l(Q^lim/Q) = {lq - lim}, l(R/Q) - e0 = {lq - ce['e'][0]}")

    for name in ("veronese", "regular-2d"):
        g = [c for c in reports[name]["checks"] if c["id"].startswith("g:free-rank[")]
        add(f"4.free-rank-{name}", len(g) == 4 and all(c["status"] == "PASS" for c in g),
            ", ".join(f"{c['lhs']}={c['rhs']}" for c in g))

    for name, rep in reports.items():
        a = _check(rep, "a:e1-star-bound")
        add(f"5.e1-star-bound-{name}", a["status"] == "PASS", f"{a['lhs']} >= {a['rhs']}")

    r = reports["regular-2d"]
    prob = build_problem(load_spec(bundled_path("regular-2d")))
    tight2 = closure_of_power(prob, "tight-candidate", 1, e_bound=2)
    lim_ideal = closure_of_power(prob, "limit", 1)["_ideal"]
    nonzero = [c["id"] for c in r["checks"] if c["status"] != "PASS"
               or (not c["id"].startswith("g:") and (c["lhs"] not in (0, [0, 0]) or c["rhs"] not in (0, [0, 0])))]
    add("6.regular", lim_ideal == prob.Q.as_ideal and tight2["_ideal"] == prob.Q.as_ideal and tight2["stabilized"]
        and r["coefficients"]["none"]["e"] == [1, 0, 0] and not nonzero,
        f"e = {r['coefficients']['none']['e']}, non-zero or non-PASS checks: {nonzero}")

    fc = reports["fermat-cubic"]
    add("7.fermat-tight", fc["closures"]["tight-candidate"]["length"] <= fc["lengths"]["none"]["values"][0] - 1,
        f"l(R/Q*) = {fc['closures']['tight-candidate']['length']}, l(R/Q) = {fc['lengths']['none']['values'][0]}")
    add("7.fermat-e1", fc["coefficients"]["none"]["e"][1] <= 0, f"e1 = {fc['coefficients']['none']['e'][1]}")
    return out


def snapshot(reports: dict, asserts: list[dict]) -> dict:
    """The part of each report that the golden file freezes."""
    rings = {}
    for name, rep in reports.items():
        entry = {
            "lengths": {k: v["values"] for k, v in rep["lengths"].items()},
            "coefficients": {k: {"e": v["e"], "stable_from": v["stable_from"], "valid": v["valid"]}
                             for k, v in rep["coefficients"].items()},
            "closures": {k: {"length": v["length"], "generators": v["generators"]} for k, v in rep["closures"].items()},
            "cohomology": rep["cohomology"],
            "checks": {c["id"]: {"status": c["status"], "lhs": c["lhs"], "rhs": c["rhs"]} for c in rep["checks"]},
            "hypotheses": {h["hypothesis"]: h["status"] for h in rep["hypotheses"]},
        }
        if "semigroup" in rep:
            entry["semigroup"] = rep["semigroup"]
        rings[name] = entry
    return {"rings": rings, "assertions": {a["id"]: a["ok"] for a in asserts}}


def diff(expected, actual, path: str = "") -> list[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        lines = []
        for k in expected:
            if k not in actual:
                lines.append(f"{path}/{k}: missing")
            else:
                lines.extend(diff(expected[k], actual[k], f"{path}/{k}"))
        for k in actual:
            if k not in expected:
                lines.append(f"{path}/{k}: unexpected")
        return lines
    if expected != actual:
        return [f"{path}: expected {json.dumps(expected)}, got {json.dumps(actual)}"]
    return []


def load_golden(path=None) -> dict:
    p = default_golden() if path is None else Path(path)
    return json.loads(p.read_text())


def verify(golden_path=None) -> tuple[dict, list, list[str]]:
    reports = run_bundled()
    asserts = assertions(reports)
    snap = snapshot(reports, asserts)
    mismatches = diff(load_golden(golden_path), json.loads(json.dumps(snap)))
    return reports, asserts, mismatches
