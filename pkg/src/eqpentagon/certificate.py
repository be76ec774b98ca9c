"""Certificate document: serialization, re-verification and figure tables.

The document is indented JSON with sorted keys. Exact rationals are written
as ``"num/den"`` strings; an interval is a two-element list ``[lo, hi]``.
Recorded enclosures are the computed ones rounded outward to a decimal grid,
so re-verification recomputes each enclosure and checks containment.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import model as M
from .classifier import (
    CERTIFIED,
    DISCARDED_GEOMETRY,
    DISCARDED_H1,
    DISCARDED_MASS,
    Classification,
    ClassifierConfig,
    t_star_from,
)
from .interval import Interval, decimal_digits
from .upoly import reciprocal_expand

SCHEMA = "eqpentagon-certificate/1"
RECORD_DIGITS = 40


class MissingCertificate(FileNotFoundError):
    pass


class CertificateFormatError(ValueError):
    pass


# -- rationals and intervals --------------------------------------------------

def q2s(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def s2q(s: str) -> Fraction:
    try:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError, AttributeError) as e:
        raise CertificateFormatError(f"not a num/den rational: {s!r}") from e


def _floor_to(x: Fraction, unit: Fraction) -> Fraction:
    return (x / unit).__floor__() * unit


def _ceil_to(x: Fraction, unit: Fraction) -> Fraction:
    return (x / unit).__ceil__() * unit


def outward(iv: Interval, digits: int = RECORD_DIGITS) -> Interval:
    """Round an interval outward to ``digits`` significant decimals of its magnitude."""
    mag = max(abs(iv.lo), abs(iv.hi))
    if mag == 0:
        return iv
    # e ~ number of integer digits of mag (non-positive below 1)
    e = len(str(mag.numerator // mag.denominator)) if mag >= 1 else 1 - len(str(mag.denominator // mag.numerator))
    unit = Fraction(10) ** (e - digits)
    return Interval(_floor_to(iv.lo, unit), _ceil_to(iv.hi, unit))


def iv2j(iv: Interval, rounded: bool = True) -> list:
    iv = outward(iv) if rounded else iv
    return [q2s(iv.lo), q2s(iv.hi)]


def j2iv(v) -> Interval:
    if not isinstance(v, list) or len(v) != 2:
        raise CertificateFormatError(f"not an interval: {v!r}")
    return Interval(s2q(v[0]), s2q(v[1]))


def rendering(iv: Interval, max_digits: int = 30) -> dict:
    text, n = decimal_digits(iv, max_digits)
    return {"decimal": text, "guaranteed_digits": n}


# -- emission -------------------------------------------------------------------

def _config_record(cfg: ClassifierConfig) -> dict:
    return {
        "t_range": [q2s(cfg.t_lo), q2s(cfg.t_hi)],
        "first_width_exponent": cfg.first_exponent,
        "last_width_exponent": cfg.last_exponent,
        "report_width_exponent": cfg.report_exponent,
        "sqrt_width": q2s(cfg.sqrt_width),
        "expected_roots": cfg.expected_roots,
    }


def _candidate_record(c) -> dict:
    rec = {
        "label": c.label,
        "root": c.t_root.name,
        "branch": c.branch,
        "factor": c.factor,
        "state": c.state,
        "reason": c.reason,
        "width_exponent": c.width_exponent,
        "t": iv2j(c.interval, rounded=False) if c.interval is not None else None,
        "h1": iv2j(c.h1) if c.h1 is not None else None,
        "screen_passed": c.screen_passed,
        "in_domain": c.in_domain,
    }
    if c.witness is not None:
        a, sa, b, sb = c.witness
        rec["witness"] = {"a": q2s(a), "sign_a": sa, "b": q2s(b), "sign_b": sb}
    if c.x3 is not None:
        rec["x3"] = iv2j(c.x3)
        rec["y5"] = iv2j(c.y5)
    if c.masses is not None:
        rec["masses"] = {n: iv2j(m) for n, m in zip(("m1", "m3", "m5"), c.masses)}
    return rec


def _solution_record(s) -> dict:
    g, ms = s.geometry, s.masses
    quantities = {
        "x3": g.x3, "y3": g.y3, "y5": g.y5, "E1": g.E1, "E2": g.E2, "E3": g.E3,
        "m1": ms.m1, "m3": ms.m3, "m5": ms.m5, "lambda": ms.lam,
    }
    a, sa, b, sb = s.witness
    return {
        "label": s.label,
        "branch": g.branch,
        "shape": g.shape,
        "t": iv2j(s.t, rounded=False),
        "witness": {"a": q2s(a), "sign_a": sa, "b": q2s(b), "sign_b": sb},
        "values": {k: {"interval": iv2j(v), **rendering(v)} for k, v in quantities.items()},
        "residuals_e": [iv2j(r) for r in s.residuals_e],
        "residuals_f": [iv2j(r) for r in s.residuals_f],
        "residuals_contain_zero": s.residuals_contain_zero(),
    }


def build_document(res: Classification) -> dict:
    el, ex, red = res.elimination, res.extraction, res.reduction
    doc = {
        "schema": SCHEMA,
        "precision": _config_record(res.config),
        "data_digests": {"files": M.data_digests(), "combined": M.combined_data_digest()},
        "elimination": {
            "P_degree": el.P.degree,
            "P_content": str(el.content),
            "peel": [[label, d] for label, d in el.peel],
            "extraction_route": ex.route,
            "reciprocal_gcd_degree": ex.gcd_degree,
            "p132_reciprocal": ex.p132_reciprocal,
        },
        "factors": [
            {"name": f.name, "degree": f.degree, "real_roots": f.real_roots,
             "squarefree": f.squarefree, "roots_in_range": f.roots_in_range}
            for f in res.factor_reports
        ],
        "roots": [
            {"label": r.name, "factor": owner, "interval": iv2j(r.interval, rounded=False), **rendering(r.interval, 12)}
            for r, owner in zip(res.roots, [c.factor for c in res.candidates[::2]])
        ],
        "reduction": {
            "R60_real_roots": red.R60_real_roots,
            "R60_squarefree": red.R60_squarefree,
            "matches_embedded": red.matches_embedded,
            "dual_route_matches": red.dual_route_matches,
            "u_star": {"interval": iv2j(red.u_star, rounded=False), **rendering(red.u_star, 12)},
            "t_star": {"interval": iv2j(red.t_star), **rendering(red.t_star, 12)},
        },
        "candidates": [_candidate_record(c) for c in res.candidates],
        "solutions": [_solution_record(s) for s in res.solutions],
        "summary": {
            "certified": [c.label for c in res.certified],
            "screen_survivors": [c.label for c in res.screen_survivors],
            "states": {st: sum(c.state == st for c in res.candidates)
                       for st in sorted({c.state for c in res.candidates})},
        },
        "runtime": {"seconds": round(res.seconds, 3), "elimination_seconds": round(el.seconds, 3)},
    }
    if res.cross_check is not None:
        cc = dict(res.cross_check)
        cc["seconds"] = round(cc["seconds"], 3)
        doc["cross_check_Q"] = cc
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateFormatError(str(e)) from e
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CertificateFormatError("missing or unknown schema tag")
    return doc


def without_runtime(doc: dict) -> dict:
    """Copy without wall-clock fields, for determinism comparisons."""
    out = {k: v for k, v in doc.items() if k != "runtime"}
    if "cross_check_Q" in out:
        out["cross_check_Q"] = {k: v for k, v in out["cross_check_Q"].items() if k != "seconds"}
    return out


# -- verification -------------------------------------------------------------------

@dataclass(frozen=True)
class Failure:
    record: str
    message: str

    def __str__(self):
        return f"{self.record}: {self.message}"


def _encloses(recorded: Interval, computed: Interval) -> bool:
    return recorded.lo <= computed.lo and computed.hi <= recorded.hi


def _embedded_factor(name: str):
    mp = M.build_model_polynomials()
    if name == "p4":
        return mp.p4
    if name == "q4":
        return mp.q4
    if name == "p120":
        return reciprocal_expand(mp.appendixB_R60, "t")
    return None


def _check_candidate(rec: dict, width: Fraction) -> list[Failure]:
    label = rec.get("label", "?")
    fails = []
    bad = lambda msg: fails.append(Failure(f"candidate {label}", msg))  # noqa: E731
    state, branch = rec["state"], rec["branch"]
    if rec.get("t") is None:
        return [Failure(f"candidate {label}", "no t-interval recorded")]
    t = j2iv(rec["t"])
    try:
        geom = M.geometry_from_t(t, branch, width, strict=False)
    except M.OutOfBranchDomain as e:
        if state != DISCARDED_GEOMETRY:
            bad(f"geometry fails ({e}) but state is {state}")
        return fails
    h = M.h1_eval(geom)
    if rec.get("h1") is not None:
        rh = j2iv(rec["h1"])
        if not _encloses(rh, h):
            bad("h1 bound does not enclose the recomputed h1")
        if state == DISCARDED_H1 and (rh.sign() == 0 or rh.sign() != h.sign()):
            bad("h1 bound does not certify a sign")
    if state == DISCARDED_H1 and h.sign() == 0:
        bad("recomputed h1 enclosure contains 0")
    w = rec.get("witness")
    if w is not None:
        a, b = s2q(w["a"]), s2q(w["b"])
        if not (t.lo <= a < b <= t.hi):
            bad("witness points outside the t-interval")
        if M.sign_at_t(a, branch) != w["sign_a"] or M.sign_at_t(b, branch) != w["sign_b"] or w["sign_a"] == w["sign_b"]:
            bad("witness signs do not reproduce a sign change")
    if "x3" in rec and not _encloses(j2iv(rec["x3"]), geom.x3):
        bad("x3 bound does not enclose the recomputed x3")
    if state == DISCARDED_GEOMETRY:
        if not (geom.x3.hi <= 0 or not geom.in_domain):
            bad("discarded for geometry but x3 > 0 and y5 inside the branch domain")
    if state in (DISCARDED_MASS, CERTIFIED):
        if w is None:
            bad("mass decision without a sign-change witness")
        try:
            ms = M.solve_masses(geom)
        except M.SingularDenominator as e:
            bad(f"mass recomputation fails: {e}")
            return fails
        rm = rec.get("masses") or {}
        for name, m in zip(("m1", "m3", "m5"), (ms.m1, ms.m3, ms.m5)):
            if name not in rm or not _encloses(j2iv(rm[name]), m):
                bad(f"mass recomputation: {name} outside the recorded interval")
        if state == DISCARDED_MASS and not any(m.hi < 0 for m in (ms.m1, ms.m3, ms.m5)):
            bad("discarded for mass but no mass is negative")
        if state == CERTIFIED:
            if not ms.admissible():
                bad("certified but a mass is not positive")
            if not geom.in_domain or geom.x3.hi <= 0:
                bad("certified outside the pentagon domain")
    return fails


def _check_solution(rec: dict, width: Fraction) -> list[Failure]:
    label = rec.get("label", "?")
    fails = []
    bad = lambda msg: fails.append(Failure(f"solution {label}", msg))  # noqa: E731
    t = j2iv(rec["t"])
    w = rec["witness"]
    a, b = s2q(w["a"]), s2q(w["b"])
    if (a, b) != (t.lo, t.hi):
        bad("witness is not the t-interval")
    sa, sb = M.sign_at_t(a, rec["branch"]), M.sign_at_t(b, rec["branch"])
    if sa != w["sign_a"] or sb != w["sign_b"] or sa == sb or sa == 0:
        bad("witness signs do not reproduce a sign change")
    geom = M.geometry_from_t(t, rec["branch"], width, strict=True)
    ms = M.solve_masses(geom)
    computed = {
        "x3": geom.x3, "y3": geom.y3, "y5": geom.y5, "E1": geom.E1, "E2": geom.E2, "E3": geom.E3,
        "m1": ms.m1, "m3": ms.m3, "m5": ms.m5, "lambda": ms.lam,
    }
    for k, v in computed.items():
        r = rec["values"].get(k)
        if r is None or not _encloses(j2iv(r["interval"]), v):
            bad(f"{k} outside the recorded interval")
            continue
        text, n = decimal_digits(j2iv(r["interval"]), 30)
        if (r["decimal"], r["guaranteed_digits"]) != (text, n):
            bad(f"{k} decimal rendering is not derived from its interval")
    if not ms.admissible():
        bad("mass recomputation: a mass is not positive")
    e = M.cc_residuals(geom, ms, width)
    f = M.f_residuals(geom, ms)
    for i, r in enumerate(e + f):
        if not r.contains_zero():
            bad(f"residual {i} excludes 0")
    return fails


def verify_document(doc: dict) -> list[Failure]:
    """Re-evaluate every recorded bound and witness. An empty list means success."""
    fails = []
    try:
        prec = doc["precision"]
        width = s2q(prec["sqrt_width"])
        lo, hi = (s2q(x) for x in prec["t_range"])
        if doc["data_digests"]["files"] != M.data_digests():
            fails.append(Failure("data_digests", "embedded data differs from the recorded digests"))
        prev = None
        for r in doc["roots"]:
            iv = j2iv(r["interval"])
            if not (lo <= iv.lo and iv.hi <= hi):
                fails.append(Failure(f"root {r['label']}", "outside the search range"))
            p = _embedded_factor(r["factor"])
            if p is not None and not (p.sign_at(iv.lo) * p.sign_at(iv.hi) < 0 or (iv.is_point() and p.sign_at(iv.lo) == 0)):
                fails.append(Failure(f"root {r['label']}", f"{r['factor']} has no sign change on the interval"))
            if r["decimal"] != decimal_digits(iv, 12)[0]:
                fails.append(Failure(f"root {r['label']}", "decimal rendering is not derived from its interval"))
        ivs = sorted((j2iv(r["interval"]) for r in doc["roots"]), key=lambda v: v.lo)
        for x, y in zip(ivs, ivs[1:]):
            if x.hi >= y.lo:
                fails.append(Failure("roots", "isolating intervals overlap"))
                break
        if len(doc["candidates"]) != 2 * len(doc["roots"]):
            fails.append(Failure("candidates", "not two branches per root"))
        for c in doc["candidates"]:
            fails.extend(_check_candidate(c, width))
        for s in doc["solutions"]:
            fails.extend(_check_solution(s, width))
        certified = sorted(c["label"] for c in doc["candidates"] if c["state"] == CERTIFIED)
        if certified != sorted(s["label"] for s in doc["solutions"]) or certified != sorted(doc["summary"]["certified"]):
            fails.append(Failure("summary", "certified set differs from the solution list"))
        red = doc["reduction"]
        R60 = M.build_model_polynomials().appendixB_R60
        u = j2iv(red["u_star"]["interval"])
        if R60.sign_at(u.lo) * R60.sign_at(u.hi) >= 0:
            fails.append(Failure("reduction", "R60 has no sign change on the u* interval"))
        if not _encloses(j2iv(red["t_star"]["interval"]), t_star_from(u)):
            fails.append(Failure("reduction", "t* interval does not enclose the root of t^2 - u* t + 1"))
    except (KeyError, TypeError, CertificateFormatError) as e:
        fails.append(Failure("document", f"malformed certificate: {e!r}"))
    return fails


# -- figure tables ------------------------------------------------------------

GALLERY = (
    # (name, branch, y5 as an interval, expected shape)
    ("plus_concave", M.PLUS, Interval(Fraction(1, 2)), "concave"),
    ("plus_boundary_sqrt3_over_2", M.PLUS, Interval(3).sqrt() / 2, "degenerate"),
    ("plus_convex", M.PLUS, Interval(Fraction(3, 2)), "convex"),
    ("minus_concave", M.MINUS, Interval(Fraction(19, 10)), "concave"),
    ("minus_boundary_1_plus_sqrt3_over_2", M.MINUS, 1 + Interval(3).sqrt() / 2, "degenerate"),
    ("boundary_sqrt15_over_2", M.PLUS, Interval(15).sqrt() / 2, "degenerate"),
)


def _vertex_rows(name: str, geom: M.PentagonGeometry, flag: str = "") -> list[str]:
    rows = []
    for k, (x, y) in enumerate(geom.vertices(), 1):
        xs, _ = decimal_digits(x, 12)
        ys, _ = decimal_digits(y, 12)
        rows.append(f"{name},{k},{xs},{ys},{geom.shape},{flag}")
    return rows


def figure_table(which: str, doc: dict | None = None) -> str:
    header = "configuration,vertex,x,y,shape,flag"
    rows = []
    if which in ("regular", "concave"):
        if doc is None:
            raise MissingCertificate(f"figure {which} needs a classification certificate")
        shape = "convex" if which == "regular" else "concave"
        sols = [s for s in doc["solutions"] if s["shape"] == shape]
        if not sols:
            raise MissingCertificate(f"certificate has no {shape} solution")
        s = sols[0]
        geom = M.geometry_from_t(j2iv(s["t"]), s["branch"], s2q(doc["precision"]["sqrt_width"]), strict=True)
        rows = _vertex_rows(which, geom)
    elif which == "gallery":
        for name, branch, y5, _ in GALLERY:
            geom = M.geometry_from_y5(y5, branch, strict=False) if y5.hi ** 2 < M.Y_MAX_SQ else None
            if geom is None:
                # y5 = sqrt(15)/2: both branches meet at x3 = 1/4, y3 = y5/2
                y = y5
                x3 = Interval(Fraction(1, 4))
                geom = M.PentagonGeometry(y, branch, x3, y / 2, Interval(0), Interval(0), Interval(0), "degenerate", False)
            flag = "" if geom.shape != "degenerate" and geom.in_domain else "boundary: not a pentagon"
            rows += _vertex_rows(name, geom, flag)
    else:
        raise ValueError(f"unknown figure {which!r}")
    return "\n".join([header] + rows) + "\n"
