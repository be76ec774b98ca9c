"""Certified classification pipeline.

Eliminate s from the model system, peel the known factors of the
eliminant, isolate its roots in the search range, screen each root on both
branches of the equilateral constraint and certify the survivors.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bpoly
from . import model as M
from .interval import Interval
from .upoly import (
    InexactDivision,
    IsolatedRoot,
    UniPoly,
    count_real_roots,
    exact_divide,
    gcd,
    is_reciprocal,
    is_squarefree,
    isolate_roots,
    poly_square_root,
    reciprocal_expand,
    reciprocal_reduce,
    refine_root,
    sturm_count,
)


class IntegrityError(RuntimeError):
    """A claimed structural fact about the eliminant does not hold."""


class PeelFailure(IntegrityError):
    pass


class ExtractionAmbiguous(IntegrityError):
    pass


class WrongRootCount(IntegrityError):
    pass


class CrossCheckMismatch(IntegrityError):
    pass


# candidate states
PENDING = "Pending"
DISCARDED_GEOMETRY = "DiscardedGeometry"
DISCARDED_H1 = "DiscardedH1"
DISCARDED_MASS = "DiscardedMass"
CERTIFIED = "Certified"
INDETERMINATE = "Indeterminate"
TERMINAL_STATES = (DISCARDED_GEOMETRY, DISCARDED_H1, DISCARDED_MASS, CERTIFIED, INDETERMINATE)

FACTOR_ORDER = ("p4", "q4", "p120", "p132")
EXPECTED_DEGREES = {"P": 272, "p4": 4, "q4": 4, "p120": 120, "p132": 132}


@dataclass(frozen=True)
class ClassifierConfig:
    """Search range and precision schedule."""

    t_lo: Fraction = Fraction(3, 25)
    t_hi: Fraction = Fraction(1)
    first_exponent: int = 4      # first refinement width 10^-4
    last_exponent: int = 30      # last refinement width 10^-30
    report_exponent: int = 30    # width of the t-interval behind reported solutions
    sqrt_width: Fraction = M.DEFAULT_WIDTH
    expected_roots: int = 18
    cache_dir: str | None = None

    def widths(self):
        return [Fraction(1, 10**k) for k in range(self.first_exponent, self.last_exponent + 1)]


# -- elimination -------------------------------------------------------------

@dataclass(frozen=True)
class Elimination:
    P: UniPoly            # primitive part of Res_s(H1, H2), positive leading coefficient
    content: int          # Res_s(H1, H2) = content * P
    cofactor: UniPoly     # P / ((1+t^2)^6 p4 q4)
    peel: tuple           # (label, degree) in peeling order
    seconds: float


def _cache_path(cache_dir, tag: str) -> Path | None:
    if not cache_dir:
        return None
    key = hashlib.sha256((M.combined_data_digest() + tag).encode()).hexdigest()[:16]
    return Path(cache_dir) / f"{tag}-{key}.txt"


def resultant_P(cache_dir=None) -> tuple[int, UniPoly]:
    """Res_s(H1, H2) split as (content, primitive part), optionally cached on disk."""
    path = _cache_path(cache_dir, "P")
    if path is not None and path.exists():
        lines = path.read_text().splitlines()
        return int(lines[0]), UniPoly.from_text("\n".join(lines[1:]), "t")
    mp = M.build_model_polynomials()
    content, P = bpoly.resultant_content_split(bpoly.resultant(mp.H1, mp.H2, eliminate="s"))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(f"{content}\n" + P.to_text())
    return content, P


def eliminate(cache_dir=None) -> Elimination:
    t0 = time.perf_counter()
    mp = M.build_model_polynomials()
    content, P = resultant_P(cache_dir)
    if P.degree != EXPECTED_DEGREES["P"]:
        raise PeelFailure(f"eliminant has degree {P.degree}, expected 272")
    rest = P
    peel = []
    for label, f in (("(1+t^2)^6", UniPoly([1, 0, 1]) ** 6), ("p4", mp.p4), ("q4", mp.q4)):
        try:
            rest = exact_divide(rest, f)
        except InexactDivision as e:
            raise PeelFailure(f"{label} does not divide the eliminant") from e
        peel.append((label, f.degree))
    rest = rest.normalized()
    peel.append(("cofactor", rest.degree))
    return Elimination(P, content, rest, tuple(peel), time.perf_counter() - t0)


@dataclass(frozen=True)
class Extraction:
    p120: UniPoly
    p132: UniPoly
    route: str           # "gcd" or "embedded"
    gcd_degree: int      # degree of gcd(C, reverse C)
    p132_reciprocal: bool


def extract_p120(C: UniPoly, R60: UniPoly | None = None) -> Extraction:
    """Split the degree-252 cofactor into the R60 factor and its complement."""
    if R60 is None:
        R60 = M.build_model_polynomials().appendixB_R60
    g = gcd(C, C.reverse()).normalized()
    route = "gcd"
    if g.degree == 120:
        p120 = g
    else:
        route = "embedded"
        p120 = reciprocal_expand(R60, C.var).normalized()
    try:
        p132 = exact_divide(C, p120).normalized()
    except InexactDivision as e:
        raise ExtractionAmbiguous(f"gcd route gave degree {g.degree} and the embedded factor does not divide") from e
    if not is_reciprocal(p120) or reciprocal_reduce(p120, R60.var).normalized() != R60.normalized():
        raise ExtractionAmbiguous("reciprocal reduction of the extracted factor differs from R60")
    return Extraction(p120, p132, route, g.degree, is_reciprocal(p132))


def reduction_by_resultant(p120: UniPoly) -> UniPoly:
    """R60 by the second route: sqrt of Res_t(p120(t), t^2 - u t + 1)."""
    V = ("u", p120.var)
    f = bpoly.BiPoly.from_upoly(p120, 1, V)
    g = bpoly.BiPoly({(0, 2): 1, (1, 1): -1, (0, 0): 1}, V)
    return poly_square_root(bpoly.resultant(f, g, eliminate=p120.var)).normalized()


# -- roots -----------------------------------------------------------------

@dataclass(frozen=True)
class FactorReport:
    name: str
    degree: int
    real_roots: int
    squarefree: bool
    roots_in_range: int


def factor_reports(factors: dict, lo, hi) -> list[FactorReport]:
    out = []
    for name in FACTOR_ORDER:
        p = factors[name]
        out.append(FactorReport(name, p.degree, count_real_roots(p), is_squarefree(p), sturm_count(p, lo, hi)))
    return out


def _separate(roots: list[IsolatedRoot]) -> list[IsolatedRoot]:
    """Refine until the isolating intervals are pairwise disjoint."""
    roots = list(roots)
    while True:
        order = sorted(range(len(roots)), key=lambda i: roots[i].interval.lo)
        clash = {i for a, b in zip(order, order[1:]) if roots[a].interval.hi >= roots[b].interval.lo for i in (a, b)}
        if not clash:
            return roots
        for i in clash:
            roots[i] = refine_root(roots[i], roots[i].interval.width / 4)


def isolate_candidates(factors: dict, config: ClassifierConfig) -> tuple[list[IsolatedRoot], list[str]]:
    """The roots in the search range labelled t1..tn in factor order, and their factor names."""
    roots, owners = [], []
    for name in FACTOR_ORDER:
        found = isolate_roots(factors[name], config.t_lo, config.t_hi, name)
        roots.extend(found)
        owners.extend([name] * len(found))
    if len(roots) != config.expected_roots:
        raise WrongRootCount(f"{len(roots)} roots in the search range, expected {config.expected_roots}")
    roots = [refine_root(r, Fraction(1, 10**config.first_exponent)) for r in roots]
    roots = _separate(roots)
    return [IsolatedRoot(r.poly, r.interval, j, f"t{j}") for j, r in enumerate(roots, 1)], owners


# -- adjudication ------------------------------------------------------------

@dataclass
class CandidateRoot:
    t_root: IsolatedRoot
    branch: str
    factor: str = ""
    state: str = PENDING
    reason: str = ""
    width_exponent: int | None = None     # schedule step at which the state was decided
    interval: Interval | None = None       # t-interval at that step
    h1: Interval | None = None             # h1 enclosure at that step
    witness: tuple | None = None           # (a, sign h1(a), b, sign h1(b))
    x3: Interval | None = None
    y5: Interval | None = None
    masses: tuple | None = None            # (m1, m3, m5)
    screen_passed: bool = False
    in_domain: bool = True

    @property
    def label(self) -> str:
        return f"{self.t_root.name}{'+' if self.branch == M.PLUS else '-'}"


def _finish(c: CandidateRoot, state: str, reason: str, k, iv, geom, h):
    c.state, c.reason, c.width_exponent, c.interval, c.h1 = state, reason, k, iv, h
    if geom is not None:
        c.x3, c.y5 = geom.x3, geom.y5
    return c


def adjudicate(c: CandidateRoot, config: ClassifierConfig = ClassifierConfig()) -> CandidateRoot:
    """Drive one candidate to a terminal state along the precision schedule."""
    root = c.t_root
    geom = h = iv = None
    k = None
    for k in range(config.first_exponent, config.last_exponent + 1):
        root = refine_root(root, Fraction(1, 10**k))
        iv = root.interval
        try:
            geom = M.geometry_from_t(iv, c.branch, config.sqrt_width, strict=False)
        except M.OutOfBranchDomain as e:
            return _finish(c, DISCARDED_GEOMETRY, str(e), k, iv, None, None)
        c.in_domain = geom.in_domain
        h = M.h1_eval(geom)
        if h.sign():
            bound = h.lo if h.lo > 0 else h.hi
            return _finish(c, DISCARDED_H1, f"h1 {'>' if h.lo > 0 else '<'} {float(bound):.6g}", k, iv, geom, h)
        sa, sb = M.sign_at_t(iv.lo, c.branch), M.sign_at_t(iv.hi, c.branch)
        if not (sa and sb and sa != sb):
            continue
        c.screen_passed = True
        c.witness = (iv.lo, sa, iv.hi, sb)
        if geom.x3.hi <= 0:
            return _finish(c, DISCARDED_GEOMETRY, "x3 < 0", k, iv, geom, h)
        try:
            ms = M.solve_masses(geom)
        except M.SingularDenominator:
            continue
        ranges = (ms.m1, ms.m3, ms.m5)
        negative = [n for n, m in zip(("m1", "m3", "m5"), ranges) if m.hi < 0]
        if negative:
            c.masses = ranges
            return _finish(c, DISCARDED_MASS, f"{negative[0]} < 0", k, iv, geom, h)
        if all(m.lo > 0 for m in ranges):
            c.masses = ranges
            if not geom.in_domain:
                return _finish(c, DISCARDED_GEOMETRY, "y5 outside the minus-branch pentagon domain", k, iv, geom, h)
            return _finish(c, CERTIFIED, "sign change of h1 and positive masses", k, iv, geom, h)
    if geom is not None and geom.x3.hi <= 0:
        return _finish(c, DISCARDED_GEOMETRY, "x3 < 0", k, iv, geom, h)
    return _finish(c, INDETERMINATE, "schedule exhausted", k, iv, geom, h)


def enumerate_candidates(roots: list[IsolatedRoot], owners: list[str]) -> list[CandidateRoot]:
    """Each root on both branches: t1+, t1-, t2+, ..."""
    return [CandidateRoot(r, br, factor=f) for r, f in zip(roots, owners) for br in (M.PLUS, M.MINUS)]


# -- solutions ----------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    label: str
    t: Interval
    geometry: M.PentagonGeometry
    masses: M.MassSolution
    residuals_e: tuple
    residuals_f: tuple
    witness: tuple      # Bolzano signs at the endpoints of ``t``

    def residuals_contain_zero(self) -> bool:
        return all(r.contains_zero() for r in self.residuals_e + self.residuals_f)


def solution_from(c: CandidateRoot, config: ClassifierConfig) -> Solution:
    """Tighten a certified candidate to the reporting width and recompute everything."""
    root = refine_root(c.t_root, Fraction(1, 10**config.report_exponent))
    iv = root.interval
    sa, sb = M.sign_at_t(iv.lo, c.branch), M.sign_at_t(iv.hi, c.branch)
    if not (sa and sb and sa != sb):
        raise IntegrityError(f"{c.label}: sign change lost after refinement")
    geom = M.geometry_from_t(iv, c.branch, config.sqrt_width, strict=True)
    ms = M.solve_masses(geom)
    if not ms.admissible():
        raise IntegrityError(f"{c.label}: masses not positive after refinement")
    e = tuple(M.cc_residuals(geom, ms, config.sqrt_width))
    f = tuple(M.f_residuals(geom, ms))
    return Solution(c.label, iv, geom, ms, e, f, (iv.lo, sa, iv.hi, sb))


# -- Appendix B facts ---------------------------------------------------------

@dataclass(frozen=True)
class ReductionReport:
    R60_real_roots: int
    R60_squarefree: bool
    u_star: Interval
    t_star: Interval
    matches_embedded: bool
    dual_route_matches: bool


def t_star_from(u: Interval) -> Interval:
    """Smaller root of t^2 - u t + 1 = 0, decreasing in u > 2."""
    def small(v):
        disc = Interval(v * v - 4)
        return lambda w: (v - w) / 2, disc

    lo_f, d_hi = small(u.hi)
    hi_f, d_lo = small(u.lo)
    lo = lo_f(d_hi.sqrt(Fraction(1, 2**200))).lo
    hi = hi_f(d_lo.sqrt(Fraction(1, 2**200))).hi
    return Interval(lo, hi)


def reduction_report(ex: Extraction, R60: UniPoly, width=Fraction(1, 10**12), dual: bool = True) -> ReductionReport:
    roots = isolate_roots(R60, Fraction(205, 100), Fraction(210, 100), "u*")
    if len(roots) != 1:
        raise WrongRootCount(f"{len(roots)} roots of R60 in [2.05, 2.10]")
    u = refine_root(roots[0], width).interval
    match = reciprocal_reduce(ex.p120, R60.var).normalized() == R60.normalized()
    dual_ok = reduction_by_resultant(ex.p120).with_var(R60.var) == R60.normalized() if dual else False
    return ReductionReport(count_real_roots(R60), is_squarefree(R60), u, t_star_from(u), match, dual_ok)


# -- full pipeline ------------------------------------------------------------

@dataclass
class Classification:
    config: ClassifierConfig
    elimination: Elimination
    extraction: Extraction
    factors: dict
    factor_reports: list
    roots: list
    candidates: list
    solutions: list
    reduction: ReductionReport
    seconds: float = 0.0
    cross_check: dict | None = None

    @property
    def screen_survivors(self) -> list[CandidateRoot]:
        return [c for c in self.candidates if c.screen_passed]

    @property
    def certified(self) -> list[CandidateRoot]:
        return [c for c in self.candidates if c.state == CERTIFIED]


def model_factors(el: Elimination, ex: Extraction) -> dict:
    mp = M.build_model_polynomials()
    return {"p4": mp.p4, "q4": mp.q4, "p120": ex.p120, "p132": ex.p132}


def classify(config: ClassifierConfig = ClassifierConfig(), cross_check: bool = False) -> Classification:
    t0 = time.perf_counter()
    mp = M.build_model_polynomials()
    el = eliminate(config.cache_dir)
    ex = extract_p120(el.cofactor, mp.appendixB_R60)
    factors = model_factors(el, ex)
    reports = factor_reports(factors, config.t_lo, config.t_hi)
    roots, owners = isolate_candidates(factors, config)
    candidates = [adjudicate(c, config) for c in enumerate_candidates(roots, owners)]
    solutions = [solution_from(c, config) for c in candidates if c.state == CERTIFIED]
    for s in solutions:
        if not s.residuals_contain_zero():
            raise IntegrityError(f"{s.label}: a residual enclosure excludes 0")
    red = reduction_report(ex, mp.appendixB_R60)
    out = Classification(config, el, ex, factors, reports, roots, candidates, solutions, red)
    if cross_check:
        out.cross_check = cross_check_Q(solutions, config.cache_dir)
    out.seconds = time.perf_counter() - t0
    return out


# -- optional cross-check in s ---------------------------------------------------

S_LO_SQ = Fraction(1, 3)      # S = (sqrt(3)/3, (6 + sqrt(3))/11)


def _yun(f: UniPoly) -> dict:
    """Squarefree decomposition {multiplicity: factor}."""
    d = f.derivative()
    a = gcd(f, d)
    b, c = exact_divide(f, a), exact_divide(d, a)
    c = c - b.derivative()
    out, i = {}, 1
    while b.degree > 0:
        g = gcd(b, c)
        if g.degree > 0:
            out[i] = g.normalized()
        b = exact_divide(b, g)
        c = exact_divide(c, g) - b.derivative()
        i += 1
    return out


def _S_bounds(width=Fraction(1, 10**40)):
    lo = Interval(Fraction(1, 3)).sqrt(width)
    hi = (6 + Interval(3).sqrt(width)) / 11
    return lo, hi


_X3_NUM = UniPoly((-1, 0, 3), "s") * UniPoly((1, -8, 13), "s")
_X3_DEN = 2 * UniPoly((1, -4, 5), "s") ** 2


def x3_of_s(s_iv: Interval) -> Interval:
    return _X3_NUM.eval_interval(s_iv) / _X3_DEN.eval_interval(s_iv)


def count_in_S(p: UniPoly) -> int:
    """Roots in S, refusing to answer if a root sits within the endpoint enclosures."""
    lo, hi = _S_bounds()
    if sturm_count(p, lo.lo, lo.hi) or sturm_count(p, hi.lo, hi.hi) or p.sign_at(lo.lo) == 0 \
            or p.sign_at(lo.hi) == 0 or p.sign_at(hi.lo) == 0 or p.sign_at(hi.hi) == 0:
        raise CrossCheckMismatch("a root of Q is too close to an endpoint of S")
    return sturm_count(p, lo.hi, hi.lo)


def _factor_simple_part(simple: UniPoly) -> list[UniPoly]:
    # irreducible factors via FLINT; only the optional cross-check needs this
    try:
        import flint
    except ImportError as e:
        raise CrossCheckMismatch("the cross-check needs python-flint (pip install python-flint)") from e
    _, facs = flint.fmpz_poly([int(c) for c in simple.coeffs]).factor()
    out = [UniPoly([int(c) for c in g.coeffs()], simple.var).normalized() for g, _ in facs]
    return sorted(out, key=lambda q: q.degree)


def resultant_Q(cache_dir=None) -> UniPoly:
    """Primitive part of Res_t(H1, H2), optionally cached on disk."""
    path = _cache_path(cache_dir, "Q")
    if path is not None and path.exists():
        return UniPoly.from_text(path.read_text(), "s")
    mp = M.build_model_polynomials()
    _, Q = bpoly.resultant_content_split(bpoly.resultant(mp.H1, mp.H2, eliminate="t"))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(Q.to_text())
    return Q


def q_factors(cache_dir=None) -> tuple[UniPoly, dict]:
    """Q and its factors q2, q4, q120, q132 (multiplicities 6, 2, 1, 1)."""
    Q = resultant_Q(cache_dir)
    parts = _yun(Q)
    simple = _factor_simple_part(parts.get(1, UniPoly.const(1, Q.var)))
    if [q.degree for q in simple] != [120, 132] or 6 not in parts or 2 not in parts:
        raise CrossCheckMismatch(f"unexpected factor pattern {sorted((m, v.degree) for m, v in parts.items())}")
    named = {"q2": parts[6], "q4": parts[2], "q120": simple[0], "q132": simple[1]}
    product = named["q2"] ** 6 * named["q4"] ** 2 * named["q120"] * named["q132"]
    if product.normalized() != Q.normalized():
        raise CrossCheckMismatch("factors do not multiply back to Q")
    return Q, named


def cross_check_Q(solutions=(), cache_dir=None) -> dict:
    """Eliminate t instead of s and compare the factor pattern and root counts in S."""
    t0 = time.perf_counter()
    Q, named = q_factors(cache_dir)
    in_S = {k: count_in_S(v) for k, v in named.items()}
    lo, hi = _S_bounds()
    x3_at_roots = []
    for v in named.values():
        for r in isolate_roots(v, lo.hi, hi.lo):
            x3_at_roots.append(x3_of_s(refine_root(r, Fraction(1, 10**40)).interval))
    hits = {sol.label: any(x.intersect(sol.geometry.x3) for x in x3_at_roots) for sol in solutions}
    return {
        "degree": Q.degree,
        "degrees": {k: v.degree for k, v in named.items()},
        "multiplicities": {"q2": 6, "q4": 2, "q120": 1, "q132": 1},
        "real_roots": {k: count_real_roots(v) for k, v in named.items()},
        "roots_in_S": in_S,
        "total_in_S": sum(in_S.values()),
        "solutions_hit_Q": hits,
        "seconds": time.perf_counter() - t0,
    }
