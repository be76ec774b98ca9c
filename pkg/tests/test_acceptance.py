"""One test per acceptance criterion; each prints a PASS/FAIL line.

Sub-checks that cannot hold for the true mathematical objects are split into
strict xfail tests so the suite stays honest without hiding them.
"""
import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from eqpentagon import bpoly as B
from eqpentagon import classifier as C
from eqpentagon import model as M
from eqpentagon.interval import Interval
from eqpentagon.upoly import (
    UniPoly,
    count_real_roots,
    is_reciprocal,
    is_squarefree,
    reciprocal_expand,
    reciprocal_reduce,
    refine_root,
    sturm_count,
)

W = F(1, 2**200)
PRINTED_T = {
    10: "0.1278827", 3: "0.1296657", 11: "0.1318307", 12: "0.1535285", 2: "0.1583844",
    13: "0.1690804", 4: "0.1818971", 5: "0.1871837", 14: "0.4693713", 1: "0.5095254",
    15: "0.5490528", 16: "0.5930556", 6: "0.7095411", 7: "0.7332148", 8: "0.9432977",
    17: "0.9681690", 9: "0.9958185", 18: "0.9962499",
}
PRINTED_COUPLES = {
    "t2+": ("0.8090170", "1.5388418"),
    "t7+": ("0.5402091", "0.1576605"),
    "t9+": ("0.2540572", "0.0020951"),
    "t4-": ("-0.4091526", "1.3289291"),
    "t14-": ("-0.3542470", "0.4152845"),
    "t18-": ("0.2463622", "0.0018786"),
}


def sqrt(x):
    return Interval.coerce(x).sqrt(W)


def within(iv: Interval, value: str, tol) -> bool:
    """Some point of ``iv`` is within ``tol`` of the decimal ``value``."""
    v = F(value)
    return iv.lo - tol <= v <= iv.hi + tol


def covers(iv: Interval, value: str, width) -> bool:
    """An enclosure of width <= ``width`` contains both the root and ``value``."""
    return iv.hull(Interval(F(value))).width <= width


# -- 1 ---------------------------------------------------------------------

def test_criterion_1_elimination(report, model):
    content, P = C.resultant_P(None)
    el = C.eliminate(None)
    t = UniPoly.x("t")
    divides = all(P % f == 0 for f in ((1 + t**2) ** 6, model.p4, model.q4))
    ok = P.degree == 272 and divides and el.seconds < 600
    report(1, ok, f"deg P = {P.degree}, (1+t^2)^6 p4 q4 | P: {divides}, resultant {el.seconds:.1f} s")
    assert ok
    assert model.p4 == UniPoly([1, 4, -14, 4, 1], "t") and model.q4 == UniPoly([1, -4, -14, -4, 1], "t")


# -- 2 ---------------------------------------------------------------------

def test_criterion_2_appendix_H1(report, model):
    H, A = model.H1.primitive_part(), model.appendixA_H1.primitive_part()
    same = H == A or H == -A
    degs = (model.H1.total_degree, model.H1.degree(0), model.H1.degree(1))
    ok = same and degs == (34, 24, 10)
    report(2, ok, f"H1 = +-assembly: {same}, degrees {degs}")
    assert ok


# -- 3 ---------------------------------------------------------------------

def _counts(classification, lo, hi):
    return [sturm_count(classification.factors[n], lo, hi) for n in C.FACTOR_ORDER]


def test_criterion_3_root_counts(report, classification):
    f = classification.factors
    total = [count_real_roots(f[n]) for n in C.FACTOR_ORDER]
    simple = all(is_squarefree(f[n]) for n in C.FACTOR_ORDER)
    in_T = _counts(classification, F(3, 25), 1)
    stated = _counts(classification, F(3, 25), 100)
    ok_main = total == [4, 4, 28, 32] and simple and in_T == [1, 1, 7, 9]
    report(3, ok_main and stated == [1, 1, 7, 9],
           f"totals {total}, simple {simple}; on (3/25,1) {in_T}; on the stated (3/25,100) {stated}")
    assert ok_main


@pytest.mark.xfail(strict=True, reason="on (3/25, 100) the factors have 2, 2, 14, 18 roots; 1, 1, 7, 9 holds on (3/25, 1)")
def test_criterion_3_stated_upper_endpoint(classification):
    assert _counts(classification, F(3, 25), 100) == [1, 1, 7, 9]


# -- 4 ---------------------------------------------------------------------

def test_criterion_4_root_table(report, classification):
    roots = [refine_root(r, F(1, 10**9)) for r in classification.roots]
    off = [j for j, r in enumerate(roots, 1) if not within(r.interval, PRINTED_T[j], F(1, 10**6))]
    t1 = -1 + sqrt(5) - (5 - 2 * sqrt(5)).sqrt(W)
    t2 = 1 + sqrt(5) - (5 + 2 * sqrt(5)).sqrt(W)
    r1, r2 = classification.roots[0].interval, classification.roots[1].interval
    closed = r1.lo < t1.lo and t1.hi < r1.hi and r2.lo < t2.lo and t2.hi < r2.hi
    ok = len(roots) == 18 and not off and closed
    report(4, ok, f"18 roots within 1e-6 of the table (mismatches {off}); closed forms enclosed: {closed}")
    assert ok


# -- 5 ---------------------------------------------------------------------

def test_criterion_5_appendix_B(report, classification, model):
    p120 = classification.extraction.p120
    red = classification.reduction
    R60 = model.appendixB_R60
    exact = reciprocal_reduce(p120, "u").normalized() == R60.normalized()
    u_ok = covers(red.u_star, "2.0970716051", F(1, 10**9)) and F(205, 100) <= red.u_star.lo and red.u_star.hi <= F(210, 100)
    t_ok = covers(red.t_star, "0.7332148086", F(1, 10**9))
    t7 = classification.roots[6].interval
    inside = t7.lo <= red.t_star.lo and red.t_star.hi <= t7.hi
    ok = (is_reciprocal(p120) and exact and red.R60_real_roots == 14 and red.R60_squarefree
          and u_ok and t_ok and inside)
    report(5, ok, f"reduce(p120) == R60: {exact}; R60 roots {red.R60_real_roots}; u* {float(red.u_star):.10f}; "
                  f"t* {float(red.t_star):.10f} in t7: {inside}")
    assert ok


# -- 6 ---------------------------------------------------------------------

def test_criterion_6_adjudication(report, classification, by_label):
    survivors = sorted(c.label for c in classification.screen_survivors)
    coords_ok = []
    for label, (x, y) in PRINTED_COUPLES.items():
        c = by_label[label]
        r = refine_root(c.t_root, F(1, 10**12))
        g = M.geometry_from_t(r.interval, c.branch, W, strict=False)
        coords_ok.append(within(g.x3, x, F(1, 10**6)) and within(g.y5, y, F(1, 10**6)))
    reasons = (by_label["t4-"].state == by_label["t14-"].state == C.DISCARDED_GEOMETRY
               and by_label["t4-"].x3.hi < 0 and by_label["t14-"].x3.hi < 0
               and by_label["t9+"].state == by_label["t18-"].state == C.DISCARDED_MASS
               and by_label["t9+"].masses[2].hi < 0 and by_label["t18-"].masses[2].hi < 0)
    h5 = M.h1_eval(M.geometry_from_t(Interval(F(1871, 10000), F(1872, 10000)), M.PLUS))
    bolzano = M.sign_at_t(F(7332, 10000)) * M.sign_at_t(F(7333, 10000)) == -1
    ok = survivors == sorted(PRINTED_COUPLES) and all(coords_ok) and reasons and h5.lo > 242 and bolzano
    report(6, ok, f"survivors {survivors}; coordinates {sum(coords_ok)}/6; discard reasons {reasons}; "
                  f"t5 h1 >= {float(h5.lo):.1f}; Bolzano {bolzano}")
    assert ok


# -- 7 ---------------------------------------------------------------------

def test_criterion_7_final_classification(report, classification, solutions):
    certified = sorted(c.label for c in classification.certified)
    reg, con = solutions["t2+"].geometry, solutions["t7+"].geometry
    rm, cm = solutions["t2+"].masses, solutions["t7+"].masses
    s5 = sqrt(5)
    targets = [(reg.x3, (1 + s5) / 4), (reg.y5, ((5 + 2 * s5) / 4).sqrt(W)), (reg.y3, (10 + 2 * s5).sqrt(W) / 4)]
    regular = all(iv.width <= F(1, 10**10) and iv.lo <= tv.lo and tv.hi <= iv.hi for iv, tv in targets)
    regular_m = all(m.width <= F(1, 10**9) and m.contains(F(1, 5)) for m in (rm.m1, rm.m3, rm.m5))
    tol = F(1, 10**8)
    concave = {n: within(iv, v, tol) for n, iv, v in [
        ("x3", con.x3, "0.5402091568"), ("y3", con.y3, "0.9991912848"), ("y5", con.y5, "0.1576604970"),
        ("m1", cm.m1, "0.0922539749"), ("m3", cm.m3, "0.3860948766"), ("m5", cm.m5, "0.04330242730")]}
    attainable = certified == ["t2+", "t7+"] and regular and regular_m and all(
        v for k, v in concave.items() if k != "m1")
    report(7, attainable and concave["m1"],
           f"certified {certified}; regular enclosures {regular and regular_m}; concave checks {concave} "
           f"(certified m1 = {float(cm.m1):.13f})")
    assert attainable


@pytest.mark.xfail(strict=True, reason="certified m1 = 0.09225390975; the printed 0.0922539749 is off by 6.5e-8")
def test_criterion_7_printed_m1(solutions):
    assert within(solutions["t7+"].masses.m1, "0.0922539749", F(1, 10**8))


# -- 8 ---------------------------------------------------------------------

def test_criterion_8_residuals(report, solutions):
    per = {k: (all(e.contains_zero() for e in s.residuals_e), all(f.contains_zero() for f in s.residuals_f),
               len(s.residuals_e), len(s.residuals_f)) for k, s in solutions.items()}
    ok = len(per) == 2 and all(v == (True, True, 10, 5) for v in per.values())
    report(8, ok, f"{per}")
    assert ok


# -- 9 ---------------------------------------------------------------------

@pytest.fixture(scope="module")
def q_check(classification, cache_dir):
    return C.cross_check_Q(classification.solutions, cache_dir)


def test_criterion_9_cross_check(report, q_check):
    q = q_check
    names = ("q2", "q4", "q120", "q132")
    pattern = [q["degrees"][n] for n in names] == [2, 4, 120, 132] and \
        [q["multiplicities"][n] for n in names] == [6, 2, 1, 1]
    real = [q["real_roots"][n] for n in names]
    in_S = [q["roots_in_S"][n] for n in names]
    ok_main = pattern and real == [0, 4, 28, 32] and q["total_in_S"] == 11
    report(9, ok_main and in_S == [1, 0, 4, 6],
           f"pattern q2^6 q4^2 q120 q132: {pattern}; real roots {real}; in S {in_S} (stated 1,0,4,6), "
           f"total {q['total_in_S']}")
    assert ok_main


@pytest.mark.xfail(strict=True, reason="q2 has no real roots, so it cannot have a root in S; the counts are 0, 1, 4, 6")
def test_criterion_9_stated_order(q_check):
    assert [q_check["roots_in_S"][n] for n in ("q2", "q4", "q120", "q132")] == [1, 0, 4, 6]


# -- 10 --------------------------------------------------------------------

def _fuzz_intervals(n, rng):
    bad = 0

    def rnd():
        return F(rng.randint(-10**4, 10**4), rng.randint(1, 10**3))

    for _ in range(n):
        a, b, c, d = rnd(), rnd(), rnd(), rnd()
        x, y = Interval(min(a, b), max(a, b)), Interval(min(c, d), max(c, d))
        px = x.lo + x.width * F(rng.randint(0, 100), 100)
        py = y.lo + y.width * F(rng.randint(0, 100), 100)
        op = rng.choice(["add", "sub", "mul", "div", "pow", "sqrt"])
        if op == "add":
            ok = (x + y).contains(px + py)
        elif op == "sub":
            ok = (x - y).contains(px - py)
        elif op == "mul":
            ok = (x * y).contains(px * py)
        elif op == "div":
            if y.contains_zero():
                continue
            ok = (x / y).contains(px / py)
        elif op == "pow":
            k = rng.randint(0, 6)
            ok = (x**k).contains(px**k)
        else:
            ax = Interval(abs(x.lo) if x.lo > 0 else 0, abs(x.hi) + abs(x.lo))
            p = ax.lo + ax.width * F(rng.randint(0, 100), 100)
            s = ax.sqrt(F(1, 10**12))
            ok = s.lo >= 0 and s.lo**2 <= p <= s.hi**2
        bad += not ok
    return bad


def _fuzz_sturm(n, rng):
    t = UniPoly.x("t")
    bad = 0
    for _ in range(n):
        deg = rng.randint(1, 8)
        p, real = UniPoly([1]), []
        while p.degree < deg:
            if deg - p.degree >= 2 and rng.random() < 0.3:
                p = p * (t**2 + F(rng.randint(1, 9), rng.randint(1, 4)))
            else:
                r = F(rng.randint(-20, 20), rng.randint(1, 6))
                p = p * (t - r)
                real.append(r)
        p = p * rng.randint(1, 7)
        distinct = set(real)
        lo, hi = sorted((F(rng.randint(-30, 30), 7), F(rng.randint(-30, 30), 7)))
        if lo == hi:
            hi += 1
        bad += count_real_roots(p) != len(distinct)
        bad += sturm_count(p, lo, hi) != sum(lo < r < hi for r in distinct)
    return bad


def _fuzz_resultants(n, rng):
    bad = 0
    s, t = B.BiPoly.gen(0), B.BiPoly.gen(1)
    done = 0
    while done < n:
        def rand_bi():
            ds, dt = rng.randint(1, 3), rng.randint(0, 3 - 1)
            terms = {(i, j): rng.randint(-5, 5) for i in range(ds + 1) for j in range(dt + 1) if i + j <= 3}
            terms[(ds, 0)] = rng.randint(1, 5)
            return B.BiPoly(terms)

        f, g = rand_bi(), rand_bi()
        t0 = F(rng.randint(-9, 9), rng.randint(1, 4))
        fs, gs = f.specialize(1, t0), g.specialize(1, t0)
        if fs.degree != f.degree(0) or gs.degree != g.degree(0):
            continue
        done += 1
        exact = B.resultant(f, g, "s")(t0)
        roots = np.roots([float(c) for c in reversed(fs.coeffs)])
        gv = [float(c) for c in reversed(gs.coeffs)]
        approx = complex(float(fs.lc) ** gs.degree * np.prod(np.polyval(gv, roots)))
        tol = 1e-7 * max(1.0, abs(approx))
        lo, hi = approx.real - tol, approx.real + tol
        bad += not (lo <= exact <= hi)
    return bad


def _fuzz_reciprocal(n, rng):
    bad = 0
    for _ in range(n):
        m = rng.randint(1, 8)
        half = [rng.randint(-9, 9) for _ in range(m + 1)]
        half[0] = half[0] or 1
        p = UniPoly(half + half[-2::-1], "t")
        bad += not (is_reciprocal(p) and reciprocal_expand(reciprocal_reduce(p), "t") == p)
    return bad


def test_criterion_10_property_suites(report):
    rng = random.Random(20240610)
    counts = {
        "interval (1e4)": _fuzz_intervals(10**4, rng),
        "sturm (1e3)": _fuzz_sturm(10**3, rng),
        "resultant (1e2)": _fuzz_resultants(10**2, rng),
        "reciprocal (1e3)": _fuzz_reciprocal(10**3, rng),
    }
    ok = not any(counts.values())
    report(10, ok, "violations " + ", ".join(f"{k}: {v}" for k, v in counts.items()))
    assert ok
