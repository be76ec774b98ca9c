import random
from fractions import Fraction as F

import pytest

from eqpentagon import model as M
from eqpentagon.bpoly import eval2
from eqpentagon.interval import Interval

W = F(1, 2**200)


def sqrt(x):
    return Interval.coerce(x).sqrt(W)


def regular_y5():
    return ((5 + 2 * sqrt(5)) / 4).sqrt(W)


@pytest.fixture(scope="module")
def regular():
    return M.geometry_from_y5(regular_y5(), M.PLUS, W)


def test_model_polynomials_match_embedded(model):
    assert model.H1_matches_appendix and model.H2_matches_printed
    assert model.H1.total_degree == 34
    assert (model.H1.degree(0), model.H1.degree(1)) == (24, 10)
    assert model.H1.primitive_part().equal_up_to_sign(model.appendixA_H1.primitive_part())


def test_two_path_evaluation():
    s, t = F(3, 5), F(1, 2)
    par = M.parameterization()
    vals = {k: eval2(v, s, t) for k, v in par.items() if not k.startswith("_")}
    direct = M.h1_expr(vals["x3"], vals["y5"], vals["E1"], vals["E2"], vals["E3"])
    D = par["_D"](s)
    via_H1 = 2 * s**2 * (2 * s - 1) ** 2 * eval2(M.derive_H1(), s, t) / (t**5 * D**14)
    assert direct == via_H1
    h2 = M.h2_eval(vals["x3"], vals["y5"])
    assert h2 * 16 * D**4 * t**4 == eval2(M.derive_H2(), s, t)


def test_parameterization_is_equilateral():
    s, t = F(2, 7), F(1, 3)
    par = M.parameterization()
    x3, y5 = eval2(par["x3"], s, t), eval2(par["y5"], s, t)
    E1, E2 = eval2(par["E1"], s, t), eval2(par["E2"], s, t)
    assert E1 * E1 == 1 + 2 * x3 and E2 * E2 == 3 + 4 * x3 - 4 * x3 * x3


@pytest.mark.parametrize("x3,y5,val", [(F(1, 4), 0, 0), (F(1, 2), F(1, 2), -12)])
def test_h2_examples(x3, y5, val):
    assert M.h2_eval(x3, y5) == val


@pytest.mark.parametrize("branch", [M.PLUS, M.MINUS])
def test_psi_solves_h2(branch):
    rng = random.Random(5)
    lo = F(187, 100) if branch == M.MINUS else F(1, 100)
    for _ in range(50):
        y = F(rng.randint(int(lo * 1000) + 1, 1935), 1000)
        g = M.geometry_from_y5(y, branch, W, strict=False)
        assert M.h2_eval(g.x3, Interval(y)).contains_zero()


def test_distances(regular):
    g = M.geometry_from_y5(F(3, 10), M.PLUS, W)
    q = g.vertices()

    def d2(i, j):
        return (q[i][0] - q[j][0]) ** 2 + (q[i][1] - q[j][1]) ** 2

    for i, j in [(0, 1), (0, 2), (2, 4), (3, 4), (1, 3)]:
        assert d2(i, j).contains(1)
    assert d2(0, 3).contains((1 + 2 * g.x3).mid) or (d2(0, 3) - (1 + 2 * g.x3)).contains_zero()


def test_regular_pentagon(regular):
    g = regular
    assert g.shape == "convex"
    assert g.x3.contains_zero() is False
    assert ((1 + sqrt(5)) / 4 - g.x3).contains_zero()
    ms = M.solve_masses(g)
    for m in (ms.m1, ms.m3, ms.m5):
        assert m.contains(F(1, 5))
    assert ms.lam.lo > 0
    assert all(e.contains_zero() for e in M.cc_residuals(g, ms, W))
    assert M.h1_eval(g).contains_zero()


def test_unequal_masses_not_central(regular):
    res = M.residuals_general(regular, [F(1, 2), F(1, 2), 0, 0, 0], 1, W)
    assert any(not e.contains_zero() for e in res)


def test_boundary_sqrt3_half():
    g = M.geometry_from_y5(sqrt(3) / 2, M.PLUS, W, strict=False)
    assert g.shape == "degenerate" and g.x3.contains(1)
    with pytest.raises(M.DegeneratePentagon):
        M.geometry_from_y5(sqrt(3) / 2, M.PLUS, W)


@pytest.mark.parametrize("y5,branch", [(0, M.PLUS), (F(-1, 2), M.PLUS), (2, M.PLUS), (F(3, 2), M.MINUS)])
def test_domain_errors(y5, branch):
    with pytest.raises(M.OutOfBranchDomain):
        M.geometry_from_y5(y5, branch)


def _random_masses(rng):
    m1 = F(rng.randint(1, 100), 1000)
    m3, m4, m5 = (F(rng.randint(1, 300), 1000) for _ in range(3))
    ms = [m1, m1, m3, m4, m5]
    return [m / sum(ms) for m in ms]


def test_symmetry_identities():
    rng = random.Random(11)
    for _ in range(100):
        g = M.geometry_from_y5(F(rng.randint(1, 1930), 1000), M.PLUS, W, strict=False)
        if g.x3.hi <= 0:
            continue
        ms, lam = _random_masses(rng), F(rng.randint(1, 400), 100)
        e = M.residuals_general(g, ms, lam, W)
        rhs = (ms[2] - ms[3]) * (8 * lam * g.x3**3 - 1) / (4 * g.x3**2)
        assert (e[2] + e[3]).intersect(rhs) is not None
        # with unequal m1, m2 the y-difference of bodies 3, 4
        ms2 = [ms[0], ms[0] / 2] + ms[2:]
        e2 = M.residuals_general(g, ms2, lam, W)
        rhs2 = (ms2[0] - ms2[1]) * g.E2 * (g.E1**3 - 1) / (2 * g.E1**3)
        assert (e2[7] - e2[8]).intersect(rhs2) is not None


def test_g4_and_m5_factorization():
    rng = random.Random(3)
    hit = 0
    while hit < 100:
        g = M.geometry_from_y5(F(rng.randint(1, 1930), 1000), M.PLUS, W, strict=False)
        try:
            ms = M.solve_masses(g)
        except M.SingularDenominator:
            continue
        chk = M.mass_identity_checks(g, ms)
        assert chk["g4"].contains_zero()
        assert chk["m5_factored"].intersect(ms.m5 * ms.denominator) is not None
        assert (2 * ms.m1 + 2 * ms.m3 + ms.m5).contains(1)
        hit += 1


def test_monotonicity_grid():
    ts = [F(k, 40) for k in range(1, 40)]
    ys = [(1 - t * t) / (4 * t) for t in ts]
    assert all(a > b for a, b in zip(ys, ys[1:]))
    grid = [F(k, 100) for k in range(1, 193)]
    xs = [M.psi(Interval(y), M.PLUS, W).mid for y in grid]
    turn = next(i for i, y in enumerate(grid) if y * y > F(3, 4))
    assert all(a < b for a, b in zip(xs[:turn], xs[1:turn]))
    assert all(a > b for a, b in zip(xs[turn:], xs[turn + 1:]))
    # E2^2 = 3 + 4x - 4x^2 turns at x = 1/2
    e2 = [3 + 4 * x - 4 * x * x for x in (F(k, 100) for k in range(0, 101))]
    assert all(a < b for a, b in zip(e2[:50], e2[1:51]))
    assert all(a > b for a, b in zip(e2[50:], e2[51:]))


def test_psi_enclosure_is_sound():
    rng = random.Random(8)
    for _ in range(50):
        a = F(rng.randint(1, 1900), 1000)
        b = a + F(rng.randint(1, 30), 1000)
        box = M.psi(Interval(a, b), M.PLUS, W)
        for y in (a, (a + b) / 2, b):
            assert box.intersect(M.psi(Interval(y), M.PLUS, W)) is not None


def test_t5_bracket_h1_bound():
    geom = M.geometry_from_t(Interval(F(1871, 10000), F(1872, 10000)), M.PLUS)
    assert M.h1_eval(geom).lo > 242


def test_bolzano_signs():
    assert M.sign_at_t(F(7332, 10000)) * M.sign_at_t(F(7333, 10000)) == -1


def test_data_digests_stable():
    d = M.data_digests()
    assert set(d) == {f"{n}.txt" for n in M.DATA_FILES}
    assert M.combined_data_digest() == M.combined_data_digest()
