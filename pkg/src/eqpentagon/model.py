"""Symmetric equilateral pentagon: geometry, equilibrium equations and the elimination polynomials.

Bodies 1 and 2 sit at (1/2, 0) and (-1/2, 0), bodies 3 and 4 at
(+-x3, y3) and body 5 at (0, y5); all five sides have length 1. The
expressions below are written once, generically over the ring they are
evaluated in, so the same code serves interval enclosures, exact rationals
and symbolic substitution into (s, t) rational functions.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .bpoly import BiPoly, RatFun2, SymPoly, ratfun_compose
from .interval import Interval, as_fraction
from .upoly import UniPoly

PLUS, MINUS = "plus", "minus"

DEFAULT_WIDTH = Fraction(1, 2**256)
# y5 where Psi+ turns (x3 = 1) and where the branches meet the boundary
Y_TURN_SQ = Fraction(3, 4)
Y_MAX_SQ = Fraction(15, 4)


class ModelError(ValueError):
    pass


class OutOfBranchDomain(ModelError):
    pass


class DegeneratePentagon(ModelError):
    pass


class SingularDenominator(ZeroDivisionError):
    pass


class AppendixMismatch(RuntimeError):
    pass


class DataIntegrityError(RuntimeError):
    pass


# -- model expressions (ring-generic) ------------------------------------

def h1_expr(x3, y5, E1, E2, E3):
    """h1 written as a sum of addends in x3, y5, E1, E2, E3."""
    q = 4 * x3**2 + 4 * x3 + 1
    p2x = 1 + 2 * x3
    return (
        -128 * x3**3 * y5**2 * q * E1
        + 4 * x3**2 * y5**2 * q * E3
        + 32 * y5**2 * (32 * x3**6 + 16 * x3**5 - 8 * x3**4 - 4 * x3**3 + 4 * x3**2 + 4 * x3 + 1) * E1**2
        + 64 * x3**3 * y5 * p2x * E1 * E2
        - 8 * x3**2 * y5**2 * q * E1 * E3
        - 4 * x3**2 * y5 * p2x * E3 * E2
        + 16 * y5 * (16 * x3**5 + 16 * x3**4 + 4 * x3**3 - 4 * x3**2 - 4 * x3 - 1) * E1**2 * E2
        - 4 * y5**2 * (16 * x3**6 - 16 * x3**5 - 32 * x3**4 - 12 * x3**3 + 3 * x3**2 + 4 * x3 + 1) * E1**2 * E3
        + 8 * x3**2 * y5 * (2 * x3**2 + 3 * x3 + 1) * E1 * E2 * E3
        + E2**2 * E3 * x3**2
        - 2 * y5 * (32 * x3**5 + 40 * x3**4 + 16 * x3**3 - 2 * x3**2 - 4 * x3 - 1) * E1**2 * E2 * E3
        - 2 * x3**2 * p2x * E1 * E2**2 * E3
        + x3**2 * q * E1**2 * E2**2 * E3
    )


def h2_expr(x3, y5):
    return (1 - 4 * x3) ** 2 * (1 + 4 * y5**2) + 4 * y5**2 * (4 * y5**2 - 15)


def L1_expr(x3, y5, E1, E2, E3):
    return (-2 * (1 + 2 * x3) * (2 * E1 * E3 * x3**3 - E1 * E3 * x3**2 + x3**2 * E3 - 4 * E1) * y5
            - E2 * E3 * x3**2 * (2 * x3 * E1 + E1 - 1))


def L2_expr(x3, y5, E1, E2, E3):
    return ((1 + 2 * x3) * (12 * E1 * E3 * x3**3 - 2 * E1 * E3 * x3**2 - 64 * x3**3 * E1
                            + 2 * x3**2 * E3 - E1 * E3) * y5
            + E2 * E3 * x3**2 * (2 * x3 * E1 + E1 - 1))


def mass_denominator_expr(x3, y5, E1, E2, E3, lam):
    return (2 * E1 * (E2 * E3 * lam + 2 * lam * y5 * E3 + E2 * E3 - 2 * E3 * y5 + 32 * y5) * x3**3
            + E3 * (1 + lam) * (E2 - 2 * y5) * (E1 - 1) * x3**2
            - E1 * y5 * (lam * E3 + 8))


def m1_numerator_expr(x3, y5, E1, E2, E3, lam):
    return 2 * E1 * E3 * (1 + lam) ** 2 * x3**3 * (E2 - 2 * y5)


def m3_numerator_expr(x3, y5, E1, E2, E3, lam):
    return 4 * E1 * (1 + lam) * (8 + E3 * lam) * x3**3 * y5


def g1_expr(x3, y5, E1, E2, E3, lam):
    return (8 * E1 * E3 * (1 + lam) * (lam * E3 + 8) * y5 * x3**4
            + ((16 * E1 * E3**2 * lam - 4 * lam**2 * E3**2 + 8 * E1 * E3**2 - 192 * lam * E1 * E3
                - 4 * lam * E3**2 - 64 * E1 * E3 + 512 * E1 * lam - 32 * lam * E3 - 32 * E3) * y5
               - 2 * E1 * E2 * E3 * (1 + lam) * (3 * lam * E3 + 2 * E3 - 16 * lam - 8)) * x3**3
            + (2 * E3 * (1 + lam) * (lam * E3 + 8) * (E1 - 1) * y5
               - E2 * E3 * (1 + lam) * (lam * E3 + 8) * (E1 - 1)) * x3**2
            + E1 * (lam * E3 + 8) ** 2 * y5)


def g3_expr(y5, E3, lam, L1, L2):
    return (8 + E3 * lam) * y5 * (L2 * lam - L1)


def g4_expr(y5, E2, lam, L1, L2):
    return (1 + lam) * (2 * y5 - E2) * (L2 * lam - L1)


def m5_factored_expr(x3, y5, E1, E2, E3, L2):
    """m5 * m (m the mass denominator) after lambda = L1/L2, in factored form.

    The (E3 - 8)(2 x3 - 1) factor is shared with m, so it does not force m5 = 0.
    """
    bracket = (8 * E1**2 * (E3 - 16) * x3**4 + 8 * E1 * (E3 - 8) * (E1 + 1) * x3**3
               + 2 * E3 * (E1 - 1) ** 2 * x3**2 - 2 * E1**2 * (E3 - 16) * x3
               - E1 * (E1 * E3 - 16 * E1 + E3))
    tail = -(1 + 2 * x3) * bracket * y5 + E2 * E3 * x3**2 * (2 * E1 * x3 + E1 - 1) ** 2
    lead = 2 * E1 * y5 * x3**3 * E2 * E3 * (2 * x3 - 1) * (4 * x3**2 + 2 * x3 + 1) * (E3 - 8)
    return lead * tail / L2**2


def f_exprs(x3, y5, E1, E2, E3, lam, m1, m3):
    """The five independent reduced equations (lambda with the sign of the reduced system)."""
    f1 = (-lam / 2 - 4 / E3 + m1 * (-1 + 8 / E3)
          + m3 * (Fraction(-1, 2) + x3 - 1 / (2 * E1) + 8 / E3))
    f2 = (-(1 + lam) * x3 + Fraction(1, 4) * m3 * (8 - 1 / x3**3) * x3
          + m1 * (Fraction(1, 2) + x3 - 1 / (2 * E1)))
    f3 = (y5 * (lam + 8 / E3) + m1 * (-2 * lam * y5 - 16 * y5 / E3)
          + m3 * (E2 / 2 * (1 + 1 / ((1 + 2 * x3) * E1)) + lam * (E2 - 2 * y5) - 16 * y5 / E3))
    f4 = (-(1 + lam) * (E2 - 2 * y5) / 2 + (1 + lam) * m3 * (E2 - 2 * y5)
          + m1 * (E2 / 2 * (1 - 1 / ((1 + 2 * x3) * E1)) - 2 * (1 + lam) * y5))
    f5 = (1 + lam) * m3 * (E2 - 2 * y5) + m1 * (-2 * lam * y5 - 16 * y5 / E3)
    return [f1, f2, f3, f4, f5]


# -- parameterisation ----------------------------------------------------

def _sym(name):
    return SymPoly.symbol(name)


X3, Y5, E1S, E2S, E3S = (_sym(n) for n in ("x3", "y5", "E1", "E2", "E3"))
H1_SYMBOLIC = h1_expr(X3, Y5, E1S, E2S, E3S)
H2_SYMBOLIC = h2_expr(X3, Y5)


def parameterization() -> dict:
    """Rational functions of (s, t) for x3, y5, E1, E2, E3."""
    s = UniPoly.x("s")
    D = UniPoly((1, -4, 5), "s")
    x3_num = UniPoly((-1, 0, 3), "s") * UniPoly((1, -8, 13), "s")
    e1_num = s * UniPoly((-1, 2), "s") * 4
    e2_num = s * UniPoly((-1, 1), "s") * UniPoly((-1, 3), "s") * UniPoly((-1, 2), "s") * (-8)
    t = BiPoly.gen(1)
    return {
        "x3": RatFun2(BiPoly.from_upoly(x3_num), {"2": 1, "D": 2}),
        "y5": RatFun2(1 - t * t, {"2": 2, "t": 1}),
        "E1": RatFun2(BiPoly.from_upoly(e1_num), {"D": 1}),
        "E2": RatFun2(BiPoly.from_upoly(e2_num), {"D": 2}),
        "E3": RatFun2((t * t + 1) ** 3, {"2": 3, "t": 3}),
        "_D": D,
    }


# h1 = H1_FACTOR * s^2 (2s-1)^2 * H1 / (t^5 (5s^2-4s+1)^14)
H1_FACTOR = 2
H1_DENOMINATOR = {"t": 5, "D": 14}


def derive_H1() -> BiPoly:
    """h1 pulled back to (s, t) with its known factors removed; must be a polynomial."""
    b = {k: v for k, v in parameterization().items() if not k.startswith("_")}
    rf = ratfun_compose(H1_SYMBOLIC, b)
    expected = dict.fromkeys(rf.exps, 0)
    expected.update(H1_DENOMINATOR)
    if rf.exps != expected:
        raise AppendixMismatch(f"unexpected denominator of h1(s, t): {rf.exps}")
    scaled = RatFun2(rf.num, {"2": 1, "s": 2, "2s-1": 2}).reduced()
    if not scaled.is_polynomial():
        raise AppendixMismatch(f"h1(s, t) numerator not divisible by 2 s^2 (2s-1)^2: {scaled!r}")
    return scaled.num


def derive_H2() -> BiPoly:
    b = {k: v for k, v in parameterization().items() if not k.startswith("_")}
    rf = ratfun_compose(H2_SYMBOLIC, b)
    scaled = _times_atoms(rf, **{"2": 4, "D": 4, "t": 4}).reduced()
    if not scaled.is_polynomial():
        raise AppendixMismatch(f"H2 scaling left a denominator: {scaled!r}")
    return scaled.num


def _times_atoms(rf: RatFun2, **powers) -> RatFun2:
    """Multiply by atom powers, cancelling against the denominator first."""
    exps = dict(rf.exps)
    num = rf.num
    for name, k in powers.items():
        take = min(k, exps[name])
        exps[name] -= take
        if k > take:
            num = num * _atom(name) ** (k - take)
    return RatFun2(num, exps)


def _atom(name):
    from .bpoly import ATOMS
    return ATOMS[name]


def printed_H2() -> BiPoly:
    """H2 as displayed next to the (s, t) system."""
    s = UniPoly.x("s")
    D = UniPoly((1, -4, 5), "s")
    a = UniPoly((7, -56, 150, -152, 47), "s")
    b = UniPoly((1, -8, 58, -168, 153), "s")
    c = UniPoly((198, -3168, 21432, -79776, 183428, -286240, 326904, -258784, 101222), "s")
    D4 = D**4
    ab = a * b * (-4)
    return BiPoly.from_coefficients_in([D4, 0 * s, ab, 0 * s, c, 0 * s, ab, 0 * s, D4], 0)


# -- embedded data --------------------------------------------------------

DATA_FILES = ("R0", "R1", "R2", "R3", "R4", "R5", "R6", "R60", "p4", "q4")


def _data_text(name: str) -> str:
    return resources.files("eqpentagon").joinpath("data", f"{name}.txt").read_text()


@lru_cache(maxsize=None)
def data_digests() -> dict:
    out = {}
    for line in resources.files("eqpentagon").joinpath("data", "MANIFEST.sha256").read_text().splitlines():
        if line.strip():
            digest, fname = line.split()
            out[fname] = digest
    return out


@lru_cache(maxsize=None)
def load_data(name: str, var: str = "s") -> UniPoly:
    text = _data_text(name)
    digest = hashlib.sha256(text.encode()).hexdigest()
    expected = data_digests().get(f"{name}.txt")
    if expected != digest:
        raise DataIntegrityError(f"{name}.txt digest {digest[:12]} does not match manifest")
    return UniPoly.from_text(text, var)


def combined_data_digest() -> str:
    h = hashlib.sha256()
    for name in DATA_FILES:
        h.update(data_digests()[f"{name}.txt"].encode())
    return h.hexdigest()


def appendix_H1() -> BiPoly:
    """R0(t^10+1) - R1(t^9+4t^7-t) + R2(t^8+t^2) + R3(t^7+t^3) + R4 t^4 + R5 t^5 + R6 t^6."""
    R = [load_data(f"R{k}") for k in range(7)]
    zero = UniPoly((), "s")
    cols = [zero] * 11
    cols[0] = cols[0] + R[0]
    cols[10] = cols[10] + R[0]
    cols[9] = cols[9] - R[1]
    cols[7] = cols[7] - R[1] * 4
    cols[1] = cols[1] + R[1]
    cols[8] = cols[8] + R[2]
    cols[2] = cols[2] + R[2]
    cols[7] = cols[7] + R[3]
    cols[3] = cols[3] + R[3]
    for j in (4, 5, 6):
        cols[j] = cols[j] + R[j]
    return BiPoly.from_coefficients_in(cols, 0)


@dataclass(frozen=True)
class ModelPolynomials:
    H1: BiPoly
    H2: BiPoly
    appendixA_H1: BiPoly
    appendixB_R60: UniPoly
    p4: UniPoly
    q4: UniPoly
    H1_matches_appendix: bool = True
    H2_matches_printed: bool = True


@lru_cache(maxsize=1)
def build_model_polynomials(check: bool = True) -> ModelPolynomials:
    H1 = derive_H1()
    H2 = derive_H2()
    appA = appendix_H1()
    okA = H1.equal_up_to_sign(appA)
    ok2 = H2.equal_up_to_sign(printed_H2())
    if check and not okA:
        raise AppendixMismatch("derived H1 differs from the embedded R0..R6 assembly")
    if check and not ok2:
        raise AppendixMismatch("derived H2 differs from its printed form")
    return ModelPolynomials(
        H1=H1, H2=H2, appendixA_H1=appA,
        appendixB_R60=load_data("R60", "u"),
        p4=load_data("p4", "t"), q4=load_data("q4", "t"),
        H1_matches_appendix=okA, H2_matches_printed=ok2,
    )


# -- geometry ----------------------------------------------------------------

def _point_sqrt(x: Fraction, width) -> Interval:
    return Interval(x).sqrt(width)


def phi(y, width=DEFAULT_WIDTH) -> Interval:
    """sqrt((15 - 4y^2) / (1 + 4y^2)), decreasing for y > 0."""
    y = Interval.coerce(y)
    if y.lo < 0:
        raise OutOfBranchDomain("y5 must be positive")

    def at(v):
        r = (15 - 4 * v * v) / (1 + 4 * v * v)
        if r < 0:
            raise OutOfBranchDomain("y5 beyond sqrt(15)/2")
        return _point_sqrt(r, width)

    return Interval(at(y.hi).lo, at(y.lo).hi)


def psi(y, branch: str, width=DEFAULT_WIDTH) -> Interval:
    """Enclosure of x3 = 1/4 +- (y/2) phi(y), using the monotone pieces of Psi+."""
    y = Interval.coerce(y)

    def plus_at(v):
        return Fraction(1, 4) + v / 2 * phi(Interval(v), width)

    a, b = plus_at(y.lo), plus_at(y.hi)
    if y.hi * y.hi <= Y_TURN_SQ:
        xp = Interval(a.lo, b.hi)
    elif y.lo * y.lo >= Y_TURN_SQ:
        xp = Interval(b.lo, a.hi)
    else:
        xp = Interval(min(a.lo, b.lo), 1)
    if branch == PLUS:
        return xp
    return Fraction(1, 2) - xp


@dataclass(frozen=True)
class PentagonGeometry:
    y5: Interval
    branch: str
    x3: Interval
    y3: Interval
    E1: Interval
    E2: Interval
    E3: Interval
    shape: str
    in_domain: bool = True
    notes: tuple = field(default=())

    def vertices(self):
        return [
            (Interval(Fraction(1, 2)), Interval(0)),
            (Interval(Fraction(-1, 2)), Interval(0)),
            (self.x3, self.y3),
            (-self.x3, self.y3),
            (Interval(0), self.y5),
        ]


_SQRT3_HALF_SQ = Fraction(3, 4)


def _in_minus_domain(y: Interval) -> bool | None:
    # (1 + sqrt3/2, sqrt15/2): compare (y - 1)^2 with 3/4 for y > 1
    lo_ok = y.lo > 1 and (y.lo - 1) ** 2 > _SQRT3_HALF_SQ
    hi_ok = y.hi * y.hi < Y_MAX_SQ
    if lo_ok and hi_ok:
        return True
    lo_bad = y.hi <= 1 or (y.hi - 1) ** 2 < _SQRT3_HALF_SQ
    hi_bad = y.lo * y.lo > Y_MAX_SQ
    if lo_bad or hi_bad:
        return False
    return None


def geometry_from_y5(y5, branch: str = PLUS, width=DEFAULT_WIDTH, strict: bool = True,
                     E3: Interval | None = None) -> PentagonGeometry:
    """Pentagon for a y5 enclosure on the given branch of the equilateral constraint.

    With ``strict=False`` inputs outside the branch domain are still evaluated
    and reported through ``in_domain``; only impossible radicands raise.
    """
    if branch not in (PLUS, MINUS):
        raise ValueError(branch)
    y = Interval.coerce(y5)
    if y.lo <= 0 or y.hi * y.hi >= Y_MAX_SQ:
        raise OutOfBranchDomain(f"y5 enclosure {float(y.lo):.6g}..{float(y.hi):.6g} outside (0, sqrt(15)/2)")
    if branch == PLUS:
        in_domain = True
    else:
        in_domain = _in_minus_domain(y) is True
    if strict and not in_domain:
        raise OutOfBranchDomain("y5 outside (1 + sqrt(3)/2, sqrt(15)/2) on the minus branch")
    ph = phi(y, width)
    x3 = psi(y, branch, width)
    y3 = y / 2 + ph / 4 if branch == PLUS else y / 2 - ph / 4
    E1 = (1 + 2 * x3).sqrt(width) if x3.lo > Fraction(-1, 2) else Interval(0, (1 + 2 * x3).hi).sqrt(width)
    rad = 4 - (2 * x3 - 1) ** 2
    E2 = Interval(max(rad.lo, 0), rad.hi).sqrt(width)
    v = 1 + 4 * y * y
    e3 = v * v.sqrt(width)
    if E3 is not None:
        e3 = e3.intersect(E3) or E3
    if branch == MINUS:
        shape = "concave"
    elif y.hi * y.hi < Y_TURN_SQ:
        shape = "concave"
    elif y.lo * y.lo > Y_TURN_SQ:
        shape = "convex"
    else:
        shape = "degenerate"
    notes = []
    if x3.hi <= 0:
        notes.append("x3<=0")
    if strict and (x3.hi <= 0 or shape == "degenerate"):
        raise DegeneratePentagon("; ".join(notes) or "boundary y5 = sqrt(3)/2")
    return PentagonGeometry(y, branch, x3, y3, E1, E2, e3, shape, in_domain, tuple(notes))


def y5_from_t(t) -> Interval:
    """(1 - t^2)/(4t), decreasing on (0, 1)."""
    t = Interval.coerce(t)
    if t.lo <= 0:
        raise OutOfBranchDomain("t must be positive")
    f = lambda v: (1 - v * v) / (4 * v)  # noqa: E731
    return Interval(f(t.hi), f(t.lo))


def E3_from_t(t) -> Interval:
    """((1 + t^2)/(2t))^3 exactly, decreasing on (0, 1)."""
    t = Interval.coerce(t)
    w = lambda v: ((1 + v * v) / (2 * v)) ** 3  # noqa: E731
    if t.hi <= 1:
        return Interval(w(t.hi), w(t.lo))
    return Interval(min(w(t.lo), w(t.hi), 1), max(w(t.lo), w(t.hi)))


def geometry_from_t(t, branch: str = PLUS, width=DEFAULT_WIDTH, strict: bool = False) -> PentagonGeometry:
    t = Interval.coerce(t)
    return geometry_from_y5(y5_from_t(t), branch, width, strict, E3=E3_from_t(t))


# -- masses and residuals --------------------------------------------------

@dataclass(frozen=True)
class MassSolution:
    lam: Interval          # multiplier of q_i - c_m in the equilibrium equations (positive)
    m1: Interval
    m3: Interval
    m5: Interval
    lam_reduced: Interval  # L1/L2, the multiplier as it enters f1..f5 and g1..g4
    L1: Interval
    L2: Interval
    denominator: Interval

    def admissible(self) -> bool:
        return self.m1.lo > 0 and self.m3.lo > 0 and self.m5.lo > 0

    def masses(self):
        return [self.m1, self.m1, self.m3, self.m3, self.m5]


def _args(geom: PentagonGeometry):
    return geom.x3, geom.y5, geom.E1, geom.E2, geom.E3


def solve_masses(geom: PentagonGeometry) -> MassSolution:
    a = _args(geom)
    L1 = L1_expr(*a)
    L2 = L2_expr(*a)
    if L2.contains_zero():
        raise SingularDenominator("L2 enclosure contains 0")
    lam = L1 / L2
    m = mass_denominator_expr(*a, lam)
    if m.contains_zero():
        raise SingularDenominator("mass denominator enclosure contains 0")
    m1 = m1_numerator_expr(*a, lam) / m
    m3 = m3_numerator_expr(*a, lam) / m
    m5 = 1 - 2 * m1 - 2 * m3
    return MassSolution(-lam, m1, m3, m5, lam, L1, L2, m)


def mass_identity_checks(geom: PentagonGeometry, ms: MassSolution) -> dict:
    """Interval values of g1, g3, g4 at lambda = L1/L2 and of the factored m5."""
    a = _args(geom)
    lam = ms.lam_reduced
    return {
        "g1": g1_expr(*a, lam),
        "g3": g3_expr(geom.y5, geom.E3, lam, ms.L1, ms.L2),
        "g4": g4_expr(geom.y5, geom.E2, lam, ms.L1, ms.L2),
        "m5_factored": m5_factored_expr(*a, ms.L2),
    }


def center_of_mass(geom: PentagonGeometry, ms: MassSolution):
    return _center(geom.vertices(), ms.masses())


def _center(pts, masses):
    total = sum(masses, Interval(0))
    xs = sum((m * p[0] for m, p in zip(masses, pts)), Interval(0)) / total
    ys = sum((m * p[1] for m, p in zip(masses, pts)), Interval(0)) / total
    return xs, ys


def residuals_general(geom: PentagonGeometry, masses, lam, width=DEFAULT_WIDTH) -> list[Interval]:
    """e1..e10 for arbitrary masses m1..m5 and multiplier ``lam``.

    e_i = sum_j m_j (q_i - q_j) / r_ij^3 - lam (q_i - c_m), x-components for
    bodies 1..5 and then y-components. The central-configuration multiplier
    is positive in this orientation.
    """
    pts = geom.vertices()
    M = [Interval.coerce(m) for m in masses]
    lam = Interval.coerce(lam)
    cx, cy = _center(pts, M)
    ex, ey = [], []
    for i in range(5):
        sx, sy = Interval(0), Interval(0)
        for j in range(5):
            if i == j:
                continue
            dx = pts[i][0] - pts[j][0]
            dy = pts[i][1] - pts[j][1]
            r2 = dx * dx + dy * dy
            r3 = r2 * r2.sqrt(width)
            sx = sx + M[j] * dx / r3
            sy = sy + M[j] * dy / r3
        ex.append(sx - lam * (pts[i][0] - cx))
        ey.append(sy - lam * (pts[i][1] - cy))
    return ex + ey


def cc_residuals(geom: PentagonGeometry, ms: MassSolution, width=DEFAULT_WIDTH) -> list[Interval]:
    """Enclosures of e1..e10 at the solved masses."""
    return residuals_general(geom, ms.masses(), ms.lam, width)


def f_residuals(geom: PentagonGeometry, ms: MassSolution) -> list[Interval]:
    return f_exprs(*_args(geom), ms.lam_reduced, ms.m1, ms.m3)


def h1_eval(geom: PentagonGeometry) -> Interval:
    return h1_expr(*_args(geom))


def h2_eval(x3, y5):
    if isinstance(x3, Interval) or isinstance(y5, Interval):
        return h2_expr(Interval.coerce(x3), Interval.coerce(y5))
    return h2_expr(as_fraction(x3), as_fraction(y5))


def h1_at_t(t, branch: str = PLUS, width=DEFAULT_WIDTH) -> Interval:
    """h1 along the branch at a single rational t (enclosure of an exact real)."""
    return h1_eval(geometry_from_t(Interval(as_fraction(t)), branch, width))


def sign_at_t(t, branch: str = PLUS) -> int:
    """Certified sign of h1 at t, tightening the square roots until decided."""
    width = Fraction(1, 2**64)
    for _ in range(8):
        s = h1_at_t(t, branch, width).sign()
        if s:
            return s
        width = width**2
    return 0
