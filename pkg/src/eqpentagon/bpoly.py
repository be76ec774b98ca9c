"""Bivariate integer polynomials, atom-denominator rational functions and resultants.

A :class:`BiPoly` is a sparse map ``(deg_s, deg_t) -> int``. Rational
functions (:class:`RatFun2`) keep their denominator as an exponent vector
over a fixed set of atoms, so no bivariate gcd is ever needed.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd

from .interval import Interval, as_fraction
from .upoly import InexactDivision, UniPoly, exact_divide
from .upoly import resultant as uni_resultant


class DegenerateInput(ValueError):
    pass


class DenominatorZero(ZeroDivisionError):
    pass


class UnboundSymbol(KeyError):
    pass


class BiPoly:
    """Sparse polynomial in two variables (default names ``s`` and ``t``)."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms=None, vars=("s", "t")):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}
        self.vars = tuple(vars)

    @classmethod
    def const(cls, c, vars=("s", "t")):
        return cls({(0, 0): c}, vars)

    @classmethod
    def gen(cls, which: int, vars=("s", "t")):
        return cls({(1, 0) if which == 0 else (0, 1): 1}, vars)

    @classmethod
    def from_upoly(cls, p: UniPoly, which: int = 0, vars=("s", "t")):
        if which == 0:
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)}, vars)
        return cls({(0, j): c for j, c in enumerate(p.coeffs)}, vars)

    @classmethod
    def from_coefficients_in(cls, polys, which: int, vars=("s", "t")):
        """Assemble sum_j polys[j] * other_var**j, each poly in variable ``which``."""
        terms = {}
        for j, p in enumerate(polys):
            for i, c in enumerate(p.coeffs):
                key = (i, j) if which == 0 else (j, i)
                terms[key] = terms.get(key, 0) + c
        return cls(terms, vars)

    # -- properties -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, which: int) -> int:
        return max((k[which] for k in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def content(self) -> int:
        return reduce(igcd, self.terms.values(), 0)

    def primitive_part(self) -> "BiPoly":
        c = self.content()
        if c in (0, 1):
            return self
        return BiPoly({k: v // c for k, v in self.terms.items()}, self.vars)

    def normalized(self) -> "BiPoly":
        """Primitive part with a positive leading term (lexicographically largest exponent)."""
        p = self.primitive_part()
        if p.terms and p.terms[max(p.terms)] < 0:
            p = -p
        return p

    def equal_up_to_sign(self, other: "BiPoly") -> bool:
        return self.normalized() == other.normalized()

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return (f"BiPoly(<{len(self.terms)} terms, deg_{self.vars[0]}={self.degree(0)}, "
                f"deg_{self.vars[1]}={self.degree(1)}>)")

    # -- ring operations ------------------------------------------------
    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, int):
            return BiPoly.const(other, self.vars)
        raise TypeError(f"cannot combine BiPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()}, self.vars)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly({k: v * other for k, v in self.terms.items()}, self.vars)
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- views ----------------------------------------------------------
    def coefficients_in(self, which: int) -> list[UniPoly]:
        """Coefficients as polynomials in the *other* variable, indexed by the power of ``which``."""
        other = 1 - which
        d = self.degree(which)
        buckets = [dict() for _ in range(d + 1)]
        for k, v in self.terms.items():
            buckets[k[which]][k[other]] = v
        out = []
        for b in buckets:
            n = max(b, default=-1)
            out.append(UniPoly([b.get(i, 0) for i in range(n + 1)], self.vars[other]))
        return out

    def specialize(self, which: int, value) -> UniPoly:
        """Substitute ``value`` for variable ``which``; result is a UniPoly in the other one."""
        value = as_fraction(value)
        other = 1 - which
        d = self.degree(other)
        cs = [Fraction(0)] * (d + 1)
        for k, v in self.terms.items():
            cs[k[other]] += v * value ** k[which]
        return UniPoly(cs, self.vars[other])

    def divide_by_upoly(self, p: UniPoly, which: int) -> "BiPoly":
        """Exact division by a polynomial in variable ``which`` only."""
        cols = self.coefficients_in(1 - which)
        q = [exact_divide(c, p) for c in cols]
        for c in q:
            if not c.is_integral():
                raise InexactDivision("non-integral quotient")
        return BiPoly.from_coefficients_in(q, which, self.vars)

    def __call__(self, s, t):
        return eval2(self, s, t)

    # -- serialisation --------------------------------------------------
    def to_text(self) -> str:
        return "".join(f"{i} {j} {c}\n" for (i, j), c in sorted(self.terms.items()))

    @classmethod
    def from_text(cls, text: str, vars=("s", "t")) -> "BiPoly":
        terms = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            i, j, c = line.split()
            terms[(int(i), int(j))] = int(c)
        return cls(terms, vars)


# -- rational functions with atom denominators --------------------------

_S = UniPoly.x("s")
ATOMS = {
    "2": BiPoly.const(2),
    "t": BiPoly.gen(1),
    "D": BiPoly.from_upoly(UniPoly((1, -4, 5), "s")),  # 5s^2 - 4s + 1
    "s": BiPoly.gen(0),
    "2s-1": BiPoly.from_upoly(UniPoly((-1, 2), "s")),
}
ATOM_ORDER = ("2", "t", "D", "s", "2s-1")


def _atom_power(name: str, k: int) -> BiPoly:
    return _atom_power_cached(name, k)


_POW_CACHE: dict = {}


def _atom_power_cached(name, k):
    key = (name, k)
    if key not in _POW_CACHE:
        _POW_CACHE[key] = ATOMS[name] ** k
    return _POW_CACHE[key]


def _try_divide_atom(num: BiPoly, name: str):
    if name == "2":
        if all(v % 2 == 0 for v in num.terms.values()):
            return BiPoly({k: v // 2 for k, v in num.terms.items()}, num.vars)
        return None
    if name == "t":
        if all(j >= 1 for _, j in num.terms):
            return BiPoly({(i, j - 1): v for (i, j), v in num.terms.items()}, num.vars)
        return None
    if name == "s":
        if all(i >= 1 for i, _ in num.terms):
            return BiPoly({(i - 1, j): v for (i, j), v in num.terms.items()}, num.vars)
        return None
    atom = ATOMS[name].coefficients_in(1)[0]
    try:
        return num.divide_by_upoly(atom, 0)
    except InexactDivision:
        return None


class RatFun2:
    """``num / prod(atom ** exps[atom])`` with nonnegative exponents."""

    __slots__ = ("num", "exps")

    def __init__(self, num: BiPoly, exps=None):
        self.num = num
        e = dict.fromkeys(ATOM_ORDER, 0)
        if exps:
            for k, v in exps.items():
                if k not in e:
                    raise ValueError(f"unknown denominator atom {k!r}")
                if v < 0:
                    raise ValueError("denominator exponents must be nonnegative")
                e[k] = v
        self.exps = e

    @classmethod
    def lift(cls, x) -> "RatFun2":
        if isinstance(x, RatFun2):
            return x
        if isinstance(x, BiPoly):
            return cls(x)
        if isinstance(x, int):
            return cls(BiPoly.const(x))
        if isinstance(x, Fraction):
            r = cls(BiPoly.const(x.numerator))
            d = x.denominator
            k = 0
            while d % 2 == 0:
                d //= 2
                k += 1
            if d != 1:
                raise ValueError("only powers of 2 may appear in constant denominators")
            return cls(r.num, {"2": k})
        raise TypeError(type(x).__name__)

    def is_polynomial(self) -> bool:
        return not any(self.exps.values())

    def den(self) -> BiPoly:
        out = BiPoly.const(1)
        for name in ATOM_ORDER:
            if self.exps[name]:
                out = out * _atom_power(name, self.exps[name])
        return out

    def reduced(self) -> "RatFun2":
        num, exps = self.num, dict(self.exps)
        if num.is_zero():
            return RatFun2(num)
        for name in ATOM_ORDER:
            while exps[name] > 0:
                q = _try_divide_atom(num, name)
                if q is None:
                    break
                num = q
                exps[name] -= 1
        return RatFun2(num, exps)

    def __add__(self, other):
        try:
            other = RatFun2.lift(other)
        except TypeError:
            return NotImplemented
        exps = {k: max(self.exps[k], other.exps[k]) for k in ATOM_ORDER}
        a = self.num
        b = other.num
        for k in ATOM_ORDER:
            if exps[k] > self.exps[k]:
                a = a * _atom_power(k, exps[k] - self.exps[k])
            if exps[k] > other.exps[k]:
                b = b * _atom_power(k, exps[k] - other.exps[k])
        return RatFun2(a + b, exps)

    __radd__ = __add__

    def __neg__(self):
        return RatFun2(-self.num, self.exps)

    def __sub__(self, other):
        return self + (-RatFun2.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RatFun2.lift(other)
        except TypeError:
            return NotImplemented
        exps = {k: self.exps[k] + other.exps[k] for k in ATOM_ORDER}
        return RatFun2(self.num * other.num, exps)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = RatFun2.lift(1)
        for _ in range(n):
            result = result * self
        return result

    def divide_by_atoms(self, **powers) -> "RatFun2":
        exps = dict(self.exps)
        for k, v in powers.items():
            key = {"two": "2", "two_s_minus_1": "2s-1"}.get(k, k)
            exps[key] += v
        return RatFun2(self.num, exps)

    def __call__(self, s, t):
        return eval2(self, s, t)

    def __repr__(self):
        den = "*".join(f"{k}^{v}" for k, v in self.exps.items() if v)
        return f"RatFun2({self.num!r} / {den or '1'})"


# -- evaluation ---------------------------------------------------------

def _powers(x, n):
    out = [1]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def _eval_bipoly(f: BiPoly, s, t):
    if not f.terms:
        return 0 if not isinstance(s, Interval) and not isinstance(t, Interval) else Interval(0)
    # Horner in s over coefficient polynomials in t
    cols = f.coefficients_in(0)
    acc = None
    for c in reversed(cols):
        ct = c.eval_interval(t) if isinstance(t, Interval) else c(t)
        acc = ct if acc is None else acc * s + ct
    return acc


def eval2(f, s, t):
    """Exact value at rational (s, t), or a sound enclosure for interval arguments."""
    interval = isinstance(s, Interval) or isinstance(t, Interval)
    if interval:
        s, t = Interval.coerce(s), Interval.coerce(t)
    else:
        s, t = as_fraction(s), as_fraction(t)
    if isinstance(f, BiPoly):
        v = _eval_bipoly(f, s, t)
        return v if interval else Fraction(v)
    if isinstance(f, RatFun2):
        num = _eval_bipoly(f.num, s, t)
        den = _eval_bipoly(f.den(), s, t)
        if interval:
            den = Interval.coerce(den)
            if den.contains_zero():
                raise DenominatorZero("denominator enclosure contains 0")
            return Interval.coerce(num) / den
        if den == 0:
            raise DenominatorZero("denominator vanishes")
        return Fraction(num) / den
    raise TypeError(type(f).__name__)


# -- symbolic polynomials over named symbols ----------------------------

class SymPoly:
    """Polynomial with integer coefficients in named symbols.

    Only used to describe model expressions (``x3``, ``y5``, ``E1``...) and
    substitute ring elements for the symbols.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def symbol(cls, name):
        return cls({((name, 1),): 1})

    @staticmethod
    def _merge(a, b):
        d = dict(a)
        for n, e in b:
            d[n] = d.get(n, 0) + e
        return tuple(sorted(d.items()))

    def _lift(self, other):
        if isinstance(other, SymPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return SymPoly({(): other})
        raise TypeError

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = {}
        for k1, a in self.terms.items():
            for k2, b in other.terms.items():
                k = self._merge(k1, k2)
                out[k] = out.get(k, 0) + a * b
        return SymPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = SymPoly({(): 1})
        for _ in range(n):
            result = result * self
        return result

    def symbols(self) -> set:
        return {n for k in self.terms for n, _ in k}

    def evaluate(self, bindings: dict, one=1):
        missing = self.symbols() - set(bindings)
        if missing:
            raise UnboundSymbol(sorted(missing))
        cache = {}

        def pw(name, e):
            key = (name, e)
            if key not in cache:
                v = bindings[name]
                cache[key] = v ** e if e > 1 else v
            return cache[key]

        acc = None
        for k, c in self.terms.items():
            term = None
            for name, e in k:
                f = pw(name, e)
                term = f if term is None else term * f
            term = c * one if term is None else term * c
            acc = term if acc is None else acc + term
        return 0 * one if acc is None else acc


def ratfun_compose(expr: SymPoly, bindings: dict) -> RatFun2:
    """Substitute rational functions for the symbols of ``expr`` and reduce."""
    lifted = {k: RatFun2.lift(v) for k, v in bindings.items()}
    missing = expr.symbols() - set(lifted)
    if missing:
        raise UnboundSymbol(sorted(missing))
    return expr.evaluate(lifted, one=RatFun2.lift(1)).reduced()


# -- resultants ---------------------------------------------------------

def sylvester_matrix(f_cols, g_cols):
    """Sylvester matrix from coefficient lists (low degree first)."""
    m, n = len(f_cols) - 1, len(g_cols) - 1
    size = m + n
    zero = f_cols[0] * 0
    rows = []
    fr = list(reversed(f_cols))
    gr = list(reversed(g_cols))
    for i in range(n):
        rows.append([zero] * i + fr + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gr + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(mat):
    """Fraction-free determinant; entries may be ints or UniPoly (exact division)."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                v = akk * row_i[j] - aik * row_k[j]
                if prev is not None:
                    v = _exact_div(v, prev)
                row_i[j] = v
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _is_zero(x):
    return x.is_zero() if isinstance(x, UniPoly) else x == 0


def _exact_div(a, b):
    if isinstance(a, UniPoly):
        return exact_divide(a, b)
    q, r = divmod(a, b)
    if r:
        raise InexactDivision("Bareiss step not exact")
    return q


def _check_degenerate(f: BiPoly, g: BiPoly, which: int):
    if f.is_zero() or g.is_zero():
        raise DegenerateInput("zero polynomial")
    if f.degree(which) < 1 or g.degree(which) < 1:
        raise DegenerateInput("degree 0 in the eliminated variable")


def resultant(f: BiPoly, g: BiPoly, eliminate: str = "s", method: str = "interpolate") -> UniPoly:
    """Res(f, g) with respect to ``eliminate``, as a polynomial in the other variable.

    ``method="bareiss"`` runs fraction-free elimination on the Sylvester
    matrix with polynomial entries. ``method="interpolate"`` evaluates the
    surviving variable at integer points where both leading coefficients stay
    nonzero, takes exact univariate resultants and interpolates; it is the
    practical route for large inputs. Both use the Sylvester sign convention.
    """
    which = f.vars.index(eliminate)
    _check_degenerate(f, g, which)
    other = 1 - which
    if method == "bareiss":
        fc = f.coefficients_in(which)
        gc = g.coefficients_in(which)
        return bareiss_det(sylvester_matrix(fc, gc)).with_var(f.vars[other])
    if method != "interpolate":
        raise ValueError(f"unknown method {method!r}")
    m, n = f.degree(which), g.degree(which)
    bound = m * g.degree(other) + n * f.degree(other)
    lf = f.coefficients_in(which)[m]
    lg = g.coefficients_in(which)[n]
    xs, ys = [], []
    k = 0
    while len(xs) < bound + 1:
        x = (k + 1) // 2 if k % 2 else -(k // 2)
        k += 1
        if lf(x) == 0 or lg(x) == 0:
            continue
        fx = f.specialize(other, x)
        gx = g.specialize(other, x)
        xs.append(x)
        ys.append(uni_resultant(fx, gx))
    return interpolate(xs, ys, f.vars[other])


def interpolate(xs, ys, var: str = "t") -> UniPoly:
    """Newton interpolation over the rationals (exact)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form, highest first
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * (len(poly) + 1)
        for d, c in enumerate(poly):
            new[d + 1] += c
            new[d] -= c * xs[i]
        new[0] += coef[i]
        poly = new
    return UniPoly(poly, var)


def resultant_content_split(r: UniPoly):
    """(content, primitive part) with the sign carried by the content."""
    if r.is_zero():
        return 0, r
    c = r.content()
    pp = r.primitive_part()
    if pp.lc < 0:
        pp, c = -pp, -c
    return c, pp
