"""Dense univariate polynomials with exact integer or rational coefficients.

Besides ring arithmetic this module carries the real-root machinery used by
the classification: Sturm sequences, root counting on open intervals,
isolation, refinement, exact square roots of polynomials and the degree
halving of reciprocal polynomials through ``u = t + 1/t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd as igcd, comb

import gmpy2

from .interval import Interval, as_fraction


class PolynomialError(ArithmeticError):
    pass


class InexactDivision(PolynomialError):
    pass


class ZeroPolynomial(PolynomialError):
    pass


class NotSquarefree(PolynomialError):
    pass


class NotPerfectSquare(PolynomialError):
    pass


class NotReciprocal(PolynomialError):
    pass


class OddDegree(PolynomialError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class UniPoly:
    """Immutable dense polynomial, coefficients stored low degree first."""

    __slots__ = ("coeffs", "var", "_hash")

    def __init__(self, coeffs=(), var: str = "t"):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def x(cls, var: str = "t") -> "UniPoly":
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "t") -> "UniPoly":
        return cls((c,), var)

    @classmethod
    def from_roots(cls, roots, var: str = "t") -> "UniPoly":
        p = cls((1,), var)
        for r in roots:
            r = as_fraction(r)
            p = p * cls((-r.numerator, r.denominator), var)
        return p

    # -- basic properties -----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        if self.degree > 8:
            return f"UniPoly(<degree {self.degree} in {self.var}>)"
        return f"UniPoly({list(self.coeffs)}, {self.var!r})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*{self.var}")
            else:
                terms.append(f"{c}*{self.var}^{i}")
        return " + ".join(reversed(terms)) or "0"

    # -- ring operations ------------------------------------------------
    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,), self.var)
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly((), self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "UniPoly":
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return UniPoly((0,) * k + self.coeffs, self.var)

    # -- evaluation -----------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(acc, (int, Fraction)):
            return _norm(Fraction(acc))
        return acc

    def sign_at(self, x) -> int:
        """Exact sign at a rational point (integer arithmetic only)."""
        x = as_fraction(x)
        a, b = x.numerator, x.denominator
        if not self.is_integral():
            return _sgn(self(x))
        acc = 0
        bp = 1
        # homogenised Horner: sum c_i a^i b^(n-i)
        for c in reversed(self.coeffs):
            acc = acc * a + c * bp
            bp *= b
        return _sgn(acc)

    def sign_at_infinity(self, positive: bool = True) -> int:
        if not self.coeffs:
            return 0
        s = _sgn(self.lc)
        if not positive and self.degree % 2 == 1:
            s = -s
        return s

    def eval_interval(self, iv: Interval) -> Interval:
        iv = Interval.coerce(iv)
        acc = Interval(0)
        for c in reversed(self.coeffs):
            acc = acc * iv + c
        return acc

    # -- structural -----------------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def content(self):
        """Positive gcd of the coefficients (a Fraction for rational input)."""
        if not self.coeffs:
            return 0
        if self.is_integral():
            return reduce(igcd, self.coeffs, 0)
        fs = [Fraction(c) for c in self.coeffs]
        num = reduce(igcd, (f.numerator for f in fs), 0)
        den = reduce(lambda x, y: x * y // igcd(x, y), (f.denominator for f in fs))
        return Fraction(num, den)

    def primitive_part(self) -> "UniPoly":
        """Divide by the positive content; the sign is kept."""
        if not self.coeffs:
            return self
        c = self.content()
        if c == 1:
            return self
        if isinstance(c, int):
            return UniPoly([x // c for x in self.coeffs], self.var)
        return UniPoly([Fraction(x) / c for x in self.coeffs], self.var)

    def normalized(self) -> "UniPoly":
        """Primitive integer polynomial with positive leading coefficient."""
        p = self.primitive_part()
        return -p if p.coeffs and p.lc < 0 else p

    def reverse(self) -> "UniPoly":
        """var**deg * p(1/var)."""
        return UniPoly(tuple(reversed(self.coeffs)), self.var)

    def compose(self, q: "UniPoly") -> "UniPoly":
        acc = UniPoly((), q.var)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def taylor_shift(self, a) -> "UniPoly":
        """p(var + a)."""
        a = _norm(as_fraction(a))
        return self.compose(UniPoly((a, 1), self.var))

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    # -- division -------------------------------------------------------
    def divmod(self, g: "UniPoly"):
        """Quotient and remainder over the rationals."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        dg = g.degree
        lcg = g.lc
        gc = g.coeffs
        if len(r) - 1 < dg:
            return UniPoly((), self.var), self
        q = [0] * (len(r) - dg)
        integral = self.is_integral() and g.is_integral()
        for k in range(len(r) - 1 - dg, -1, -1):
            top = r[k + dg]
            if top == 0:
                continue
            if integral and top % lcg == 0:
                c = top // lcg
            else:
                integral = False
                c = Fraction(top) / lcg
            q[k] = c
            for i in range(dg + 1):
                r[k + i] -= c * gc[i]
        return UniPoly(q, self.var), UniPoly(r[:dg], self.var)

    def __floordiv__(self, g):
        return self.divmod(self._lift(g))[0]

    def __mod__(self, g):
        return self.divmod(self._lift(g))[1]

    def pseudo_rem(self, g: "UniPoly") -> "UniPoly":
        """lc(g)**(deg f - deg g + 1) * f mod g, computed over the integers."""
        r = list(self.coeffs)
        dg = g.degree
        gc = g.coeffs
        lcg = g.lc
        if len(r) - 1 < dg:
            return self
        for k in range(len(r) - 1 - dg, -1, -1):
            top = r[k + dg]
            r = [x * lcg for x in r]
            if top:
                for i in range(dg + 1):
                    r[k + i] -= top * gc[i]
        return UniPoly(r[:dg], self.var)

    # -- serialisation --------------------------------------------------
    def to_text(self) -> str:
        return "".join(f"{c}\n" for c in self.coeffs)

    @classmethod
    def from_text(cls, text: str, var: str = "t") -> "UniPoly":
        cs = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cs.append(_norm(Fraction(line)))
        return cls(cs, var)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def exact_divide(f: UniPoly, g: UniPoly) -> UniPoly:
    q, r = f.divmod(g)
    if not r.is_zero():
        raise InexactDivision(f"degree-{g.degree} divisor leaves a nonzero remainder")
    return q


def integral_primitive(p: UniPoly) -> UniPoly:
    """Clear denominators and remove content, keeping the sign."""
    if p.is_integral():
        return p.primitive_part()
    den = reduce(lambda x, y: x * y // igcd(x, y), (Fraction(c).denominator for c in p.coeffs), 1)
    return UniPoly([int(Fraction(c) * den) for c in p.coeffs], p.var).primitive_part()


# -- gcd ----------------------------------------------------------------

def _prime_stream(start: int = 2**61):
    p = gmpy2.mpz(start)
    while True:
        p = gmpy2.next_prime(p)
        yield int(p)


def _mod_poly(cs, p):
    out = [c % p for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _gcd_mod(a, b, p):
    # monic gcd of coefficient lists over GF(p)
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        r = list(a)
        while len(r) - 1 >= db and r:
            c = r[-1] * inv % p
            off = len(r) - 1 - db
            for i in range(db + 1):
                r[off + i] = (r[off + i] - c * b[i]) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Greatest common divisor, normalised (primitive, positive leading coefficient).

    Integer inputs use a modular algorithm with CRT lifting and a final exact
    divisibility check, so the answer is exact.
    """
    var = f.var
    if f.is_zero():
        return g.normalized() if not g.is_zero() else g
    if g.is_zero():
        return f.normalized()
    f, g = integral_primitive(f), integral_primitive(g)
    if f.degree == 0 or g.degree == 0:
        return UniPoly((1,), var)
    lcg = igcd(f.lc, g.lc)
    best_deg = min(f.degree, g.degree) + 1
    acc, modulus = None, 1
    for p in _prime_stream():
        if f.lc % p == 0 or g.lc % p == 0:
            continue
        h = _gcd_mod(_mod_poly(f.coeffs, p), _mod_poly(g.coeffs, p), p)
        d = len(h) - 1
        if d == 0:
            return UniPoly((1,), var)
        if d > best_deg:
            continue
        h = [c * lcg % p for c in h]
        if d < best_deg:
            best_deg, modulus = d, p
            acc = [c - p if c > p // 2 else c for c in h]
            changed = True
        else:
            new = []
            inv = pow(modulus, -1, p)
            nm = modulus * p
            for a_c, h_c in zip(acc, h):
                # CRT with symmetric residues: x = a_c mod modulus, x = h_c mod p
                c = a_c + modulus * ((h_c - a_c) * inv % p)
                new.append(c - nm if c > nm // 2 else c)
            changed = new != acc
            acc, modulus = new, nm
        if changed:
            continue
        cand = UniPoly(acc, var).normalized()
        if cand.degree == best_deg:
            _, r1 = f.divmod(cand)
            if r1.is_zero():
                _, r2 = g.divmod(cand)
                if r2.is_zero():
                    return cand
    raise AssertionError("unreachable")


def squarefree_part(p: UniPoly) -> UniPoly:
    p = integral_primitive(p)
    g = gcd(p, p.derivative())
    if g.degree == 0:
        return p
    return exact_divide(p, g).primitive_part()


def is_squarefree(p: UniPoly) -> bool:
    return gcd(p, p.derivative()).degree == 0


# -- Sturm sequences -----------------------------------------------------

@lru_cache(maxsize=128)
def sturm_sequence(p: UniPoly) -> tuple:
    """Sturm chain of the squarefree part, fraction-free and primitive at each step."""
    if p.is_zero():
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    p0 = squarefree_part(p)
    seq = [p0]
    if p0.degree == 0:
        return tuple(seq)
    seq.append(p0.derivative().primitive_part())
    while True:
        a, b = seq[-2], seq[-1]
        r = a.pseudo_rem(b)
        if r.is_zero():
            break
        # pseudo-remainder is lc(b)^(delta+1) * rem; keep the true sign of -rem
        delta = a.degree - b.degree
        if b.lc < 0 and (delta + 1) % 2 == 1:
            r = -r
        seq.append((-r).primitive_part())
        if seq[-1].degree == 0:
            break
    return tuple(seq)


def _variations(signs) -> int:
    v, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def sign_variations(seq, x) -> int:
    if x is None or x == float("inf"):
        return _variations(q.sign_at_infinity(True) for q in seq)
    if x == float("-inf"):
        return _variations(q.sign_at_infinity(False) for q in seq)
    return _variations(q.sign_at(x) for q in seq)


def nonzero_root_gap(p: UniPoly, a) -> Fraction:
    """Positive lower bound on |r - a| over roots r != a of p."""
    q = integral_primitive(p).taylor_shift(a)
    cs = [Fraction(c) for c in q.coeffs]
    k = next(i for i, c in enumerate(cs) if c != 0)
    low = abs(cs[k])
    top = max((abs(c) for c in cs[k + 1:]), default=Fraction(0))
    if top == 0:
        return Fraction(1)
    return low / (low + top) / 2


def _shift_off_root(p, x, direction):
    if x is None or isinstance(x, float):
        return x
    x = as_fraction(x)
    if p.sign_at(x) != 0:
        return x
    return x + direction * nonzero_root_gap(p, x)


def _infinite(x):
    return x is None or (isinstance(x, float) and x in (float("inf"), float("-inf")))


def sturm_count(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``.

    ``None`` (or a float infinity) stands for an unbounded end. An endpoint
    that is itself a root is moved inward past it before counting.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    seq = sturm_sequence(p)
    p0 = seq[0]
    a = float("-inf") if _infinite(lo) else _shift_off_root(p0, lo, +1)
    b = float("inf") if _infinite(hi) else _shift_off_root(p0, hi, -1)
    if not _infinite(lo) and not _infinite(hi) and a >= b:
        return 0
    return sign_variations(seq, a) - sign_variations(seq, b)


def count_real_roots(p: UniPoly) -> int:
    return sturm_count(p, None, None)


def cauchy_bound(p: UniPoly) -> Fraction:
    lc = abs(Fraction(p.lc))
    return 1 + max((abs(Fraction(c)) / lc for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root of ``poly`` known to be the only one in ``interval``.

    The interval endpoints are not roots unless the interval is a single
    point, in which case that point is the root.
    """
    poly: UniPoly = field(repr=False, compare=False)
    interval: Interval
    index: int = 0
    name: str = ""

    def with_interval(self, iv: Interval) -> "IsolatedRoot":
        return IsolatedRoot(self.poly, iv, self.index, self.name)

    @property
    def approx(self) -> float:
        return float(self.interval.mid)


def _choose_split(p0, a, b):
    for num, den in ((1, 2), (3, 7), (4, 7), (2, 5), (3, 5)):
        m = a + (b - a) * Fraction(num, den)
        if p0.sign_at(m) != 0:
            return m
    # exotic: several rational roots at those points; fall back to a gap shift
    m = (a + b) / 2
    return m + nonzero_root_gap(p0, m) * Fraction(1, 2)


def isolate_roots(p: UniPoly, lo=None, hi=None, name: str = "") -> list[IsolatedRoot]:
    """Disjoint isolating intervals (sorted) for the real roots in ``(lo, hi)``."""
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if not is_squarefree(p):
        raise NotSquarefree("isolate_roots needs a squarefree polynomial")
    seq = sturm_sequence(p)
    p0 = seq[0]
    bound = cauchy_bound(p0) + 1
    a = -bound if _infinite(lo) else _shift_off_root(p0, lo, +1)
    b = bound if _infinite(hi) else _shift_off_root(p0, hi, -1)
    if not _infinite(lo):
        a = max(a, -bound)
    if not _infinite(hi):
        b = min(b, bound)
    if a >= b:
        return []
    var_cache = {}

    def V(x):
        if x not in var_cache:
            var_cache[x] = sign_variations(seq, x)
        return var_cache[x]

    found = []
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        k = V(x) - V(y)
        if k == 0:
            continue
        if k == 1:
            found.append(Interval(x, y))
            continue
        m = _choose_split(p0, x, y)
        stack.append((m, y))
        stack.append((x, m))
    found.sort(key=lambda iv: iv.lo)
    return [IsolatedRoot(p, iv, i, name) for i, iv in enumerate(found)]


def refine_root(r: IsolatedRoot, width) -> IsolatedRoot:
    """Bisect with exact sign evaluation until the interval is at most ``width`` wide."""
    width = as_fraction(width)
    iv = r.interval
    if iv.width <= width:
        return r
    p = r.poly
    a, b = iv.lo, iv.hi
    sa = p.sign_at(a)
    if sa == 0 or p.sign_at(b) == 0 or sa == p.sign_at(b):
        # no usable sign change (even multiplicity or non-squarefree input): fall back to Sturm
        return _refine_by_count(r, width)
    while b - a > width:
        m = (a + b) / 2
        sm = p.sign_at(m)
        if sm == 0:
            return r.with_interval(Interval(m))
        if sm == sa:
            a = m
        else:
            b = m
    return r.with_interval(Interval(a, b))


def _refine_by_count(r: IsolatedRoot, width) -> IsolatedRoot:
    p = r.poly
    a, b = r.interval.lo, r.interval.hi
    while b - a > width:
        m = (a + b) / 2
        if p.sign_at(m) == 0:
            return r.with_interval(Interval(m))
        if sturm_count(p, a, m) == 1:
            b = m
        else:
            a = m
    return r.with_interval(Interval(a, b))


def decimal_bracket(r: IsolatedRoot, digits: int) -> IsolatedRoot:
    """Tighten to ``[k/10^digits, (k+1)/10^digits]`` around the root."""
    unit = Fraction(1, 10**digits)
    p = r.poly
    cur = refine_root(r, unit / 4)
    while True:
        iv = cur.interval
        if iv.is_point():
            return cur
        k = (iv.lo / unit).__floor__()
        lo, hi = k * unit, (k + 1) * unit
        if hi >= iv.hi:
            if p.sign_at(lo) != 0 and p.sign_at(hi) != 0 and p.sign_at(lo) != p.sign_at(hi):
                return cur.with_interval(Interval(lo, hi))
            if p.sign_at(hi) == 0:
                return cur.with_interval(Interval(hi))
            if p.sign_at(lo) == 0:
                return cur.with_interval(Interval(lo))
        # interval straddles a grid point: refine further
        cur = refine_root(cur, iv.width / 8)


# -- square roots and reciprocal polynomials -----------------------------

def poly_square_root(p: UniPoly) -> UniPoly:
    """q with q*q == p exactly and positive leading coefficient."""
    if p.is_zero():
        return p
    n = p.degree
    if n % 2:
        raise NotPerfectSquare("odd degree")
    m = n // 2
    lc = Fraction(p.lc)
    if lc < 0:
        raise NotPerfectSquare("negative leading coefficient")
    a, b = gmpy2.isqrt(lc.numerator), gmpy2.isqrt(lc.denominator)
    if a * a != lc.numerator or b * b != lc.denominator:
        raise NotPerfectSquare("leading coefficient is not a square")
    q = [Fraction(0)] * (m + 1)
    q[m] = Fraction(int(a), int(b))
    pc = [Fraction(c) for c in p.coeffs]
    two_lead = 2 * q[m]
    for k in range(m - 1, -1, -1):
        # coefficient of var^(m+k) in q^2
        s = sum(q[i] * q[m + k - i] for i in range(k + 1, m))
        q[k] = (pc[m + k] - s) / two_lead
    root = UniPoly(q, p.var)
    if root * root != p:
        raise NotPerfectSquare("square check failed")
    return root


def is_reciprocal(p: UniPoly) -> bool:
    return not p.is_zero() and p.coeffs == tuple(reversed(p.coeffs))


def reciprocal_reduce(p: UniPoly, var: str = "u") -> UniPoly:
    """R with p(t) = t^m R(t + 1/t) for a reciprocal p of degree 2m."""
    if p.degree % 2:
        raise OddDegree(f"degree {p.degree}")
    if not is_reciprocal(p):
        raise NotReciprocal("coefficients are not palindromic")
    m = p.degree // 2
    # t^k + t^-k = D_k(u), D_0 = 2, D_1 = u, D_k = u D_{k-1} - D_{k-2}
    u = UniPoly.x(var)
    d_prev, d_cur = UniPoly((2,), var), u
    acc = UniPoly((p.coeffs[m],), var)
    for k in range(1, m + 1):
        if k > 1:
            d_prev, d_cur = d_cur, u * d_cur - d_prev
        acc = acc + d_cur * p.coeffs[m + k]
    return acc


def reciprocal_expand(R: UniPoly, var: str = "t") -> UniPoly:
    """t^m R(t + 1/t) for R of degree m; inverse of :func:`reciprocal_reduce`."""
    m = R.degree
    out = [0] * (2 * m + 1)
    for j, r in enumerate(R.coeffs):
        if r == 0:
            continue
        for i in range(j + 1):
            out[m + j - 2 * i] += r * comb(j, i)
    return UniPoly(out, var)


# -- univariate resultant -----------------------------------------------

def resultant(f: UniPoly, g: UniPoly):
    """Res(f, g) = lc(f)^deg g * prod g(a) over roots a of f (Sylvester convention)."""
    if f.is_zero() or g.is_zero():
        return 0
    result = Fraction(1)
    a, b = f, g
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            result *= Fraction(b.lc) ** da
            break
        if da == 0:
            result *= Fraction(a.lc) ** db
            break
        if da < db:
            if (da * db) % 2:
                result = -result
            a, b = b, a
            continue
        _, r = a.divmod(b)
        if r.is_zero():
            return 0
        dr = r.degree
        if (da * db) % 2:
            result = -result
        result *= Fraction(b.lc) ** (da - dr)
        a, b = b, r
    return _norm(result)
