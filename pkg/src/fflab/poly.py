"""Univariate polynomials and rational functions over a base field."""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ConfigError, PoleError, PreconditionError
from .fields import BaseField, max_degree

_MAX_DEG = max_degree()


def set_max_degree(n: int) -> None:
    global _MAX_DEG
    _MAX_DEG = n


class Poly:
    """Immutable dense polynomial, coefficients low-to-high, no trailing zeros."""

    __slots__ = ("F", "c", "_hash")

    def __init__(self, F: BaseField, coeffs=(), _trusted: bool = False):
        self.F = F
        if not _trusted:
            coeffs = list(coeffs)
            z = F.is_zero
            while coeffs and z(coeffs[-1]):
                coeffs.pop()
            if len(coeffs) - 1 > _MAX_DEG:
                raise ConfigError(f"polynomial degree {len(coeffs) - 1} exceeds cap {_MAX_DEG}")
        self.c = tuple(coeffs)
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, F):
        return cls(F, (), True)

    @classmethod
    def one(cls, F):
        return cls(F, (F.one,), True)

    @classmethod
    def const(cls, F, a):
        return cls(F, (a,))

    @classmethod
    def x(cls, F):
        return cls(F, (F.zero, F.one), True)

    @classmethod
    def monomial(cls, F, k, a=None):
        a = F.one if a is None else a
        return cls(F, (F.zero,) * k + (a,))

    @classmethod
    def from_ints(cls, F, ints):
        return cls(F, [F(i) for i in ints])

    # basic properties
    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else self.F.zero

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == self.F.one

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __repr__(self):
        return f"Poly({self.fmt()})"

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.F.zero

    # arithmetic
    def __add__(self, other):
        F = self.F
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        add = F.add
        out = list(a)
        for i, y in enumerate(b):
            out[i] = add(out[i], y)
        return Poly(F, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.F.neg
        return Poly(self.F, tuple(neg(x) for x in self.c), True)

    def __mul__(self, other):
        F = self.F
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.c, other.c
        if not a or not b:
            return Poly(F, (), True)
        if len(a) + len(b) - 2 > _MAX_DEG:
            raise ConfigError(f"polynomial degree {len(a) + len(b) - 2} exceeds cap {_MAX_DEG}")
        add, mul, z = F.add, F.mul, F.is_zero
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if z(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    def scale(self, s):
        F = self.F
        if F.is_zero(s):
            return Poly(F, (), True)
        mul = F.mul
        return Poly(F, tuple(mul(x, s) for x in self.c), True)

    def shift_up(self, k: int):
        """Multiply by x^k."""
        if not self.c:
            return self
        return Poly(self.F, (self.F.zero,) * k + self.c, True)

    def __pow__(self, e: int):
        result = Poly.one(self.F)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other):
        F = self.F
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        b = other.c
        db = len(b) - 1
        rem = list(self.c)
        if len(rem) - 1 < db:
            return Poly(F, (), True), self
        inv = F.inv(b[-1])
        mul, sub, z = F.mul, F.sub, F.is_zero
        quo = [F.zero] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if z(c):
                continue
            c = mul(c, inv)
            sh = k - db
            quo[sh] = c
            for i in range(db + 1):
                rem[sh + i] = sub(rem[sh + i], mul(c, b[i]))
        return Poly(F, quo), Poly(F, rem[:db])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self.c:
            return self
        lc = self.c[-1]
        if lc == self.F.one:
            return self
        return self.scale(self.F.inv(lc))

    def __call__(self, a):
        F = self.F
        add, mul = F.add, F.mul
        acc = F.zero
        for x in reversed(self.c):
            acc = add(mul(acc, a), x)
        return acc

    def derivative(self):
        F = self.F
        mul = F.mul
        return Poly(F, [mul(F(i), x) for i, x in enumerate(self.c)][1:])

    def compose(self, g):
        """self(g) for a polynomial g."""
        out = Poly.zero(self.F)
        for x in reversed(self.c):
            out = out * g + Poly(self.F, (x,))
        return out

    def taylor_shift(self, a):
        """self(x + a)."""
        return self.compose(Poly(self.F, (a, self.F.one)))

    def key(self):
        k = self.F.key
        return (len(self.c), tuple(k(x) for x in reversed(self.c)))

    def fmt(self, var: str = "x") -> str:
        return fmt_poly(self, var)


def fmt_poly(f: Poly, var: str = "x") -> str:
    if not f.c:
        return "0"
    F = f.F
    terms = []
    for i in range(len(f.c) - 1, -1, -1):
        c = f.c[i]
        if F.is_zero(c):
            continue
        neg = False
        if F.p == 0 and c < 0:
            neg, c = True, -c
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = F.fmt(c)
        if not mono:
            t = cs
        elif c == F.one:
            t = mono
        else:
            t = f"{cs}*{mono}"
        terms.append(("-" if neg else "+", t))
    s = "".join(f"{sg}{t}" for sg, t in terms)
    return s[1:] if s.startswith("+") else s


# -- gcd and friends ---------------------------------------------------------

def _primitive_q(f: Poly) -> Poly:
    """Rescale a nonzero polynomial over Q to a primitive integer polynomial."""
    den = 1
    for c in f.c:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.c]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return Poly(f.F, [Fraction(v // g) for v in ints], True)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    F = a.F
    if F.p == 0:
        if a:
            a = _primitive_q(a)
        if b:
            b = _primitive_q(b)
        while b:
            r = a % b
            a, b = b, (_primitive_q(r) if r else r)
        return a.monic()
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly.zero(a.F)
    if a.is_one():
        return b.monic()
    if b.is_one():
        return a.monic()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def is_squarefree(f: Poly) -> bool:
    if not f:
        raise PreconditionError("is_squarefree of the zero polynomial")
    if f.deg == 0:
        return True
    df = f.derivative()
    if not df:
        return False
    return poly_gcd(f, df).deg == 0


def root_multiplicity(f: Poly, a) -> int:
    if not f:
        raise PreconditionError("multiplicity in the zero polynomial")
    F = f.F
    lin = Poly(F, (F.neg(a), F.one), True)
    k = 0
    while True:
        q, r = f.divmod(lin)
        if r:
            return k
        f, k = q, k + 1


def powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.F) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


_BRUTE_FORCE_ORDER = 1024


def _split_product_of_roots(h: Poly) -> list:
    """Roots of a monic product of distinct linear factors over odd-order F_q."""
    F = h.F
    if h.deg == 0:
        return []
    if h.deg == 1:
        return [F.neg(h.c[0])]
    e = (F.q - 1) // 2
    for delta in F.scan():
        lin = Poly(F, (delta, F.one), True)
        t = powmod(lin, e, h) - Poly.one(F)
        g = poly_gcd(t, h)
        if 0 < g.deg < h.deg:
            return _split_product_of_roots(g) + _split_product_of_roots(h.exact_div(g))
    raise AssertionError("equal-degree splitting failed")  # pragma: no cover


def _distinct_root_part(f: Poly) -> Poly:
    """gcd(x^q - x, f): the product of the distinct linear factors of f over F_q."""
    F = f.F
    xq = powmod(Poly.x(F), F.q, f)
    return poly_gcd(xq - Poly.x(F), f)


def count_distinct_roots(f: Poly) -> int:
    if not f:
        raise PreconditionError("roots of the zero polynomial")
    F = f.F
    if F.p == 0:
        return len(roots(f))
    if f.deg <= 0:
        return 0
    return _distinct_root_part(f.monic()).deg


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def roots(f: Poly) -> list:
    """Distinct roots of f in the base field, sorted by the canonical scalar order."""
    if not f:
        raise PreconditionError("roots of the zero polynomial")
    F = f.F
    if f.deg <= 0:
        return []
    if F.p == 0:
        g = _primitive_q(f)
        ints = [int(c) for c in g.c]
        out = set()
        k = 0
        while ints[k] == 0:
            k += 1
        if k:
            out.add(Fraction(0))
        ints = ints[k:]
        if len(ints) > 1:
            for num in _divisors(ints[0]):
                for den in _divisors(ints[-1]):
                    for cand in (Fraction(num, den), Fraction(-num, den)):
                        if g(cand) == 0:
                            out.add(cand)
        return sorted(out, key=F.key)
    if F.q <= _BRUTE_FORCE_ORDER:
        return [a for a in F.elements() if F.is_zero(f(a))]
    if F.p == 2:  # pragma: no cover - q <= 2^8 is always brute-forced
        raise ConfigError("root finding over large binary fields is unsupported")
    h = _distinct_root_part(f.monic())
    return sorted(_split_product_of_roots(h), key=F.key)


# -- rational functions ------------------------------------------------------

class RatFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, _reduced: bool = False):
        F = num.F
        if den is None:
            den = Poly.one(F)
            _reduced = True
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = Poly.one(F)
            elif not den.is_one():
                g = poly_gcd(num, den)
                if g.deg > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.lc
                if lc != F.one:
                    inv = F.inv(lc)
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def F(self):
        return self.num.F

    @classmethod
    def zero(cls, F):
        return cls(Poly.zero(F))

    @classmethod
    def one(cls, F):
        return cls(Poly.one(F))

    @classmethod
    def const(cls, F, a):
        return cls(Poly(F, (a,)))

    @classmethod
    def x(cls, F):
        return cls(Poly.x(F))

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num.c, self.den.c))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self.fmt()})"

    def fmt(self, var="x"):
        if self.den.is_one():
            return self.num.fmt(var)
        return f"({self.num.fmt(var)})/({self.den.fmt(var)})"

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

    def __add__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, self.den, True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        a = other.den.exact_div(g)
        b = self.den.exact_div(g)
        return RatFunc(self.num * a + other.num * b, self.den * a)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return RatFunc(self.num.scale(other), self.den, True) if not self.F.is_zero(other) \
                else RatFunc.zero(self.F)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, True)
        if not self.num or not other.num:
            return RatFunc.zero(self.F)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n = self.num.exact_div(g1) * other.num.exact_div(g2)
        d = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFunc(n, d, d.lc == self.F.one)

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            return self * self.F.inv(other)
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, True)

    def __call__(self, a):
        F = self.F
        d = self.den(a)
        if F.is_zero(d):
            raise PoleError("evaluation at a pole")
        return F.div(self.num(a), d)

    def ord_at(self, a) -> int:
        """Order of vanishing at x = a (negative for a pole)."""
        if not self.num:
            raise PreconditionError("valuation of zero")
        return root_multiplicity(self.num, a) - root_multiplicity(self.den, a)

    def ord_inf(self) -> int:
        if not self.num:
            raise PreconditionError("valuation of zero")
        return self.den.deg - self.num.deg

    def leading_coefficient_inf(self):
        """Coefficient of the leading term in the expansion at infinity."""
        return self.F.div(self.num.lc, self.den.lc)

    def compose(self, w: "RatFunc") -> "RatFunc":
        """self(w) for a rational function w."""
        F = self.F
        P, Q = w.num, w.den

        def hom(f: Poly, d: int) -> Poly:
            # sum f_i P^i Q^(d-i)
            out = Poly.zero(F)
            Ppow = Poly.one(F)
            Qpows = [Poly.one(F)]
            for _ in range(d):
                Qpows.append(Qpows[-1] * Q)
            for i, c in enumerate(f.c):
                if not F.is_zero(c):
                    out = out + (Ppow * Qpows[d - i]).scale(c)
                Ppow = Ppow * P
            return out

        d = max(self.num.deg, self.den.deg, 0)
        return RatFunc(hom(self.num, d), hom(self.den, d))
