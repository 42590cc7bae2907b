"""Exact base fields: the rationals and finite fields F_{p^m}.

Scalars are plain Python values so that hot loops stay cheap:

* Q        -> ``fractions.Fraction``
* F_p      -> ``int`` in ``[0, p)``
* F_{p^m}  -> ``tuple`` of ``m`` ints, low-to-high coefficients of an element of
  F_p[a]/(modulus)

Each field object exposes its arithmetic as attributes (``F.add``, ``F.mul`` ...)
so callers can bind them to locals.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigError

MAX_CHAR = 1 << 16
MAX_EXT = 8
DEFAULT_MAX_DEGREE = 4096


def max_degree() -> int:
    """Polynomial degree cap; ``FFLAB_MAX_DEGREE`` overrides the default."""
    raw = os.environ.get("FFLAB_MAX_DEGREE")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"FFLAB_MAX_DEGREE must be an integer, got {raw!r}")
    return DEFAULT_MAX_DEGREE


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p as int lists (low-to-high), used for the modulus --

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(_ptrim(a)) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
    return a


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f, p: int) -> bool:
    """Rabin's irreducibility test for a monic int-list polynomial over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]

    def x_pow_p_k(k):
        return _ppowmod(x, p ** k, f, p)

    full = x_pow_p_k(m)
    if _ptrim([(c - d) % p for c, d in itertools.zip_longest(full, x, fillvalue=0)]):
        return False
    for r in _prime_factors(m):
        h = x_pow_p_k(m // r)
        diff = _ptrim([(c - d) % p for c, d in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_pgcd(diff, f, p)) != 1:
            return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m over F_p.

    Candidates x^m + c_{m-1} x^{m-1} + ... + c_0 are scanned by the base-p integer
    c_{m-1} ... c_0, i.e. lexicographically with the highest coefficient first.
    """
    for idx in range(p ** m):
        coeffs = []
        v = idx
        for _ in range(m):
            coeffs.append(v % p)
            v //= p
        f = coeffs + [1]
        if coeffs[0] == 0 and m > 1:
            continue
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class BaseField:
    """Common surface of the three field kinds."""

    kind: str
    p: int
    m: int
    q: int | None
    modulus: tuple[int, ...] | None

    def __eq__(self, other):
        return (
            isinstance(other, BaseField)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def describe(self) -> dict:
        d = {"p": self.p, "m": self.m}
        if self.modulus is not None and self.m > 1:
            d["modulus"] = list(self.modulus)
        return d


class Rationals(BaseField):
    kind = "rationals"

    def __init__(self):
        self.p = 0
        self.m = 1
        self.q = None
        self.modulus = None
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.add = Fraction.__add__
        self.sub = Fraction.__sub__
        self.mul = Fraction.__mul__
        self.neg = Fraction.__neg__

    def __repr__(self):
        return "QQ"

    def __call__(self, x):
        return Fraction(x)

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def key(self, a):
        return (a.numerator, a.denominator)

    def scan(self):
        """0, 1, -1, 2, -2, ... (unbounded)."""
        yield Fraction(0)
        for i in itertools.count(1):
            yield Fraction(i)
            yield Fraction(-i)

    def elements(self):
        raise ConfigError("the rationals cannot be enumerated")

    def random(self, rng, bound: int = 5):
        return Fraction(rng.randrange(-bound, bound + 1))

    def random_nonzero(self, rng, bound: int = 5):
        while True:
            a = self.random(rng, bound)
            if a:
                return a

    def to_json(self, a):
        return f"{a.numerator}/{a.denominator}"

    def from_json(self, v):
        if isinstance(v, (int, str)):
            return Fraction(v)
        raise ConfigError(f"bad rational scalar {v!r}")

    def fmt(self, a):
        return str(a)


class PrimeField(BaseField):
    kind = "finite"

    def __init__(self, p: int):
        self.p = p
        self.m = 1
        self.q = p
        self.modulus = None
        self.zero = 0
        self.one = 1 % p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.mul = lambda a, b: (a * b) % p
        self.neg = lambda a: (-a) % p

    def __repr__(self):
        return f"GF({self.p})"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def from_index(self, idx: int):
        return idx % self.p

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def power(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def key(self, a):
        return a

    def elements(self):
        return iter(range(self.p))

    scan = elements

    def random(self, rng):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return 1 + rng.randrange(self.p - 1)

    def to_json(self, a):
        return [a]

    def from_json(self, v):
        if isinstance(v, list):
            if len(v) != 1:
                raise ConfigError(f"F_p scalar must have one coefficient, got {v!r}")
            v = v[0]
        if not isinstance(v, int) or isinstance(v, bool):
            raise ConfigError(f"bad F_p scalar {v!r}")
        return v % self.p

    def fmt(self, a):
        return str(a)


class ExtensionField(BaseField):
    kind = "finite"

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(modulus)
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        # x^m = -sum modulus[i] x^i
        self._red = [(-c) % p for c in self.modulus[:m]]

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __call__(self, x):
        if isinstance(x, tuple):
            return x
        if isinstance(x, Fraction):
            return self.div(self(x.numerator), self(x.denominator))
        return (int(x) % self.p,) + (0,) * (self.m - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        red = self._red
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                base = k - m
                for i, r in enumerate(red):
                    prod[base + i] += c * r
        return tuple(c % p for c in prod[:m])

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        # extended Euclid in F_p[a]
        r0, r1 = list(self.modulus), _ptrim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            inv_lead = pow(r1[-1], -1, p)
            qt = [0] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            while len(_ptrim(rem)) >= len(r1):
                c = rem[-1] * inv_lead % p
                sh = len(rem) - len(r1)
                qt[sh] = c
                for i, y in enumerate(r1):
                    rem[sh + i] = (rem[sh + i] - c * y) % p
            qs = _pmul(qt, s1, p)
            news = [(x - y) % p for x, y in itertools.zip_longest(s0, qs, fillvalue=0)]
            r0, r1 = r1, _ptrim(rem)
            s0, s1 = s1, _ptrim(news)
        c = pow(r1[0], -1, p)
        out = [x * c % p for x in s1] + [0] * self.m
        return tuple(out[: self.m])

    def key(self, a):
        # base-p integer with the highest coefficient most significant
        v = 0
        for c in reversed(a):
            v = v * self.p + c
        return v

    def from_index(self, idx: int):
        out = []
        for _ in range(self.m):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def elements(self):
        return (self.from_index(i) for i in range(self.q))

    scan = elements

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.m))

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if any(a):
                return a

    def to_json(self, a):
        return list(a)

    def from_json(self, v):
        if isinstance(v, int) and not isinstance(v, bool):
            return self(v)
        if not isinstance(v, list) or len(v) > self.m or not all(isinstance(c, int) for c in v):
            raise ConfigError(f"bad F_{self.p}^{self.m} scalar {v!r}")
        v = [c % self.p for c in v] + [0] * (self.m - len(v))
        return tuple(v)

    def fmt(self, a):
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "a" if i == 1 else f"a^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        if not terms:
            return "0"
        if len(terms) == 1 and "+" not in terms[0]:
            return terms[0] if not any(a[1:]) else f"({terms[0]})"
        return "(" + "+".join(terms) + ")"


QQ = Rationals()


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> BaseField:
    """Return Q for ``p == 0``, otherwise F_{p^m} with the canonical modulus."""
    if p == 0:
        if m != 1:
            raise ConfigError("extension degree must be 1 over the rationals")
        return QQ
    if not is_prime(p):
        raise ConfigError(f"characteristic {p} is not prime")
    if p > MAX_CHAR:
        raise ConfigError(f"characteristic {p} exceeds the desk-scale cap {MAX_CHAR}")
    if not 1 <= m <= MAX_EXT:
        raise ConfigError(f"extension degree {m} outside 1..{MAX_EXT}")
    if m == 1:
        return PrimeField(p)
    return ExtensionField(p, m, least_irreducible(p, m))


def field_from_json(d) -> BaseField:
    if not isinstance(d, dict) or "p" not in d:
        raise ConfigError(f"bad field description {d!r}")
    p, m = d["p"], d.get("m", 1)
    F = make_field(p, m)
    if "modulus" in d and F.modulus is not None and tuple(d["modulus"]) != F.modulus:
        raise ConfigError("only the canonical (least irreducible) modulus is supported")
    return F
