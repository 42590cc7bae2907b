"""Curve models F = K(t)[y]/(mu(y)), their elements, places and valuations.

Three presentations are supported:

``rational``
    F = K(x), n = 1.
``hyperelliptic``
    y^2 = f(x) with deg f odd >= 3, f squarefree, characteristic != 2.
``cover``
    the rational field K(x) presented as a degree-n extension of K(w) for a
    nonconstant w in K(x); t = w and y = x.  Used whenever a computation must be
    carried out over K(w) for a pivot w that is not the model coordinate.
    Place-level questions are answered through the underlying rational model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (ConfigError, ExhaustedSearch, PoleError, PreconditionError,
                     UnsupportedError, VerificationFailure)
from .fields import BaseField
from .poly import (Poly, RatFunc, count_distinct_roots, is_squarefree, poly_lcm,
                   root_multiplicity, roots)

_Q_SCAN_LIMIT = 2001


@dataclass(frozen=True)
class Place:
    """A supported degree-1 place.

    kind is one of ``inf0`` (infinity of K(x)), ``finite0`` (zero of x - a),
    ``inf_hyp`` (the place above infinity of an odd-degree hyperelliptic model)
    or ``point`` (the unramified point (a, b) of a hyperelliptic or cover model).
    """

    kind: str
    a: object = None
    b: object = None

    def sort_key(self, F: BaseField):
        order = {"inf_hyp": 0, "inf0": 0, "finite0": 1, "point": 1}[self.kind]
        ka = F.key(self.a) if self.a is not None else ()
        kb = F.key(self.b) if self.b is not None else ()
        return (order, ka, kb)

    def label(self, F: BaseField) -> str:
        if self.kind == "inf_hyp":
            return "Pinf"
        if self.kind == "inf0":
            return "inf"
        if self.kind == "finite0":
            return f"(x-{F.fmt(self.a)})"
        return f"({F.fmt(self.a)},{F.fmt(self.b)})"


INF0 = Place("inf0")
INF_HYP = Place("inf_hyp")


class CurveModel:
    def __init__(self, kind, F, n, genus, f=None, pivot=None):
        self.kind = kind
        self.F = F
        self.n = n
        self.genus = genus
        self.f = f
        self.pivot = pivot
        self.base = None
        self.mu = None
        if kind == "hyperelliptic":
            self.v_inf_y = -(2 * genus + 1)
        elif kind == "cover":
            self.base = rational_model(F)
            P, Q = pivot.num, pivot.den
            coeffs = []
            for i in range(n + 1):
                coeffs.append(Poly(F, (P.coeff(i), F.neg(Q.coeff(i)))))
            lead = RatFunc(coeffs[n])
            self.mu = [RatFunc(c) / lead for c in coeffs[:n]]
            self._mu_polys = coeffs

    # identity
    def _ident(self):
        extra = None
        if self.f is not None:
            extra = self.f.c
        if self.pivot is not None:
            extra = (self.pivot.num.c, self.pivot.den.c)
        return (self.kind, self.F, extra)

    def __eq__(self, other):
        return isinstance(other, CurveModel) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "rational":
            return f"CurveModel(rational over {self.F!r})"
        if self.kind == "hyperelliptic":
            return f"CurveModel(y^2 = {self.f.fmt()} over {self.F!r})"
        return f"CurveModel(K(x) over K({self.pivot.fmt()}) over {self.F!r})"

    @property
    def q_inf(self) -> Place:
        """The canonical place Q_inf used for filtered bases."""
        return INF_HYP if self.kind == "hyperelliptic" else INF0

    # element constructors
    def elem(self, coords) -> "FFElem":
        coords = list(coords)
        if len(coords) != self.n:
            raise PreconditionError(f"expected {self.n} coordinates, got {len(coords)}")
        return FFElem(self, tuple(coords))

    def zero(self):
        z = RatFunc.zero(self.F)
        return FFElem(self, (z,) * self.n)

    def one(self):
        return self.const(self.F.one)

    def const(self, a):
        z = RatFunc.zero(self.F)
        return FFElem(self, (RatFunc.const(self.F, a),) + (z,) * (self.n - 1))

    def from_ratfunc(self, r: RatFunc, j: int = 0):
        """r(t) * y^j."""
        z = RatFunc.zero(self.F)
        coords = [z] * self.n
        coords[j] = r
        return FFElem(self, tuple(coords))

    def t(self):
        return self.from_ratfunc(RatFunc.x(self.F))

    def y(self):
        if self.n == 1:
            raise PreconditionError("the rational model has no y")
        return self.from_ratfunc(RatFunc.one(self.F), 1)

    def monomial(self, i: int, j: int = 0, c=None):
        c = self.F.one if c is None else c
        return self.from_ratfunc(RatFunc(Poly.monomial(self.F, i, c)), j)

    # arithmetic
    def mul(self, u, v):
        n = self.n
        a, b = u.coords, v.coords
        if n == 1:
            return FFElem(self, (a[0] * b[0],))
        if self.kind == "hyperelliptic":
            f = RatFunc(self.f)
            c0 = a[0] * b[0]
            if a[1] and b[1]:
                c0 = c0 + a[1] * b[1] * f
            c1 = a[0] * b[1] + a[1] * b[0]
            return FFElem(self, (c0, c1))
        zero = RatFunc.zero(self.F)
        prod = [zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = prod[i + j] + x * y
        return FFElem(self, tuple(self._reduce(prod)))

    def _reduce(self, prod):
        n = self.n
        mu = self.mu
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if not c:
                continue
            base = k - n
            for i, m in enumerate(mu):
                if m:
                    prod[base + i] = prod[base + i] - c * m
        return prod[:n]

    def from_y_poly(self, coeffs) -> "FFElem":
        """sum_i coeffs[i] * y^i with coefficients in K(t) (reduced mod mu)."""
        coeffs = list(coeffs)
        zero = RatFunc.zero(self.F)
        if len(coeffs) < self.n:
            coeffs += [zero] * (self.n - len(coeffs))
        if len(coeffs) == self.n:
            return FFElem(self, tuple(coeffs))
        if self.kind == "hyperelliptic":
            acc = self.zero()
            y = self.y()
            for c in reversed(coeffs):
                acc = acc * y + self.from_ratfunc(c)
            return acc
        return FFElem(self, tuple(self._reduce(coeffs)))

    def inv(self, u):
        if u.is_zero():
            raise ZeroDivisionError("inverse of zero in the function field")
        a = u.coords
        if self.n == 1:
            return FFElem(self, (a[0].inv(),))
        if self.kind == "hyperelliptic":
            f = RatFunc(self.f)
            norm = a[0] * a[0] - a[1] * a[1] * f
            ninv = norm.inv()
            return FFElem(self, (a[0] * ninv, -(a[1] * ninv)))
        from .linalg import solve_Kx

        cols = []
        yj = self.one()
        y = self.y()
        for _ in range(self.n):
            cols.append((u * yj).coords)
            yj = yj * y
        A = [[cols[j][i] for j in range(self.n)] for i in range(self.n)]
        e0 = [RatFunc.one(self.F)] + [RatFunc.zero(self.F)] * (self.n - 1)
        sol = solve_Kx(A, e0, self.F)
        return FFElem(self, tuple(sol.particular))

    # cover <-> base
    def from_base(self, u: "FFElem") -> "FFElem":
        if self.kind != "cover":
            return u
        if u.model.kind != "rational" or u.model.F != self.F:
            raise PreconditionError("from_base expects an element of the rational model")
        r = u.coords[0]
        F = self.F
        num = self.from_y_poly([RatFunc.const(F, c) for c in r.num.c])
        if r.den.is_one():
            return num
        den = self.from_y_poly([RatFunc.const(F, c) for c in r.den.c])
        return num * den.inv()

    def to_base(self, u: "FFElem") -> "FFElem":
        if self.kind != "cover":
            return u
        acc = RatFunc.zero(self.F)
        xj = RatFunc.one(self.F)
        x = RatFunc.x(self.F)
        for c in u.coords:
            if c:
                acc = acc + c.compose(self.pivot) * xj
            xj = xj * x
        return self.base.from_ratfunc(acc)

    # places
    def valuation(self, u, P: Place) -> int:
        return valuation(u, P)


def rational_model(F: BaseField) -> CurveModel:
    return CurveModel("rational", F, 1, 0)


def hyperelliptic_model(F: BaseField, f: Poly) -> CurveModel:
    if F.p == 2:
        raise ConfigError("hyperelliptic models need characteristic != 2")
    if f.deg < 3 or f.deg % 2 == 0:
        raise ConfigError("hyperelliptic models need deg f odd and >= 3")
    if not is_squarefree(f):
        raise ConfigError("f must be squarefree")
    return CurveModel("hyperelliptic", F, 2, (f.deg - 1) // 2, f=f)


def cover_model(F: BaseField, w: RatFunc) -> CurveModel:
    """K(x) viewed as an extension of K(w)."""
    n = max(w.num.deg, w.den.deg)
    if n < 1:
        raise PreconditionError("cover pivot must be nonconstant")
    return CurveModel("cover", F, n, 0, pivot=w)


def default_hyperelliptic_f(F: BaseField, genus: int) -> Poly:
    """x^(2g+1) + x + c for the least c >= 1 (scan order) giving a squarefree f."""
    for c in F.scan():
        if F.is_zero(c):
            continue
        f = Poly(F, [c, F.one] + [F.zero] * (2 * genus - 1) + [F.one])
        if is_squarefree(f):
            return f
    raise ExhaustedSearch("no squarefree x^(2g+1)+x+c found")  # pragma: no cover


class FFElem:
    """sum_j coords[j] * y^j with coords in K(t)."""

    __slots__ = ("model", "coords", "_hash")

    def __init__(self, model: CurveModel, coords: tuple):
        self.model = model
        self.coords = coords
        self._hash = None

    def _check(self, other):
        if other.model is not self.model and other.model != self.model:
            raise PreconditionError("elements belong to different models")

    def __add__(self, other):
        self._check(other)
        return FFElem(self.model, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return FFElem(self.model, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FFElem(self.model, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, FFElem):
            self._check(other)
            return self.model.mul(self, other)
        return self.scale(other)

    def scale(self, c):
        return FFElem(self.model, tuple(a * c for a in self.coords))

    def inv(self):
        return self.model.inv(self)

    def __truediv__(self, other):
        if isinstance(other, FFElem):
            return self * other.inv()
        return self.scale(self.model.F.inv(other))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.model.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.model == other.model and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def is_polynomial(self):
        return all(c.is_poly() for c in self.coords)

    def fmt(self) -> str:
        m = self.model
        if m.kind == "cover":
            return m.to_base(self).fmt()
        parts = []
        for j, c in enumerate(self.coords):
            if not c:
                continue
            s = c.fmt("x")
            if j == 0:
                parts.append(s)
                continue
            mono = "y" if j == 1 else f"y^{j}"
            if s == "1":
                parts.append(mono)
            elif c.is_poly() and len([v for v in c.num.c if not m.F.is_zero(v)]) == 1 \
                    and not s.startswith("-"):
                parts.append(f"{s}*{mono}")
            else:
                parts.append(f"({s})*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"FFElem({self.fmt()})"


# -- valuations ---------------------------------------------------------------

def _series_mul(a, b, prec, F):
    add, mul = F.add, F.mul
    out = [F.zero] * prec
    for i, x in enumerate(a[:prec]):
        if F.is_zero(x):
            continue
        for j in range(min(len(b), prec - i)):
            out[i + j] = add(out[i + j], mul(x, b[j]))
    return out


def _hyp_branch_series(model, a, b, prec):
    """Power series y(s) at the unramified point (a, b), s = x - a."""
    F = model.F
    fs = list(model.f.taylor_shift(a).c) + [F.zero] * prec
    inv2b = F.inv(F.add(b, b))
    ys = [b]
    for i in range(1, prec):
        acc = fs[i]
        for j in range(1, i):
            acc = F.sub(acc, F.mul(ys[j], ys[i - j]))
        ys.append(F.mul(acc, inv2b))
    return ys


def _check_point(model, P):
    F = model.F
    if model.kind != "hyperelliptic":
        raise UnsupportedError("point places need a hyperelliptic model here")
    fa = model.f(P.a)
    if F.is_zero(fa):
        raise UnsupportedError("ramified point (f(a) = 0) is not supported")
    if F.mul(P.b, P.b) != fa:
        raise PreconditionError("point does not lie on the curve")


def valuation(u: FFElem, P: Place) -> int:
    """Discrete valuation v_P(u) at a supported place."""
    if u.is_zero():
        raise PreconditionError("valuation of zero is +infinity")
    model = u.model
    F = model.F
    if model.kind == "cover":
        base = model.to_base(u)
        if P.kind == "point":
            P = Place("finite0", P.b)
        return valuation(base, P)
    if model.kind == "rational":
        r = u.coords[0]
        if P.kind == "inf0":
            return r.ord_inf()
        if P.kind == "finite0":
            return r.ord_at(P.a)
        raise UnsupportedError(f"place {P.kind} on the rational model")
    # hyperelliptic
    if P.kind == "inf_hyp":
        return min(2 * c.ord_inf() + j * model.v_inf_y for j, c in enumerate(u.coords) if c)
    if P.kind != "point":
        raise UnsupportedError(f"place {P.kind} on a hyperelliptic model")
    _check_point(model, P)
    c0, c1 = u.coords
    Q = poly_lcm(c0.den, c1.den)
    P0 = c0.num * Q.exact_div(c0.den) if c0 else Poly.zero(F)
    P1 = c1.num * Q.exact_div(c1.den) if c1 else Poly.zero(F)
    prec = max(2 * max(P0.deg, 0), 2 * max(P1.deg, 0) + 2 * model.genus + 1) + 2
    s0 = list(P0.taylor_shift(P.a).c) + [F.zero] * prec
    s1 = list(P1.taylor_shift(P.a).c) + [F.zero] * prec
    ys = _hyp_branch_series(model, P.a, P.b, prec)
    total = _series_mul(s1, ys, prec, F)
    for i in range(prec):
        if not F.is_zero(F.add(s0[i], total[i])):
            return i - root_multiplicity(Q, P.a)
    raise VerificationFailure("series precision bound exceeded")  # pragma: no cover


def leading_term_inf(u: FFElem):
    """(v_{Q_inf}(u), leading coefficient) in the expansion at the canonical Q_inf.

    Two elements with equal valuation at Q_inf have proportional leading terms, so
    the ratio of leading coefficients cancels the leading term.
    """
    if u.is_zero():
        raise PreconditionError("leading term of zero")
    model = u.model
    if model.kind == "cover":
        return leading_term_inf(model.to_base(u))
    if model.kind == "rational":
        r = u.coords[0]
        return r.ord_inf(), r.leading_coefficient_inf()
    best = None
    for j, c in enumerate(u.coords):
        if c:
            v = 2 * c.ord_inf() + j * model.v_inf_y
            if best is None or v < best[0]:
                best = (v, c.leading_coefficient_inf())
    return best


def pole_divisor_entries(u: FFElem) -> dict:
    """{Place: pole order} over all poles of u (rational or polynomial hyperelliptic)."""
    model = u.model
    if model.kind == "cover":
        return pole_divisor_entries(model.to_base(u))
    out = {}
    if model.kind == "rational":
        r = u.coords[0]
        if r.ord_inf() < 0:
            out[INF0] = -r.ord_inf()
        if r.den.deg > 0:
            rts = roots(r.den)
            if sum(root_multiplicity(r.den, a) for a in rts) != r.den.deg:
                raise UnsupportedError("pole at a place of degree > 1")
            for a in rts:
                out[Place("finite0", a)] = root_multiplicity(r.den, a)
        return out
    if not u.is_polynomial():
        raise UnsupportedError("hyperelliptic element with finite poles")
    v = valuation(u, INF_HYP)
    if v < 0:
        out[INF_HYP] = -v
    return out


# -- evaluation and fibres ----------------------------------------------------

def evaluate(u: FFElem, P: Place):
    """u(P) for a degree-1 place where u is regular."""
    model = u.model
    F = model.F
    if model.kind == "rational":
        if P.kind != "finite0":
            raise UnsupportedError("evaluation on the rational model needs a finite place")
        return u.coords[0](P.a)
    if P.kind != "point":
        raise UnsupportedError("evaluation needs a point place")
    if model.kind == "hyperelliptic":
        _check_point(model, P)
    try:
        acc = F.zero
        bj = F.one
        for c in u.coords:
            if c:
                acc = F.add(acc, F.mul(c(P.a), bj))
            bj = F.mul(bj, P.b)
        return acc
    except PoleError:
        if model.kind == "cover":
            return model.to_base(u).coords[0](P.b)
        raise


@dataclass
class Fibre:
    a: object
    points: list
    ramified: bool
    fully_split: bool

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _cover_fibre_poly(model, a):
    F = model.F
    return Poly(F, [F.add(c.coeff(0), F.mul(c.coeff(1), a))
                    for c in model._mu_polys])


def split_points(model: CurveModel, a) -> Fibre:
    """All degree-1 points over x = a (t = a for cover models), canonically sorted."""
    F = model.F
    if model.kind == "rational":
        return Fibre(a, [Place("finite0", a)], False, True)
    if model.kind == "hyperelliptic":
        fa = model.f(a)
        if F.is_zero(fa):
            return Fibre(a, [Place("point", a, F.zero)], True, False)
        rts = roots(Poly(F, (F.neg(fa), F.zero, F.one)))
        pts = [Place("point", a, b) for b in rts]
        return Fibre(a, pts, False, len(pts) == 2)
    g = _cover_fibre_poly(model, a)
    den = model.pivot.den
    if g.deg < model.n:
        ram = True
    else:
        ram = not is_squarefree(g)
    rts = [b for b in roots(g) if not F.is_zero(den(b))] if g else []
    pts = [Place("point", a, b) for b in rts]
    return Fibre(a, pts, ram, (not ram) and len(pts) == model.n)


def _fully_split_fast(model, a) -> bool:
    F = model.F
    if model.kind == "rational":
        return True
    if model.kind == "hyperelliptic":
        fa = model.f(a)
        if F.is_zero(fa):
            return False
        if F.is_finite:
            return F.power(fa, (F.q - 1) // 2) == F.one
        return len(split_points(model, a)) == 2
    g = _cover_fibre_poly(model, a)
    if g.deg < model.n or not is_squarefree(g):
        return False
    if F.is_finite and count_distinct_roots(g) != model.n:
        return False
    return split_points(model, a).fully_split


def find_split_locus(model: CurveModel, avoid=(), nonvanishing=(), start=None):
    """Least a (scan order) outside ``avoid`` with a fully split unramified fibre.

    ``nonvanishing`` lists polynomials in the model coordinate that must not vanish
    at a (denominators registered by the caller).
    """
    F = model.F
    avoid = set(avoid)
    candidates = F.scan()
    if F.p == 0:
        candidates = (c for i, c in zip(range(_Q_SCAN_LIMIT), F.scan()))
    if start is not None:
        candidates = _chain_first(start, candidates)
    for a in candidates:
        if a in avoid:
            continue
        if any(F.is_zero(g(a)) for g in nonvanishing):
            continue
        if _fully_split_fast(model, a):
            return a
    raise ExhaustedSearch("no fully split unramified fibre in the base field; extend it")


def _chain_first(first, rest):
    yield first
    for c in rest:
        if c != first:
            yield c
