"""Divisors and explicit Riemann-Roch spaces on the supported models."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import (INF0, INF_HYP, CurveModel, FFElem, Place, pole_divisor_entries,
                     valuation)
from .errors import PreconditionError, UnsupportedError, VerificationFailure
from .poly import Poly, RatFunc, poly_gcd, root_multiplicity, roots
from .subspaces import KSubspace, k_member, k_span


class Divisor:
    """Formal sum of degree-1 places with nonzero integer multiplicities."""

    def __init__(self, model: CurveModel, entries=None):
        self.model = model
        self.entries = {P: int(m) for P, m in (entries or {}).items() if m}

    @property
    def degree(self) -> int:
        return sum(self.entries.values())

    def __getitem__(self, P):
        return self.entries.get(P, 0)

    def items(self):
        F = self.model.F
        return sorted(self.entries.items(), key=lambda kv: kv[0].sort_key(F))

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __le__(self, other):
        places = set(self.entries) | set(other.entries)
        return all(self[P] <= other[P] for P in places)

    def __add__(self, other):
        out = dict(self.entries)
        for P, m in other.entries.items():
            out[P] = out.get(P, 0) + m
        return Divisor(self.model, out)

    def with_entry(self, P, m):
        out = dict(self.entries)
        out[P] = m
        return Divisor(self.model, out)

    def is_positive(self):
        return all(m >= 0 for m in self.entries.values())

    def fmt(self):
        F = self.model.F
        if not self.entries:
            return "0"
        return " + ".join(f"{m}*{P.label(F)}" for P, m in self.items())

    def __repr__(self):
        return f"Divisor({self.fmt()})"

    def to_json(self):
        from .serialize import place_to_json

        return [{"place": place_to_json(P, self.model.F), "mult": m} for P, m in self.items()]


def infinity_divisor(model: CurveModel, n: int) -> Divisor:
    return Divisor(model, {model.q_inf: n})


@dataclass
class RRBasis:
    divisor: Divisor
    basis: list
    genus_used: int
    _space: KSubspace | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def space(self) -> KSubspace:
        if self._space is None:
            self._space = k_span(self.divisor.model, self.basis)
        return self._space


def _base_divisor(D: Divisor) -> Divisor:
    """Transport a divisor on a cover model to its rational base model."""
    model = D.model
    out = {}
    for P, m in D.entries.items():
        if P.kind == "point":
            P = Place("finite0", P.b)
        if P.kind not in ("inf0", "finite0"):
            raise UnsupportedError(f"place {P.kind} on a cover model")
        out[P] = out.get(P, 0) + m
    return Divisor(model.base, out)


def rr_basis(model: CurveModel, D: Divisor) -> RRBasis:
    """Explicit basis of L(D) = {u : (u) + D >= 0}."""
    F = model.F
    if model.kind == "cover":
        rb = rr_basis(model.base, _base_divisor(D))
        return RRBasis(D, [model.from_base(u) for u in rb.basis], 0)
    if model.kind == "hyperelliptic":
        bad = [P for P in D.entries if P != INF_HYP]
        if bad:
            raise UnsupportedError("hyperelliptic Riemann-Roch spaces need D = n*Pinf")
        n = D[INF_HYP]
        g = model.genus
        basis = [model.monomial(i) for i in range(n // 2 + 1)] if n >= 0 else []
        basis += [model.monomial(i, 1) for i in range(n + 1) if 2 * i + 2 * g + 1 <= n]
        basis.sort(key=lambda u: -valuation(u, INF_HYP))
        return RRBasis(D, basis, g)
    for P in D.entries:
        if P.kind not in ("inf0", "finite0"):
            raise UnsupportedError(f"place {P.kind} on the rational model")
    deg = D.degree
    if deg < 0:
        return RRBasis(D, [], 0)
    finite = [(P.a, m) for P, m in D.items() if P.kind == "finite0"]
    x = RatFunc.x(F)
    if D.is_positive():
        basis = [model.monomial(i) for i in range(D[INF0] + 1)]
        for a, m in finite:
            lin = x - RatFunc.const(F, a)
            basis += [model.from_ratfunc(lin ** (-j)) for j in range(1, m + 1)]
        return RRBasis(D, basis, 0)
    h = RatFunc.one(F)
    for a, m in finite:
        h = h * (x - RatFunc.const(F, a)) ** (-m)
    basis = [model.from_ratfunc(h * x ** i) for i in range(deg + 1)]
    return RRBasis(D, basis, 0)


def in_rr_space(u: FFElem, D: Divisor) -> bool:
    """(u) + D >= 0 at every place."""
    if u.is_zero():
        return True
    model = u.model
    if model.kind == "hyperelliptic":
        if not u.is_polynomial():
            return False
        return valuation(u, INF_HYP) >= -D[INF_HYP]
    if model.kind == "cover":
        return in_rr_space(model.to_base(u), _base_divisor(D))
    poles = pole_divisor_entries(u)
    for P, m in poles.items():
        if m > D[P]:
            return False
    for P, m in D.entries.items():
        if valuation(u, P) < -m:
            return False
    return True


def minimal_divisor(S: KSubspace) -> Divisor:
    """Smallest D with S contained in L(D)."""
    model = S.model
    if not S.basis:
        raise PreconditionError("minimal divisor of the zero subspace")
    F = model.F
    if model.kind == "cover":
        base = [model.to_base(u) for u in S.basis]
        D0 = minimal_divisor(k_span(model.base, base))
        return Divisor(model, D0.entries)
    if model.kind == "hyperelliptic":
        if not all(u.is_polynomial() for u in S.basis):
            raise UnsupportedError("hyperelliptic subspace with poles away from Pinf")
        if not k_member(S, model.one()):
            raise UnsupportedError("subspace must contain 1 (apply normalize_translate first)")
        n = max(-valuation(u, INF_HYP) for u in S.basis)
        return Divisor(model, {INF_HYP: n})
    Q = S.common_den
    nums = [u.coords[0].num * Q.exact_div(u.coords[0].den) for u in S.basis]
    G = Poly.zero(F)
    for N in nums:
        G = poly_gcd(G, N)
    entries = {}
    for poly, sign in ((Q, 1), (G, -1)):
        if poly.deg <= 0:
            continue
        rts = roots(poly)
        if sum(root_multiplicity(poly, a) for a in rts) != poly.deg:
            raise UnsupportedError("pole or common zero at a place of degree > 1")
        for a in rts:
            P = Place("finite0", a)
            entries[P] = entries.get(P, 0) + sign * root_multiplicity(poly, a)
    entries[INF0] = max(N.deg - Q.deg for N in nums)
    return Divisor(model, entries)


def rr_dim_identities(model: CurveModel, n_range) -> list[dict]:
    """Check dim L(n*Qinf) against Riemann-Roch (n >= 2g-1) or Clifford (n <= 2g-2).

    Dimensions are recomputed independently as the K-rank of the basis, and every
    basis element is checked for membership by valuations.
    """
    g = model.genus
    table = []
    for n in n_range:
        D = infinity_divisor(model, n)
        rb = rr_basis(model, D)
        dim = k_span(model, rb.basis).dim if rb.basis else 0
        if dim != rb.dim:
            raise VerificationFailure(f"L({n}Qinf) basis is not independent")
        for u in rb.basis:
            if not in_rr_space(u, D):
                raise VerificationFailure(f"{u.fmt()} is not in L({n}Qinf)")
        if n >= 2 * g - 1:
            rule, expected = "riemann-roch", n + 1 - g
            ok = dim == expected
        else:
            rule, expected = "clifford", 1 + n // 2
            ok = dim <= expected
        if not ok:
            raise VerificationFailure(f"dim L({n}Qinf) = {dim} violates {rule}")
        table.append({"n": n, "dim": dim, "rule": rule, "bound": expected, "ok": ok})
    return table
