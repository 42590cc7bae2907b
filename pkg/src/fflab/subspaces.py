"""K-subspaces and K(t)-subspaces of a function field.

A K-subspace is flattened to K-coordinates by clearing all y-coordinates to one
common denominator Q and listing the numerator coefficients in (y-power,
t-degree) slots, ascending.  Q is the lcm of the denominators of every element of
the span, so the reduced row-echelon form gives a canonical basis.
"""

from __future__ import annotations

from .curves import CurveModel, FFElem
from .errors import PreconditionError, VerificationFailure
from .linalg import left_nullspace_K, nullspace_Kx, rref_K, rref_Kx_pivots
from .poly import Poly, RatFunc, poly_lcm


def _common_den(F, elems):
    Q = Poly.one(F)
    for u in elems:
        for c in u.coords:
            if c and not c.den.is_one():
                Q = poly_lcm(Q, c.den)
    return Q


def _numerators(u, Q):
    out = []
    for c in u.coords:
        if not c:
            out.append(None)
        elif Q.is_one():
            out.append(c.num)
        else:
            out.append(c.num * Q.exact_div(c.den))
    return out


def _flatten(model, elems):
    """(Q, slots, rows) with one K-row per element."""
    F = model.F
    Q = _common_den(F, elems)
    nums = [_numerators(u, Q) for u in elems]
    occupied = set()
    for ns in nums:
        for j, p in enumerate(ns):
            if p is not None:
                for d, c in enumerate(p.c):
                    if not F.is_zero(c):
                        occupied.add((j, d))
    slots = sorted(occupied)
    index = {s: i for i, s in enumerate(slots)}
    rows = []
    for ns in nums:
        r = [F.zero] * len(slots)
        for j, p in enumerate(ns):
            if p is not None:
                for d, c in enumerate(p.c):
                    if not F.is_zero(c):
                        r[index[(j, d)]] = c
        rows.append(r)
    return Q, slots, rows


def _unflatten(model, Q, slots, row):
    F = model.F
    per = [dict() for _ in range(model.n)]
    for (j, d), c in zip(slots, row):
        if not F.is_zero(c):
            per[j][d] = c
    coords = []
    for j in range(model.n):
        if not per[j]:
            coords.append(RatFunc.zero(F))
            continue
        top = max(per[j])
        p = Poly(F, [per[j].get(d, F.zero) for d in range(top + 1)])
        coords.append(RatFunc(p, Q))
    return FFElem(model, tuple(coords))


class KSubspace:
    """Finite-dimensional K-subspace of F held in canonical reduced form."""

    def __init__(self, model: CurveModel, basis, common_den, slots, rows):
        self.model = model
        self.basis = list(basis)
        self.common_den = common_den
        self.slots = slots
        self.rows = rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __eq__(self, other):
        if not isinstance(other, KSubspace):
            return NotImplemented
        return self.model == other.model and self.basis == other.basis

    def __hash__(self):
        return hash(tuple(self.basis))

    def __repr__(self):
        return "KSubspace{" + ", ".join(u.fmt() for u in self.basis) + "}"

    def fmt_basis(self):
        return [u.fmt() for u in self.basis]

    def to_json(self):
        from .serialize import model_to_json, elem_to_json

        return {"model": model_to_json(self.model),
                "basis": [elem_to_json(u) for u in self.basis]}


def k_span(model: CurveModel, gens) -> KSubspace:
    gens = [g for g in gens]
    for g in gens:
        if g.model != model:
            raise PreconditionError("generator from a different model")
    nz = [g for g in gens if not g.is_zero()]
    F = model.F
    if not nz:
        return KSubspace(model, [], Poly.one(F), [], [])
    Q, slots, rows = _flatten(model, nz)
    _, red = rref_K(rows, F, len(slots))
    basis = [_unflatten(model, Q, slots, r) for r in red]
    return KSubspace(model, basis, Q, slots, red)


def k_product(S: KSubspace, T: KSubspace) -> KSubspace:
    _same(S, T)
    prods = []
    if S is T or S == T:
        b = S.basis
        for i in range(len(b)):
            for j in range(i, len(b)):
                prods.append(b[i] * b[j])
    else:
        prods = [s * t for s in S.basis for t in T.basis]
    return k_span(S.model, prods)


def k_square(S: KSubspace) -> KSubspace:
    return k_product(S, S)


def k_sum(S: KSubspace, T: KSubspace) -> KSubspace:
    _same(S, T)
    return k_span(S.model, S.basis + T.basis)


def k_intersect(S: KSubspace, T: KSubspace) -> KSubspace:
    _same(S, T)
    model = S.model
    if not S.basis or not T.basis:
        return k_span(model, [])
    _, _, rows = _flatten(model, S.basis + T.basis)
    rels = left_nullspace_K(rows, model.F)
    a = S.dim
    out = []
    for c in rels:
        acc = model.zero()
        for ci, s in zip(c[:a], S.basis):
            if not model.F.is_zero(ci):
                acc = acc + s.scale(ci)
        out.append(acc)
    return k_span(model, out)


def k_member(S: KSubspace, u: FFElem) -> bool:
    if u.is_zero():
        return True
    return k_span(S.model, S.basis + [u]).dim == S.dim


def k_contains(S: KSubspace, T: KSubspace) -> bool:
    """T is a subspace of S."""
    return k_sum(S, T).dim == S.dim


def k_translate(S: KSubspace, u: FFElem) -> KSubspace:
    """u * S."""
    return k_span(S.model, [u * s for s in S.basis])


def _same(S, T):
    if S.model != T.model:
        raise PreconditionError("subspaces belong to different models")


# -- K(t)-subspaces -----------------------------------------------------------

class KxSubspace:
    """K(t)-subspace of F in reduced echelon form over K(t).

    ``rows[i]`` are the K(t)-coordinates of ``basis[i]``; each has a 1 in column
    ``pivots[i]`` and zeros in the other pivot columns.
    """

    def __init__(self, model: CurveModel, pivots, rows):
        self.model = model
        self.pivots = list(pivots)
        self.rows = [tuple(r) for r in rows]
        self.basis = [FFElem(model, r) for r in self.rows]

    @property
    def dim(self) -> int:
        return len(self.rows)

    dim_over_Kx = dim

    def is_full(self):
        return self.dim == self.model.n

    def __eq__(self, other):
        if not isinstance(other, KxSubspace):
            return NotImplemented
        return self.model == other.model and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(self.rows))

    def __repr__(self):
        return "KxSubspace{" + ", ".join(u.fmt() for u in self.basis) + "}"

    def residue(self, coords):
        """Coordinates of the class of ``coords`` in F / V (entries at non-pivot columns)."""
        r = list(coords)
        for p, row in zip(self.pivots, self.rows):
            c = r[p]
            if c:
                r = [ri - c * bi if bi else ri for ri, bi in zip(r, row)]
        return r

    def contains(self, u: FFElem) -> bool:
        return not any(self.residue(u.coords))


def kx_span(model_or_S, gens=None) -> KxSubspace:
    """K(t)-span of a KSubspace, or of a list of elements of a model."""
    if isinstance(model_or_S, KSubspace):
        model, gens = model_or_S.model, model_or_S.basis
    else:
        model = model_or_S
    rows = [u.coords for u in gens if not u.is_zero()]
    basis = rref_Kx_pivots(rows, model.F, model.n) if rows else []
    return KxSubspace(model, [p for p, _ in basis], [r for _, r in basis])


def kx_full(model: CurveModel) -> KxSubspace:
    one, zero = RatFunc.one(model.F), RatFunc.zero(model.F)
    rows = [[one if i == j else zero for j in range(model.n)] for i in range(model.n)]
    return KxSubspace(model, list(range(model.n)), rows)


def _kx_product_raw(U: KxSubspace, V: KxSubspace) -> KxSubspace:
    model = U.model
    if U.is_full() and V.dim or V.is_full() and U.dim:
        return kx_full(model)
    prods = [u * v for u in U.basis for v in V.basis]
    return kx_span(model, prods)


def kx_product(U: KxSubspace, V: KxSubspace, check: bool = True) -> KxSubspace:
    """K(t)-span of UV; with ``check`` the Kneser inequality is asserted."""
    if U.model != V.model:
        raise PreconditionError("subspaces belong to different models")
    UV = _kx_product_raw(U, V)
    if check and U.dim and V.dim:
        St = stabilizer(UV)
        if UV.dim < U.dim + V.dim - St.dim:
            raise VerificationFailure(
                f"Kneser inequality fails: {UV.dim} < {U.dim} + {V.dim} - {St.dim}")
    return UV


def kx_power(V: KxSubspace, i: int) -> KxSubspace:
    out = V
    for _ in range(i - 1):
        out = _kx_product_raw(out, V)
    return out


def stabilizer(V: KxSubspace, check: bool = True) -> KxSubspace:
    """St(V) = {z in F : zV is contained in V}."""
    model = V.model
    if V.dim == 0:
        raise PreconditionError("stabilizer of the zero subspace")
    if V.is_full():
        return kx_full(model)
    n = model.n
    # y^j * v_i for each basis v_i
    ypows = [model.one()]
    if n > 1:
        y = model.y()
        for _ in range(n - 1):
            ypows.append(ypows[-1] * y)
    free = [q for q in range(n) if q not in V.pivots]
    constraints = []
    for v in V.basis:
        res = [V.residue((yj * v).coords) for yj in ypows]
        for q in free:
            constraints.append([res[j][q] for j in range(n)])
    kernel = nullspace_Kx(constraints, model.F, n)
    St = kx_span(model, [FFElem(model, tuple(z)) for z in kernel])
    if check:
        _check_stabilizer(St, V)
    return St


def _check_stabilizer(St: KxSubspace, V: KxSubspace):
    model = V.model
    if not St.contains(model.one()):
        raise VerificationFailure("stabilizer does not contain 1")
    for a in St.basis:
        for b in St.basis:
            if not St.contains(a * b):
                raise VerificationFailure("stabilizer is not closed under products")
    if _kx_product_raw(St, V) != V:
        raise VerificationFailure("St(V) * V != V")


def stabilizer_is_field(St: KxSubspace) -> bool:
    model = St.model
    if not St.contains(model.one()):
        return False
    return all(St.contains(a * b) for a in St.basis for b in St.basis)


def mixed_intersect(S: KSubspace, V: KxSubspace) -> KSubspace:
    """The K-subspace of elements of S lying in the K(t)-span V."""
    model = S.model
    if S.model != V.model:
        raise PreconditionError("subspaces belong to different models")
    if not S.basis:
        return S
    if V.is_full():
        return S
    if V.dim == 0:
        return k_span(model, [])
    residues = [FFElem(model, tuple(V.residue(s.coords))) for s in S.basis]
    _, _, rows = _flatten(model, residues)
    if not rows or not rows[0]:
        return S
    rels = left_nullspace_K(rows, model.F)
    out = []
    for c in rels:
        acc = model.zero()
        for ci, s in zip(c, S.basis):
            if not model.F.is_zero(ci):
                acc = acc + s.scale(ci)
        out.append(acc)
    return k_span(model, out)
