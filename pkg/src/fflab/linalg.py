"""Exact Gaussian elimination over K and over K(x).

Both eliminations return the reduced row-echelon form, which is canonical: two
matrices with the same row space give identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VerificationFailure
from .fields import BaseField, PrimeField
from .poly import Poly, RatFunc, poly_gcd, poly_lcm


def _rref_prime(rows, p, ncols):
    basis = []  # (pivot, row) with row[pivot] == 1, zero at other pivots
    for row in rows:
        r = [v % p for v in row]
        for piv, b in basis:
            c = r[piv]
            if c:
                for j in range(ncols):
                    if b[j]:
                        r[j] = (r[j] - c * b[j]) % p
        lead = next((j for j in range(ncols) if r[j]), None)
        if lead is None:
            continue
        inv = pow(r[lead], -1, p)
        r = [v * inv % p for v in r]
        for idx, (piv, b) in enumerate(basis):
            c = b[lead]
            if c:
                basis[idx] = (piv, [(bv - c * rv) % p for bv, rv in zip(b, r)])
        basis.append((lead, r))
        if len(basis) == ncols:
            break
    basis.sort(key=lambda t: t[0])
    return basis


def _rref_generic(rows, F, ncols):
    add, sub, mul, z, inv = F.add, F.sub, F.mul, F.is_zero, F.inv
    basis = []
    for row in rows:
        r = list(row)
        for piv, b in basis:
            c = r[piv]
            if not z(c):
                for j in range(ncols):
                    if not z(b[j]):
                        r[j] = sub(r[j], mul(c, b[j]))
        lead = next((j for j in range(ncols) if not z(r[j])), None)
        if lead is None:
            continue
        iv = inv(r[lead])
        r = [mul(v, iv) for v in r]
        for idx, (piv, b) in enumerate(basis):
            c = b[lead]
            if not z(c):
                basis[idx] = (piv, [sub(bv, mul(c, rv)) for bv, rv in zip(b, r)])
        basis.append((lead, r))
        if len(basis) == ncols:
            break
    basis.sort(key=lambda t: t[0])
    return basis


def rref_pivots(rows, F: BaseField, ncols: int | None = None):
    """Return [(pivot_column, row)] of the reduced row-echelon form."""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        return []
    if isinstance(F, PrimeField):
        return _rref_prime(rows, F.p, ncols)
    return _rref_generic(rows, F, ncols)


def rref_K(rows, F: BaseField, ncols: int | None = None):
    """(rank, reduced rows) over the base field."""
    basis = rref_pivots(rows, F, ncols)
    return len(basis), [r for _, r in basis]


def _kernel_from_rref(basis, ncols, zero, one, neg):
    pivots = {p: r for p, r in basis}
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for p, r in basis:
            v[p] = neg(r[f])
        out.append(v)
    return out


def nullspace_K(rows, F: BaseField, ncols: int):
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    basis = rref_pivots(rows, F, ncols)
    return _kernel_from_rref(basis, ncols, F.zero, F.one, F.neg)


def left_nullspace_K(rows, F: BaseField):
    """Basis of {c : sum_i c_i rows[i] = 0}."""
    rows = list(rows)
    if not rows:
        return []
    ncols = len(rows[0])
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    return nullspace_K(cols, F, len(rows))


# -- K(x) --------------------------------------------------------------------

def _clear_row(row, F):
    """Scale a RatFunc row to a primitive polynomial row (same K(x)-span)."""
    den = Poly.one(F)
    for e in row:
        if e.num and not e.den.is_one():
            den = poly_lcm(den, e.den)
    out = []
    for e in row:
        if not e.num:
            out.append(Poly.zero(F))
        elif den.is_one():
            out.append(e.num)
        else:
            out.append(e.num * den.exact_div(e.den))
    return _primitive(out, F)


def _primitive(prow, F):
    g = None
    for e in prow:
        if e:
            g = e if g is None else poly_gcd(g, e)
            if g.deg == 0:
                break
    if g is None:
        return prow
    if g.deg > 0:
        prow = [e.exact_div(g) if e else e for e in prow]
    lead = next(e for e in prow if e)
    if lead.lc != F.one:
        inv = F.inv(lead.lc)
        prow = [e.scale(inv) for e in prow]
    return prow


def rref_Kx_pivots(rows, F: BaseField, ncols: int | None = None):
    """Fraction-free elimination over K(x); returns [(pivot, RatFunc row)]."""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        return []
    basis = []  # (pivot, poly row), zero at every other pivot column
    for row in rows:
        r = _clear_row(row, F)
        for piv, b in basis:
            c = r[piv]
            if c:
                bp = b[piv]
                r = [ri * bp - c * bi for ri, bi in zip(r, b)]
        lead = next((j for j in range(ncols) if r[j]), None)
        if lead is None:
            continue
        r = _primitive(r, F)
        for idx, (piv, b) in enumerate(basis):
            c = b[lead]
            if c:
                rl = r[lead]
                basis[idx] = (piv, _primitive([bi * rl - c * ri for bi, ri in zip(b, r)], F))
        basis.append((lead, r))
        if len(basis) == ncols:
            break
    basis.sort(key=lambda t: t[0])
    out = []
    for piv, b in basis:
        d = b[piv]
        out.append((piv, [RatFunc(e, d) if e else RatFunc.zero(F) for e in b]))
    return out


def rref_Kx(rows, F: BaseField, ncols: int | None = None):
    """(rank, reduced rows) over the rational function field K(x)."""
    basis = rref_Kx_pivots(rows, F, ncols)
    return len(basis), [r for _, r in basis]


def _poly_vector(v, F):
    """Rescale a K(x)-vector to a primitive polynomial vector with monic lead entry."""
    return [RatFunc(e) for e in _clear_row(v, F)]


def nullspace_Kx(rows, F: BaseField, ncols: int):
    """Kernel basis over K(x); each vector is primitive polynomial with a monic lead."""
    basis = rref_Kx_pivots(rows, F, ncols)
    kernel = _kernel_from_rref(basis, ncols, RatFunc.zero(F), RatFunc.one(F), lambda a: -a)
    return [_poly_vector(v, F) for v in kernel]


@dataclass
class KxSolution:
    """Solution set of A s = b over K(x)."""

    consistent: bool
    particular: list | None = None
    kernel: list = field(default_factory=list)


def _matvec(A, s, F):
    out = []
    for row in A:
        acc = RatFunc.zero(F)
        for a, x in zip(row, s):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def solve_Kx(A, b, F: BaseField) -> KxSolution:
    """Describe {s : A s = b}; solutions are checked by back-substitution."""
    A = [list(r) for r in A]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    aug = [A[i] + [b[i]] for i in range(nrows)]
    basis = rref_Kx_pivots(aug, F, ncols + 1)
    if any(p == ncols for p, _ in basis):
        return KxSolution(False)
    zero = RatFunc.zero(F)
    s = [zero] * ncols
    for p, r in basis:
        s[p] = r[ncols]
    kernel = _kernel_from_rref([(p, r[:ncols]) for p, r in basis], ncols, zero,
                               RatFunc.one(F), lambda a: -a)
    kernel = [_poly_vector(v, F) for v in kernel]
    if _matvec(A, s, F) != [RatFunc(e.num, e.den) for e in b]:
        raise VerificationFailure("back-substitution check failed")
    for v in kernel:
        if any(_matvec(A, v, F)):
            raise VerificationFailure("kernel vector is not in the null space")
    return KxSolution(True, s, kernel)
