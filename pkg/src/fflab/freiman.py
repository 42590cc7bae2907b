"""The 3k-4 verification pipeline for K-subspaces of function fields."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import (CurveModel, FFElem, cover_model, find_split_locus, leading_term_inf,
                     valuation)
from .errors import (ExhaustedSearch, PreconditionError, UnsupportedError,
                     VerificationFailure)
from .poly import Poly, RatFunc, is_squarefree
from .riemann_roch import Divisor, minimal_divisor, rr_basis
from .subspaces import (KSubspace, k_intersect, k_member, k_span, k_square, k_sum,
                        k_translate, kx_span, _kx_product_raw)

REPORT_VERSION = 1
_LAMBDA_TRIES = 64


def combinatorial_genus(S: KSubspace) -> int:
    if S.dim < 1:
        raise PreconditionError("combinatorial genus of the zero subspace")
    return k_square(S).dim - 2 * S.dim + 1


def filtered_basis(S: KSubspace, Qinf=None) -> list:
    """Basis of S with strictly decreasing valuations at the canonical Q_inf."""
    if Qinf is not None and Qinf != S.model.q_inf:
        raise UnsupportedError("filtered bases are taken at the canonical Q_inf only")
    F = S.model.F
    by_val = {}
    for u in S.basis:
        while True:
            v, c = leading_term_inf(u)
            if v not in by_val:
                by_val[v] = (u, c)
                break
            b, cb = by_val[v]
            u = u - b.scale(F.div(c, cb))
            if u.is_zero():  # pragma: no cover - S.basis is independent
                raise VerificationFailure("dependent basis in filtered elimination")
    return [by_val[v][0] for v in sorted(by_val, reverse=True)]


def filtered_valuations(S: KSubspace) -> list[int]:
    return [leading_term_inf(u)[0] for u in filtered_basis(S)]


def normalize_translate(S: KSubspace):
    """(f0^-1 S, f0) where f0 is the filtered element of largest Q_inf valuation."""
    if S.dim == 0:
        raise PreconditionError("cannot translate the zero subspace")
    f0 = filtered_basis(S)[0]
    if f0 == S.model.one():
        return S, f0
    return k_translate(S, f0.inv()), f0


def is_normalized(S: KSubspace) -> bool:
    return S.dim > 0 and filtered_valuations(S)[0] == 0 and k_member(S, S.model.one())


# -- separability --------------------------------------------------------------

def _rat_derivative(r: RatFunc) -> RatFunc:
    if not r:
        return r
    N, D = r.num, r.den
    return RatFunc(N.derivative() * D - N * D.derivative(), D * D)


def derivative(u: FFElem) -> FFElem:
    """du/dx for the model coordinate x (the base x on cover models)."""
    model = u.model
    if model.kind == "cover":
        return model.from_base(derivative(model.to_base(u)))
    if model.kind == "rational":
        return model.elem([_rat_derivative(u.coords[0])])
    c0, c1 = u.coords
    f = RatFunc(model.f)
    fp = RatFunc(model.f.derivative())
    two = model.F(2)
    d1 = _rat_derivative(c1) + (c1 * fp) / (f * two) if c1 else c1
    return model.elem([_rat_derivative(c0), d1])


def is_separating(w: FFElem) -> bool:
    """F/K(w) is separable exactly when dw != 0."""
    if w.model.F.p == 0:
        return not _is_constant(w)
    return not derivative(w).is_zero()


def _is_constant(u: FFElem) -> bool:
    return all(not c for c in u.coords[1:]) and u.coords[0].num.deg <= 0 \
        and u.coords[0].den.is_one()


# -- pivot selection ------------------------------------------------------------

@dataclass
class LocalData:
    N: int
    d: int | None = None
    d_exact: bool = False


@dataclass
class PivotChoice:
    w: FFElem
    D: Divisor
    filtered: list
    local: LocalData
    shift: object = None
    adjustments: int = 0


def _pole_order(u, P):
    return -valuation(u, P) if not u.is_zero() else None


def _scan_lambda(F, ok):
    for i, lam in enumerate(F.scan()):
        if i > _LAMBDA_TRIES and F.p == 0:
            break
        if F.is_zero(lam):
            continue
        if ok(lam):
            return lam
    return None


def select_pivot(S: KSubspace, with_shift: bool = True) -> PivotChoice:
    """w in S with (w)_inf = D = minimal_divisor(S), separating, with e_{k-1} = w.

    On rational models ``shift`` is a value a such that w - a has simple zeros.
    """
    model = S.model
    F = model.F
    if not is_normalized(S):
        raise PreconditionError("select_pivot needs 1 in S with max Q_inf valuation 0")
    if S.dim < 2:
        raise PreconditionError("select_pivot needs dim S >= 2")
    D = minimal_divisor(S)
    support = [P for P, m in D.items() if m > 0]
    fb = filtered_basis(S)
    w = fb[-1]
    adjustments = 0

    def deficient(u):
        return [P for P in support if _pole_order(u, P) < D[P]]

    bad = deficient(w)
    while bad:
        P = bad[0]
        y = next(b for b in S.basis if _pole_order(b, P) == D[P])
        keep = {Q: _pole_order(w, Q) for Q in support}

        def ok(lam, y=y, P=P, keep=keep):
            cand = w + y.scale(lam)
            if cand.is_zero() or _pole_order(cand, P) != D[P]:
                return False
            return all(_pole_order(cand, Q) >= keep[Q] for Q in support if Q != P)

        lam = _scan_lambda(F, ok)
        if lam is None:
            raise ExhaustedSearch("no scalar realizes the pole divisor; extend the base field")
        w = w + y.scale(lam)
        adjustments += 1
        bad = deficient(w)

    if not is_separating(w):
        y = next((b for b in S.basis if is_separating(b)), None)
        if y is None:
            raise UnsupportedError("S lies in F^p; it cannot generate F")

        def ok_sep(lam, w=w, y=y):
            cand = w + y.scale(lam)
            return not cand.is_zero() and is_separating(cand) and \
                all(_pole_order(cand, Q) == D[Q] for Q in support)

        lam = _scan_lambda(F, ok_sep)
        if lam is None:
            raise ExhaustedSearch("no separating pivot found; extend the base field")
        w = w + y.scale(lam)
        adjustments += 1

    filtered = fb[:-1] + [w]
    N = _pole_order(w, model.q_inf)
    shift = None
    if with_shift and model.kind in ("rational", "cover"):
        shift = _simple_zero_shift(w)
    return PivotChoice(w, D, filtered, LocalData(N), shift, adjustments)


def _pivot_ratfunc(w: FFElem) -> RatFunc:
    model = w.model
    if model.kind == "cover":
        return model.to_base(w).coords[0]
    return w.coords[0]


def _simple_zero_shift(w: FFElem):
    """Least a such that w - a has simple zeros, preferring a fully split zero fibre."""
    r = _pivot_ratfunc(w)
    F = w.model.F
    C = cover_model(F, r)
    try:
        return find_split_locus(C)
    except ExhaustedSearch:
        pass
    for i, a in enumerate(F.scan()):
        if F.p == 0 and i > 2000:
            break
        g = r.num - r.den.scale(a)
        if g.deg == max(r.num.deg, r.den.deg) and is_squarefree(g):
            return a
    raise ExhaustedSearch("no unramified zero fibre for the pivot")


# -- field generation -----------------------------------------------------------

def _tower_dimension(V1):
    V = V1
    while True:
        nxt = _kx_product_raw(V, V1)
        if nxt.dim == V.dim:
            return V.dim
        V = nxt


def generates_field(S: KSubspace):
    """Whether K(S) = F.  Returns None when the answer cannot be decided exactly."""
    model = S.model
    if not k_member(S, model.one()):
        raise PreconditionError("generates_field needs 1 in S")
    nonconst = [u for u in S.basis if not _is_constant(u)]
    if not nonconst:
        return False  # K(S) = K
    if model.kind in ("rational", "cover"):
        # K(S) contains K(u); F = K(S) iff K(u)[S] has K(u)-dimension [F:K(u)].
        rs = [_pivot_ratfunc(u) for u in nonconst]
        r = min(rs, key=lambda q: (max(q.num.deg, q.den.deg), q.num.key(), q.den.key()))
        if max(r.num.deg, r.den.deg) == 1:
            return True
        C = cover_model(model.F, r)
        to_C = (lambda e: C.from_base(model.to_base(e))) if model.kind == "cover" \
            else C.from_base
        V1 = kx_span(C, [to_C(s) for s in S.basis])
        return _tower_dimension(V1) == C.n
    # hyperelliptic: K(S) = F needs x in K(S); detect x in S^i for small i.
    if S.dim == 2:
        return False  # K(S) = K(u) is rational and the model has positive genus
    x = model.t()
    power = S
    for _ in range(3):
        if k_member(power, x):
            return _tower_dimension(kx_span(S)) == model.n
        power = k_span(model, [a * b for a in power.basis for b in S.basis])
    if _tower_dimension(kx_span(S)) < model.n:
        return False  # K(S) is inside K(x, S) = K(x)
    return None


# -- Theorem report ---------------------------------------------------------------

@dataclass
class TheoremReport:
    k: int
    gamma: int
    hypothesis_met: bool
    g: int
    D: Divisor | None
    rr_dim: int | None
    codim: int | None
    genus_ok: bool
    codim_ok: bool | None
    generates_field: bool | None
    translated_by: str = "1"
    deg_D: int | None = None
    pivot: str | None = None
    sum_dim: int | None = None
    intersection_ok: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def asserted(self) -> bool:
        return self.hypothesis_met and self.generates_field is True

    @property
    def passed(self) -> bool:
        return not self.asserted or (self.genus_ok and bool(self.codim_ok))

    def to_json(self, instance=None):
        d = {
            "report_version": REPORT_VERSION,
            "k": self.k,
            "gamma": self.gamma,
            "hypothesis_met": self.hypothesis_met,
            "g": self.g,
            "D": self.D.to_json() if self.D is not None else None,
            "deg_D": self.deg_D,
            "rr_dim": self.rr_dim,
            "codim": self.codim,
            "genus_ok": self.genus_ok,
            "codim_ok": self.codim_ok,
            "generates_field": self.generates_field,
            "asserted": self.asserted,
            "passed": self.passed,
            "translated_by": self.translated_by,
            "pivot": self.pivot,
            "sum_dim": self.sum_dim,
            "intersection_ok": self.intersection_ok,
            "notes": list(self.notes),
        }
        if instance is not None:
            d["instance"] = instance
        return d


class TheoremFailure(VerificationFailure):
    def __init__(self, report: TheoremReport):
        super().__init__(f"genus/codimension conclusion fails: genus_ok={report.genus_ok}, "
                         f"codim_ok={report.codim_ok}")
        self.report = report


def pivot_sum_checks(S: KSubspace, pivot: PivotChoice):
    """(dim(S + wS), S intersect wS == K*w)."""
    wS = k_translate(S, pivot.w)
    total = k_sum(S, wS).dim
    inter = k_intersect(S, wS)
    return total, inter == k_span(S.model, [pivot.w])


def verify_theorem(S: KSubspace, strict: bool = True, with_pivot: bool = True) -> TheoremReport:
    """Check the genus and codimension conclusions on one instance.

    With ``strict`` a failure under the hypotheses (gamma <= k-3 and K(S) = F)
    raises TheoremFailure.
    """
    model = S.model
    k = S.dim
    if k == 0:
        raise PreconditionError("verify_theorem needs a nonzero subspace")
    gamma = combinatorial_genus(S)
    Sn, f0 = normalize_translate(S)
    g = model.genus
    notes = []
    hyp = k >= 3 and 0 <= gamma <= k - 3
    gen = generates_field(Sn)
    D = minimal_divisor(Sn)
    rr_dim = rr_basis(model, D).dim
    codim = rr_dim - k
    genus_ok = g <= gamma
    codim_ok = codim <= gamma - g
    if gen is None:
        notes.append("field generation undetermined; no assertion")
    rep = TheoremReport(k, gamma, hyp, g, D, rr_dim, codim, genus_ok, codim_ok, gen,
                        translated_by=f0.fmt(), deg_D=D.degree)
    if k < 3:
        notes.append("dim S <= 2: report only")
    if with_pivot and k >= 2:
        try:
            pv = select_pivot(Sn, with_shift=False)
            rep.pivot = pv.w.fmt()
            rep.sum_dim, rep.intersection_ok = pivot_sum_checks(Sn, pv)
        except (ExhaustedSearch, UnsupportedError) as exc:
            notes.append(f"pivot: {exc}")
    rep.notes = notes
    if strict and not rep.passed:
        raise TheoremFailure(rep)
    return rep
