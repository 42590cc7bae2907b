"""Stabilizer, evaluation and decomposition experiments around a chosen pivot.

All K(w)-linear algebra happens in a *frame*: a model whose coordinate t equals
the pivot w up to an affine change, so that K(t) = K(w).  Rational inputs are
re-presented as a cover of K(w); hyperelliptic inputs qualify only when w is an
affine function of x, otherwise the model coordinate is used and the checks that
depend on K(w) are reported as not applicable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .curves import CurveModel, FFElem, cover_model, evaluate, find_split_locus, split_points
from .errors import ExhaustedSearch, PreconditionError, UnsupportedError, VerificationFailure
from .freiman import (PivotChoice, combinatorial_genus, filtered_basis, generates_field,
                      normalize_translate, select_pivot, _pivot_ratfunc)
from .linalg import nullspace_K, nullspace_Kx
from .poly import Poly, RatFunc
from .riemann_roch import rr_basis
from .subspaces import (KSubspace, KxSubspace, k_contains, k_span, k_square, kx_span,
                        mixed_intersect, stabilizer, _kx_product_raw)
from .curves import leading_term_inf, valuation


@dataclass
class Frame:
    model: CurveModel
    kind: str  # "pivot" or "model"
    S: KSubspace
    w: FFElem
    to_frame: object = None
    alpha: object = None  # w = alpha * t + beta in pivot frames
    beta: object = None


def pivot_frame(S: KSubspace, pivot: PivotChoice) -> Frame:
    model = S.model
    F = model.F
    w = pivot.w
    if model.kind in ("rational", "cover"):
        r = _pivot_ratfunc(w)
        if model.kind == "cover" and r == model.pivot:
            return Frame(model, "pivot", S, w, lambda u: u, F.one, F.zero)
        C = cover_model(F, r)
        if model.kind == "cover":
            conv = lambda u: C.from_base(model.to_base(u))  # noqa: E731
        else:
            conv = C.from_base
        SC = k_span(C, [conv(s) for s in S.basis])
        return Frame(C, "pivot", SC, C.t(), conv, F.one, F.zero)
    c0, c1 = w.coords
    if not c1 and c0.is_poly() and c0.num.deg == 1:
        return Frame(model, "pivot", S, w, lambda u: u, c0.num.coeff(1), c0.num.coeff(0))
    return Frame(model, "model", S, w, lambda u: u)


def _prepare(S, pivot):
    if pivot is None:
        S, _ = normalize_translate(S)
        pivot = select_pivot(S)
    return S, pivot


# -- stabilizer report ----------------------------------------------------------

@dataclass
class StabilizerReport:
    coordinate: str
    k: int
    gamma: int
    hypothesis_met: bool
    n: int
    ell: int
    kappa: int
    tau: int
    dim_KwS: int
    dim_KwS2: int
    L_basis: KxSubspace
    L_is_F: bool
    L_nontrivial: bool
    kw_dim_ok: bool | None
    kneser_ok: bool
    L_field_ok: bool
    lemma_bound: int
    lemma_bound_ok: bool
    lemma_applicable: bool
    N: int
    d: int | None
    d_exact: bool
    frame: Frame = field(repr=False, default=None)
    LS: KxSubspace = field(repr=False, default=None)
    pivot: PivotChoice = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        ok = self.kneser_ok and self.L_field_ok and self.kw_dim_ok is not False
        if self.hypothesis_met and self.generates:
            ok = ok and self.L_is_F
        return ok

    generates: bool | None = None

    def to_json(self):
        return {
            "report_version": 1,
            "coordinate": self.coordinate,
            "k": self.k, "gamma": self.gamma, "hypothesis_met": self.hypothesis_met,
            "n": self.n, "ell": self.ell, "kappa": self.kappa, "tau": self.tau,
            "dim_KwS": self.dim_KwS, "dim_KwS2": self.dim_KwS2,
            "L_basis": [u.fmt() for u in self.L_basis.basis],
            "L_is_F": self.L_is_F, "L_nontrivial": self.L_nontrivial,
            "kw_dim_ok": self.kw_dim_ok, "kneser_ok": self.kneser_ok,
            "L_field_ok": self.L_field_ok,
            "lemma_bound": self.lemma_bound, "lemma_bound_ok": self.lemma_bound_ok,
            "lemma_applicable": self.lemma_applicable,
            "N": self.N, "d": self.d, "d_exact": self.d_exact,
            "generates_field": self.generates, "passed": self.passed,
        }


def _valuation_exponent(frame: Frame, L: KxSubspace, N: int, ell: int):
    """d with v_{Q_inf}(L^*) = dZ, exact when Q_inf is the only pole of w."""
    model = frame.model
    only_pole = frame.kind == "pivot" and N == model.n
    if only_pole:
        if N % ell:
            raise VerificationFailure("ell does not divide N under total ramification")
        d = N // ell
        for u in L.basis:
            if leading_term_inf(u)[0] % d:
                raise VerificationFailure("L valuation outside dZ")
        return d, True
    d = N
    for u in L.basis:
        d = gcd(d, leading_term_inf(u)[0])
    return d, False


def stabilizer_report(S: KSubspace, pivot: PivotChoice | None = None) -> StabilizerReport:
    """L = St(K(w) S^2) together with ell, kappa, tau and the checks around them."""
    S, pivot = _prepare(S, pivot)
    frame = pivot_frame(S, pivot)
    M = frame.model
    k = S.dim
    gamma = combinatorial_genus(S)
    hyp = k >= 3 and 0 <= gamma <= k - 3
    V = kx_span(frame.S)
    V2 = _kx_product_raw(V, V)
    L_field_ok = True
    try:
        L = stabilizer(V2)
    except VerificationFailure:
        L_field_ok = False
        L = stabilizer(V2, check=False)
    ell = L.dim
    LS = _kx_product_raw(L, V)
    if LS.dim % ell:
        raise VerificationFailure("dim LS is not a multiple of [L:K(w)]")
    kappa = LS.dim // ell
    tau = LS.dim - V.dim
    kneser_ok = V2.dim >= 2 * V.dim - ell
    kw_ok = (V.dim == k - 1) if frame.kind == "pivot" else None
    lemma_bound = (2 * kappa - 1) * ell
    N = pivot.local.N
    d, d_exact = _valuation_exponent(frame, L, N, ell) if frame.kind == "pivot" else (None, False)
    pivot.local.d, pivot.local.d_exact = d, d_exact
    rep = StabilizerReport(
        coordinate=frame.kind, k=k, gamma=gamma, hypothesis_met=hyp, n=M.n, ell=ell,
        kappa=kappa, tau=tau, dim_KwS=V.dim, dim_KwS2=V2.dim, L_basis=L,
        L_is_F=ell == M.n, L_nontrivial=ell > 1, kw_dim_ok=kw_ok, kneser_ok=kneser_ok,
        L_field_ok=L_field_ok, lemma_bound=lemma_bound,
        lemma_bound_ok=lemma_bound <= 2 * k - 4,
        lemma_applicable=hyp and ell != M.n, N=N, d=d, d_exact=d_exact,
        frame=frame, LS=LS, pivot=pivot)
    rep.generates = generates_field(S)
    return rep


# -- evaluation report --------------------------------------------------------------

@dataclass
class EvaluationReport:
    fibre_a: object
    points: list
    blocks: list
    S0: KSubspace
    SL: KSubspace
    ell: int
    tau: int
    containment_ok: bool
    equality: bool
    dim_bound_ok: bool
    hypotheses: bool
    kernel_ok: bool | None
    kernel_dim: int | None

    @property
    def passed(self) -> bool:
        ok = self.containment_ok and self.kernel_ok is not False
        if self.hypotheses:
            ok = ok and self.equality and self.dim_bound_ok
        return ok

    def to_json(self, F):
        return {
            "report_version": 1,
            "fibre_a": F.to_json(self.fibre_a),
            "points": [[F.to_json(P.a), F.to_json(P.b)] if P.kind == "point"
                       else [F.to_json(P.a)] for P in self.points],
            "blocks": self.blocks,
            "S0": self.S0.fmt_basis(), "SL": self.SL.fmt_basis(),
            "dim_S0": self.S0.dim, "dim_SL": self.SL.dim,
            "ell": self.ell, "tau": self.tau,
            "containment_ok": self.containment_ok, "equality": self.equality,
            "dim_bound_ok": self.dim_bound_ok, "hypotheses": self.hypotheses,
            "kernel_ok": self.kernel_ok, "kernel_dim": self.kernel_dim,
            "passed": self.passed,
        }


def _denominators(elems):
    out = []
    for u in elems:
        for c in u.coords:
            if c and c.den.deg > 0:
                out.append(c.den)
    return out


def _blocks(points, L, F):
    groups = {}
    order = []
    for idx, P in enumerate(points):
        key = tuple(F.key(evaluate(b, P)) for b in L.basis)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(idx)
    return [groups[key] for key in order]


def _fibre(model, avoid_polys, ell, L, a=None, tries=64):
    F = model.F
    avoid = set()
    for _ in range(tries):
        a0 = find_split_locus(model, avoid=avoid, nonvanishing=avoid_polys, start=a)
        a = None
        fib = split_points(model, a0)
        blocks = _blocks(fib.points, L, F)
        sizes = {len(b) for b in blocks}
        if len(blocks) == ell and len(sizes) == 1:
            return a0, fib.points, blocks
        avoid.add(a0)
    raise ExhaustedSearch("no fibre separates the places of L; extend the base field")


def evaluation_report(S: KSubspace, L: KxSubspace | None = None, a=None,
                      pivot: PivotChoice | None = None,
                      stab: StabilizerReport | None = None) -> EvaluationReport:
    """Blockwise-constant subspace S0 versus S intersect L on a split fibre of w."""
    S, pivot = _prepare(S, pivot)
    if stab is None:
        stab = stabilizer_report(S, pivot)
    frame = stab.frame
    if frame.kind != "pivot" and L is None:
        raise UnsupportedError("evaluation needs a pivot coordinate or an explicit L")
    M = frame.model
    F = M.F
    L = stab.L_basis if L is None else L
    ell = L.dim
    SM = frame.S
    if a is None and pivot.shift is not None and frame.alpha == F.one:
        a = pivot.shift
    avoid_polys = _denominators(SM.basis) + _denominators(L.basis)
    a0, points, blocks = _fibre(M, avoid_polys, ell, L, a)
    E = [[evaluate(s, P) for P in points] for s in SM.basis]
    cons = []
    for blk in blocks:
        for j in blk[1:]:
            cons.append([F.sub(E[i][blk[0]], E[i][j]) for i in range(SM.dim)])
    kern = nullspace_K(cons, F, SM.dim) if cons else \
        [[F.one if i == j else F.zero for j in range(SM.dim)] for i in range(SM.dim)]
    S0 = k_span(M, [_combo(M, c, SM.basis) for c in kern])
    SL = mixed_intersect(SM, L)
    containment = k_contains(S0, SL)
    equality = S0 == SL
    hyp = stab.hypothesis_met and stab.generates is True
    dim_bound_ok = S0.dim >= ell + 1 - stab.tau
    kernel_ok = kernel_dim = None
    if frame.kind == "pivot":
        kernel_ok, kernel_dim = _kernel_check(M, pivot, frame, points, a0)
    return EvaluationReport(a0, points, blocks, S0, SL, ell, stab.tau, containment, equality,
                            dim_bound_ok, hyp, kernel_ok, kernel_dim)


def _combo(model, coeffs, basis):
    acc = model.zero()
    for c, u in zip(coeffs, basis):
        if not model.F.is_zero(c):
            acc = acc + u.scale(c)
    return acc


def _kernel_check(M, pivot, frame, points, a0):
    """The kernel of evaluating L(D) on the fibre is spanned by w - w(fibre)."""
    F = M.F
    if M.kind == "cover":
        from .riemann_roch import Divisor

        D = Divisor(M, pivot.D.entries)
    else:
        D = pivot.D
    try:
        RB = rr_basis(M, D)
    except UnsupportedError:
        return None, None
    E = [[evaluate(u, P) for u in RB.basis] for P in points]
    kern = nullspace_K(E, F, RB.dim)
    if len(kern) != 1:
        return False, len(kern)
    elem = _combo(M, kern[0], RB.basis)
    target = M.t() - M.const(a0)
    ok = k_span(M, [elem]) == k_span(M, [target])
    return ok, 1


# -- A + B + C decomposition -----------------------------------------------------------

@dataclass
class ABCReport:
    s_used: FFElem
    A: KxSubspace
    B: KxSubspace
    C: KxSubspace
    a: int
    b: int
    c: int
    A_cap_S: KSubspace
    Aplus_cap_S: KSubspace
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    iterations: int
    direct_sum_ok: bool
    s_candidates: list

    def to_json(self):
        return {
            "report_version": 1,
            "s_used": self.s_used.fmt(), "a": self.a, "b": self.b, "c": self.c,
            "dim_A_cap_S": self.A_cap_S.dim, "dim_Aplus_cap_S": self.Aplus_cap_S.dim,
            "cond1": self.cond1, "cond2": self.cond2, "cond3": self.cond3,
            "cond4": self.cond4, "iterations": self.iterations,
            "direct_sum_ok": self.direct_sum_ok,
            "s_candidates": [s.fmt() for s in self.s_candidates],
        }


def lsbasis_candidates(SM: KSubspace, L: KxSubspace, d: int, kappa: int) -> list:
    """Elements of S with Q_inf valuations in distinct classes mod d, each maximal in its
    class, that are independent over L (1 first)."""
    chosen, classes = [], set()
    span = None
    for u in filtered_basis(SM):
        v = leading_term_inf(u)[0]
        if v % d in classes:
            continue
        cand = _kx_product_raw(L, kx_span(SM.model, chosen + [u]))
        if span is not None and cand.dim == span.dim:
            continue
        classes.add(v % d)
        chosen.append(u)
        span = cand
        if len(chosen) == kappa:
            break
    return chosen


def _l_complement(L, big: KxSubspace, small: KxSubspace):
    """An L-subspace B with big = small + B (direct)."""
    model = big.model
    cur = small
    gens = []
    for e in big.basis:
        if cur.contains(e):
            continue
        gens.append(e)
        cur = kx_span(model, cur.basis + [b * e for b in L.basis])
    if cur.dim != big.dim:  # pragma: no cover - big is spanned by its basis
        raise VerificationFailure("complement construction failed")
    return kx_span(model, [b * e for e in gens for b in L.basis]) if gens \
        else KxSubspace(model, [], [])


def _multiplier_kernel(space: KxSubspace, s: FFElem, target: KxSubspace) -> KxSubspace:
    """{y in space : y s in target}."""
    model = space.model
    if space.dim == 0:
        return space
    res = [target.residue((b * s).coords) for b in space.basis]
    free = [q for q in range(model.n) if q not in target.pivots]
    rows = [[res[i][q] for i in range(space.dim)] for q in free]
    if not rows:
        return space
    kern = nullspace_Kx(rows, model.F, space.dim)
    elems = []
    for z in kern:
        acc = model.zero()
        for zi, b in zip(z, space.basis):
            if zi:
                acc = acc + b * model.from_ratfunc(zi)
        elems.append(acc)
    return kx_span(model, elems)


def abc_decomposition(S: KSubspace, L: KxSubspace | None = None, s_candidates=None,
                      pivot: PivotChoice | None = None,
                      stab: StabilizerReport | None = None) -> ABCReport:
    """Run the A/B/C iteration on an instance with K(w) < L < F."""
    S, pivot = _prepare(S, pivot)
    if stab is None:
        stab = stabilizer_report(S, pivot)
    frame = stab.frame
    if frame.kind != "pivot":
        raise UnsupportedError("the decomposition needs a pivot coordinate")
    M = frame.model
    L = stab.L_basis if L is None else L
    ell = L.dim
    if ell == 1 or ell == M.n:
        raise PreconditionError("the decomposition needs K(w) < L < F")
    SM = frame.S
    V = kx_span(SM)
    LS = _kx_product_raw(L, V)
    kappa = LS.dim // ell
    d = stab.d or 1
    if s_candidates is None:
        s_candidates = lsbasis_candidates(SM, L, d, kappa)
    else:
        s_candidates = [frame.to_frame(s) for s in s_candidates]
    others = s_candidates[1:]
    if not others:
        raise PreconditionError("no candidate s outside L")
    S0 = mixed_intersect(SM, L)
    k = SM.dim

    def conditions(A, B, C, s):
        cond1 = all(LS.contains(a * s) for a in A.basis)
        Bs = kx_span(M, [b * s for b in B.basis])
        cond2 = kx_span(M, LS.basis + Bs.basis).dim == LS.dim + Bs.dim
        A_S = mixed_intersect(SM, A)
        AB = kx_span(M, A.basis + B.basis)
        Ap_S = mixed_intersect(SM, AB)
        a, c = A.dim // ell, C.dim // ell
        cond3 = A_S.dim <= S0.dim + (a - 1) * ell
        cond4 = Ap_S.dim >= k - c * ell
        return cond1, cond2, cond3, cond4, A_S, Ap_S

    s = others[0]
    A = _multiplier_kernel(LS, s, LS)
    B = _l_complement(L, LS, A)
    C = KxSubspace(M, [], [])
    iterations = 1
    while True:
        conds = conditions(A, B, C, s)
        if all(conds[:4]) or A.dim <= ell:
            break
        nxt = next((t for t in others if not all(LS.contains(a * t) for a in A.basis)), None)
        if nxt is None:
            raise VerificationFailure("A stabilizes LS, so L is not the stabilizer")
        s = nxt
        A_next = _multiplier_kernel(A, s, LS)
        B_next = _l_complement(L, A, A_next)
        C = kx_span(M, B.basis + C.basis)
        A, B = A_next, B_next
        iterations += 1
    cond1, cond2, cond3, cond4, A_S, Ap_S = conds
    direct = kx_span(M, A.basis + B.basis + C.basis).dim == A.dim + B.dim + C.dim == LS.dim
    return ABCReport(s, A, B, C, A.dim // ell, B.dim // ell, C.dim // ell, A_S, Ap_S,
                     cond1, cond2, cond3, cond4, iterations, direct, s_candidates)


# -- Kneser-type bounds ----------------------------------------------------------------

def kneser_bound_checks(S: KSubspace, pivot: PivotChoice | None = None,
                        stab: StabilizerReport | None = None) -> dict:
    S, pivot = _prepare(S, pivot)
    if stab is None:
        stab = stabilizer_report(S, pivot)
    frame = stab.frame
    M = frame.model
    SM = frame.S
    k = SM.dim
    L = stab.L_basis
    ell = L.dim
    S2 = k_square(SM)
    LS = stab.LS
    W = mixed_intersect(S2, LS)
    LW = _kx_product_raw(L, kx_span(W)) if W.dim else KxSubspace(M, [], [])
    wbar = LW.dim // ell
    kappa = stab.kappa
    applicable = wbar <= 2 * kappa - 1
    bound = W.dim + (2 * kappa - 1 - wbar) * ell
    wM = frame.to_frame(pivot.w)
    sum_dim = k_span(M, SM.basis + [wM * s for s in SM.basis]).dim
    return {
        "report_version": 1,
        "coordinate": frame.kind,
        "dim_S2": S2.dim,
        "dim_W": W.dim,
        "wbar": wbar,
        "kappa": kappa,
        "ell": ell,
        "lemma_applicable": applicable,
        "lemma_bound": bound,
        "lemma_ok": (S2.dim >= bound) if applicable else None,
        "sum_dim": sum_dim,
        "sum_ok": sum_dim == 2 * k - 1,
        "freiman_hypothesis": S2.dim <= 3 * k - 4,
    }
