"""Integer-set side: sumsets, the classical 3k-4 theorem, Kneser mod n, and the
monomial bridge to function-field subspaces."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .curves import rational_model
from .errors import ConfigError, PreconditionError, VerificationFailure
from .fields import QQ, BaseField

MAX_SIZE = 64
MAX_ELEMENT = 512
MAX_MODULUS = 4096


def int_set(values) -> tuple:
    out = sorted(set(int(v) for v in values))
    if any(v < 0 for v in out):
        raise ConfigError("sets must contain non-negative integers")
    if len(out) > MAX_SIZE or (out and out[-1] > MAX_ELEMENT):
        raise ConfigError(f"set exceeds the caps |A| <= {MAX_SIZE}, max A <= {MAX_ELEMENT}")
    return tuple(out)


def parse_set(text: str) -> tuple:
    try:
        return int_set(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ConfigError(f"bad set literal {text!r}")


def normalize(A) -> tuple:
    """(A', shift, scale) with A' = (A - shift) / scale, min A' = 0, gcd A' = 1."""
    A = int_set(A)
    if not A:
        raise PreconditionError("cannot normalize the empty set")
    shift = A[0]
    g = 0
    for a in A:
        g = gcd(g, a - shift)
    scale = g or 1
    return tuple((a - shift) // scale for a in A), shift, scale


def is_normalized(A) -> bool:
    return bool(A) and A[0] == 0 and (len(A) == 1 or gcd(*A) == 1)


def sumset(A, B) -> tuple:
    return tuple(sorted({a + b for a in A for b in B}))


def additive_genus(A) -> int:
    return len(sumset(A, A)) - 2 * len(A) + 1


def freiman_3k4_verify(A) -> dict:
    """If gamma <= |A| - 3 then max A <= |A| - 1 + gamma (after normalizing)."""
    A = int_set(A)
    if len(A) < 3:
        raise PreconditionError("3k-4 verification needs |A| >= 3")
    An, shift, scale = normalize(A)
    k = len(An)
    gamma = additive_genus(An)
    hyp = gamma <= k - 3
    ap_ok = An[-1] <= k - 1 + gamma
    if hyp and not ap_ok:
        raise VerificationFailure(f"3k-4 conclusion fails for {An}")
    return {
        "A": list(An), "shift": shift, "scale": scale, "k": k,
        "sumset_size": len(sumset(An, An)), "gamma": gamma, "hypothesis_met": hyp,
        "max": An[-1], "gaps": An[-1] + 1 - k, "ap_cover_ok": ap_ok,
    }


def kneser_mod(A, n: int) -> dict:
    """Stabilizer H of A~ + A~ in Z/nZ and the bound |A~+A~| >= 2|A~| - |H|."""
    if n < 1 or n > MAX_MODULUS:
        raise ConfigError(f"modulus must be in 1..{MAX_MODULUS}")
    At = sorted({a % n for a in A})
    if not At:
        raise PreconditionError("kneser_mod needs a nonempty set")
    S = {(a + b) % n for a in At for b in At}
    H = [h for h in range(n) if all((s + h) % n in S for s in S)]
    d = n
    for h in H:
        d = gcd(d, h)
    if set(H) != set(range(0, n, d)):
        raise VerificationFailure("period set is not a subgroup")
    if {(s + h) % n for s in S for h in H} != S:
        raise VerificationFailure("A~+A~+H != A~+A~")
    bound_ok = len(S) >= 2 * len(At) - len(H)
    if not bound_ok:
        raise VerificationFailure("Kneser bound fails")
    return {"n": n, "A_mod": At, "sumset_mod": sorted(S), "sumset_size": len(S),
            "H": H, "d": d, "order": len(H), "bound_ok": bound_ok}


def lev_smeliansky_report(A) -> dict:
    """Reduce a normalized A modulo n = max A and compare |A~+A~| with |A~| + gamma."""
    A = int_set(A)
    if not is_normalized(A) or len(A) < 2:
        raise PreconditionError("needs a normalized set with |A| >= 2")
    n = A[-1]
    At = sorted({a % n for a in A})
    k = len(A)
    gamma = additive_genus(A)
    S = {(a + b) % n for a in At for b in At}
    hyp = gamma <= k - 3
    first = len(S) <= len(At) + gamma
    second = len(At) + gamma <= 2 * len(At) - 2
    if hyp and not (first and second):
        raise VerificationFailure(f"reduction inequalities fail for {A}")
    return {"A": list(A), "n": n, "A_mod_size": len(At), "sumset_mod_size": len(S),
            "gamma": gamma, "hypothesis_met": hyp, "reduced_le_size_plus_gamma": first,
            "size_plus_gamma_le_bound": second, "full_group": len(S) == n,
            "kneser": kneser_mod(A, n)}


@dataclass
class BridgeReport:
    A: tuple
    gamma_add: int
    gamma_ff: int
    sumset_size: int
    dimS2: int
    ap_cover_ok: bool
    codim: int
    hypothesis_met: bool
    theorem_passed: bool
    verdicts_agree: bool
    D_ok: bool
    rr_dim: int

    def to_json(self):
        return {
            "report_version": 1, "A": list(self.A), "gamma_add": self.gamma_add,
            "gamma_ff": self.gamma_ff, "sumset_size": self.sumset_size, "dimS2": self.dimS2,
            "ap_cover_ok": self.ap_cover_ok, "codim": self.codim,
            "hypothesis_met": self.hypothesis_met, "theorem_passed": self.theorem_passed,
            "verdicts_agree": self.verdicts_agree, "D_ok": self.D_ok, "rr_dim": self.rr_dim,
        }


def monomial_bridge(A, base: BaseField = QQ) -> BridgeReport:
    """Compare A with S = span{x^a : a in A} on the rational model."""
    from .curves import INF0
    from .freiman import verify_theorem
    from .subspaces import k_span, k_square

    A = int_set(A)
    if not is_normalized(A):
        raise PreconditionError("monomial_bridge needs a normalized set")
    model = rational_model(base)
    S = k_span(model, [model.monomial(a) for a in A])
    if S.dim != len(A):
        raise VerificationFailure("monomials are not independent")
    AA = sumset(A, A)
    dimS2 = k_square(S).dim
    gamma_add = len(AA) - 2 * len(A) + 1
    gamma_ff = dimS2 - 2 * S.dim + 1
    if dimS2 != len(AA) or gamma_ff != gamma_add:
        raise VerificationFailure(f"dim S^2 = {dimS2} but |A+A| = {len(AA)}")
    gaps = A[-1] + 1 - len(A)
    rep = verify_theorem(S, strict=True, with_pivot=False)
    D_ok = rep.D.entries == {INF0: A[-1]} if A[-1] > 0 else not rep.D.entries
    if not D_ok or rep.rr_dim != A[-1] + 1 or rep.codim != gaps:
        raise VerificationFailure("minimal divisor or codimension disagrees with A")
    hyp = len(A) >= 3 and gamma_add <= len(A) - 3
    ap_ok = A[-1] <= len(A) - 1 + gamma_add
    agree = True
    if len(A) >= 3:
        classical = freiman_3k4_verify(A)
        agree = classical["hypothesis_met"] == rep.hypothesis_met and \
            (not rep.asserted or classical["ap_cover_ok"] == rep.passed)
        if not agree:
            raise VerificationFailure("additive and function-field verdicts disagree")
    return BridgeReport(A, gamma_add, gamma_ff, len(AA), dimS2, ap_ok, gaps, hyp,
                        rep.passed, agree, D_ok, rep.rr_dim)
