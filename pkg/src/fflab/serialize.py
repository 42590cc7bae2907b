"""JSON encodings and a small expression parser for field elements."""

from __future__ import annotations

import re

from .curves import CurveModel, FFElem, Place, cover_model, hyperelliptic_model, rational_model
from .errors import ConfigError
from .fields import BaseField, field_from_json
from .poly import Poly, RatFunc


def poly_to_json(f: Poly):
    return [f.F.to_json(c) for c in f.c]


def poly_from_json(F: BaseField, v) -> Poly:
    if not isinstance(v, list):
        raise ConfigError(f"polynomial must be a coefficient list, got {v!r}")
    return Poly(F, [F.from_json(c) for c in v])


def ratfunc_to_json(r: RatFunc):
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfunc_from_json(F: BaseField, v) -> RatFunc:
    if isinstance(v, list):
        return RatFunc(poly_from_json(F, v))
    if not isinstance(v, dict) or "num" not in v:
        raise ConfigError(f"bad rational function {v!r}")
    den = poly_from_json(F, v.get("den", [F.to_json(F.one)]))
    if not den:
        raise ConfigError("rational function with zero denominator")
    return RatFunc(poly_from_json(F, v["num"]), den)


def model_to_json(model: CurveModel):
    d = {"kind": model.kind, "field": model.F.describe()}
    if model.f is not None:
        d["f"] = poly_to_json(model.f)
    if model.pivot is not None:
        d["pivot"] = ratfunc_to_json(model.pivot)
    return d


def model_from_json(d) -> CurveModel:
    if not isinstance(d, dict) or "kind" not in d or "field" not in d:
        raise ConfigError(f"bad curve model {d!r}")
    F = field_from_json(d["field"])
    kind = d["kind"]
    if kind == "rational":
        return rational_model(F)
    if kind == "hyperelliptic":
        if "f" not in d:
            raise ConfigError("hyperelliptic model needs f")
        return hyperelliptic_model(F, poly_from_json(F, d["f"]))
    if kind == "cover":
        if "pivot" not in d:
            raise ConfigError("cover model needs a pivot")
        return cover_model(F, ratfunc_from_json(F, d["pivot"]))
    raise ConfigError(f"unknown model kind {kind!r}")


def elem_to_json(u: FFElem):
    return [ratfunc_to_json(c) for c in u.coords]


def elem_from_json(model: CurveModel, v) -> FFElem:
    if isinstance(v, str):
        return parse_element(model, v)
    if not isinstance(v, list):
        raise ConfigError(f"bad element {v!r}")
    return model.elem([ratfunc_from_json(model.F, c) for c in v])


def place_to_json(P: Place, F: BaseField):
    d = {"kind": P.kind}
    if P.a is not None:
        d["a"] = F.to_json(P.a)
    if P.b is not None:
        d["b"] = F.to_json(P.b)
    return d


def place_from_json(d, F: BaseField) -> Place:
    if not isinstance(d, dict) or d.get("kind") not in ("inf0", "finite0", "inf_hyp", "point"):
        raise ConfigError(f"bad place {d!r}")
    a = F.from_json(d["a"]) if "a" in d else None
    b = F.from_json(d["b"]) if "b" in d else None
    return Place(d["kind"], a, b)


# -- expression parser --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]+)|(\S))")


def _tokenize(s):
    out = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise ConfigError(f"unexpected character {op!r} in {s!r}")
            out.append(("op", op))
    return out


class _Parser:
    """Recursive-descent parser: expr := term (+|- term)*, term := unary (*|/ unary)*,
    unary := -unary | power, power := atom (^ int)?."""

    def __init__(self, model: CurveModel, text: str):
        self.target = model
        self.model = model.base if model.kind == "cover" else model
        self.F = model.F
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        if self.take() != ("op", op):
            raise ConfigError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ConfigError("empty expression")
        u = self.expr()
        if self.i != len(self.toks):
            raise ConfigError(f"trailing input in {self.text!r}")
        return self.target.from_base(u) if self.target.kind == "cover" else u

    def expr(self):
        u = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            v = self.term()
            u = u + v if op == "+" else u - v
        return u

    def term(self):
        u = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            v = self.unary()
            if op == "*":
                u = u * v
            else:
                if v.is_zero():
                    raise ConfigError(f"division by zero in {self.text!r}")
                u = u / v
        return u

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        u = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                raise ConfigError(f"exponent must be an integer in {self.text!r}")
            if neg and u.is_zero():
                raise ConfigError(f"division by zero in {self.text!r}")
            u = u ** (-val if neg else val)
        return u

    def atom(self):
        kind, val = self.take()
        m = self.model
        if kind == "num":
            return m.const(self.F(val))
        if kind == "name":
            if val == "x":
                return m.t()
            if val == "y" and m.n > 1:
                return m.y()
            if val == "a" and self.F.m > 1:
                return m.const(self.F.from_index(self.F.p))
            raise ConfigError(f"unknown symbol {val!r} in {self.text!r}")
        if (kind, val) == ("op", "("):
            u = self.expr()
            self.expect(")")
            return u
        raise ConfigError(f"unexpected token {val!r} in {self.text!r}")


def parse_element(model: CurveModel, text: str) -> FFElem:
    """Parse e.g. ``"x^2+3*x*y-1"``; cover models read expressions in x."""
    return _Parser(model, text).parse()
