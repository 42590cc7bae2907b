"""Random instance generators and the instance/search-config file formats."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .curves import CurveModel, default_hyperelliptic_f, hyperelliptic_model, rational_model
from .errors import ConfigError
from .fields import BaseField, is_prime, make_field
from .riemann_roch import infinity_divisor, rr_basis
from .rng import XorShift64Star
from .serialize import elem_from_json, elem_to_json, model_from_json, model_to_json
from .subspaces import KSubspace, k_span

MAX_SEARCH_DIM = 24
MAX_TRIALS = 1_000_000


@dataclass
class Instance:
    model: CurveModel
    gens: list
    normalize: bool = True
    assert_mode: bool = True
    family: str = "explicit"

    def subspace(self) -> KSubspace:
        return k_span(self.model, self.gens)

    def to_json(self):
        return {
            "model": model_to_json(self.model),
            "subspace": [elem_to_json(u) for u in self.gens],
            "options": {"normalize": self.normalize, "assert": self.assert_mode},
        }


def instance_from_json(d) -> Instance:
    if not isinstance(d, dict) or "model" not in d or "subspace" not in d:
        raise ConfigError("instance needs 'model' and 'subspace'")
    model = model_from_json(d["model"])
    if not isinstance(d["subspace"], list) or not d["subspace"]:
        raise ConfigError("'subspace' must be a nonempty list of elements")
    gens = [elem_from_json(model, v) for v in d["subspace"]]
    opts = d.get("options", {})
    if not isinstance(opts, dict):
        raise ConfigError("'options' must be an object")
    for key in opts:
        if key not in ("normalize", "assert"):
            raise ConfigError(f"unknown option {key!r}")
        if not isinstance(opts[key], bool):
            raise ConfigError(f"option {key!r} must be a boolean")
    return Instance(model, gens, opts.get("normalize", True), opts.get("assert", True))


def load_instance(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}")
    return instance_from_json(d)


# -- random generation ----------------------------------------------------------

def random_scalar(F: BaseField, rng: XorShift64Star, nonzero: bool = False):
    if F.is_finite:
        q = F.q
        if nonzero:
            return F.from_index(1 + rng.randrange(q - 1))
        return F.from_index(rng.randrange(q))
    lo = 1 if nonzero else 0
    v = rng.randint(lo, 9)
    return F(-v if rng.randrange(2) else v)


def _random_combination(model, basis, rng):
    u = model.zero()
    for b in basis:
        c = random_scalar(model.F, rng)
        if not model.F.is_zero(c):
            u = u + b.scale(c)
    return u


def random_subspace_containing(model: CurveModel, ambient: list, fixed: list, k: int,
                               rng: XorShift64Star, tries: int = 64) -> list:
    """``fixed`` plus random elements of span(ambient) until the span has dim k."""
    gens = list(fixed)
    dim = k_span(model, gens).dim if gens else 0
    for _ in range(tries * k):
        if dim == k:
            return gens
        u = _random_combination(model, ambient, rng)
        new = k_span(model, gens + [u]).dim
        if new > dim:
            gens.append(u)
            dim = new
    raise ConfigError("could not draw an independent subspace; field too small")


def genus0_instance(F: BaseField, k: int, c: int, rng: XorShift64Star) -> Instance:
    """Codim-c subspace of L(n*inf) containing 1 with n = k - 1 + c."""
    model = rational_model(F)
    n = k - 1 + c
    ambient = [model.monomial(i) for i in range(1, n + 1)]
    gens = random_subspace_containing(model, ambient, [model.one()], k, rng)
    return Instance(model, gens, family="genus0")


def power_pivot_instance(F: BaseField, k: int, c: int, rng: XorShift64Star) -> Instance:
    """Like genus0_instance but with x^n in S, so the pivot x^n has split fibres
    whenever n divides q - 1."""
    model = rational_model(F)
    n = k - 1 + c
    if n < 1 or k < 2:
        raise ConfigError("power-pivot instances need k >= 2")
    ambient = [model.monomial(i) for i in range(1, n)]
    gens = random_subspace_containing(model, ambient, [model.one(), model.monomial(n)], k, rng)
    return Instance(model, gens, family="power-pivot")


def monomial_instance(F: BaseField, k: int, c: int, rng: XorShift64Star) -> Instance:
    """span{x^a : a in A} with 0, n in A, |A| = k, n = k - 1 + c."""
    model = rational_model(F)
    n = k - 1 + c
    if k == 1:
        A = [0]
    else:
        A = sorted([0, n] + rng.sample(range(1, n), k - 2))
    return Instance(model, [model.monomial(a) for a in A], family="monomial")


def hyperelliptic_instance(F: BaseField, genus: int, k: int, c: int,
                           rng: XorShift64Star) -> Instance:
    """Subspace of L(n*Pinf) containing {1, x, y}, codim c when n allows it."""
    if k < 3:
        raise ConfigError("hyperelliptic instances need k >= 3")
    model = hyperelliptic_model(F, default_hyperelliptic_f(F, genus))
    n = max(k + c - 1 + genus, 2 * genus + 1)
    ambient = rr_basis(model, infinity_divisor(model, n)).basis
    fixed = [model.one(), model.t(), model.y()]
    gens = random_subspace_containing(model, ambient, fixed, k, rng)
    return Instance(model, gens, family=f"genus{genus}")


@dataclass
class SearchConfig:
    seed: int = 0
    trials: int = 100
    char: int = 101
    ext: int = 1
    genus: int = 0
    k_range: tuple = (3, 8)
    codim_range: tuple = (0, 3)

    def validate(self):
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not 0 <= self.trials <= MAX_TRIALS:
            raise ConfigError(f"trials must be in 0..{MAX_TRIALS}")
        if self.genus not in (0, 1, 2):
            raise ConfigError(f"genus {self.genus} is not supported (0, 1, 2)")
        if not is_prime(self.char):
            raise ConfigError(f"char {self.char} is not prime")
        if self.genus > 0 and self.char == 2:
            raise ConfigError("hyperelliptic models need odd characteristic")
        lo, hi = self.k_range
        if not 1 <= lo <= hi:
            raise ConfigError("k_range must satisfy 1 <= min <= max")
        if self.genus > 0 and lo < 3:
            raise ConfigError("hyperelliptic searches need k >= 3")
        clo, chi = self.codim_range
        if not 0 <= clo <= chi:
            raise ConfigError("codim_range must satisfy 0 <= min <= max")
        if hi + chi + self.genus > MAX_SEARCH_DIM:
            raise ConfigError(f"k + codim + genus must stay <= {MAX_SEARCH_DIM}")
        return make_field(self.char, self.ext)

    def to_json(self):
        return {"seed": self.seed, "trials": self.trials, "char": self.char,
                "ext": self.ext, "genus": self.genus, "k_range": list(self.k_range),
                "codim_range": list(self.codim_range)}


def search_instance(cfg: SearchConfig, F: BaseField, rng: XorShift64Star) -> Instance:
    """One trial: genus-0 trials are monomial sets one time in four."""
    k = rng.randint(*cfg.k_range)
    c = rng.randint(*cfg.codim_range)
    if cfg.genus == 0:
        if rng.randrange(4) == 0:
            return monomial_instance(F, k, c, rng)
        return genus0_instance(F, k, c, rng)
    return hyperelliptic_instance(F, cfg.genus, k, c, rng)
