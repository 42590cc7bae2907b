"""Command-line entry point: ``fflab <subcommand> ...``.

Exit codes: 0 ok, 2 input error, 3 assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool

from .additive import kneser_mod, monomial_bridge, normalize, parse_set
from .curves import default_hyperelliptic_f, hyperelliptic_model, rational_model
from .errors import (ConfigError, ExhaustedSearch, PreconditionError, UnsupportedError,
                     VerificationFailure)
from .exploration import evaluation_report, stabilizer_report
from .fields import QQ, make_field
from .freiman import TheoremFailure, is_normalized, verify_theorem
from .instances import Instance, SearchConfig, load_instance, search_instance
from .riemann_roch import infinity_divisor, rr_basis
from .rng import trial_rng
from .serialize import model_from_json

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ASSERT = 3

INPUT_ERRORS = (ConfigError, PreconditionError, UnsupportedError, ExhaustedSearch)


def _emit(doc):
    print(json.dumps(doc, indent=2))


def _field(char: int, ext: int = 1):
    return QQ if char == 0 else make_field(char, ext)


def _range(text: str):
    try:
        lo, hi = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN,MAX, got {text!r}")
    return lo, hi


def _set_instance(text: str, char: int) -> Instance:
    model = rational_model(_field(char))
    A = parse_set(text)
    if not A:
        raise ConfigError("empty set")
    return Instance(model, [model.monomial(a) for a in A], family="monomial")


def _instance_subspace(inst: Instance):
    S = inst.subspace()
    if not inst.normalize and not is_normalized(S):
        raise ConfigError("options.normalize is false but the subspace is not normalized")
    return S


def _subspace_from_args(args):
    if (args.instance is None) == (args.set is None):
        raise ConfigError("give exactly one of --instance or --set")
    if args.instance is not None:
        return _instance_subspace(load_instance(args.instance))
    return _set_instance(args.set, args.char).subspace()


# -- subcommands -----------------------------------------------------------------

def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    S = _instance_subspace(inst)
    try:
        rep = verify_theorem(S, strict=inst.assert_mode)
    except TheoremFailure as exc:
        _emit(exc.report.to_json(inst.to_json()))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    _emit(rep.to_json(inst.to_json()))
    return EXIT_OK


def cmd_bridge(args) -> int:
    A = parse_set(args.set)
    if not A:
        raise ConfigError("empty set")
    An, shift, scale = normalize(A)
    rep = monomial_bridge(An, _field(args.char))
    doc = rep.to_json()
    doc["input"] = list(A)
    doc["shift"], doc["scale"] = shift, scale
    if len(An) < 3:
        doc["note"] = "|A| < 3: report only, no verification"
    _emit(doc)
    return EXIT_OK


def _search_trial(job):
    cfg, index, with_instances = job
    F = _field(cfg.char, cfg.ext)
    rng = trial_rng(cfg.seed, index)
    line = {"trial": index, "seed": cfg.seed + index}
    inst = None
    try:
        inst = search_instance(cfg, F, rng)
        line["family"] = inst.family
        rep = verify_theorem(inst.subspace(), strict=False)
    except (ExhaustedSearch, UnsupportedError) as exc:
        line["error"] = str(exc)
        return line, False
    failed = not rep.passed
    line["report"] = rep.to_json(inst.to_json() if failed or with_instances else None)
    return line, failed


def cmd_search(args) -> int:
    cfg = SearchConfig(args.seed, args.trials, args.char, args.ext, args.genus,
                       args.k_range, args.codim_range)
    cfg.validate()
    jobs = [(cfg, i, args.with_instances) for i in range(cfg.trials)]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            results = pool.imap(_search_trial, jobs, chunksize=4)
            return _write_lines(results)
    return _write_lines(map(_search_trial, jobs))


def _write_lines(results) -> int:
    for line, failed in results:
        sys.stdout.write(json.dumps(line, separators=(",", ":")) + "\n")
        if failed:
            sys.stdout.flush()
            print(f"error: trial {line['trial']} fails the theorem check", file=sys.stderr)
            return EXIT_ASSERT
    return EXIT_OK


def cmd_rr(args) -> int:
    if args.curve is not None:
        try:
            with open(args.curve, encoding="utf-8") as fh:
                model = model_from_json(json.load(fh))
        except OSError as exc:
            raise ConfigError(f"cannot read {args.curve}: {exc.strerror}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {args.curve}: {exc}")
    elif args.genus == 0:
        model = rational_model(_field(args.char))
    elif args.genus in (1, 2):
        if args.char == 0:
            raise ConfigError("hyperelliptic models need a finite field here")
        F = make_field(args.char)
        model = hyperelliptic_model(F, default_hyperelliptic_f(F, args.genus))
    else:
        raise ConfigError(f"genus {args.genus} is not supported (0, 1, 2)")
    rb = rr_basis(model, infinity_divisor(model, args.n))
    _emit({"report_version": 1, "genus": model.genus, "n": args.n,
           "divisor": rb.divisor.to_json(), "dim": rb.dim,
           "basis": [u.fmt() for u in rb.basis]})
    return EXIT_OK


def cmd_stabilizer(args) -> int:
    rep = stabilizer_report(_subspace_from_args(args))
    _emit(rep.to_json())
    return EXIT_OK if rep.passed else EXIT_ASSERT


def cmd_kneser_mod(args) -> int:
    A = parse_set(args.set)
    _emit({"report_version": 1, **kneser_mod(A, args.mod)})
    return EXIT_OK


def cmd_eval_report(args) -> int:
    S = _subspace_from_args(args)
    rep = evaluation_report(S)
    _emit(rep.to_json(S.model.F))
    return EXIT_OK if rep.passed else EXIT_ASSERT


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fflab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the genus/codimension conclusions on an instance")
    p.add_argument("instance", help="instance JSON file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bridge", help="compare an integer set with its monomial subspace")
    p.add_argument("--set", required=True, help="comma-separated integers")
    p.add_argument("--char", type=int, default=0, help="0 for Q (default) or a prime")
    p.set_defaults(func=cmd_bridge)

    p = sub.add_parser("search", help="seeded random search, one JSON line per trial")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--char", type=int, default=101)
    p.add_argument("--ext", type=int, default=1)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--k-range", type=_range, default=(3, 8), metavar="MIN,MAX")
    p.add_argument("--codim-range", type=_range, default=(0, 3), metavar="MIN,MAX")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")
    p.add_argument("--with-instances", action="store_true",
                   help="echo every trial's instance, not only failing ones")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("rr", help="basis of L(n*Qinf)")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--char", type=int, default=101)
    p.add_argument("--curve", help="model JSON file (overrides --genus/--char)")
    p.set_defaults(func=cmd_rr)

    for name, func, char, help_ in (
            ("stabilizer", cmd_stabilizer, 0, "stabilizer of K(w)S^2"),
            ("eval-report", cmd_eval_report, 2521, "fibre evaluation of S and S cap L")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--instance", help="instance JSON file")
        p.add_argument("--set", help="comma-separated exponents of a monomial subspace")
        p.add_argument("--char", type=int, default=char, help=f"field for --set (default {char})")
        p.set_defaults(func=func)

    p = sub.add_parser("kneser-mod", help="stabilizer of A+A in Z/nZ")
    p.add_argument("--set", required=True)
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(func=cmd_kneser_mod)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
