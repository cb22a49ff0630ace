"""Command-line entry point.

Exit codes: 0 everything checked passes or the construction succeeded,
1 a check failed (the report on stdout carries a witness), 2 usage or
input error, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import constructions as cons
from .axioms import AXIOMS, check_identity, check_profile
from .catalog import full_catalog, catalog_entry, truncated_polynomial_algebra
from .core import AlgebraBundle, Element, LinearMap
from .fields import field_from_descriptor
from .formats import (FormatError, bundle_to_json, emit_algebra, emit_report, map_to_json, op_to_json,
                      parse_algebra)
from .linsolve import compatible_symmetric_products, joint_derivation_space
from .search import SearchReport, find_involutive_antimorphisms, sample_tpa_instances, test_conjecture_ladder

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

CONSTRUCT_KINDS = ("commutator", "gelfand", "derivation-bracket", "two-derivation-bracket", "rescale",
                   "hom-lie", "tensor", "3lie-derivation", "3lie-involution", "3lie-poisson",
                   "ladder-step", "wedge")


class UsageError(Exception):
    pass


def _load(path: str) -> AlgebraBundle:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_algebra(data)


def _write(data: bytes, out: str | None):
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _bindings(pairs) -> dict:
    out = {}
    for p in pairs or []:
        role, sep, name = p.partition("=")
        if not sep or not role or not name:
            raise UsageError(f"--bind expects role=name, got {p!r}")
        out[role] = name
    return out


def _element(bundle: AlgebraBundle, text: str) -> Element:
    """A basis label, or comma-separated coefficients."""
    if text in bundle.space.labels:
        return bundle.element(text)
    parts = [s for s in text.split(",")]
    if len(parts) != bundle.dim:
        raise UsageError(f"--h must be a basis label or {bundle.dim} comma-separated scalars")
    return Element([bundle.field.parse(s) for s in parts], bundle.field)


def _map(bundle: AlgebraBundle, name: str) -> LinearMap:
    if name == "Id":
        return LinearMap.identity(bundle.dim, bundle.field)
    if name not in bundle.maps:
        raise UsageError(f"no map named {name!r}; have {sorted(bundle.maps)}")
    return bundle.maps[name]


def _op(bundle: AlgebraBundle, name: str):
    if name not in bundle.ops:
        raise UsageError(f"no op named {name!r}; have {sorted(bundle.ops)}")
    return bundle.ops[name]


def _emit_results(results, subject: str) -> int:
    _write(emit_report(results, subject), None)
    ok = all(getattr(r, "holds", True) for r in results if not isinstance(r, SearchReport))
    ok = ok and all(r.verdict != "counterexample-found" for r in results if isinstance(r, SearchReport))
    return EXIT_OK if ok else EXIT_FAIL


# -- subcommands ------------------------------------------------------------------------------

def cmd_check(args) -> int:
    bundle = _load(args.file)
    binding = _bindings(args.bind)
    if args.axiom:
        if args.axiom not in AXIOMS:
            raise UsageError(f"unknown axiom {args.axiom!r}")
        results = [check_identity(bundle, args.axiom, binding, prune=not args.no_prune)]
    else:
        results = check_profile(bundle, args.profile, binding, prune=not args.no_prune)
    return _emit_results(results, args.file)


def cmd_derivations(args) -> int:
    bundle = _load(args.file)
    ops = [s for s in args.ops.split(",") if s]
    comm = _map(bundle, args.commuting_with) if args.commuting_with else None
    space = joint_derivation_space(bundle, ops, comm)
    doc = {"format": "tpa-report/1", "subject": args.file,
           "results": [{"kind": "derivations", "ops": ops, "commuting_with": args.commuting_with,
                        "dimension": space.dimension,
                        "basis": [map_to_json(m.renamed(f"D{i + 1}"))
                                  for i, m in enumerate(space.members())]}]}
    _write((json.dumps(doc, sort_keys=True, indent=2) + "\n").encode(), None)
    return EXIT_OK


def cmd_solve(args) -> int:
    bundle = _load(args.file)
    space = compatible_symmetric_products(_op(bundle, args.bracket), args.rule)
    doc = {"format": "tpa-report/1", "subject": args.file,
           "results": [{"kind": "compatible-products", "rule": args.rule,
                        "dimension": space.dimension,
                        "basis": [op_to_json(op) for op in space.members()]}]}
    _write((json.dumps(doc, sort_keys=True, indent=2) + "\n").encode(), None)
    return EXIT_OK


def _construct(kind: str, bundle: AlgebraBundle, args) -> AlgebraBundle:
    mul = lambda: _op(bundle, args.mul)  # noqa: E731
    bracket = lambda: _op(bundle, args.bracket)  # noqa: E731
    maps = args.map or []

    def one_map():
        if len(maps) != 1:
            raise UsageError(f"{kind} needs exactly one --map")
        return _map(bundle, maps[0])

    def h():
        if not args.h:
            raise UsageError(f"{kind} needs --h")
        return _element(bundle, args.h)

    name = args.name
    if kind == "commutator":
        return bundle.with_op(cons.commutator_bracket(_op(bundle, args.circ)), name or "bracket")
    if kind == "gelfand":
        return bundle.with_op(cons.gelfand_product(mul(), one_map()), name or "circ")
    if kind == "derivation-bracket":
        return bundle.with_op(cons.derivation_bracket(mul(), one_map()), name or "bracket")
    if kind == "two-derivation-bracket":
        if len(maps) != 2:
            raise UsageError("two-derivation-bracket needs two --map options")
        return bundle.with_op(cons.two_derivation_bracket(mul(), _map(bundle, maps[0]),
                                                          _map(bundle, maps[1])), name or "bracket")
    if kind == "rescale":
        return bundle.with_op(cons.rescaled_bracket(mul(), bracket(), h()), name or "bracket_h")
    if kind == "hom-lie":
        phi, reports = cons.hom_lie_structure(mul(), bracket(), h())
        bad = [r for r in reports.values() if not r.holds]
        if bad:
            raise cons.PreconditionError(f"{bad[0].axiom} fails", bad[0])
        return bundle.with_map(phi, name or "phi")
    if kind == "tensor":
        if not args.other:
            raise UsageError("tensor needs --other FILE")
        return cons.tensor_mixed(bundle, _load(args.other), args.mul, args.bracket)
    if kind == "3lie-derivation":
        base = "StrongPoisson" if args.strong else "TransposedPoisson"
        return bundle.with_op(cons.three_lie_from_derivation(mul(), bracket(), one_map(), base=base),
                              name or "mu")
    if kind == "3lie-involution":
        op, reports = cons.three_lie_from_involution(mul(), bracket(), one_map())
        bad = [r for r in reports.values() if not r.holds and r.axiom == "fundamental_identity"]
        if bad:
            raise cons.PreconditionError("output fails the fundamental identity", bad[0])
        return bundle.with_op(op, name or "mu")
    if kind == "3lie-poisson":
        return bundle.with_op(cons.three_lie_from_poisson(mul(), bracket()), name or "mu")
    if kind == "ladder-step":
        mu = _op(bundle, args.mu)
        return bundle.with_op(cons.nlie_ladder_step(mul(), mu, one_map()), name or f"mu{mu.arity + 1}")
    if kind == "wedge":
        if not maps:
            raise UsageError("wedge needs --map options (Id allowed)")
        return bundle.with_op(cons.wedge_bracket([_map(bundle, m) for m in maps], mul()), name or "mu")
    raise UsageError(f"unknown construction {kind!r}")


def cmd_construct(args) -> int:
    bundle = _construct(args.kind, _load(args.file), args)
    _write(emit_algebra(bundle), args.out)
    return EXIT_OK


def cmd_tensor(args) -> int:
    out = cons.tensor_mixed(_load(args.file_a), _load(args.file_b), args.mul, args.op)
    _write(emit_algebra(out), args.out)
    return EXIT_OK


def cmd_ladder(args) -> int:
    bundle = _load(args.file)
    ders = [s for s in args.derivations.split(",") if s]
    report = test_conjecture_ladder(bundle, args.levels, args.mul, args.mu,
                                    ders[0] if len(ders) == 1 else ders)
    return _emit_results([report], args.file)


def _caps_for(dim: int) -> list:
    k = int(math.log2(dim)) if dim > 1 else 0
    if dim > 2 and 2 ** k == dim:
        return [2] * k
    return [dim]


def cmd_fuzz(args) -> int:
    field = field_from_descriptor(args.field)
    if args.target == "involutions":
        if args.file:
            bundles = [_load(args.file).over(field)]
        else:
            bundles = sample_tpa_instances({"kind": "truncated-poly", "caps": _caps_for(args.dim)},
                                           args.seed, args.count, field)
        reports = []
        for b in bundles:
            r = find_involutive_antimorphisms(b, budget=args.budget, max_dim=max(3, args.dim))
            r.seed = args.seed
            reports.append(r)
        return _emit_results(reports, args.file or f"truncated-poly dim {args.dim}")
    if args.target == "tpa-samples":
        bundles = sample_tpa_instances({"kind": "truncated-poly", "caps": _caps_for(args.dim)},
                                       args.seed, args.count, field)
        doc = {"format": "tpa-report/1", "subject": f"truncated-poly dim {args.dim}",
               "results": [{"kind": "samples", "seed": args.seed,
                            "bundles": [bundle_to_json(b) for b in bundles]}]}
        _write((json.dumps(doc, sort_keys=True, indent=2) + "\n").encode(), None)
        return EXIT_OK
    if args.target == "ladder":
        bundles = sample_tpa_instances({"kind": "truncated-poly", "caps": _caps_for(args.dim)},
                                       args.seed, args.count, field)
        reports = []
        for b in bundles:
            r = test_conjecture_ladder(b, args.levels, derivations="D")
            r.seed = args.seed
            reports.append(r)
        return _emit_results(reports, f"truncated-poly dim {args.dim}")
    raise UsageError(f"unknown fuzz target {args.target!r}")


def cmd_catalog(args) -> int:
    field = field_from_descriptor(args.field)
    if args.action == "list":
        for e in full_catalog(field):
            sys.stdout.write(f"{e.id}\t{e.description}\n")
        return EXIT_OK
    if not args.id:
        raise UsageError("catalog emit needs an entry id")
    _write(emit_algebra(catalog_entry(args.id, field).bundle), args.out)
    return EXIT_OK


def cmd_poly(args) -> int:
    names = [s for s in args.vars.split(",") if s]
    caps = [int(s) for s in args.caps.split(",")]
    field = field_from_descriptor(args.field)
    _write(emit_algebra(truncated_polynomial_algebra(names, caps, field)), args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tpalg", description="Verify and build Poisson-type algebra structures.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check an axiom or a profile")
    c.add_argument("file")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--profile")
    g.add_argument("--axiom")
    c.add_argument("--bind", action="append", metavar="ROLE=NAME")
    c.add_argument("--no-prune", action="store_true", help="visit every tuple (debug)")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("derivations", help="joint derivation space")
    d.add_argument("file")
    d.add_argument("--ops", required=True)
    d.add_argument("--commuting-with")
    d.set_defaults(func=cmd_derivations)

    s = sub.add_parser("solve", help="linear solves")
    s.add_argument("problem", choices=["compatible-products"])
    s.add_argument("file")
    s.add_argument("--bracket", default="bracket")
    s.add_argument("--rule", choices=["transposed", "transposed_leibniz", "leibniz"], default="transposed")
    s.set_defaults(func=cmd_solve)

    k = sub.add_parser("construct", help="build a new op or bundle")
    k.add_argument("kind", choices=CONSTRUCT_KINDS)
    k.add_argument("file")
    k.add_argument("--map", action="append", help="map name; repeat for several (Id allowed)")
    k.add_argument("--h")
    k.add_argument("--mul", default="mul")
    k.add_argument("--bracket", default="bracket")
    k.add_argument("--circ", default="circ")
    k.add_argument("--mu", default="mu")
    k.add_argument("--name", help="name of the new op or map")
    k.add_argument("--other", help="second bundle for tensor")
    k.add_argument("--strong", action="store_true", help="3lie-derivation over a strong Poisson algebra")
    k.add_argument("--out")
    k.set_defaults(func=cmd_construct)

    t = sub.add_parser("tensor", help="tensor product of two bundles")
    t.add_argument("file_a")
    t.add_argument("file_b")
    t.add_argument("--mul", default="mul")
    t.add_argument("--op", default="bracket")
    t.add_argument("--out")
    t.set_defaults(func=cmd_tensor)

    l = sub.add_parser("ladder", help="climb the n-Lie ladder")
    l.add_argument("file")
    l.add_argument("--levels", type=int, required=True)
    l.add_argument("--mul", default="mul")
    l.add_argument("--mu", default="bracket")
    l.add_argument("--derivations", default="D", help="comma-separated, one per level or one for all")
    l.set_defaults(func=cmd_ladder)

    f = sub.add_parser("fuzz", help="seeded search")
    f.add_argument("--target", required=True, choices=["involutions", "tpa-samples", "ladder"])
    f.add_argument("--field", default="Q")
    f.add_argument("--dim", type=int, default=3)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--count", type=int, default=5)
    f.add_argument("--levels", type=int, default=1)
    f.add_argument("--budget", type=int, default=2_000_000)
    f.add_argument("--file")
    f.set_defaults(func=cmd_fuzz)

    cat = sub.add_parser("catalog", help="list or emit catalog entries")
    cat.add_argument("action", choices=["list", "emit"])
    cat.add_argument("id", nargs="?")
    cat.add_argument("--field", default="Q")
    cat.add_argument("--out")
    cat.set_defaults(func=cmd_catalog)

    poly = sub.add_parser("poly", help="emit a truncated polynomial algebra")
    poly.add_argument("--vars", required=True)
    poly.add_argument("--caps", required=True)
    poly.add_argument("--field", default="Q")
    poly.add_argument("--out")
    poly.set_defaults(func=cmd_poly)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except cons.PreconditionError as exc:
        results = [exc.report] if exc.report is not None else []
        _write(emit_report(results, f"precondition: {exc}"), None)
        return EXIT_FAIL
    except (UsageError, FormatError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"tpalg: error: {msg}\n")
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - invariant breach
        sys.stderr.write(f"tpalg: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
