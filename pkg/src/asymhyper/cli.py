"""Command-line front end.

Exit codes: 0 verdict holds (or the search completed), 1 verdict fails,
2 usage or input error, 3 engine or enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .autsearch import (DEFAULT_BUDGET, SearchBudgetExceeded, automorphism_group,
                        find_involution, is_asymmetric)
from .constructions import ConstructionSpec, build_Gks, dumps_addresses
from .extremal import (DEFAULT_CLASS_BUDGET, explore_conjecture1, lemma1_lower_bound,
                       min_asymmetric_order)
from .fileformat import dumps, read
from .hypercore import Hypergraph, HypergraphError
from .verify import (BUDGET, HOLDS, Regime, VerificationReport, lemma3_shift_structure,
                     lemma_a1_a6_suite, verify_minimal_asymmetric,
                     verify_minimal_involution_free, verify_strongly_minimal)

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

_FAMILY_ALIASES = {
    "x1": "X1", "t": "T", "small-asym": "small_asym", "gk": "Gk", "gk-star": "Gk_star",
    "gkt": "Gkt", "gkt-circ": "Gkt_circ", "gks": "Gks",
}


class UsageError(Exception):
    pass


def family_tag(name: str) -> str | None:
    return _FAMILY_ALIASES.get(name.lower().replace("_", "-"))


def _spec(family: str, args) -> ConstructionSpec:
    tag = family_tag(family)
    if tag is None:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(_FAMILY_ALIASES)}")
    return ConstructionSpec(tag, args.k, args.t, args.s, args.n)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _report_exit(rep: VerificationReport) -> int:
    if rep.verdict == HOLDS:
        return EXIT_HOLDS
    return EXIT_BUDGET if rep.verdict == BUDGET else EXIT_FAILS


def _emit_report(rep: VerificationReport, args, labels=None) -> int:
    text = rep.to_json(labels) + "\n" if args.json else rep.to_text(labels)
    _emit(text, args.out)
    return _report_exit(rep)


def _regime(args) -> Regime:
    if args.regime == "sampled":
        if args.trials is None or args.seed is None:
            raise UsageError("the sampled regime needs --trials and --seed")
        return Regime.sampled(args.trials, args.seed)
    return Regime()


def _target(target: str, args) -> Hypergraph:
    if Path(target).exists():
        return read(target)
    if family_tag(target) is not None:
        return _spec(target, args).build()
    raise UsageError(f"{target!r} is neither a readable file nor a family name")


# -- commands -------------------------------------------------------------

def cmd_construct(args) -> int:
    spec = _spec(args.family, args)
    h = spec.build()
    _emit(dumps(h), args.out)
    if spec.family == "Gks" and args.out:
        Path(args.out + ".addr").write_text(dumps_addresses(build_Gks(spec.k, spec.s).copies))
    if args.out:
        print(f"wrote {args.out}: {h.n_vertices} vertices, {h.n_edges} edges", file=sys.stderr)
    return EXIT_HOLDS


def cmd_check(args) -> int:
    h = read(args.path)
    labels = h.labels or None
    if args.aut:
        g = automorphism_group(h, args.budget)
        result = {"mode": "aut", "order": g.order,
                  "generators": [p.cycle_notation(labels) for p in g.generators]}
        code = EXIT_HOLDS
    elif args.asymmetric:
        value = is_asymmetric(h, args.budget)
        result = {"mode": "asymmetric", "value": value}
        code = EXIT_HOLDS if value else EXIT_FAILS
    else:
        p = find_involution(h, None, args.budget)
        result = {"mode": "involution", "value": p is not None}
        if p is not None:
            result["involution"] = p.cycle_notation(labels)
        code = EXIT_HOLDS if p is not None else EXIT_FAILS
    if args.json:
        text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    elif args.aut:
        text = f"order: {result['order']}\n" + "".join(f"generator: {c}\n" for c in result["generators"])
    else:
        text = f"{result['mode']}: {'true' if result['value'] else 'false'}\n"
        if "involution" in result:
            text += f"involution: {result['involution']}\n"
    _emit(text, args.out)
    return code


def cmd_verify(args) -> int:
    h = _target(args.target, args)
    labels = h.labels or None
    if args.minimal:
        rep = verify_minimal_asymmetric(h, args.budget)
    elif args.strong:
        rep = verify_strongly_minimal(h, _regime(args), args.budget, args.workers)
    else:
        rep = verify_minimal_involution_free(h, _regime(args), args.budget, args.workers)
    return _emit_report(rep, args, labels)


def cmd_search(args) -> int:
    res = min_asymmetric_order(args.k, args.max_n, args.budget or DEFAULT_CLASS_BUDGET)
    paths = {}
    if args.out:
        stem = Path(args.out)
        for n, o in res.outcomes.items():
            if o.witness is not None:
                p = stem.with_name(f"{stem.stem}.k{args.k}.n{n}.hg")
                p.write_text(dumps(o.witness))
                paths[n] = str(p)
    text = json.dumps(res.to_dict(), indent=2, sort_keys=True) + "\n" if args.json \
        else res.table(paths)
    _emit(text, args.out)
    return EXIT_HOLDS if res.complete else EXIT_BUDGET


def cmd_conjecture1(args) -> int:
    rep = explore_conjecture1(args.max_n, args.budget or DEFAULT_CLASS_BUDGET)
    text = json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n" if args.json \
        else rep.to_text()
    _emit(text, args.out)
    if not rep.complete:
        return EXIT_BUDGET
    return EXIT_FAILS if rep.critical else EXIT_HOLDS


def cmd_lemma(args) -> int:
    need = {"lemma1": ("k",), "lemma3": ("k", "t"), "a1-a6": ("k",)}[args.which]
    for p in need:
        if getattr(args, p) is None:
            raise UsageError(f"lemma {args.which} needs --{p}")
    if args.which == "lemma1":
        rep = lemma1_lower_bound(args.k)
    elif args.which == "lemma3":
        rep = lemma3_shift_structure(args.k, args.t, budget=args.budget)
    else:
        rep = lemma_a1_a6_suite(args.k, args.budget)
    return _emit_report(rep, args)


# -- parser ---------------------------------------------------------------

def _common(p: argparse.ArgumentParser, params: bool = False, regime: bool = False) -> None:
    if params:
        p.add_argument("--k", type=int)
        p.add_argument("--t", type=int)
        p.add_argument("--s", type=int)
        p.add_argument("--n", type=int)
    if regime:
        p.add_argument("--regime", choices=("exhaustive", "sampled"), default="exhaustive")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=_positive, default=None,
                   help=f"search-node budget (engine default {DEFAULT_BUDGET})")
    p.add_argument("--json", action="store_true", help="structured JSON output")
    p.add_argument("--out", help="write the report to this file instead of stdout")


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="asymhyper",
                                 description="Asymmetric hypergraph constructions and checks.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a family member in the text format")
    p.add_argument("family", help=", ".join(_FAMILY_ALIASES))
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="automorphism group, asymmetry or involution of a file")
    p.add_argument("path")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--aut", action="store_true")
    mode.add_argument("--asymmetric", action="store_true")
    mode.add_argument("--involution", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="minimality properties of a file or family member")
    p.add_argument("target", help="file path or family name")
    prop = p.add_mutually_exclusive_group(required=True)
    prop.add_argument("--minimal", action="store_true")
    prop.add_argument("--strong", action="store_true")
    prop.add_argument("--involution-free", action="store_true")
    _common(p, params=True, regime=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="smallest order of an asymmetric k-graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("conjecture1", help="look for critical asymmetric oriented graphs")
    p.add_argument("--max-n", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_conjecture1)

    p = sub.add_parser("lemma", help="structural checks on the chain and path families")
    p.add_argument("which", choices=("lemma1", "lemma3", "a1-a6"))
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    _common(p)
    p.set_defaults(func=cmd_lemma)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, HypergraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
