"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 when a relation or law fails
or a counterexample is found, 2 for usage or engine errors.
"""

from __future__ import annotations

import argparse
import sys

from . import branchrel, laws, model, terms, thompson
from .branchrel import ProjectionIncomplete
from .finra import (
    NotTabular,
    UnsupportedSignatureError,
    build_stage_rep,
    check_jlm,
    enumerate_integral,
    is_tabular,
    verify_axioms,
)
from .finra import atoms as finra_atoms
from .finra import jlm as finra_jlm


class EngineError(Exception):
    pass


def _load_model(spec: str):
    if spec == "branchrel":
        return branchrel.model_handle()
    try:
        with open(spec) as fh:
            structure = finra_atoms.parse_structure(fh.read(), label=spec)
    except OSError as exc:
        raise EngineError(f"cannot read structure file {spec!r}: {exc}") from None
    return structure.handle()


def _load_structure(spec: str) -> finra_atoms.AtomStructure:
    try:
        with open(spec) as fh:
            return finra_atoms.parse_structure(fh.read(), label=spec)
    except OSError as exc:
        raise EngineError(f"cannot read structure file {spec!r}: {exc}") from None


def cmd_parse(args) -> int:
    t = terms.parse_term(args.term, signature=args.signature)
    print(terms.format_term(t))
    return 0


def cmd_eval(args) -> int:
    t = terms.parse_term(args.term)
    m = _load_model(args.model)
    value = model.eval_term(m, t, {})
    print(m.format_element(value))
    return 0


def cmd_check_law(args) -> int:
    law = laws.law_by_id(args.id)
    m = _load_model(args.model)
    if args.strategy == "exhaustive":
        strategy = model.Exhaustive()
    else:
        n = int(args.strategy.split("=", 1)[1]) if "=" in args.strategy else 200
        strategy = model.Sample(n=n, seed=args.seed)
    report = model.check_law(m, law, strategy)
    print(report.line())
    return 0 if report.passed else 1


def cmd_suite(args) -> int:
    if args.emit_terms:
        for name, t in thompson.GENERATORS.items():
            print(f"{name} = {terms.format_term(t)}")
    report = thompson.run_suite(args.id, seed=args.seed)
    for name, ok in report.results:
        print(f"  {name}: {'pass' if ok else 'fail'}")
    print(report.line())
    return 0 if report.passed else 1


def cmd_enumerate(args) -> int:
    structures = enumerate_integral(args.signature, stretch=args.stretch)
    print(f"total={len(structures)}")
    if args.out:
        with open(args.out, "w") as fh:
            for s in structures:
                fh.write(f"# {s.label}\n")
                fh.write(finra_atoms.format_structure(s))
                fh.write("\n")
    return 0


def cmd_check_jlm(args) -> int:
    if args.sample:
        mode = "sample"
    elif args.elements:
        mode = "elements"
    else:
        mode = "atoms"
    kw = {"samples": args.sample, "seed": args.seed} if args.sample else {}
    try:
        structures = enumerate_integral(args.target, stretch=args.stretch)
    except UnsupportedSignatureError:
        structures = None
    if structures is not None:
        buckets = {}
        for s in structures:
            rec = check_jlm(s, mode=mode, **kw)
            buckets[rec.failed] = buckets.get(rec.failed, 0) + 1
        from .finra.jlm import PROFILE_COLUMNS, profile_tsv

        profile = tuple(buckets.get(c, 0) for c in PROFILE_COLUMNS)
        cols = ["JLM", "JL", "JM", "LM", "J", "L", "M", "none"]
        print(f"total={len(structures)}")
        print(" ".join(f"fail:{c}={v}" for c, v in zip(cols, profile)))
        if args.tsv:
            with open(args.tsv, "w") as fh:
                fh.write(profile_tsv({args.target: (len(structures), profile)}))
        return 0
    s = _load_structure(args.target)
    rec = check_jlm(s, mode=mode, **kw)
    print(rec.line())
    return 0 if not rec.failed else 1


def cmd_represent(args) -> int:
    s = _load_structure(args.ra_file)
    if not verify_axioms(s):
        raise EngineError("structure fails the relation algebra axioms")
    if not is_tabular(s):
        raise NotTabular("structure is not tabular")
    v = s.parse_element(args.v)
    w = s.parse_element(args.w)
    report = build_stage_rep(s, v, w, stages=args.stages, seed=args.seed)
    for st in report.stages:
        print(
            f"  stage {st.index} {st.step} len={st.length}"
            f" separated={st.separated} zero_kept={st.zero_kept}"
            f" monotone={st.monotone}"
        )
    print(report.line())
    ok = report.all_conditions_hold and report.separates
    return 0 if ok else 1


def cmd_dot(args) -> int:
    t = terms.parse_term(args.term)
    print(terms.emit_dot(t))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="branchalg")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a term and print its normal form")
    p.add_argument("term")
    p.add_argument("--signature", choices=("RA", "J"), default="RA")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("eval", help="evaluate a closed term in a model")
    p.add_argument("term")
    p.add_argument("--model", default="branchrel")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("check-law", help="check a catalog law")
    p.add_argument("id")
    p.add_argument("--strategy", default="sample=200")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", default="branchrel")
    p.set_defaults(fn=cmd_check_law)

    p = sub.add_parser("suite", help="run a relation suite")
    p.add_argument("id", choices=thompson.SUITE_IDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--emit-terms",
        action="store_true",
        help="print each named generator in the term grammar first",
    )
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("enumerate", help="enumerate integral structures")
    p.add_argument("signature")
    p.add_argument("--stretch", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("check-jlm", help="product-formula failures")
    p.add_argument("target", help="signature or structure file")
    p.add_argument(
        "--exhaustive",
        action="store_true",
        help="exhaustive atom quantification (the default)",
    )
    p.add_argument("--elements", action="store_true")
    p.add_argument("--sample", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stretch", action="store_true")
    p.add_argument("--tsv", metavar="FILE", help="also write the profile row as TSV")
    p.set_defaults(fn=cmd_check_jlm)

    p = sub.add_parser("represent", help="staged partial representation")
    p.add_argument("ra_file")
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--stages", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_represent)

    p = sub.add_parser("dot", help="series-parallel diagram of a term")
    p.add_argument("term")
    p.set_defaults(fn=cmd_dot)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (
        terms.TermError,
        model.ModelError,
        EngineError,
        NotTabular,
        ProjectionIncomplete,
        UnsupportedSignatureError,
        finra_atoms.AtomStructureError,
        finra_jlm.SizeCapExceeded,
        ValueError,
        KeyError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
