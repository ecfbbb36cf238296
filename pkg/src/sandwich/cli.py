"""Command-line interface: ``sandwich <command> ...``.

Exit status is 0 on success, 1 when a verification check fails and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from math import comb

from .core import SandwichElement, Transformation, all_transformations, parse_transformation, rank, rho
from . import engine, idemgen, ideals, regular, render, variant, verify

log = logging.getLogger("sandwich")


class UsageError(Exception):
    pass


def _transformation(text: str) -> Transformation:
    try:
        return parse_transformation(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sandwich(text: str) -> tuple[SandwichElement, Transformation | None]:
    """Parse --a; a non-idempotent value is normalised and the permutation returned."""
    b = _transformation(text)
    if b.is_idempotent():
        return SandwichElement(b), None
    s, p = variant.normalize_sandwich(b)
    return s, p


def _emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=str) + "\n"
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            v = " ".join(f"{a}={b}" for a, b in v.items())
        elif isinstance(v, (list, tuple)):
            v = "[" + ",".join(map(str, v)) + "]"
        lines.append(f"{k}={v}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    s, p = _sandwich(args.a)
    n, r = s.n, s.r
    rep: dict = {"command": "analyze", "a": str(s.a)}
    if p is not None:
        rep["normalized_from"] = args.a
        rep["permutation"] = str(p)
    rep.update(n=n, r=r, lambdas=list(s.lambdas), Lambda=s.Lambda)
    if r < n:
        rep["rank_variant"] = variant.rank_variant_formula(n, r)
        rep["maximal_above_top"] = variant.count_maximal_above_top_regular(s)
    rep["reg_size"] = regular.size_reg_formula(s)
    rep["idempotents"] = idemgen.idempotent_count_formula(s)
    if 1 < r < n:
        rep["rank_reg"] = regular.reg_rank_formula(s)
        rep["rank_exa"] = idemgen.exa_rank_formula(s)
        rep["min_idem_gensets"] = idemgen.count_min_idempotent_gensets(s)
        rep["ideal_ranks"] = {f"m{m}": ideals.ideal_rank_formula(m, s) for m in range(1, r)}
    elif r == 1:
        rep["rank_reg"] = n
    for m in range(1, r + 1):
        c = regular.hat_class_counts(s, m)
        rep[f"grid_m{m}"] = {"rows": c.d_rows, "cols": c.d_cols, "hsize": c.h_class_size}
    if n <= engine.max_degree(args.max_n):
        rep["census"] = variant.p_census(s)
        rep["reg_size_enumerated"] = len(regular.enumerate_reg(s))
    sys.stdout.write(_emit(rep, args.format))
    return 0


def _eggbox_layout(args) -> render.EggBoxLayout:
    if args.semigroup == "tn":
        if args.n is None:
            raise UsageError("--semigroup tn needs --n")
        engine.check_enumerable(args.n, args.max_n)
        S = engine.transformation_table(list(all_transformations(args.n)))
        return render.build_layout(S, semigroup="tn")
    if args.a is None:
        raise UsageError(f"--semigroup {args.semigroup} needs --a")
    s, _ = _sandwich(args.a)
    engine.check_enumerable(s.n, args.max_n)
    case_of = lambda f: variant.variant_case(f, s)  # noqa: E731
    if args.semigroup == "variant":
        elems = list(all_transformations(s.n))
    elif args.semigroup == "reg":
        elems = regular.enumerate_reg(s)
    elif args.semigroup == "exa":
        elems = idemgen.exa_elements(s)
        case_of = None
    elif args.semigroup.startswith("ideal:"):
        try:
            m = int(args.semigroup.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad ideal level in {args.semigroup!r}") from None
        elems = ideals.ideal(m, s).elements
    else:
        raise UsageError(f"unknown semigroup {args.semigroup!r}")
    S = engine.transformation_table(elems, s.a)
    return render.build_layout(S, sandwich=s.a, semigroup=args.semigroup, case_of=case_of)


def cmd_eggbox(args) -> int:
    layout = _eggbox_layout(args)
    out = render.render(layout, args.format)
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


def cmd_verify(args) -> int:
    if args.all_sandwiches:
        if args.n is None:
            raise UsageError("--all-sandwiches needs --n")
        engine.check_enumerable(args.n, args.max_n)
        targets = list(verify.sandwiches_up_to_shape(args.n, dedup=not args.no_dedup))
    elif args.a is not None:
        s, _ = _sandwich(args.a)
        engine.check_enumerable(s.n, args.max_n)
        targets = [s]
    else:
        raise UsageError("verify needs --a or --n with --all-sandwiches")
    names = None if not args.only else set(args.only.split(","))
    failed = 0
    total = 0
    for s in targets:
        print(f"# a={s.a} n={s.n} r={s.r}")
        for res in verify.run_checks(s, names):
            print(res.line())
            total += 1
            failed += not res.ok
    print(f"{total - failed}/{total} checks passed")
    return 1 if failed else 0


def cmd_tournaments(args) -> int:
    if args.r < 2:
        raise UsageError("--r must be at least 2")
    ts = idemgen.strongly_connected_tournaments(args.r)
    if args.count_only:
        print(len(ts))
        return 0
    for t in ts:
        tag = " convention" if t.convention else ""
        print(f"{t.code}: {t} indeg=[" + ",".join(map(str, t.in_degrees)) + f"]{tag}")
    print(f"count={len(ts)}")
    return 0


def cmd_gensets(args) -> int:
    s, _ = _sandwich(args.a)
    if not 1 < s.r < s.n:
        raise UsageError("gensets needs 1 < rank(a) < n")
    if args.target == "exa":
        U = idemgen.build_exa_generating_set(s)
        print(f"rank_exa={idemgen.exa_rank_formula(s)}")
        print(f"min_idem_gensets={idemgen.count_min_idempotent_gensets(s)}")
    elif args.target == "reg":
        U = regular.build_reg_generating_set(s)
        print(f"rank_reg={regular.reg_rank_formula(s)}")
    else:
        m = int(args.target.split(":", 1)[1])
        U = ideals.build_ideal_generating_set(m, s)
        print(f"rank_ideal_m{m}={ideals.ideal_rank_formula(m, s)}")
    print("constructed=" + " ".join(map(str, U)))
    if args.enumerate:
        if args.target != "exa":
            raise UsageError("--enumerate is only available for --target exa")
        engine.check_enumerable(s.n, args.max_n)
        k = idemgen.exa_rank_formula(s)
        E = idemgen.idempotent_count_formula(s)
        log.info("searching %d subsets", comb(E, k))
        try:
            S, found = idemgen.enumerate_min_idempotent_gensets(s, k, time_budget=args.time_budget)
        except engine.SearchBudgetExceeded as exc:
            print(f"search aborted: {exc}", file=sys.stderr)
            return 1
        if args.list:
            for U in found:
                print(" ".join(str(S.elements[x]) for x in U))
        print(f"enumerated={len(found)}")
        if len(found) != idemgen.count_min_idempotent_gensets(s):
            print("FAIL min-idem-gensets: enumeration disagrees with formula", file=sys.stderr)
            return 1
    return 0


def cmd_normalize(args) -> int:
    b = _transformation(args.b)
    s, p = variant.normalize_sandwich(b)
    print(f"a={s.a}")
    print(f"p={p}")
    print(f"r={s.r} lambdas=[" + ",".join(map(str, s.lambdas)) + "]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sandwich", description="Variants of finite full transformation semigroups.")
    ap.add_argument("--max-n", type=int, default=None, help="enumeration guard (default 5, or SANDWICH_MAX_N)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="formula values and census for a sandwich element")
    p.add_argument("--a", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("eggbox", help="egg-box diagram")
    p.add_argument("--a")
    p.add_argument("--n", type=int)
    p.add_argument("--semigroup", default="variant", help="variant | reg | exa | ideal:M | tn")
    p.add_argument("--format", choices=render.FORMATS, default="text")
    p.set_defaults(func=cmd_eggbox)

    p = sub.add_parser("verify", help="compare every formula with the brute-force oracle")
    p.add_argument("--a")
    p.add_argument("--n", type=int)
    p.add_argument("--all-sandwiches", action="store_true")
    p.add_argument("--no-dedup", action="store_true", help="check every idempotent, not one per kernel shape")
    p.add_argument("--only", help="comma-separated check names: " + ",".join(verify.CHECKS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tournaments", help="strongly connected tournaments")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_tournaments)

    p = sub.add_parser("gensets", help="constructed and enumerated generating sets")
    p.add_argument("--a", required=True)
    p.add_argument("--target", default="exa", help="exa | reg | ideal:M")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--list", action="store_true", help="print each enumerated set")
    p.add_argument("--time-budget", type=float, default=None)
    p.set_defaults(func=cmd_gensets)

    p = sub.add_parser("normalize", help="conjugate a sandwich element to an idempotent")
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_normalize)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    saved = os.environ.get("SANDWICH_MAX_N")
    if args.max_n is not None:
        os.environ["SANDWICH_MAX_N"] = str(args.max_n)
    try:
        return args.func(args)
    except (UsageError, argparse.ArgumentTypeError, ValueError, engine.SizeLimitError) as exc:
        print(f"sandwich: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if saved is None:
            os.environ.pop("SANDWICH_MAX_N", None)
        else:
            os.environ["SANDWICH_MAX_N"] = saved


if __name__ == "__main__":
    sys.exit(main())
