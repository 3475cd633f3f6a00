"""Command-line front end: ``sumrank <command> ...``.

Every command prints one JSON object on stdout (sorted keys) and uses the
exit codes 0 ok, 1 domain error, 2 usage or file-format error, 3 budget
exceeded.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import constructions as cons
from . import oracle
from .codes import Shape, SumRankCode, is_msrd, min_distance
from .errors import BudgetExceeded, ConstructionError, FormatError
from .fileio import (
    chain_from_json,
    chain_to_json,
    code_from_json,
    code_to_json,
    dumps,
    is_chain,
    load_chain,
    load_code,
    read_json,
    write_json,
)
from .weights import (
    check_sequence,
    generalized_weights,
    greedy_weights,
    relative_generalized_weights,
    relative_greedy_weights,
    verify_bounds,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class DomainError(Exception):
    """A well-formed request that fails (failed check, violated hypothesis)."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload


def _shape_arg(text: str) -> Shape:
    try:
        return Shape.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ints_arg(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj: dict) -> None:
    sys.stdout.write(dumps(obj) + "\n")


# -- commands ---------------------------------------------------------------------

def cmd_weights(args: argparse.Namespace) -> int:
    code = load_code(args.code)
    if code.k == 0:
        raise DomainError("the zero code has no generalized weights")
    if args.relative:
        c2 = load_code(args.relative)
        if args.oracle:
            d = oracle.oracle_relative_weights(code, c2)
        else:
            d = relative_generalized_weights(code, c2)
        out: dict = {"d": list(d)}
        if args.greedy:
            g = relative_greedy_weights(code, c2)
            out["g"] = list(g)
            out["chain_condition"] = tuple(g) == tuple(d)
        _emit(out)
        return EXIT_OK
    d = oracle.oracle_generalized_weights(code) if args.oracle else generalized_weights(code)
    out = {"d": list(d)}
    if args.greedy:
        g, _ = greedy_weights(code)
        out["g"] = list(g)
        out["chain_condition"] = tuple(g) == tuple(d)
    if args.bounds:
        out["bounds"] = verify_bounds(code, d)
    _emit(out)
    return EXIT_OK


def cmd_check_seq(args: argparse.Namespace) -> int:
    verdict = check_sequence(args.shape, args.seq)
    _emit(verdict.to_json())
    return EXIT_OK


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise FormatError("missing option(s): " + ", ".join("--" + n for n in missing))


def cmd_realize(args: argparse.Namespace) -> int:
    seq = args.seq
    prov: dict = {"metric": args.metric, "seq": seq}
    second = None
    if args.metric == "hamming":
        _need(args, "q")
        if args.relative:
            _need(args, "n", "k1", "k2")
            code, c2 = cons.realize_relative(seq, args.q, args.n, args.k1, args.k2)
            d = relative_generalized_weights(code, c2)
            second = c2
            prov.update(family="relative", q=args.q, n=args.n, k1=args.k1, k2=args.k2)
        else:
            code = cons.realize_hamming(seq, args.q, args.n)
            d = generalized_weights(code)
            prov.update(family="hamming", q=args.q)
    elif args.metric == "rank":
        _need(args, "q")
        if args.m is not None or args.n is not None:
            _need(args, "m", "n")
            code = cons.realize_rank_mn(seq, args.q, args.m, args.n)
            prov.update(family="gabidulin-subcode", q=args.q, m=args.m, n=args.n)
        else:
            code = cons.realize_rank_tall(seq, args.q)
            prov.update(family="rank-tall", q=args.q)
        d = generalized_weights(code)
    else:
        if args.chain:
            chain = load_chain(args.chain)
            if args.q is not None and args.q != chain.field.q:
                raise FormatError(f"--q {args.q} disagrees with the chain field F_{chain.field.q}")
        else:
            _need(args, "q", "shape")
            chain = cons.msrd_chain(args.q, args.shape)
        code = cons.realize_sumrank(seq, chain)
        d = generalized_weights(code)
        prov.update(family="msrd-subcode", chain=chain.provenance)
    prov["modulus"] = list(code.field.modulus)
    out_path = Path(args.out or "code.json")
    write_json(out_path, code_to_json(code, prov))
    result = {"d": list(d), "k": code.k, "shape": code.shape.to_json(), "file": str(out_path)}
    if second is not None:
        c2_path = out_path.with_name(out_path.stem + "_c2.json")
        write_json(c2_path, code_to_json(second, dict(prov, role="C2")))
        result["file_c2"] = str(c2_path)
    _emit(result)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    fam = args.family
    code: SumRankCode | None = None
    chain = None
    if fam == "rs":
        _need(args, "q", "n")
        n = args.n[0] if len(args.n) == 1 else None
        if n is None:
            raise FormatError("--n takes a single length for rs")
        if args.k is not None:
            code = cons.rs_code(args.q, n, args.k)
            prov = {"family": "rs", "q": args.q, "n": n, "k": args.k}
        else:
            chain = cons.rs_chain(args.q, n)
    elif fam == "xrs":
        _need(args, "q", "k")
        code = cons.extended_rs(args.q, args.k)
        prov = {"family": "xrs", "q": args.q, "k": args.k}
    elif fam == "gabidulin":
        _need(args, "q", "m", "n")
        if len(args.n) != 1:
            raise FormatError("--n takes a single length for gabidulin")
        chain = cons.gabidulin_chain(args.q, args.m, args.n[0])
    elif fam == "lrs":
        _need(args, "q", "m", "n")
        t = args.t if args.t is not None else len(args.n)
        chain = cons.lrs_chain(args.q, t, args.m, args.n)
    else:
        _need(args, "q", "shape", "j", "delta")
        chain = cons.msrd_chain_combined(args.q, args.shape, args.j, args.delta)
    if chain is not None:
        out_path = Path(args.out or "chain.json")
        write_json(out_path, chain_to_json(chain))
        _emit({"distances": list(chain.distances), "dims": [c.k for c in chain.codes],
               "shape": chain.shape.to_json(), "file": str(out_path)})
    else:
        prov["modulus"] = list(code.field.modulus)
        out_path = Path(args.out or "code.json")
        write_json(out_path, code_to_json(code, prov))
        _emit({"k": code.k, "shape": code.shape.to_json(), "file": str(out_path)})
    return EXIT_OK


def _code_checks(code: SumRankCode, bounds: bool, msrd: bool) -> dict:
    out: dict = {}
    if bounds:
        if code.k == 0:
            raise DomainError("bounds are not defined for the zero code")
        out["bounds"] = verify_bounds(code)
    if msrd:
        d = min_distance(code)
        ok, params = is_msrd(code, d)
        out["msrd"] = {"passed": ok, "d": d, "k": code.k,
                       "params": None if params is None else [params.j, params.delta]}
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    obj = read_json(args.file)
    bounds, msrd, nested = args.bounds, args.msrd, args.nested
    if not (bounds or msrd or nested):
        bounds = msrd = nested = True
    failures: list[str] = []
    report: dict = {}
    if is_chain(obj):
        chain = chain_from_json(obj)
        if nested:
            bad = chain.nesting_failures()
            report["nested"] = {"passed": not bad, "failures": bad}
            failures += bad
        if msrd:
            bad = chain.msrd_failures()
            report["msrd"] = {"passed": not bad, "failures": bad}
            failures += bad
        if bounds:
            per = {}
            for h, c in zip(chain.distances, chain.codes):
                rep = verify_bounds(c)
                per[str(h)] = rep
                failures += [f"D_{h}: {k}" for k, v in rep.items() if k != "passed" and not v]
            report["bounds"] = per
    else:
        code = code_from_json(obj)
        report = _code_checks(code, bounds, msrd)
        if "bounds" in report:
            failures += [k for k, v in report["bounds"].items() if k != "passed" and not v]
        if "msrd" in report and not report["msrd"]["passed"]:
            failures.append("msrd")
        if nested:
            report["nested"] = {"passed": True, "failures": [], "note": "single code"}
    report["passed"] = not failures
    report["failures"] = failures
    if failures:
        raise DomainError("verification failed: " + "; ".join(failures), report)
    _emit(report)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumrank", description="Generalized weights of sum-rank metric codes.")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weights", help="generalized (and greedy) weights of a code file")
    w.add_argument("code")
    w.add_argument("--greedy", action="store_true")
    w.add_argument("--relative", metavar="C2_FILE", help="relative weights with respect to this subcode")
    w.add_argument("--oracle", action="store_true", help="use exhaustive subcode enumeration")
    w.add_argument("--bounds", action="store_true", help="also check the standard bounds")
    w.set_defaults(func=cmd_weights)

    c = sub.add_parser("check-seq", help="test the necessary conditions on a weight sequence")
    c.add_argument("--shape", type=_shape_arg, required=True)
    c.add_argument("--seq", type=_ints_arg, required=True)
    c.set_defaults(func=cmd_check_seq)

    r = sub.add_parser("realize", help="build a code with the given generalized weights")
    r.add_argument("--metric", choices=["hamming", "rank", "sumrank"], required=True)
    r.add_argument("--seq", type=_ints_arg, required=True)
    r.add_argument("--q", type=int)
    r.add_argument("--n", type=int)
    r.add_argument("--m", type=int)
    r.add_argument("--shape", type=_shape_arg)
    r.add_argument("--chain", help="chain file for --metric sumrank")
    r.add_argument("--k1", type=int)
    r.add_argument("--k2", type=int)
    r.add_argument("--relative", action="store_true", help="build a nested pair (hamming only)")
    r.add_argument("-o", "--out")
    r.set_defaults(func=cmd_realize)

    k = sub.add_parser("construct", help="build a code or an MSRD chain from a known family")
    k.add_argument("--family", choices=["rs", "xrs", "gabidulin", "lrs", "combined"], required=True)
    k.add_argument("--q", type=int)
    k.add_argument("--n", type=_ints_arg, help="length, or block lengths for lrs")
    k.add_argument("--m", type=int)
    k.add_argument("--k", type=int)
    k.add_argument("--t", type=int)
    k.add_argument("--shape", type=_shape_arg)
    k.add_argument("--j", type=int)
    k.add_argument("--delta", type=int)
    k.add_argument("-o", "--out")
    k.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check bounds, MSRD property and nesting of a code or chain file")
    v.add_argument("file")
    v.add_argument("--bounds", action="store_true")
    v.add_argument("--msrd", action="store_true")
    v.add_argument("--nested", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        if exc.payload is not None:
            _emit(exc.payload)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConstructionError as exc:
        for v in exc.violations:
            print(f"error: {v}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
