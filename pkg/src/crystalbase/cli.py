"""Command line entry point: ``crystalbase VERB [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .binfinity import (
    F_of_T,
    PsiElement,
    choose_large_lambda,
    image_member,
    image_surjectivity_probe,
    pi_lambda,
    psi_apply,
    psi_embed,
    psi_stats,
    verify_theorem,
)
from .core import CartanData, CrystalError, HeadSelectedError, LIE_TYPES
from .tableaux import (
    DEFAULT_CAP,
    DominantWeight,
    Tableau,
    crystal_graph,
    tableau_apply,
    tableau_stats,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crystalbase", description="Crystal bases of classical types.")
    parser.add_argument("verb", choices=["apply", "stats", "pi-lambda", "psi", "f-of-t", "image-check",
                                         "enumerate", "verify", "probe", "export-dot"])
    parser.add_argument("--type", choices=LIE_TYPES, help="Lie type")
    parser.add_argument("--rank", type=int, help="rank n")
    parser.add_argument("--depth", type=int, default=4, help="max f-string length for verify")
    parser.add_argument("--bound", type=int, default=2, help="max exponent for probe")
    parser.add_argument("--input", help="JSON input file, '-' for stdin")
    parser.add_argument("--output", help="output file (default stdout)")
    parser.add_argument("--format", choices=["json", "dot", "text"], default="json")
    parser.add_argument("--seed-order", choices=["fixed"], default="fixed",
                        help="sequence order of the embedding (only the fixed one exists)")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration size limit")
    parser.add_argument("--op", choices=["e", "f"], help="operator for apply")
    parser.add_argument("--index", type=int, help="operator index i")
    parser.add_argument("--fstring", type=_int_list, default=(), help="f-string, e.g. 2,1,1")
    parser.add_argument("--weight", type=_int_list, help="dominant weight coefficients, e.g. 1,1")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    return parser


def _cartan(args) -> CartanData:
    if args.type is None or args.rank is None:
        raise UsageError(f"{args.verb} needs --type and --rank")
    return CartanData.of(args.type, args.rank)


def _read_json(args):
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CrystalError(f"input is not JSON: {exc}") from None


def _read_element(args) -> Tableau | PsiElement:
    data = _read_json(args)
    if isinstance(data, dict) and "blocks" in data:
        return PsiElement.from_json(data)
    if isinstance(data, dict) and "rows" in data:
        return Tableau.from_json(data)
    raise CrystalError("input must be a tableau {type, rank, rows} or an element {type, rank, blocks}")


def _weight(args, cd: CartanData) -> DominantWeight:
    if args.weight is None:
        raise UsageError(f"{args.verb} needs --weight")
    lam = DominantWeight(args.weight)
    lam.check(cd)
    return lam


def _dump(obj, fmt: str) -> str:
    if fmt == "text":
        return "none" if obj is None else str(obj)
    payload = None if obj is None else obj.to_json()
    return json.dumps(payload, sort_keys=True)


def export_dot(cd: CartanData, lam, cap: int = DEFAULT_CAP) -> str:
    """Crystal graph of B(lambda) in Graphviz syntax, nodes named by tableau key."""
    if not isinstance(lam, DominantWeight):
        lam = DominantWeight(tuple(lam))
    nodes, edges = crystal_graph(cd, lam, cap)
    name = f"B_{cd}_" + "_".join(str(c) for c in lam.coeffs)
    lines = [f'digraph "{name}" {{']
    for T in nodes:
        label = "\\n".join(" ".join(r) for r in T.symbol_rows())
        lines.append(f'  "{T.key()}" [label="{label}"];')
    for s, i, t in edges:
        lines.append(f'  "{nodes[s].key()}" -> "{nodes[t].key()}" [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dispatch(args, out: TextIO) -> int:
    verb = args.verb
    if verb in ("apply", "stats", "f-of-t", "image-check"):
        x = _read_element(args)
        if verb == "apply":
            if args.op is None or args.index is None:
                raise UsageError("apply needs --op and --index")
            x.cd.check_index(args.index)
            y = (tableau_apply if isinstance(x, Tableau) else psi_apply)(x, args.index, args.op)
            out.write(_dump(y, args.format) + "\n")
        elif verb == "stats":
            stats_of = tableau_stats if isinstance(x, Tableau) else psi_stats
            idx = x.cd.indices if args.index is None else [args.index]
            for i in idx:
                x.cd.check_index(i)
            rows = [{"index": i, "phi": int(p), "eps": int(e)}
                    for i in idx for p, e in [stats_of(x, i)]]
            if args.format == "text":
                out.writelines(f"i={r['index']} phi={r['phi']} eps={r['eps']}\n" for r in rows)
            else:
                out.write(json.dumps(rows) + "\n")
        elif verb == "f-of-t":
            if not isinstance(x, Tableau):
                raise CrystalError("f-of-t needs a tableau")
            out.write(_dump(F_of_T(x), args.format) + "\n")
        else:
            if not isinstance(x, PsiElement):
                raise CrystalError("image-check needs an element with blocks")
            member = image_member(x)
            out.write((str(member).lower() if args.format == "text"
                       else json.dumps({"image_member": member})) + "\n")
        return EXIT_OK

    cd = _cartan(args)
    if verb == "pi-lambda":
        lam = choose_large_lambda(cd, args.fstring) if args.weight is None else _weight(args, cd)
        out.write(_dump(pi_lambda(cd, args.fstring, lam), args.format) + "\n")
    elif verb == "psi":
        out.write(_dump(psi_embed(cd, args.fstring), args.format) + "\n")
    elif verb == "enumerate":
        nodes, _ = crystal_graph(cd, _weight(args, cd), args.cap)
        if args.format == "text":
            out.write("\n\n".join(str(T) for T in nodes) + "\n")
        else:
            out.writelines(json.dumps(T.to_json(), sort_keys=True) + "\n" for T in nodes)
    elif verb == "export-dot":
        out.write(export_dot(cd, _weight(args, cd), args.cap))
    elif verb in ("verify", "probe"):
        if verb == "verify":
            report = verify_theorem(cd, args.depth, jobs=args.jobs)
        else:
            report = image_surjectivity_probe(cd, args.bound)
        if args.format == "text":
            s = report.summary()
            out.write(f"{verb} {cd}: checked {s['checked']}, failures {s['failures']}\n")
            for r in report.counterexamples():
                out.write(json.dumps(r) + "\n")
        else:
            out.writelines(line + "\n" for line in report.jsonl())
        return EXIT_FAILED if report.failures else EXIT_OK
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", encoding="utf-8")
    try:
        return dispatch(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"crystalbase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HeadSelectedError as exc:
        print(f"crystalbase: assertion failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (CrystalError, OSError) as exc:
        print(f"crystalbase: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
