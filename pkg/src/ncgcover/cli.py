"""Command-line front end: ``ncgcover generate | verify | quotient``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kgroup as kg
from .graph import NotSemiregular, isomorphic_small, predicates, quotient_by, to_graph6
from .symmetry import DEFAULT_VERTEX_CAP, SizeCapError, certify_non_cayley, is_prime
from .voltage import k33, ncg_cover, pappus_graph, translations

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARAMS = 2
EXIT_INCOMPLETE = 3
EXIT_CONTRADICTION = 4


def sidecar_path(out: Path) -> Path:
    return out.with_suffix(".labels.json")


def _params(args) -> kg.KParams:
    p = kg.default_params(args.n, args.root)
    if 18 * args.n ** 3 > args.cap:
        raise SizeCapError(f"18n^3 = {18 * args.n ** 3} exceeds --cap {args.cap}")
    return p


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_generate(args) -> int:
    p = _params(args)
    cover = ncg_cover(p)
    out = Path(args.out or f"ncg{p.n}.g6")
    _write_text(out, to_graph6(cover.graph) + "\n")
    _write_text(sidecar_path(out), json.dumps(cover.sidecar()) + "\n")
    print(f"wrote {out} ({cover.graph.vertex_count} vertices, {cover.graph.edge_count} edges, "
          f"r={p.r}) and {sidecar_path(out)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    def progress(stage: str, seconds: float) -> None:
        print(f"  {stage:<14} {seconds:8.3f} s", file=sys.stderr)

    cert = certify_non_cayley(args.n, args.root, cap=args.cap, skip_full_aut=args.skip_full_aut,
                              seed=args.seed, progress=progress)
    text = json.dumps(cert.to_dict(), indent=2) + "\n"
    if args.report:
        _write_text(Path(args.report), text)
    elif args.verbose:
        sys.stdout.write(text)
    print(f"n={cert.params['n']} r={cert.params['r']} order={cert.graph['order']} "
          f"|F|={cert.lifted_group_order} type={cert.type} non_cayley={cert.non_cayley}")
    if cert.contradictions:
        for c in cert.contradictions:
            print(f"contradiction: {c}", file=sys.stderr)
        return EXIT_CONTRADICTION
    if not cert.complete:
        print("verification incomplete: full automorphism check skipped", file=sys.stderr)
        return EXIT_INCOMPLETE
    return EXIT_OK if cert.non_cayley else EXIT_CONTRADICTION


def cmd_quotient(args) -> int:
    if args.by == "sylow-p" and not is_prime(args.n):
        print(f"error: n={args.n} is not prime; the Sylow-p quotient needs prime n",
              file=sys.stderr)
        return EXIT_USAGE
    p = _params(args)
    cover = ncg_cover(p)
    if args.by == "voltage-group":
        group, target, name = translations(cover), k33(), "K_{3,3}"
    else:
        group, target, name = translations(cover, "abc"), pappus_graph(), "Pappus graph"
    try:
        q, _ = quotient_by(cover.graph, group)
    except NotSemiregular as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    out = Path(args.out or f"ncg{p.n}_{args.by}.g6")
    _write_text(out, to_graph6(q) + "\n")
    pr = predicates(q)
    iso = isomorphic_small(q, target) is not None
    print(f"quotient: {q.vertex_count} vertices, cubic={pr.is_cubic}, "
          f"connected={pr.is_connected}; isomorphic to {name}: {iso}; wrote {out}")
    return EXIT_OK if iso else EXIT_CONTRADICTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncgcover",
        description="Build and verify the cubic non-Cayley covers NCG_{18n^3} of K_{3,3}.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="odd modulus n >= 7")
    common.add_argument("--root", type=int, default=None,
                        help="root r of x^2+x+1 mod n (default: smallest)")
    common.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP,
                        help="maximum number of cover vertices (default: %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write the cover as graph6")
    gen.add_argument("--out", help="graph6 output path (sidecar written next to it)")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", parents=[common], help="run all checks, emit a certificate")
    ver.add_argument("--report", help="path for the JSON certificate")
    ver.add_argument("--skip-full-aut", action="store_true",
                     help="skip the full automorphism computation (certificate incomplete)")
    ver.set_defaults(func=cmd_verify)

    quo = sub.add_parser("quotient", parents=[common], help="quotient by a semiregular subgroup")
    quo.add_argument("--by", choices=("voltage-group", "sylow-p"), required=True)
    quo.add_argument("--out", help="graph6 output path")
    quo.set_defaults(func=cmd_quotient)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.n < 2:
        print("error: --n must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (kg.NoRootError, SizeCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
