"""Command-line interface: ``trimcx <verb> ...``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complexes import ComplexError, betti_table
from .field import DEFAULT_CHARACTERISTIC, make_field
from .ideal import Ideal, NotArtinian, minimal_generators
from .inverse import InstanceExhausted, profile, random_instance
from .io import FormatError, format_ideal, format_matrix, parse_matrix_text, read_ideal
from .pfaffian import build_V, signed_submaximal_pfaffians
from .poly import ParseError
from .realize import realize
from .resolution import IncompleteSyzygies, NotExact, minimal_free_resolution
from .suites import GRID_SUITES, SUITES, parse_range
from .tor import classify_G
from .trimming import LiftError, compute_lifts, split_summands, trimmed_betti, trimming_complex

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str, data: dict) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _write_out(args, content: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(content)


def _load_ideal(args, path) -> Ideal:
    return read_ideal(path, args.char if args.char_given else None)


def cmd_gen_v(args) -> int:
    F = make_field(args.char)
    M = build_V(args.m, args.j, F)
    I = Ideal(signed_submaximal_pfaffians(M), F)
    ideal_text = format_ideal(I)
    _write_out(args, ideal_text)
    text = f"V_{args.m}^{args.j} ({M.n}x{M.n})\n{format_matrix(M)}\n{ideal_text}".rstrip()
    _emit(args, text, {"m": args.m, "j": args.j, "matrix": [[str(f) for f in r] for r in M.rows],
                       "ideal": [str(g) for g in I.generators], "char": F.characteristic})
    return EXIT_OK


def cmd_pfaffians(args) -> int:
    M = parse_matrix_text(Path(args.matrix).read_text(), args.char if args.char_given else None)
    I = Ideal(signed_submaximal_pfaffians(M), M.field)
    ideal_text = format_ideal(I)
    _write_out(args, ideal_text)
    _emit(args, ideal_text.rstrip(), {"ideal": [str(g) for g in I.generators],
                                      "char": M.field.characteristic})
    return EXIT_OK


def cmd_resolve(args) -> int:
    I = _load_ideal(args, args.ideal)
    C = minimal_free_resolution(I, bound=args.bound)
    lines = [f"ranks {' '.join(map(str, C.ranks()))}"]
    data = {"ranks": list(C.ranks()), "twists": [list(m.twists) for m in C.modules], "maps": []}
    for k in range(1, C.length + 1):
        d = C.d(k)
        lines.append(f"d_{k}: twists {list(C.module(k).twists)} -> {list(C.module(k - 1).twists)}")
        if args.show_maps:
            lines.append(d.pretty())
        data["maps"].append([[str(f) for f in row] for row in d.dense()])
    b = betti_table(C, minimal=True)
    lines.append(b.render())
    data["betti"] = b.to_dict()
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def cmd_betti(args) -> int:
    I = _load_ideal(args, args.ideal)
    b = betti_table(minimal_free_resolution(I, bound=args.bound), minimal=True)
    _emit(args, b.render(), {"betti": b.to_dict(), "totals": list(b.totals())})
    return EXIT_OK


def cmd_trim(args) -> int:
    I = _load_ideal(args, args.ideal)
    gens = list(I.generators)
    mins = minimal_generators(I)
    cut_file = parse_range(args.cut)
    if any(not 1 <= c <= len(gens) for c in cut_file):
        raise UsageError(f"--cut positions must lie in 1..{len(gens)}")
    pos = {id(g): k for k, g in enumerate(mins)}
    cut = []
    for c in cut_file:
        g = gens[c - 1]
        if id(g) not in pos:
            raise UsageError(f"generator {c} is not part of a minimal generating set")
        cut.append(pos[id(g)])
    a = None
    if args.a:
        if len(args.a) != len(cut):
            raise UsageError("give one --a ideal per cut generator")
        a = [_load_ideal(args, p) for p in args.a]
    F = minimal_free_resolution(I, bound=args.bound)
    T = split_summands(F, cut, a)
    compute_lifts(T)
    cone = trimming_complex(T)
    J = T.trimmed_ideal()
    cone_b, formula_b = betti_table(cone), trimmed_betti(T)
    agree = cone_b == formula_b
    ideal_text = format_ideal(J)
    _write_out(args, ideal_text)
    text = "\n".join([
        ideal_text.rstrip(),
        "cone Betti table:", cone_b.render(),
        "formula Betti table:", formula_b.render(),
        f"agreement: {'yes' if agree else 'NO'}",
    ])
    _emit(args, text, {"ideal": [str(g) for g in J.generators], "cone_betti": cone_b.to_dict(),
                       "formula_betti": formula_b.to_dict(), "agree": agree})
    return EXIT_OK if agree else EXIT_MATH


def _profile_lines(p) -> list:
    return [
        f"hilbert {' '.join(map(str, p.hilbert))}",
        f"socle {dict(sorted(p.socle_polynomial.items()))}",
        f"type {p.type}",
        f"tipping point {p.tipping_point}",
        f"compressed {'yes' if p.compressed else 'no'}",
        f"s {p.s}  ell {p.ell}",
    ]


def cmd_instance(args) -> int:
    F = make_field(args.char)
    inst = random_instance(args.s, args.ell, args.seed, F)
    p = profile(inst.I)
    ideal_text = format_ideal(inst.I, minimal_generators(inst.I))
    _write_out(args, ideal_text)
    if getattr(args, "top_out", None):
        Path(args.top_out).write_text(format_ideal(inst.I_t, minimal_generators(inst.I_t)))
    text = "\n".join([ideal_text.rstrip()] + ["# " + ln for ln in _profile_lines(p)])
    data = {"ideal": ideal_text.splitlines()[1:], "profile": p.as_dict(),
            "duals": [str(g) for g in inst.N.generators], "seed": args.seed,
            "attempts": inst.attempts}
    _emit(args, text, data)
    return EXIT_OK


def cmd_classify(args) -> int:
    I = _load_ideal(args, args.ideal)
    p = profile(I, args.bound)
    rep = classify_G(I, p)
    lines = [
        f"mu {rep.mu}  type {rep.type}  s {rep.s}  ell {rep.ell}",
        f"rank T1*T1 {rep.rank_T1T1}",
        f"rank T1 x T2 -> T3 {rep.rank_T1T2}  dim T1*T2 {rep.dim_T1T2}",
        f"delta rank {rep.delta_rank}",
        f"verdict {rep.verdict}" + (f" ({rep.reason})" if rep.reason else ""),
    ]
    _emit(args, "\n".join(lines), {"report": rep.as_dict(), "profile": p.as_dict()})
    return EXIT_OK


def cmd_realize(args) -> int:
    F = make_field(args.char)
    R = realize(args.r, args.N, F)
    ideal_text = format_ideal(R.ideal, minimal_generators(R.ideal))
    _write_out(args, ideal_text)
    lines = [
        ideal_text.rstrip(),
        f"m {R.m}  case {'even' if R.even else 'odd'}",
        R.betti.render(),
        f"mu {R.report.mu} (expected {R.expected_mu})  type {R.report.type} (expected {R.expected_type})",
        f"verdict {R.report.verdict}",
    ]
    if R.failures():
        lines.append(f"FAILED checks: {', '.join(R.failures())}")
    data = {"ideal": ideal_text.splitlines()[1:], "betti": R.betti.to_dict(),
            "report": R.report.as_dict(), "checks": R.checks}
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if R.ok else EXIT_MATH


def cmd_verify(args) -> int:
    fn = SUITES.get(args.suite)
    if fn is None:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    F = make_field(args.char)
    kwargs = {"field": F}
    if args.suite in GRID_SUITES:
        if args.s:
            kwargs["s_values"] = parse_range(args.s)
        if args.ell:
            kwargs["ell_spec"] = args.ell
        kwargs["trials"] = args.trials
        kwargs["seed"] = args.seed
    rep = fn(**kwargs)
    _emit(args, rep.render(), rep.as_dict())
    return EXIT_OK if rep.ok else EXIT_MATH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", type=int, default=None,
                        help=f"field characteristic (0 = rationals; default {DEFAULT_CHARACTERISTIC})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=None, help="degree bound override")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="trimcx",
                                     description="Trimming complexes, inverse systems and Pfaffian ideals in k[x,y,z].")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen-v", parents=[common], help="build V_m^j and its Pfaffian ideal")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_v)

    p = sub.add_parser("pfaffians", parents=[common], help="signed submaximal Pfaffians of a matrix file")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pfaffians)

    p = sub.add_parser("resolve", parents=[common], help="minimal free resolution of R/I")
    p.add_argument("ideal")
    p.add_argument("--show-maps", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("betti", parents=[common], help="Betti table of R/I")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("trim", parents=[common], help="trim generators and resolve by the cone")
    p.add_argument("ideal")
    p.add_argument("--cut", required=True, help="1-based generator positions, e.g. 4,5 or 4..5")
    p.add_argument("--a", nargs="*", help="ideal files replacing the maximal ideal, one per cut")
    p.add_argument("--out")
    p.set_defaults(func=cmd_trim)

    p = sub.add_parser("instance", parents=[common], help="random compressed instance")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--top-out", help="also write the Gorenstein ideal of the top dual")
    p.set_defaults(func=cmd_instance)

    p = sub.add_parser("classify", parents=[common], help="Tor algebra rank report")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("realize", parents=[common], help="ideal of class G(r) and type >= N")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--s", help="range such as 3..5")
    p.add_argument("--ell", help="range such as 1..s+1")
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.char_given = args.char is not None
    if args.char is None:
        args.char = DEFAULT_CHARACTERISTIC
    try:
        return args.func(args)
    except (UsageError, FormatError, ParseError, FileNotFoundError, InstanceExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotExact, LiftError, ComplexError, IncompleteSyzygies, AssertionError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_MATH
    except NotArtinian as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
