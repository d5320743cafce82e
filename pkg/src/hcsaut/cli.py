"""Command-line driver.

Exit codes: 0 success, 1 domain failure (invalid system, search exhausted,
failed group assertion), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import autgroup, design, doubling, prescribe, rotational
from .groups import FiniteGroup, GroupError, find_isomorphism, parse_group_spec


def _group_arg(text: str) -> FiniteGroup:
    try:
        return parse_group_spec(text)
    except GroupError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hcsaut",
        description="Build and analyse Hamiltonian cycle systems with prescribed automorphism groups.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, search=False, out=False, assert_group=False):
        if search:
            sp.add_argument("--seed", type=_nonneg, default=0)
            sp.add_argument("--budget", type=_positive, default=10**7, help="max search nodes")
        if out:
            sp.add_argument("-o", "--output", help="write result here instead of stdout")
        if assert_group:
            sp.add_argument("--assert-group", type=_group_arg, metavar="SPEC",
                            help="exit 1 unless Aut is isomorphic to SPEC")

    sp = sub.add_parser("verify", help="check that a file holds an HCS")
    sp.add_argument("file")

    sp = sub.add_parser("aut", help="full automorphism group of an HCS")
    sp.add_argument("file")
    sp.add_argument("--oracle", action="store_true", help="also enumerate all v! permutations and compare")
    common(sp, assert_group=True)

    sp = sub.add_parser(
        "double", help="doubling construction on three HCS(2n+1); H1 cycles are read as written"
    )
    sp.add_argument("h1")
    sp.add_argument("h2")
    sp.add_argument("h3")
    common(sp, out=True, assert_group=True)

    sp = sub.add_parser("construct", help="HCS with prescribed automorphism group")
    csub = sp.add_subparsers(dest="pipeline", required=True)
    for name in ("odd", "binary"):
        cp = csub.add_parser(name)
        cp.add_argument("--group", type=_group_arg, required=True, metavar="SPEC")
        if name == "binary":
            cp.add_argument("--d", type=int, required=True)
        cp.add_argument("--no-assert", action="store_true",
                        help="warn instead of failing when Aut is not the requested group")
        cp.add_argument("--trace", help="write the stage-by-stage report here")
        common(cp, search=True, out=True, assert_group=True)

    sp = sub.add_parser("starter", help="search for a 1-rotational starter")
    sp.add_argument("--group", type=_group_arg, required=True, metavar="SPEC")
    sp.add_argument("--restarts", type=_positive, default=64)
    common(sp, search=True, out=True)

    sp = sub.add_parser("relabel", help="apply a vertex relabelling, e.g. --map 1:2,2:1")
    sp.add_argument("file")
    sp.add_argument("--map", required=True, dest="mapping")
    common(sp, out=True)
    return p


class _Fail(Exception):
    pass


def _emit(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        out.write(text)


def _assert_group(S: design.CycleSystem, spec: FiniteGroup | None, out, aut=None) -> None:
    if spec is None:
        return
    aut = aut or autgroup.automorphism_group(S)
    if find_isomorphism(aut.as_finite_group(), spec) is None:
        raise _Fail(f"Aut has order {aut.order}, not isomorphic to {spec.name}")
    out.write(f"Aut isomorphic to {spec.name}\n")


def _parse_mapping(text: str) -> dict:
    mapping = {}
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep:
            raise design.DesignError(f"bad map entry {item!r}")
        mapping[design.parse_vertex(a.strip())] = design.parse_vertex(b.strip())
    return mapping


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "verify":
        S = design.read_system(args.file)
        rep = design.validate(S)
        if not rep.ok:
            raise _Fail(f"invalid HCS, v={S.v}: {rep.summary()}")
        out.write(f"valid HCS, v={S.v}\n")
        return 0

    if cmd == "aut":
        S = design.read_system(args.file)
        G = autgroup.automorphism_group(S)
        out.write(autgroup.format_report(G))
        if args.oracle:
            B = autgroup.brute_force_aut(S)
            if B.element_set() != G.element_set():
                raise _Fail(f"oracle disagrees: brute force order {B.order}")
            out.write("oracle agrees\n")
        _assert_group(S, args.assert_group, out, G)
        return 0

    if cmd == "double":
        hs = [design.read_system(p) for p in (args.h1, args.h2, args.h3)]
        with open(args.h1, encoding="utf-8") as f:
            orient = design.parse_listings(f.read())
        T = doubling.double(doubling.check_compatible(*hs, orientation=orient))
        _write_system(T, args, out)
        _assert_group(T, args.assert_group, out)
        return 0

    if cmd == "construct":
        budget = rotational.SearchBudget(max_nodes=args.budget, seed=args.seed)
        strict = not args.no_assert
        if args.pipeline == "odd":
            S, trace = prescribe.construct_odd(args.group, budget, assert_group=strict)
        else:
            S, trace = prescribe.construct_binary(args.group, args.d, budget, assert_group=strict)
        design.require_valid(S, "constructed system")
        if args.trace:
            _emit(trace.report(), args.trace, out)
        _write_system(S, args, out)
        _assert_group(S, args.assert_group, out, trace.aut)
        return 0

    if cmd == "starter":
        budget = rotational.SearchBudget(max_nodes=args.budget, seed=args.seed, restarts=args.restarts)
        s = rotational.find_starter(args.group, budget)
        _emit(rotational.serialize_starter(s), args.output, out)
        if args.output:
            out.write(f"starter for {args.group.name} written to {args.output}\n")
        return 0

    if cmd == "relabel":
        S = design.read_system(args.file)
        T = design.relabel(S, _parse_mapping(args.mapping))
        _write_system(T, args, out)
        return 0

    raise AssertionError(cmd)


def _write_system(S: design.CycleSystem, args, out) -> None:
    design.require_valid(S, "output system")
    _emit(design.serialize_system(S), args.output, out)
    if args.output:
        out.write(f"valid HCS, v={S.v} written to {args.output}\n")


DOMAIN_ERRORS = (
    _Fail, OSError, GroupError, design.DesignError, rotational.StarterError,
    rotational.StarterNotFound, prescribe.PipelineError,
)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "construct" and args.pipeline == "binary" and (args.d < 3 or args.d % 2 == 0):
        parser.print_usage(err)
        err.write("hcsaut: error: --d must be an odd integer >= 3\n")
        return 2
    try:
        return _run(args, out)
    except DOMAIN_ERRORS as exc:
        err.write(f"hcsaut: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
