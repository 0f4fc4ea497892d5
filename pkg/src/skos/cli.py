"""Command line front end: the ``skos`` tool.

Exit codes: 0 on success, 1 on a computation-level error (non-invertible
supermatrix, method disagreement, window violation), 2 on usage errors.
Output is byte-deterministic for fixed arguments and seed; JSON is the
canonical machine format, CSV is available for cohomology tables.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import random
import sys

from skos import berezinian, bott, complexes
from skos.exact_linalg import homology, parse_base
from skos.complexes import WindowError


def _rank_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"rank must look like 'a,b', got {text!r}")
    if a < 0 or b < 0:
        raise argparse.ArgumentTypeError("rank components must be nonnegative")
    return a, b


def _int_vector(text: str) -> tuple[int, ...]:
    if text.strip() == "":
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _base(text: str) -> str:
    try:
        parse_base(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skos",
        description="Exact super Koszul / De Rham / Berezinian complexes, "
        "homology, Berezin determinants and super Bott tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def out_flag(sp, choices=("text", "json")):
        sp.add_argument("--output", choices=choices, default="text")

    for name, help_text in (
        ("koszul", "weight slice of the contraction (Koszul) complex"),
        ("derham", "weight slice of the exterior-derivative complex"),
        ("berezinian-complex", "weight slice of the dual (Berezinian) complex"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--rank", type=_rank_pair, required=True, metavar="a,b")
        sp.add_argument("--weight", type=int, required=True)
        sp.add_argument("--cap", type=int, default=None)
        out_flag(sp)

    sp = sub.add_parser("specialize", help="classical Koszul complex of a coefficient vector")
    sp.add_argument("--rank", type=_rank_pair, required=True, metavar="a,b")
    sp.add_argument("--omega", type=_int_vector, required=True, metavar="w0,w1,...")
    sp.add_argument("--cap", type=int, default=None)
    out_flag(sp)

    sp = sub.add_parser("homology", help="exact homology of a built complex")
    sp.add_argument("--kind", choices=("koszul", "derham", "berezinian", "specialize"), required=True)
    sp.add_argument("--rank", type=_rank_pair, required=True, metavar="a,b")
    sp.add_argument("--base", type=_base, default="Z", metavar="Z|Q|Fp:<p>")
    sp.add_argument("--weight", type=int, default=None)
    sp.add_argument("--omega", type=_int_vector, default=None, metavar="w0,w1,...")
    sp.add_argument("--position", type=int, default=None)
    sp.add_argument("--cap", type=int, default=None)
    out_flag(sp)

    sp = sub.add_parser("ber", help="Berezin determinant of a supermatrix")
    sp.add_argument("--input", metavar="FILE", help="JSON supermatrix record ('-' for stdin)")
    sp.add_argument("--random-check", type=int, default=None, metavar="COUNT",
                    help="run COUNT seeded random property checks instead of reading input")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--gens", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    out_flag(sp)

    sp = sub.add_parser("bott", help="cohomology tables of twisted differential forms")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--p-max", type=int, default=None)
    sp.add_argument("--r-max", type=int, default=None)
    sp.add_argument("--method", choices=("formula", "direct", "both"), default="both")
    sp.add_argument("--base", type=_base, default="Q")
    out_flag(sp, ("text", "json", "csv"))

    sp = sub.add_parser("line-bundle", help="cohomology of a twisted line bundle")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--r-max", type=int, default=None)
    out_flag(sp, ("text", "json", "csv"))

    return parser


def _emit_json(record, stdout) -> None:
    stdout.write(json.dumps(record, sort_keys=True, indent=2))
    stdout.write("\n")


def _build_complex(kind: str, rank, weight, omega, cap, position=None):
    a, b = rank
    if kind == "specialize":
        if omega is None:
            raise ValueError("--omega is required for the specialized complex")
        return complexes.specialize_koszul(a, b, omega, cap)
    if weight is None:
        raise ValueError("--weight is required for this complex kind")
    if kind == "koszul":
        return complexes.build_koszul(a, b, weight, cap)
    if kind == "derham":
        return complexes.build_derham(a, b, weight, cap)
    if cap is None:
        cap = max(abs(position) + 1, 6) if position is not None else 6
    return complexes.build_berezinian(a, b, weight, cap)


def _complex_text(C, stdout) -> None:
    head = f"{C.kind} complex, rank ({C.gens.even}|{C.gens.odd})"
    if C.weight is not None:
        head += f", weight {C.weight}"
    if C.omega is not None:
        head += f", omega {list(C.omega)}"
    stdout.write(head + "\n")
    for pos in C.positions:
        dims = C.basis_at[pos].dims()
        line = f"  position {pos}: dim {dims}"
        if pos in C.diff_at:
            line += f", differential to {pos + 1} with {C.diff_at[pos].nnz} entries"
        stdout.write(line + "\n")


def _cmd_complex(args, stdout) -> int:
    kind = {"koszul": "koszul", "derham": "derham", "berezinian-complex": "berezinian",
            "specialize": "specialize"}[args.command]
    C = _build_complex(kind, args.rank, getattr(args, "weight", None),
                       getattr(args, "omega", None), args.cap)
    if args.output == "json":
        _emit_json(C.to_record(), stdout)
    else:
        _complex_text(C, stdout)
    return 0


def _cmd_homology(args, stdout) -> int:
    C = _build_complex(args.kind, args.rank, args.weight, args.omega, args.cap, args.position)
    if args.position is not None:
        positions = [args.position]
    else:
        positions = []
        for pos in C.positions:
            try:
                C.outgoing(pos)
                C.incoming(pos)
            except WindowError:
                continue
            positions.append(pos)
    summaries = [homology(C, args.base, pos) for pos in positions]
    if args.output == "json":
        record = {
            "format": "skos.homology/1",
            "kind": C.kind,
            "rank": [C.gens.even, C.gens.odd],
            "weight": C.weight,
            "base": args.base,
            "omega": list(C.omega) if C.omega is not None else None,
            "summaries": [s.to_record() for s in summaries],
        }
        _emit_json(record, stdout)
    else:
        head = f"homology of {C.kind}, rank ({C.gens.even}|{C.gens.odd})"
        if C.weight is not None:
            head += f", weight {C.weight}"
        stdout.write(head + f", base {args.base}\n")
        for s in summaries:
            stdout.write("  " + str(s) + "\n")
    return 0


def _cmd_ber(args, stdout) -> int:
    if args.random_check is not None:
        return _ber_random_check(args, stdout)
    if not args.input:
        raise ValueError("ber needs --input FILE or --random-check COUNT")
    if args.input == "-":
        record = json.load(sys.stdin)
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            record = json.load(fh)
    M = berezinian.SuperMatrix.from_record(record)
    value = berezinian.ber(M)
    if args.output == "json":
        _emit_json({"format": "skos.ber/1", "ber": value.to_record(), "text": str(value)}, stdout)
    else:
        stdout.write(str(value) + "\n")
    return 0


def _ber_random_check(args, stdout) -> int:
    count = args.random_check
    if count <= 0 or args.p < 0 or args.q < 0 or args.gens < 0:
        raise ValueError("--random-check COUNT and block sizes must be positive")
    rng = random.Random(args.seed)
    one = berezinian.GrassmannElement.scalar(args.gens, 1)
    for _ in range(count):
        M = berezinian.random_invertible_supermatrix(rng, args.p, args.q, args.gens)
        N = berezinian.random_invertible_supermatrix(rng, args.p, args.q, args.gens)
        if berezinian.ber(M @ N) != berezinian.ber(M) * berezinian.ber(N):
            raise ArithmeticError("multiplicativity check failed")
        ident = berezinian.SuperMatrix.identity(args.p, args.q, args.gens)
        if berezinian.ber(ident) != one:
            raise ArithmeticError("identity check failed")
    stdout.write(
        f"ok: {count} seeded supermatrices (p={args.p}, q={args.q}, gens={args.gens}, "
        f"seed={args.seed}) pass multiplicativity and closed-form agreement\n"
    )
    return 0


def _cmd_bott(args, stdout) -> int:
    p_hi = args.p if args.p_max is None else args.p_max
    r_hi = args.r if args.r_max is None else args.r_max
    tables = [
        t
        for t in bott.bott_table(args.m, args.n, p_hi, args.r, r_hi, args.method, args.base)
        if t.p >= args.p
    ]
    _emit_tables(tables, args.output, stdout)
    return 0


def _cmd_line_bundle(args, stdout) -> int:
    r_hi = args.r if args.r_max is None else args.r_max
    tables = [bott.line_bundle_cohomology(args.m, args.n, r) for r in range(args.r, r_hi + 1)]
    _emit_tables(tables, args.output, stdout)
    return 0


def _emit_tables(tables, output, stdout) -> None:
    if output == "json":
        _emit_json({"format": "skos.tables/1", "tables": [t.to_record() for t in tables]}, stdout)
    elif output == "csv":
        stdout.write(bott.CSV_HEADER + "\n")
        for t in tables:
            for row in t.csv_rows():
                stdout.write(row + "\n")
    else:
        for t in tables:
            stdout.write(
                f"m={t.m} n={t.n} p={t.p} r={t.r} [{t.method}]: "
                + "  ".join(f"H^{i}={d}" for i, d in enumerate(t.rows))
                + "\n"
            )


def run(argv, stdout=None, stderr=None) -> int:
    """Parse and execute one invocation; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 2
    try:
        if args.command in ("koszul", "derham", "berezinian-complex", "specialize"):
            return _cmd_complex(args, stdout)
        if args.command == "homology":
            return _cmd_homology(args, stdout)
        if args.command == "ber":
            return _cmd_ber(args, stdout)
        if args.command == "bott":
            return _cmd_bott(args, stdout)
        if args.command == "line-bundle":
            return _cmd_line_bundle(args, stdout)
        raise ValueError(f"unknown command {args.command!r}")  # pragma: no cover
    except (ValueError, ArithmeticError, OSError) as e:
        stderr.write(f"skos: error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
