"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis.witness import witnesses_to_csv
from .checks import SUITES, run_suite
from .diagonal import build_Y, diag_classical, diag_perm, tower, x_infinity, z_direct
from .enumerations import BuilderSpec, build_enumeration
from .errors import CantorkitError
from .numbering import pair, unpair
from .permutations import parse_perm, rank_perm, unrank_perm
from .sdl.codec import decode_term, encode_term
from .sdl.evaluate import enum_fn, seq_fn
from .sdl.parser import parse_enum, parse_file_text, parse_seq
from .sdl.printer import show_file
from .sdl.terms import BUILDER_NAMES, EnumTerm, Row, SeqTerm

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a natural number")
    return value


def _common(horizon: bool = True, rows: bool = False) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    if horizon:
        p.add_argument("--horizon", type=_positive, default=256, help="prefix length (default 256)")
    if rows:
        p.add_argument("--rows", type=_positive, default=64, help="rows to check or print (default 64)")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--header", action="store_true", help="emit a CSV header row")
    p.add_argument("--one-based", action="store_true", help="display row and position indices from 1")
    p.add_argument("--output", "-o", help="write to this file instead of standard output")
    return p


def _enum_input() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("enumeration input")
    src.add_argument("--builder", choices=BUILDER_NAMES)
    src.add_argument("--salt", type=_natural, default=0, help="hashrows salt")
    src.add_argument("--matrix", help="doubly_periodic grid, rows separated by '/', e.g. 01/10")
    src.add_argument("--file", help="SDL file with an 'enum:' header")
    src.add_argument("--enum", dest="enum_text", help="inline SDL enumeration")
    return p


def _perm_opts() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--perm", help="permutation: id, t(a,b), #n, [..], products with *")
    p.add_argument("--variant", choices=("row", "transversal"), default="row")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cantorkit", description="Executable diagonal constructions over countable enumerations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    enum_in, perm = _enum_input(), _perm_opts()

    p = sub.add_parser("prefix", parents=[_common(), enum_in], help="print a sequence prefix")
    p.add_argument("--seq", dest="seq_text", help="inline SDL sequence")
    p.add_argument("--row", type=_natural, help="print this row of the enumeration input")

    sub.add_parser("matrix", parents=[_common(rows=True), enum_in], help="print a rows x horizon grid")

    p = sub.add_parser("diag", parents=[_common(), enum_in, perm], help="classical, permuted or reverse diagonal")
    p.add_argument("kind", choices=("classical", "perm", "z"))

    p = sub.add_parser("tower", parents=[_common(), enum_in], help="prefixes of w_1 .. w_n")
    p.add_argument("--levels", type=_positive, default=4)
    p.add_argument("--variant", choices=("row", "transversal"), default="row",
                   help="diagonal variant used to build Y")

    p = sub.add_parser("xinf", parents=[_common(rows=True), enum_in], help="print rows of the tower limit")
    p.add_argument("--variant", choices=("row", "transversal"), default="row")

    p = sub.add_parser("verify", parents=[_common(rows=True), enum_in, perm], help="run invariant suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--levels", type=_positive, default=16)

    p = sub.add_parser("scan", parents=[_common(rows=True), enum_in, perm],
                       help="search the enumeration for a constructed sequence")
    p.add_argument("--construction", choices=("classical", "perm", "z"), default="z")
    p.add_argument("--seq", dest="seq_text", help="scan for this SDL sequence instead")

    p = sub.add_parser("perm", parents=[_common(horizon=False)], help="rank or unrank permutations")
    p.add_argument("action", choices=("rank", "unrank"))
    p.add_argument("value")

    p = sub.add_parser("pair", parents=[_common(horizon=False)], help="Cantor pairing")
    p.add_argument("a", type=_natural)
    p.add_argument("b", type=_natural)

    p = sub.add_parser("unpair", parents=[_common(horizon=False)], help="inverse Cantor pairing")
    p.add_argument("n", type=_natural)

    p = sub.add_parser("encode", parents=[_common(horizon=False), enum_in], help="Gödel code of a term")
    p.add_argument("--seq", dest="seq_text", help="inline SDL sequence")

    p = sub.add_parser("decode", parents=[_common(horizon=False)], help="term with the given Gödel code")
    p.add_argument("code", type=_natural)
    return parser


# ------------------------------------------------------------------ inputs


def _read_file(path: str):
    try:
        return parse_file_text(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _enumeration(args, required: bool = True) -> Optional[EnumTerm]:
    given = [x for x in (args.builder, args.file, args.enum_text) if x is not None]
    if len(given) > 1:
        raise UsageError("give exactly one of --builder, --file, --enum")
    if args.builder:
        matrix = ()
        if args.matrix:
            matrix = tuple(tuple(int(c) for c in r.strip()) for r in args.matrix.replace(",", "/").split("/"))
        elif args.builder == "doubly_periodic":
            raise UsageError("doubly_periodic needs --matrix")
        return build_enumeration(BuilderSpec(args.builder, salt=args.salt, matrix=matrix))
    if args.file:
        term = _read_file(args.file)
        if not isinstance(term, EnumTerm):
            raise UsageError(f"{args.file} holds a sequence, an enumeration is needed")
        return term
    if args.enum_text is not None:
        return parse_enum(args.enum_text)
    if required:
        raise UsageError("an enumeration is required: --builder, --file or --enum")
    return None


def _perm(args):
    return None if args.perm is None else parse_perm(args.perm)


# ------------------------------------------------------------------ output


def _bits_line(bits, fmt: str) -> str:
    if fmt == "csv":
        return ",".join(map(str, bits))
    s = "".join(map(str, bits))
    return " ".join(s[j:j + 8] for j in range(0, len(s), 8))


def _seq_output(t: SeqTerm, args) -> str:
    f = seq_fn(t)
    bits = [f(i) for i in range(args.horizon)]
    lines = []
    if args.format == "csv" and args.header:
        shift = 1 if args.one_based else 0
        lines.append(",".join(str(i + shift) for i in range(args.horizon)))
    lines.append(_bits_line(bits, args.format))
    return "\n".join(lines) + "\n"


def _matrix_output(e: EnumTerm, args) -> str:
    g = enum_fn(e)
    shift = 1 if args.one_based else 0
    grid = [[g(k, i) for i in range(args.horizon)] for k in range(args.rows)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if args.header:
            w.writerow([f"c{i + shift}" for i in range(args.horizon)])
        w.writerows(grid)
        return buf.getvalue()
    width = len(str(args.rows - 1 + shift))
    lines = []
    for k, bits in enumerate(grid):
        cells = [f"[{b}]" if i == k else f" {b} " for i, b in enumerate(bits)]
        lines.append((f"{k + shift:>{width}} |" + "".join(cells)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ commands


def _cmd_prefix(args) -> int:
    if args.seq_text is not None:
        t = parse_seq(args.seq_text)
    elif args.file and args.row is None:
        t = _read_file(args.file)
        if not isinstance(t, SeqTerm):
            raise UsageError(f"{args.file} holds an enumeration; pass --row to pick a row")
    else:
        e = _enumeration(args)
        if args.row is None:
            raise UsageError("prefix of an enumeration needs --row")
        t = Row(e, args.row)
    _emit(_seq_output(t, args), args)
    return EXIT_OK


def _cmd_diag(args) -> int:
    e = _enumeration(args)
    if args.kind == "classical":
        t = diag_classical(e)
    elif args.kind == "z":
        t = z_direct(e)
    else:
        if args.perm is None:
            raise UsageError("diag perm needs --perm")
        t = diag_perm(e, _perm(args), args.variant)
    _emit(_seq_output(t, args), args)
    return EXIT_OK


def _cmd_tower(args) -> int:
    e = _enumeration(args)
    y = build_Y(e, args.variant)
    lines = []
    if args.format == "csv" and args.header:
        shift = 1 if args.one_based else 0
        lines.append(",".join(["level"] + [str(i + shift) for i in range(args.horizon)]))
    for n in range(1, args.levels + 1):
        f = seq_fn(tower(e, y, n).w_n)
        bits = [f(i) for i in range(args.horizon)]
        if args.format == "csv":
            lines.append(f"{n}," + _bits_line(bits, "csv"))
        else:
            lines.append(f"w_{n}: " + _bits_line(bits, "text"))
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _cmd_xinf(args) -> int:
    e = _enumeration(args)
    _emit(_matrix_output(x_infinity(e, build_Y(e, args.variant)), args), args)
    return EXIT_OK


def _witness_text(witnesses, one_based: bool) -> str:
    shift = 1 if one_based else 0
    lines = []
    for w in witnesses:
        where = f" at {w.position + shift}" if w.position is not None else ""
        lines.append(f"row {w.row + shift}: {w.kind}{where} (horizon {w.horizon})")
    return "\n".join(lines) + ("\n" if lines else "")


def _cmd_verify(args) -> int:
    e = _enumeration(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    out, ok = [], True
    for name in suites:
        res = run_suite(name, e, rows=args.rows, horizon=max(args.horizon, args.rows), levels=args.levels,
                        perm=_perm(args), variant=args.variant)
        ok &= res.passed
        if res.witnesses:
            if args.format == "csv":
                out.append(witnesses_to_csv(res.witnesses, header=args.header, one_based=args.one_based))
            else:
                out.append(_witness_text(res.witnesses, args.one_based))
        if args.format == "text":
            out.append(res.summary() + "\n")
            out.extend(f"  {msg}\n" for msg in res.failures[:20])
        else:
            for msg in res.failures:
                print(f"{name}: {msg}", file=sys.stderr)
    _emit("".join(out), args)
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_scan(args) -> int:
    from .analysis.witness import membership_scan

    e = _enumeration(args)
    if args.seq_text is not None:
        s = parse_seq(args.seq_text)
    elif args.construction == "classical":
        s = diag_classical(e)
    elif args.construction == "z":
        s = z_direct(e)
    else:
        if args.perm is None:
            raise UsageError("--construction perm needs --perm")
        s = diag_perm(e, _perm(args), args.variant)
    ws = membership_scan(s, e, args.rows, args.horizon)
    if args.format == "csv":
        _emit(witnesses_to_csv(ws, header=args.header, one_based=args.one_based), args)
    else:
        _emit(_witness_text(ws, args.one_based), args)
    return EXIT_OK


def _cmd_perm(args) -> int:
    if args.action == "unrank":
        p = unrank_perm(_natural(args.value))
        _emit("[" + ",".join(map(str, p.table)) + "]\n", args)
    else:
        _emit(f"{rank_perm(parse_perm(args.value))}\n", args)
    return EXIT_OK


def _cmd_encode(args) -> int:
    if args.seq_text is not None:
        t = parse_seq(args.seq_text)
    elif args.file is not None and args.builder is None and args.enum_text is None:
        t = _read_file(args.file)
    else:
        t = _enumeration(args)
    _emit(f"{encode_term(t)}\n", args)
    return EXIT_OK


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "prefix":
        return _cmd_prefix(args)
    if cmd == "matrix":
        _emit(_matrix_output(_enumeration(args), args), args)
        return EXIT_OK
    if cmd == "diag":
        return _cmd_diag(args)
    if cmd == "tower":
        return _cmd_tower(args)
    if cmd == "xinf":
        return _cmd_xinf(args)
    if cmd == "verify":
        return _cmd_verify(args)
    if cmd == "scan":
        return _cmd_scan(args)
    if cmd == "perm":
        return _cmd_perm(args)
    if cmd == "pair":
        _emit(f"{pair(args.a, args.b)}\n", args)
        return EXIT_OK
    if cmd == "unpair":
        a, b = unpair(args.n)
        _emit(f"{a},{b}\n" if args.format == "csv" else f"{a} {b}\n", args)
        return EXIT_OK
    if cmd == "encode":
        return _cmd_encode(args)
    if cmd == "decode":
        _emit(show_file(decode_term(args.code)), args)
        return EXIT_OK
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, CantorkitError, ValueError) as exc:
        print(f"cantorkit: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
