"""Command-line front end.

Exit codes: 0 success, 2 invalid seed, 3 maximality undecided,
4 usage, parse or file errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Optional, Sequence

from .catalog import AlgebraSpecError, FAMILIES, PARAMETRIZED, get_algebra, load_custom
from .lie import LieAlgebra, NotClosedError
from .linalg import scalar
from .solver import CartanResult, MaximalityUndecided, SearchBudget, SeedError, rank_and_cartan

EXIT_OK = 0
EXIT_INVALID_SEED = 2
EXIT_UNDECIDED = 3
EXIT_USAGE = 4


class SeedParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<term>(?:(?P<coeff>\d+(?:\s*/\s*\d+)?)\s*\*\s*)?b\s*(?P<index>\d+)))")


def _parse_expr(text: str, n: int) -> tuple:
    expr = text.strip()
    if not expr:
        raise SeedParseError("empty seed expression")
    coords = [0] * n
    pos = 0
    sign = None
    expect_term = True
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if m is None:
            raise SeedParseError(f"unexpected input at {expr[pos:].strip()!r} in {expr!r}")
        pos = m.end()
        if m.group("sign"):
            if sign is not None:
                raise SeedParseError(f"doubled sign in {expr!r}")
            sign = m.group("sign")
            expect_term = True
            continue
        if not expect_term:
            raise SeedParseError(f"missing '+' or '-' before {m.group('term').strip()!r}")
        idx = int(m.group("index"))
        if not 1 <= idx <= n:
            raise SeedParseError(f"b{idx} is out of range 1..{n}")
        coeff = m.group("coeff")
        try:
            c = scalar(re.sub(r"\s+", "", coeff)) if coeff else 1
        except ZeroDivisionError:
            raise SeedParseError(f"zero denominator in {coeff!r}") from None
        coords[idx - 1] += -c if sign == "-" else c
        sign = None
        expect_term = False
    if expect_term:
        raise SeedParseError(f"expression {expr!r} ends with a sign")
    return tuple(coords)


def parse_seed(text: str, n: int) -> list[tuple]:
    """Parse ``"b1+5*b5; 2/3*b2"`` into coordinate vectors of length *n*.

    Grammar: ``expr := [sign] term (sign term)*``, ``term := [coeff '*'] 'b' index``,
    ``coeff := integer | integer '/' integer``; expressions are separated by ``;``.
    """
    if not text.strip():
        return []
    return [_parse_expr(part, n) for part in text.split(";")]


def format_expr(coords: Sequence) -> str:
    """Inverse of :func:`parse_seed` for one element, e.g. ``-2/3*b21+b23``."""
    out = []
    for i, c in enumerate(coords, 1):
        if not c:
            continue
        mag = abs(c)
        term = f"b{i}" if mag == 1 else f"{mag}*b{i}"
        out.append(("-" if c < 0 else ("+" if out else "")) + term)
    return "".join(out) if out else "0"


def report(alg: LieAlgebra, seed: Sequence[tuple], status: str,
           result: Optional[CartanResult] = None, elapsed_ms: Optional[float] = None) -> dict:
    cartan = []
    if result is not None:
        cartan = [{"expr": format_expr(e.coords), "coords": [str(x) for x in e.coords]}
                  for e in result.elements]
    return {
        "algebra": alg.name,
        "ambient": alg.ambient,
        "dim": alg.dim,
        "seed": [format_expr(s) for s in seed],
        "status": status,
        "rank": None if result is None else result.rank,
        "cartan": cartan,
        "elapsed_ms": elapsed_ms,
    }


def render(doc: dict, fmt: str = "text", quiet: bool = False) -> str:
    """Text mirrors the original printout; ``json`` is the structured report."""
    if fmt == "json":
        return json.dumps(doc)
    lines = []
    if not quiet:
        lines.append(f"Algebra {doc['algebra']}: dimension {doc['dim']}, {doc['ambient']}x{doc['ambient']} matrices")
        if doc["seed"]:
            lines.append("Seed: " + "; ".join(doc["seed"]))
    if doc["rank"] is not None:
        lines.append(f"The rank is {doc['rank']}, and a Cartan subalgebra:")
        for q, item in enumerate(doc["cartan"], 1):
            lines.append(f"v{q} = {item['expr']}")
    else:
        lines.append("False" if doc["status"] != "undecided" else "Undecided")
    if not quiet and doc["elapsed_ms"] is not None:
        lines.append(f"Elapsed: {doc['elapsed_ms'] / 1000:.3f} s")
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liecartan", description="Rank and a Cartan subalgebra of a matrix Lie algebra.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--algebra", choices=sorted(FAMILIES), help="catalog family")
    src.add_argument("--algebra-file", metavar="PATH", help="JSON algebra description")
    p.add_argument("--param", type=int, metavar="T", help="matrix size for so and sl")
    p.add_argument("--seed", default="", help='seed elements, e.g. "b1+5*b5; b2"')
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--budget", type=int, default=2, metavar="LEVEL",
                   help="witness search level (0 disables the combination search; default 2)")
    p.add_argument("--skip-closure-check", action="store_true", help="custom algebras only")
    p.add_argument("--quiet", action="store_true", help="omit header and timing in text output")
    return p


def _load(args, parser) -> LieAlgebra:
    if args.algebra:
        if args.skip_closure_check:
            parser.error("--skip-closure-check applies to --algebra-file only")
        if args.algebra in PARAMETRIZED and args.param is None:
            parser.error(f"--param is required for --algebra {args.algebra}")
        if args.algebra not in PARAMETRIZED and args.param is not None:
            parser.error(f"--param is not allowed for --algebra {args.algebra}")
        if args.param is not None and args.param < 2:
            parser.error("--param must be at least 2")
        return get_algebra(args.algebra, args.param)
    if args.param is not None:
        parser.error("--param is not allowed with --algebra-file")
    return load_custom(args.algebra_file, check_closure=not args.skip_closure_check)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.budget < 0:
            parser.error("--budget must be >= 0")
        alg = _load(args, parser)
        seed = parse_seed(args.seed, alg.dim)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (AlgebraSpecError, SeedParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        result = rank_and_cartan(alg, seed, SearchBudget.from_level(args.budget))
        status, code = result.status, EXIT_OK
    except SeedError as exc:
        print(f"invalid seed: {exc}", file=sys.stderr)
        result, status, code = None, exc.status, EXIT_INVALID_SEED
    except MaximalityUndecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        result, status, code = None, exc.status, EXIT_UNDECIDED
    except NotClosedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = round((time.perf_counter() - start) * 1000, 3)

    print(render(report(alg, seed, status, result, elapsed), args.format, args.quiet))
    return code


if __name__ == "__main__":
    sys.exit(main())
