"""Command line interface.

Subcommands::

    jacobian --input FILE [--verify] [--output FILE]
    embed    --a1 A1 --a2 A2 --a3 A3 --a4 A4 --a6 A6 --n N [--output FILE]
    omega    --input FILE [--output FILE]
    selfcheck [--n-max N]

Exit codes: 0 success, 2 invalid input, 3 degenerate model, 4 internal
assertion failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .elliptic import SingularCurveError, WeierstrassCurve, curve_quadrics
from .errors import G1Error, InvalidInputError
from .jsonio import ModelInput, dumps, loads, matrix_to_json
from .pipeline import compute_omega, full_jacobian
from .selfcheck import run_selfcheck

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DEGENERATE = 3
EXIT_INTERNAL = 4


def _read_model(path: str) -> ModelInput:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    return ModelInput.from_json(loads(text))


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rational_arg(text: str):
    from .exactmath import parse_rational

    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def cmd_jacobian(args) -> int:
    report = full_jacobian(_read_model(args.input), verify=args.verify)
    _emit(dumps(report.to_json()), args.output)
    return EXIT_OK


def cmd_omega(args) -> int:
    model = _read_model(args.input)
    omega, _ = compute_omega(model)
    _emit(dumps({"degree": model.degree, "omega": matrix_to_json(omega),
                 "omega_provenance": omega.provenance}), args.output)
    return EXIT_OK


def cmd_embed(args) -> int:
    if args.n < 4:
        raise InvalidInputError(
            "embed needs n >= 4; a degree 3 model is the plane cubic, give it as {\"cubic\": ...}"
        )
    try:
        E = WeierstrassCurve(args.a1, args.a2, args.a3, args.a4, args.a6)
    except SingularCurveError as exc:
        raise InvalidInputError(str(exc)) from exc
    model = ModelInput(args.n, quadrics=curve_quadrics(E, args.n))
    _emit(dumps(model.to_json()), args.output)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    if args.n_max < 3:
        raise InvalidInputError("--n-max must be at least 3")
    return EXIT_OK if run_selfcheck(args.n_max) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g1omega",
        description="Omega, c4, c6 and the Jacobian of a genus one normal curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jacobian", help="compute Omega, c4, c6 and the Jacobian")
    p.add_argument("--input", required=True, help="model JSON file")
    p.add_argument("--verify", action="store_true", help="also certify annihilation, Pfaffians and ranks")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("embed", help="quadric model of a Weierstrass curve embedded in degree n")
    for name in ("a1", "a2", "a3", "a4", "a6"):
        p.add_argument(f"--{name}", type=_rational_arg, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("omega", help="compute the normalized Omega only")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("selfcheck", help="run the built-in exact checks")
    p.add_argument("--n-max", type=int, default=5)
    p.set_defaults(func=cmd_selfcheck)
    return parser


_COEFF_FLAGS = {"--a1", "--a2", "--a3", "--a4", "--a6"}


def _join_coefficients(argv: List[str]) -> List[str]:
    # argparse would read "-1/4" as an option; glue it to its flag
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _COEFF_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_coefficients(list(argv)))
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except G1Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except AssertionError as exc:
        print(f"error: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
