"""Command-line front end.

Usage:
    wshift analyze "periodic:1,2"
    wshift norms "split:1|2@0" --n-max 8
    wshift spectrum "modified:periodic:1;0=5" --wrap 16 --offset 1
    wshift oracle --seed 7 --dim 5 --n 3 --count 10
    wshift certify "periodic:1,2" --size 64
    wshift stab "periodic:0.5,1" --k-range -5:5

Exit codes: 0 similar (or success), 1 not-similar (or failed check),
2 undecided, 64 malformed input, 70 analysis error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import NoReturn

from pydantic import ValidationError

from core.adapters.emitters import to_csv, to_json
from core.adapters.spec_parser import parse_spec
from core.config import Settings, get_settings
from core.contracts.enums import VerdictKind
from core.contracts.report import AnalysisReport, NormTableParams
from core.contracts.similarity import Similar
from core.errors import PreconditionError, ShiftAnalysisError, SpecParseError
from core.services.finmodel import (
    inverse_power_norm_exact,
    lemma1_harness,
    power_norm_exact,
    random_oracle_instance,
    random_power_bounded_instance,
    sznagy_check,
    wrap_spectrum,
)
from core.services.similarity import build_similarity, decide_similarity, verify_similarity
from core.services.stab import dichotomy_check
from core.services.weights import is_bounded, is_normal_shift

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_SIMILAR = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 64
EXIT_SOFTWARE = 70

_VERDICT_EXIT = {
    VerdictKind.SIMILAR.value: EXIT_OK,
    VerdictKind.NOT_SIMILAR.value: EXIT_NOT_SIMILAR,
    VerdictKind.UNDECIDED.value: EXIT_UNDECIDED,
}


class UsageError(Exception):
    """Bad command-line arguments (mapped to exit code 64)."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments, which would read as "undecided".
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _k_range(text: str) -> range:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError
        return range(int(lo), int(hi) + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from exc


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from exc
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return value


def _settings(args: argparse.Namespace) -> Settings:
    settings = get_settings()
    if getattr(args, "horizon", None) is not None:
        settings = settings.model_copy(update={"sampled_horizon": args.horizon})
    return settings


# --- Subcommands ---


def cmd_analyze(args: argparse.Namespace) -> tuple[str, int]:
    settings = _settings(args)
    seq = parse_spec(args.spec)
    verdict = decide_similarity(seq, settings=settings)
    c = verdict.c if isinstance(verdict, Similar) else None
    report = AnalysisReport(
        spec=args.spec,
        verdict=verdict.summary(),
        normal=is_normal_shift(seq, settings),
        bounded=is_bounded(seq),
        spectrum_radius=None if c is None else 1.0 / c,
        norm_table=NormTableParams(n_max=settings.norm_table_n_max, c=c or 1.0),
    )
    return to_json(report.to_document()), _VERDICT_EXIT[verdict.verdict]


def cmd_norms(args: argparse.Namespace) -> tuple[str, int]:
    seq = parse_spec(args.spec)
    rows = [
        (n, power_norm_exact(seq, n, args.c), inverse_power_norm_exact(seq, n, args.c))
        for n in range(1, args.n_max + 1)
    ]
    if args.format == "json":
        doc = [{"n": n, "forward_norm": f, "backward_norm": b} for n, f, b in rows]
        return to_json(doc), EXIT_OK
    return to_csv(("n", "forward_norm", "backward_norm"), rows), EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> tuple[str, int]:
    seq = parse_spec(args.spec)
    points = wrap_spectrum(seq, args.wrap, args.offset, _settings(args))
    rows = [(float(z.real), float(z.imag), float(abs(z))) for z in points]
    if args.format == "json":
        doc = [{"re": r, "im": i, "modulus": m} for r, i, m in rows]
        return to_json(doc), EXIT_OK
    return to_csv(("re", "im", "modulus"), rows), EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> tuple[str, int]:
    settings = _settings(args)
    instances = []
    for seed in range(args.seed, args.seed + args.count):
        a, b, x = random_oracle_instance(seed, args.dim, settings)
        check = lemma1_harness(a, b, x, args.n, settings)
        t, cond = random_power_bounded_instance(seed, args.dim, settings)
        nagy = sznagy_check(t, args.n, settings=settings)
        # ||T^n|| <= cond(X) for T = X U X^-1, in both directions.
        limit = cond * (1 + settings.lemma_postcondition_rtol)
        instances.append(
            {
                "seed": seed,
                "residual": check.residual,
                "bound": check.bound,
                "holds": check.holds,
                "sup_fwd": nagy.sup_fwd,
                "sup_bwd": nagy.sup_bwd,
                "sznagy_bound": cond,
                "sznagy_holds": nagy.sup_fwd <= limit and nagy.sup_bwd <= limit,
            }
        )
    doc = {"dim": args.dim, "n": args.n, "instances": instances}
    all_hold = all(item["holds"] and item["sznagy_holds"] for item in instances)
    return to_json(doc), EXIT_OK if all_hold else EXIT_NOT_SIMILAR


def cmd_certify(args: argparse.Namespace) -> tuple[str, int]:
    settings = _settings(args)
    seq = parse_spec(args.spec)
    verdict = decide_similarity(seq, settings=settings)
    if not isinstance(verdict, Similar):
        raise PreconditionError(f"{args.spec} is {verdict.verdict}; nothing to certify")
    diag = build_similarity(seq, verdict.c, settings)
    residual = verify_similarity(seq, diag, args.size, settings)
    doc = {
        "spec": args.spec,
        "c": verdict.c,
        "kappa": verdict.kappa,
        "size": args.size,
        "residual": residual,
    }
    return to_json(doc), EXIT_OK


def cmd_stab(args: argparse.Namespace) -> tuple[str, int]:
    settings = _settings(args)
    seq = parse_spec(args.spec)
    report = dichotomy_check(seq, args.k_range, settings.sampled_horizon, settings)
    return to_json(report.to_document()), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wshift", description="Weighted shift similarity analysis")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="Decide similarity to a normal operator")
    p.add_argument("spec")
    p.add_argument("--horizon", type=int, help="Scan horizon for sampled sequences")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("norms", help="Exact power norms ||(cS_w)^n|| and ||(cS_w)^-n||")
    p.add_argument("spec")
    p.add_argument("--n-max", type=int, default=get_settings().norm_table_n_max)
    p.add_argument("--c", type=_positive_float, default=1.0, help="Scaling constant c > 0")
    p.set_defaults(handler=cmd_norms)

    p = sub.add_parser("spectrum", help="Eigenvalues of the cyclic wrap model")
    p.add_argument("spec")
    p.add_argument("--wrap", type=int, required=True, help="Wrap size N")
    p.add_argument("--offset", type=int, default=0, help="Index of the first wrapped weight")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("oracle", help="Seeded power-similarity and Sz.-Nagy checks")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("certify", help="Residual of the diagonal similarity on a truncation")
    p.add_argument("spec")
    p.add_argument("--size", type=int, required=True, help="Truncation half-width N")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("stab", help="Stab dichotomy on basis vectors")
    p.add_argument("spec")
    p.add_argument("--k-range", type=_k_range, default=None, help="LO:HI (inclusive)")
    p.add_argument("--horizon", type=int)
    p.set_defaults(handler=cmd_stab)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"wshift: {exc}\n")
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if args.format == "csv" and args.command not in ("norms", "spectrum"):
        logger.warning("--csv is not available for %s; writing JSON", args.command)

    handler: Callable[[argparse.Namespace], tuple[str, int]] = args.handler
    try:
        text, code = handler(args)
    except SpecParseError as exc:
        sys.stderr.write(f"wshift: {exc.text}\n        {' ' * exc.position}^ {exc.reason}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        sys.stderr.write(f"wshift: invalid sequence: {exc}\n")
        return EXIT_USAGE
    except ShiftAnalysisError as exc:
        logger.error("%s", exc)
        return EXIT_SOFTWARE

    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
