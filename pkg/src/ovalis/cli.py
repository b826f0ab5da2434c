"""Command-line front end.

Exit codes: 0 consistent (or plain computation), 3 prohibited,
4 nothing applicable, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arf import R_MINUS, ArfValue, SurfaceData, arf_from_surface, load_surface
from .forms import brown, load_form, radical
from .prohibit import (
    CONSISTENT,
    NOT_APPLICABLE,
    PROHIBITED,
    CheckResult,
    VerdictReport,
    check_theorem_main,
    enumerate_orientations,
    full_verdict,
)
from .schemes import (
    euler_parities_bminus,
    euler_parities_bplus,
    is_even_curve,
    is_odd_curve,
    parse,
    reduce_weak,
    stats,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PROHIBITED = 3
EXIT_NOT_APPLICABLE = 4

_EXIT_FOR_VERDICT = {
    CONSISTENT: EXIT_OK,
    PROHIBITED: EXIT_PROHIBITED,
    NOT_APPLICABLE: EXIT_NOT_APPLICABLE,
}


class InputError(Exception):
    pass


def _read_input(args: argparse.Namespace, positional: str) -> str:
    inline = getattr(args, positional)
    if args.input is not None:
        if inline is not None:
            raise InputError(f"give either {positional} or --input, not both")
        if args.input == "-":
            return sys.stdin.read()
        try:
            with open(args.input, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    if inline is None:
        raise InputError(f"missing {positional} (or --input PATH)")
    return inline


def _read_file_arg(args: argparse.Namespace) -> str:
    path = args.input if args.input is not None else args.file
    if path is None:
        raise InputError("missing input file")
    if args.input is not None and args.file is not None:
        raise InputError("give either FILE or --input, not both")
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _degree_to_k(degree: int | None, required: bool) -> int | None:
    if degree is None:
        if required:
            raise InputError("--degree is required")
        return None
    if degree < 2 or degree % 2:
        raise InputError(f"degree must be even and at least 2, got {degree}")
    return degree // 2


def _frac(x: Fraction) -> str:
    return str(x)


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _report_text(report: VerdictReport) -> str:
    lines = [f"scheme {report.scheme!r}, degree {report.degree}"]
    for r in report.results:
        status = "n/a " if not r.applicable else ("pass" if r.passed else "FAIL")
        lines.append(f"  [{status}] {r.name}: {r.details}")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines)


def run_stats(args: argparse.Namespace) -> int:
    s = parse(_read_input(args, "scheme").strip())
    st = stats(s)
    c = reduce_weak(s)
    payload = {
        "scheme": str(s),
        "reduced": str(c),
        "stats": st.to_dict(),
        "odd_curve": is_odd_curve(c),
        "even_curve": is_even_curve(c),
        "euler_parities_bplus": euler_parities_bplus(c),
        "euler_parities_bminus": euler_parities_bminus(c),
    }
    lines = [f"scheme: {payload['scheme']!r}"]
    if c != s:
        lines.append(f"reduced: {payload['reduced']!r}")
    lines += [f"{key} = {value}" for key, value in st.to_dict().items()]
    lines += [
        f"odd curve: {payload['odd_curve']}",
        f"even curve: {payload['even_curve']}",
        f"B+ Euler parities: {payload['euler_parities_bplus']}",
        f"B- Euler parities: {payload['euler_parities_bminus']}",
    ]
    _emit(payload, "\n".join(lines), args.format)
    return EXIT_OK


def _aggregate(reports: list[VerdictReport]) -> str:
    verdicts = {r.verdict for r in reports}
    if CONSISTENT in verdicts:
        return CONSISTENT
    if PROHIBITED in verdicts:
        return PROHIBITED
    return NOT_APPLICABLE


def run_check(args: argparse.Namespace) -> int:
    k = _degree_to_k(args.degree, required=True)
    s = parse(_read_input(args, "scheme").strip())
    if args.search and s.is_unsigned() and s.oval_count:
        try:
            pairs = enumerate_orientations(s, k)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        reports = [report for _, report in pairs]
        verdict = _aggregate(reports)
        payload = {
            "degree": 2 * k,
            "scheme": str(s),
            "orientations": [r.to_dict() for r in reports],
            "verdict": verdict,
        }
        text = "\n\n".join(_report_text(r) for r in reports)
        text += f"\n\noverall ({len(reports)} semi-orientations): {verdict}"
        _emit(payload, text, args.format)
        return _EXIT_FOR_VERDICT[verdict]
    report = full_verdict(s, k)
    _emit(report.to_dict(), _report_text(report), args.format)
    return _EXIT_FOR_VERDICT[report.verdict]


def run_brown(args: argparse.Namespace) -> int:
    form = load_form(_read_file_arg(args))
    beta = brown(form)
    payload = {"dim": form.dim, "radical_dim": len(radical(form)), "brown": beta}
    _emit(payload, f"brown = {beta}", args.format)
    return EXIT_OK


def theorem_main_for_surface(data: SurfaceData, value: ArfValue, k: int) -> CheckResult:
    """Theorem-main check for a surface computed at its own ``(gamma, r)``.

    Values at ``(gamma, r_{3/8})`` are moved to ``(gamma - 2g, r_{-1/8})``
    by adding 2.
    """
    gamma, v = data.gamma, value
    if data.r is not R_MINUS:
        gamma, v = gamma + 2, value + 2
    if gamma.a != k % 4:
        return CheckResult.skip(
            "theorem-main",
            f"surface computes Arf at gamma = {gamma.a}g for r=-1/8; needs {k % 4}g",
        )
    return check_theorem_main(v, k)


def run_arf(args: argparse.Namespace) -> int:
    k = _degree_to_k(args.degree, required=False)
    data = load_surface(_read_file_arg(args))
    value = arf_from_surface(data)
    payload: dict = {
        "arf": _frac(value.value),
        "arf_quarters": value.q32,
        "gamma": data.gamma.a,
        "r": data.r.label,
    }
    text = f"arf = {value}"
    code = EXIT_OK
    if k is not None:
        result = theorem_main_for_surface(data, value, k)
        payload["degree"] = 2 * k
        payload["theorem_main"] = result.to_dict()
        if not result.applicable:
            code = EXIT_NOT_APPLICABLE
            text += f"; theorem-main not applicable: {result.details}"
        else:
            required = _frac(ArfValue.of(Fraction(k * k, 2)).value)
            code = EXIT_OK if result.passed else EXIT_PROHIBITED
            text += f", required {required} → {'consistent' if result.passed else 'PROHIBITED'}"
    _emit(payload, text, args.format)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ovalis",
        description="Arf-invariant congruences for schemes of real plane curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--input", metavar="PATH", help="read input from a file ('-' for stdin)")

    p = sub.add_parser("stats", help="depth, pair and parity statistics of a scheme")
    p.add_argument("scheme", nargs="?")
    common(p)
    p.set_defaults(func=run_stats)

    p = sub.add_parser("check", help="run the congruence battery on a scheme")
    p.add_argument("scheme", nargs="?")
    p.add_argument("--degree", type=int, metavar="2K")
    p.add_argument("--search", action="store_true", help="try every semi-orientation of an unsigned scheme")
    common(p)
    p.set_defaults(func=run_check)

    p = sub.add_parser("brown", help="Brown invariant of a form file")
    p.add_argument("file", nargs="?")
    common(p)
    p.set_defaults(func=run_brown)

    p = sub.add_parser("arf", help="Arf invariant of a surface-data file")
    p.add_argument("file", nargs="?")
    p.add_argument("--degree", type=int, metavar="2K")
    common(p)
    p.set_defaults(func=run_arf)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"ovalis: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
