"""Command-line front end.

Subcommands: matrix, transform, norm, basis, verify, dual.  Numbers
serialize as shortest round-trippable decimals (integral values without a
decimal point); exact-mode non-integers serialize as ``p/q`` in both CSV and
JSON so the two formats always decode to identical values.  Output is
byte-deterministic for identical configuration and input.

Exit codes: 0 success (verification passed), 1 verification violation,
2 invalid configuration or unparseable input, 3 horizon beyond the
exact-mode cap, 4 non-finite input values.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .coeffs import OrderError, is_integral
from .duals import ConditionReport, dual_membership_report
from .operators import (
    delta_inv_operator,
    delta_operator,
    pascal_inv_operator,
    pascal_operator,
    phat_inv_operator,
    phat_operator,
    truncate,
)
from .spaces import PExponent, p_norm, phat_norm
from .transform import apply, basis_vector, inverse_apply
from .verification import run_suite

__all__ = ["main"]

DEFAULT_N = 32
DEFAULT_MAX_N = 4096
EXACT_MODE_MAX_N = 512

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_EXACT_RANGE = 3
EXIT_NONFINITE = 4

_MATRIX_BUILDERS = {
    "pascal": lambda tau: pascal_operator(),
    "pascal-inv": lambda tau: pascal_inv_operator(),
    "delta": delta_operator,
    "delta-inv": delta_inv_operator,
    "phat": phat_operator,
    "phat-inv": phat_inv_operator,
}
_TAU_FREE = {"pascal", "pascal-inv"}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    tau: Optional[object]  # int | Fraction | float | None
    n: int
    p: PExponent
    precision: str
    fmt: str
    output: Optional[str]


def _parse_tau(token: str, precision: str):
    """Exact parse of a decimal or rational order token, then mode conversion."""
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_CONFIG, f"invalid tau {token!r}: {exc}") from exc
    if value.denominator == 1 and value < 0:
        raise CliError(
            EXIT_CONFIG,
            f"invalid tau {token!r}: negative integer orders are not admissible")
    if value.denominator == 1:
        return int(value)
    return value if precision == "exact" else float(value)


def _max_n() -> int:
    raw = os.environ.get("FRAKPASCAL_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError as exc:
        raise CliError(EXIT_CONFIG, f"invalid FRAKPASCAL_MAX_N {raw!r}") from exc
    if value < 1:
        raise CliError(EXIT_CONFIG, f"invalid FRAKPASCAL_MAX_N {raw!r}")
    return value


def _build_config(args) -> RunConfig:
    n = args.n
    if n < 1:
        raise CliError(EXIT_CONFIG, f"--n must be positive, got {n}")
    cap = _max_n()
    if n > cap:
        raise CliError(EXIT_CONFIG, f"--n {n} exceeds FRAKPASCAL_MAX_N={cap}")
    if args.precision == "exact" and n > EXACT_MODE_MAX_N:
        raise CliError(
            EXIT_EXACT_RANGE,
            f"--n {n} exceeds the exact-mode range (max {EXACT_MODE_MAX_N})")
    tau = None
    if getattr(args, "tau", None) is not None:
        tau = _parse_tau(args.tau, args.precision)
    try:
        p = PExponent.coerce(args.p)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_CONFIG, f"invalid p {args.p!r}: {exc}") from exc
    return RunConfig(tau=tau, n=n, p=p, precision=args.precision,
                     fmt=args.format, output=args.output)


def _require_tau(config: RunConfig):
    if config.tau is None:
        raise CliError(EXIT_CONFIG, "this command requires --tau")
    return config.tau


# ----------------------------------------------------------------------
# serialization

def _format_number(value) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans are not serializable values")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    f = float(value)
    if f.is_integer() and abs(f) < 2 ** 53:
        return str(int(f))
    return repr(f)


def _normalize_number(value):
    """Value as emitted into JSON: int, float, or exact 'p/q' string."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"
    f = float(value)
    if f.is_integer() and abs(f) < 2 ** 53:
        return int(f)
    return f


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_json(payload, output: Optional[str]) -> None:
    _emit(json.dumps(payload, separators=(",", ":")) + "\n", output)


def _tau_token(config: RunConfig):
    return None if config.tau is None else _normalize_number(config.tau)


def _p_token(p: PExponent):
    return "inf" if p.is_inf else _normalize_number(p.p)


# ----------------------------------------------------------------------
# sequence files

def _parse_sequence_text(text: str, precision: str) -> list:
    text = text.strip()
    if not text:
        return []
    if text.startswith("{"):
        try:
            if precision == "exact":
                doc = json.loads(text, parse_float=Fraction, parse_int=int)
            else:
                doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_CONFIG, f"invalid sequence file: {exc}") from exc
        if not isinstance(doc, dict) or "values" not in doc:
            raise CliError(EXIT_CONFIG, "sequence file must carry a 'values' list")
        values = doc["values"]
        if not isinstance(values, list):
            raise CliError(EXIT_CONFIG, "'values' must be a list")
        out = []
        for v in values:
            if isinstance(v, str):
                # exact 'p/q' tokens emitted by exact-mode runs
                try:
                    v = Fraction(v)
                except (ValueError, ZeroDivisionError) as exc:
                    raise CliError(EXIT_CONFIG,
                                   f"non-numeric sequence value {v!r}") from exc
                if precision != "exact":
                    v = float(v)
            if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
                raise CliError(EXIT_CONFIG, f"non-numeric sequence value {v!r}")
            if isinstance(v, float) and not math.isfinite(v):
                raise CliError(EXIT_NONFINITE, f"non-finite sequence value {v!r}")
            out.append(v)
        return out
    values = []
    for token in text.split():
        try:
            value = Fraction(token)
        except (ValueError, ZeroDivisionError):
            try:
                as_float = float(token)
            except ValueError as exc:
                raise CliError(EXIT_CONFIG,
                               f"unparseable sequence token {token!r}") from exc
            if not math.isfinite(as_float):
                raise CliError(EXIT_NONFINITE,
                               f"non-finite sequence value {token!r}")
            raise CliError(EXIT_CONFIG, f"unparseable sequence token {token!r}")
        if precision == "exact":
            values.append(int(value) if value.denominator == 1 else value)
        else:
            values.append(float(value))
    return values


def _read_sequence(path: Optional[str], precision: str) -> list:
    if path is None:
        raise CliError(EXIT_CONFIG, "this command requires --input")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise CliError(EXIT_CONFIG, f"cannot read {path}: {exc}") from exc
    return _parse_sequence_text(text, precision)


def _emit_sequence(values, meta: dict, config: RunConfig) -> None:
    if config.fmt == "csv":
        _emit(",".join(_format_number(v) for v in values) + "\n", config.output)
    else:
        payload = {"values": [_normalize_number(v) for v in values],
                   "meta": meta}
        _emit_json(payload, config.output)


# ----------------------------------------------------------------------
# subcommands

def _cmd_matrix(args) -> int:
    config = _build_config(args)
    which = args.which
    if which not in _TAU_FREE:
        tau = _require_tau(config)
        op = _MATRIX_BUILDERS[which](tau)
    else:
        op = _MATRIX_BUILDERS[which](None)
    triangle = truncate(op, config.n)
    if config.fmt == "csv":
        lines = [",".join(_format_number(v) for v in row)
                 for row in triangle.values]
        _emit("\n".join(lines) + "\n", config.output)
    else:
        payload = {
            "kind": "matrix",
            "which": which,
            "tau": _tau_token(config),
            "n": config.n,
            "rows": [[_normalize_number(v) for v in row]
                     for row in triangle.values],
        }
        _emit_json(payload, config.output)
    return EXIT_OK


def _cmd_transform(args) -> int:
    config = _build_config(args)
    tau = _require_tau(config)
    values = _read_sequence(args.input, config.precision)
    if args.direction == "forward":
        out = apply(tau, values, config.n)
    else:
        out = inverse_apply(tau, values, config.n)
    meta = {"kind": "sequence", "direction": args.direction,
            "tau": _tau_token(config), "n": config.n}
    _emit_sequence(out, meta, config)
    return EXIT_OK


def _cmd_norm(args) -> int:
    config = _build_config(args)
    tau = _require_tau(config)
    values = _read_sequence(args.input, config.precision)
    weighted = phat_norm(tau, values, config.p, config.n)
    plain = p_norm(values, config.p)
    if config.fmt == "csv":
        lines = [
            f"phat_norm,{_format_number(weighted)}",
            f"p_norm,{_format_number(plain)}",
            f"horizon,{config.n}",
            f"tau,{_format_number(config.tau)}",
            f"p,{_p_token(config.p)}",
        ]
        _emit("\n".join(lines) + "\n", config.output)
    else:
        payload = {
            "kind": "norm",
            "phat_norm": weighted,
            "p_norm": plain,
            "horizon": config.n,
            "tau": _tau_token(config),
            "p": _p_token(config.p),
        }
        _emit_json(payload, config.output)
    return EXIT_OK


def _cmd_basis(args) -> int:
    config = _build_config(args)
    tau = _require_tau(config)
    if not 0 <= args.k < config.n:
        raise CliError(EXIT_CONFIG,
                       f"--k must satisfy 0 <= k < n={config.n}, got {args.k}")
    vec = basis_vector(tau, args.k, config.n)
    meta = {"kind": "basis", "k": args.k, "tau": _tau_token(config),
            "n": config.n}
    _emit_sequence(vec.values, meta, config)
    return EXIT_OK


def _report_to_payload(report: ConditionReport) -> dict:
    return {
        "statistic": report.statistic_name,
        "values": [_normalize_number(v) for v in report.values],
        "horizon": report.horizon,
        "verdict": report.verdict_hint,
        "informational": report.informational,
    }


def _cmd_dual(args) -> int:
    config = _build_config(args)
    tau = _require_tau(config)
    coeffs = _read_sequence(args.input, config.precision)
    reports = dual_membership_report(tau, coeffs, config.p, config.n)
    # The beta and gamma characterizations coincide; emit identical bytes.
    keys = ["D1"] if args.which == "alpha" else ["D2", "D3", "D4"]
    if config.fmt == "csv":
        lines = []
        for key in keys:
            rep = reports[key]
            values = ";".join(_format_number(v) for v in rep.values)
            flag = "informational" if rep.informational else "characterizing"
            lines.append(f"{key},{rep.statistic_name},{rep.verdict_hint},{flag},{values}")
        _emit("\n".join(lines) + "\n", config.output)
    else:
        payload = {
            "kind": "dual",
            "p": _p_token(config.p),
            "tau": _tau_token(config),
            "n": config.n,
            "sets": {key: _report_to_payload(reports[key]) for key in keys},
        }
        _emit_json(payload, config.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    config = _build_config(args)
    tau = config.tau if config.tau is not None else 0.5
    ok, details = run_suite(args.suite, tau, config.p, config.n,
                            exact=(config.precision == "exact"),
                            report_star=args.report_star)
    if config.fmt == "csv":
        lines = [f"{key},{_csv_scalar(value)}" for key, value in details.items()]
        _emit("\n".join(lines) + "\n", config.output)
    else:
        _emit_json(details, config.output)
    return EXIT_OK if ok else EXIT_VIOLATION


def _csv_scalar(value) -> str:
    if isinstance(value, dict):
        return ";".join(f"{k}={_csv_scalar(v)}" for k, v in value.items())
    if isinstance(value, list):
        return ";".join(_csv_scalar(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float, Fraction)):
        return _format_number(value)
    return str(value)


# ----------------------------------------------------------------------
# parser

def _add_common(parser) -> None:
    parser.add_argument("--tau", help="difference order: decimal or rational, e.g. 0.5 or 1/3")
    parser.add_argument("--n", type=int, default=DEFAULT_N, help="truncation horizon")
    parser.add_argument("--p", default="2", help="norm exponent in [1, inf], or 'inf'")
    parser.add_argument("--precision", choices=("float", "exact"), default="float",
                        help="float arithmetic or exact rationals where possible")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--input", help="sequence file: JSON {'values': [...]} or whitespace-separated numbers")
    parser.add_argument("--output", help="write output to a file instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frakpascal",
        description="Fractional-order Pascal difference operator toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("matrix", help="emit a truncated operator")
    m.add_argument("--which", required=True, choices=sorted(_MATRIX_BUILDERS))
    _add_common(m)
    m.set_defaults(func=_cmd_matrix)

    t = sub.add_parser("transform", help="apply the forward or inverse transform")
    t.add_argument("--direction", required=True, choices=("forward", "inverse"))
    _add_common(t)
    t.set_defaults(func=_cmd_transform)

    no = sub.add_parser("norm", help="weighted and plain norms of a sequence")
    _add_common(no)
    no.set_defaults(func=_cmd_norm)

    b = sub.add_parser("basis", help="emit an expansion vector")
    b.add_argument("--k", type=int, required=True, help="basis index")
    _add_common(b)
    b.set_defaults(func=_cmd_basis)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=("identity", "roundtrip", "parallelogram",
                                     "schauder", "inclusion", "absoluteness"))
    v.add_argument("--report-star", action="store_true",
                   help="with 'identity': also compare the defining sum against the display variant")
    _add_common(v)
    v.set_defaults(func=_cmd_verify)

    d = sub.add_parser("dual", help="dual-set condition statistics for a coefficient sequence")
    d.add_argument("--which", required=True, choices=("alpha", "beta", "gamma"))
    _add_common(d)
    d.set_defaults(func=_cmd_dual)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"frakpascal: {exc}", file=sys.stderr)
        return exc.code
    except OrderError as exc:
        print(f"frakpascal: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"frakpascal: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
