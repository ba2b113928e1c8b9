"""Command-line front end: measure, sweep, mutual, verify.

Sweeps emit plotter-ready CSV or JSON (and optionally rendered figures via
--plot); the verify subcommand runs the library's invariant suite against
an independent tightened-tolerance oracle path.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    NormalizationError,
    UnsupportedError,
)
from .measures import MEASURE_KEYS, MeasureTriple, measure_all
from .specfun import SeriesControl
from .states import CustomDiagonal, Fock, PhotonAddedThermal, PureFock, Thermal, nbar_from_x
from .verification import format_report, run_all

__all__ = ["main", "build_parser"]

SWEEP_HEADER = ("param", "M", "delta_hs", "delta_re", "delta_f", "err_hs", "err_re", "err_f")
MUTUAL_HEADER = ("pair", "param", "M", "value_a", "value_b")
MEASURE_PAIRS = {"hs-re": ("hs", "re"), "f-hs": ("fid", "hs"), "f-re": ("fid", "re")}
_VALUE_COLUMN = {"hs": "delta_hs", "re": "delta_re", "fid": "delta_f"}
_ERR_COLUMN = {"hs": "err_hs", "re": "err_re", "fid": "err_f"}


def _fmt(value: float | None) -> str:
    """Measure and error columns: 12 significant digits; blank when absent."""
    return "" if value is None else f"{value:.12g}"


def _fmt_param(value: float) -> str:
    """Param column: full round-trip precision so rows can be recomputed."""
    return repr(float(value))


def _deliver(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _parse_measures(text: str | None):
    """Comma list of measure keys in canonical order, or None for all."""
    if text is None:
        return None
    keys = [t.strip() for t in text.split(",") if t.strip()]
    if not keys:
        raise DomainError("at least one measure must be requested")
    unknown = sorted(set(keys) - set(MEASURE_KEYS))
    if unknown:
        raise DomainError(f"unknown measures {unknown}; choose from {','.join(MEASURE_KEYS)}")
    return tuple(k for k in MEASURE_KEYS if k in keys)


def _parse_int_list(text: str) -> list[int]:
    """Comma-separated photon numbers; 'a..b' expands to an inclusive range."""
    out: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            if ".." in token:
                lo, hi = token.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(token))
        except ValueError:
            raise DomainError(f"invalid photon-number token {token!r}") from None
    if not out:
        raise DomainError("empty photon-number list")
    if any(v < 0 for v in out):
        raise DomainError("photon numbers must be nonnegative")
    return out


def _parse_float_list(text: str) -> list[float]:
    out: list[float] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(float(token))
        except ValueError:
            raise DomainError(f"invalid occupancy token {token!r}") from None
    if not out:
        raise DomainError("empty occupancy list")
    if any(v < 0.0 for v in out):
        raise DomainError("occupancies must be nonnegative")
    return out


def _data_lines(path: str):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def _load_custom(path: str) -> CustomDiagonal:
    probs = []
    for lineno, line in _data_lines(path):
        try:
            probs.append(float(line))
        except ValueError:
            raise DomainError(
                f"{path}:{lineno}: expected one probability per line, got {line!r}"
            ) from None
    return CustomDiagonal(tuple(probs))


def _load_pure(path: str) -> PureFock:
    coeffs = []
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) not in (1, 2):
            raise DomainError(
                f"{path}:{lineno}: expected a coefficient as 're' or 're im', got {line!r}"
            )
        try:
            re = float(parts[0])
            im = float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError:
            raise DomainError(f"{path}:{lineno}: malformed coefficient {line!r}") from None
        coeffs.append(complex(re, im))
    return PureFock(tuple(coeffs))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def _state_from_args(args) -> object:
    kind = args.state
    if kind == "thermal":
        _require(args.nbar is not None, "--state thermal requires --nbar")
        return Thermal(args.nbar)
    if kind == "fock":
        _require(args.m is not None, "--state fock requires --m")
        return Fock(args.m)
    if kind == "pats":
        _require(args.m is not None and args.nbar is not None,
                 "--state pats requires both --m and --nbar")
        return PhotonAddedThermal(args.m, args.nbar)
    if kind == "custom":
        _require(args.probs is not None, "--state custom requires --probs FILE")
        return _load_custom(args.probs)
    _require(args.coeffs is not None, "--state pure requires --coeffs FILE")
    return _load_pure(args.coeffs)


def _triple_row(param: float, m: int, triple: MeasureTriple) -> dict:
    return {
        "param": float(param),
        "m": int(m),
        "delta_hs": triple.delta_hs,
        "delta_re": triple.delta_re,
        "delta_f": triple.delta_f,
        "err_hs": triple.err_hs,
        "err_re": triple.err_re,
        "err_f": triple.err_f,
    }


def cmd_measure(args) -> int:
    measures = _parse_measures(args.measures)
    spec = _state_from_args(args)
    triple = measure_all(spec, SeriesControl(tol=args.tol), measures=measures)
    keys = measures if measures is not None else MEASURE_KEYS

    if args.format == "json":
        payload = {}
        for key in keys:
            payload[_VALUE_COLUMN[key]] = triple.value(key)
            payload[_ERR_COLUMN[key]] = triple.err(key)
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([_VALUE_COLUMN[k] for k in keys] + [_ERR_COLUMN[k] for k in keys])
        writer.writerow([_fmt(triple.value(k)) for k in keys]
                        + [_fmt(triple.err(k)) for k in keys])
        text = buf.getvalue()
    else:
        lines = []
        for key in keys:
            value = triple.value(key)
            if value is None:
                lines.append(f"{_VALUE_COLUMN[key]:8s} = unsupported for this state family")
            else:
                lines.append(f"{_VALUE_COLUMN[key]:8s} = {value:.12g}  (err <= {triple.err(key):.3g})")
        text = "\n".join(lines) + "\n"

    _deliver(text, args.out)
    return 0


def _real_grid(args) -> np.ndarray:
    _require(args.steps >= 2, "--steps must be >= 2")
    _require(args.stop > args.start, "--to must exceed --from")
    if args.param == "x":
        _require(args.x_max < 1.0, "--x-max must be < 1")
        _require(0.0 <= args.start and args.stop <= args.x_max,
                 f"x grid must stay within [0, {args.x_max}]")
    else:
        _require(args.start >= 0.0, "nbar grid must be nonnegative")
    return np.linspace(args.start, args.stop, args.steps)


def _dedupe(values):
    seen = set()
    out = []
    for v in values:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _sweep_rows(args, measures, ctl: SeriesControl) -> list[dict]:
    if args.param == "m":
        _require(args.state != "thermal", "--param m is trivial for thermal states; use pats or fock")
        m_grid = sorted(set(_parse_int_list(args.m_list)))
        nbars = [0.0] if args.state == "fock" else _dedupe(_parse_float_list(args.nbar_list))
        rows = []
        for nbar in nbars:
            for m in m_grid:
                triple = measure_all(PhotonAddedThermal(m, nbar), ctl, measures=measures)
                rows.append(_triple_row(nbar, m, triple))
        return rows

    _require(args.state != "fock", "Fock states have no thermal parameter; use --param m")
    m_list = [0] if args.state == "thermal" else _dedupe(_parse_int_list(args.m_list))
    grid = _real_grid(args)
    rows = []
    for m in m_list:
        for value in grid:
            nbar = nbar_from_x(float(value)) if args.param == "x" else float(value)
            triple = measure_all(PhotonAddedThermal(m, nbar), ctl, measures=measures)
            rows.append(_triple_row(float(value), m, triple))
    return rows


def _sweep_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for r in rows:
        writer.writerow([
            _fmt_param(r["param"]), r["m"],
            _fmt(r["delta_hs"]), _fmt(r["delta_re"]), _fmt(r["delta_f"]),
            _fmt(r["err_hs"]), _fmt(r["err_re"]), _fmt(r["err_f"]),
        ])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    measures = _parse_measures(args.measures)
    rows = _sweep_rows(args, measures, SeriesControl(tol=args.tol))
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        text = _sweep_csv(rows)
    _deliver(text, args.out)
    if args.plot:
        from .plotting import render_sweep

        render_sweep(rows, args.param, args.plot)
    return 0


def cmd_mutual(args) -> int:
    pairs = _dedupe(p.strip() for p in args.pairs.split(",") if p.strip())
    if not pairs:
        raise DomainError("at least one measure pair is required")
    unknown = [p for p in pairs if p not in MEASURE_PAIRS]
    if unknown:
        raise DomainError(f"unknown pairs {unknown}; choose from {','.join(MEASURE_PAIRS)}")

    m_list = _dedupe(_parse_int_list(args.m_list))
    grid = _real_grid(args)
    ctl = SeriesControl(tol=args.tol)
    needed = tuple(k for k in MEASURE_KEYS
                   if any(k in MEASURE_PAIRS[p] for p in pairs))

    cache: dict = {}
    rows = []
    for pair in pairs:
        key_a, key_b = MEASURE_PAIRS[pair]
        for m in m_list:
            for value in grid:
                point = (m, float(value))
                if point not in cache:
                    nbar = nbar_from_x(float(value)) if args.param == "x" else float(value)
                    cache[point] = measure_all(PhotonAddedThermal(m, nbar), ctl, measures=needed)
                triple = cache[point]
                rows.append({
                    "pair": pair,
                    "param": float(value),
                    "m": m,
                    "value_a": triple.value(key_a),
                    "value_b": triple.value(key_b),
                })

    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(MUTUAL_HEADER)
        for r in rows:
            writer.writerow([r["pair"], _fmt_param(r["param"]), r["m"],
                             _fmt(r["value_a"]), _fmt(r["value_b"])])
        text = buf.getvalue()
    _deliver(text, args.out)
    if args.plot:
        from .plotting import render_mutual

        render_mutual(rows, MEASURE_PAIRS, args.plot)
    return 0


def cmd_verify(args) -> int:
    results = run_all(grid=args.grid, tol=args.tol)
    _deliver(format_report(results) + "\n", args.out)
    return 0 if all(r.passed for r in results) else 1


def _add_common(parser, *, tol=True, out=True) -> None:
    if tol:
        parser.add_argument("--tol", type=float, default=1e-12,
                            help="absolute series tail tolerance (default 1e-12)")
    if out:
        parser.add_argument("--out", metavar="FILE", help="write output here instead of stdout")


def _add_grid_args(parser, params=("x", "nbar", "m")) -> None:
    parser.add_argument("--param", choices=params, default="x",
                        help="swept parameter (default x)")
    parser.add_argument("--from", dest="start", type=float, default=0.0,
                        help="grid start (default 0)")
    parser.add_argument("--to", dest="stop", type=float, default=0.95,
                        help="grid end (default 0.95)")
    parser.add_argument("--steps", type=int, default=50,
                        help="number of grid points (default 50)")
    parser.add_argument("--m-list", default="1,3,5,10",
                        help="photon numbers, e.g. '1,3,5,10' or '0..15' (default 1,3,5,10)")
    parser.add_argument("--x-max", type=float, default=0.99,
                        help="upper bound allowed for x grids (default 0.99, must be < 1)")
    parser.add_argument("--plot", metavar="FILE",
                        help="also render the table as a figure (png/pdf/svg by extension)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nongauss",
        description="Distance-type non-Gaussianity of one-mode bosonic field states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser(
        "measure", help="measure a single state",
        description="Print the Hilbert-Schmidt, relative-entropy and Bures "
                    "degrees of non-Gaussianity of one state.")
    measure.add_argument("--state", required=True,
                         choices=("thermal", "fock", "pats", "custom", "pure"))
    measure.add_argument("--m", type=int, help="photon number (fock) or added photons (pats)")
    measure.add_argument("--nbar", type=float, help="mean thermal occupancy")
    measure.add_argument("--probs", metavar="FILE",
                         help="custom diagonal state: one probability per line, '#' comments")
    measure.add_argument("--coeffs", metavar="FILE",
                         help="pure state: one coefficient per line as 're im', '#' comments")
    measure.add_argument("--measures", help="comma subset of hs,re,fid (default: all supported)")
    measure.add_argument("--format", choices=("text", "csv", "json"), default="text")
    _add_common(measure)
    measure.set_defaults(func=cmd_measure)

    sweep = sub.add_parser(
        "sweep", help="sweep a state parameter",
        description="Tabulate the three measures over a parameter grid, one "
                    "block per photon number (or per nbar for --param m).")
    sweep.add_argument("--state", choices=("pats", "thermal", "fock"), default="pats")
    _add_grid_args(sweep)
    sweep.add_argument("--nbar-list", default="0.1,1,2,5",
                       help="occupancies used when --param m (default 0.1,1,2,5)")
    sweep.add_argument("--measures", help="comma subset of hs,re,fid (default: all)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(sweep)
    sweep.set_defaults(func=cmd_sweep)

    mutual = sub.add_parser(
        "mutual", help="mutual dependence of two measures",
        description="Emit parametric (measure_a, measure_b) curves as the "
                    "swept parameter runs over its grid, one block per pair "
                    "and photon number.")
    mutual.add_argument("--pairs", default="hs-re,f-hs,f-re",
                        help="comma subset of hs-re,f-hs,f-re (default: all three)")
    _add_grid_args(mutual, params=("x", "nbar"))
    mutual.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(mutual)
    mutual.set_defaults(func=cmd_mutual)

    verify = sub.add_parser(
        "verify", help="run the self-verification suite",
        description="Check every library invariant, including closed forms "
                    "against an independent tightened-tolerance series oracle.")
    verify.add_argument("--grid", choices=("small", "full"), default="full",
                        help="grid size ('small' completes in a few seconds)")
    _add_common(verify)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, UnsupportedError, NormalizationError,
            ConvergenceError, DegenerateError, OSError) as exc:
        print(f"nongauss: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
