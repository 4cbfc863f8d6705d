"""``phaseint``: level tables, exact Stokes constants, line diagrams, profiles and itineraries.

Exit codes
----------
0  success
2  usage error (bad family, bad range, unknown option or config key)
3  spectral oracle failed (table rows are still written, without E_exact)
4  a line trace failed (the diagram is still written, without that line)
5  itinerary file could not be parsed (the line number is reported)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .connection import (
    builtin_itinerary,
    itinerary_trace,
    parse_itinerary,
    quantization_residuals,
)
from .errors import ItineraryError, NotApplicable, PhaseIntError
from .geometry import diagram, diagram_csv, diagram_svg
from .oracle import OracleConfig, exact_levels
from .potentials import Family, as_family, get_family, potential_profile
from .quantization import level_table
from .stokes_exact import gap_sweep

log = logging.getLogger("phaseint")

EXIT_OK, EXIT_USAGE, EXIT_ORACLE, EXIT_TRACE, EXIT_PARSE = 0, 2, 3, 4, 5

EPILOG = """\
exit codes: 0 ok, 2 usage, 3 oracle failure, 4 trace failure, 5 itinerary parse error

config file (--config PATH): one `key = value` per line, `#` starts a comment.
Keys are long option names without the leading dashes (`n-max = 6`,
`grid_points = 4000`); boolean switches take true/false.  Options given on
the command line override the file.
"""


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """Machine serialization: 10 significant digits."""
    if x is None:
        return ""
    return f"{x:.10g}"


def _num(x):
    return None if x is None else float(f"{x:.10g}")


def write_output(text: str, path: str | None):
    """Write to ``path`` atomically (temp file + rename), or to stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".phaseint-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(rows, header):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def _family_arg(name):
    try:
        return as_family(name)
    except NotApplicable as exc:
        raise UsageError(str(exc)) from None


def _oracle_config(args) -> OracleConfig:
    kw = {}
    for key in ("box_half_width", "grid_points", "shooting_step", "energy_scan_max", "scan_step"):
        val = getattr(args, key, None)
        if val is not None:
            kw[key] = val
    try:
        return OracleConfig(**kw).validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_table(args) -> int:
    fam = _family_arg(args.family)
    if not get_family(fam).has_bound_states:
        raise UsageError(f"{fam} has no bound states")
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    if args.format == "svg":
        raise UsageError("svg output is only available for diagram")
    cfg = None if args.no_oracle else _oracle_config(args)
    rows = level_table(fam, args.n_max, cfg, use_oracle=not args.no_oracle)
    failed = any(r.oracle_failed for r in rows)
    if args.format == "json":
        doc = {
            "command": "table",
            "family": fam.value,
            "oracle": "skipped" if args.no_oracle else ("failed" if failed else "ok"),
            "rows": [
                {
                    "n": r.n,
                    "e_exact": _num(r.e_exact),
                    "e_wkb": _num(r.e_wkb),
                    "cos_w": _num(r.cos_w),
                    "e_pi": _num(r.e_pi),
                    "exact_estimate": _num(r.exact_estimate),
                }
                for r in rows
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv(
            [[r.n, fmt(r.e_exact), fmt(r.e_wkb), fmt(r.cos_w), fmt(r.e_pi)] for r in rows],
            ["n", "e_exact", "e_wkb", "cos_w", "e_pi"],
        )
    else:
        lines = [f"{'n':>2}  {'E_exact':>10}  {'E_wkb':>10}  {'cos(W)':>12}  {'E_PI':>10}"]
        for r in rows:
            ex = "-" if r.e_exact is None else f"{r.e_exact:.6g}"
            lines.append(f"{r.n:>2}  {ex:>10}  {r.e_wkb:>10.6g}  {r.cos_w:>12.5g}  {r.e_pi:>10.6g}")
        text = "\n".join(lines) + "\n"
    write_output(text, args.output)
    if failed:
        print("error: spectral oracle failed; E_exact omitted", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def cmd_stokes(args) -> int:
    fam = _family_arg(args.family)
    if fam not in (Family.WEBER, Family.BUDDEN):
        raise UsageError(f"no exact Stokes constant for {fam}; use weber or budden")
    if args.at is not None:
        params = [args.at]
    else:
        lo, hi, n = args.start, args.stop, args.points
        if n < 1:
            raise UsageError("--points must be at least 1")
        params = [lo] if n == 1 else np.linspace(lo, hi, n).tolist()
    if any(not p > 0 for p in params):
        raise UsageError("parameters must be positive")
    samples = gap_sweep(fam, params)
    if args.format == "json":
        doc = {
            "command": "stokes",
            "family": fam.value,
            "samples": [
                {"parameter": _num(s.parameter), "re_s": _num(s.s.real), "im_s": _num(s.s.imag), "gap": _num(s.gap)}
                for s in samples
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv(
            [[fmt(s.parameter), fmt(s.s.real), fmt(s.s.imag), fmt(s.gap)] for s in samples],
            ["param", "re_s", "im_s", "gap"],
        )
    else:
        raise UsageError("stokes writes csv or json")
    write_output(text, args.output)
    return EXIT_OK


def cmd_diagram(args) -> int:
    fam = _family_arg(args.family)
    param = args.param if args.param is not None else 1.0
    if not param > 0:
        raise UsageError("the parameter must be positive")
    d = diagram(fam, param, strict=False)
    if args.format == "svg":
        text = diagram_svg(d)
    elif args.format == "csv":
        text = diagram_csv(d)
    else:
        raise UsageError("diagram writes svg or csv")
    write_output(text, args.output)
    if d.failures:
        for vid, kind, ang, msg in d.failures:
            print(f"warning: {kind} line from vertex {vid} at angle {ang:.4f} failed: {msg}", file=sys.stderr)
        return EXIT_TRACE
    return EXIT_OK


def cmd_profile(args) -> int:
    fam = _family_arg(args.family)
    if not get_family(fam).has_bound_states:
        raise UsageError(f"{fam} has no bound states")
    energy = args.param
    if energy is None:
        energy = exact_levels(fam, 0, _oracle_config(args))[0].value
    if args.points < 2 or not args.x_max > args.x_min:
        raise UsageError("need --points >= 2 and --x-max > --x-min")
    xs = np.linspace(args.x_min, args.x_max, args.points)
    pairs = potential_profile(fam, energy, xs)
    if args.format == "svg":
        text = profile_svg(fam.value, energy, pairs)
    elif args.format == "json":
        doc = {"command": "profile", "family": fam.value, "energy": _num(energy),
               "points": [{"x": _num(x), "v": _num(v)} for x, v in pairs]}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = _csv([[fmt(x), fmt(v)] for x, v in pairs], ["x", "v"])
    write_output(text, args.output)
    return EXIT_OK


def profile_svg(name, energy, pairs, width=480, height=320) -> str:
    xs = [x for x, _ in pairs]
    vs = [v for _, v in pairs]
    x0, x1 = min(xs), max(xs)
    v0, v1 = min(vs + [0.0]), max(vs + [0.0])
    span_v = (v1 - v0) or 1.0

    def px(x, v):
        return f"{fmt((x - x0) / (x1 - x0) * width)},{fmt((v1 - v) / span_v * height)}"

    path = "M " + " L ".join(px(x, v) for x, v in pairs)
    zero = fmt(v1 / span_v * height)
    return "\n".join(
        [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f"<title>{name} profile, E = {fmt(energy)}</title>",
            f'<line x1="0" y1="{zero}" x2="{width}" y2="{zero}" stroke="#999" stroke-width="0.8"/>',
            f'<path d="{path}" stroke="black" stroke-width="1.2" fill="none"/>',
            "</svg>",
        ]
    ) + "\n"


def cmd_itinerary(args) -> int:
    fam = _family_arg(args.family)
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                src = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from None
        try:
            itin = parse_itinerary(src, fam)
        except ItineraryError as exc:
            print(f"error: {args.file}: {exc}", file=sys.stderr)
            return EXIT_PARSE
    else:
        itin = builtin_itinerary(fam)
    s = complex(args.s_re, args.s_im)
    w = args.W
    if w is None:
        raise UsageError("--W is required (the action, or c for budden)")
    try:
        history = itinerary_trace(fam, w, s, itin)
    except ItineraryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    terminal = history[-1]
    residuals = None
    if fam in (Family.QUARTIC, Family.SEXTIC, Family.PT_CUBIC):
        dom, sym = quantization_residuals(fam, w, s, args.n)
        residuals = {
            "dominant": {"re": _num(dom.real), "im": _num(dom.imag), "abs": _num(abs(dom))},
            "symmetry": {"re": _num(sym.real), "im": _num(sym.imag), "abs": _num(abs(sym))},
        }
    terms = terminal.to_dict()["terms"]
    for t in terms:
        t["re"], t["im"] = _num(t["re"]), _num(t["im"])
    doc = {
        "command": "itinerary",
        "family": fam.value,
        "W": _num(w),
        "s": {"re": _num(s.real), "im": _num(s.imag)},
        "steps": len(itin.steps),
        "terminal": {"terms": terms},
        "residuals": residuals,
    }
    write_output(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def _add_oracle_flags(p):
    g = p.add_argument_group("oracle overrides")
    g.add_argument("--box-half-width", type=float, dest="box_half_width")
    g.add_argument("--grid-points", type=int, dest="grid_points")
    g.add_argument("--shooting-step", type=float, dest="shooting_step")
    g.add_argument("--energy-scan-max", type=float, dest="energy_scan_max")
    g.add_argument("--scan-step", type=float, dest="scan_step")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaseint",
        description="Phase-integral energy levels and Stokes constants.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", metavar="PATH", help="key = value file of option defaults")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="level table: E_exact, E_wkb, cos(W), E_PI", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("family")
    p.add_argument("--n-max", type=int, default=4, dest="n_max")
    p.add_argument("--no-oracle", action="store_true", dest="no_oracle", help="skip the E_exact column")
    p.add_argument("--format", choices=["text", "csv", "json", "svg"], default="text")
    p.add_argument("-o", "--output")
    _add_oracle_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("stokes", help="exact Stokes constants (weber, budden)", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("family")
    p.add_argument("--from", type=float, default=0.2, dest="start")
    p.add_argument("--to", type=float, default=20.0, dest="stop")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--at", type=float, help="a single parameter value")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stokes)

    p = sub.add_parser("diagram", help="Stokes and anti-Stokes lines as SVG or CSV", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("family")
    p.add_argument("--E", "--c", type=float, dest="param", help="energy (c for budden); default 1")
    p.add_argument("--format", choices=["svg", "csv"], default="svg")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("profile", help="real-axis potential V(x) - E", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("family")
    p.add_argument("--E", type=float, dest="param", help="energy; default is the computed ground level")
    p.add_argument("--x-min", type=float, default=-3.0, dest="x_min")
    p.add_argument("--x-max", type=float, default=3.0, dest="x_max")
    p.add_argument("--points", type=int, default=121)
    p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p.add_argument("-o", "--output")
    _add_oracle_flags(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("itinerary", help="run a continuation itinerary, print JSON", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("family")
    p.add_argument("--W", type=float, dest="W", help="action W (c for budden)")
    p.add_argument("--s-re", type=float, default=0.0, dest="s_re")
    p.add_argument("--s-im", type=float, default=1.0, dest="s_im")
    p.add_argument("--n", type=int, help="level index for the parity target")
    p.add_argument("--file", help="itinerary text file instead of the built-in walk")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_itinerary)
    return parser


def read_config(path: str) -> list:
    """Turn a ``key = value`` file into option tokens placed before the user's own."""
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, val = (part.strip() for part in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            low = val.lower()
            if low in ("true", "yes", "on"):
                tokens.append(flag)
            elif low in ("false", "no", "off"):
                continue
            else:
                tokens += [flag, val]
    return tokens


def _splice_config(argv):
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    tokens = read_config(known.config)
    # the config options belong to the subcommand: insert them right after it
    cmds = {"table", "stokes", "diagram", "profile", "itinerary"}
    for i, tok in enumerate(argv):
        if tok in cmds:
            # keep the positional family first
            j = i + 2 if i + 1 < len(argv) and not argv[i + 1].startswith("-") else i + 1
            return argv[:j] + tokens + argv[j:]
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _splice_config(argv)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PhaseIntError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
