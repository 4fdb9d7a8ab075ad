"""
Command-line front end.

    twoslit pattern        joint density P(x_fixed, y) -> CSV
    twoslit overlap-sweep  final vs. initial overlap over sigma_bar -> CSV
    twoslit figure N       presets for the three published figures
    twoslit validate       closed forms vs. quadrature report

Parameters come from built-in defaults, then an optional flat ``key = value``
config file (``--config``), then command-line flags. Exit codes: 0 success,
1 physics/validation failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import io
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, validation
from .errors import DegenerateFermionStateError, InvalidParameterError, TwoSlitError
from .slit import SlitGeometry
from .twoparticle import ALL_STATISTICS, Statistics, detection_pattern, initial_overlap, width_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GRID_NOTE = "no axis ranges are given for the published figures; default grid used"


@dataclass(frozen=True)
class RunConfig:
    sigma: float = 1.0
    sigma_bar: float = 2.0
    b: float = 0.1
    x0: float = 0.4
    tau_s: float = 0.2
    tau_d: float = 0.2
    x_fixed: float = 0.0
    y_min: float = -4.0
    y_max: float = 4.0
    y_steps: int = 801
    statistics: tuple = ALL_STATISTICS
    output_path: str = None
    sb_min: float = 0.1
    sb_max: float = 5.0
    sb_steps: int = 50

    def __post_init__(self):
        for name in ("sigma", "sigma_bar", "b", "x0", "tau_d"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise InvalidParameterError("%s must be positive, got %r" % (name, v))
        if not (np.isfinite(self.tau_s) and self.tau_s >= 0):
            raise InvalidParameterError("tau_s must be non-negative, got %r" % (self.tau_s,))
        if not self.y_min < self.y_max:
            raise InvalidParameterError("y_min must be below y_max")
        if self.y_steps < 2:
            raise InvalidParameterError("y_steps must be >= 2")
        if not 0 < self.sb_min <= self.sb_max or self.sb_steps < 1:
            raise InvalidParameterError("invalid sigma_bar sweep range")
        if not self.statistics:
            raise InvalidParameterError("at least one statistics family is required")

    def y_grid(self):
        return np.linspace(self.y_min, self.y_max, self.y_steps)

    def sweep_grid(self):
        return np.linspace(self.sb_min, self.sb_max, self.sb_steps)

    def geometry(self):
        return SlitGeometry(self.b, self.x0)


FIGURE_PRESETS = {
    "1": dict(sigma_bar=2.0),
    "2": dict(sigma_bar=4.0),
    "3": dict(),
}

_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _parse_stats(text):
    if isinstance(text, (tuple, list)):
        return tuple(Statistics.parse(s) for s in text)
    items = [s for s in str(text).replace(" ", "").split(",") if s]
    stats = []
    for s in items:
        stat = Statistics.parse(s)
        if stat not in stats:
            stats.append(stat)
    return tuple(sorted(stats, key=ALL_STATISTICS.index))


def _coerce(key, value):
    if key in ("statistics", "stats"):
        return "statistics", _parse_stats(value)
    if key in ("out", "output", "output_path"):
        return "output_path", str(value)
    if key not in _FIELD_TYPES:
        raise InvalidParameterError("unknown configuration key %r" % (key,))
    try:
        return key, int(value) if key.endswith("_steps") else float(value)
    except ValueError:
        raise InvalidParameterError("bad value for %s: %r" % (key, value)) from None


def read_config_file(path):
    """Flat ``key = value`` file; ``#`` comments; keys may use '-' or '_'."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    with open(path) as fh:
        parser.read_string("[run]\n" + fh.read())
    return dict(_coerce(k.replace("-", "_"), v) for k, v in parser["run"].items())


def build_config(args, preset=None):
    values = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    if preset:
        values.update(preset)
    for key in list(_FIELD_TYPES) + ["stats", "out"]:
        v = getattr(args, key, None)
        if v is not None:
            k, cv = _coerce(key, v)
            values[k] = cv
    return RunConfig(**values)


# ---------------------------------------------------------------- output


def _fmt(v):
    return "%.16e" % v


def _metadata(cfg, kind, units, extra=()):
    lines = ["# twoslit %s %s" % (__version__, kind)]
    for f in dataclasses.fields(RunConfig):
        if f.name in ("output_path", "statistics"):
            continue
        lines.append("# %s = %r" % (f.name, getattr(cfg, f.name)))
    lines.append("# statistics = %s" % ",".join(s.value for s in cfg.statistics))
    lines.append("# units: %s" % units)
    lines.extend("# %s" % e for e in extra)
    return lines


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _csv(meta, header, rows):
    buf = io.StringIO()
    buf.write("\n".join(meta) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def pattern_csv(cfg, extra_meta=()):
    sys_ = width_pair(cfg.sigma, cfg.sigma_bar, cfg.geometry(), cfg.tau_s, cfg.tau_d)
    pat = detection_pattern(cfg.x_fixed, cfg.y_grid(), sys_, cfg.statistics)
    header = ["y"] + [s.column for s in cfg.statistics]
    cols = [pat.y_grid] + [pat.density[s] for s in cfg.statistics]
    meta = _metadata(
        cfg,
        "pattern",
        "y in um, densities in um^-2",
        ("final_overlap_sq = %.17g" % sys_.overlap_sq,) + tuple(extra_meta),
    )
    return _csv(meta, header, zip(*cols))


def overlap_sweep_csv(cfg, extra_meta=()):
    g = cfg.geometry()
    rows = []
    for sb in cfg.sweep_grid():
        s = width_pair(cfg.sigma, sb, g, cfg.tau_s, cfg.tau_d)
        rows.append((sb, initial_overlap(cfg.sigma, sb), s.overlap_sq))
    meta = _metadata(
        cfg, "overlap-sweep", "sigma_bar in um^-1, overlaps dimensionless", tuple(extra_meta)
    )
    return _csv(meta, ["sigma_bar", "initial_overlap", "final_overlap_sq"], rows)


def validate_report(cfg):
    results = validation.run_all(cfg)
    lines = ["# twoslit %s validate" % __version__]
    lines += [r.line() for r in results]
    lines.append("")
    lines.append("overlap table (sigma = 1): formula vs quoted values")
    lines.append(
        "%9s %16s %14s %16s %14s" % ("sigma_bar", "initial(formula)", "initial(quoted)", "final(computed)", "final(quoted)")
    )
    for sb, init_f, init_q, fin_c, fin_q in validation.overlap_table(cfg):
        flag = ""
        if abs(init_f - init_q) > 0.01 or abs(fin_c - fin_q) > 0.02:
            flag = "  <- differs from quoted"
        lines.append("%9.2f %16.4f %14.2f %16.4f %14.2f%s" % (sb, init_f, init_q, fin_c, fin_q, flag))
    ok = all(r.passed for r in results)
    lines.append("")
    lines.append("RESULT %s (%d checks)" % ("PASS" if ok else "FAIL", len(results)))
    return "\n".join(lines) + "\n", ok


# ---------------------------------------------------------------- argparse


def _common(parser):
    parser.add_argument("--config", help="flat key = value parameter file")
    parser.add_argument("--sigma", type=float, help="mode width of particle 1 [1/um]")
    parser.add_argument("--sigma-bar", dest="sigma_bar", type=float, help="mode width of particle 2 [1/um]")
    parser.add_argument("--b", type=float, help="Gaussian slit half-width [um]")
    parser.add_argument("--x0", type=float, help="slit-centre offset [um]")
    parser.add_argument("--tau-s", dest="tau_s", type=float, help="hbar t_s / m [um^2]")
    parser.add_argument("--tau-d", dest="tau_d", type=float, help="hbar (t - t_s) / m [um^2]")
    parser.add_argument("--x-fixed", dest="x_fixed", type=float, help="fixed detector position [um]")
    parser.add_argument("--y-min", dest="y_min", type=float)
    parser.add_argument("--y-max", dest="y_max", type=float)
    parser.add_argument("--y-steps", dest="y_steps", type=int)
    parser.add_argument("--stats", help="comma list of distinguishable,boson,fermion")
    parser.add_argument("--out", help="output file (default: stdout)")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="twoslit", description="Two-particle two-slit coincidence patterns."
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("pattern", help="joint density with one detector fixed"))

    sw = sub.add_parser("overlap-sweep", help="final overlap vs sigma_bar")
    _common(sw)
    sw.add_argument("--sb-min", dest="sb_min", type=float)
    sw.add_argument("--sb-max", dest="sb_max", type=float)
    sw.add_argument("--sb-steps", dest="sb_steps", type=int)

    fig = sub.add_parser("figure", help="data behind figure presets 1, 2 and 3")
    fig.add_argument("number", choices=sorted(FIGURE_PRESETS))
    fig.add_argument("--out", help="output file (default: stdout)")

    _common(sub.add_parser("validate", help="cross-check closed forms against quadrature"))
    return parser


def run(argv=None):
    args = make_parser().parse_args(argv)
    try:
        if args.command == "figure":
            cfg = RunConfig(**FIGURE_PRESETS[args.number], output_path=args.out)
        else:
            cfg = build_config(args)
    except (InvalidParameterError, OSError, configparser.Error) as exc:
        print("twoslit: configuration error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "pattern":
            text = pattern_csv(cfg)
        elif args.command == "overlap-sweep":
            text = overlap_sweep_csv(cfg)
        elif args.command == "figure":
            extra = ("figure %s preset; %s" % (args.number, GRID_NOTE),)
            text = overlap_sweep_csv(cfg, extra) if args.number == "3" else pattern_csv(cfg, extra)
        else:
            text, ok = validate_report(cfg)
            _emit(text, cfg.output_path)
            return EXIT_OK if ok else EXIT_FAIL
    except DegenerateFermionStateError as exc:
        print(
            "twoslit: %s; drop 'fermion' from --stats or change sigma_bar" % exc, file=sys.stderr
        )
        return EXIT_FAIL
    except TwoSlitError as exc:
        print("twoslit: %s" % exc, file=sys.stderr)
        return EXIT_FAIL

    try:
        _emit(text, cfg.output_path)
    except OSError as exc:
        print("twoslit: cannot write output: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
