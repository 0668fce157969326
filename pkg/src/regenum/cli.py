"""Command-line interface for the enumeration and asymptotics engines.

Subcommands share one pattern: resolve a weight specification, run the
requested engine over one n or a range, and emit a table.  Tables go to
stdout as CSV by default; with --output they are written to disk, with a
JSON mirror on request and, for the comparison tables, a rendered figure
next to the delimited file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import __version__, asymptotics
from .asymptotics import EstimateRequest, convergence_table, estimate_from_critical_points
from .colorings import (closed_form_coloring_count, coloring_weight_spec,
                        count_matrix_tuples, estimate_coloring_count,
                        exact_coloring_count, expected_table)
from .counting import (weighted_count_brute_force, weighted_count_partitions,
                       weighted_count_series)
from .critical import critical_points, find_sphere_maxima
from .errors import EXIT_OK, EXIT_VALIDATION, ConfigError, RegenumError, ValidationError
from .polynomials import WeightSpec, incidence_polynomial
from .report import (csv_text, render_deviation_figure, write_csv, write_json)

COMMANDS = ("exact", "asym", "crit", "colorings", "expected", "converge", "validate")
EXACT_METHODS = ("series", "partitions", "brute-force", "all")
COLORING_MODES = ("exact", "closed_form", "via_critical_points", "brute_force")

_DESCRIPTIONS = {
    "exact": "exact automorphism-weighted counts as rationals",
    "asym": "log-domain saddle-point estimates of the weighted counts",
    "crit": "dominant critical points of the radial potential",
    "colorings": "proper edge-coloring counts of regular multigraphs",
    "expected": "expected proper colorings of a random regular multigraph",
    "converge": "exact counts against estimates over a range of n",
    "validate": "built-in acceptance checks",
}


@dataclass
class JobConfig:
    """Fully resolved run configuration; one instance drives one run."""

    command: str
    colors: int | None = None
    degree: int | None = None
    weights: str | None = None
    family: str | None = None
    n: int | None = None
    n_range: str | None = None
    mode: str = "exact"
    method: str = "series"
    seed: int = 42
    restarts: int | None = None
    precision_bits: int = 113
    half_edge_cap: int = 8
    tuple_cap: int = 24
    output: str | None = None
    format: str = "csv"
    figure: bool = True
    output_dir: str = "acceptance_artifacts"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "JobConfig":
        values = {f.name: getattr(args, f.name)
                  for f in fields(cls) if hasattr(args, f.name)}
        overrides = getattr(args, "config", None)
        if overrides:
            try:
                with open(overrides) as handle:
                    document = json.load(handle)
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}")
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file is not valid JSON: {exc}")
            if not isinstance(document, dict):
                raise ConfigError("config file must hold a JSON object")
            known = {f.name for f in fields(cls)}
            for key, value in document.items():
                if key not in known or key == "command":
                    raise ConfigError(f"unknown config key: {key}")
                values[key] = value
        config = cls(**values)
        config.check()
        return config

    def check(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command: {self.command}")
        if self.n is not None and self.n_range is not None:
            raise ConfigError("give either --n or --n-range, not both")
        if self.n is not None and self.n < 0:
            raise ConfigError("n must be >= 0")
        if self.precision_bits < 53:
            raise ConfigError("precision-bits must be >= 53")
        if self.seed < 0:
            raise ConfigError("seed must be >= 0")
        if self.restarts is not None and self.restarts < 1:
            raise ConfigError("restarts must be >= 1")
        if self.half_edge_cap < 1 or self.tuple_cap < 1:
            raise ConfigError("caps must be >= 1")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format: {self.format}")
        if self.command == "exact" and self.method not in EXACT_METHODS:
            raise ConfigError(f"unknown method: {self.method}")
        if self.command == "colorings" and self.mode not in COLORING_MODES:
            raise ConfigError(f"unknown mode: {self.mode}")
        if self.command != "validate":
            if self.colors is None or self.degree is None:
                raise ConfigError("--colors and --degree are required")
            if self.colors < 1:
                raise ConfigError("colors must be >= 1")
            if self.degree < 3:
                raise ConfigError("degree must be >= 3")
        if self.command in ("colorings", "expected"):
            if self.weights is not None or self.family is not None:
                raise ConfigError(
                    f"{self.command} fixes the weights itself; "
                    "--weights/--family are not accepted")


def parse_weights(text: str, colors: int, degree: int) -> WeightSpec:
    """Weight specification from a JSON list of {w, num, den} entries."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"weights are not valid JSON: {exc}")
    if not isinstance(data, list) or not data:
        raise ConfigError("weights must be a non-empty JSON list")
    mapping: dict[tuple[int, ...], Fraction] = {}
    for entry in data:
        if not isinstance(entry, dict) or set(entry) != {"w", "num", "den"}:
            raise ConfigError("each weight entry needs exactly the keys w, num, den")
        w = entry["w"]
        if (not isinstance(w, list) or len(w) != colors
                or not all(isinstance(e, int) and e >= 0 for e in w)):
            raise ConfigError(f"w must be a list of {colors} non-negative integers")
        if sum(w) != degree:
            raise ConfigError(f"|w| != degree for w = {w}")
        key = tuple(w)
        if key in mapping:
            raise ConfigError(f"duplicate weight key: {w}")
        num, den = entry["num"], entry["den"]
        if not isinstance(num, int) or not isinstance(den, int):
            raise ConfigError("num and den must be integers")
        if den == 0:
            raise ConfigError(f"den = 0 for w = {w}")
        mapping[key] = Fraction(num, den)
    try:
        return WeightSpec(colors=colors, degree=degree, weights=mapping)
    except ValueError as exc:
        raise ConfigError(str(exc))


def weights_echo(spec: WeightSpec) -> list[dict]:
    return [{"w": list(w), "num": value.numerator, "den": value.denominator}
            for w, value in sorted(spec.weights.items())]


def build_spec(config: JobConfig) -> WeightSpec:
    if config.family is not None:
        if config.weights is not None:
            raise ConfigError("give either --weights or --family, not both")
        if config.family != "ek":
            raise ConfigError(f"unknown family: {config.family}")
        if config.degree > config.colors:
            raise ConfigError("family ek needs degree <= colors")
        return coloring_weight_spec(config.degree, config.colors)
    if config.weights is None:
        raise ConfigError("either --weights or --family is required")
    return parse_weights(config.weights, config.colors, config.degree)


def parse_n_range(text: str) -> list[int]:
    """Inclusive range text a:b or a:b:step."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ConfigError("n-range must look like a:b or a:b:step")
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise ConfigError("n-range parts must be integers")
    start, stop = numbers[0], numbers[1]
    step = numbers[2] if len(numbers) == 3 else 1
    if start < 0 or stop < start or step < 1:
        raise ConfigError("n-range needs 0 <= a <= b and step >= 1")
    return list(range(start, stop + 1, step))


def resolve_ns(config: JobConfig) -> list[int]:
    if config.n is not None:
        return [config.n]
    if config.n_range is not None:
        return parse_n_range(config.n_range)
    raise ConfigError("--n or --n-range is required")


def config_echo(config: JobConfig, spec: WeightSpec | None) -> dict:
    echo = {
        "command": config.command,
        "colors": config.colors,
        "degree": config.degree,
        "weights": weights_echo(spec) if spec is not None else None,
        "family": config.family,
        "n": config.n,
        "n_range": config.n_range,
        "seed": config.seed,
        "restarts": config.restarts,
        "precision_bits": config.precision_bits,
        "half_edge_cap": config.half_edge_cap,
        "tuple_cap": config.tuple_cap,
        "format": config.format,
    }
    if config.command == "exact":
        echo["method"] = config.method
    if config.command == "colorings":
        echo["mode"] = config.mode
    return echo


def _log_value_cells(value) -> list:
    return [value.sign, value.log10(), value.to_float()]


def _run_exact(config: JobConfig, spec: WeightSpec):
    rows = []
    for n in resolve_ns(config):
        candidates = {}
        if config.method in ("series", "all"):
            candidates["series"] = weighted_count_series(n, spec)
        if config.method in ("partitions", "all"):
            candidates["partitions"] = weighted_count_partitions(n, spec)
        if config.method in ("brute-force", "all"):
            candidates["brute-force"] = weighted_count_brute_force(
                n, spec, half_edge_cap=config.half_edge_cap)
        values = set(candidates.values())
        if len(values) != 1:
            raise ValidationError(f"methods disagree at n={n}: {candidates}")
        value = values.pop()
        rows.append((n, value.numerator, value.denominator))
    return ["n", "num", "den"], rows, None


def _estimate_rows(config: JobConfig, spec: WeightSpec, ns: list[int]):
    incidence = incidence_polynomial(spec)
    points = critical_points(incidence, restarts=config.restarts, seed=config.seed)
    rows = []
    for n in ns:
        request = EstimateRequest(n=n, degree=spec.degree, colors=spec.colors)
        estimate = estimate_from_critical_points(request, points)
        rows.append((n, float(request.euler_index), *_log_value_cells(estimate)))
    return rows


def _run_asym(config: JobConfig, spec: WeightSpec):
    rows = _estimate_rows(config, spec, resolve_ns(config))
    return ["n", "l", "sign", "log10_abs", "decimal"], rows, None


def _run_crit(config: JobConfig, spec: WeightSpec):
    incidence = incidence_polynomial(spec)
    points = critical_points(incidence, restarts=config.restarts, seed=config.seed)
    columns = [f"x{i}" for i in range(spec.colors)]
    columns += ["tau_re", "tau_im", "g_re", "g_im",
                "hessdet_re", "hessdet_im", "nondegenerate"]
    rows = []
    for point in points:
        rows.append((*[float(c) for c in point.direction],
                     point.scale.real, point.scale.imag,
                     point.potential_value.real, point.potential_value.imag,
                     point.potential_hessian_det.real,
                     point.potential_hessian_det.imag,
                     point.nondegenerate))
    return columns, rows, None


def _run_colorings(config: JobConfig):
    k, c = config.degree, config.colors
    rows = []
    if config.mode == "exact":
        for n in resolve_ns(config):
            value = exact_coloring_count(n, k, c)
            rows.append((n, value.numerator, value.denominator))
        return ["n", "num", "den"], rows, None
    if config.mode == "brute_force":
        for n in resolve_ns(config):
            tuples = count_matrix_tuples(n, k, c, cap=config.tuple_cap)
            value = Fraction(tuples, math.factorial(n))
            rows.append((n, tuples, value.numerator, value.denominator))
        return ["n", "tuples", "num", "den"], rows, None
    if config.mode == "via_critical_points" and k > c:
        raise ConfigError("via_critical_points needs degree <= colors")
    evaluate = (closed_form_coloring_count if config.mode == "closed_form"
                else estimate_coloring_count)
    for n in resolve_ns(config):
        euler = n * Fraction(k, 2) - n
        value = evaluate(n, k, c)
        rows.append((n, float(euler), *_log_value_cells(value)))
    return ["n", "l", "sign", "log10_abs", "decimal"], rows, None


def _run_expected(config: JobConfig):
    table = expected_table(config.degree, config.colors, resolve_ns(config))
    columns = ["n", "l", "empirical_sign", "empirical_log10",
               "closed_sign", "closed_log10", "ratio", "abs_ratio_minus_1"]
    rows = []
    for row in table:
        rows.append((row.n, row.euler_index,
                     row.empirical.sign, row.empirical.log10(),
                     row.closed_form.sign, row.closed_form.log10(),
                     row.ratio, row.deviation))
    figure = ([row.n for row in table], [row.deviation for row in table],
              "expected colorings: |empirical/closed - 1|")
    return columns, rows, figure


def _run_converge(config: JobConfig, spec: WeightSpec):
    table = convergence_table(spec, resolve_ns(config),
                              restarts=config.restarts, seed=config.seed)
    columns = ["n", "l", "A_exact_log10", "A_est_log10", "ratio",
               "abs_ratio_minus_1"]
    rows = [(row.n, row.euler_index, row.exact_log10, row.estimate_log10,
             row.ratio, row.deviation) for row in table]
    figure = ([row.n for row in table], [row.deviation for row in table],
              "exact vs estimate: |ratio - 1|")
    return columns, rows, figure


def _run_validate(config: JobConfig) -> int:
    from .acceptance import run_all

    results = run_all(output_dir=Path(config.output_dir), seed=config.seed)
    columns = ["criterion", "title", "passed", "detail"]
    rows = [(r.number, r.title, r.passed, r.detail) for r in results]
    write_csv(Path(config.output_dir) / "acceptance_results.csv", columns, rows)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] criterion {result.number}: {result.title}")
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} criteria failed")
        return EXIT_VALIDATION
    print(f"all {len(results)} criteria passed")
    return EXIT_OK


def _emit(config: JobConfig, spec: WeightSpec | None, columns, rows, figure) -> None:
    if config.output is None:
        print(csv_text(columns, rows))
        return
    path = Path(config.output)
    write_csv(path, columns, rows)
    written = [path]
    if config.format == "json":
        metadata = {
            "tool": "regenum",
            "version": __version__,
            "description": _DESCRIPTIONS[config.command],
            "config": config_echo(config, spec),
        }
        json_path = path.with_suffix(".json")
        write_json(json_path, columns, rows, metadata)
        written.append(json_path)
    if figure is not None and config.figure:
        ns, deviations, title = figure
        figure_path = path.with_suffix(".png")
        if render_deviation_figure(figure_path, ns, deviations, title):
            written.append(figure_path)
    for artifact in written:
        print(f"wrote: {artifact}")


def run(config: JobConfig) -> int:
    """Execute one configured job; returns the process exit status."""
    previous = asymptotics.set_working_precision(config.precision_bits)
    try:
        if config.command == "validate":
            return _run_validate(config)
        if config.command in ("colorings", "expected"):
            spec = None
            columns, rows, figure = (_run_colorings(config)
                                     if config.command == "colorings"
                                     else _run_expected(config))
        else:
            spec = build_spec(config)
            handler = {"exact": _run_exact, "asym": _run_asym,
                       "crit": _run_crit, "converge": _run_converge}[config.command]
            columns, rows, figure = handler(config, spec)
        bare = (config.command == "exact"
                or (config.command == "colorings" and config.mode == "exact"))
        if bare and config.n is not None and config.output is None:
            value = Fraction(rows[0][-2], rows[0][-1])
            print(value)
            return EXIT_OK
        _emit(config, spec, columns, rows, figure)
        return EXIT_OK
    finally:
        asymptotics.set_working_precision(previous)


def _add_common(parser: argparse.ArgumentParser, with_spec: bool = True,
                with_n: bool = True) -> None:
    if with_spec:
        parser.add_argument("--colors", "-c", type=int, required=True,
                            help="number of edge colors (variables)")
        parser.add_argument("--degree", "-k", type=int, required=True,
                            help="vertex degree (homogeneity of the weights)")
    if with_n:
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--n", type=int, help="single number of vertices")
        group.add_argument("--n-range", type=str,
                           help="inclusive range a:b or a:b:step")
    parser.add_argument("--seed", type=int, default=42,
                        help="seed for the multistart search (default 42)")
    parser.add_argument("--restarts", type=int, default=None,
                        help="multistart restarts (default scales with colors)")
    parser.add_argument("--precision-bits", type=int, default=113,
                        help="log-domain working precision in bits (default 113)")
    parser.add_argument("--half-edge-cap", type=int, default=8,
                        help="largest half-edge count for brute force (default 8)")
    parser.add_argument("--tuple-cap", type=int, default=24,
                        help="largest cell count for the matrix-tuple oracle")
    parser.add_argument("--output", type=str, default=None,
                        help="CSV destination; prints to stdout when omitted")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="with --output, json adds a mirror with metadata")
    parser.add_argument("--no-figure", dest="figure", action="store_false",
                        help="skip the rendered figure next to the CSV")
    parser.add_argument("--config", type=str, default=None,
                        help="JSON file whose keys override the flags")


def _add_weight_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--weights", type=str,
                       help='JSON list of {"w": [...], "num": p, "den": q}')
    group.add_argument("--family", choices=("ek",),
                       help="builtin weights: ek puts weight w! on 0/1 vectors")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regenum",
        description="Automorphism-weighted enumeration of edge-colored "
                    "regular multigraphs: exact rational counts, critical "
                    "points, and saddle-point asymptotics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help=_DESCRIPTIONS["exact"])
    _add_weight_flags(p)
    p.add_argument("--method", choices=EXACT_METHODS, default="series",
                   help="counting route; all cross-checks every route")
    _add_common(p)

    p = sub.add_parser("asym", help=_DESCRIPTIONS["asym"])
    _add_weight_flags(p)
    _add_common(p)

    p = sub.add_parser("crit", help=_DESCRIPTIONS["crit"])
    _add_weight_flags(p)
    _add_common(p, with_n=False)

    p = sub.add_parser("colorings", help=_DESCRIPTIONS["colorings"])
    p.add_argument("--mode", choices=COLORING_MODES, default="exact",
                   help="exact rationals, closed form, estimates, or the "
                        "matrix-tuple oracle")
    _add_common(p)

    p = sub.add_parser("expected", help=_DESCRIPTIONS["expected"])
    _add_common(p)

    p = sub.add_parser("converge", help=_DESCRIPTIONS["converge"])
    _add_weight_flags(p)
    _add_common(p)

    p = sub.add_parser("validate", help=_DESCRIPTIONS["validate"])
    p.add_argument("--output-dir", type=str, default="acceptance_artifacts",
                   help="directory for acceptance artifacts")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--config", type=str, default=None,
                   help="JSON file whose keys override the flags")

    return parser


def _emit_error(exc: RegenumError) -> None:
    document = {"error": type(exc).__name__, "message": str(exc),
                "exit_code": exc.exit_code}
    print(json.dumps(document, sort_keys=True), file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = JobConfig.from_args(args)
        return run(config)
    except RegenumError as exc:
        _emit_error(exc)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
