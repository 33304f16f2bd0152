"""Command-line front end.

Exit codes: 0 success, 2 parse or usage error, 3 domain error (the input is
well formed but the mathematics rules it out), 4 internal contract
violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from . import bundle
from .contact_tree import ContactTree, contact_from_dict, contact_to_dict, contact_to_dot, contact_tree_of
from .errors import ContractViolation, InputError, SnakeForgeError
from .exact_arith import UniPoly, parse_unipoly
from .permutations import (
    Permutation,
    all_permutations,
    format_permutation,
    is_descending_end,
    is_separable,
    is_snake,
    parse_permutation,
)
from .realization import realize_snake
from .separating_tree import (
    build_separating_tree,
    shape_string,
    tree_from_dict,
    tree_to_dict,
    tree_to_dot,
)
from .snake_extract import arnold_snake_of, refine_critical_points
from .valuation import area_valuation, area_valuation_oracle

COMMANDS = ("check", "realize", "snake-of", "valuation", "enumerate", "plot-data", "export-tree")
FORMATS = ("json", "text", "dot", "csv")
MAX_ENUMERATE_N = 10


class UsageError(InputError):
    pass


@dataclass
class RunConfig:
    command: str
    input: list[str] = field(default_factory=list)
    output_format: str = "text"
    seed: int = 0
    max_n: int = 6
    verify: bool = False
    jobs: int = 1
    sample: int | None = None
    samples: int = 200
    precision: int = 12
    perm: str | None = None
    bundle_path: str | None = None
    roots: bool = False
    lo: str | None = None
    hi: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown format {self.output_format!r}")
        if not 1 <= self.max_n <= MAX_ENUMERATE_N:
            raise UsageError(f"max_n must be between 1 and {MAX_ENUMERATE_N}")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.samples < 1:
            raise UsageError("--samples must be at least 1")
        if self.precision < 1:
            raise UsageError("--precision must be at least 1")
        if self.sample is not None and self.sample < 0:
            raise UsageError("--sample must be non-negative")


def _not_supported(cfg: RunConfig):
    raise UsageError(f"format {cfg.output_format!r} is not available for {cfg.command}")


def _perm_arg(cfg: RunConfig) -> Permutation:
    if not cfg.input:
        raise UsageError(f"{cfg.command} needs a permutation")
    return parse_permutation(" ".join(cfg.input))


# -- check -----------------------------------------------------------------

def orientation(p: Permutation) -> str:
    if len(p) < 2:
        return "none"
    return "descending" if is_descending_end(p) else "ascending"


def cmd_check(cfg: RunConfig) -> dict:
    p = _perm_arg(cfg)
    report = {
        "permutation": format_permutation(p),
        "snake": is_snake(p),
        "separable": is_separable(p),
        "orientation": orientation(p),
    }
    if report["separable"]:
        tree = build_separating_tree(p)
        report["tree_shape"] = shape_string(tree)
        report["tree"] = tree_to_dict(tree)
    return report


def _render_check(report: dict, cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        return json.dumps(report, indent=2)
    if cfg.output_format != "text":
        _not_supported(cfg)
    yes = {True: "yes", False: "no"}
    line = (f"{report['permutation']}: snake={yes[report['snake']]} "
            f"separable={yes[report['separable']]} orientation={report['orientation']}")
    if "tree_shape" in report:
        line += f"\ntree: {report['tree_shape']}"
    return line


# -- realize ---------------------------------------------------------------

def cmd_realize(cfg: RunConfig):
    return realize_snake(_perm_arg(cfg))


def _render_realize(result, cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        return json.dumps(bundle.result_to_dict(result), indent=2)
    if cfg.output_format == "dot":
        return tree_to_dot(result.tree)
    if cfg.output_format != "text":
        _not_supported(cfg)
    d = bundle.result_to_dict(result)
    lines = [
        f"sigma:           {d['sigma']}",
        f"separating tree: {d['tree_shape']}",
        "roots:           " + ", ".join(d["roots"]),
        f"Q:               {d['Q']}",
        f"witness x*:      {d['witness_x']}  (2^-{d['halvings']})",
        "critical values: " + ", ".join(d["critical_values"]),
        f"verified snake:  {d['verified_snake']}",
    ]
    return "\n".join(lines)


# -- snake-of --------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _poly_input(cfg: RunConfig) -> UniPoly:
    """The polynomial named on the command line, or Q at the witness of a realize bundle."""
    if cfg.bundle_path is not None:
        result = bundle.result_from_dict(bundle.loads(_read_text(cfg.bundle_path)))
        return result.polynomial_at_witness()
    if cfg.perm is not None:
        return realize_snake(parse_permutation(cfg.perm)).polynomial_at_witness()
    if not cfg.input:
        raise UsageError(f"{cfg.command} needs a polynomial, --perm or --bundle")
    return parse_unipoly(" ".join(cfg.input))


def cmd_snake_of(cfg: RunConfig):
    p = _poly_input(cfg)
    try:
        return arnold_snake_of(p)
    except ValueError as exc:
        if isinstance(exc, SnakeForgeError):
            raise
        raise UsageError(str(exc)) from exc


def _render_snake_of(cert, cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        return json.dumps(bundle.certificate_to_dict(cert), indent=2)
    if cfg.output_format != "text":
        _not_supported(cfg)
    pts = ", ".join(f"({r.lo}, {r.hi}]" for r in cert.critical_points)
    return f"snake: {format_permutation(cert.critical_value_order)}\ncritical points in: {pts}"


# -- valuation -------------------------------------------------------------

def cmd_valuation(cfg: RunConfig) -> list[dict]:
    if len(cfg.input) < 2:
        raise UsageError("valuation needs at least two roots")
    roots = [parse_unipoly(text, "x") for text in cfg.input]
    tree = contact_tree_of(roots)
    rows = []
    for i in range(1, len(roots)):
        prof = area_valuation(tree, i)
        oracle = area_valuation_oracle(roots, i)
        if prof.valuation != oracle:
            raise ContractViolation(f"area {i}: formula gives {prof.valuation}, integration gives {oracle}")
        rows.append({
            "i": i,
            "gap_valuation": prof.gap_valuation,
            "formula": prof.valuation,
            "oracle": oracle,
            "side": prof.side.value,
        })
    return rows


def _render_table(rows: list[dict], cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        return json.dumps(rows, indent=2)
    if not rows:
        return ""
    if cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if cfg.output_format != "text":
        _not_supported(cfg)
    cols = list(rows[0])
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in cols]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    for r in rows:
        lines.append("  ".join(str(r[c]).rjust(w) for c, w in zip(cols, widths)))
    return "\n".join(lines)


# -- enumerate -------------------------------------------------------------

def _verify_one(images: tuple[int, ...]) -> bool:
    sigma = Permutation(images)
    try:
        result = realize_snake(sigma)
    except SnakeForgeError:
        return False
    if result.verified_snake != sigma:
        return False
    return arnold_snake_of(result.polynomial_at_witness()).critical_value_order == sigma


def census_row(n: int) -> dict:
    perms = snakes = separable = targets = 0
    for p in all_permutations(n):
        perms += 1
        snake, sep = is_snake(p), is_separable(p)
        snakes += snake
        separable += sep
        targets += snake and sep and is_descending_end(p)
    return {"n": n, "permutations": perms, "snakes": snakes, "separable": separable,
            "separable_descending_snakes": targets}


def verification_targets(n: int) -> list[Permutation]:
    return [p for p in all_permutations(n) if is_snake(p) and is_descending_end(p) and is_separable(p)]


def cmd_enumerate(cfg: RunConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    rows = []
    for n in range(1, cfg.max_n + 1):
        row = census_row(n)
        if cfg.verify:
            targets = verification_targets(n)
            if cfg.sample is not None and cfg.sample < len(targets):
                targets = rng.sample(targets, cfg.sample)
            images = [t.images for t in targets]
            if cfg.jobs > 1 and len(images) > 1:
                with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                    outcomes = list(pool.map(_verify_one, images))
            else:
                outcomes = [_verify_one(im) for im in images]
            row["verified"] = sum(outcomes)
            row["failures"] = len(outcomes) - sum(outcomes)
        rows.append(row)
    return rows


# -- plot-data -------------------------------------------------------------

def decimal_string(v: Fraction, digits: int) -> str:
    """Decimal rendering of an exact rational with ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(v.numerator) / Decimal(v.denominator)
        return f"{d:.{digits}g}" if d else "0"


def plot_range(p: UniPoly) -> tuple[Fraction, Fraction]:
    """Span of the real critical points widened by a sixth on each side."""
    points = refine_critical_points(p, Fraction(1, 1024))
    if not points:
        return Fraction(-1), Fraction(1)
    lo = min(r.lo for r in points)
    hi = max(r.hi for r in points)
    margin = (hi - lo) / 6 if hi > lo else Fraction(1)
    return lo - margin, hi + margin


def cmd_plot_data(cfg: RunConfig) -> list[tuple[Fraction, Fraction]]:
    p = _poly_input(cfg)
    lo, hi = plot_range(p)
    if cfg.lo is not None:
        lo = Fraction(cfg.lo)
    if cfg.hi is not None:
        hi = Fraction(cfg.hi)
    if hi < lo:
        raise UsageError(f"empty plot range [{lo}, {hi}]")
    if cfg.samples == 1:
        grid = [lo]
    else:
        step = (hi - lo) / (cfg.samples - 1)
        grid = [lo + k * step for k in range(cfg.samples)]
    return [(y, p(y)) for y in grid]


def _render_plot(points, cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        return json.dumps([[str(y), str(v)] for y, v in points])
    if cfg.output_format not in ("csv", "text"):
        _not_supported(cfg)
    lines = ["y,value"]
    lines += [f"{decimal_string(y, cfg.precision)},{decimal_string(v, cfg.precision)}" for y, v in points]
    return "\n".join(lines)


# -- export-tree -----------------------------------------------------------

def cmd_export_tree(cfg: RunConfig):
    """A separating tree (from a permutation or its JSON) or a contact tree (from roots or its JSON)."""
    if not cfg.input:
        raise UsageError("export-tree needs a permutation, roots, or tree JSON")
    text = " ".join(cfg.input)
    if text.lstrip().startswith("{"):
        data = bundle.loads(text)
        if "valuation" in data:
            return contact_from_dict(data)
        return tree_from_dict(data)
    if cfg.roots:
        return contact_tree_of([parse_unipoly(t, "x") for t in cfg.input])
    return build_separating_tree(parse_permutation(text))


def _render_tree(tree, cfg: RunConfig) -> str:
    is_contact = isinstance(tree, ContactTree)
    if cfg.output_format in ("json", "text"):
        d = contact_to_dict(tree) if is_contact else tree_to_dict(tree)
        return json.dumps(d, indent=2 if cfg.output_format == "json" else None)
    if cfg.output_format == "dot":
        return contact_to_dot(tree) if is_contact else tree_to_dot(tree)
    _not_supported(cfg)


# -- entry point -----------------------------------------------------------

HANDLERS = {
    "check": (cmd_check, _render_check),
    "realize": (cmd_realize, _render_realize),
    "snake-of": (cmd_snake_of, _render_snake_of),
    "valuation": (cmd_valuation, _render_table),
    "enumerate": (cmd_enumerate, _render_table),
    "plot-data": (cmd_plot_data, _render_plot),
    "export-tree": (cmd_export_tree, _render_tree),
}

DEFAULT_FORMAT = {"plot-data": "csv"}


def run(cfg: RunConfig) -> str:
    compute, render = HANDLERS[cfg.command]
    return render(compute(cfg), cfg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled campaigns")

    parser = argparse.ArgumentParser(
        prog="snakeforge",
        description="Realize separable snakes as Morse polynomials and read snakes back off polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="snake / separable / orientation report")
    p.add_argument("input", nargs="+", metavar="PERM")

    p = sub.add_parser("realize", parents=[common], help="build a polynomial with the given snake")
    p.add_argument("input", nargs="+", metavar="PERM")

    p = sub.add_parser("snake-of", parents=[common], help="Arnold snake of a polynomial in y")
    p.add_argument("input", nargs="*", metavar="POLY")
    p.add_argument("--perm", help="use the realized polynomial of this permutation")
    p.add_argument("--bundle", dest="bundle_path", metavar="FILE",
                   help="realize --format json output ('-' for stdin)")

    p = sub.add_parser("valuation", parents=[common], help="area valuations of a family of roots in x")
    p.add_argument("input", nargs="+", metavar="ROOT")

    p = sub.add_parser("enumerate", parents=[common], help="census of snakes and separable permutations")
    p.add_argument("max_n", type=int, nargs="?", default=6)
    p.add_argument("--verify", action="store_true", help="realize and re-extract every target snake")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--sample", type=int, default=None, help="verify only this many seeded targets per n")

    p = sub.add_parser("plot-data", parents=[common], help="sampled graph of a polynomial as CSV")
    p.add_argument("input", nargs="*", metavar="POLY")
    p.add_argument("--perm", help="plot the realized polynomial of this permutation")
    p.add_argument("--bundle", dest="bundle_path", metavar="FILE")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--precision", type=int, default=12, help="significant digits")
    p.add_argument("--lo")
    p.add_argument("--hi")

    p = sub.add_parser("export-tree", parents=[common], help="separating or contact tree as JSON or DOT")
    p.add_argument("input", nargs="+", metavar="INPUT")
    p.add_argument("--roots", action="store_true", help="inputs are roots; export their contact tree")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = vars(args).copy()
    command = fields.pop("command")
    fmt = fields.pop("format") or DEFAULT_FORMAT.get(command, "text")
    known = RunConfig.__dataclass_fields__
    return RunConfig(command=command, output_format=fmt, **{k: v for k, v in fields.items() if k in known})


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = run(config_from_args(args))
    except SnakeForgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if out:
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
