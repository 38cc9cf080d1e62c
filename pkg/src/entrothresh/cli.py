"""Batch command-line front end.

    entrothresh run IMAGE... [--q Q ...] [--mode diag|full|1d] [--out DIR]
                            [--dump-surface] [--dump-histogram] [--report text|csv]
                            [--background quadrant|complement]
    entrothresh gen --kind bimodal|trimodal|constant [...] --out PATH

Exit status: 0 on success, 1 if any image failed to decode or was
degenerate (the rest are still processed), 2 on invalid arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .baseline1d import build_histogram_1d, criterion_values_1d
from .errors import DegenerateHistogram, InvalidParams, ThresholdingError
from .histogram import BACKGROUNDS, JointHistogram, build_prefix_tables, joint_histogram
from .imgio import GrayImage, binarize, load_pgm, save_pgm
from .search import criterion_surface, find_threshold
from .synthetic import default_radius, generate_synthetic, region_labels

REPORT_HEADER = ["image", "q", "mode", "t_star", "s_star", "criterion", "millis"]
MODES = ("diag", "full", "1d")


@dataclass
class RunConfig:
    inputs: list[Path]
    qs: list[float] = field(default_factory=lambda: [0.1])
    mode: str = "diag"
    out: Path = Path(".")
    dump_surface: bool = False
    dump_histogram: bool = False
    report: str = "text"
    background: str = "quadrant"

    def __post_init__(self):
        if not self.inputs:
            raise ValueError("at least one input image is required")
        if any(not q > 0 for q in self.qs):
            raise ValueError("every q must be positive")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


def format_q(q: float) -> str:
    return f"{q:g}"


def format_value(v: float) -> str:
    if v == float("-inf"):
        return "-inf"
    return repr(float(v))


def write_histogram_csv(path: Path, hist: JointHistogram) -> None:
    """Nonzero cells as ``i,j,count,p`` sorted by (i, j)."""
    with open(path, "w", newline="") as fh:
        fh.write("i,j,count,p\n")
        for i, j, n, p in hist.nonzero_cells():
            fh.write(f"{i},{j},{n},{p:.17g}\n")


def write_surface_csv(path: Path, values: np.ndarray) -> None:
    """Every candidate as ``t,s,value``, t outer and s inner, ``-inf`` for invalid ones."""
    n = values.shape[0]
    buf = io.StringIO()
    buf.write("t,s,value\n")
    for t in range(n):
        row = values[t]
        for s in range(n):
            buf.write(f"{t},{s},{format_value(row[s])}\n")
    path.write_text(buf.getvalue())


def _process_image(path: Path, cfg: RunConfig) -> tuple[list[list[str]], bool]:
    rows: list[list[str]] = []
    stem = path.stem
    try:
        t0 = time.perf_counter()
        img = load_pgm(path)
        if cfg.mode == "1d":
            hist1 = build_histogram_1d(img)
        hist = joint_histogram(img) if cfg.mode != "1d" or cfg.dump_surface or cfg.dump_histogram else None
        prep = time.perf_counter() - t0
    except (OSError, ThresholdingError) as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        return [[str(path), format_q(q), cfg.mode, "error", "", "", ""] for q in cfg.qs], False

    if cfg.dump_histogram:
        write_histogram_csv(cfg.out / f"{stem}.hist.csv", hist)

    ok = True
    for q in cfg.qs:
        t0 = time.perf_counter()
        try:
            if cfg.mode == "1d":
                values = criterion_values_1d(hist1, q)
                t = int(np.argmax(values))
                if not np.isfinite(values[t]):
                    raise DegenerateHistogram("single occupied gray level")
                t_star, s_star, crit = t, "", float(values[t])
            else:
                tables = build_prefix_tables(hist, q, cfg.background)
                res = find_threshold(tables, q, cfg.mode)
                t_star, s_star, crit = res.t_star, res.s_star, res.criterion
        except DegenerateHistogram as exc:
            print(f"{path}: q={format_q(q)}: degenerate histogram ({exc})", file=sys.stderr)
            rows.append([str(path), format_q(q), cfg.mode, "degenerate", "", "", ""])
            ok = False
            continue
        millis = round((prep + time.perf_counter() - t0) * 1000)
        save_pgm(cfg.out / f"{stem}.q{format_q(q)}.t{t_star}.pgm", binarize(img, t_star))
        if cfg.dump_surface:
            surf = criterion_surface(build_prefix_tables(hist, q, cfg.background), q)
            write_surface_csv(cfg.out / f"{stem}.q{format_q(q)}.surface.csv", surf.values)
        rows.append([str(path), format_q(q), cfg.mode, str(t_star), str(s_star), format_value(crit), str(millis)])
    return rows, ok


def run(cfg: RunConfig, stdout=None) -> int:
    """Threshold every input at every q; return the process exit status."""
    stdout = stdout or sys.stdout
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows: list[list[str]] = []
    status = 0
    for path in cfg.inputs:
        image_rows, ok = _process_image(Path(path), cfg)
        rows.extend(image_rows)
        if not ok:
            status = 1

    with open(cfg.out / "report.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_HEADER)
        writer.writerows(rows)

    if cfg.report == "csv":
        writer = csv.writer(stdout, lineterminator="\n")
        writer.writerow(REPORT_HEADER)
        writer.writerows(rows)
    else:
        table = [REPORT_HEADER] + rows
        widths = [max(len(r[k]) for r in table) for k in range(len(REPORT_HEADER))]
        for r in table:
            stdout.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    return status


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"q must be a positive real, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entrothresh", description="Entropic threshold selection for PGM images.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="threshold images")
    p.add_argument("inputs", nargs="+", type=Path, metavar="IMAGE")
    p.add_argument("--q", dest="qs", action="append", type=_positive_float, help="entropic index (repeatable, default 0.1)")
    p.add_argument("--mode", choices=MODES, default="diag")
    p.add_argument("--out", type=Path, default=Path("."))
    p.add_argument("--dump-surface", action="store_true")
    p.add_argument("--dump-histogram", action="store_true")
    p.add_argument("--report", choices=("text", "csv"), default="text")
    p.add_argument(
        "--background",
        choices=BACKGROUNDS,
        default="quadrant",
        help="background-class normaliser: its own mass, or 1 - P2",
    )

    g = sub.add_parser("gen", help="generate synthetic test images")
    g.add_argument("--kind", choices=("bimodal", "trimodal", "constant"), default="bimodal")
    g.add_argument("--means", type=float, nargs="+", default=None)
    g.add_argument("--sigmas", type=float, nargs="+", default=None)
    g.add_argument("--value", type=int, default=None, help="fill value for --kind constant")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1, help="number of consecutive seeds to generate")
    g.add_argument("--size", type=int, nargs=2, default=(128, 128), metavar=("WIDTH", "HEIGHT"))
    g.add_argument("--radius", type=float, default=None)
    g.add_argument("--mask", action="store_true", help="also write the ground-truth region mask")
    g.add_argument("--variant", choices=("P2", "P5"), default="P5")
    g.add_argument("--out", type=Path, required=True, help="output file, or directory when --count > 1")
    return parser


_GEN_DEFAULTS = {
    "bimodal": ((64.0, 192.0), (10.0, 10.0)),
    "trimodal": ((40.0, 128.0, 216.0), (10.0, 10.0, 10.0)),
    "constant": ((128.0,), (0.0,)),
}


def _gen(args) -> int:
    means, sigmas = _GEN_DEFAULTS[args.kind]
    means = args.means or means
    sigmas = args.sigmas or sigmas
    width, height = args.size
    radius = args.radius or default_radius(height, width)
    if args.count > 1:
        args.out.mkdir(parents=True, exist_ok=True)
        targets = [(args.seed + k, args.out / f"{args.kind}_s{args.seed + k}.pgm") for k in range(args.count)]
    else:
        targets = [(args.seed, args.out)]
    for seed, path in targets:
        img = generate_synthetic(args.kind, means, sigmas, seed, (width, height), radius, args.value)
        save_pgm(path, img, args.variant)
        if args.mask and args.kind != "constant":
            labels = region_labels(args.kind, height, width, radius)
            mask = (labels * (255 // max(1, labels.max()))).astype(np.uint8)
            save_pgm(path.with_suffix(".mask.pgm"), GrayImage(mask), args.variant)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        if args.count < 1:
            parser.error("--count must be at least 1")
        try:
            return _gen(args)
        except InvalidParams as exc:
            parser.error(str(exc))
    cfg = RunConfig(
        inputs=args.inputs,
        qs=args.qs or [0.1],
        mode=args.mode,
        out=args.out,
        dump_surface=args.dump_surface,
        dump_histogram=args.dump_histogram,
        report=args.report,
        background=args.background,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
