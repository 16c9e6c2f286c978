"""Command-line front end: ingest series, sweep cluster counts, emit reports.

Every behavior is a thin wrapper over the library; the CLI parses flags,
resolves dataset paths, and writes whatever the library produced. Output
files are written atomically (temp file + rename) and the console summary
order follows the input order.

Exit codes: 0 success, 1 ingestion or filesystem trouble, 2 bad configuration.
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from .dataset import Dataset, DatasetError, TimeSeries, load_ucr
from .fixtures import TABLE_IDS, load_fixture
from .plots import comparison_plot_svg, silhouette_plot_svg
from .selection import (
    DEFAULT_K_MAX,
    DEFAULT_K_MIN,
    DEFAULT_WORD_LENGTH,
    MODES,
    SweepGrid,
    report_to_csv,
    report_to_json,
    run_benchmark_modes,
    run_sweep,
    summarize,
    sweep_params,
)

UCR_ARCHIVE_URL = "https://www.cs.ucr.edu/~eamonn/time_series_data_2018/"

_FORMATS = ("json", "csv", "svg")

_BENCH_MODES = ("raw", "bow", "tfidf")


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _int_list(text: str):
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _data_root(args):
    if getattr(args, "data_dir", None):
        return Path(args.data_dir)
    env = os.environ.get("SPFK_DATA_DIR")
    return Path(env) if env else None


def _strip_split_tag(stem: str) -> str:
    for tag in ("_TRAIN", "_TEST"):
        if stem.endswith(tag):
            return stem[: -len(tag)]
    return stem


def _find_split_file(root: Path, name: str, tag: str) -> Path:
    base = root / name
    for suffix in (".tsv", ".txt", ".csv", ""):
        candidate = base / f"{name}_{tag}{suffix}"
        if candidate.is_file():
            return candidate
    raise DatasetError(f"no {tag} file for dataset {name!r} under {root}")


def _reid(dataset: Dataset, prefix: str):
    return tuple(TimeSeries(f"{prefix}-{s.id}", s.values, s.label) for s in dataset.series)


def load_cli_dataset(spec: str, root, split: str) -> Dataset:
    """Resolve one --data argument to a Dataset.

    An existing file path is loaded directly; anything else is treated as a
    dataset name under the data root and resolved to
    ``<root>/<name>/<name>_TRAIN.tsv`` (or _TEST, or both for merge).
    """
    path = Path(spec)
    if path.is_file():
        loaded = load_ucr(path)
        return Dataset(_strip_split_tag(path.stem), loaded.series)
    if root is None:
        raise DatasetError(
            f"{spec!r} is not a file and no data root is set "
            "(pass --data-dir or set SPFK_DATA_DIR)"
        )
    if split == "merge":
        train = load_ucr(_find_split_file(root, spec, "TRAIN"))
        test = load_ucr(_find_split_file(root, spec, "TEST"))
        return Dataset(spec, _reid(train, "train") + _reid(test, "test"))
    tag = "TRAIN" if split == "train" else "TEST"
    loaded = load_ucr(_find_split_file(root, spec, tag))
    return Dataset(spec, loaded.series)


def _grid_from_args(args, mode: str) -> SweepGrid:
    kwargs = dict(
        mode=mode,
        k_min=args.k_min,
        k_max=args.k_max,
        word_length=args.word_length,
    )
    if args.windows is not None:
        kwargs["window_lengths"] = args.windows
    if args.alphabets is not None:
        kwargs["alphabet_sizes"] = args.alphabets
    if args.min_freq is not None or args.max_freq is not None:
        lo = 0.0 if args.min_freq is None else args.min_freq
        hi = 1.0 if args.max_freq is None else args.max_freq
        kwargs["freq_filters"] = ((lo, hi),)
    return SweepGrid(**kwargs)


def _summary_line(report) -> str:
    return (
        f"dataset={report.dataset} mode={report.mode} "
        f"predicted_k={report.predicted_k} "
        f"silhouette={report.best.silhouette!r} verdict={report.verdict}"
    )


def cmd_select(args) -> int:
    formats = tuple(tok for tok in args.format.split(",") if tok.strip())
    for fmt in formats:
        if fmt not in _FORMATS:
            raise ValueError(f"unknown report format {fmt!r}; expected one of {_FORMATS}")
    if not formats:
        raise ValueError("no report formats requested")
    root = _data_root(args)
    grid = _grid_from_args(args, args.mode)
    spf = sweep_params(grid, ensemble_size=args.trees, seed=args.seed)
    out_dir = Path(args.out)
    for spec in args.data:
        dataset = load_cli_dataset(spec, root, args.split)
        report = run_sweep(dataset, grid, spf)
        stem = f"{dataset.name}.{report.mode}.report"
        if "json" in formats:
            _write_atomic(out_dir / f"{stem}.json", report_to_json(report))
        if "csv" in formats:
            _write_atomic(out_dir / f"{stem}.csv", report_to_csv(report))
        if "svg" in formats:
            _write_atomic(out_dir / f"{stem}.svg", silhouette_plot_svg(report))
        print(_summary_line(report))
    return 0


def cmd_benchmark(args) -> int:
    root = _data_root(args)
    if root is None:
        raise ValueError("benchmark needs a data root (pass --data-dir or set SPFK_DATA_DIR)")
    rows = load_fixture(args.table)
    names = [row.dataset for row in rows]
    if args.only:
        wanted = {tok.strip() for tok in args.only.split(",") if tok.strip()}
        unknown = wanted - set(names)
        if unknown:
            raise ValueError(f"--only names not in table {args.table}: {sorted(unknown)}")
        names = [n for n in names if n in wanted]
    grid = _grid_from_args(args, "bow")
    spf = sweep_params(grid, ensemble_size=args.trees, seed=args.seed)
    out_dir = Path(args.out)

    results = []
    for name in names:
        try:
            dataset = load_cli_dataset(name, root, args.split)
        except DatasetError as exc:
            print(f"warning: {name}: {exc}; skipped", file=sys.stderr)
            continue
        reports = run_benchmark_modes(dataset, grid, spf)
        results.append((name, dataset.true_k, reports))
        for mode in _BENCH_MODES:
            if reports[mode] is not None:
                print(_summary_line(reports[mode]))
    if not results:
        print("error: none of the requested datasets were found", file=sys.stderr)
        return 1

    lines = [
        "dataset,actual_k,"
        + ",".join(f"{m}_predicted_k,{m}_verdict" for m in _BENCH_MODES)
    ]
    for name, actual, reports in results:
        row = [name, "" if actual is None else str(actual)]
        for mode in _BENCH_MODES:
            rep = reports[mode]
            if rep is None:
                row += ["", ""]
            else:
                row += [str(rep.predicted_k), rep.verdict]
        lines.append(",".join(row))
    _write_atomic(out_dir / f"benchmark_{args.table}.csv", "\n".join(lines) + "\n")

    mode_summaries = {}
    for mode in _BENCH_MODES:
        verdicts = [
            r[mode].verdict for _, _, r in results if r[mode] is not None and r[mode].verdict != "n/a"
        ]
        if verdicts:
            mode_summaries[mode] = summarize(verdicts)
    if mode_summaries:
        _write_atomic(out_dir / f"benchmark_{args.table}.svg", comparison_plot_svg(mode_summaries))
    for mode, summary in mode_summaries.items():
        print(
            f"mode={mode} correct={summary['correct_pct']:.1f}% "
            f"close={summary['close_pct']:.1f}% wrong={summary['wrong_pct']:.1f}%"
        )
    return 0


def cmd_plot_silhouette(args) -> int:
    path = Path(args.report)
    text = path.read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed report {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError(f"malformed report {path}: not a JSON object")
    svg = silhouette_plot_svg(payload)
    out = Path(args.out) if args.out else path.with_suffix(".svg")
    _write_atomic(out, svg)
    print(f"wrote {out}")
    return 0


def cmd_datasets(args) -> int:
    print(f"UCR time-series archive: {UCR_ARCHIVE_URL}")
    print(
        "Download and extract it yourself, then point SPFK_DATA_DIR (or --data-dir) "
        "at the root; datasets resolve as <root>/<Name>/<Name>_TRAIN.tsv."
    )
    status = 0
    for file_arg, expected in args.verify or ():
        path = Path(file_arg)
        try:
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
        except OSError as exc:
            print(f"MISSING {path}: {exc}", file=sys.stderr)
            status = 1
            continue
        if digest == expected.lower():
            print(f"OK {path}")
        else:
            print(f"MISMATCH {path}: expected {expected.lower()}, got {digest}", file=sys.stderr)
            status = 1
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spfk",
        description="Estimate the number of clusters in time-series datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    grid_parent = argparse.ArgumentParser(add_help=False)
    grid_parent.add_argument("--k-min", type=int, default=DEFAULT_K_MIN)
    grid_parent.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    grid_parent.add_argument(
        "--windows", type=_int_list, default=None, help="comma-separated SAX window lengths"
    )
    grid_parent.add_argument(
        "--alphabets", type=_int_list, default=None, help="comma-separated SAX alphabet sizes"
    )
    grid_parent.add_argument("--word-length", type=int, default=DEFAULT_WORD_LENGTH)
    grid_parent.add_argument(
        "--min-freq", type=float, default=None, help="tf-idf document-frequency lower bound"
    )
    grid_parent.add_argument(
        "--max-freq", type=float, default=None, help="tf-idf document-frequency upper bound"
    )
    grid_parent.add_argument("--trees", type=int, default=100, help="ensemble size")
    grid_parent.add_argument("--seed", type=int, default=0)

    io_parent = argparse.ArgumentParser(add_help=False)
    io_parent.add_argument("--out", default=".", help="output directory")
    io_parent.add_argument("--data-dir", default=None, help="dataset root (or SPFK_DATA_DIR)")
    io_parent.add_argument("--split", choices=("train", "test", "merge"), default="train")

    p_select = sub.add_parser(
        "select",
        parents=[grid_parent, io_parent],
        help="pick the cluster count for one or more datasets",
    )
    p_select.add_argument("--data", nargs="+", required=True, help="dataset files or names")
    p_select.add_argument("--mode", choices=MODES, default="bow")
    p_select.add_argument(
        "--format", default="json,csv", help="comma-separated report formats (json,csv,svg)"
    )
    p_select.set_defaults(handler=cmd_select)

    p_bench = sub.add_parser(
        "benchmark",
        parents=[grid_parent, io_parent],
        help="run raw, bow, and tfidf over the datasets of a bundled results table",
    )
    p_bench.add_argument("--table", choices=TABLE_IDS, default="IV")
    p_bench.add_argument("--only", default=None, help="comma-separated dataset-name subset")
    p_bench.set_defaults(handler=cmd_benchmark)

    p_plot = sub.add_parser(
        "plot-silhouette", help="render silhouette-vs-k curves from a JSON report"
    )
    p_plot.add_argument("report", help="path to a .report.json file")
    p_plot.add_argument("--out", default=None, help="output SVG path")
    p_plot.set_defaults(handler=cmd_plot_silhouette)

    p_data = sub.add_parser(
        "datasets", help="where to get benchmark data, plus optional checksum verification"
    )
    p_data.add_argument(
        "--verify",
        nargs=2,
        action="append",
        metavar=("FILE", "SHA256"),
        help="verify a downloaded file against a sha256 digest",
    )
    p_data.set_defaults(handler=cmd_datasets)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
