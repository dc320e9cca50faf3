"""numlog command line: compress, decompress, inspect, preprocess, bench."""
from __future__ import annotations

import argparse
import json
import os
import shutil
import sys
import tempfile
from pathlib import Path

from . import __version__
from .backends import BACKENDS, DEFAULT_BACKEND
from .errors import NumlogError
from .patterns import PatternRegistry
from .pipeline import (
    DEFAULT_CHUNK_LINES, DEFAULT_THREADS, Config, compress, decompress, inspect,
    preprocess, preprocess_invert,
)

THREADS_ENV = "DENUM_THREADS"


class CliError(Exception):
    pass


def _atomic_write(path: str | Path, data: bytes):
    """Write via a temp file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return DEFAULT_THREADS
    try:
        n = int(raw)
    except ValueError:
        raise CliError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise CliError(f"{THREADS_ENV} must be >= 1")
    return n


def _registry(args) -> PatternRegistry:
    if getattr(args, "patterns", None):
        return PatternRegistry.load(args.patterns)
    return PatternRegistry.default()


def _config(args, **extra) -> Config:
    threads = args.threads if getattr(args, "threads", None) else _default_threads()
    return Config(
        chunk_lines=getattr(args, "chunk_lines", DEFAULT_CHUNK_LINES),
        threads=threads,
        backend=getattr(args, "backend", DEFAULT_BACKEND),
        backend_level=getattr(args, "level", None),
        registry=_registry(args),
        no_numeric=getattr(args, "no_numeric", False),
        no_string=getattr(args, "no_string", False),
        **extra,
    )


def cmd_compress(args) -> int:
    data = Path(args.input).read_bytes()
    container, m = compress(data, _config(args))
    _atomic_write(args.output, container)
    print(f"{args.input}: {m.original_bytes} -> {m.compressed_bytes} bytes, "
          f"CR {m.cr:.3f}, CS {m.cs_mb:.2f} MB/s ({m.elapsed_seconds:.3f} s)", file=sys.stderr)
    return 0


def cmd_decompress(args) -> int:
    data = decompress(Path(args.input).read_bytes(), _config(args))
    _atomic_write(args.output, data)
    return 0


def _print_inspect(info: dict):
    keys = ["version", "backend", "level", "fingerprint", "chunk_count", "total_lines",
            "trailing_newline", "no_numeric", "no_string", "container_bytes",
            "uncompressed_region_bytes"]
    for k in keys:
        print(f"{k:28s}{info[k]}")
    print(f"{'numeric_share':28s}{info['numeric_share']:.4f}")
    print("\nsections (uncompressed bytes):")
    for k, v in info["sections"].items():
        print(f"  {k:16s}{v:>12d}")
    print("\nchunks:")
    for i, c in enumerate(info["chunks"]):
        print(f"  #{i:<4d} lines {c['lines']:>8d}  bytes {c['size']:>10d}  numeric {c['numeric_bytes']:>10d}")
    print(f"\ntag groups: {len(info['groups'])}")
    for tag, g in info["groups"].items():
        print(f"  {tag:6s} count {g['count']:>10d}  bytes {g['bytes']:>10d}  share {g['share']:.4f}")


def cmd_inspect(args) -> int:
    info = inspect(Path(args.input).read_bytes())
    if args.json:
        print(json.dumps(info, indent=2))
    else:
        _print_inspect(info)
    return 0


def cmd_preprocess(args) -> int:
    data = Path(args.input).read_bytes()
    out = Path(args.outdir)
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{out.name}.", dir=out.parent))
    try:
        written = preprocess(data, tmp, _config(args))
        out.mkdir(exist_ok=True)
        for p in written:
            os.replace(p, out / p.name)
    finally:
        shutil.rmtree(tmp, ignore_errors=True)
    for p in written:
        print(out / p.name)
    return 0


def cmd_preprocess_invert(args) -> int:
    _atomic_write(args.output, preprocess_invert(args.indir, _config(args)))
    return 0


def cmd_bench(args) -> int:
    from . import corpus
    from .bench import file_inputs, run_bench

    inputs = file_inputs(args.paths)
    if args.samples:
        samples = corpus.load_samples(None if args.samples is True else args.samples)
        inputs += [(name, (lambda d=data: d)) for name, data in samples.items()]
    if not inputs:
        raise CliError("nothing to bench: give input paths or --samples")
    report = run_bench(inputs, _config(args), ablation=args.ablation, verify=args.verify)
    print(report.table())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            report.write_csv(fh)
    if args.plot_dir:
        from .plotting import render_all
        for p in render_all(report, args.plot_dir):
            print(f"wrote {p}", file=sys.stderr)
    return 1 if report.failures else 0


def _add_registry(p):
    p.add_argument("--patterns", metavar="FILE",
                   help="pattern registry file (default: built-in T and I rules)")


def _add_pipeline(p):
    p.add_argument("--chunk-lines", type=int, default=DEFAULT_CHUNK_LINES,
                   help="lines per chunk (default %(default)s)")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker processes (default ${THREADS_ENV} or {DEFAULT_THREADS})")
    p.add_argument("--backend", choices=sorted(BACKENDS), default=DEFAULT_BACKEND)
    p.add_argument("--level", type=int, default=None, help="backend level (default: backend default)")
    _add_registry(p)
    p.add_argument("--no-numeric", action="store_true", help="skip numeric token extraction")
    p.add_argument("--no-string", action="store_true", help="store skeletons without dictionary-index")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numlog", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a log file")
    p.add_argument("input")
    p.add_argument("output")
    _add_pipeline(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="restore the original bytes")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--threads", type=int, default=None)
    _add_registry(p)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("inspect", help="show manifest, chunk and tag group sizes")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("preprocess", help="write number-free skeleton plus tag group files")
    p.add_argument("input")
    p.add_argument("outdir")
    _add_registry(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("preprocess-invert", help="rebuild the input from preprocess output")
    p.add_argument("indir")
    p.add_argument("output")
    _add_registry(p)
    p.set_defaults(func=cmd_preprocess_invert)

    p = sub.add_parser("bench", help="CR / CS report against the bare backend")
    p.add_argument("paths", nargs="*")
    p.add_argument("--samples", nargs="?", const=True, default=None, metavar="DIR",
                   help="also bench the 16 sample corpora (real files from DIR or "
                        "$LOGHUB_2K_DIR when present, synthetic otherwise)")
    p.add_argument("--csv", metavar="PATH", help="also write rows as CSV")
    p.add_argument("--ablation", action="store_true",
                   help="add numeric-only and string-only rows")
    p.add_argument("--plot-dir", metavar="DIR", help="render CR figures as PNG here")
    p.add_argument("--verify", action="store_true", help="check every round trip")
    _add_pipeline(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NumlogError, CliError, OSError, ValueError) as e:
        print(f"numlog {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
