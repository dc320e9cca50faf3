"""
Compression ratio / speed report: full pipeline against the bare backend.

CR = original bytes / compressed bytes, CS = original bytes / wall-clock
seconds, reported in MB/s with MB = 10**6 bytes.  Both sides are timed over
the same in-memory buffer, so file I/O never enters the numbers.
"""
from __future__ import annotations

import csv
import dataclasses
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, TextIO

from .backends import get_backend
from .pipeline import Config, compress, decompress

MB = 10 ** 6

VARIANTS = {
    "full": {},
    "numeric-only": {"no_string": True},
    "string-only": {"no_numeric": True},
}

CSV_FIELDS = [
    "name", "variant", "original_bytes", "pipeline_bytes", "backend_bytes",
    "pipeline_cr", "backend_cr", "pipeline_cs_mb", "elapsed_seconds",
    "backend_elapsed_seconds", "error",
]


def ratio(original: int, compressed: int) -> float:
    return original / compressed if compressed else float("inf")


def speed_mb(original: int, seconds: float) -> float:
    return original / seconds / MB if seconds > 0 else float("inf")


@dataclass
class BenchRow:
    name: str
    variant: str = "full"
    original_bytes: int = 0
    pipeline_bytes: int = 0
    backend_bytes: int = 0
    elapsed_seconds: float = 0.0
    backend_elapsed_seconds: float = 0.0
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error

    @property
    def pipeline_cr(self) -> float:
        return ratio(self.original_bytes, self.pipeline_bytes)

    @property
    def backend_cr(self) -> float:
        return ratio(self.original_bytes, self.backend_bytes)

    @property
    def pipeline_cs_mb(self) -> float:
        return speed_mb(self.original_bytes, self.elapsed_seconds)

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        if self.ok:
            d.update(pipeline_cr=self.pipeline_cr, backend_cr=self.backend_cr,
                     pipeline_cs_mb=self.pipeline_cs_mb)
        else:
            d.update(pipeline_cr="", backend_cr="", pipeline_cs_mb="")
        return d


@dataclass
class BenchReport:
    rows: list[BenchRow]

    @property
    def failures(self) -> list[BenchRow]:
        return [r for r in self.rows if not r.ok]

    def find(self, name: str, variant: str = "full") -> BenchRow | None:
        for r in self.rows:
            if r.name == name and r.variant == variant:
                return r
        return None

    def table(self) -> str:
        head = ("input", "variant", "original", "pipeline", "backend",
                "CR", "backend CR", "CS MB/s", "seconds")
        body = []
        for r in self.rows:
            if r.ok:
                body.append((r.name, r.variant, str(r.original_bytes), str(r.pipeline_bytes),
                             str(r.backend_bytes), f"{r.pipeline_cr:.3f}", f"{r.backend_cr:.3f}",
                             f"{r.pipeline_cs_mb:.2f}", f"{r.elapsed_seconds:.3f}"))
            else:
                body.append((r.name, r.variant, "FAILED: " + r.error) + ("",) * 6)
        widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
        lines = []
        for row in [head] + body:
            cells = [c.ljust(w) if i < 2 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
            lines.append("  ".join(cells).rstrip())
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines)

    def write_csv(self, fh: TextIO):
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(r.as_dict())


def bench_one(name: str, data: bytes, config: Config, variant: str = "full",
              verify: bool = False, backend_size: tuple[int, float] | None = None) -> BenchRow:
    row = BenchRow(name, variant, original_bytes=len(data))
    cfg = dataclasses.replace(config, **VARIANTS[variant])
    container, metrics = compress(data, cfg)
    row.pipeline_bytes = metrics.compressed_bytes
    row.elapsed_seconds = metrics.elapsed_seconds
    if verify and decompress(container, cfg) != data:
        raise AssertionError("round trip mismatch")
    if backend_size is None:
        backend_size = backend_only(data, config)
    row.backend_bytes, row.backend_elapsed_seconds = backend_size
    return row


def backend_only(data: bytes, config: Config) -> tuple[int, float]:
    """Size and time of the bare backend on ``data`` at the configured level."""
    backend = get_backend(config.backend)
    t0 = time.perf_counter()
    out = backend.compress(data, config.backend_level)
    return len(out), time.perf_counter() - t0


def run_bench(inputs: Iterable[tuple[str, Callable[[], bytes]]], config: Config | None = None,
              ablation: bool = False, verify: bool = False) -> BenchReport:
    """
    Bench every ``(name, loader)`` pair.  A loader or compression failure is
    recorded on its row and the remaining inputs still run.
    """
    config = config or Config()
    variants = list(VARIANTS) if ablation else ["full"]
    rows = []
    for name, load in inputs:
        try:
            data = load()
            base = backend_only(data, config)
        except Exception as e:  # noqa: BLE001 - reported per row
            rows.extend(BenchRow(name, v, error=f"{type(e).__name__}: {e}") for v in variants)
            continue
        for v in variants:
            try:
                rows.append(bench_one(name, data, config, v, verify, base))
            except Exception as e:  # noqa: BLE001
                rows.append(BenchRow(name, v, len(data), error=f"{type(e).__name__}: {e}"))
    return BenchReport(rows)


def file_inputs(paths: Iterable[str | Path]) -> list[tuple[str, Callable[[], bytes]]]:
    return [(Path(p).name, Path(p).read_bytes) for p in paths]
