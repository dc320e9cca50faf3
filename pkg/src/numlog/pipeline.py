"""
End-to-end compression and decompression.

Input is split on 0x0A into chunks of ``chunk_lines`` lines.  Each chunk
is turned into a skeleton dictionary, an index stream and one payload per
tag group, independently of every other chunk, so chunks can be encoded
on a worker pool.  The serialized chunks, preceded by the manifest, are
compressed as one stream by the backend.
"""
from __future__ import annotations

import gc
import json
import os
import time
from contextlib import contextmanager
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from . import numcodec, stringstore
from .backends import DEFAULT_BACKEND, get_backend
from .container import (
    FLAG_NO_NUMERIC, FLAG_NO_STRING, HEADER_LEN, MAGIC, VERSION,
    ChunkEntry, ChunkSections, Manifest, Reader, TagEntry,
)
from .errors import (
    BadMagic, CodecError, CorruptContainer, FingerprintMismatch, NumlogError,
)
from .extract import extract_block, reinsert_block, render_group
from .patterns import PatternRegistry
from .tagging import TAG_RE, classify_strategy
from .tokens import Strategy

DEFAULT_CHUNK_LINES = 100_000
DEFAULT_THREADS = 4


@dataclass
class Config:
    chunk_lines: int = DEFAULT_CHUNK_LINES
    threads: int = DEFAULT_THREADS
    backend: str = DEFAULT_BACKEND
    backend_level: int | None = None
    registry: PatternRegistry = field(default_factory=PatternRegistry.default)
    no_numeric: bool = False
    no_string: bool = False

    def __post_init__(self):
        if self.chunk_lines < 1:
            raise ValueError("chunk_lines must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def flags(self) -> int:
        return (FLAG_NO_NUMERIC if self.no_numeric else 0) | (FLAG_NO_STRING if self.no_string else 0)


@dataclass
class Metrics:
    original_bytes: int
    compressed_bytes: int
    elapsed_seconds: float

    @property
    def cr(self) -> float:
        return self.original_bytes / self.compressed_bytes

    @property
    def cs(self) -> float:
        """Bytes per second."""
        if self.elapsed_seconds <= 0:
            return float("inf")
        return self.original_bytes / self.elapsed_seconds

    @property
    def cs_mb(self) -> float:
        return self.cs / 1e6


def split_lines(data: bytes) -> tuple[list[bytes], bool]:
    if not data:
        return [], False
    lines = data.split(b"\n")
    if lines[-1] == b"":
        lines.pop()
        return lines, True
    return lines, False


def join_lines(lines: list[bytes], trailing: bool) -> bytes:
    out = b"\n".join(lines)
    return out + b"\n" if trailing else out


# -- tag group payloads ---------------------------------------------------


def encode_group(strategy: Strategy, values) -> bytes:
    if strategy is Strategy.VERBATIM:
        return numcodec.elastic_encode(len(values)) + b"\n".join(values)
    if strategy is Strategy.DELTA:
        return numcodec.encode_delta_payload(values)
    return numcodec.encode_many(values)


def decode_group(strategy: Strategy, payload: bytes):
    try:
        if strategy is Strategy.VERBATIM:
            count, pos = numcodec.elastic_decode(payload)
            entries = payload[pos:].split(b"\n")
            if len(entries) != count or count == 0:
                raise CorruptContainer("verbatim group count mismatch")
            return entries
        if strategy is Strategy.DELTA:
            return numcodec.decode_delta_payload(payload)
        values = numcodec.decode_many(payload)
        if values.size == 0:
            raise CorruptContainer("empty tag group")
        return values.astype(np.int64)
    except CodecError as e:
        raise CorruptContainer(f"tag payload: {e}") from None


# -- chunk encode / decode ------------------------------------------------


@contextmanager
def _gc_paused():
    # chunk work allocates millions of acyclic objects; collections only slow it down
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def encode_chunk(blob: bytes, line_count: int, registry: PatternRegistry,
                 flags: int) -> tuple[bytes, list[bytes]]:
    """Serialize one chunk given as its lines joined by 0x0A."""
    with _gc_paused():
        return _encode_chunk(blob, line_count, registry, flags)


def _encode_chunk(blob: bytes, line_count: int, registry: PatternRegistry,
                  flags: int) -> tuple[bytes, list[bytes]]:
    if flags & FLAG_NO_NUMERIC:
        skeleton, groups = blob, {}
    else:
        skeleton, groups = extract_block(blob, registry)
    lines = skeleton.split(b"\n")
    assert len(lines) == line_count
    if flags & FLAG_NO_STRING:
        dictionary, index = stringstore.dump_dictionary(lines), b""
    else:
        dist, ids = stringstore.build(lines)
        dictionary, index = stringstore.dump_dictionary(dist), stringstore.dump_index(ids)
    tags = []
    for tag in sorted(groups):
        strategy = classify_strategy(tag, registry)
        tags.append(TagEntry(tag, strategy, encode_group(strategy, groups[tag])))
    return ChunkSections(dictionary, index, tags).dumps(), [t.tag for t in tags]


def _encode_chunk_args(args):
    return encode_chunk(*args)


def decode_chunk(buf: bytes, entry: ChunkEntry, registry: PatternRegistry, flags: int) -> list[bytes]:
    with _gc_paused():
        return _decode_chunk(buf, entry, registry, flags)


def _decode_chunk(buf: bytes, entry: ChunkEntry, registry: PatternRegistry, flags: int) -> list[bytes]:
    sec = ChunkSections.loads(buf)
    if [t.tag for t in sec.tags] != entry.tags:
        raise CorruptContainer("tag directory disagrees with manifest")
    lines = stringstore.load_dictionary(sec.dictionary)
    if not flags & FLAG_NO_STRING:
        lines = stringstore.restore(lines, stringstore.load_index(sec.index))
    elif sec.index:
        raise CorruptContainer("index stream present without dictionary-index")
    if len(lines) != entry.line_count:
        raise CorruptContainer(f"chunk holds {len(lines)} lines, manifest says {entry.line_count}")
    if flags & FLAG_NO_NUMERIC:
        if sec.tags:
            raise CorruptContainer("tag groups present with numeric stage disabled")
        return lines

    rendered = {}
    for t in sec.tags:
        if not TAG_RE.fullmatch(t.tag):
            raise CorruptContainer(f"malformed tag {t.tag!r}")
        try:
            expected = classify_strategy(t.tag, registry)
        except KeyError:
            raise CorruptContainer(f"tag {t.tag!r} not in registry") from None
        if expected is not t.strategy:
            raise CorruptContainer(f"strategy mismatch for {t.tag.decode()}")
        rendered[t.tag] = render_group(t.tag, decode_group(t.strategy, t.payload), registry)
    skeleton = b"\n".join(lines)
    out = reinsert_block(skeleton, rendered).split(b"\n")
    if len(out) != len(lines):
        raise CorruptContainer("line structure changed during reinsertion")
    return out


def _decode_chunk_args(args):
    return decode_chunk(*args)


def usable_cpus() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _map(fn, jobs: list, threads: int):
    # more workers than cores only adds pickling and contention
    workers = min(threads, len(jobs), usable_cpus())
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


# -- public API -----------------------------------------------------------


def compress(data: bytes, config: Config | None = None) -> tuple[bytes, Metrics]:
    config = config or Config()
    t0 = time.perf_counter()
    backend = get_backend(config.backend)
    lines, trailing = split_lines(data)
    n = config.chunk_lines
    jobs = [
        (b"\n".join(lines[i:i + n]), len(lines[i:i + n]), config.registry, config.flags)
        for i in range(0, len(lines), n)
    ]
    del lines
    counts = [j[1] for j in jobs]
    results = _map(_encode_chunk_args, jobs, config.threads)
    del jobs

    entries = []
    offset = 0
    for (blob, tags), count in zip(results, counts):
        entries.append(ChunkEntry(offset, len(blob), count, tags))
        offset += len(blob)
    manifest = Manifest(entries, config.registry.fingerprint, backend.ident,
                        config.backend_level, sum(e.line_count for e in entries),
                        trailing, config.flags)
    inner = manifest.dumps() + b"".join(blob for blob, _ in results)
    body = backend.compress(inner, config.backend_level)
    container = MAGIC + bytes([VERSION, backend.ident]) + body
    elapsed = time.perf_counter() - t0
    return container, Metrics(len(data), len(container), elapsed)


def read_container(container: bytes) -> tuple[Manifest, bytes]:
    """Check the header, undo the backend and parse the manifest."""
    if len(container) < HEADER_LEN or container[:4] != MAGIC:
        raise BadMagic("not a numlog container")
    if container[4] != VERSION:
        raise CorruptContainer(f"unsupported container version {container[4]}")
    try:
        backend = get_backend(container[5])
    except NumlogError:
        raise CorruptContainer(f"unknown backend id {container[5]}") from None
    inner = backend.decompress(container[HEADER_LEN:])
    r = Reader(inner)
    manifest = Manifest.read(r)
    if manifest.backend_id != backend.ident:
        raise CorruptContainer("backend id in manifest disagrees with header")
    region = inner[r.pos:]
    if len(region) != manifest.region_size:
        raise CorruptContainer("chunk region size disagrees with manifest")
    return manifest, region


def iter_chunks(container: bytes, registry: PatternRegistry | None = None) -> Iterator[list[bytes]]:
    """Yield the decoded lines of each chunk in order."""
    registry = registry or PatternRegistry.default()
    manifest, region = read_container(container)
    _check_fingerprint(manifest, registry)
    for e in manifest.chunks:
        yield _guarded(decode_chunk, region[e.offset:e.offset + e.size], e, registry, manifest.flags)


def _check_fingerprint(manifest: Manifest, registry: PatternRegistry):
    if manifest.flags & FLAG_NO_NUMERIC:
        return
    if manifest.fingerprint != registry.fingerprint:
        raise FingerprintMismatch("container was written with a different pattern registry")


def _guarded(fn, *args):
    try:
        return fn(*args)
    except NumlogError:
        raise
    except (IndexError, ValueError, KeyError, StopIteration, UnicodeDecodeError, AssertionError) as e:
        raise CorruptContainer(f"{type(e).__name__}: {e}") from None


def decompress(container: bytes, config: Config | None = None) -> bytes:
    config = config or Config()
    manifest, region = read_container(container)
    _check_fingerprint(manifest, config.registry)
    jobs = [(region[e.offset:e.offset + e.size], e, config.registry, manifest.flags)
            for e in manifest.chunks]
    chunks = _guarded(_map, _decode_chunk_args, jobs, config.threads)
    lines = [line for chunk in chunks for line in chunk]
    return join_lines(lines, manifest.trailing_newline)


# -- preprocess: skeleton file + per-tag group files -----------------------

SKELETON_FILE = "skeleton.log"
META_FILE = "groups.json"


def tag_filename(tag: bytes) -> str:
    body = tag[1:-1].decode()
    if body == "*":
        return "tag_star.bin"
    return f"tag_{'upper' if body.isupper() else 'lower'}_{body}.bin"


def preprocess(data: bytes, out_dir: str | Path, config: Config | None = None) -> list[Path]:
    """
    Write the number-free skeleton and one binary file per tag group.

    The skeleton keeps the input's line structure, so any log compressor
    can take it as its input.  Tag groups span the whole input.
    """
    config = config or Config()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines, trailing = split_lines(data)
    skeleton, groups = extract_block(b"\n".join(lines), config.registry)
    written = [out / SKELETON_FILE]
    written[0].write_bytes(skeleton + b"\n" if trailing else skeleton)
    meta = {
        "version": VERSION,
        "fingerprint": config.registry.fingerprint.hex(),
        "lines": len(lines),
        "trailing_newline": trailing,
        "groups": {},
    }
    for tag in sorted(groups):
        strategy = classify_strategy(tag, config.registry)
        name = tag_filename(tag)
        (out / name).write_bytes(encode_group(strategy, groups[tag]))
        meta["groups"][name] = {"tag": tag.decode(), "strategy": strategy.name.lower(),
                                "count": len(groups[tag])}
        written.append(out / name)
    (out / META_FILE).write_text(json.dumps(meta, indent=2) + "\n")
    written.append(out / META_FILE)
    return written


def preprocess_invert(in_dir: str | Path, config: Config | None = None) -> bytes:
    config = config or Config()
    src = Path(in_dir)
    meta = json.loads((src / META_FILE).read_text())
    if bytes.fromhex(meta["fingerprint"]) != config.registry.fingerprint:
        raise FingerprintMismatch("preprocess output was written with a different pattern registry")
    skeleton = (src / SKELETON_FILE).read_bytes()
    trailing = bool(meta["trailing_newline"])
    if trailing:
        if not skeleton.endswith(b"\n"):
            raise CorruptContainer("skeleton lost its trailing newline")
        skeleton = skeleton[:-1]
    rendered = {}
    for name, info in meta["groups"].items():
        tag = info["tag"].encode()
        strategy = Strategy[info["strategy"].upper()]
        values = decode_group(strategy, (src / name).read_bytes())
        rendered[tag] = render_group(tag, values, config.registry)
    if meta["lines"] == 0:
        return b""
    return join_lines([reinsert_block(skeleton, rendered)], trailing)


def inspect(container: bytes) -> dict:
    """Manifest fields plus per-chunk and per-tag-group size breakdown."""
    manifest, region = read_container(container)
    chunks = []
    group_bytes: dict[str, int] = {}
    group_counts: dict[str, int] = {}
    totals = {"dictionary": 0, "index": 0, "tag_directory": 0, "numeric": 0}
    for e in manifest.chunks:
        sec = ChunkSections.loads(region[e.offset:e.offset + e.size])
        numeric = 0
        for t in sec.tags:
            key = t.tag.decode()
            group_bytes[key] = group_bytes.get(key, 0) + len(t.payload)
            group_counts[key] = group_counts.get(key, 0) + len(decode_group(t.strategy, t.payload))
            numeric += len(t.payload)
        totals["dictionary"] += len(sec.dictionary)
        totals["index"] += len(sec.index)
        totals["numeric"] += numeric
        totals["tag_directory"] += e.size - len(sec.dictionary) - len(sec.index) - numeric
        chunks.append({"offset": e.offset, "size": e.size, "lines": e.line_count,
                       "tags": [t.decode() for t in e.tags], "numeric_bytes": numeric})
    region_size = max(len(region), 1)
    return {
        "version": VERSION,
        "backend": get_backend(manifest.backend_id).name,
        "level": manifest.level,
        "fingerprint": manifest.fingerprint.hex(),
        "chunk_count": len(manifest.chunks),
        "total_lines": manifest.total_lines,
        "trailing_newline": manifest.trailing_newline,
        "no_numeric": bool(manifest.flags & FLAG_NO_NUMERIC),
        "no_string": bool(manifest.flags & FLAG_NO_STRING),
        "container_bytes": len(container),
        "uncompressed_region_bytes": len(region),
        "chunks": chunks,
        "groups": {k: {"count": group_counts[k], "bytes": group_bytes[k],
                       "share": group_bytes[k] / region_size} for k in sorted(group_bytes)},
        "sections": totals,
        "numeric_share": totals["numeric"] / region_size,
    }
