import dataclasses

import pytest

from numlog import Config, compress, decompress, inspect, iter_chunks
from numlog import stringstore
from numlog.backends import get_backend
from numlog.container import HEADER_LEN, ChunkSections, Manifest, Reader
from numlog.corpus import APACHE_SAMPLE, generate
from numlog.errors import (
    BackendUnavailable, BadMagic, CorruptContainer, FingerprintMismatch, IdOutOfRange,
)
from numlog.patterns import PatternRegistry
from numlog.tokens import Strategy

CFG = Config(threads=1)


def _round_trip(data, cfg=CFG):
    container, metrics = compress(data, cfg)
    assert decompress(container, cfg) == data
    return container, metrics


@pytest.mark.parametrize("data", [
    b"", b"\n", b"\n\n", b"x", b"12", b"12\n", b"no newline at end 42",
    APACHE_SAMPLE, APACHE_SAMPLE.rstrip(b"\n"), b"\x1b\x1b<T><*>\n<db>\xff\xfe 9\n",
])
def test_round_trip_edge_cases(data):
    _round_trip(data)


@pytest.mark.parametrize("backend", ["none", "lzma", "bz2", "zlib"])
@pytest.mark.parametrize("flags", [{}, {"no_numeric": True}, {"no_string": True},
                                   {"no_numeric": True, "no_string": True}])
def test_backends_and_ablations(backend, flags):
    data = generate("Apache", 300)
    _round_trip(data, Config(threads=1, backend=backend, **flags))


def test_empty_input_has_no_chunks():
    container, _ = compress(b"", CFG)
    info = inspect(container)
    assert info["chunk_count"] == 0
    assert decompress(container, CFG) == b""


def test_metrics_arithmetic():
    data = generate("HDFS", 200)
    container, m = compress(data, CFG)
    assert m.original_bytes == len(data)
    assert m.compressed_bytes == len(container)
    assert m.cr == pytest.approx(len(data) / len(container))
    assert m.cs == pytest.approx(len(data) / m.elapsed_seconds)
    assert m.cs_mb == pytest.approx(m.cs / 1e6)


def test_chunking_250k():
    data = b"".join(b"line %d\n" % i for i in range(250_000))
    container, _ = compress(data, Config(threads=1))
    info = inspect(container)
    assert [c["lines"] for c in info["chunks"]] == [100_000, 100_000, 50_000]
    assert decompress(container, CFG) == data


def test_chunk_independence():
    data = generate("HDFS", 1000)
    container, _ = compress(data, Config(chunk_lines=300, threads=1))
    lines = data.split(b"\n")[:-1]
    got = []
    for i, chunk in enumerate(iter_chunks(container)):
        got.extend(chunk)
        assert got == lines[:len(got)]
    assert got == lines


@pytest.mark.parametrize("threads", [2, 4, 8])
def test_determinism(threads):
    data = generate("Hadoop", 2000)
    a, _ = compress(data, Config(chunk_lines=400, threads=1))
    b, _ = compress(data, Config(chunk_lines=400, threads=threads))
    assert a == b
    assert decompress(b, Config(threads=threads)) == data


def test_digit_free_input_has_no_tags():
    data = b"alpha beta\ngamma <delta>\n" * 10
    container, _ = compress(data, CFG)
    info = inspect(container)
    assert info["groups"] == {}
    assert info["numeric_share"] == 0
    assert decompress(container, CFG) == data


def test_inspect_shares():
    container, _ = compress(generate("HDFS"), CFG)
    info = inspect(container)
    assert 0 <= info["numeric_share"] <= 1
    assert sum(g["share"] for g in info["groups"].values()) == pytest.approx(info["numeric_share"])


def test_unknown_backend():
    with pytest.raises(BackendUnavailable):
        compress(b"x", Config(backend="snappy"))


# -- corruption -------------------------------------------------------------

def _rebuild(container, edit):
    """Re-pack a 'none'-backend container after ``edit(sections)`` changes chunk 0."""
    inner = container[HEADER_LEN:]
    r = Reader(inner)
    manifest = Manifest.read(r)
    region = inner[r.pos:]
    e = manifest.chunks[0]
    sec = ChunkSections.loads(region[e.offset:e.offset + e.size])
    edit(sec)
    blob = sec.dumps()
    manifest.chunks[0] = dataclasses.replace(e, size=len(blob))
    return container[:HEADER_LEN] + manifest.dumps() + blob


def test_tampered_index_id():
    data = generate("HDFS", 200)
    container, _ = compress(data, Config(threads=1, backend="none"))

    def edit(sec):
        ids = stringstore.load_index(sec.index)
        ids[5] = len(stringstore.load_dictionary(sec.dictionary))
        sec.index = stringstore.dump_index(ids)

    with pytest.raises(IdOutOfRange):
        decompress(_rebuild(container, edit), CFG)


def test_tampered_payload():
    container, _ = compress(generate("HDFS", 200), Config(threads=1, backend="none"))

    def edit(sec):
        numeric = next(t for t in sec.tags if t.strategy is not Strategy.VERBATIM)
        numeric.payload = numeric.payload[:-1]

    with pytest.raises(CorruptContainer):
        decompress(_rebuild(container, edit), CFG)


def test_bad_magic():
    container, _ = compress(b"hello 1\n", CFG)
    with pytest.raises(BadMagic):
        decompress(b"XXXX" + container[4:], CFG)
    with pytest.raises(BadMagic):
        decompress(b"", CFG)


@pytest.mark.parametrize("backend", ["none", "lzma", "bz2", "zlib"])
def test_truncation(backend):
    container, _ = compress(generate("Linux", 300), Config(threads=1, backend=backend))
    for cut in (HEADER_LEN, len(container) // 2, len(container) - 1):
        with pytest.raises(CorruptContainer):
            decompress(container[:cut], CFG)


def test_byte_flips_fail_cleanly():
    data = generate("Proxifier", 40)
    container, _ = compress(data, Config(threads=1, backend="none"))
    for i in range(len(container)):
        bad = bytearray(container)
        bad[i] ^= 0x41
        try:
            decompress(bytes(bad), CFG)
        except (CorruptContainer, FingerprintMismatch):
            pass


def test_fingerprint_mismatch():
    container, _ = compress(generate("HDFS", 50), CFG)
    other = PatternRegistry.parse("T\tDelta\t##:##:##\t\\d{2}:\\d{2}:\\d{2}\n")
    with pytest.raises(FingerprintMismatch):
        decompress(container, Config(registry=other))


def test_no_numeric_ignores_registry():
    data = generate("HDFS", 50)
    container, _ = compress(data, Config(threads=1, no_numeric=True))
    other = PatternRegistry.parse("")
    assert decompress(container, Config(registry=other)) == data


def test_backend_id_is_readable_without_decompressing():
    container, _ = compress(b"abc\n", Config(backend="bz2"))
    assert container[:4] == b"DNUM"
    assert get_backend(container[5]).name == "bz2"


def test_rule_value_out_of_slot_range():
    container, _ = compress(b"from 10.0.0.1\n", Config(threads=1, backend="none"))

    def edit(sec):
        ip = next(t for t in sec.tags if t.tag == b"<I>")
        ip.payload = b"\x00\x82" + ip.payload[1:]  # first octet 256

    with pytest.raises(CorruptContainer):
        decompress(_rebuild(container, edit), CFG)


def test_process_pool_output_matches_serial(monkeypatch):
    # the pool is capped at the CPU count; pretend there are four so it really runs
    from numlog import pipeline
    monkeypatch.setattr(pipeline, "usable_cpus", lambda: 4)
    data = generate("Spark", 2000)
    serial, _ = compress(data, Config(chunk_lines=300, threads=1))
    pooled, _ = compress(data, Config(chunk_lines=300, threads=4))
    assert pooled == serial
    assert decompress(pooled, Config(threads=4)) == data
