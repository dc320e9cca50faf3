"""
Acceptance checks.  Each test carries a ``criterion`` marker; the conftest
hook prints one PASS/FAIL line per criterion at the end of the run.

    pytest tests/test_acceptance.py -v
"""
import lzma
import random
import re
import time

import numpy as np
import pytest

from numlog import Config, compress, decompress, preprocess, preprocess_invert
from numlog import corpus, numcodec as nc
from numlog.extract import extract_line
from numlog.patterns import PatternRegistry
from numlog.tagging import number_tag

criterion = pytest.mark.criterion

FUZZ_PIECES = [b"<a>", b"<db>", b"<T>", b"<I>", b"<*>", b"<zz>", b"\x1b", b"\x1b\x1b", b"<", b">",
               b"03:03:05", b"99:99:99", b"202.133.98.6", b"300.1.1.1", b"2024", b"0", b"00017",
               b"1234567890123456", b"5854eb7b8b09", b"blk_-123", b"\xff", b"\x80\x00", b"\r", b" ",
               b"\n", b"\n", b"\t", b"x", b"9"]


def fuzz_input(rng: random.Random) -> bytes:
    parts = []
    for _ in range(rng.randrange(0, 40)):
        if rng.random() < 0.7:
            parts.append(rng.choice(FUZZ_PIECES))
        else:
            parts.append(bytes(rng.randrange(256) for _ in range(rng.randrange(1, 6))))
    data = b"".join(parts)
    if rng.random() < 0.5:
        data = data.rstrip(b"\n")
    return data


@criterion(1, "lossless on 16 samples and 1,000 fuzzed inputs in < 60 s")
def test_c1_lossless(samples):
    t0 = time.perf_counter()
    cfg = Config(threads=1)
    for name, data in samples.items():
        container, _ = compress(data, cfg)
        assert decompress(container, cfg) == data, name
    rng = random.Random(2024)
    for i in range(1000):
        data = fuzz_input(rng)
        container, _ = compress(data, Config(threads=1, chunk_lines=rng.choice([1, 3, 100_000])))
        assert decompress(container, cfg) == data, (i, data)
    assert time.perf_counter() - t0 < 60


@criterion(2, "elastic codec exhaustive < 2^16, 10^5 random 63-bit, 35 -> A3, < 128 in 1 byte, < 5 s")
def test_c2_elastic():
    t0 = time.perf_counter()
    assert nc.elastic_encode(35) == bytes([0xA3])
    small = np.arange(1 << 16, dtype=np.uint64)
    buf = nc.encode_many(small)
    assert np.array_equal(nc.decode_many(buf), small)
    for v in range(1 << 16):
        enc = nc.elastic_encode(v)
        assert nc.elastic_decode(enc) == (v, len(enc))
        if v < 128:
            assert len(enc) == 1
    assert buf[:128] == bytes(v | 0x80 for v in range(128))
    rng = random.Random(63)
    big = [rng.getrandbits(63) for _ in range(100_000)]
    for v in big[:20_000]:
        assert nc.elastic_decode(nc.elastic_encode(v))[0] == v
    assert nc.decode_many(nc.encode_many(np.array(big, dtype=np.uint64))).tolist() == big
    assert time.perf_counter() - t0 < 5


@criterion(3, "delta/zigzag round trip on 10^4 sequences; [30305, 30306, 30307] -> deltas [2, 2]")
def test_c3_delta():
    assert nc.delta_encode([30305, 30306, 30307]).zigzag_deltas == [2, 2]
    rng = random.Random(3)
    for i in range(10_000):
        n = rng.randrange(1, 40)
        kind = i % 4
        if kind == 0:
            seq = sorted((rng.randrange(10 ** 12) for _ in range(n)), reverse=True)
            seq = [v + (n - j) for j, v in enumerate(seq)]  # strictly decreasing
        elif kind == 1:
            seq = [rng.randrange(10 ** 15)] * n
        elif kind == 2:
            start = rng.randrange(10 ** 9)
            seq = [start + j * rng.randrange(0, 3) for j in range(n)]
        else:
            seq = [rng.randrange(10 ** 15) for _ in range(n)]
        assert nc.delta_decode(nc.delta_encode(seq)) == seq
        payload = nc.encode_delta_payload(np.array(seq, dtype=np.int64))
        assert nc.decode_delta_payload(payload).tolist() == seq


@criterion(4, "tagging: 2024 -> <db>, IP -> <I>, 16 digits -> <*>, 5854eb7b8b09 -> <*>, clean skeleton")
def test_c4_tagging():
    reg = PatternRegistry.default()
    assert number_tag(b"2024") == b"<db>"
    assert extract_line(b"2024", reg)[0] == b"<db>"
    assert extract_line(b"client 202.133.98.6 x", reg)[0] == b"client <I> x"
    assert extract_line(b"n 1234567890123456", reg)[0] == b"n <*>"
    assert extract_line(b"s 5854eb7b8b09 e", reg)[0] == b"s <*> e"
    for line in corpus.APACHE_SAMPLE.split(b"\n"):
        skeleton, _ = extract_line(line, reg)
        assert not re.search(rb"(?<![\x1b0-9A-Za-z])[0-9]+(?![0-9A-Za-z])", skeleton), skeleton


@criterion(5, "full <= backend on >= 5/6 and numeric-only <= backend on >= 4/6 ablation corpora")
def test_c5_ablation(samples):
    t0 = time.perf_counter()
    full_wins = numeric_wins = 0
    for name in corpus.ABLATION_SYSTEMS:
        data = samples[name]
        backend = len(lzma.compress(data))
        full = len(compress(data, Config(threads=1))[0])
        numeric = len(compress(data, Config(threads=1, no_string=True))[0])
        full_wins += full <= backend
        numeric_wins += numeric <= backend
    assert full_wins >= 5, full_wins
    assert numeric_wins >= 4, numeric_wins
    assert time.perf_counter() - t0 < 120


@criterion(6, "CR non-decreasing (2% tolerance) for chunk lines 100k -> 300k -> 1M on 1M-line log")
def test_c6_chunk_trend():
    t0 = time.perf_counter()
    data = corpus.incremental_log(1_000_000)
    cr = {}
    for n in (100_000, 300_000, 1_000_000):
        cr[n] = compress(data, Config(chunk_lines=n))[1].cr
    print(f"\nCR by chunk size: {cr}")
    assert cr[300_000] >= cr[100_000] * 0.98
    assert cr[1_000_000] >= cr[300_000] * 0.98
    assert time.perf_counter() - t0 < 180


@criterion(7, "identical containers for threads 1 and 4 on HDFS sample")
def test_c7_determinism(samples):
    data = samples["HDFS"]
    small_chunks = compress(data, Config(threads=1, chunk_lines=250))[0]
    assert small_chunks == compress(data, Config(threads=4, chunk_lines=250))[0]
    assert compress(data, Config(threads=1))[0] == compress(data, Config(threads=4))[0]


@criterion(8, "preprocess inverts on 16 samples; backend(skeleton) < backend(raw) on >= 12/16")
def test_c8_interchange(samples, tmp_path):
    smaller = 0
    for name, data in samples.items():
        out = tmp_path / name
        preprocess(data, out, Config())
        assert preprocess_invert(out, Config()) == data, name
        skeleton = (out / "skeleton.log").read_bytes()
        smaller += len(lzma.compress(skeleton)) < len(lzma.compress(data))
    assert smaller >= 12, smaller


@criterion(9, "compress of a 100 MB synthetic log at >= 5 MB/s with 4 workers")
def test_c9_throughput():
    data = corpus.synthetic_bulk(100_000_000)
    container, m = compress(data, Config(threads=4))
    print(f"\n{m.original_bytes} bytes in {m.elapsed_seconds:.2f} s = {m.cs_mb:.2f} MB/s, CR {m.cr:.2f}")
    assert m.cs_mb >= 5.0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
