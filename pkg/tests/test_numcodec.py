import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from numlog import numcodec as nc
from numlog.errors import ElasticOverflow, EmptyInput, Overlong, Truncated


@pytest.mark.parametrize("value, encoded", [
    (35, b"\xa3"),
    (0, b"\x80"),
    (127, b"\xff"),
    (128, b"\x00\x81"),
    (300, b"\x2c\x82"),
])
def test_known_encodings(value, encoded):
    assert nc.elastic_encode(value) == encoded
    assert nc.elastic_decode(encoded) == (value, len(encoded))


def test_max_value_uses_nine_bytes():
    enc = nc.elastic_encode(nc.MAX_VALUE)
    assert len(enc) == 9
    assert nc.elastic_decode(enc) == (nc.MAX_VALUE, 9)


@pytest.mark.parametrize("bad", [-1, 1 << 63, 1 << 70])
def test_out_of_range(bad):
    with pytest.raises(ElasticOverflow):
        nc.elastic_encode(bad)


def test_truncated_and_overlong():
    with pytest.raises(Truncated):
        nc.elastic_decode(b"\x01\x02")
    with pytest.raises(Truncated):
        nc.elastic_decode(b"")
    with pytest.raises(Overlong):
        nc.elastic_decode(b"\x01" * 10 + b"\x80")


def test_decode_at_offset():
    buf = nc.elastic_encode(5) + nc.elastic_encode(300)
    assert nc.elastic_decode(buf, 1) == (300, 2)


@given(st.integers(0, nc.MAX_VALUE))
def test_scalar_round_trip(v):
    enc = nc.elastic_encode(v)
    assert nc.elastic_decode(enc) == (v, len(enc))


@given(st.lists(st.integers(0, nc.MAX_VALUE), max_size=50))
def test_bulk_matches_scalar(values):
    ref = b"".join(nc.elastic_encode(v) for v in values)
    arr = np.array(values, dtype=np.uint64)
    assert nc.encode_many(arr) == ref
    assert nc.decode_many(ref).tolist() == values


def test_bulk_rejects_bad_streams():
    with pytest.raises(Truncated):
        nc.decode_many(b"\x80\x01")
    with pytest.raises(Overlong):
        nc.decode_many(b"\x01" * 9 + b"\x81")
    with pytest.raises(ElasticOverflow):
        nc.encode_many(np.array([-3]))


@given(st.integers(-(1 << 62), (1 << 62) - 1))
def test_zigzag_bijection(d):
    assert nc.unzigzag(nc.zigzag(d)) == d
    assert int(nc.unzigzag_many(nc.zigzag_many(np.array([d])))[0]) == d


def test_zigzag_interleaves_signs():
    assert [nc.zigzag(d) for d in (0, -1, 1, -2, 2)] == [0, 1, 2, 3, 4]


def test_delta_stream_example():
    s = nc.delta_encode([30305, 30306, 30307])
    assert s.first == 30305
    assert s.zigzag_deltas == [2, 2]
    assert nc.delta_decode(s) == [30305, 30306, 30307]


def test_delta_empty():
    with pytest.raises(EmptyInput):
        nc.delta_encode([])
    with pytest.raises(EmptyInput):
        nc.encode_delta_payload(np.array([], dtype=np.int64))


@given(st.lists(st.integers(0, 10 ** 15 - 1), min_size=1, max_size=60))
def test_delta_payload_round_trip(values):
    payload = nc.encode_delta_payload(np.array(values, dtype=np.int64))
    assert nc.decode_delta_payload(payload).tolist() == values


def test_delta_payload_layout():
    payload = nc.encode_delta_payload(np.array([30305, 30306, 30307]))
    assert payload == nc.elastic_encode(30305) + b"\x82\x82"


def test_random_decreasing_and_constant():
    rng = random.Random(1)
    for seq in ([7] * 20, list(range(1000, 0, -7)), [rng.randrange(10 ** 12) for _ in range(100)]):
        assert nc.delta_decode(nc.delta_encode(seq)) == seq
