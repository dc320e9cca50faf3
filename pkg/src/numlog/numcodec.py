"""
Integer codecs for numeric streams.

Elastic encoding stores an unsigned value as little-endian 7-bit groups.
The high bit of a byte is a stop bit: it is 0 on every byte of a value
except the last one.  Values below 128 therefore take exactly one byte.

    35  -> a3
    0   -> 80
    300 -> 2c 82

Signed deltas are zigzag-mapped before elastic encoding so that small
negative differences stay small.

The scalar functions are the reference definitions; ``encode_many`` /
``decode_many`` are the numpy versions used on whole tag groups.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ElasticOverflow, EmptyInput, Overlong, Truncated

MAX_VALUE = (1 << 63) - 1
MAX_BYTES = 9
STOP = 0x80

_U64_MASK = (1 << 64) - 1


def elastic_encode(v: int) -> bytes:
    if v < 0 or v > MAX_VALUE:
        raise ElasticOverflow(f"value out of elastic range: {v}")
    out = bytearray()
    while v > 0x7F:
        out.append(v & 0x7F)
        v >>= 7
    out.append(v | STOP)
    return bytes(out)


def elastic_decode(buf: bytes, pos: int = 0) -> tuple[int, int]:
    """Decode one value at ``buf[pos:]``; return ``(value, bytes_consumed)``."""
    v = 0
    shift = 0
    n = 0
    end = len(buf)
    while True:
        if pos + n >= end:
            raise Truncated("stream ended before stop bit")
        if n >= MAX_BYTES:
            raise Overlong(f"no stop bit within {MAX_BYTES} bytes")
        b = buf[pos + n]
        n += 1
        v |= (b & 0x7F) << shift
        if b & STOP:
            return v, n
        shift += 7


def zigzag(d: int) -> int:
    return ((d << 1) ^ (d >> 63)) & _U64_MASK


def unzigzag(u: int) -> int:
    return (u >> 1) ^ -(u & 1)


@dataclass(frozen=True)
class DeltaStream:
    first: int
    deltas: tuple[int, ...]

    @property
    def zigzag_deltas(self) -> list[int]:
        return [zigzag(d) for d in self.deltas]

    def __len__(self) -> int:
        return 1 + len(self.deltas)


def delta_encode(values: Sequence[int]) -> DeltaStream:
    if len(values) == 0:
        raise EmptyInput("delta_encode needs at least one value")
    deltas = tuple(b - a for a, b in zip(values, values[1:]))
    return DeltaStream(values[0], deltas)


def delta_decode(stream: DeltaStream) -> list[int]:
    out = [stream.first]
    acc = stream.first
    for d in stream.deltas:
        acc += d
        out.append(acc)
    return out


# -- bulk versions --------------------------------------------------------


def encode_many(values: Iterable[int] | np.ndarray) -> bytes:
    """Elastic-encode a sequence of non-negative integers back to back."""
    v = np.asarray(values)
    if v.size == 0:
        return b""
    if v.dtype.kind == "i":
        if int(v.min()) < 0:
            raise ElasticOverflow("negative value")
        v = v.astype(np.uint64)
    elif v.dtype.kind != "u":
        # python ints beyond int64 land here as object arrays
        if any(int(x) < 0 or int(x) > MAX_VALUE for x in v.ravel()):
            raise ElasticOverflow("value out of elastic range")
        v = v.astype(np.uint64)
    else:
        v = v.astype(np.uint64, copy=False)
    v = v.ravel()
    if int(v.max()) > MAX_VALUE:
        raise ElasticOverflow("value out of elastic range")
    if int(v.max()) < 0x80:
        return (v.astype(np.uint8) | STOP).tobytes()

    lengths = np.ones(v.size, dtype=np.int64)
    rest = v >> np.uint64(7)
    while rest.any():
        lengths += rest > 0
        rest >>= np.uint64(7)
    ends = np.cumsum(lengths)
    starts = ends - lengths
    owner = np.repeat(np.arange(v.size), lengths)
    k = np.arange(int(ends[-1])) - starts[owner]
    out = ((v[owner] >> (k * 7).astype(np.uint64)) & np.uint64(0x7F)).astype(np.uint8)
    out[ends - 1] |= STOP
    return out.tobytes()


def decode_many(buf: bytes) -> np.ndarray:
    """Inverse of :func:`encode_many`; returns a uint64 array."""
    a = np.frombuffer(buf, dtype=np.uint8)
    if a.size == 0:
        return np.zeros(0, dtype=np.uint64)
    stops = np.flatnonzero(a & STOP)
    if stops.size == 0 or stops[-1] != a.size - 1:
        raise Truncated("stream ended before stop bit")
    lengths = np.diff(stops, prepend=-1)
    if int(lengths.max()) > MAX_BYTES:
        raise Overlong(f"no stop bit within {MAX_BYTES} bytes")
    payload = (a & 0x7F).astype(np.uint64)
    if stops.size == a.size:
        return payload
    starts = stops - lengths + 1
    owner = np.repeat(np.arange(stops.size), lengths)
    k = np.arange(a.size) - starts[owner]
    return np.add.reduceat(payload << (k * 7).astype(np.uint64), starts)


def zigzag_many(d: np.ndarray) -> np.ndarray:
    d = np.asarray(d, dtype=np.int64)
    return ((d << 1) ^ (d >> 63)).view(np.uint64)


def unzigzag_many(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.uint64)
    return ((u >> np.uint64(1)) ^ (np.uint64(0) - (u & np.uint64(1)))).view(np.int64)


def encode_delta_payload(values: np.ndarray) -> bytes:
    """First value, then zigzagged successive differences, all elastic."""
    v = np.asarray(values, dtype=np.int64)
    if v.size == 0:
        raise EmptyInput("delta payload needs at least one value")
    return elastic_encode(int(v[0])) + encode_many(zigzag_many(np.diff(v)))


def decode_delta_payload(buf: bytes) -> np.ndarray:
    raw = decode_many(buf)
    if raw.size == 0:
        raise EmptyInput("empty delta payload")
    out = np.empty(raw.size, dtype=np.int64)
    out[0] = np.int64(raw[0])
    out[1:] = unzigzag_many(raw[1:])
    return np.cumsum(out)
