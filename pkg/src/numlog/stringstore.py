"""
Dictionary-index storage for skeleton lines.

Distinct lines go into a dictionary in first-seen order; the line sequence
becomes a stream of dictionary IDs.

Byte layouts:
    dictionary  elastic(line count) + lines joined by 0x0A
    index       elastic-encoded IDs, back to back
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from . import numcodec
from .errors import CodecError, CorruptContainer, IdOutOfRange


def build(lines: Sequence[bytes]) -> tuple[list[bytes], list[int]]:
    seen: dict[bytes, int] = {}
    ids = [seen.setdefault(line, len(seen)) for line in lines]
    return list(seen), ids


def restore(dictionary: Sequence[bytes], ids) -> list[bytes]:
    ids = np.asarray(ids, dtype=np.int64)
    if ids.size and (int(ids.min()) < 0 or int(ids.max()) >= len(dictionary)):
        raise IdOutOfRange(f"index ID out of range for dictionary of {len(dictionary)}")
    return [dictionary[i] for i in ids.tolist()]


def dump_dictionary(dictionary: Sequence[bytes]) -> bytes:
    return numcodec.elastic_encode(len(dictionary)) + b"\n".join(dictionary)


def load_dictionary(buf: bytes) -> list[bytes]:
    try:
        count, pos = numcodec.elastic_decode(buf)
    except CodecError as e:
        raise CorruptContainer(f"dictionary header: {e}") from None
    if count == 0:
        if pos != len(buf):
            raise CorruptContainer("trailing bytes after empty dictionary")
        return []
    lines = buf[pos:].split(b"\n")
    if len(lines) != count:
        raise CorruptContainer(f"dictionary holds {len(lines)} lines, header says {count}")
    return lines


def dump_index(ids) -> bytes:
    return numcodec.encode_many(np.asarray(ids, dtype=np.int64))


def load_index(buf: bytes) -> np.ndarray:
    try:
        return numcodec.decode_many(buf).astype(np.int64)
    except CodecError as e:
        raise CorruptContainer(f"index stream: {e}") from None
