"""
General-purpose compression backends behind a bytes-in / bytes-out API.

Each backend has a stable numeric ID that is written into containers.
"""
from __future__ import annotations

import bz2
import lzma
import zlib
from dataclasses import dataclass
from typing import Callable

from .errors import BackendUnavailable, CorruptContainer


@dataclass(frozen=True)
class Backend:
    name: str
    ident: int
    _compress: Callable[[bytes, int | None], bytes]
    _decompress: Callable[[bytes], bytes]
    levels: tuple[int, int] | None = None

    def compress(self, data: bytes, level: int | None = None) -> bytes:
        if level is not None and self.levels is not None:
            lo, hi = self.levels
            if not lo <= level <= hi:
                raise ValueError(f"{self.name} level must be in {lo}..{hi}")
        return self._compress(data, level)

    def decompress(self, data: bytes) -> bytes:
        try:
            return self._decompress(data)
        except (lzma.LZMAError, OSError, zlib.error, EOFError, ValueError) as e:
            raise CorruptContainer(f"{self.name} stream: {e}") from None


def _lzma_c(data, level):
    return lzma.compress(data, preset=6 if level is None else level)


def _bz2_c(data, level):
    return bz2.compress(data, 9 if level is None else level)


def _zlib_c(data, level):
    return zlib.compress(data, -1 if level is None else level)


def _strict_lzma_d(data):
    d = lzma.LZMADecompressor(format=lzma.FORMAT_XZ)
    out = d.decompress(data)
    if not d.eof or d.unused_data:
        raise lzma.LZMAError("truncated or trailing data")
    return out


def _strict_bz2_d(data):
    d = bz2.BZ2Decompressor()
    out = d.decompress(data)
    if not d.eof or d.unused_data:
        raise OSError("truncated or trailing data")
    return out


def _strict_zlib_d(data):
    d = zlib.decompressobj()
    out = d.decompress(data) + d.flush()
    if not d.eof or d.unused_data:
        raise zlib.error("truncated or trailing data")
    return out


BACKENDS: dict[str, Backend] = {
    b.name: b
    for b in (
        Backend("none", 0, lambda d, lvl: bytes(d), bytes),
        Backend("lzma", 1, _lzma_c, _strict_lzma_d, (0, 9)),
        Backend("bz2", 2, _bz2_c, _strict_bz2_d, (1, 9)),
        Backend("zlib", 3, _zlib_c, _strict_zlib_d, (0, 9)),
    )
}
_BY_ID = {b.ident: b for b in BACKENDS.values()}

DEFAULT_BACKEND = "lzma"


def get_backend(name_or_id: str | int) -> Backend:
    if isinstance(name_or_id, int):
        b = _BY_ID.get(name_or_id)
    else:
        b = BACKENDS.get(name_or_id.lower())
    if b is None:
        raise BackendUnavailable(f"unknown backend {name_or_id!r}")
    return b
