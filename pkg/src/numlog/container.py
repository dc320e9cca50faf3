"""
Container byte layout.

    b"DNUM" | version (1 byte) | backend id (1 byte) | backend(inner)

    inner = manifest | chunk region
    manifest:
        elastic chunk count
        per chunk: offset, size, line count, tag count, (tag length, tag)*
        fingerprint length, fingerprint
        backend id, level code (0 = backend default, else level + 1)
        total line count, trailing newline flag, ablation flags
    chunk:
        elastic lengths of dictionary, index and tag directory sections,
        then the three sections, then the tag payloads in directory order
    tag directory:
        elastic tag count, per tag: (tag length, tag, strategy byte,
        elastic payload length)

All integers are elastic-encoded.  Chunk offsets are relative to the start
of the chunk region.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CodecError, CorruptContainer
from .numcodec import elastic_decode, elastic_encode
from .tokens import Strategy

MAGIC = b"DNUM"
VERSION = 1
HEADER_LEN = len(MAGIC) + 2

FLAG_NO_NUMERIC = 1
FLAG_NO_STRING = 2


class Reader:
    """Cursor over a byte buffer; every read failure is a CorruptContainer."""

    def __init__(self, buf: bytes, pos: int = 0):
        self.buf = buf
        self.pos = pos
        self.end = len(buf)

    def uint(self) -> int:
        try:
            v, n = elastic_decode(self.buf, self.pos)
        except CodecError as e:
            raise CorruptContainer(str(e)) from None
        self.pos += n
        return v

    def take(self, n: int) -> bytes:
        if n < 0 or self.pos + n > self.end:
            raise CorruptContainer("section runs past end of buffer")
        out = self.buf[self.pos:self.pos + n]
        self.pos += n
        return out

    def blob(self) -> bytes:
        return self.take(self.uint())

    @property
    def remaining(self) -> int:
        return self.end - self.pos


def _put_blob(out: bytearray, b: bytes):
    out += elastic_encode(len(b))
    out += b


@dataclass
class ChunkEntry:
    offset: int
    size: int
    line_count: int
    tags: list[bytes] = field(default_factory=list)


@dataclass
class Manifest:
    chunks: list[ChunkEntry]
    fingerprint: bytes
    backend_id: int
    level: int | None
    total_lines: int
    trailing_newline: bool
    flags: int = 0

    def dumps(self) -> bytes:
        out = bytearray()
        out += elastic_encode(len(self.chunks))
        for c in self.chunks:
            out += elastic_encode(c.offset)
            out += elastic_encode(c.size)
            out += elastic_encode(c.line_count)
            out += elastic_encode(len(c.tags))
            for t in c.tags:
                _put_blob(out, t)
        _put_blob(out, self.fingerprint)
        out += elastic_encode(self.backend_id)
        out += elastic_encode(0 if self.level is None else self.level + 1)
        out += elastic_encode(self.total_lines)
        out += elastic_encode(int(self.trailing_newline))
        out += elastic_encode(self.flags)
        return bytes(out)

    @classmethod
    def read(cls, r: Reader) -> "Manifest":
        n = r.uint()
        if n > r.remaining:
            raise CorruptContainer("chunk count exceeds container size")
        chunks = []
        for _ in range(n):
            offset, size, lines, ntags = r.uint(), r.uint(), r.uint(), r.uint()
            if ntags > r.remaining:
                raise CorruptContainer("tag count exceeds container size")
            chunks.append(ChunkEntry(offset, size, lines, [r.blob() for _ in range(ntags)]))
        fp = r.blob()
        backend_id = r.uint()
        level_code = r.uint()
        total = r.uint()
        trailing = r.uint()
        flags = r.uint()
        if trailing > 1 or flags > 3:
            raise CorruptContainer("bad manifest flags")
        m = cls(chunks, fp, backend_id, None if level_code == 0 else level_code - 1,
                total, bool(trailing), flags)
        m.validate()
        return m

    def validate(self):
        pos = 0
        for c in self.chunks:
            if c.offset != pos or c.line_count == 0:
                raise CorruptContainer("chunk table is not contiguous")
            pos += c.size
        if sum(c.line_count for c in self.chunks) != self.total_lines:
            raise CorruptContainer("chunk line counts do not add up")
        if self.total_lines == 0 and self.trailing_newline:
            raise CorruptContainer("trailing newline flag on empty input")

    @property
    def region_size(self) -> int:
        return sum(c.size for c in self.chunks)


@dataclass
class TagEntry:
    tag: bytes
    strategy: Strategy
    payload: bytes


@dataclass
class ChunkSections:
    dictionary: bytes
    index: bytes
    tags: list[TagEntry]

    def dumps(self) -> bytes:
        tagdir = bytearray(elastic_encode(len(self.tags)))
        for t in self.tags:
            _put_blob(tagdir, t.tag)
            tagdir.append(int(t.strategy))
            tagdir += elastic_encode(len(t.payload))
        out = bytearray()
        out += elastic_encode(len(self.dictionary))
        out += elastic_encode(len(self.index))
        out += elastic_encode(len(tagdir))
        out += self.dictionary
        out += self.index
        out += tagdir
        for t in self.tags:
            out += t.payload
        return bytes(out)

    @classmethod
    def loads(cls, buf: bytes) -> "ChunkSections":
        r = Reader(buf)
        ld, li, lt = r.uint(), r.uint(), r.uint()
        dictionary = r.take(ld)
        index = r.take(li)
        td = Reader(r.take(lt))
        entries = []
        sizes = []
        for _ in range(td.uint()):
            tag = td.blob()
            code = td.take(1)[0]
            try:
                strategy = Strategy(code)
            except ValueError:
                raise CorruptContainer(f"bad strategy byte {code}") from None
            entries.append((tag, strategy))
            sizes.append(td.uint())
        if td.remaining:
            raise CorruptContainer("trailing bytes in tag directory")
        tags = [TagEntry(tag, s, r.take(n)) for (tag, s), n in zip(entries, sizes)]
        if r.remaining:
            raise CorruptContainer("trailing bytes after tag payloads")
        return cls(dictionary, index, tags)
