"""
Numeric token extraction and reinsertion.

Precedence: pattern rules in registry order, then pure numbers (maximal
digit runs not touching an ASCII letter or digit), then numeric variables
(maximal alphanumeric runs holding a digit and a letter).  Every match is
replaced by its tag.  Literal text that already looks like a tag, and the
escape byte itself, get a 0x1B prefix so the skeleton stays unambiguous.

``extract_line`` / ``reinsert_line`` work on one line and build
NumericToken objects.  ``extract_block`` / ``reinsert_block`` do the same
job over a newline-joined chunk in bulk and are what the pipeline uses.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter, deque
from typing import Mapping

import numpy as np

from .errors import CorruptContainer, QueueUnderflow
from .patterns import MAX_DIGITS, PatternRegistry, PatternRule
from .tagging import CODE_TAGS, STAR, assign_tag
from .tokens import NumericToken, TokenKind

ESC = 0x1B
ESCAPE_RE = re.compile(rb"\x1b|<(?:[a-z]{1,2}|[A-Z]|\*)>")
PURE_NUMBER_RE = re.compile(rb"(?<![a-zA-Z0-9])[0-9]+(?![a-zA-Z0-9])")
VARIABLE_RE = re.compile(rb"(?<![a-zA-Z0-9])[a-zA-Z0-9]*[0-9][a-zA-Z0-9]*(?![a-zA-Z0-9])")
SKELETON_TOKEN_RE = re.compile(rb"(\x1b[\s\S]|<(?:[a-z]{1,2}|[A-Z]|\*)>)")

# a rule match may not swallow tag text, escapes or line breaks
_FORBIDDEN = (b"<", b">", b"\x1b", b"\n")


def escape(text: bytes) -> bytes:
    if b"<" not in text and b"\x1b" not in text:
        return text
    return ESCAPE_RE.sub(b"\x1b\\g<0>", text)


def _rule_accepts(raw: bytes) -> bool:
    return bool(raw) and not any(f in raw for f in _FORBIDDEN)


def _classify_digits(raw: bytes) -> TokenKind:
    if len(raw) > MAX_DIGITS:
        return TokenKind.OVERSIZED
    if len(raw) > 1 and raw[0] == 0x30:
        return TokenKind.LEADING_ZERO
    return TokenKind.PURE_NUMBER


def extract_line(line: bytes, registry: PatternRegistry | None = None):
    """Return ``(skeleton, tokens)`` for one line (no newline byte)."""
    if registry is None:
        registry = PatternRegistry.default()
    work = bytearray(line)
    claimed = bytearray(len(line))
    tokens: list[NumericToken] = []

    for rule in registry:
        for m in rule.regex.finditer(bytes(work)):
            raw = line[m.start():m.end()]
            if not _rule_accepts(raw) or any(claimed[m.start():m.end()]):
                continue
            seg = rule.parse(raw)
            if seg is None:
                continue
            tokens.append(NumericToken(TokenKind.PURE_PATTERN, raw, seg, m.start(), rule.letter))
            work[m.start():m.end()] = bytes(m.end() - m.start())
            claimed[m.start():m.end()] = b"\x01" * (m.end() - m.start())

    # masked regions read as NUL, which is neither letter nor digit
    for m in PURE_NUMBER_RE.finditer(bytes(work)):
        raw = m.group()
        kind = _classify_digits(raw)
        seg = (int(raw),) if kind is TokenKind.PURE_NUMBER else ()
        tokens.append(NumericToken(kind, raw, seg, m.start()))
        work[m.start():m.end()] = bytes(len(raw))

    for m in VARIABLE_RE.finditer(bytes(work)):
        tokens.append(NumericToken(TokenKind.NUMERIC_VARIABLE, m.group(), (), m.start()))

    tokens.sort(key=lambda t: t.start)
    out = []
    pos = 0
    for tok in tokens:
        out.append(escape(line[pos:tok.start]))
        out.append(assign_tag(tok))
        pos = tok.end
    out.append(escape(line[pos:]))
    return b"".join(out), tokens


def token_entry(token: NumericToken):
    """What a token contributes to its tag queue."""
    if token.kind is TokenKind.PURE_PATTERN:
        return list(token.segments)
    if token.kind is TokenKind.PURE_NUMBER:
        return token.segments[0]
    return token.raw


def reinsert_line(skeleton: bytes, queues: Mapping[bytes, deque],
                  registry: PatternRegistry | None = None) -> bytes:
    """
    Replace tags left to right with the head of each tag's queue.

    Queue entries: ints for lowercase tags, segment lists for uppercase
    tags, raw bytes for ``<*>``.  Consumed entries are popped.
    """
    if registry is None:
        registry = PatternRegistry.default()

    def fill(m):
        tok = m.group()
        if tok[0] == ESC:
            return tok[1:]
        q = queues.get(tok)
        if not q:
            raise QueueUnderflow(f"no value left for {tok.decode()}")
        entry = q.popleft()
        if tok == STAR:
            return entry
        letter = tok[1:-1].decode()
        if letter.isupper():
            rule = registry.get(letter)
            if rule is None:
                raise CorruptContainer(f"unknown rule tag {tok.decode()}")
            return rule.render(entry)
        return b"%d" % entry

    return SKELETON_TOKEN_RE.sub(fill, skeleton)


# -- block versions -------------------------------------------------------

_POW10 = [np.array([10 ** (n - 1 - i) for i in range(n)], dtype=np.int64) for n in range(0, 16)]


def _apply_rule(rule: PatternRule, blob: bytes, values: list) -> tuple[bytes, int]:
    matches = list(rule.regex.finditer(blob))
    if not matches:
        return blob, 0
    raws = [m.group() for m in matches]
    # template literals can't hold tag bytes, so a parsed match is always safe
    parsed = rule.parse_many(raws)
    tag = b"<%s>" % rule.letter.encode()
    out = []
    pos = 0
    count = 0
    for m, seg in zip(matches, parsed):
        if seg is None:
            continue
        start = m.start()
        out.append(blob[pos:start])
        out.append(tag)
        values.extend(seg)
        pos = m.end()
        count += 1
    if not count:
        return blob, 0
    out.append(blob[pos:])
    return b"".join(out), count


_ALNUM = np.zeros(256, dtype=bool)
_ALNUM[np.frombuffer(b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ", np.uint8)] = True
_DIGIT = np.zeros(256, dtype=bool)
_DIGIT[0x30:0x3A] = True

# tag bytes per shape code, padded to 4 bytes
_TAG_LEN = np.array([len(t) for t in CODE_TAGS], dtype=np.int64)
_TAG_BYTES = np.zeros((len(CODE_TAGS), 4), dtype=np.uint8)
for _code, _tag in enumerate(CODE_TAGS):
    _TAG_BYTES[_code, :len(_tag)] = np.frombuffer(_tag, np.uint8)


def _digit_runs(buf: np.ndarray):
    """(starts, ends, digit counts) of maximal alnum runs holding a digit."""
    alnum = _ALNUM[buf].view(np.int8)
    edges = np.diff(alnum, prepend=np.int8(0), append=np.int8(0))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    digits_before = np.zeros(buf.size + 1, dtype=np.int64)
    np.cumsum(_DIGIT[buf], out=digits_before[1:])
    ndig = digits_before[ends] - digits_before[starts]
    keep = ndig > 0
    return starts[keep], ends[keep], ndig[keep]


def _shape_codes(buf: np.ndarray, starts, lens, ndig) -> np.ndarray:
    """Per-token tag code (index into CODE_TAGS); 0 means ``<*>``."""
    first = buf[starts].astype(np.int64) - 0x30
    numeric = (ndig == lens) & (lens <= MAX_DIGITS) & ((first != 0) | (lens == 1))
    codes = np.where(lens <= 2, lens, lens * 16 + first)
    codes[~numeric] = 0
    return codes


def _splice_tags(buf: np.ndarray, starts, ends, codes) -> bytes:
    """``buf`` with every [start, end) run replaced by the tag for its code."""
    lens = ends - starts
    tag_lens = _TAG_LEN[codes]
    grow = np.concatenate(([0], np.cumsum(tag_lens - lens)))
    out = np.empty(buf.size + int(grow[-1]), dtype=np.uint8)
    # bytes between tokens move right by the net growth of the tokens before them
    gap_starts = np.concatenate(([0], ends))
    gap_lens = np.concatenate((starts, [buf.size])) - gap_starts
    in_token = np.zeros(buf.size + 1, dtype=np.int8)
    # runs are maximal, so no start coincides with an end
    in_token[starts] = 1
    in_token[ends] = -1
    kept = np.flatnonzero(np.cumsum(in_token[:-1], dtype=np.int8) == 0)
    out[kept + np.repeat(grow, gap_lens)] = buf[kept]
    tag_pos = starts + grow[:-1]
    cols = np.arange(4)
    mask = cols < tag_lens[:, None]
    out[(tag_pos[:, None] + cols)[mask]] = _TAG_BYTES[codes][mask]
    return out.tobytes()


def extract_block(blob: bytes, registry: PatternRegistry):
    """
    Extract every numeric token of a newline-joined block of lines.

    Returns ``(skeleton_blob, groups)`` where groups maps tag -> int64 array
    (numeric and rule tags) or list of raw bytes (``<*>``), each in
    line-major, left-to-right order.
    """
    groups: dict[bytes, object] = {}
    blob = escape(blob)
    for rule in registry:
        vals: list[int] = []
        blob, n = _apply_rule(rule, blob, vals)
        if n:
            groups[b"<%s>" % rule.letter.encode()] = np.array(vals, dtype=np.int64)

    buf = np.frombuffer(blob, dtype=np.uint8)
    starts, ends, ndig = _digit_runs(buf)
    if not starts.size:
        return blob, groups
    lens = ends - starts
    codes = _shape_codes(buf, starts, lens, ndig)
    skeleton = _splice_tags(buf, starts, ends, codes)

    order = np.argsort(codes, kind="stable")
    bounds = np.flatnonzero(np.diff(codes[order])) + 1
    for idx in np.split(order, bounds):
        code = int(codes[idx[0]])
        tag = CODE_TAGS[code]
        if code == 0:
            groups[tag] = [blob[a:b] for a, b in zip(starts[idx].tolist(), ends[idx].tolist())]
        else:
            width = int(lens[idx[0]])
            digits = buf[starts[idx][:, None] + np.arange(width)].astype(np.int64) - 0x30
            groups[tag] = digits @ _POW10[width]
    return skeleton, groups


def render_group(tag: bytes, values, registry: PatternRegistry) -> list[bytes]:
    """Turn a decoded tag group back into the byte strings it replaced."""
    if tag == STAR:
        return list(values)
    letter = tag[1:-1].decode()
    if letter.isupper():
        rule = registry.get(letter)
        if rule is None:
            raise CorruptContainer(f"unknown rule tag {tag.decode()}")
        arr = np.asarray(values, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= 10 ** MAX_DIGITS):
            raise CorruptContainer(f"value out of range in {tag.decode()}")
        try:
            return rule.render_many(arr.tolist())
        except ValueError as e:
            raise CorruptContainer(str(e)) from None
    arr = np.asarray(values, dtype=np.int64)
    length = ord(letter[0]) - 0x60
    if len(letter) == 2:
        lead = ord(letter[1]) - 0x60
        lo, hi = lead * 10 ** (length - 1), (lead + 1) * 10 ** (length - 1)
    else:
        lo, hi = (0 if length == 1 else 10), 10 ** length
    if arr.size and (arr.min() < lo or arr.max() >= hi):
        raise CorruptContainer(f"value does not fit tag {tag.decode()}")
    return list(map(b"%d".__mod__, arr.tolist()))


def reinsert_block(skeleton: bytes, rendered: Mapping[bytes, list[bytes]]) -> bytes:
    parts = SKELETON_TOKEN_RE.split(skeleton)
    toks = parts[1::2]
    if not toks:
        if any(rendered.values()):
            raise CorruptContainer("tag group values left over")
        return skeleton
    counts = Counter(toks)
    for tag, n in counts.items():
        if tag[0] == ESC:
            if tag not in (b"\x1b<", b"\x1b\x1b"):
                raise CorruptContainer("bad escape sequence in skeleton")
            continue
        have = len(rendered.get(tag, ()))
        if have < n:
            raise QueueUnderflow(f"{tag.decode()}: {n} occurrences, {have} values")
        if have > n:
            raise CorruptContainer(f"{tag.decode()}: {have - n} values left over")
    for tag, vals in rendered.items():
        if vals and tag not in counts:
            raise CorruptContainer(f"{tag.decode()}: values without occurrences")
    nexts = {tag: iter(vals).__next__ for tag, vals in rendered.items()}
    nexts[b"\x1b<"] = itertools.repeat(b"<").__next__
    nexts[b"\x1b\x1b"] = itertools.repeat(b"\x1b").__next__
    parts[1::2] = [nexts[t]() for t in toks]
    return b"".join(parts)
