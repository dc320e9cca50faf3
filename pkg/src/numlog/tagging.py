"""
Tag assignment and storage strategy per tag.

Tag grammar (as bytes, since skeletons are bytes):

    <x>    pure number of length 1-2, x = length letter
    <xy>   pure number of length 3-15, x = length letter, y = leading digit letter
    <X>    pattern rule with letter X
    <*>    everything stored verbatim
"""
from __future__ import annotations

import re
import string

from .errors import OutOfRange, UnknownUppercaseTag
from .patterns import PatternRegistry
from .tokens import NumericToken, Strategy, TokenKind

STAR = b"<*>"
TAG_RE = re.compile(rb"<(?:[a-z]{1,2}|[A-Z]|\*)>")

_LOWER = string.ascii_lowercase


def letter_map(n: int) -> str:
    if not 1 <= n <= 15:
        raise OutOfRange(f"letter_map expects 1..15, got {n}")
    return _LOWER[n - 1]


def number_tag(digits: bytes) -> bytes:
    """Tag for a maximal digit run standing alone."""
    n = len(digits)
    if n > 15 or (n > 1 and digits[0] == 0x30):
        return STAR
    if n <= 2:
        return b"<%s>" % letter_map(n).encode()
    return b"<%s%s>" % (letter_map(n).encode(), letter_map(digits[0] - 0x30).encode())


def _shape_table() -> dict[tuple[int, int], bytes]:
    # (length, first byte) -> tag, for the fast path in extract
    table = {}
    for n in range(1, 16):
        for d in b"0123456789":
            tag = number_tag(bytes([d]) * n)
            if tag != STAR:
                table[(n, d)] = tag
    return table


SHAPE_TAGS = _shape_table()


def shape_code(length: int, first_digit: int) -> int:
    """Small integer standing for a lowercase tag, 0 for ``<*>``."""
    return length if length <= 2 else length * 16 + first_digit


def _code_table() -> list[bytes]:
    table = [STAR] * 256
    for (n, d), tag in SHAPE_TAGS.items():
        table[shape_code(n, d - 0x30)] = tag
    return table


CODE_TAGS = _code_table()


def assign_tag(token: NumericToken) -> bytes:
    if token.kind is TokenKind.PURE_PATTERN:
        return b"<%s>" % token.letter.encode()
    if token.kind is TokenKind.PURE_NUMBER:
        return number_tag(token.raw)
    return STAR


def classify_strategy(tag: bytes, registry: PatternRegistry) -> Strategy:
    if tag == STAR:
        return Strategy.VERBATIM
    body = tag[1:-1]
    if body.isupper():
        rule = registry.get(body.decode())
        if rule is None:
            raise UnknownUppercaseTag(tag.decode())
        return rule.strategy
    return Strategy.DELTA if len(body) == 2 else Strategy.RAW


def decode_number_tag(tag: bytes) -> tuple[int, int | None]:
    """(length, leading digit) encoded in a lowercase tag; digit is None for <x>."""
    body = tag[1:-1].decode()
    length = _LOWER.index(body[0]) + 1
    if len(body) == 1:
        return length, None
    return length, _LOWER.index(body[1]) + 1
