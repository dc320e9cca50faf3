"""
Pattern rules for numeric tokens that mix digits with special characters
(timestamps, IP addresses, ...).  Each rule owns one uppercase tag letter.

Registry file format, one rule per line, ``#`` starts a comment line::

    LETTER <TAB> STRATEGY <TAB> TEMPLATE <TAB> PATTERN

Template syntax:

    #          one fixed digit; a run of ``#`` is one zero-padded slot
    {}         variable-width number without leading zeros
    {<=N}      same, bounded by N
    \\c         literal character c
    anything else is a literal (digits are not allowed as literals)

When every slot of a template is fixed width, the token is stored as one
packed value (``03:03:06`` -> 30306); otherwise each slot is its own value.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import RegistryError
from .tokens import Strategy

MAX_DIGITS = 15

DEFAULT_REGISTRY_TEXT = (
    "# default rules\n"
    "T\tDelta\t##:##:##\t\\d{2}:\\d{2}:\\d{2}\n"
    # the lookbehind sits after the first digit so the scan can skip non-digits fast
    "I\tRaw\t{<=255}.{<=255}.{<=255}.{<=255}\t"
    "[0-9](?<![0-9][0-9])[0-9]{0,2}\\.[0-9]{1,3}\\.[0-9]{1,3}\\.[0-9]{1,3}(?![0-9])\n"
)


@dataclass(frozen=True)
class Slot:
    width: int | None  # fixed width, or None for variable
    maximum: int | None = None


def _parse_template(template: str) -> list[bytes | Slot]:
    pieces: list[bytes | Slot] = []
    lit = bytearray()
    i = 0
    n = len(template)

    def flush():
        if lit:
            pieces.append(bytes(lit))
            lit.clear()

    while i < n:
        c = template[i]
        if c == "\\":
            if i + 1 >= n:
                raise RegistryError("dangling backslash in template")
            lit += template[i + 1].encode()
            i += 2
        elif c == "#":
            j = i
            while j < n and template[j] == "#":
                j += 1
            flush()
            pieces.append(Slot(j - i))
            i = j
        elif c == "{":
            j = template.find("}", i)
            if j < 0:
                raise RegistryError("unterminated slot in template")
            body = template[i + 1:j].strip()
            if body == "":
                slot = Slot(None)
            elif body.startswith("<="):
                try:
                    slot = Slot(None, int(body[2:]))
                except ValueError:
                    raise RegistryError(f"bad slot bound {body!r}") from None
            else:
                raise RegistryError(f"bad slot {{{body}}}")
            flush()
            pieces.append(slot)
            i = j + 1
        else:
            if c.isdigit():
                raise RegistryError("digits are not allowed as template literals")
            if c in "<>\x1b\n":
                raise RegistryError(f"template literal {c!r} would collide with tag syntax")
            lit += c.encode()
            i += 1
    flush()
    return pieces


@dataclass(frozen=True)
class PatternRule:
    letter: str
    strategy: Strategy
    template: str
    pattern: str
    regex: re.Pattern = field(init=False, repr=False, compare=False)
    pieces: tuple = field(init=False, repr=False, compare=False)
    packed_width: int | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.letter) != 1 or not ("A" <= self.letter <= "Z"):
            raise RegistryError(f"rule letter must be one uppercase ASCII letter: {self.letter!r}")
        if self.strategy is Strategy.VERBATIM:
            raise RegistryError("pattern rules store Delta or Raw")
        pieces = tuple(_parse_template(self.template))
        slots = [p for p in pieces if isinstance(p, Slot)]
        if not slots:
            raise RegistryError(f"template {self.template!r} has no slots")
        for a, b in zip(pieces, pieces[1:]):
            if isinstance(a, Slot) and isinstance(b, Slot) and a.width is None and b.width is None:
                raise RegistryError("adjacent variable slots are ambiguous")
        packed = all(s.width is not None for s in slots)
        if packed:
            width = sum(s.width for s in slots)
            if width > MAX_DIGITS:
                raise RegistryError(f"fixed template wider than {MAX_DIGITS} digits")
        else:
            width = None
            if any(s.width is not None and s.width > MAX_DIGITS for s in slots):
                raise RegistryError(f"slot wider than {MAX_DIGITS} digits")
        try:
            regex = re.compile(self.pattern.encode())
        except re.error as e:
            raise RegistryError(f"rule {self.letter}: bad pattern: {e}") from None
        object.__setattr__(self, "regex", regex)
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "packed_width", width)
        object.__setattr__(self, "_parse_re", self._build_parse_re())
        # one row per line; a line that does not fit yields empty groups
        object.__setattr__(self, "_lines_re", re.compile(
            rb"(?m)^(?:" + self._parse_re.pattern + rb")$|^[^\n]*$"))

    def _build_parse_re(self) -> re.Pattern:
        parts = []
        for p in self.pieces:
            if isinstance(p, bytes):
                parts.append(re.escape(p))
            elif p.width is not None:
                parts.append(b"([0-9]{%d})" % p.width)
            else:
                parts.append(b"(0|[1-9][0-9]{0,%d})" % (MAX_DIGITS - 1))
        return re.compile(b"".join(parts))

    @property
    def slots(self) -> list[Slot]:
        return [p for p in self.pieces if isinstance(p, Slot)]

    @property
    def values_per_token(self) -> int:
        return 1 if self.packed_width is not None else len(self.slots)

    def parse(self, raw: bytes) -> tuple[int, ...] | None:
        """Values stored for ``raw``, or None when it does not fit the template."""
        m = self._parse_re.fullmatch(raw)
        if m is None:
            return None
        groups = m.groups()
        if self.packed_width is not None:
            return (int(b"".join(groups)),)
        vals = tuple(int(g) for g in groups)
        for v, s in zip(vals, self.slots):
            if s.maximum is not None and v > s.maximum:
                return None
        return vals

    def parse_many(self, raws: list[bytes]) -> list[tuple[int, ...] | None]:
        """``parse`` over a list, done in bulk with numpy."""
        if not raws:
            return []
        joined = b"\n".join(raws)
        if joined.count(b"\n") != len(raws) - 1:
            return [self.parse(r) for r in raws]
        if self.packed_width is not None:
            return self._parse_packed(raws)
        rows = self._lines_re.findall(joined)
        if len(rows) != len(raws):
            return [self.parse(r) for r in raws]
        cells = np.array(rows, dtype="S%d" % MAX_DIGITS).reshape(len(raws), -1)
        ok = (cells != b"").all(axis=1)
        cells[~ok] = b"0"
        vals = cells.astype(np.int64)
        for col, s in enumerate(self.slots):
            if s.maximum is not None:
                ok &= vals[:, col] <= s.maximum
        return [tuple(v) if good else None for v, good in zip(vals.tolist(), ok.tolist())]

    def _parse_packed(self, raws: list[bytes]) -> list[tuple[int] | None]:
        width = sum(len(p) if isinstance(p, bytes) else p.width for p in self.pieces)
        lens = np.fromiter(map(len, raws), np.int64, len(raws))
        fits = lens == width
        picked = raws if fits.all() else [r for r, f in zip(raws, fits) if f]
        out: list = [None] * len(raws)
        if not picked:
            return out
        arr = np.frombuffer(b"".join(picked), np.uint8).reshape(-1, width)
        ok = np.ones(len(picked), dtype=bool)
        digit_cols = []
        col = 0
        for p in self.pieces:
            if isinstance(p, bytes):
                ok &= (arr[:, col:col + len(p)] == np.frombuffer(p, np.uint8)).all(axis=1)
                col += len(p)
            else:
                digit_cols.extend(range(col, col + p.width))
                col += p.width
        digits = arr[:, digit_cols].astype(np.int64) - 0x30
        ok &= ((digits >= 0) & (digits <= 9)).all(axis=1)
        pow10 = 10 ** np.arange(len(digit_cols) - 1, -1, -1, dtype=np.int64)
        vals = (digits @ pow10).tolist()
        where = np.flatnonzero(fits).tolist()
        for i, good, v in zip(where, ok.tolist(), vals):
            if good:
                out[i] = (v,)
        return out

    def render(self, values: tuple[int, ...] | list[int]) -> bytes:
        out = []
        if self.packed_width is not None:
            (v,) = values
            digits = b"%0*d" % (self.packed_width, v)
            pos = 0
            for p in self.pieces:
                if isinstance(p, bytes):
                    out.append(p)
                else:
                    out.append(digits[pos:pos + p.width])
                    pos += p.width
            return b"".join(out)
        it = iter(values)
        for p in self.pieces:
            if isinstance(p, bytes):
                out.append(p)
            elif p.width is not None:
                out.append(b"%0*d" % (p.width, next(it)))
            else:
                out.append(b"%d" % next(it))
        return b"".join(out)

    def render_many(self, values) -> list[bytes]:
        """Render a flat value stream, ``values_per_token`` values at a time."""
        k = self.values_per_token
        vals = np.asarray(values, dtype=np.int64)
        if vals.size % k:
            raise ValueError("value count is not a multiple of the rule arity")
        if vals.size and vals.min() < 0:
            raise ValueError("negative value for a template slot")
        if self.packed_width is not None:
            if vals.size and vals.max() >= 10 ** self.packed_width:
                raise ValueError(f"value too wide for template {self.template}")
        else:
            cols = vals.reshape(-1, k)
            for i, s in enumerate(self.slots):
                top = s.maximum if s.maximum is not None else 10 ** (s.width or MAX_DIGITS) - 1
                if cols.size and cols[:, i].max() > top:
                    raise ValueError(f"value out of range for slot {i} of {self.template}")
        vals = vals.tolist()
        if k == 1:
            return [self.render((v,)) for v in vals]
        return [self.render(vals[i:i + k]) for i in range(0, len(vals), k)]

    def canonical(self) -> str:
        return f"{self.letter}\t{self.strategy.name.capitalize()}\t{self.template}\t{self.pattern}"


class PatternRegistry:
    """Ordered, immutable list of pattern rules."""

    def __init__(self, rules: Iterable[PatternRule] = ()):
        self.rules: tuple[PatternRule, ...] = tuple(rules)
        letters = [r.letter for r in self.rules]
        if len(set(letters)) != len(letters):
            raise RegistryError("duplicate rule letters")
        self._by_letter = {r.letter: r for r in self.rules}
        text = "".join(r.canonical() + "\n" for r in self.rules)
        self.fingerprint: bytes = hashlib.blake2b(text.encode(), digest_size=16).digest()

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        return isinstance(other, PatternRegistry) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"PatternRegistry({[r.letter for r in self.rules]})"

    def get(self, letter: str) -> PatternRule | None:
        return self._by_letter.get(letter)

    @classmethod
    def parse(cls, text: str) -> "PatternRegistry":
        rules = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t", 3)
            if len(fields) != 4:
                raise RegistryError(f"line {lineno}: expected 4 tab-separated fields")
            letter, strategy, template, pattern = fields
            try:
                strat = Strategy.parse(strategy)
            except ValueError as e:
                raise RegistryError(f"line {lineno}: {e}") from None
            rules.append(PatternRule(letter.strip(), strat, template, pattern))
        return cls(rules)

    @classmethod
    def load(cls, path: str | Path) -> "PatternRegistry":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def default(cls) -> "PatternRegistry":
        return _DEFAULT

    def dumps(self) -> str:
        return "".join(r.canonical() + "\n" for r in self.rules)


_DEFAULT = PatternRegistry.parse(DEFAULT_REGISTRY_TEXT)
