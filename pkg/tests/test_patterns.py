import pytest

from numlog.errors import RegistryError
from numlog.patterns import PatternRegistry, PatternRule
from numlog.tokens import Strategy


def test_default_rules():
    reg = PatternRegistry.default()
    assert [r.letter for r in reg] == ["T", "I"]
    t, i = reg.get("T"), reg.get("I")
    assert t.parse(b"03:03:06") == (30306,)
    assert t.render((30306,)) == b"03:03:06"
    assert i.parse(b"202.133.98.6") == (202, 133, 98, 6)
    assert i.parse(b"256.1.1.1") is None
    assert i.parse(b"01.2.3.4") is None
    assert i.render((10, 0, 0, 1)) == b"10.0.0.1"


def test_ip_pattern_needs_clean_boundaries():
    i = PatternRegistry.default().get("I")
    assert i.regex.search(b"v1234.1.1.1") is None
    assert i.regex.search(b"x 10.0.0.1 y").group() == b"10.0.0.1"
    assert i.regex.search(b"1.2.3.45678") is None


@pytest.mark.parametrize("rule", ["T", "I"])
def test_parse_many_agrees_with_parse(rule):
    r = PatternRegistry.default().get(rule)
    raws = [b"03:03:06", b"1.2.3.4", b"255.255.255.255", b"256.0.0.1", b"", b"99:99:99",
            b"0.0.0.0", b"1.2.3", b"3:03:06", b"01.1.1.1", b"12:34:56"]
    assert r.parse_many(raws) == [r.parse(x) for x in raws]


def test_registry_text_round_trip(tmp_path):
    text = ("# comment\n"
            "D\tDelta\t####-##-##\t\\d{4}-\\d{2}-\\d{2}\n"
            "V\tRaw\tv{}.{}\tv\\d+\\.\\d+\n")
    reg = PatternRegistry.parse(text)
    p = tmp_path / "rules.tsv"
    p.write_text(reg.dumps())
    again = PatternRegistry.load(p)
    assert again == reg
    assert again.fingerprint != PatternRegistry.default().fingerprint
    assert reg.get("D").parse(b"2024-01-15") == (20240115,)
    assert reg.get("V").parse(b"v3.10") == (3, 10)
    assert reg.get("V").render((3, 10)) == b"v3.10"


@pytest.mark.parametrize("line", [
    "ab\tDelta\t##\t\\d\\d",
    "X\tVerbatim\t##\t\\d\\d",
    "X\tDelta\tabc\tabc",
    "X\tDelta\t{}{}\t\\d+",
    "X\tDelta\t#<#\t\\d<\\d",
    "X\tDelta\t1#\t1\\d",
    "X\tDelta\t################\t\\d{16}",
    "X\tDelta\t##\t(",
    "X\tSlow\t##\t\\d\\d",
    "X\tDelta",
])
def test_bad_rules(line):
    with pytest.raises(RegistryError):
        PatternRegistry.parse(line)


def test_duplicate_letters():
    with pytest.raises(RegistryError):
        PatternRegistry([PatternRule("T", Strategy.RAW, "##", r"\d\d")] * 2)
