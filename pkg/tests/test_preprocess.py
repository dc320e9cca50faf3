import json
import re

import pytest

from numlog import Config, preprocess, preprocess_invert
from numlog.corpus import APACHE_SAMPLE, generate
from numlog.errors import CorruptContainer, FingerprintMismatch
from numlog.patterns import PatternRegistry

CFG = Config(threads=1)


@pytest.mark.parametrize("data", [APACHE_SAMPLE, APACHE_SAMPLE.rstrip(b"\n"), b"", b"\n", generate("Mac", 300)])
def test_invert(tmp_path, data):
    preprocess(data, tmp_path, CFG)
    assert preprocess_invert(tmp_path, CFG) == data


def test_apache_skeleton(tmp_path):
    preprocess(APACHE_SAMPLE, tmp_path, CFG)
    skeleton = (tmp_path / "skeleton.log").read_bytes()
    assert skeleton.count(b"\n") == APACHE_SAMPLE.count(b"\n")
    assert b"<T>" in skeleton and b"<I>" in skeleton and b"<dd>" in skeleton
    assert not re.search(rb"(?<![\x1b0-9A-Za-z])[0-9]+(?![0-9A-Za-z])", skeleton)
    names = {p.name for p in tmp_path.iterdir()}
    assert {"tag_upper_T.bin", "tag_upper_I.bin", "tag_star.bin", "groups.json"} <= names


def test_digit_free_input(tmp_path):
    data = b"just words\nand <brackets>\n"
    written = preprocess(data, tmp_path, CFG)
    assert (tmp_path / "skeleton.log").read_bytes() == data
    assert not [p for p in written if p.suffix == ".bin"]
    assert json.loads((tmp_path / "groups.json").read_text())["groups"] == {}


def test_missing_values_underflow(tmp_path):
    preprocess(b"a 1234\nb 2345\n", tmp_path, CFG)
    (tmp_path / "tag_lower_db.bin").write_bytes(b"\x80")  # one value instead of two
    with pytest.raises(CorruptContainer):
        preprocess_invert(tmp_path, CFG)


def test_registry_must_match(tmp_path):
    preprocess(b"t 01:02:03\n", tmp_path, CFG)
    with pytest.raises(FingerprintMismatch):
        preprocess_invert(tmp_path, Config(registry=PatternRegistry.parse("")))
