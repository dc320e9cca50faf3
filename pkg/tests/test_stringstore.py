import pytest
from hypothesis import given, strategies as st

from numlog import stringstore as ss
from numlog.errors import CorruptContainer, IdOutOfRange

lines_st = st.lists(st.sampled_from([b"", b"a <T>", b"b", b"\xff", b"a <T>"]) | st.binary(max_size=6).map(
    lambda b: b.replace(b"\n", b"")), max_size=40)


@given(lines_st)
def test_round_trip(lines):
    dictionary, ids = ss.build(lines)
    assert len(dictionary) == len(set(lines))
    back = ss.restore(ss.load_dictionary(ss.dump_dictionary(dictionary)),
                      ss.load_index(ss.dump_index(ids)))
    assert back == lines


def test_first_seen_order():
    d, ids = ss.build([b"x", b"y", b"x", b"z"])
    assert d == [b"x", b"y", b"z"]
    assert ids == [0, 1, 0, 2]


def test_bad_id():
    with pytest.raises(IdOutOfRange):
        ss.restore([b"x"], [0, 1])


def test_bad_dictionary():
    with pytest.raises(CorruptContainer):
        ss.load_dictionary(b"\x83a\nb")
    with pytest.raises(CorruptContainer):
        ss.load_dictionary(b"")
