from fractions import Fraction

import pytest

from src.utils.canonical import canonical_bytes, canonical_digest


def test_canonical_serialization():
    o = {"b": 2, "a": 1}
    assert canonical_bytes(o) == b'{"a":1,"b":2}'


def test_fractions_and_sets():
    assert canonical_bytes(Fraction(4, 2)) == b"2"
    assert canonical_bytes(Fraction(-1, 2)) == b'{"den":2,"num":-1}'
    assert canonical_bytes({3, 1, 2}) == b"[1,2,3]"
    assert canonical_bytes((1, "x")) == b'[1,"x"]'


def test_digest_ignores_key_order():
    a = {"suite": "euler", "records": [1, 2]}
    b = {"records": [1, 2], "suite": "euler"}
    assert canonical_digest(a) == canonical_digest(b)
    assert len(canonical_digest(a)) == 64


def test_unserializable_raises():
    with pytest.raises(TypeError):
        canonical_bytes(object())
