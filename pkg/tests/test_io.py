import json
from fractions import Fraction

import pytest

from dcabp import io
from dcabp.abp import Abp, ScalarAbp
from dcabp.algebra import QQ, LinearForm, prime_field
from dcabp.errors import ParseError
from dcabp.instgen import power_sum_abp, random_hom_abp
from oracles import lf


def test_pencil_round_trip(xyz_pencil):
    text = io.dumps(xyz_pencil)
    data = json.loads(text)
    assert list(data) == ["s", "nvars", "field", "entries"]
    assert data["field"] == {"kind": "rational"}
    assert data["entries"][0][1] == {"const": "0", "coeffs": {"0": "1"}}
    assert io.loads(text) == xyz_pencil


def test_abp_round_trip():
    a = random_hom_abp(3, 4, 2, seed=5)
    data = json.loads(io.dumps(a))
    assert list(data) == ["nvars", "field", "widths", "b", "c", "mats"]
    b = io.loads(io.dumps(a))
    assert b.widths == a.widths and b.to_poly() == a.to_poly()


def test_rational_and_prime_scalars():
    f = prime_field()
    a = Abp([LinearForm(1, QQ, Fraction(-3, 4), {0: Fraction(5, 2)})], [], [lf(1, 1)], 1, QQ)
    data = json.loads(io.dumps(a))
    assert data["b"][0] == {"const": "-3/4", "coeffs": {"0": "5/2"}}
    g = a.to_field(f)
    data = json.loads(io.dumps(g))
    assert data["field"] == {"kind": "prime", "p": str(2**61 - 1)}
    assert io.loads(io.dumps(g)).to_poly() == g.to_poly()


def test_scalar_abp():
    s = ScalarAbp(Fraction(1, 3), 2, QQ)
    assert io.loads(io.dumps(s)) == s


def test_byte_identical():
    assert io.dumps(power_sum_abp(3, 3)) == io.dumps(power_sum_abp(3, 3))


@pytest.mark.parametrize("text", [
    "{",
    "[]",
    '{"s": 0, "nvars": 1, "field": {"kind": "rational"}, "entries": []}',
    '{"s": 1, "nvars": 1, "field": {"kind": "prime", "p": "7"}, "entries": [[{"const": "0", "coeffs": {}}]]}',
    '{"s": 1, "nvars": 1, "field": {"kind": "complex"}, "entries": [[{"const": "0", "coeffs": {}}]]}',
    '{"s": 2, "nvars": 1, "field": {"kind": "rational"}, "entries": [[{"const": "0", "coeffs": {}}]]}',
    '{"s": 1, "nvars": 1, "field": {"kind": "rational"}, "entries": [[{"const": "x", "coeffs": {}}]]}',
    '{"s": 1, "nvars": 1, "field": {"kind": "rational"}, "entries": [[{"const": "0", "coeffs": {"5": "1"}}]]}',
    '{"nvars": 1, "field": {"kind": "rational"}, "widths": [2], "b": [{"const": "1", "coeffs": {}}],'
    ' "c": [{"const": "1", "coeffs": {}}], "mats": []}',
    '{"nvars": 1, "field": {"kind": "rational"}, "widths": [1], "b": [{"const": "1", "coeffs": {}}],'
    ' "c": [{"const": "1", "coeffs": {}}], "mats": [[]]}',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        io.loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        io.load(str(tmp_path / "nope.json"))
