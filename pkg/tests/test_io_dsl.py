import json

import numpy as np
import pytest

from qfcalc.dsl import parse_function
from qfcalc.errors import DSLError, ParseError, SliceViolation
from qfcalc.fixtures import random_qmatrix
from qfcalc.io import dumps, dumps_matrix, format_float, matrix_from_obj, read_matrix, read_vector, write_matrix, write_vector
from qfcalc.qspace import QVector
from qfcalc.quaternion import I, J, K, ONE, Frame, Quaternion


def test_format_float():
    assert format_float(1.0) == "1"
    assert format_float(-0.0) == "0"
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(float("nan")) == "null"


def test_matrix_round_trip_is_bit_exact(tmp_path, rng):
    a = random_qmatrix(4, rng) * 1e-3
    path = tmp_path / "a.json"
    write_matrix(path, a)
    b = read_matrix(path)
    assert np.array_equal(a.array, b.array)
    assert dumps_matrix(b) == path.read_text()


def test_nested_entries_accepted():
    obj = {"n": 2, "entries": [[[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 1, 0], 2]]}
    a = matrix_from_obj(obj)
    assert a[0, 1] == I and a[1, 0] == J and a[1, 1] == Quaternion(2)


@pytest.mark.parametrize(
    "obj",
    [
        {"n": 2, "entries": [[1, 0, 0, 0]]},
        {"entries": []},
        {"n": -1, "entries": []},
        {"n": 1, "entries": [[1, 0, 0]]},
        {"n": 1, "entries": [["a", 0, 0, 0]]},
        [1, 2],
    ],
)
def test_malformed_matrices(obj):
    with pytest.raises(ParseError):
        matrix_from_obj(obj)


def test_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        read_matrix(p)
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "missing.json")


def test_vector_files(tmp_path):
    v = QVector([ONE, K * 0.25])
    write_vector(tmp_path / "v.json", v)
    assert read_vector(tmp_path / "v.json").allclose(v, 0.0)


def test_dumps_is_valid_json():
    text = dumps({"a": [1.5, -0.0], "b": {"c": "x", "d": None, "e": True}, "f": [[1, 2], [3, 4]]})
    assert json.loads(text) == {"a": [1.5, 0], "b": {"c": "x", "d": None, "e": True}, "f": [[1, 2], [3, 4]]}


def test_dsl_builtins():
    q = Quaternion(0.5, 0.3, 0, 0)
    assert parse_function("id")(q) == q
    assert parse_function(" exp ")(Quaternion()).is_close(ONE)
    assert parse_function("conj")(q) == q.conj()
    assert parse_function("re")(q) == Quaternion(0.5)
    assert parse_function("im")(q).is_close(Quaternion(0.3))
    assert parse_function("sqrt")(Quaternion(-1)).is_close(I)
    assert parse_function("pow:3")(I).is_close(-I)
    assert parse_function("const:[1,2,3,4]")(I) == Quaternion(1, 2, 3, 4)
    assert parse_function("indicator:0,1,0,1")(q) == ONE
    assert parse_function("eg1")(I).is_close(I + 1)
    p = parse_function("poly:[1, [0,2,0,0], 3]")
    assert p(I).is_close(Quaternion(-4))
    assert p(Quaternion(2)).is_close(Quaternion(1 + 12) + I * 4)
    assert parse_function("poly:[0,1]").real_coeffs == (0.0, 1.0)


def test_dsl_respects_frame():
    fr = Frame(J, K)
    assert parse_function("sqrt", fr)(Quaternion(-1)).is_close(J)
    parse_function("poly:[[0,0,1,0]]", fr)
    with pytest.raises(SliceViolation):
        parse_function("poly:[[0,1,0,0]]", fr)


@pytest.mark.parametrize(
    "text",
    ["", "foo", "exp:1", "poly:", "poly:[", "poly:[]", "poly:[[1,2]]", "pow:x", "pow:-1", "indicator:1,2", "indicator:a,b,c,d", "const:[1,2]"],
)
def test_dsl_errors(text):
    with pytest.raises(DSLError):
        parse_function(text)


def test_dsl_slice_violation():
    with pytest.raises(SliceViolation):
        parse_function("poly:[0, [0,0,1,0]]")
