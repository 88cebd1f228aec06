import json

import numpy as np
import pytest

from numrad import AlgebraElement, ParseError, ShapeError, parse_element, serialize_element
from numrad.io import element_to_doc

N_DOC = b'{"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]}'


def eye_doc(n):
    data = [[1.0, 0.0] if i == j else [0.0, 0.0] for i in range(n) for j in range(n)]
    return {"rows": n, "cols": n, "data": data}


def test_parse_nilpotent():
    x = parse_element(N_DOC)
    np.testing.assert_array_equal(x.blocks[0], [[0, 1], [0, 0]])


def test_parse_direct_sum_identity():
    x = parse_element(json.dumps({"blocks": [eye_doc(2), eye_doc(3)]}).encode())
    assert x.shape == (2, 3)
    assert x.allclose(AlgebraElement.identity([2, 3]))


def test_non_square_is_shape_error():
    with pytest.raises(ShapeError):
        parse_element(b'{"rows":2,"cols":3,"data":[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}')
    with pytest.raises(ShapeError):
        parse_element(b'{"rows":2,"cols":2,"data":[[0,0]]}')


@pytest.mark.parametrize("text, where", [
    (b'{"rows":2,"cols":2,', "line 1"),
    (b'{"rows":1,"cols":1,"data":[[NaN,0]]}', "non-finite"),
    (b'{"rows":1,"cols":1,"data":[[Infinity,0]]}', "non-finite"),
    (b'{"rows":1,"cols":1,"data":[[1e999,0]]}', "data[0]"),
    (b'{"rows":1,"cols":1,"data":[["a",0]]}', "data[0]"),
    (b'{"rows":1,"cols":1,"data":[[1]]}', "data[0]"),
    (b'{"cols":1,"data":[[1,0]]}', "rows"),
    (b'{"blocks":[]}', "blocks"),
    (b'{"blocks":[{"rows":1,"cols":1,"data":[[1,0]]}, 3]}', "blocks[1]"),
    (b'\xff\xfe', "UTF-8"),
])
def test_parse_errors_locate_problem(text, where):
    with pytest.raises(ParseError, match=where.replace("[", r"\[").replace("]", r"\]")):
        parse_element(text)


def test_round_trip(rng):
    x = AlgebraElement([rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)),
                        rng.standard_normal((3, 3))])
    y = parse_element(serialize_element(x))
    assert x.digest() == y.digest()
    doc = json.loads(N_DOC)
    assert element_to_doc(parse_element(N_DOC)) == {
        "rows": 2, "cols": 2, "data": [[float(a), float(b)] for a, b in doc["data"]]}
