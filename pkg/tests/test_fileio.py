from __future__ import annotations

import json

import pytest

from sumrank.codes import Shape, SumRankCode
from sumrank.constructions import lrs_chain
from sumrank.errors import FormatError
from sumrank.fileio import (
    chain_from_json,
    chain_to_json,
    code_from_json,
    code_to_json,
    dumps,
    load_code,
    write_json,
)
from sumrank.galois import fq_make


def test_code_round_trip(tmp_path):
    f = fq_make(2, 2)
    code = SumRankCode(f, Shape.parse("2x2,1x1"), [(1, 2, 3, 0, 1), (0, 0, 1, 1, 3)])
    obj = code_to_json(code, {"family": "test"})
    assert obj["field"] == {"p": 2, "e": 2, "modulus": [1, 1, 1]}
    assert obj["shape"] == [[2, 2], [1, 1]]
    # generators are written in reduced form, one nested block list per basis row
    assert [code.shape.flatten(g) for g in obj["generators"]] == [tuple(v) for v in code.basis]
    assert obj["generators"][0][1] == [[3]]
    path = tmp_path / "c.json"
    write_json(path, obj)
    assert load_code(path) == code
    assert path.read_text() == dumps(obj) + "\n"


def test_chain_round_trip():
    ch = lrs_chain(3, 2, 2, (2, 2))
    back = chain_from_json(json.loads(dumps(chain_to_json(ch))))
    assert back.codes == ch.codes and back.distances == ch.distances
    obj = chain_to_json(ch)
    del obj["distances"]
    assert chain_from_json(obj).distances == (1, 2, 3, 4)


@pytest.mark.parametrize("obj", [
    [],
    {"field": {"p": 2, "e": 1}, "shape": [[2, 2]]},
    {"field": {"p": 4, "e": 1}, "shape": [[1, 1]], "generators": []},
    {"field": {"p": 2}, "shape": [[1, 1]], "generators": []},
    {"field": {"p": 2, "e": 1}, "shape": [[1, 2]], "generators": []},
    {"field": {"p": 2, "e": 1}, "shape": [[2]], "generators": []},
    {"field": {"p": 2, "e": 1}, "shape": [[1, 1]], "generators": [[[[2]]]]},
    {"field": {"p": 2, "e": 1}, "shape": [[1, 1]], "generators": [[[[1, 0]]]]},
    {"field": {"p": 2, "e": 1}, "shape": [[1, 1]], "generators": [1]},
])
def test_bad_code_files(obj):
    with pytest.raises(FormatError):
        code_from_json(obj)


def test_bad_chain_files():
    with pytest.raises(FormatError):
        chain_from_json({"field": {"p": 2, "e": 1}, "shape": [[1, 1]], "codes": []})
    with pytest.raises(FormatError):
        chain_from_json({"field": {"p": 2, "e": 1}, "shape": [[1, 1]], "codes": [[]],
                         "distances": [1, 2]})


def test_invalid_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{")
    with pytest.raises(FormatError):
        load_code(p)
