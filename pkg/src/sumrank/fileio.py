"""JSON files for codes and chains.

Code file: {"field": {"p", "e", "modulus"}, "shape": [[m, n], ...],
"generators": [[block matrices], ...], "provenance": {...}}.  A chain file
replaces "generators" with "codes" (generator lists in increasing order of
minimum distance) and "distances".  Keys are written sorted.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .codes import Shape, SumRankCode
from .constructions import CodeChain
from .errors import FormatError
from .galois import FieldSpec


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _field_from(obj: Any) -> FieldSpec:
    if not isinstance(obj, dict) or not {"p", "e"} <= obj.keys():
        raise FormatError('"field" must be an object with "p", "e" and "modulus"')
    try:
        return FieldSpec.from_json(obj)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad field: {exc}") from None


def _shape_from(obj: Any) -> Shape:
    try:
        if not isinstance(obj, list) or any(len(b) != 2 for b in obj):
            raise TypeError("expected a list of [m, n] pairs")
        return Shape(tuple((int(m), int(n)) for m, n in obj)).check_standard()
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad shape: {exc}") from None


def _vectors_from(field: FieldSpec, shape: Shape, gens: Any) -> list[tuple[int, ...]]:
    if not isinstance(gens, list):
        raise FormatError('"generators" must be a list of codewords')
    out = []
    for g in gens:
        try:
            if not isinstance(g, list):
                raise TypeError("codeword must be a list of block matrices")
            v = shape.flatten(g)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad generator: {exc}") from None
        if any(not 0 <= x < field.q for x in v):
            raise FormatError(f"generator entries must be element codes of F_{field.q}")
        out.append(v)
    return out


def _generators(code: SumRankCode) -> list:
    return [[[list(r) for r in blk] for blk in w] for w in code.generators]


def code_to_json(code: SumRankCode, provenance: dict | None = None) -> dict:
    return {
        "field": code.field.to_json(),
        "shape": code.shape.to_json(),
        "generators": _generators(code),
        "provenance": provenance or {},
    }


def code_from_json(obj: Any) -> SumRankCode:
    if not isinstance(obj, dict) or "generators" not in obj:
        raise FormatError('a code file needs "field", "shape" and "generators"')
    field = _field_from(obj.get("field"))
    shape = _shape_from(obj.get("shape"))
    return SumRankCode(field, shape, _vectors_from(field, shape, obj["generators"]))


def chain_to_json(chain: CodeChain) -> dict:
    return {
        "field": chain.field.to_json(),
        "shape": chain.shape.to_json(),
        "distances": list(chain.distances),
        "codes": [_generators(c) for c in chain.codes],
        "provenance": chain.provenance,
    }


def chain_from_json(obj: Any) -> CodeChain:
    if not isinstance(obj, dict) or "codes" not in obj:
        raise FormatError('a chain file needs "field", "shape" and "codes"')
    field = _field_from(obj.get("field"))
    shape = _shape_from(obj.get("shape"))
    if not isinstance(obj["codes"], list) or not obj["codes"]:
        raise FormatError('"codes" must be a non-empty list')
    codes = tuple(SumRankCode(field, shape, _vectors_from(field, shape, g)) for g in obj["codes"])
    dists = obj.get("distances")
    if dists is None:
        # without explicit distances the last member is taken to have distance n
        n = shape.n
        dists = list(range(n - len(codes) + 1, n + 1))
    try:
        return CodeChain(field, shape, tuple(int(d) for d in dists), codes,
                         obj.get("provenance") or {})
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad chain: {exc}") from None


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def is_chain(obj: Any) -> bool:
    return isinstance(obj, dict) and "codes" in obj


def load_code(path: str | Path) -> SumRankCode:
    return code_from_json(read_json(path))


def load_chain(path: str | Path) -> CodeChain:
    return chain_from_json(read_json(path))


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")
