"""Canonical JSON encoding of double complexes and morphisms.

A complex is an object with ``"dims"`` (``[[p, q, dim], ...]``), ``"d1"`` and
``"d2"`` (``[[p, q, matrix], ...]`` keyed by source bidegree), optional
``"sigma"`` in the same shape, and optional ``"labels"``
(``[[p, q, [name, ...]], ...]``). Matrices are row-major arrays of scalar
strings such as ``"1/2-3i"``. Blocks that are absent are zero.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import IO, Union

from .constructions import Morphism
from .double_complex import DoubleComplex
from .errors import FormatError
from .linalg import Matrix, Scalar

PathLike = Union[str, os.PathLike]


def _matrix_to_json(m: Matrix):
    return [[str(x) for x in row] for row in m.tolist()]


def _blocks_to_json(blocks):
    return [[p, q, _matrix_to_json(m)] for (p, q), m in sorted(blocks.items())]


def complex_to_json(k: DoubleComplex) -> dict:
    obj = {
        "dims": [[p, q, n] for (p, q), n in sorted(k.dims.items())],
        "d1": _blocks_to_json(k.d1),
        "d2": _blocks_to_json(k.d2),
    }
    if k.sigma is not None:
        obj["sigma"] = _blocks_to_json(k.sigma)
    if k.labels is not None:
        obj["labels"] = [[p, q, list(names)] for (p, q), names in sorted(k.labels.items())]
    return obj


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


def _scalar(x):
    if isinstance(x, str):
        return Scalar.parse(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return Scalar(x)
    raise FormatError(f"matrix entry must be a scalar string, got {x!r}")


def _entries(obj, key, value_fn):
    raw = obj.get(key, [])
    if not isinstance(raw, list):
        raise FormatError(f'"{key}" must be an array')
    out = {}
    for item in raw:
        if not isinstance(item, list) or len(item) != 3:
            raise FormatError(f'"{key}" entries must be [p, q, value] triples')
        p, q = _int(item[0], "p"), _int(item[1], "q")
        if (p, q) in out:
            raise FormatError(f'duplicate "{key}" entry at {(p, q)}')
        out[(p, q)] = value_fn(item[2])
    return out


def _matrix(rows):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise FormatError("matrix must be an array of row arrays")
    return [[_scalar(x) for x in r] for r in rows]


def _names(x):
    if not isinstance(x, list) or any(not isinstance(s, str) for s in x):
        raise FormatError("labels must be arrays of strings")
    return x


def complex_from_json(obj) -> DoubleComplex:
    if not isinstance(obj, dict):
        raise FormatError("double complex must be a JSON object")
    unknown = set(obj) - {"dims", "d1", "d2", "sigma", "labels"}
    if unknown:
        raise FormatError(f"unknown keys {sorted(unknown)}")
    if "dims" not in obj:
        raise FormatError('missing "dims"')
    dims = _entries(obj, "dims", lambda n: _int(n, "dim"))
    sigma = _entries(obj, "sigma", _matrix) if "sigma" in obj else None
    labels = _entries(obj, "labels", _names) if "labels" in obj else None
    return DoubleComplex(dims, _entries(obj, "d1", _matrix), _entries(obj, "d2", _matrix),
                         sigma, labels)


def dumps(k: DoubleComplex) -> str:
    """Canonical text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(complex_to_json(k), sort_keys=True, ensure_ascii=False,
                      separators=(", ", ": ")) + "\n"


def _parse_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"JSON parse error: {e.msg}", e.lineno, e.colno) from None


def loads(text: str, validate: bool = True) -> DoubleComplex:
    k = complex_from_json(_parse_text(text))
    if validate:
        k.require_valid()
    return k


def save(k: DoubleComplex, destination: Union[PathLike, IO[str]]) -> None:
    text = dumps(k)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def load(source: Union[PathLike, IO[str]], validate: bool = True) -> DoubleComplex:
    """Read a complex; by default it is validated and :class:`ValidationError`
    reports the failed axioms."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    return loads(text, validate)


# --- morphisms ---------------------------------------------------------------

def morphism_to_json(f: Morphism) -> dict:
    return {"source": complex_to_json(f.source), "target": complex_to_json(f.target),
            "blocks": _blocks_to_json(f.blocks)}


def _complex_ref(x, base_dir):
    if isinstance(x, str):
        return load(Path(base_dir) / x)
    return loads(json.dumps(x))


def morphism_from_json(obj, base_dir: PathLike = ".") -> Morphism:
    """Inline complexes or file references (relative to ``base_dir``) for the endpoints."""
    if not isinstance(obj, dict) or not {"source", "target"} <= set(obj):
        raise FormatError('morphism needs "source" and "target"')
    return Morphism(_complex_ref(obj["source"], base_dir), _complex_ref(obj["target"], base_dir),
                    _entries(obj, "blocks", _matrix))


def load_ses(source: PathLike):
    """Read ``[f, g]`` morphism objects describing ``A → B → C``."""
    path = Path(source)
    obj = _parse_text(path.read_text(encoding="utf-8"))
    if not isinstance(obj, list) or len(obj) != 2:
        raise FormatError("short exact sequence must be an array of two morphisms")
    f, g = (morphism_from_json(o, path.parent) for o in obj)
    return f, g


def ses_dumps(f: Morphism, g: Morphism) -> str:
    return json.dumps([morphism_to_json(f), morphism_to_json(g)], sort_keys=True,
                      ensure_ascii=False, separators=(", ", ": ")) + "\n"
