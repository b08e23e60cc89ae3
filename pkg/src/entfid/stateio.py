"""Text serialization of states, decompositions and ensembles.

Canonical format, UTF-8 with LF line endings:

    dims: 2 2
    kind: density
    1+0j 0+0j 0+0j 0+0j
    ...

Line 1 lists the party dimensions, line 2 the kind (``density``, ``pure``,
``decomposition`` or ``ensemble``), then the payload: one matrix row per
line for density matrices (row-major), a single amplitude row for pure
states. Decompositions and ensembles add a ``weights:`` line followed by
one state per line; ensemble lines separate party factors with ``|``.
Floats are written with repr-exact precision, so write/read round-trips
bit for bit.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .states import (
    Decomposition,
    DensityMatrix,
    ProductVector,
    PureState,
    SeparableEnsemble,
    StateValidationError,
)


class StateFormatError(ValueError):
    """The file is structurally malformed (before any state validation)."""


def _format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _format_row(row: np.ndarray) -> str:
    return " ".join(_format_complex(z) for z in row)


def _format_floats(values) -> str:
    return " ".join(f"{float(x):.17g}" for x in values)


def _parse_complex(token: str, where: str) -> complex:
    try:
        return complex(token)
    except ValueError:
        raise StateFormatError(f"{where}: {token!r} is not a complex number") from None


def _parse_row(line: str, expected: int, where: str) -> np.ndarray:
    tokens = line.split()
    if len(tokens) != expected:
        raise StateFormatError(f"{where}: expected {expected} entries, found {len(tokens)}")
    return np.array([_parse_complex(t, where) for t in tokens])


def _split_lines(text: str) -> list[str]:
    lines = [ln.rstrip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    return lines


def _parse_header(lines: list[str]) -> tuple[tuple[int, ...], str]:
    if len(lines) < 2:
        raise StateFormatError("file must start with a dims: line and a kind: line")
    if not lines[0].startswith("dims:"):
        raise StateFormatError(f"line 1 must start with 'dims:', got {lines[0]!r}")
    try:
        dims = tuple(int(t) for t in lines[0][len("dims:"):].split())
    except ValueError:
        raise StateFormatError(f"line 1: cannot parse dimensions from {lines[0]!r}") from None
    if not dims:
        raise StateFormatError("line 1: no party dimensions given")
    if not lines[1].startswith("kind:"):
        raise StateFormatError(f"line 2 must start with 'kind:', got {lines[1]!r}")
    kind = lines[1][len("kind:"):].strip()
    return dims, kind


def dumps_state(state: DensityMatrix | PureState) -> str:
    dims = " ".join(str(d) for d in state.dims)
    if isinstance(state, DensityMatrix):
        rows = "\n".join(_format_row(r) for r in state.matrix)
        return f"dims: {dims}\nkind: density\n{rows}\n"
    if isinstance(state, PureState):
        return f"dims: {dims}\nkind: pure\n{_format_row(state.amplitudes)}\n"
    raise TypeError(f"cannot serialize {type(state).__name__}")


def loads_state(text: str) -> DensityMatrix | PureState:
    lines = _split_lines(text)
    dims, kind = _parse_header(lines)
    d = int(np.prod(dims))
    body = lines[2:]
    if kind == "density":
        if len(body) != d:
            raise StateFormatError(f"density matrix needs {d} rows, found {len(body)}")
        mat = np.array([_parse_row(ln, d, f"row {i + 1}") for i, ln in enumerate(body)])
        return DensityMatrix(dims, mat)
    if kind == "pure":
        if len(body) != 1:
            raise StateFormatError(f"pure state needs 1 amplitude row, found {len(body)}")
        return PureState(dims, _parse_row(body[0], d, "amplitude row"))
    raise StateFormatError(f"unknown kind {kind!r}")


def dumps_decomposition(dec: Decomposition) -> str:
    dims = " ".join(str(d) for d in dec.dims)
    rows = "\n".join(_format_row(s.amplitudes) for s in dec.states)
    return f"dims: {dims}\nkind: decomposition\nweights: {_format_floats(dec.weights)}\n{rows}\n"


def loads_decomposition(text: str) -> Decomposition:
    lines = _split_lines(text)
    dims, kind = _parse_header(lines)
    if kind != "decomposition":
        raise StateFormatError(f"expected kind 'decomposition', got {kind!r}")
    if len(lines) < 3 or not lines[2].startswith("weights:"):
        raise StateFormatError("line 3 must start with 'weights:'")
    weights = [float(t) for t in lines[2][len("weights:"):].split()]
    body = lines[3:]
    if len(body) != len(weights):
        raise StateFormatError(f"{len(weights)} weights but {len(body)} state rows")
    d = int(np.prod(dims))
    states = tuple(
        PureState(dims, _parse_row(ln, d, f"state {i + 1}")) for i, ln in enumerate(body)
    )
    return Decomposition(np.array(weights), states)


def dumps_ensemble(ens: SeparableEnsemble) -> str:
    dims = " ".join(str(d) for d in ens.dims)
    rows = "\n".join(
        " | ".join(_format_row(f) for f in pv.factors) for pv in ens.vectors
    )
    return f"dims: {dims}\nkind: ensemble\nweights: {_format_floats(ens.weights)}\n{rows}\n"


def loads_ensemble(text: str) -> SeparableEnsemble:
    lines = _split_lines(text)
    dims, kind = _parse_header(lines)
    if kind != "ensemble":
        raise StateFormatError(f"expected kind 'ensemble', got {kind!r}")
    if len(lines) < 3 or not lines[2].startswith("weights:"):
        raise StateFormatError("line 3 must start with 'weights:'")
    weights = [float(t) for t in lines[2][len("weights:"):].split()]
    body = lines[3:]
    if len(body) != len(weights):
        raise StateFormatError(f"{len(weights)} weights but {len(body)} product rows")
    vectors = []
    for i, ln in enumerate(body):
        parts = ln.split("|")
        if len(parts) != len(dims):
            raise StateFormatError(
                f"product {i + 1}: expected {len(dims)} party factors, found {len(parts)}"
            )
        vectors.append(
            ProductVector(tuple(
                _parse_row(part, dims[j], f"product {i + 1} factor {j + 1}")
                for j, part in enumerate(parts)
            ))
        )
    return SeparableEnsemble(np.array(weights), tuple(vectors))


def dumps(obj) -> str:
    """Serialize any of the four state kinds, dispatching on type."""
    if isinstance(obj, (DensityMatrix, PureState)):
        return dumps_state(obj)
    if isinstance(obj, Decomposition):
        return dumps_decomposition(obj)
    if isinstance(obj, SeparableEnsemble):
        return dumps_ensemble(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str):
    """Parse any of the four state kinds, dispatching on the kind line."""
    lines = _split_lines(text)
    _, kind = _parse_header(lines)
    if kind in ("density", "pure"):
        return loads_state(text)
    if kind == "decomposition":
        return loads_decomposition(text)
    if kind == "ensemble":
        return loads_ensemble(text)
    raise StateFormatError(f"unknown kind {kind!r}")


def read_state(path: str | Path) -> DensityMatrix | PureState:
    return loads_state(Path(path).read_text(encoding="utf-8"))


def write_state(state, path: str | Path) -> None:
    Path(path).write_text(dumps(state), encoding="utf-8", newline="\n")


__all__ = [
    "StateFormatError",
    "StateValidationError",
    "dumps_state",
    "loads_state",
    "dumps_decomposition",
    "loads_decomposition",
    "dumps_ensemble",
    "loads_ensemble",
    "dumps",
    "loads",
    "read_state",
    "write_state",
]
