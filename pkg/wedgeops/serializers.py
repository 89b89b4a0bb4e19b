"""JSON formats for series and matrix symbols.

A series is ``{"valdim": m, "kmin": k, "coeffs": [[[re, im], ...m], ...]}`` with one row
per frequency from ``kmin`` up. A symbol is ``{"rows": r, "cols": c, "kmin": k,
"coeffs": [[[[re, im], ...c], ...r], ...]}``. Floats are written with Python's shortest
round-trip representation, so finite doubles survive a dump/load cycle bit for bit.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .exceptions import SerializationError
from .hardy import MatSymbol, VecTrigPoly

Pair = tuple[float, float]


def _pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def _complex(pairs) -> np.ndarray:
    array = np.asarray(pairs, dtype=float)
    return array[..., 0] + 1j * array[..., 1]


class SeriesSerializer(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    valdim: int = Field(ge=1)
    kmin: int
    coeffs: list[list[Pair]] = Field(min_length=1)

    @model_validator(mode="after")
    def check_rows(self):
        for k, row in enumerate(self.coeffs, start=self.kmin):
            if len(row) != self.valdim:
                raise ValueError(f"coefficient {k} has {len(row)} entries, expected {self.valdim}")
        return self

    @classmethod
    def from_series(cls, f: VecTrigPoly) -> SeriesSerializer:
        return cls(valdim=f.valdim, kmin=f.kmin, coeffs=[_pairs(row) for row in f.coeffs])

    def to_series(self) -> VecTrigPoly:
        return VecTrigPoly(self.kmin, _complex(self.coeffs).reshape(-1, self.valdim))


class SymbolSerializer(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    kmin: int
    coeffs: list[list[list[Pair]]] = Field(min_length=1)

    @model_validator(mode="after")
    def check_blocks(self):
        for k, block in enumerate(self.coeffs, start=self.kmin):
            if len(block) != self.rows or any(len(row) != self.cols for row in block):
                raise ValueError(f"coefficient {k} is not a {self.rows}x{self.cols} matrix")
        return self

    @classmethod
    def from_symbol(cls, g: MatSymbol) -> SymbolSerializer:
        return cls(
            rows=g.rows,
            cols=g.cols,
            kmin=g.kmin,
            coeffs=[[_pairs(row) for row in block] for block in g.coeffs],
        )

    def to_symbol(self) -> MatSymbol:
        return MatSymbol(self.kmin, _complex(self.coeffs).reshape(-1, self.rows, self.cols))


def _load(serializer, text: str):
    try:
        return serializer.model_validate(json.loads(text))
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    except ValidationError as exc:
        raise SerializationError(str(exc)) from exc


def series_to_dict(f: VecTrigPoly) -> dict:
    return SeriesSerializer.from_series(f).model_dump()


def dump_series(f: VecTrigPoly) -> str:
    return json.dumps(series_to_dict(f))


def load_series(text: str) -> VecTrigPoly:
    return _load(SeriesSerializer, text).to_series()


def read_series(path) -> VecTrigPoly:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SerializationError(f"cannot read {path}: {exc}") from exc
    return load_series(text)


def dump_symbol(g: MatSymbol) -> str:
    return json.dumps(SymbolSerializer.from_symbol(g).model_dump())


def load_symbol(text: str) -> MatSymbol:
    return _load(SymbolSerializer, text).to_symbol()
