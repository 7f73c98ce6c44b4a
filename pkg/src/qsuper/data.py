"""Locating and loading the shipped presentation and matrix files."""

from __future__ import annotations

import os
import re
from functools import lru_cache
from pathlib import Path

from .engine import load_presentation
from .qfield import Q, Scalar

ENV_VAR = "QSUPER_DATA"


def data_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path(__file__).with_name("data")


def default_symbols(r=None, s=None) -> dict:
    r = Q ** 2 if r is None else r
    s = Q ** 2 if s is None else s
    return {"q": Q, "r": r, "s": s}


@lru_cache(maxsize=None)
def presentation(name: str):
    """Shipped presentation ``name`` over Q(q), with r = s = q^2 where they occur."""
    return load_presentation(data_dir() / ("%s.pres" % name), symbols=default_symbols())


def presentation_with(name: str, symbols: dict, one):
    """Uncached load with custom scalar symbols and coefficient ring."""
    return load_presentation(data_dir() / ("%s.pres" % name), symbols=symbols, one=one)


@lru_cache(maxsize=None)
def matrix_families() -> dict:
    """{family: {generator: 3x3 list of Scalar}} with r = s = q^2 substituted."""
    return parse_matrices((data_dir() / "matrices.txt").read_text(encoding="utf-8"), default_symbols())


def raw_matrix_families() -> dict:
    """The matrix file as text entries, untouched."""
    return _raw_sections(data_dir() / "matrices.txt")


def parse_matrices(text: str, symbols: dict) -> dict:
    from .expr import evaluate_scalar
    out: dict = {}
    family = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            family = m.group(1)
            out[family] = {}
            continue
        if family is None or "=" not in line:
            raise ValueError("matrices line %d: expected [family] or name = rows" % lineno)
        name, _, body = line.partition("=")
        rows = [[evaluate_scalar(e.strip(), symbols, Scalar.const(1)) for e in row.split(",")]
                for row in body.split(";")]
        out[family][name.strip()] = rows
    return out


@lru_cache(maxsize=None)
def function_matrices() -> dict:
    """{family: {generator: 3x3 list of F elements}} from the printed function-valued matrices."""
    from .expr import evaluate_in, parse
    F = presentation("F")
    out: dict = {}
    for fam, mats in _raw_sections(data_dir() / "mc_matrices.txt").items():
        out[fam] = {g: [[evaluate_in(parse(e), F) for e in row] for row in rows] for g, rows in mats.items()}
    return out


def _raw_sections(path) -> dict:
    out: dict = {}
    family = None
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            family = m.group(1)
            out[family] = {}
            continue
        name, _, body = line.partition("=")
        out[family][name.strip()] = [[e.strip() for e in row.split(",")] for row in body.split(";")]
    return out
