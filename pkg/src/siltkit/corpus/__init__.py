"""Bundled example algebras, loadable by short name."""

from __future__ import annotations

import importlib.resources

from ..specfiles import load_algebra, parse_algebra_text
from ..algebra import Algebra

NAMES = ("a2", "a3", "dualnumbers", "commsquare", "nakayama2")


def corpus_path(name: str):
    if name not in NAMES:
        raise KeyError(f"no bundled algebra named {name!r}; have {NAMES}")
    return importlib.resources.files(__package__) / f"{name}.alg"


def load(name: str) -> Algebra:
    text = corpus_path(name).read_text(encoding="utf-8")
    pres, field = parse_algebra_text(text)
    return Algebra(field, pres)
