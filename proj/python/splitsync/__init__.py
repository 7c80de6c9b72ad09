"""Directing words of complete nondeterministic automata.

Automata use the text format of the command-line tool; states are 1-based.
"""

import json
from pathlib import Path

from ._core import (
    Automaton,
    BudgetExceeded,
    CatalogError,
    Error,
    InvalidArgument,
    ParseError,
    cerny,
    cerny_cnfa,
    full_split,
    inverse_split,
    parse,
    run_cli,
    symbol_graph,
)
from . import _core

__all__ = [
    "Automaton",
    "BudgetExceeded",
    "CatalogError",
    "Error",
    "InvalidArgument",
    "ParseError",
    "catalog",
    "census",
    "cerny",
    "cerny_cnfa",
    "classify",
    "d3",
    "full_split",
    "inverse_split",
    "parse",
    "run_cli",
    "symbol_graph",
    "verify",
]

# Wheels carry the catalog next to the module; editable and in-tree builds
# fall back to the directory compiled into the library.
_PACKAGED = Path(__file__).with_name("catalog")


def _catalog_dir(dir):
    if dir is not None:
        return str(dir)
    if _PACKAGED.is_dir():
        return str(_PACKAGED)
    return _core.default_catalog_dir()


def catalog(name, n=None, dir=None):
    return _core.catalog(name, n, _catalog_dir(dir))


def d3(automaton, engine="implicit"):
    """Shortest D3-directing word: length, witness (symbol names), sync state."""
    return json.loads(_core._d3(automaton, engine))


def verify(automaton, word):
    """Checks a word given as a list of symbol names or as "a,b,a"."""
    if not isinstance(word, str):
        word = ",".join(word)
    return json.loads(_core._verify(automaton, word))


def classify(automaton):
    return json.loads(_core._classify(automaton))


def census(n, jobs=1, dir=None):
    return json.loads(_core._census(n, jobs, _catalog_dir(dir)))
