"""Small named periodic graphs used throughout the tests and shipped as JSON."""

from __future__ import annotations

from importlib import resources

from .algebra.gaussian import Gaussian
from .graph import PeriodicGraph, loads

I = Gaussian(0, 1)


def _g(d, nu, edges, potential=None):
    return PeriodicGraph.build(d, nu, edges, potential)


def _definitions() -> dict:
    return {
        # two rows, vertical rung, horizontal lines and crossing diagonals; flat band -1
        "fig1-left": _g(1, 2, [(0, 0, 1), (1, 1, 1), (0, 1, 0), (0, 1, 1), (0, 1, -1)]),
        # same without the rung; flat band 0
        "fig1-right": _g(1, 2, [(0, 0, 1), (1, 1, 1), (0, 1, 1), (0, 1, -1)]),
        # magnetic ladder, every band flat at +-2
        "creutz": _g(1, 2, [(0, 0, 1, -I), (1, 1, 1, I), (0, 1, 1), (0, 1, -1)]),
        "pyrochlore-1d": _g(
            1,
            4,
            [(0, 1, 0), (2, 3, 0), (0, 2, -1), (1, 3, -1), (0, 3, 0), (0, 3, -1), (1, 2, 0), (1, 2, -1)],
        ),
        "ladder": _g(1, 2, [(0, 0, 1), (1, 1, 1), (0, 1, 0)]),
        "honeycomb": _g(2, 2, [(0, 1, (0, 0)), (0, 1, (-1, 0)), (0, 1, (0, -1))]),
        # apex row (vertex 0) hangs off a line (vertex 1)
        "sawtooth-fig10": _g(1, 2, [(1, 1, 1), (0, 1, 0), (0, 1, -1)]),
        "sheared-fig7": _g(1, 2, [(0, 0, 1), (1, 1, 1), (0, 1, 0), (0, 1, 2)]),
        "fivecell-fig8": _g(1, 2, [(0, 0, 3), (1, 1, 1), (0, 1, 1), (0, 1, -1), (0, 1, 2), (0, 1, -2)]),
        "lieb-like-fig9-right": _g(1, 3, [(0, 1, 0), (0, 1, 1), (0, 1, -1), (1, 2, 0)]),
        "curious-fig9-left": _g(1, 3, [(0, 0, 1), (1, 1, 1), (0, 2, 0), (1, 2, 0), (0, 2, -1), (1, 2, -1)]),
        "nonsym-fig6-left": _g(1, 3, [(0, 1, 0), (1, 2, 0), (1, 1, 1)]),
        "nonsym-fig6-right": _g(1, 3, [(0, 1, 0), (0, 1, -1), (1, 2, 0), (1, 2, 1), (1, 1, 1)]),
        "korsa-counterexample": _g(
            1, 3, [(0, 0, 1), (1, 1, 1), (0, 1, 1), (0, 1, -1), (0, 2, 1), (0, 2, -1), (1, 2, 1), (1, 2, -1)]
        ),
        "disconnected-factorization": _g(1, 2, [(0, 0, 2), (1, 1, 4), (0, 1, 1), (0, 1, -1), (0, 1, 3), (0, 1, -3)]),
        "line": _g(1, 1, [(0, 0, 1)]),
        "square": _g(2, 1, [(0, 0, (1, 0)), (0, 0, (0, 1))]),
    }


_CACHE: dict = {}


def names() -> list:
    return sorted(_definitions())


def build(name: str) -> PeriodicGraph:
    """The in-code definition of a named graph."""
    defs = _definitions()
    if name not in defs:
        raise KeyError(f"unknown example graph {name!r}; known: {', '.join(sorted(defs))}")
    return defs[name]


def load_example(name: str) -> PeriodicGraph:
    """Load a bundled JSON graph by name."""
    if name not in _CACHE:
        path = resources.files("flatbands") / "data" / "graphs" / f"{name}.json"
        if not path.is_file():
            raise KeyError(f"no bundled graph named {name!r}")
        _CACHE[name] = loads(path.read_text(encoding="utf-8"))
    return _CACHE[name]


def bundled_names() -> list:
    root = resources.files("flatbands") / "data" / "graphs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))
