"""Cheap necessary conditions for flat bands of unweighted two-vertex-cell graphs.

With index sets I11, I22, I12 (unit weights, zero potential) there is no flat
band when, for some axis, max I11 + max I22 differs from the width of I12, when
|I12| = 1, or when I11 or I22 is empty. Otherwise a flat band must equal both
+-sqrt(|I12| - |I11 & I22|) and (|I11| + |I22| - sqrt((|I11| - |I22|)^2 + 4|I12|^2)) / 2,
which leaves at most one integer candidate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .graph import GraphError, PeriodicGraph, is_connected, require_valid


@dataclass
class ScreenResult:
    certificate: str | None
    condition: str | None = None
    candidates: list = field(default_factory=list)

    @property
    def no_flat_band(self) -> bool:
        return self.certificate is not None

    def to_dict(self) -> dict:
        if self.certificate is not None:
            return {"no_flat_band": True, "condition": self.condition, "certificate": self.certificate}
        return {"no_flat_band": False, "candidates": [str(c) for c in self.candidates]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def __str__(self):
        if self.certificate is not None:
            return f"no flat band, {self.certificate}"
        return "candidates: " + ", ".join(str(c) for c in self.candidates)


def _fmt(s) -> str:
    return "{" + ", ".join(str(k[0] if len(k) == 1 else k) for k in sorted(s)) + "}"


def _exact_sqrt(n: int):
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def screen_nu2(g: PeriodicGraph) -> ScreenResult:
    require_valid(g)
    if g.nu != 2:
        raise GraphError("screen needs nu = 2")
    if not g.has_unit_weights():
        raise GraphError("screen needs unit edge weights")
    if not g.has_zero_potential():
        raise GraphError("screen needs zero potential")
    if not is_connected(g):
        raise GraphError("screen needs a connected graph")
    i11, i22, i12 = g.index_set(0, 0), g.index_set(1, 1), g.index_set(0, 1)
    if not i11 or not i22:
        empty = " and ".join(n + " = {}" for n, s in (("I11", i11), ("I22", i22)) if not s)
        return ScreenResult(f"condition (iii): {empty}", "iii")
    if len(i12) == 1:
        return ScreenResult(f"condition (ii): |I12| = 1, I12 = {_fmt(i12)}", "ii")
    for r in range(g.dimension):
        kmax = max(k[r] for k in i11)
        kpmax = max(k[r] for k in i22)
        width = max(k[r] for k in i12) - min(k[r] for k in i12)
        if kmax + kpmax != width:
            return ScreenResult(
                f"condition (i): axis {r + 1}, max I11 + max I22 = {kmax} + {kpmax} != {width} = width of I12",
                "i",
            )
    a, b, c = len(i11), len(i22), len(i12)
    s = c - len(i11 & i22)
    root = _exact_sqrt(s)
    if root is None:
        return ScreenResult(f"|I12| - |I11 & I22| = {s} is not a perfect square", "vap")
    disc = _exact_sqrt((a - b) ** 2 + 4 * c * c)
    if disc is None:
        return ScreenResult(f"(|I11| - |I22|)^2 + 4|I12|^2 = {(a - b) ** 2 + 4 * c * c} is not a perfect square", "othervap")
    other = Fraction(a + b - disc, 2)
    cands = sorted({v for v in (root, -root) if v == other})
    if not cands:
        return ScreenResult(f"+-{root} and {other} do not agree", "vap-othervap")
    return ScreenResult(None, candidates=cands)
