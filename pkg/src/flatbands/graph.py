"""Combinatorial Z^d-periodic graphs.

A graph has ``nu`` vertices per fundamental cell. An edge ``(i, j, k, w)``
joins v_i in cell 0 to v_j in cell k with weight w; the reversed copy
``(j, i, -k, conj(w))`` is implied and never stored.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.gaussian import Gaussian, conj, simplify
from .algebra.lattice import lattice_is_full


class GraphError(ValueError):
    """Raised for malformed graphs or failed preconditions on them."""


def _scalar(w):
    """Normalize an exact weight: Fraction when real, Gaussian otherwise."""
    if isinstance(w, Gaussian):
        w = Gaussian(Fraction(w.re), Fraction(w.im))
        return simplify(w) if w.im != 0 else Fraction(w.re)
    if isinstance(w, complex):
        raise GraphError("floating-point weights are not exact; use Gaussian")
    return Fraction(w)


def _lex_positive(k: Sequence[int]) -> bool:
    for a in k:
        if a:
            return a > 0
    return False


@dataclass(frozen=True)
class EdgeSpec:
    i: int
    j: int
    offset: tuple
    weight: object = Fraction(1)

    def reversed(self) -> "EdgeSpec":
        return EdgeSpec(self.j, self.i, tuple(-a for a in self.offset), conj(self.weight))

    def is_canonical(self) -> bool:
        if self.i < self.j:
            return True
        return self.i == self.j and _lex_positive(self.offset)

    def canonical(self) -> "EdgeSpec":
        return self if self.is_canonical() else self.reversed()

    def sort_key(self):
        return (self.i, self.j, self.offset)


@dataclass(frozen=True)
class PeriodicGraph:
    dimension: int
    nu: int
    edges: tuple
    potential: tuple = field(default=())

    def __post_init__(self):
        if not self.potential:
            object.__setattr__(self, "potential", (Fraction(0),) * self.nu)

    @classmethod
    def build(
        cls,
        dimension: int,
        nu: int,
        edges: Iterable,
        potential: Sequence | None = None,
        canonicalize: bool = True,
    ) -> "PeriodicGraph":
        """Convenience constructor.

        ``edges`` holds tuples ``(i, j, offset)`` or ``(i, j, offset, weight)``;
        an integer offset is accepted when ``dimension == 1``. With
        ``canonicalize`` each edge is flipped into canonical orientation and
        the list is sorted.
        """
        out = []
        for e in edges:
            if isinstance(e, EdgeSpec):
                es = e
            else:
                i, j, k = e[0], e[1], e[2]
                w = e[3] if len(e) > 3 else 1
                if isinstance(k, int):
                    k = (k,)
                es = EdgeSpec(int(i), int(j), tuple(int(a) for a in k), _scalar(w))
            if canonicalize and (es.i != es.j or any(es.offset)):
                es = es.canonical()
            out.append(es)
        if canonicalize:
            out.sort(key=EdgeSpec.sort_key)
        pot = tuple(Fraction(q) for q in potential) if potential is not None else ()
        return cls(dimension, nu, tuple(out), pot)

    # derived data -----------------------------------------------------------
    def directed_edges(self):
        """Every edge in both orientations (self-loops give +k and -k)."""
        for e in self.edges:
            yield e.i, e.j, e.offset, e.weight
            r = e.reversed()
            yield r.i, r.j, r.offset, r.weight

    def index_sets(self) -> dict:
        """Map (i, j) -> {offset: weight} of I_ij, reflections included."""
        out: dict = {}
        for i, j, k, w in self.directed_edges():
            d = out.setdefault((i, j), {})
            d[k] = d[k] + w if k in d else w
        return out

    def index_set(self, i: int, j: int) -> frozenset:
        return frozenset(self.index_sets().get((i, j), {}))

    def hopping_range(self) -> tuple:
        h = [0] * self.dimension
        for e in self.edges:
            for r, a in enumerate(e.offset):
                h[r] = max(h[r], abs(a))
        return tuple(h)

    def has_unit_weights(self) -> bool:
        return all(e.weight == 1 for e in self.edges)

    def has_positive_weights(self) -> bool:
        return all(not isinstance(e.weight, Gaussian) and e.weight > 0 for e in self.edges)

    def has_zero_potential(self) -> bool:
        return all(q == 0 for q in self.potential)

    def with_potential(self, q: Sequence) -> "PeriodicGraph":
        if len(q) != self.nu:
            raise GraphError(f"potential needs {self.nu} entries, got {len(q)}")
        return PeriodicGraph(self.dimension, self.nu, self.edges, tuple(Fraction(x) for x in q))

    def to_json(self) -> str:
        return dumps(self)


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    results: list = field(default_factory=list)  # (rule, ok, detail)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def failures(self) -> list:
        return [(r, d) for r, ok, d in self.results if not ok]

    def add(self, rule: str, problems: list):
        self.results.append((rule, not problems, "; ".join(problems)))

    def __str__(self):
        lines = []
        for rule, ok, detail in self.results:
            lines.append(f"{'pass' if ok else 'FAIL'}  {rule}" + (f": {detail}" if detail else ""))
        return "\n".join(lines)


RULES = (
    "dimension",
    "vertex range",
    "offset arity",
    "no self-loop",
    "canonical orientation",
    "duplicate edge",
    "weights nonzero",
    "potential",
    "hermitian",
)


def validate(g: PeriodicGraph) -> ValidationReport:
    rep = ValidationReport()
    rep.add("dimension", [] if g.dimension >= 1 and g.nu >= 1 else [f"d={g.dimension}, nu={g.nu}"])
    bad_v, bad_arity, loops, orient, dup, zero_w = [], [], [], [], [], []
    seen = set()
    for e in g.edges:
        label = f"({e.i},{e.j},{list(e.offset)})"
        if not (0 <= e.i < g.nu and 0 <= e.j < g.nu):
            bad_v.append(label)
        if len(e.offset) != g.dimension:
            bad_arity.append(label)
            continue
        if e.i == e.j and not any(e.offset):
            loops.append(label)
            continue
        if not e.is_canonical():
            orient.append(label)
        key = e.canonical().sort_key()
        if key in seen:
            dup.append(label)
        seen.add(key)
        if e.weight == 0:
            zero_w.append(label)
    rep.add("vertex range", bad_v)
    rep.add("offset arity", bad_arity)
    rep.add("no self-loop", loops)
    rep.add("canonical orientation", orient)
    rep.add("duplicate edge", dup)
    rep.add("weights nonzero", zero_w)
    pot = []
    if len(g.potential) != g.nu:
        pot.append(f"expected {g.nu} entries, got {len(g.potential)}")
    elif not all(isinstance(q, (int, Fraction)) for q in g.potential):
        pot.append("potential must be real rational")
    rep.add("potential", pot)
    herm = []
    if not bad_arity and not loops:
        sets = g.index_sets()
        for (i, j), d in sets.items():
            back = sets.get((j, i), {})
            for k, w in d.items():
                if back.get(tuple(-a for a in k)) != conj(w):
                    herm.append(f"I_{i}{j} at {list(k)}")
    rep.add("hermitian", herm)
    return rep


def require_valid(g: PeriodicGraph) -> None:
    rep = validate(g)
    if not rep.ok:
        raise GraphError("invalid periodic graph: " + ", ".join(f"{r} ({d})" for r, d in rep.failures()))


# ---------------------------------------------------------------- connectivity


def cycle_labels(g: PeriodicGraph) -> list | None:
    """Translation vectors of the cycle space, or None if the quotient is disconnected."""
    adj: dict = {v: [] for v in range(g.nu)}
    for i, j, k, _ in g.directed_edges():
        adj[i].append((j, k))
    pi = {0: (0,) * g.dimension}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, k in adj[u]:
            if v not in pi:
                # (u, pi_u) ~ (v, pi_u + k)
                pi[v] = tuple(a + b for a, b in zip(pi[u], k))
                queue.append(v)
    if len(pi) != g.nu:
        return None
    labels = []
    for e in g.edges:
        lab = tuple(pu + k - pv for pu, k, pv in zip(pi[e.i], e.offset, pi[e.j]))
        if any(lab):
            labels.append(lab)
    return labels


def is_connected(g: PeriodicGraph) -> bool:
    """Whether the infinite lift is connected (quotient connected and the
    cycle labels generate Z^d)."""
    labels = cycle_labels(g)
    if labels is None:
        return False
    return lattice_is_full(labels, g.dimension)


# ---------------------------------------------------------------- transformations


def relabel(g: PeriodicGraph, perm: Sequence[int]) -> PeriodicGraph:
    """Rename vertex i to perm[i]."""
    if sorted(perm) != list(range(g.nu)):
        raise GraphError(f"not a permutation of range({g.nu}): {list(perm)}")
    edges = [EdgeSpec(perm[e.i], perm[e.j], e.offset, e.weight) for e in g.edges]
    pot = [Fraction(0)] * g.nu
    for i, q in enumerate(g.potential):
        pot[perm[i]] = q
    return PeriodicGraph.build(g.dimension, g.nu, edges, pot)


def shift_cell(g: PeriodicGraph, vertex: int, by: Sequence[int]) -> PeriodicGraph:
    """Same infinite graph with another representative of ``vertex`` in the cell:
    offsets of edges leaving the vertex decrease by ``by``, entering ones increase."""
    by = tuple(by)
    if len(by) != g.dimension:
        raise GraphError("shift has wrong arity")
    edges = []
    for e in g.edges:
        k = e.offset
        if e.i == vertex and e.j != vertex:
            k = tuple(a - b for a, b in zip(k, by))
        elif e.j == vertex and e.i != vertex:
            k = tuple(a + b for a, b in zip(k, by))
        edges.append(EdgeSpec(e.i, e.j, k, e.weight))
    return PeriodicGraph.build(g.dimension, g.nu, edges, g.potential)


# ---------------------------------------------------------------- JSON


def _frac_str(q) -> str:
    q = Fraction(q)
    return str(q)


def _weight_dict(w) -> dict:
    if isinstance(w, Gaussian):
        return {"re": _frac_str(w.re), "im": _frac_str(w.im)}
    return {"re": _frac_str(w), "im": "0"}


def graph_to_dict(g: PeriodicGraph) -> dict:
    edges = []
    for e in g.edges:
        d = {"from": e.i, "to": e.j, "offset": list(e.offset)}
        if e.weight != 1:
            d["weight"] = _weight_dict(e.weight)
        edges.append(d)
    out = {"dimension": g.dimension, "num_vertices": g.nu, "edges": edges}
    if any(q != 0 for q in g.potential):
        out["potential"] = [_frac_str(q) for q in g.potential]
    return out


def dumps(g: PeriodicGraph) -> str:
    """Canonical JSON text: one edge per line, trailing newline."""
    d = graph_to_dict(g)
    lines = ["{", f'  "dimension": {d["dimension"]},', f'  "num_vertices": {d["num_vertices"]},']
    edge_lines = [json.dumps(e, separators=(", ", ": ")) for e in d["edges"]]
    tail = "," if "potential" in d else ""
    if edge_lines:
        lines.append('  "edges": [')
        lines += [f"    {s}," for s in edge_lines[:-1]] + [f"    {edge_lines[-1]}"]
        lines.append("  ]" + tail)
    else:
        lines.append('  "edges": []' + tail)
    if "potential" in d:
        lines.append(f'  "potential": {json.dumps(d["potential"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise GraphError("boolean is not a rational")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except ValueError as exc:
            raise GraphError(f"bad rational {s!r}") from exc
    raise GraphError(f"rationals must be strings like 'p/q', got {s!r}")


def graph_from_dict(d: dict) -> PeriodicGraph:
    try:
        dim = int(d["dimension"])
        nu = int(d["num_vertices"])
        raw = d.get("edges", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    edges = []
    for e in raw:
        try:
            i, j, k = int(e["from"]), int(e["to"]), tuple(int(a) for a in e["offset"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed edge {e!r}") from exc
        w = e.get("weight")
        if w is None:
            wt = Fraction(1)
        else:
            wt = _scalar(Gaussian(_parse_rational(w.get("re", "0")), _parse_rational(w.get("im", "0"))))
        edges.append(EdgeSpec(i, j, k, wt))
    pot = d.get("potential")
    potential = tuple(_parse_rational(q) for q in pot) if pot is not None else ()
    # keep the stored orientation so validate() can report violations
    return PeriodicGraph(dim, nu, tuple(edges), potential)


def loads(text: str) -> PeriodicGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def load(path) -> PeriodicGraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(g: PeriodicGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))
