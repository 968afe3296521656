"""Weighted hypergraph representation and primitive reconfiguration operations.

A hypergraph carries an ordered vertex set (labels) and a map from hyperedges
(non-empty frozensets of labels) to positive integer weights.  Parallel copies
are always aggregated into a single weighted hyperedge; weights are
arbitrary-precision integers.  Values are immutable: every operation returns a
new hypergraph.
"""

from __future__ import annotations

import json
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Sequence, Tuple

Edge = FrozenSet[str]


class InputError(ValueError):
    """Invalid input supplied by the caller (bad arguments, parse failures)."""


class PreconditionError(InputError):
    """A well-formed input fails a documented assumption of an algorithm."""


class ContractViolation(RuntimeError):
    """An internal guarantee of the algorithms failed to hold."""


class ReplayError(RuntimeError):
    """A recorded script could not be replayed against its hypergraph."""


class Hypergraph:
    """Immutable weighted hypergraph with aggregated hyperedge weights."""

    __slots__ = ("_vertices", "_index", "_edges")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Mapping[Iterable[str], int] | Iterable[Tuple[Iterable[str], int]] = (),
    ) -> None:
        vs = tuple(vertices)
        index: Dict[str, int] = {}
        for v in vs:
            if v in index:
                raise InputError(f"duplicate vertex label {v!r}")
            index[v] = len(index)
        self._vertices = vs
        self._index = index
        agg: Dict[Edge, int] = {}
        items = edges.items() if isinstance(edges, Mapping) else edges
        for raw, w in items:
            e = frozenset(raw)
            if not e:
                raise InputError("hyperedge must be non-empty")
            for v in e:
                if v not in index:
                    raise InputError(f"hyperedge uses unknown vertex {v!r}")
            if not isinstance(w, int) or w < 0:
                raise InputError(f"hyperedge weight must be a non-negative integer, got {w!r}")
            if w:
                agg[e] = agg.get(e, 0) + w
        self._edges = agg

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Dict[Edge, int]:
        return dict(self._edges)

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def weight(self, e: Iterable[str]) -> int:
        return self._edges.get(frozenset(e), 0)

    def total_weight(self) -> int:
        return sum(self._edges.values())

    def edge_key(self, e: Iterable[str]) -> Tuple[int, ...]:
        """Canonical sort key of a hyperedge: its sorted vertex-index tuple."""
        return tuple(sorted(self.index(v) for v in e))

    def set_key(self, xs: Iterable[str]) -> Tuple[int, ...]:
        return tuple(sorted(self.index(v) for v in xs))

    def sorted_edges(self) -> List[Tuple[Edge, int]]:
        """Edges in canonical order (lexicographic by sorted index tuples)."""
        return sorted(self._edges.items(), key=lambda it: self.edge_key(it[0]))

    def sorted_labels(self, xs: Iterable[str]) -> List[str]:
        return sorted(xs, key=self.index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self._edges == other._edges

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key in anger
        return hash((frozenset(self._vertices), frozenset(self._edges.items())))

    def __repr__(self) -> str:
        es = ", ".join(
            f"{{{','.join(self.sorted_labels(e))}}}:{w}" for e, w in self.sorted_edges()
        )
        return f"Hypergraph([{', '.join(self._vertices)}], {{{es}}})"

    # -- cut / coverage ----------------------------------------------------

    def _check_subset(self, X: Iterable[str]) -> FrozenSet[str]:
        xs = frozenset(X)
        for v in xs:
            if v not in self._index:
                raise InputError(f"unknown vertex {v!r}")
        return xs

    def cut_value(self, X: Iterable[str]) -> int:
        """d(X): total weight of hyperedges with vertices on both sides of X."""
        xs = self._check_subset(X)
        total = 0
        for e, w in self._edges.items():
            if not xs.isdisjoint(e) and not e <= xs:
                total += w
        return total

    def coverage_value(self, X: Iterable[str]) -> int:
        """b(X): total weight of hyperedges intersecting X."""
        xs = self._check_subset(X)
        return sum(w for e, w in self._edges.items() if not xs.isdisjoint(e))

    def degree(self, v: str) -> int:
        """Total weight of hyperedges containing v (singleton {v} included)."""
        if v not in self._index:
            raise InputError(f"unknown vertex {v!r}")
        return sum(w for e, w in self._edges.items() if v in e)

    def incident(self, v: str) -> List[Edge]:
        if v not in self._index:
            raise InputError(f"unknown vertex {v!r}")
        return [e for e in self._edges if v in e]

    # -- reconfiguration primitives ---------------------------------------

    def _with_edges(self, edges: Dict[Edge, int]) -> "Hypergraph":
        h = Hypergraph.__new__(Hypergraph)
        h._vertices = self._vertices
        h._index = self._index
        h._edges = {e: w for e, w in edges.items() if w}
        return h

    def merge(self, e: Iterable[str], f: Iterable[str], alpha: int) -> "Hypergraph":
        """Move alpha units of weight from hyperedges e and f onto e|f."""
        ek, fk = frozenset(e), frozenset(f)
        if ek == fk:
            raise InputError("merge requires two distinct hyperedges")
        we, wf = self._edges.get(ek), self._edges.get(fk)
        if we is None or wf is None:
            raise InputError("merge requires both hyperedges to be present")
        if not isinstance(alpha, int) or not 1 <= alpha <= min(we, wf):
            raise InputError(f"merge weight {alpha!r} out of range [1, {min(we, wf)}]")
        edges = dict(self._edges)
        edges[ek] = we - alpha
        edges[fk] = wf - alpha
        g = ek | fk
        edges[g] = edges.get(g, 0) + alpha
        return self._with_edges(edges)

    def reduce(self, e: Iterable[str], alpha: int) -> "Hypergraph":
        """Decrease the weight of hyperedge e by alpha (discard at zero)."""
        ek = frozenset(e)
        we = self._edges.get(ek)
        if we is None:
            raise InputError("reduce requires the hyperedge to be present")
        if not isinstance(alpha, int) or not 1 <= alpha <= we:
            raise InputError(f"reduce weight {alpha!r} out of range [1, {we}]")
        edges = dict(self._edges)
        edges[ek] = we - alpha
        return self._with_edges(edges)

    def h_merge_at(self, s: str, e: Iterable[str], f: Iterable[str], alpha: int) -> "Hypergraph":
        """Merge two hyperedges that are almost disjoint: they share exactly s."""
        ek, fk = frozenset(e), frozenset(f)
        if s not in self._index:
            raise InputError(f"unknown vertex {s!r}")
        if ek & fk != {s}:
            raise InputError("h-merge requires the hyperedges to intersect exactly in the split vertex")
        return self.merge(ek, fk, alpha)

    def h_trim_at(self, s: str, e: Iterable[str], alpha: int) -> "Hypergraph":
        """Move alpha units of weight of hyperedge e onto e - {s}."""
        ek = frozenset(e)
        if s not in self._index:
            raise InputError(f"unknown vertex {s!r}")
        if s not in ek:
            raise InputError("h-trim requires the hyperedge to contain the split vertex")
        if len(ek) < 2:
            raise InputError("h-trim of a singleton hyperedge would leave it empty")
        we = self._edges.get(ek)
        if we is None:
            raise InputError("h-trim requires the hyperedge to be present")
        if not isinstance(alpha, int) or not 1 <= alpha <= we:
            raise InputError(f"h-trim weight {alpha!r} out of range [1, {we}]")
        edges = dict(self._edges)
        edges[ek] = we - alpha
        g = ek - {s}
        edges[g] = edges.get(g, 0) + alpha
        return self._with_edges(edges)

    def restrict(self, U: Iterable[str]) -> "Hypergraph":
        """Project onto U: intersect hyperedges with U, aggregate, drop empties."""
        us = self._check_subset(U)
        order = [v for v in self._vertices if v in us]
        edges: Dict[Edge, int] = {}
        for e, w in self._edges.items():
            p = e & us
            if p:
                edges[p] = edges.get(p, 0) + w
        return Hypergraph(order, edges)

    def add_vertices(self, labels: Iterable[str]) -> "Hypergraph":
        new = [v for v in labels if v not in self._index]
        if not new:
            return self
        return Hypergraph(self._vertices + tuple(new), self._edges)

    def remove_vertices(self, labels: Iterable[str]) -> "Hypergraph":
        """Delete vertices, which must all be isolated (in no hyperedge)."""
        drop = self._check_subset(labels)
        for e in self._edges:
            bad = e & drop
            if bad:
                raise InputError(
                    f"cannot delete covered vertex {sorted(bad)[0]!r}: it lies in a hyperedge"
                )
        return Hypergraph([v for v in self._vertices if v not in drop], self._edges)

    def __add__(self, other: "Hypergraph") -> "Hypergraph":
        """Hypergraph sum: union of vertex sets, weights of common edges added."""
        order = list(self._vertices) + [v for v in other._vertices if v not in self._index]
        edges = dict(self._edges)
        for e, w in other._edges.items():
            edges[e] = edges.get(e, 0) + w
        return Hypergraph(order, edges)


# -- text formats ----------------------------------------------------------

def format_hypergraph(h: Hypergraph) -> str:
    """Canonical text form: declaration-order vertices, canonically sorted edges."""
    lines = ["vertices: " + " ".join(h.vertices)]
    for e, w in h.sorted_edges():
        lines.append(f"edge: {w} " + " ".join(h.sorted_labels(e)))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the canonical text format, or its JSON mirror."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
            return Hypergraph(
                [str(v) for v in obj["vertices"]],
                [([str(v) for v in ed["vs"]], int(ed["w"])) for ed in obj.get("edges", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad JSON hypergraph: {exc}") from None
    vertices: List[str] | None = None
    edges: List[Tuple[List[str], int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if vertices is not None:
                raise InputError(f"line {lineno}: duplicate vertices line")
            vertices = line[len("vertices:"):].split()
        elif line.startswith("edge:"):
            if vertices is None:
                raise InputError(f"line {lineno}: edge before vertices line")
            parts = line[len("edge:"):].split()
            if len(parts) < 2:
                raise InputError(f"line {lineno}: edge needs a weight and vertices")
            try:
                w = int(parts[0])
            except ValueError:
                raise InputError(f"line {lineno}: bad edge weight {parts[0]!r}") from None
            edges.append((parts[1:], w))
        else:
            raise InputError(f"line {lineno}: unrecognized line {line!r}")
    if vertices is None:
        raise InputError("missing vertices line")
    return Hypergraph(vertices, edges)


def hypergraph_to_json(h: Hypergraph) -> str:
    return json.dumps(
        {
            "vertices": list(h.vertices),
            "edges": [{"w": w, "vs": h.sorted_labels(e)} for e, w in h.sorted_edges()],
        }
    )
