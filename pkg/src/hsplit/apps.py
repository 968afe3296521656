"""Applications of complete h-splitting-off.

1. Constructive characterization of k-hyperedge-connected hypergraphs:
   every such hypergraph can be built from a single vertex by adding
   hyperedges and (k, p)-pinching, with every intermediate hypergraph
   k-hyperedge-connected.  ``decompose_k_ec`` produces such a build script by
   running the construction backwards: remove removable hyperedge copies,
   and when none remain, split off a degree-k vertex and record the inverse
   pinch.

2. Steiner rooted k-hyperarc-connected orientation: a Steiner
   2k-hyperedge-connected hypergraph admits an orientation with k
   hyperarc-disjoint paths from every terminal to the root.  The pipeline
   splits off the non-terminal vertices, orients the resulting
   terminal hypergraph, and lifts the orientation back through every
   h-merge/h-trim step.

Plus weak-partition-connectivity checks and Menger path extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .core import (
    ContractViolation,
    Edge,
    Hypergraph,
    InputError,
    PreconditionError,
    ReplayError,
)
from .flow import (
    Arc,
    decompose_undirected_paths,
    hyperarc_disjoint_paths_value,
    lambda_value,
    min_cut_constrained,
)
from .splitoff import SplitOffScript, complete_h_splitting_off


# -- k-hyperedge-connectivity ----------------------------------------------


def is_k_hyperedge_connected(
    h: Hypergraph, k: int
) -> Tuple[bool, Optional[FrozenSet[str]]]:
    """Is every non-trivial cut of value >= k?  Returns (verdict, witness)."""
    if k < 0:
        raise InputError("k must be non-negative")
    if len(h.vertices) <= 1 or k == 0:
        return True, None
    anchor = h.vertices[0]
    for u in h.vertices[1:]:
        value, witness = min_cut_constrained(h, {anchor}, {u})
        if value < k:
            return False, witness
    return True, None


# -- pinching --------------------------------------------------------------


@dataclass(frozen=True)
class PinchOp:
    """One (k, p)-pinching step introducing vertex s.

    ``items`` lists the picked hyperedges with their partitions: for each
    (e_i, parts_i), one unit copy of e_i is removed and each part gains s as
    a unit hyperedge part + {s}.  Sum of part counts equals k.
    """

    s: str
    k: int
    items: Tuple[Tuple[Edge, Tuple[Edge, ...]], ...]


ScriptOp = Tuple  # ("add", e) unit | ("pinch", PinchOp)


@dataclass(frozen=True)
class PinchingScript:
    base_vertex: str
    k: int
    ops: List[ScriptOp]


def _check_pinch(op: PinchOp) -> None:
    p = len(op.items)
    if p < 1 or p > op.k:
        raise InputError(f"pinch must pick between 1 and k hyperedges, got {p}")
    total = 0
    for e, parts in op.items:
        if not parts:
            raise InputError("pinch partition is empty")
        union: Set[str] = set()
        count = 0
        for part in parts:
            if not part:
                raise InputError("pinch partition has an empty part")
            if union & part:
                raise InputError("pinch partition parts overlap")
            union |= part
            count += 1
        if union != set(e):
            raise InputError("pinch partition does not cover its hyperedge")
        total += count
    if total != op.k:
        raise InputError(f"pinch part counts sum to {total}, expected k = {op.k}")


def apply_pinching(h: Hypergraph, op: PinchOp) -> Hypergraph:
    """Apply one pinch: remove unit copies of the picked hyperedges, add s."""
    _check_pinch(op)
    if op.s in h:
        raise InputError(f"pinch vertex {op.s!r} already present")
    work = h.add_vertices([op.s])
    for e, parts in op.items:
        if work.weight(e) < 1:
            raise InputError(f"pinch hyperedge {sorted(e)} is not present")
        work = work.reduce(e, 1)
        for part in parts:
            work = work + Hypergraph(work.vertices, {frozenset(part) | {op.s}: 1})
    return work


def replay_pinching(
    script: PinchingScript, assert_k_ec: bool = False
) -> Hypergraph:
    """Replay a build script from the single-vertex hypergraph."""
    work = Hypergraph([script.base_vertex])
    for i, op in enumerate(script.ops):
        try:
            if op[0] == "add":
                e = frozenset(op[1])
                if not e <= set(work.vertices):
                    raise InputError(f"hyperedge {sorted(e)} uses absent vertices")
                work = work + Hypergraph(work.vertices, {e: 1})
            elif op[0] == "pinch":
                work = apply_pinching(work, op[1])
            else:
                raise InputError(f"unknown script operation {op[0]!r}")
        except InputError as exc:
            raise ReplayError(f"script step {i + 1} failed: {exc}") from None
        if assert_k_ec:
            ok, witness = is_k_hyperedge_connected(work, script.k)
            if not ok:
                raise ReplayError(
                    f"intermediate after step {i + 1} is not {script.k}-hyperedge-connected"
                    f" (witness {sorted(witness or [])})"
                )
    return work


def _pinch_from_splitoff(
    g: Hypergraph, s: str, k: int
) -> Tuple[PinchOp, Hypergraph]:
    """Split off the degree-k vertex s and return the inverse pinch.

    Tracks, through the merge trace, which projected parts of the original
    incident hyperedges compose each produced unit copy; those parts form
    the pinch partitions.
    """
    result = complete_h_splitting_off(g, s)
    # FIFO composition lists per working hyperedge of the cover instance.
    comp: Dict[Edge, List[Tuple[Edge, ...]]] = {}
    for e, w in g.edges.items():
        if s in e and len(e) > 1:
            pe = e - {s}
            comp.setdefault(pe, []).extend([(pe,)] * w)
    outputs: List[Tuple[Edge, Tuple[Edge, ...]]] = []
    for op in result.cover.trace:
        if op[0] == "merge":
            _, e, f, alpha = op
            left = [comp[e].pop(0) for _ in range(alpha)]
            right = [comp[f].pop(0) for _ in range(alpha)]
            comp.setdefault(e | f, []).extend(
                tuple(a + b) for a, b in zip(left, right)
            )
        else:
            _, e, alpha = op
            for _ in range(alpha):
                outputs.append((e, comp[e].pop(0)))
    if any(lst for lst in comp.values()):
        raise ContractViolation("split-off trace left unconsumed hyperedge copies")
    total_parts = sum(len(parts) for _, parts in outputs)
    if total_parts != k:
        raise ContractViolation(
            f"pinch part count {total_parts} does not match degree k = {k}"
        )
    index = {v: i for i, v in enumerate(g.vertices)}

    def edge_key(e: Edge) -> Tuple[int, ...]:
        return tuple(sorted(index[v] for v in e))

    normalized = [
        (e, tuple(sorted(parts, key=edge_key))) for e, parts in outputs
    ]
    normalized.sort(
        key=lambda it: (edge_key(it[0]), tuple(edge_key(p) for p in it[1]))
    )
    op = PinchOp(s, k, tuple(normalized))
    after = result.hypergraph.remove_vertices([s])
    return op, after


def decompose_k_ec(h: Hypergraph, k: int) -> PinchingScript:
    """Build a pinching script for a k-hyperedge-connected hypergraph.

    Replaying the script from the single-vertex hypergraph reproduces h
    exactly, and every intermediate hypergraph is k-hyperedge-connected.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    ok, witness = is_k_hyperedge_connected(h, k)
    if not ok:
        raise PreconditionError(
            f"input is not {k}-hyperedge-connected (witness cut {sorted(witness or [])})"
        )
    work = h
    rev_ops: List[ScriptOp] = []
    while len(work.vertices) > 1 or work.edges:
        removed = False
        for e, _ in work.sorted_edges():
            cand = work.reduce(e, 1)
            if len(e) == 1 or is_k_hyperedge_connected(cand, k)[0]:
                work = cand
                rev_ops.append(("add", e))
                removed = True
                break
        if removed:
            continue
        # minimally k-hyperedge-connected: some vertex has degree exactly k
        u = None
        for v in work.vertices:
            if work.degree(v) == k:
                u = v
                break
        if u is None:
            raise ContractViolation(
                "minimally k-hyperedge-connected hypergraph has no degree-k vertex"
            )
        op, after = _pinch_from_splitoff(work, u, k)
        rev_ops.append(("pinch", op))
        work = after
    return PinchingScript(work.vertices[0], k, list(reversed(rev_ops)))


# -- weak partition connectivity -------------------------------------------


def _partitions(n: int):
    """Restricted-growth-string enumeration of set partitions of range(n)."""
    rgs = [0] * n

    def rec(i: int, maxv: int):
        if i == n:
            yield rgs
            return
        for v in range(maxv + 2):
            rgs[i] = v
            yield from rec(i + 1, max(maxv, v))

    yield from rec(1, 0) if n > 0 else iter(())


def weak_partition_connectivity(
    h: Hypergraph, k: int, exact_limit: int = 12
) -> Tuple[Optional[bool], Optional[List[FrozenSet[str]]]]:
    """Is sum_e w(e)(P(e) - 1) >= k(|P| - 1) for every partition P of V?

    Exact for |V| <= exact_limit; beyond that only the sufficient condition
    (2k-hyperedge-connected) and the necessary condition (k-hyperedge-
    connected) are applied, and the verdict may be None (unknown).
    """
    if k <= 0:
        return True, None
    verts = list(h.vertices)
    n = len(verts)
    if n <= 1:
        return True, None
    if n <= exact_limit:
        vidx = {v: i for i, v in enumerate(verts)}
        edges = [(sum(1 << vidx[v] for v in e), w) for e, w in h.sorted_edges()]
        for rgs in _partitions(n):
            nparts = max(rgs) + 1
            if nparts == 1:
                continue
            masks = [0] * nparts
            for i, part in enumerate(rgs):
                masks[part] |= 1 << i
            lhs = 0
            for emask, w in edges:
                met = sum(1 for m in masks if m & emask)
                lhs += w * (met - 1)
            if lhs < k * (nparts - 1):
                partition = [
                    frozenset(verts[i] for i in range(n) if m >> i & 1) for m in masks
                ]
                return False, partition
        return True, None
    ok, witness = is_k_hyperedge_connected(h, k)
    if not ok:
        assert witness is not None
        return False, [witness, frozenset(verts) - witness]
    if is_k_hyperedge_connected(h, 2 * k)[0]:
        return True, None
    return None, None


# -- orientation -----------------------------------------------------------


class OrientedHypergraph:
    """A hypergraph plus per-copy head assignments (hyperarc multiplicities)."""

    def __init__(self, vertices: Sequence[str], arcs: Iterable[Arc]) -> None:
        self.vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(self.vertices)}
        agg: Dict[Tuple[Edge, str], int] = {}
        for e, head, w in arcs:
            ef = frozenset(e)
            if head not in ef:
                raise InputError(f"head {head!r} is not in its hyperedge")
            if not ef <= set(index):
                raise InputError("hyperarc uses unknown vertices")
            if w < 1:
                raise InputError("hyperarc multiplicity must be positive")
            agg[(ef, head)] = agg.get((ef, head), 0) + w
        self._index = index
        self.arcs: List[Arc] = [
            (e, head, w)
            for (e, head), w in sorted(
                agg.items(),
                key=lambda it: (
                    tuple(sorted(index[v] for v in it[0][0])),
                    index[it[0][1]],
                ),
            )
        ]

    def underlying(self) -> Hypergraph:
        edges: Dict[Edge, int] = {}
        for e, _, w in self.arcs:
            edges[e] = edges.get(e, 0) + w
        return Hypergraph(self.vertices, edges)

    def paths_value(self, t: str, r: str) -> int:
        return hyperarc_disjoint_paths_value(self.vertices, self.arcs, t, r)

    def format(self) -> str:
        index = self._index
        lines = [f"vertices: {' '.join(self.vertices)}"]
        for e, head, w in self.arcs:
            labels = " ".join(sorted(e, key=index.get))
            lines.extend([f"head: {head} | {labels}"] * w)
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str) -> "OrientedHypergraph":
        vertices: Optional[List[str]] = None
        arcs: List[Arc] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("vertices:"):
                vertices = line[len("vertices:"):].split()
            elif line.startswith("head:"):
                if vertices is None:
                    raise InputError(f"line {lineno}: head before vertices line")
                rest = line[len("head:"):]
                if "|" not in rest:
                    raise InputError(f"line {lineno}: head line needs '|'")
                head_part, edge_part = rest.split("|", 1)
                head = head_part.strip()
                arcs.append((frozenset(edge_part.split()), head, 1))
            else:
                raise InputError(f"line {lineno}: unrecognized line {line!r}")
        if vertices is None:
            raise InputError("missing vertices line")
        return OrientedHypergraph(vertices, arcs)


def orient_rooted_k(h: Hypergraph, r: str, k: int) -> Optional[List[Arc]]:
    """Head assignment making every non-root set leave with weight >= k.

    Exhaustive search over per-hyperedge head multiplicity distributions with
    a remaining-contribution pruning bound; returns None when none exists.
    """
    if r not in h:
        raise InputError(f"unknown root {r!r}")
    verts = list(h.vertices)
    n = len(verts)
    vidx = {v: i for i, v in enumerate(verts)}
    subsets = [m for m in range(1, 1 << n) if not (m >> vidx[r]) & 1]
    if not subsets:
        return [(e, next(iter(e)), w) for e, w in h.sorted_edges()]
    edges = h.sorted_edges()
    # contribution[e][h][X] = 1 if a copy of e with head h leaves X
    sub = np.array(subsets, dtype=np.int64)
    contribs: List[List[Tuple[str, np.ndarray]]] = []
    maxgain: List[np.ndarray] = []
    for e, w in edges:
        per_head: List[Tuple[str, np.ndarray]] = []
        emask = sum(1 << vidx[v] for v in e)
        for hvert in sorted(e, key=vidx.get):
            hbit = 1 << vidx[hvert]
            tails = emask & ~hbit
            leaves = ((sub & tails) != 0) & ((sub & hbit) == 0)
            per_head.append((hvert, leaves.astype(np.int64)))
        contribs.append(per_head)
        best = np.maximum.reduce([c for _, c in per_head])
        maxgain.append(best * w)
    # suffix of maximal achievable remaining contribution
    suffix = [np.zeros(len(subsets), dtype=np.int64)]
    for g in reversed(maxgain):
        suffix.append(suffix[-1] + g)
    suffix.reverse()

    need = np.full(len(subsets), k, dtype=np.int64)
    chosen: List[List[Tuple[str, int]]] = []

    def dfs(i: int, current: np.ndarray) -> bool:
        if np.any(current + suffix[i] < need):
            return False
        if i == len(edges):
            return True
        e, w = edges[i]
        per_head = contribs[i]

        def distribute(j: int, left: int, acc: np.ndarray, picks: List[Tuple[str, int]]) -> bool:
            if j == len(per_head) - 1:
                picks.append((per_head[j][0], left))
                total = acc + left * per_head[j][1] if left else acc
                chosen.append(list(picks))
                if dfs(i + 1, current + total):
                    return True
                chosen.pop()
                picks.pop()
                return False
            for take in range(left, -1, -1):
                picks.append((per_head[j][0], take))
                nxt = acc + take * per_head[j][1] if take else acc
                if distribute(j + 1, left - take, nxt, picks):
                    return True
                picks.pop()
            return False

        return distribute(0, w, np.zeros(len(subsets), dtype=np.int64), [])

    if not dfs(0, np.zeros(len(subsets), dtype=np.int64)):
        return None
    arcs: List[Arc] = []
    for (e, _), picks in zip(edges, chosen):
        for hvert, cnt in picks:
            if cnt:
                arcs.append((e, hvert, cnt))
    return arcs


def lift_orientation(
    g: Hypergraph, step: Tuple, oh: OrientedHypergraph
) -> OrientedHypergraph:
    """Undo one h-operation at s in an orientation (head-assignment rules).

    ``step`` is ("hmerge", s, e, f, alpha) or ("htrim", s, e, alpha) applied
    to g; ``oh`` orients the post-step hypergraph.  Merged copies keep their
    head where possible and fall back to s; trimmed copies keep their head.
    """
    kind = step[0]
    s = step[1]
    pool: Dict[Tuple[Edge, str], int] = {}
    for e, head, w in oh.arcs:
        pool[(e, head)] = pool.get((e, head), 0) + w
    index = {v: i for i, v in enumerate(oh.vertices)}

    def consume(edge: Edge, count: int) -> List[str]:
        heads: List[str] = []
        for (e, head), w in sorted(
            pool.items(), key=lambda it: (index[it[0][1]],)
        ):
            if e != edge or w == 0:
                continue
            take = min(w, count - len(heads))
            pool[(e, head)] -= take
            heads.extend([head] * take)
            if len(heads) == count:
                return heads
        raise InputError("orientation does not match the step (missing copies)")

    if kind == "hmerge":
        _, _, e, f, alpha = step
        gmerged = e | f
        for head in consume(gmerged, alpha):
            pool[(e, head if head in e else s)] = (
                pool.get((e, head if head in e else s), 0) + 1
            )
            pool[(f, head if head in f else s)] = (
                pool.get((f, head if head in f else s), 0) + 1
            )
    elif kind == "htrim":
        _, _, e, alpha = step
        gtrim = e - {s}
        for head in consume(gtrim, alpha):
            pool[(e, head)] = pool.get((e, head), 0) + 1
    else:
        raise InputError(f"unknown step kind {kind!r}")
    arcs = [(e, head, w) for (e, head), w in pool.items() if w > 0]
    lifted = OrientedHypergraph(oh.vertices, arcs)
    if lifted.underlying() != g:
        raise InputError("lifted orientation does not match the pre-step hypergraph")
    return lifted


def steiner_rooted_orientation(
    g: Hypergraph, terminals: Iterable[str], r: str, k: int
) -> OrientedHypergraph:
    """Orient g with k hyperarc-disjoint t -> r paths for every terminal t.

    Requires lambda(u, v) >= 2k for every terminal pair (checked).
    """
    T = sorted(frozenset(terminals), key=lambda v: g.index(v))
    if r not in T:
        raise InputError("root must be a terminal")
    if k < 1:
        raise InputError("k must be at least 1")
    for v in T:
        if v not in g:
            raise InputError(f"unknown terminal {v!r}")
    for i in range(len(T)):
        for j in range(i + 1, len(T)):
            if lambda_value(g, T[i], T[j]) < 2 * k:
                raise PreconditionError(
                    f"not Steiner {2 * k}-hyperedge-connected: "
                    f"lambda({T[i]},{T[j]}) < {2 * k}"
                )
    steiner = [v for v in g.vertices if v not in T]
    work = g
    stages: List[Tuple[str, SplitOffScript, int, Tuple[str, ...]]] = []
    for s in steiner:
        res = complete_h_splitting_off(work, s)
        after = res.hypergraph
        singleton = after.weight(frozenset({s}))
        if singleton:
            after = after.reduce(frozenset({s}), singleton)
        after = after.remove_vertices([s])
        stages.append((s, res.script, singleton, tuple(work.vertices)))
        work = after
    arcs = orient_rooted_k(work, r, k)
    if arcs is None:
        raise ContractViolation(
            "no rooted orientation exists although the precondition holds"
        )
    oh = OrientedHypergraph(work.vertices, arcs)
    for s, script, singleton, pre_vertices in reversed(stages):
        arcs_with_s = list(oh.arcs)
        if singleton:
            arcs_with_s.append((frozenset({s}), s, singleton))
        oh = OrientedHypergraph(pre_vertices, arcs_with_s)
        current = oh.underlying()
        for op in reversed(script.ops):
            pre = _pre_step_hypergraph(current, s, op)
            oh = lift_orientation(pre, (op[0], s) + tuple(op[1:]), oh)
            current = pre
    for t in T:
        if t == r:
            continue
        got = oh.paths_value(t, r)
        if got < k:
            raise ContractViolation(
                f"orientation verification failed: only {got} paths from {t}"
            )
    return oh


def _pre_step_hypergraph(post: Hypergraph, s: str, op: Tuple) -> Hypergraph:
    """Invert one h-operation to recover the hypergraph before it."""
    if op[0] == "hmerge":
        _, e, f, alpha = op
        g = e | f
        work = post.reduce(g, alpha)
        work = work + Hypergraph(work.vertices, {e: alpha, f: alpha})
        return work
    _, e, alpha = op
    g = e - {s}
    work = post.reduce(g, alpha)
    return work + Hypergraph(work.vertices, {e: alpha})


# -- pinching script text format -------------------------------------------


def format_pinching_script(h: Hypergraph, script: PinchingScript) -> str:
    """Text form; consecutive identical adds are run-length compressed."""

    def labels(e: Edge) -> str:
        return " ".join(h.sorted_labels(e))

    lines = [f"base: {script.base_vertex}", f"k: {script.k}"]
    i = 0
    ops = script.ops
    while i < len(ops):
        op = ops[i]
        if op[0] == "add":
            j = i
            while j < len(ops) and ops[j][0] == "add" and ops[j][1] == op[1]:
                j += 1
            lines.append(f"add: {j - i} {labels(op[1])}")
            i = j
        else:
            pinch: PinchOp = op[1]
            items = " ; ".join(
                f"{labels(e)} -> " + " / ".join(labels(p) for p in parts)
                for e, parts in pinch.items
            )
            lines.append(
                f"pinch: k={pinch.k} p={len(pinch.items)} s={pinch.s} ; {items}"
            )
            i += 1
    return "\n".join(lines) + "\n"


def parse_pinching_script(text: str) -> PinchingScript:
    base: Optional[str] = None
    k: Optional[int] = None
    ops: List[ScriptOp] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("base:"):
            base = line[len("base:"):].strip()
        elif line.startswith("k:"):
            k = int(line[len("k:"):].strip())
        elif line.startswith("add:"):
            parts = line[len("add:"):].split()
            if len(parts) < 2:
                raise InputError(f"line {lineno}: add needs a count and vertices")
            try:
                count = int(parts[0])
            except ValueError:
                raise InputError(f"line {lineno}: bad add count {parts[0]!r}") from None
            ops.extend([("add", frozenset(parts[1:]))] * count)
        elif line.startswith("pinch:"):
            chunks = [c.strip() for c in line[len("pinch:"):].split(";")]
            header = chunks[0].split()
            fields = dict(
                tok.split("=", 1) for tok in header if "=" in tok
            )
            try:
                pk = int(fields["k"])
                s = fields["s"]
            except (KeyError, ValueError):
                raise InputError(f"line {lineno}: bad pinch header") from None
            items: List[Tuple[Edge, Tuple[Edge, ...]]] = []
            for chunk in chunks[1:]:
                if not chunk:
                    continue
                if "->" not in chunk:
                    raise InputError(f"line {lineno}: pinch item needs '->'")
                left, right = chunk.split("->", 1)
                parts_e = tuple(
                    frozenset(p.split()) for p in right.split("/") if p.strip()
                )
                items.append((frozenset(left.split()), parts_e))
            ops.append(("pinch", PinchOp(s, pk, tuple(items))))
        else:
            raise InputError(f"line {lineno}: unrecognized line {line!r}")
    if base is None or k is None:
        raise InputError("missing base or k line")
    return PinchingScript(base, k, ops)


# -- Menger ----------------------------------------------------------------


def menger_paths(g: Hypergraph, u: str, v: str) -> List[List[object]]:
    """lambda(u, v) pairwise hyperedge-disjoint u-v paths (unit copies)."""
    if u == v:
        raise InputError("path endpoints must differ")
    if u not in g or v not in g:
        raise InputError("unknown path endpoint")
    return decompose_undirected_paths(g, u, v)
