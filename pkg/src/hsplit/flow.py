"""Exact hypergraph minimum-cut machinery.

Undirected hypergraph min-cuts are computed on the standard digraph
transformation: each hyperedge e becomes a node pair e_in -> e_out with arc
capacity w(e); each vertex v in e gets arcs v -> e_in and e_out -> v of
effectively infinite capacity (1 + total weight); forced-in vertices are
contracted into the source and forced-out vertices into the sink.  All
capacities are arbitrary-precision integers; the kernel is Dinic's algorithm.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import Edge, Hypergraph, InputError


class Dinic:
    """Dinic max-flow over integer capacities, with residual cut extraction."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.head: List[List[int]] = [[] for _ in range(n)]
        # edge store: to[i], cap[i]; reverse edge is i ^ 1
        self.to: List[int] = []
        self.cap: List[int] = []

    def add_node(self) -> int:
        self.head.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int, cap: int, rcap: int = 0) -> int:
        idx = len(self.to)
        self.to.append(v)
        self.cap.append(cap)
        self.head[u].append(idx)
        self.to.append(u)
        self.cap.append(rcap)
        self.head[v].append(idx + 1)
        return idx

    def _bfs(self, s: int, t: int) -> Optional[List[int]]:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
        return level if level[t] >= 0 else None

    def _dfs(self, s: int, t: int, f: int, level: List[int], it: List[int]) -> int:
        # Iterative blocking-path search (network can have ~10^3 nodes).
        path: List[int] = []  # edge indices along the current partial path
        u = s
        while True:
            if u == t:
                pushed = min([f] + [self.cap[i] for i in path])
                for i in path:
                    self.cap[i] -= pushed
                    self.cap[i ^ 1] += pushed
                return pushed
            advanced = False
            while it[u] < len(self.head[u]):
                i = self.head[u][it[u]]
                v = self.to[i]
                if self.cap[i] > 0 and level[v] == level[u] + 1:
                    path.append(i)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                level[u] = -1
                if not path:
                    return 0
                i = path.pop()
                u = self.to[i ^ 1]
                it[u] += 1

    def max_flow(self, s: int, t: int, limit: Optional[int] = None) -> int:
        flow = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while True:
                f = self._dfs(s, t, limit - flow if limit is not None else 1 << 400, level, it)
                if f == 0:
                    break
                flow += f
                if limit is not None and flow >= limit:
                    return flow

    def source_side(self, s: int) -> List[bool]:
        """Nodes reachable from s in the residual network (minimal cut side)."""
        seen = [False] * self.n
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and not seen[v]:
                    seen[v] = True
                    q.append(v)
        return seen

    def sink_side(self, t: int) -> List[bool]:
        """Nodes that can reach t in the residual network."""
        seen = [False] * self.n
        seen[t] = True
        q = deque([t])
        while q:
            u = q.popleft()
            for i in self.head[u]:
                # arc to[i]=v has residual capacity on the v->u direction via i^1
                v = self.to[i]
                if self.cap[i ^ 1] > 0 and not seen[v]:
                    seen[v] = True
                    q.append(v)
        return seen


def _build_network(
    h: Hypergraph, S0: FrozenSet[str], T0: FrozenSet[str]
) -> Tuple[Dinic, int, int, Dict[str, int]]:
    verts = h.vertices
    vnode = {v: i + 2 for i, v in enumerate(verts)}
    net = Dinic(2 + len(verts))
    source, sink = 0, 1
    inf = 1 + h.total_weight()
    for v in S0:
        net.add_edge(source, vnode[v], inf)
    for v in T0:
        net.add_edge(vnode[v], sink, inf)
    for e, w in h.sorted_edges():
        e_in = net.add_node()
        e_out = net.add_node()
        net.add_edge(e_in, e_out, w)
        for v in e:
            net.add_edge(vnode[v], e_in, inf)
            net.add_edge(e_out, vnode[v], inf)
    return net, source, sink, vnode


def min_cut_constrained(
    h: Hypergraph,
    S0: Iterable[str],
    T0: Iterable[str],
    minimal: bool = True,
) -> Tuple[int, FrozenSet[str]]:
    """min{d(Z) : S0 <= Z <= V - T0} with a witness.

    The witness is the inclusion-wise minimal minimizer when ``minimal`` is
    true, else the inclusion-wise maximal one.
    """
    s0 = frozenset(S0)
    t0 = frozenset(T0)
    if not s0 or not t0:
        raise InputError("min_cut_constrained requires non-empty forced sides")
    if s0 & t0:
        raise InputError("forced sides overlap")
    for v in s0 | t0:
        if v not in h:
            raise InputError(f"unknown vertex {v!r}")
    net, source, sink, vnode = _build_network(h, s0, t0)
    value = net.max_flow(source, sink)
    if minimal:
        side = net.source_side(source)
        witness = frozenset(v for v, i in vnode.items() if side[i])
    else:
        side = net.sink_side(sink)
        witness = frozenset(v for v, i in vnode.items() if not side[i])
    return value, witness


def brute_force_min_cut(
    h: Hypergraph, S0: Iterable[str], T0: Iterable[str]
) -> Tuple[int, FrozenSet[str]]:
    """Exhaustive reference for min_cut_constrained (guarded to |V| <= 20)."""
    s0 = frozenset(S0)
    t0 = frozenset(T0)
    if not s0 or not t0:
        raise InputError("brute_force_min_cut requires non-empty forced sides")
    if s0 & t0:
        raise InputError("forced sides overlap")
    if len(h.vertices) > 20:
        raise InputError("brute_force_min_cut guarded to |V| <= 20")
    free = [v for v in h.vertices if v not in s0 and v not in t0]
    best_val: Optional[int] = None
    best_set: FrozenSet[str] = frozenset()
    for mask in range(1 << len(free)):
        z = set(s0)
        for i, v in enumerate(free):
            if mask >> i & 1:
                z.add(v)
        zf = frozenset(z)
        val = h.cut_value(zf)
        if best_val is None or (val, len(zf), h.set_key(zf)) < (
            best_val,
            len(best_set),
            h.set_key(best_set),
        ):
            best_val, best_set = val, zf
    assert best_val is not None
    return best_val, best_set


def lambda_value(h: Hypergraph, u: str, v: str) -> int:
    """Local connectivity: value of a minimum {u,v}-cut."""
    if u == v:
        raise InputError("lambda requires two distinct vertices")
    return min_cut_constrained(h, {u}, {v})[0]


def all_pairs_lambda(h: Hypergraph, ground: Optional[Sequence[str]] = None) -> Dict[FrozenSet[str], int]:
    """lambda(u, v) for all unordered pairs of ``ground`` (default: all of V)."""
    vs = list(ground) if ground is not None else list(h.vertices)
    out: Dict[FrozenSet[str], int] = {}
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            out[frozenset((vs[i], vs[j]))] = lambda_value(h, vs[i], vs[j])
    return out


def decompose_undirected_paths(
    h: Hypergraph, u: str, v: str
) -> List[List[object]]:
    """Extract lambda(u, v) pairwise hyperedge-disjoint u-v paths (unit copies).

    Paths alternate vertices and hyperedges: [u, e1, v1, e2, ..., v]; each
    hyperedge copy is used by at most one path.
    """
    if u == v:
        raise InputError("path endpoints must differ")
    net, source, sink, vnode = _build_network(h, frozenset({u}), frozenset({v}))
    value = net.max_flow(source, sink)
    # Node layout: 0 source, 1 sink, 2..1+|V| vertices, then e_in/e_out pairs
    # in canonical edge order.
    edge_of_node: Dict[int, Edge] = {}
    base = 2 + len(h.vertices)
    for idx, (e, _) in enumerate(h.sorted_edges()):
        edge_of_node[base + 2 * idx] = e  # e_in node

    def consume_forward(node: int) -> int:
        """Take one unit of flow out of ``node`` along a forward arc."""
        for i in net.head[node]:
            if i % 2 == 0 and net.cap[i ^ 1] > 0:
                net.cap[i ^ 1] -= 1
                net.cap[i] += 1
                return net.to[i]
        raise AssertionError("flow conservation violated during decomposition")

    node_label: Dict[int, str] = {i: lbl for lbl, i in vnode.items()}
    paths: List[List[object]] = []
    for _ in range(value):
        node = consume_forward(source)  # source -> u
        path: List[object] = [node_label[node]]
        pos: Dict[str, int] = {node_label[node]: 0}
        while node_label.get(node) != v:
            e_in = consume_forward(node)  # vertex -> e_in
            e_out = consume_forward(e_in)  # e_in -> e_out
            nxt = consume_forward(e_out)  # e_out -> vertex
            lbl = node_label[nxt]
            if lbl in pos:
                # flow cycle: discard the loop and resume from its start
                del path[pos[lbl] + 1 :]
                pos = {p: i for i, p in enumerate(path) if isinstance(p, str)}
            else:
                path.append(edge_of_node[e_in])
                path.append(lbl)
                pos[lbl] = len(path) - 1
            node = nxt
        consume_forward(node)  # v -> sink
        paths.append(path)
    return paths


# -- directed (oriented) side ----------------------------------------------

Arc = Tuple[Edge, str, int]  # (hyperedge, head, multiplicity)


def _build_directed_network(
    vertices: Sequence[str], arcs: Sequence[Arc], s_label: str, t_label: str
) -> Tuple[Dinic, int, int, Dict[str, int], List[Tuple[int, Arc]]]:
    vnode = {v: i for i, v in enumerate(vertices)}
    net = Dinic(len(vertices))
    inf = 1 + sum(w for _, _, w in arcs)
    arc_edges: List[Tuple[int, Arc]] = []
    for arc in arcs:
        e, head, w = arc
        e_in = net.add_node()
        e_out = net.add_node()
        idx = net.add_edge(e_in, e_out, w)
        arc_edges.append((idx, arc))
        for v in e:
            if v != head:
                net.add_edge(vnode[v], e_in, inf)
        net.add_edge(e_out, vnode[head], inf)
    return net, vnode[s_label], vnode[t_label], vnode, arc_edges


def hyperarc_disjoint_paths_value(
    vertices: Sequence[str], arcs: Sequence[Arc], t: str, r: str
) -> int:
    """Maximum number of hyperarc-disjoint t -> r paths.

    A hyperarc (e, head) may be entered at any tail vertex of e and exited
    only at its head; each of its w copies is usable once.
    """
    if t == r:
        raise InputError("path endpoints must differ")
    net, s_node, t_node, _, _ = _build_directed_network(vertices, arcs, t, r)
    return net.max_flow(s_node, t_node)


def brute_force_directed_cut(
    vertices: Sequence[str], arcs: Sequence[Arc], t: str, r: str
) -> int:
    """min over X with t in X, r not in X of weight of hyperarcs leaving X."""
    if len(vertices) > 12:
        raise InputError("brute_force_directed_cut guarded to |V| <= 12")
    free = [v for v in vertices if v not in (t, r)]
    best = None
    for mask in range(1 << len(free)):
        x = {t}
        for i, v in enumerate(free):
            if mask >> i & 1:
                x.add(v)
        out = sum(w for e, head, w in arcs if head not in x and (e - {head}) & x)
        if best is None or out < best:
            best = out
    assert best is not None
    return best


def decompose_paths(
    vertices: Sequence[str], arcs: Sequence[Arc], t: str, r: str
) -> List[List[object]]:
    """Flow-decompose a maximum set of hyperarc-disjoint t -> r paths.

    Each path alternates vertices and hyperarcs: [v0, arc1, v1, arc2, ..., vk]
    with v0 = t, vk = r; an arc is represented as its (frozenset, head) pair.
    Returns exactly the max-flow-value many arc-disjoint paths.
    """
    net, s_node, t_node, vnode, arc_edges = _build_directed_network(vertices, arcs, t, r)
    value = net.max_flow(s_node, t_node)
    # Walk the flow itself through the residual network so that every unit of
    # arc flow is consumed at the tail vertex it actually entered from.
    arc_of_in_node: Dict[int, Tuple[Edge, str]] = {}
    for idx, (e, head, _) in arc_edges:
        arc_of_in_node[net.to[idx ^ 1]] = (e, head)  # reverse edge points at e_in
    node_label = {i: v for v, i in vnode.items()}

    def consume_forward(node: int) -> int:
        for i in net.head[node]:
            if i % 2 == 0 and net.cap[i ^ 1] > 0:
                net.cap[i ^ 1] -= 1
                net.cap[i] += 1
                return net.to[i]
        raise AssertionError("flow conservation violated during decomposition")

    paths: List[List[object]] = []
    for _ in range(value):
        path: List[object] = [t]
        pos = {t: 0}
        node = s_node
        while node_label.get(node) != r:
            e_in = consume_forward(node)  # tail vertex -> e_in
            e_out = consume_forward(e_in)  # e_in -> e_out
            nxt = consume_forward(e_out)  # e_out -> head vertex
            lbl = node_label[nxt]
            if lbl in pos:
                # The flow contained a cycle; discard it and resume from the
                # earlier visit of this vertex.
                cut = pos[lbl]
                for v in path[cut + 2 :: 2]:
                    del pos[v]
                del path[cut + 1 :]
            else:
                path.append(arc_of_in_node[e_in])
                path.append(lbl)
                pos[lbl] = len(path) - 1
            node = nxt
        paths.append(path)
    return paths
