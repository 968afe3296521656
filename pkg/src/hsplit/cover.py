"""Weak-to-strong cover transformation.

Given a hypergraph (H, w) whose coverage function weakly covers a symmetric
skew-supermodular function p (b >= p everywhere), repeatedly merge hyperedges
lying in distinct maximal tight sets and peel off finished hyperedges until
nothing remains.  The aggregated peeled hyperedges form a hypergraph (H*, w*)
whose cut function strongly covers p (d >= p everywhere), and the recorded
trace proves H* was obtained from H by merges alone.

Per iteration:
  beta_M = min{b(X) - p(X) : X meets both e and f}, computed pairwise as
           min over u in e, v in f of min{b(X) - p(X) : u, v in X};
  alpha_M = min{beta_M, w(e), w(f)};   merge e, f by alpha_M;
  beta_R = min{b(X) - p(X) : X contains e+f} on the merged hypergraph;
  alpha_R = min{beta_R, w(e+f)};       reduce e+f by alpha_R and emit it;
  p is shifted down by the degree function of the emitted hyperedge and
  contracted by the vertices whose coverage dropped to zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import ContractViolation, Edge, Hypergraph, InputError, ReplayError
from .oracles import NEG_INF, POS_INF, SetFunctionOracle, Value, contract_oracle

TraceOp = Tuple  # ("merge", e, f, alpha) | ("reduce", e, alpha)


@dataclass(frozen=True)
class CoverStep:
    e: Edge
    f: Edge
    w_e: int
    w_f: int
    beta_M: Value
    alpha_M: int
    wM_ef: int
    beta_R: Value
    alpha_R: int
    emitted: Optional[Tuple[Edge, int]]
    Z: FrozenSet[str]


@dataclass(frozen=True)
class PreprocessResult:
    hypergraph: Hypergraph
    oracle: SetFunctionOracle
    carved: List[Tuple[Edge, int]]
    Z: FrozenSet[str]
    trace: List[TraceOp]


@dataclass(frozen=True)
class CoverResult:
    hypergraph: Hypergraph  # the strong cover (H*, w*), on the input vertex set
    trace: List[TraceOp]
    steps: List[CoverStep]
    carved: List[Tuple[Edge, int]]
    depth: int
    input_edge_count: int
    input_vertex_count: int


def _check_no_overcover(val: Value, z: Iterable[str]) -> None:
    if val != NEG_INF and val > 0:
        raise ContractViolation(
            f"weak cover violated: p exceeds coverage on {sorted(z)} by {val}"
        )


def _has_tight_superset(oracle: SetFunctionOracle, H: Hypergraph, X: FrozenSet[str]) -> bool:
    """Does some (p,H,w)-tight set contain X?"""
    ground = frozenset(oracle.ground)
    _, direct = oracle.maximize(X, ground - X, cov=H)
    _check_no_overcover(direct, X)
    if direct == 0:
        return True
    z, val = oracle.maximize(X, (), cov=H, stop_at=0)
    _check_no_overcover(val, z)
    return val == 0


def _min_deficiency_containing(
    oracle: SetFunctionOracle, H: Hypergraph, X: FrozenSet[str], prune_at: Value = POS_INF
) -> Value:
    """min{b(X') - p(X') : X' contains X}, or any value >= prune_at if no better."""
    ground = frozenset(oracle.ground)
    _, dval = oracle.maximize(X, ground - X, cov=H)
    _check_no_overcover(dval, X)
    direct = POS_INF if dval == NEG_INF else -dval
    if direct == 0:
        return 0
    lb = -oracle.upper_bound(X, cov=H)
    if direct <= lb:
        return direct
    if lb >= prune_at:
        return lb
    z, val = oracle.maximize(X, (), cov=H)
    _check_no_overcover(val, z)
    return POS_INF if val == NEG_INF else -val


def _beta_merge(
    oracle: SetFunctionOracle, H: Hypergraph, e: Edge, f: Edge, index: Dict[str, int]
) -> Value:
    best: Value = POS_INF
    for u in sorted(e, key=index.get):
        for v in sorted(f, key=index.get):
            cand = _min_deficiency_containing(oracle, H, frozenset((u, v)), prune_at=best)
            if cand < best:
                best = cand
    return best


def preprocess(H: Hypergraph, p: SetFunctionOracle) -> PreprocessResult:
    """Establish the algorithm's working conditions.

    Every hyperedge that lies in no tight set has weight carved off until it
    does (or disappears); afterwards all zero-coverage vertices are removed
    and p is contracted accordingly.  Carved hyperedges re-join the final
    strong cover unchanged.
    """
    if tuple(H.vertices) != tuple(p.ground):
        raise InputError("hypergraph and oracle ground sets differ")
    work = H
    oracle = p
    carved: List[Tuple[Edge, int]] = []
    trace: List[TraceOp] = []
    for e, _ in H.sorted_edges():
        w = work.weight(e)
        if w == 0:
            continue
        beta = _min_deficiency_containing(oracle, work, e)
        if beta == 0:
            continue
        alpha = w if beta == POS_INF else min(w, beta)
        work = work.reduce(e, alpha)
        carved.append((e, alpha))
        trace.append(("reduce", e, alpha))
        oracle = contract_oracle(oracle, (), Hypergraph(sorted(e, key=H.index), {e: alpha}))
    Z = frozenset(v for v in work.vertices if work.coverage_value({v}) == 0)
    if Z:
        work = work.remove_vertices(Z)
        oracle = contract_oracle(oracle, Z)
    return PreprocessResult(work, oracle, carved, Z, trace)


def weak_to_strong_cover(H: Hypergraph, p: SetFunctionOracle) -> CoverResult:
    """Run the merging loop on an instance satisfying the working conditions."""
    if tuple(H.vertices) != tuple(p.ground):
        raise InputError("hypergraph and oracle ground sets differ")
    n0 = len(H.vertices)
    m0 = len(H.edges)
    limit = m0 + 10 * n0 - 1
    full_index = {v: i for i, v in enumerate(H.vertices)}
    work = H
    oracle = p
    steps: List[CoverStep] = []
    trace: List[TraceOp] = []
    emitted: Dict[Edge, int] = {}
    while work.edges:
        if len(steps) >= max(limit, 1):
            raise ContractViolation(
                f"recursion depth exceeded the bound |E| + 10|V| - 1 = {limit}"
            )
        edges_sorted = work.sorted_edges()
        e = edges_sorted[0][0]
        f: Optional[Edge] = None
        for cand, _ in edges_sorted[1:]:
            if not _has_tight_superset(oracle, work, e | cand):
                f = cand
                break
        if f is None:
            raise ContractViolation(
                "no two hyperedges in distinct maximal tight sets on a non-empty instance"
            )
        w_e, w_f = work.weight(e), work.weight(f)
        beta_M = _beta_merge(oracle, work, e, f, full_index)
        if beta_M != POS_INF and beta_M < 1:
            raise ContractViolation(f"merge slack alpha_M would be {beta_M} < 1")
        alpha_M = min(w_e, w_f) if beta_M == POS_INF else min(beta_M, w_e, w_f)
        work = work.merge(e, f, alpha_M)
        trace.append(("merge", e, f, alpha_M))
        g = e | f
        wM_ef = work.weight(g)
        beta_R = _min_deficiency_containing(oracle, work, g)
        alpha_R = wM_ef if beta_R == POS_INF else min(beta_R, wM_ef)
        emitted_entry: Optional[Tuple[Edge, int]] = None
        extra: Optional[Hypergraph] = None
        if alpha_R > 0:
            work = work.reduce(g, alpha_R)
            trace.append(("reduce", g, alpha_R))
            emitted[g] = emitted.get(g, 0) + alpha_R
            emitted_entry = (g, alpha_R)
            extra = Hypergraph(sorted(g, key=full_index.get), {g: alpha_R})
        Z = frozenset(v for v in work.vertices if work.coverage_value({v}) == 0)
        if Z:
            work = work.remove_vertices(Z)
        if extra is not None or Z:
            oracle = contract_oracle(oracle, Z, extra)
        steps.append(
            CoverStep(e, f, w_e, w_f, beta_M, alpha_M, wM_ef, beta_R, alpha_R, emitted_entry, Z)
        )
    hstar = Hypergraph(H.vertices, emitted)
    return CoverResult(hstar, trace, steps, [], len(steps), m0, n0)


def run_cover(H: Hypergraph, p: SetFunctionOracle) -> CoverResult:
    """Preprocess then cover; carved hyperedges re-join the strong cover."""
    pre = preprocess(H, p)
    inner = weak_to_strong_cover(pre.hypergraph, pre.oracle)
    hstar = Hypergraph(H.vertices, list(inner.hypergraph.edges.items()) + pre.carved)
    return CoverResult(
        hstar,
        pre.trace + inner.trace,
        inner.steps,
        pre.carved,
        inner.depth,
        len(H.edges),
        len(H.vertices),
    )


def replay_trace(H: Hypergraph, trace: Sequence[TraceOp]) -> Tuple[Hypergraph, Hypergraph]:
    """Replay merge/reduce operations; returns (residual, emitted hypergraph).

    The residual must end empty for a valid cover trace; the reduce outputs,
    aggregated, are the produced strong cover.
    """
    work = H
    emitted: Dict[Edge, int] = {}
    for i, op in enumerate(trace):
        try:
            if op[0] == "merge":
                _, e, f, alpha = op
                work = work.merge(e, f, alpha)
            elif op[0] == "reduce":
                _, e, alpha = op
                work = work.reduce(e, alpha)
                ef = frozenset(e)
                emitted[ef] = emitted.get(ef, 0) + alpha
            else:
                raise InputError(f"unknown trace operation {op[0]!r}")
        except InputError as exc:
            raise ReplayError(f"trace step {i + 1} failed: {exc}") from None
    return work, Hypergraph(H.vertices, emitted)


def verify_cover_result(
    H: Hypergraph,
    p_explicit: Callable[[FrozenSet[str]], Value],
    result: CoverResult,
    enumerate_limit: int = 12,
) -> Tuple[bool, List[str]]:
    """Check the three output guarantees; returns (ok, messages)."""
    msgs: List[str] = []
    ok = True
    try:
        residual, emitted = replay_trace(H, result.trace)
        if residual.edges:
            ok = False
            msgs.append("trace replay leaves a non-empty residual")
        elif emitted != result.hypergraph:
            ok = False
            msgs.append("trace replay does not reproduce the output hypergraph")
        else:
            msgs.append("trace replay: ok")
    except ReplayError as exc:
        ok = False
        msgs.append(f"trace replay failed: {exc}")
    n = len(H.vertices)
    if n <= enumerate_limit:
        bad = None
        verts = list(H.vertices)
        hstar = result.hypergraph
        for mask in range(1 << n):
            X = frozenset(verts[i] for i in range(n) if mask >> i & 1)
            if hstar.cut_value(X) < p_explicit(X):
                bad = X
                break
        if bad is not None:
            ok = False
            msgs.append(f"strong cover fails on X = {sorted(bad)}")
        else:
            msgs.append("strong cover: ok")
    else:
        msgs.append("strong cover: skipped (too many vertices to enumerate)")
    surplus = len(result.hypergraph.edges) - result.input_edge_count
    bound = 10 * result.input_vertex_count - 2
    if surplus > bound:
        ok = False
        msgs.append(f"size bound fails: surplus {surplus} > {bound}")
    else:
        msgs.append("size bound: ok")
    return ok, msgs


def project_laminar(
    L: Sequence[Iterable[str]], Z: Iterable[str]
) -> List[FrozenSet[str]]:
    """Project a laminar family off Z: members lose their Z vertices.

    Empty projections are dropped and duplicates are merged; the result is
    again laminar and loses at most 3|Z| members.
    """
    fam = [frozenset(x) for x in L]
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            a, b = fam[i], fam[j]
            if a & b and not (a <= b or b <= a):
                raise InputError(
                    f"family is not laminar: {sorted(a)} and {sorted(b)} cross"
                )
    zs = frozenset(Z)
    seen = set()
    out: List[FrozenSet[str]] = []
    for x in fam:
        y = x - zs
        if y and y not in seen:
            seen.add(y)
            out.append(y)
    return out


# -- serialization ---------------------------------------------------------


def _edge_list(h: Hypergraph, e: Edge) -> List[str]:
    return h.sorted_labels(e)


def _num(v: Value):
    return None if v == POS_INF or v == NEG_INF else v


def cover_result_to_json(H: Hypergraph, result: CoverResult) -> str:
    trace_json = []
    for op in result.trace:
        if op[0] == "merge":
            trace_json.append(
                {
                    "kind": "merge",
                    "e": _edge_list(H, op[1]),
                    "f": _edge_list(H, op[2]),
                    "alpha": op[3],
                }
            )
        else:
            trace_json.append({"kind": "reduce", "e": _edge_list(H, op[1]), "alpha": op[2]})
    steps_json = [
        {
            "e": _edge_list(H, s.e),
            "f": _edge_list(H, s.f),
            "betaM": _num(s.beta_M),
            "alphaM": s.alpha_M,
            "betaR": _num(s.beta_R),
            "alphaR": s.alpha_R,
            "Z": sorted(s.Z, key=H.index),
        }
        for s in result.steps
    ]
    return json.dumps(
        {
            "edges": [
                {"w": w, "vs": _edge_list(H, e)} for e, w in result.hypergraph.sorted_edges()
            ],
            "trace": trace_json,
            "steps": steps_json,
        },
        indent=2,
    )
