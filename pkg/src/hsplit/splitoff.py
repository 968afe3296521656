"""Local-connectivity-preserving complete h-splitting-off at a vertex.

Pipeline: project the hyperedges incident to s onto V - {s} (coverage part H),
keep the untouched hyperedges as J, compute pairwise requirements
r({u,v}) = lambda(u,v) on the input, and run the weak-to-strong cover for
p = R - d_J.  The strong cover H*, added to J, replaces the incident
hyperedges; every merge/reduce of the cover corresponds to an h-merge/h-trim
at s, which yields a replayable script.

Singleton hyperedges {s} cannot be reconfigured by h-operations and are left
in place; they contribute to the degree of s but to no cut, so d(s) = 0 still
holds afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .core import ContractViolation, Edge, Hypergraph, InputError, ReplayError
from .cover import CoverResult, run_cover
from .flow import lambda_value
from .oracles import RequirementOracle, lambda_requirements

SplitOp = Tuple  # ("hmerge", e, f, alpha) | ("htrim", e, alpha); e, f contain s


@dataclass(frozen=True)
class SplitOffScript:
    vertex: str
    ops: List[SplitOp]


@dataclass(frozen=True)
class SplitOffResult:
    hypergraph: Hypergraph  # (G*, c*) over the same vertex set, s isolated
    script: SplitOffScript
    extra_edges: int  # |E*| - |E|
    cover: CoverResult


def complete_h_splitting_off(g: Hypergraph, s: str) -> SplitOffResult:
    if s not in g:
        raise InputError(f"unknown vertex {s!r}")
    ground = [v for v in g.vertices if v != s]
    incident: List[Tuple[Edge, int]] = []
    j_edges: List[Tuple[Edge, int]] = []
    singleton_s = 0
    for e, w in g.edges.items():
        if s not in e:
            j_edges.append((e, w))
        elif len(e) == 1:
            singleton_s = w
        else:
            incident.append((e - {s}, w))
    H = Hypergraph(ground, incident)
    J = Hypergraph(ground, j_edges)
    req = lambda_requirements(g, s)
    oracle = RequirementOracle(J, req)
    cover = run_cover(H, oracle)

    ops: List[SplitOp] = []
    for op in cover.trace:
        if op[0] == "merge":
            _, e, f, alpha = op
            if e & f:
                raise ContractViolation(
                    "merged hyperedges overlap; the h-merge attribution is invalid"
                )
            ops.append(("hmerge", e | {s}, f | {s}, alpha))
        else:
            _, e, alpha = op
            ops.append(("htrim", e | {s}, alpha))
    script = SplitOffScript(s, ops)

    out_edges: List[Tuple[Edge, int]] = list(j_edges)
    out_edges.extend(cover.hypergraph.edges.items())
    if singleton_s:
        out_edges.append((frozenset({s}), singleton_s))
    gstar = Hypergraph(g.vertices, out_edges)
    return SplitOffResult(gstar, script, len(gstar.edges) - len(g.edges), cover)


def script_to_G_star(g: Hypergraph, script: SplitOffScript) -> Hypergraph:
    """Replay an h-merge/h-trim script against g."""
    s = script.vertex
    if s not in g:
        raise ReplayError(f"split vertex {s!r} is not in the hypergraph")
    work = g
    for i, op in enumerate(script.ops):
        try:
            if op[0] == "hmerge":
                _, e, f, alpha = op
                work = work.h_merge_at(s, e, f, alpha)
            elif op[0] == "htrim":
                _, e, alpha = op
                work = work.h_trim_at(s, e, alpha)
            else:
                raise InputError(f"unknown script operation {op[0]!r}")
        except InputError as exc:
            raise ReplayError(f"script step {i + 1} failed: {exc}") from None
    return work


def verify_local_connectivity(
    g: Hypergraph, gstar: Hypergraph, s: str
) -> Tuple[bool, List[str], Optional[Tuple[str, str]]]:
    """Check d(s) = 0 and lambda preservation on all pairs of V - {s}."""
    if set(g.vertices) != set(gstar.vertices):
        raise InputError("vertex sets differ")
    if s not in g:
        raise InputError(f"unknown vertex {s!r}")
    msgs: List[str] = []
    if gstar.cut_value({s}) != 0:
        msgs.append(f"vertex {s} is not split off: d({s}) = {gstar.cut_value({s})}")
        return False, msgs, None
    others = [v for v in g.vertices if v != s]
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            u, v = others[i], others[j]
            before = lambda_value(g, u, v)
            after = lambda_value(gstar, u, v)
            if before != after:
                msgs.append(f"lambda({u},{v}) changed: {before} -> {after}")
                return False, msgs, (u, v)
    msgs.append("verified: ok")
    return True, msgs, None


# -- script text format ----------------------------------------------------


def format_script(h: Hypergraph, script: SplitOffScript) -> str:
    lines = [f"vertex: {script.vertex}"]
    for op in script.ops:
        if op[0] == "hmerge":
            _, e, f, alpha = op
            lines.append(
                f"hmerge {alpha} | {' '.join(h.sorted_labels(e))} | {' '.join(h.sorted_labels(f))}"
            )
        else:
            _, e, alpha = op
            lines.append(f"htrim {alpha} | {' '.join(h.sorted_labels(e))}")
    return "\n".join(lines) + "\n"


def parse_script(text: str) -> SplitOffScript:
    vertex: Optional[str] = None
    ops: List[SplitOp] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertex:"):
            vertex = line[len("vertex:"):].strip()
        elif line.startswith("hmerge") or line.startswith("htrim"):
            kind, rest = line.split(None, 1)
            parts = [p.strip() for p in rest.split("|")]
            try:
                alpha = int(parts[0])
            except ValueError:
                raise InputError(f"line {lineno}: bad weight {parts[0]!r}") from None
            if kind == "hmerge":
                if len(parts) != 3:
                    raise InputError(f"line {lineno}: hmerge needs two hyperedges")
                ops.append(("hmerge", frozenset(parts[1].split()), frozenset(parts[2].split()), alpha))
            else:
                if len(parts) != 2:
                    raise InputError(f"line {lineno}: htrim needs one hyperedge")
                ops.append(("htrim", frozenset(parts[1].split()), alpha))
        else:
            raise InputError(f"line {lineno}: unrecognized line {line!r}")
    if vertex is None:
        raise InputError("missing vertex line")
    return SplitOffScript(vertex, ops)
