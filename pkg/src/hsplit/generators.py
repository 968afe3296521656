"""Deterministic benchmark instance generators."""

from __future__ import annotations

from typing import Tuple

from .core import Hypergraph, InputError
from .oracles import AdversarialOracle


def star_instance(n: int) -> Hypergraph:
    """Star on n + 1 vertices: center s, leaves v1..vn, weights 2^(n-1) - 1.

    The binary-encoded weights make any weight-unary merging strategy
    infeasible while the strongly polynomial algorithm finishes instantly.
    """
    if n < 1:
        raise InputError("star needs at least one leaf")
    w = 2 ** (n - 1) - 1 if n > 1 else 1
    leaves = [f"v{i}" for i in range(1, n + 1)]
    return Hypergraph(["s"] + leaves, {frozenset(("s", leaf)): w for leaf in leaves})


def quadratic_surplus_instance(n: int) -> Tuple[Hypergraph, AdversarialOracle]:
    """The quadratic-lower-bound cover instance on n vertices.

    Weak cover: singleton {u} with weight C(n-1, 2) plus all pairs of the
    remaining vertices with weight 1.  The unique strong cover consists of
    the C(n-1, 2) triangles {u, a, b}, so the output has a quadratic number
    of extra hyperedges.
    """
    if n < 3:
        raise InputError("instance needs at least 3 vertices")
    others = [f"a{i}" for i in range(1, n)]
    ground = ["u"] + others
    peak = (n - 1) * (n - 2) // 2
    edges = {frozenset(("u",)): peak}
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            edges[frozenset((others[i], others[j]))] = 1
    return Hypergraph(ground, edges), AdversarialOracle(ground, "u")
