"""Set-function oracle layer.

The central abstraction is a maximization oracle for a symmetric
skew-supermodular function p: given forced-in/forced-out vertex sets S, T and
optional cut/coverage penalty hypergraphs, it returns a set Z with
S <= Z <= V - T maximizing

    p(Z) - d_cut(Z) - b_cov(Z)

together with the optimal value.  The concrete oracle for connectivity
requirements realizes p(X) = R(X) - d_J(X) with
R(X) = max{r({u,v}) : u in X, v not in X} and answers queries with one
constrained min-cut per candidate pair.  Two exactness-preserving reductions
keep the number of flow computations small:

- Only pairs forming a maximum-weight spanning tree of r need to be scanned:
  for any cut, a maximum spanning tree contains a maximum-weight crossing
  pair (cycle property), so the scan still attains the optimum.
- Coverage terms b_cov are folded into the cut network by lifting every
  coverage hyperedge with a fresh apex vertex forced to the sink side:
  d(e + {z})(Z) = [e meets Z] for every Z avoiding z.

With ``maximal=True`` the oracle returns the inclusion-wise maximal optimizer
(using maximal min-cut witnesses), which is how maximal tight sets are grown
in a single query.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import ContractViolation, Edge, Hypergraph, InputError
from .flow import all_pairs_lambda, min_cut_constrained

NEG_INF = float("-inf")
POS_INF = float("inf")

Value = object  # int or +-inf float sentinel


class RequirementFunction:
    """Symmetric pairwise requirement r over a fixed ground set.

    Induces R(X) = max{r({u,v}) : u in X, v not in X}, with R(empty)=R(V)=0.
    """

    def __init__(self, ground: Sequence[str], pairs: Dict[FrozenSet[str], int]) -> None:
        self.ground = tuple(ground)
        gset = set(self.ground)
        if len(gset) != len(self.ground):
            raise InputError("duplicate ground vertices")
        self.pairs: Dict[FrozenSet[str], int] = {}
        for p, val in pairs.items():
            pf = frozenset(p)
            if len(pf) != 2 or not pf <= gset:
                raise InputError(f"bad requirement pair {sorted(p)!r}")
            if not isinstance(val, int) or val < 0:
                raise InputError(f"requirement value must be a non-negative integer: {val!r}")
            self.pairs[pf] = val
        # complete missing pairs with 0 so the spanning-tree reduction spans
        for i in range(len(self.ground)):
            for j in range(i + 1, len(self.ground)):
                self.pairs.setdefault(frozenset((self.ground[i], self.ground[j])), 0)

    def value(self, u: str, v: str) -> int:
        return self.pairs.get(frozenset((u, v)), 0)

    def R(self, X: Iterable[str]) -> int:
        xs = frozenset(X)
        best = 0
        for p, val in self.pairs.items():
            if len(p & xs) == 1 and val > best:
                best = val
        return best

    def format(self) -> str:
        index = {v: i for i, v in enumerate(self.ground)}
        lines = []
        for p, val in sorted(self.pairs.items(), key=lambda it: tuple(sorted(index[v] for v in it[0]))):
            u, v = sorted(p, key=index.get)
            lines.append(f"req: {u} {v} {val}")
        return "\n".join(lines) + ("\n" if lines else "")

    @staticmethod
    def parse(text: str, ground: Sequence[str]) -> "RequirementFunction":
        pairs: Dict[FrozenSet[str], int] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if not line.startswith("req:"):
                raise InputError(f"line {lineno}: expected a req: line")
            parts = line[len("req:"):].split()
            if len(parts) != 3:
                raise InputError(f"line {lineno}: req needs two vertices and a value")
            try:
                val = int(parts[2])
            except ValueError:
                raise InputError(f"line {lineno}: bad requirement value {parts[2]!r}") from None
            pairs[frozenset(parts[:2])] = val
        return RequirementFunction(ground, pairs)


def lambda_requirements(g: Hypergraph, exclude: str) -> RequirementFunction:
    """r({u,v}) = lambda_G(u,v) over all pairs of V - {exclude}."""
    if exclude not in g:
        raise InputError(f"unknown vertex {exclude!r}")
    ground = [v for v in g.vertices if v != exclude]
    return RequirementFunction(ground, all_pairs_lambda(g, ground))


def _maximum_spanning_tree(ground: Sequence[str], req: RequirementFunction) -> List[Tuple[str, str, int]]:
    index = {v: i for i, v in enumerate(ground)}
    parent = list(range(len(ground)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = sorted(
        self_pairs(req, index),
        key=lambda t: (-t[2], index[t[0]], index[t[1]]),
    )
    tree: List[Tuple[str, str, int]] = []
    for u, v, val in edges:
        ru, rv = find(index[u]), find(index[v])
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v, val))
    return tree


def self_pairs(req: RequirementFunction, index: Dict[str, int]) -> List[Tuple[str, str, int]]:
    out = []
    for p, val in req.pairs.items():
        u, v = sorted(p, key=index.get)
        out.append((u, v, val))
    return out


class SetFunctionOracle:
    """Interface: maximize p(Z) - d_cut(Z) - b_cov(Z) subject to S <= Z <= V-T."""

    ground: Tuple[str, ...]

    def maximize(
        self,
        S: Iterable[str] = (),
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
        maximal: bool = False,
        stop_at: Optional[Value] = None,
    ) -> Tuple[FrozenSet[str], Value]:
        raise NotImplementedError

    def upper_bound(
        self,
        S: Iterable[str],
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
    ) -> Value:
        """Cheap upper bound on the maximize value (default: none)."""
        return POS_INF

    # -- conveniences shared by implementations ------------------------------

    def _check_sides(self, S: Iterable[str], T: Iterable[str]) -> Tuple[FrozenSet[str], FrozenSet[str]]:
        s, t = frozenset(S), frozenset(T)
        gset = set(self.ground)
        if not s <= gset or not t <= gset:
            raise InputError("forced sides must be subsets of the ground set")
        if s & t:
            raise InputError("forced sides overlap")
        return s, t

    def query_strong(
        self, G0: Optional[Hypergraph], S0: Iterable[str], T0: Iterable[str]
    ) -> Tuple[FrozenSet[str], Value]:
        """The p-max-sc-oracle form: maximize p(Z) - d_G0(Z); returns (Z, p(Z))."""
        z, val = self.maximize(S0, T0, cut=G0)
        if val == NEG_INF:
            return z, NEG_INF
        d0 = G0.cut_value(z & frozenset(G0.vertices)) if G0 is not None else 0
        return z, val + d0

    def evaluate(self, X: Iterable[str]) -> Value:
        """Pointwise p(X) via a fully-forced query."""
        xs = frozenset(X)
        _, val = self.maximize(xs, frozenset(self.ground) - xs)
        return val


def _fresh_apex(taken: Iterable[str]) -> str:
    label = "__z"
    seen = set(taken)
    while label in seen:
        label += "_"
    return label


class RequirementOracle(SetFunctionOracle):
    """Oracle for p(X) = R(X) - d_J(X) built from pairwise requirements."""

    def __init__(self, J: Hypergraph, req: RequirementFunction) -> None:
        self.req = req
        self.ground = req.ground
        gset = set(self.ground)
        if not set(v for e in J.edges for v in e) <= gset:
            raise InputError("J has hyperedges outside the ground set")
        self.J = Hypergraph(self.ground, J.edges)
        self._index = {v: i for i, v in enumerate(self.ground)}
        self.r_max = max(req.pairs.values(), default=0)
        tree = _maximum_spanning_tree(self.ground, req)
        # oriented scan candidates, sorted by decreasing requirement value
        self._scan: List[Tuple[str, str, int]] = []
        for u, v, val in tree:
            self._scan.append((u, v, val))
            self._scan.append((v, u, val))
        self._scan.sort(key=lambda t: (-t[2], self._index[t[0]], self._index[t[1]]))

    def _R_direct(self, X: FrozenSet[str]) -> int:
        best = 0
        for u, v, val in self._scan:
            if (u in X) != (v in X) and val > best:
                best = val
        return best

    def _network(
        self, cut: Optional[Hypergraph], cov: Optional[Hypergraph]
    ) -> Tuple[Hypergraph, Optional[str]]:
        edges: List[Tuple[Iterable[str], int]] = list(self.J.edges.items())
        apex: Optional[str] = None
        verts = list(self.ground)
        if cut is not None:
            edges.extend(cut.edges.items())
        if cov is not None and cov.edges:
            apex = _fresh_apex(self.ground)
            verts.append(apex)
            for e, w in cov.edges.items():
                edges.append((set(e) | {apex}, w))
        return Hypergraph(verts, edges), apex

    def _direct_value(
        self, Z: FrozenSet[str], cut: Optional[Hypergraph], cov: Optional[Hypergraph]
    ) -> Value:
        val: Value = self._R_direct(Z) - self.J.cut_value(Z)
        if cut is not None:
            val -= cut.cut_value(Z & frozenset(cut.vertices))
        if cov is not None:
            val -= cov.coverage_value(Z & frozenset(cov.vertices))
        return val

    def maximize(
        self,
        S: Iterable[str] = (),
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
        maximal: bool = False,
        stop_at: Optional[Value] = None,
    ) -> Tuple[FrozenSet[str], Value]:
        s, t = self._check_sides(S, T)
        gset = frozenset(self.ground)
        if s | t == gset:
            # fully forced: Z = S, no flow computations needed
            return s, self._direct_value(s, cut, cov)
        best_z: Optional[FrozenSet[str]] = None
        best_val: Value = NEG_INF

        def consider(z: FrozenSet[str], val: Value) -> None:
            nonlocal best_z, best_val
            if best_z is None or val > best_val:
                best_z, best_val = z, val
            elif maximal and val == best_val:
                if len(z) > len(best_z) or (
                    len(z) == len(best_z)
                    and tuple(sorted(self._index[v] for v in z))
                    < tuple(sorted(self._index[v] for v in best_z))
                ):
                    best_z = z

        if not s:
            consider(frozenset(), 0)
        if not t:
            consider(gset, self._direct_value(gset, cut, cov))
        if stop_at is not None and best_val >= stop_at:
            return best_z, best_val  # type: ignore[return-value]
        net, apex = self._network(cut, cov)
        sink_extra = {apex} if apex is not None else set()
        for u, v, rval in self._scan:
            if u in t or v in s:
                continue
            if best_z is not None:
                if maximal:
                    if rval < best_val:
                        break
                elif rval <= best_val:
                    break
            cutval, witness = min_cut_constrained(
                net, s | {u}, t | {v} | sink_extra, minimal=not maximal
            )
            consider(witness - sink_extra if apex else witness, rval - cutval)
            if stop_at is not None and best_val >= stop_at:
                return best_z, best_val  # type: ignore[return-value]
        if best_z is None:
            raise ContractViolation("no feasible candidate set in oracle query")
        return best_z, best_val

    def upper_bound(
        self,
        S: Iterable[str],
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
    ) -> Value:
        s, t = self._check_sides(S, T)
        net, apex = self._network(cut, cov)
        sink = set(t)
        if apex is not None:
            sink.add(apex)
        if not s or not sink:
            return POS_INF
        cutval, _ = min_cut_constrained(net, s, sink)
        return self.r_max - cutval


class AdversarialOracle(SetFunctionOracle):
    """Two-valued oracle: p(X) = C(n-1, 2) on {{u}, V - {u}}, -inf elsewhere."""

    def __init__(self, ground: Sequence[str], u: str) -> None:
        if len(ground) < 3:
            raise InputError("adversarial oracle needs at least 3 vertices")
        if u not in ground:
            raise InputError(f"unknown vertex {u!r}")
        self.ground = tuple(ground)
        self.u = u
        n = len(ground)
        self.peak = (n - 1) * (n - 2) // 2
        self.specials = [frozenset({u}), frozenset(ground) - {u}]
        self._index = {v: i for i, v in enumerate(self.ground)}

    def _value_at(
        self, Z: FrozenSet[str], cut: Optional[Hypergraph], cov: Optional[Hypergraph]
    ) -> Value:
        val: Value = self.peak
        if cut is not None:
            val -= cut.cut_value(Z & frozenset(cut.vertices))
        if cov is not None:
            val -= cov.coverage_value(Z & frozenset(cov.vertices))
        return val

    def maximize(
        self,
        S: Iterable[str] = (),
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
        maximal: bool = False,
        stop_at: Optional[Value] = None,
    ) -> Tuple[FrozenSet[str], Value]:
        s, t = self._check_sides(S, T)
        best_z: Optional[FrozenSet[str]] = None
        best_val: Value = NEG_INF
        for z in self.specials:
            if s <= z and not z & t:
                val = self._value_at(z, cut, cov)
                if (
                    best_z is None
                    or val > best_val
                    or (maximal and val == best_val and len(z) > len(best_z))
                ):
                    best_z, best_val = z, val
        if best_z is None:
            return s, NEG_INF
        return best_z, best_val

    def upper_bound(
        self,
        S: Iterable[str],
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
    ) -> Value:
        return self.maximize(S, T, cut, cov)[1]


class ShiftedOracle(SetFunctionOracle):
    """Contracted and degree-shifted view of a base oracle.

    Represents p'(X) = max{ p(X + R) - d_extra(X + R) : R <= removed } over
    the reduced ground set: queries pass through to the base oracle with the
    accumulated extra cut hyperedges added and the removed vertices left
    unconstrained, and the witness is projected back.
    """

    def __init__(
        self,
        base: SetFunctionOracle,
        extra: Optional[Hypergraph] = None,
        removed: Iterable[str] = (),
    ) -> None:
        self.base = base
        self.removed = frozenset(removed)
        self.extra = extra  # hypergraph over the base ground set, or None
        self.ground = tuple(v for v in base.ground if v not in self.removed)

    def shift(self, extra_edges: Optional[Hypergraph], newly_removed: Iterable[str]) -> "ShiftedOracle":
        acc = self.extra
        if extra_edges is not None and extra_edges.edges:
            acc = extra_edges if acc is None else acc + extra_edges
        return ShiftedOracle(self.base, acc, self.removed | frozenset(newly_removed))

    def _combined_cut(self, cut: Optional[Hypergraph]) -> Optional[Hypergraph]:
        if cut is None:
            return self.extra
        if self.extra is None:
            return cut
        return self.extra + cut

    def maximize(
        self,
        S: Iterable[str] = (),
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
        maximal: bool = False,
        stop_at: Optional[Value] = None,
    ) -> Tuple[FrozenSet[str], Value]:
        s, t = self._check_sides(S, T)
        z, val = self.base.maximize(
            s, t, cut=self._combined_cut(cut), cov=cov, maximal=maximal, stop_at=stop_at
        )
        return z - self.removed, val

    def upper_bound(
        self,
        S: Iterable[str],
        T: Iterable[str] = (),
        cut: Optional[Hypergraph] = None,
        cov: Optional[Hypergraph] = None,
    ) -> Value:
        return self.base.upper_bound(S, T, cut=self._combined_cut(cut), cov=cov)


def strong_oracle_for(J: Hypergraph, req: RequirementFunction) -> RequirementOracle:
    """Oracle for p = R - d_J (the connectivity-requirement instantiation)."""
    return RequirementOracle(J, req)


def adversarial_instance_oracle(ground: Sequence[str], u: str) -> AdversarialOracle:
    """The quadratic-lower-bound two-valued oracle (test adversary)."""
    return AdversarialOracle(ground, u)


def contract_oracle(
    p: SetFunctionOracle, Z: Iterable[str], extra: Optional[Hypergraph] = None
) -> SetFunctionOracle:
    """Contract p by Z, optionally subtracting the degree function of extra."""
    if isinstance(p, ShiftedOracle):
        return p.shift(extra, Z)
    return ShiftedOracle(p, extra if (extra is not None and extra.edges) else None, Z)


def weak_oracle_query(
    p: SetFunctionOracle,
    G: Hypergraph,
    S: Iterable[str] = (),
    T: Iterable[str] = (),
) -> Tuple[FrozenSet[str], Value]:
    """Maximize p(Z) - b_G(Z) over S <= Z <= V - T; returns (Z, p(Z)).

    Implemented by the lifting reduction to strong queries: adding a vertex u
    to every hyperedge of G turns the coverage function into a cut function
    for all sets avoiding u.  With T non-empty one strong query suffices;
    otherwise the query fans out over every choice of the excluded vertex,
    with Z = V as an extra candidate.
    """
    s, t = frozenset(S), frozenset(T)
    gset = frozenset(p.ground)
    if s & t:
        raise InputError("forced sides overlap")
    if not s <= gset or not t <= gset:
        raise InputError("forced sides must be subsets of the ground set")
    index = {v: i for i, v in enumerate(p.ground)}

    def lifted(u: str) -> Hypergraph:
        return Hypergraph(p.ground, [(set(e) | {u}, w) for e, w in G.edges.items()])

    def objective(z: FrozenSet[str], pval: Value) -> Value:
        return pval - G.coverage_value(z & frozenset(G.vertices)) if pval != NEG_INF else NEG_INF

    if t:
        excl = min(t, key=index.get)
        z, pval = p.query_strong(lifted(excl), s, t)
        return z, pval
    best: Optional[Tuple[FrozenSet[str], Value, Value]] = None
    for u in p.ground:
        if u in s:
            continue
        z, pval = p.query_strong(lifted(u), s, {u})
        obj = objective(z, pval)
        if best is None or obj > best[2]:
            best = (z, pval, obj)
    pv = p.evaluate(gset)
    obj = objective(gset, pv)
    if best is None or obj > best[2]:
        best = (gset, pv, obj)
    return best[0], best[1]


def tight_set_containing(
    p: SetFunctionOracle,
    H: Hypergraph,
    X: Iterable[str],
    excluded: Iterable[str] = (),
) -> Optional[FrozenSet[str]]:
    """The maximal (p,H,w)-tight set containing X and avoiding ``excluded``."""
    z, val = p.maximize(frozenset(X), frozenset(excluded), cov=H, maximal=True)
    if val == 0 and z:
        return z
    if val != NEG_INF and val > 0:
        raise ContractViolation(
            f"weak cover violated: p exceeds coverage on {sorted(z)} by {val}"
        )
    return None


def maximal_tight_sets(p: SetFunctionOracle, H: Hypergraph) -> List[FrozenSet[str]]:
    """The family of inclusion-wise maximal (p,H,w)-tight sets.

    Under the algorithm's working conditions (every hyperedge inside a tight
    set, positive coverage at every vertex) the members are pairwise disjoint
    and are found one per query: each query returns the inclusion-maximal
    zero-deficiency set avoiding the members already found.
    """
    found: List[FrozenSet[str]] = []
    excluded: FrozenSet[str] = frozenset()
    while True:
        z, val = p.maximize((), excluded, cov=H, maximal=True)
        if val != NEG_INF and val > 0:
            raise ContractViolation(
                f"weak cover violated: p exceeds coverage on {sorted(z)} by {val}"
            )
        if val != 0 or not z:
            break
        found.append(z)
        excluded |= z
        if excluded == frozenset(p.ground):
            break
    index = {v: i for i, v in enumerate(p.ground)}
    found.sort(key=lambda z: tuple(sorted(index[v] for v in z)))
    return found
