"""End-to-end acceptance suite.

Each criterion runs as one test and prints a single `criterion N ...: pass`
(or FAIL) line, emitted past pytest's output capture so the lines always
appear on the terminal as the criteria complete.
"""

import contextlib
import functools
import random
import sys
import time

import pytest

import conftest

from hsplit.apps import (
    OrientedHypergraph,
    apply_pinching,
    decompose_k_ec,
    is_k_hyperedge_connected,
    menger_paths,
    orient_rooted_k,
    steiner_rooted_orientation,
    weak_partition_connectivity,
)
from hsplit.core import Hypergraph, PreconditionError
from hsplit.cover import project_laminar, replay_trace, weak_to_strong_cover
from hsplit.flow import lambda_value, min_cut_constrained
from hsplit.generators import quadratic_surplus_instance, star_instance
from hsplit.oracles import POS_INF, RequirementOracle, weak_oracle_query
from hsplit.splitoff import complete_h_splitting_off, script_to_G_star

import referee
from test_apps import brute_orientation_exists
from test_oracles import random_requirement

RESULTS = {"steps": [], "splitoff_runs": 0}


def _uncaptured():
    capman = getattr(conftest, "CAPMANAGER", None)
    if capman is not None:
        return capman.global_and_fixture_disabled()
    return contextlib.nullcontext()


def criterion(n, desc):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                with _uncaptured():
                    print(f"criterion {n} ({desc}): FAIL", file=sys.stderr)
                raise
            with _uncaptured():
                print(f"criterion {n} ({desc}): pass")

        return wrapper

    return deco


def mask_of(ground, xs):
    vidx = {v: i for i, v in enumerate(ground)}
    return sum(1 << vidx[v] for v in xs)


@criterion(1, "oracle equivalence vs brute force, 500 instances")
def test_criterion_01():
    rng = random.Random(101)
    start = time.monotonic()
    for _ in range(500):
        n = rng.randint(2, 10)
        ground = referee.LABELS[:n]
        H = referee.random_hypergraph(rng, max_v=n, max_e=14, max_w=5)
        H = Hypergraph(ground, H.edges)
        J = referee.random_hypergraph(rng, max_v=n, max_e=6, max_w=5)
        J = Hypergraph(ground, J.edges)
        req = random_requirement(rng, ground, max_r=8)
        oracle = RequirementOracle(J, req)
        p_arr = referee.requirement_table(ground, req, J)
        d_H = referee.cut_table(H)
        b_H = referee.coverage_table(H)

        # min-cut oracle
        u, v = rng.sample(ground, 2)
        val, wit = min_cut_constrained(H, {u}, {v})
        assert val == referee.brute_lambda(H, u, v, d_H)
        assert H.cut_value(wit) == val and u in wit and v not in wit

        # forced sides for the maximization oracles
        k = rng.randint(0, n - 1)
        forced = rng.sample(ground, k)
        cutpt = rng.randint(0, k)
        S, T = frozenset(forced[:cutpt]), frozenset(forced[cutpt:])
        smask, tmask = mask_of(ground, S), mask_of(ground, T)

        # strong maximization oracle: p - d_H
        z, value = oracle.maximize(S, T, cut=H)
        best, opt = referee.brute_maximize_aligned(n, p_arr, smask, tmask, d_arr=d_H)
        assert value == best and opt[mask_of(ground, z)]

        # weak maximization oracle: p - b_H
        z, pval = weak_oracle_query(oracle, H, S, T)
        best, opt = referee.brute_maximize_aligned(n, p_arr, smask, tmask, b_arr=b_H)
        assert pval - H.coverage_value(z) == best and opt[mask_of(ground, z)]
    assert time.monotonic() - start < 60


@criterion(2, "splitting-off correctness, 500 instances")
def test_criterion_02():
    rng = random.Random(102)
    start = time.monotonic()
    runs = []
    for _ in range(500):
        g = referee.random_connected_hypergraph(rng, max_v=10, max_e=14, max_w=5)
        s = rng.choice(list(g.vertices))
        result = complete_h_splitting_off(g, s)
        gstar = result.hypergraph
        assert gstar.cut_value({s}) == 0
        aligned = Hypergraph(g.vertices, gstar.edges)
        before = referee.cut_table(g)
        after = referee.cut_table(aligned)
        others = [v for v in g.vertices if v != s]
        for i in range(len(others)):
            for j in range(i + 1, len(others)):
                u, v = others[i], others[j]
                assert referee.brute_lambda(g, u, v, before) == referee.brute_lambda(
                    aligned, u, v, after
                )
        assert script_to_G_star(g, result.script) == gstar
        runs.append((g, result))
        RESULTS["steps"].extend(result.cover.steps)
    RESULTS["splitoff_runs"] = runs
    assert time.monotonic() - start < 120


@criterion(3, "size and depth bounds on every splitting-off run")
def test_criterion_03():
    runs = RESULTS.get("splitoff_runs") or []
    assert runs, "criterion 2 must run first"
    for g, result in runs:
        n = len(g.vertices)
        assert len(result.hypergraph.edges) - len(g.edges) <= 10 * n - 2
        assert result.cover.depth <= len(g.edges) + 10 * n - 1


@criterion(4, "strong polynomiality: star n=40 with 2^39-1 weights")
def test_criterion_04():
    g = star_instance(40)
    start = time.monotonic()
    result = complete_h_splitting_off(g, "s")
    elapsed = time.monotonic() - start
    assert elapsed < 10, f"took {elapsed:.1f}s"
    assert result.hypergraph.cut_value({"s"}) == 0
    assert len(result.hypergraph.edges) <= len(g.edges) + 10 * len(g.vertices)
    residual, emitted = replay_trace(
        Hypergraph(
            [v for v in g.vertices if v != "s"],
            {e - {"s"}: w for e, w in g.edges.items()},
        ),
        result.cover.trace,
    )
    assert not residual.edges
    RESULTS["steps"].extend(result.cover.steps)


@criterion(5, "quadratic-surplus instances: exact triangle covers")
def test_criterion_05():
    for n in range(4, 9):
        h, oracle = quadratic_surplus_instance(n)
        result = weak_to_strong_cover(h, oracle)
        others = [v for v in h.vertices if v != "u"]
        expected = {
            frozenset(("u", a, b)): 1
            for i, a in enumerate(others)
            for b in others[i + 1 :]
        }
        assert result.hypergraph.edges == expected
        new_edges = set(result.hypergraph.edges) - set(h.edges)
        assert len(new_edges) == (n - 1) * (n - 2) // 2
        RESULTS["steps"].extend(result.steps)


@criterion(6, "laminar projection properties, 10^4 trials")
def test_criterion_06():
    rng = random.Random(106)
    for _ in range(10_000):
        n = rng.randint(1, 16)
        verts = referee.LABELS[:n]
        fam = referee.random_laminar_family(rng, verts)
        Z = frozenset(rng.sample(verts, rng.randint(0, n)))
        out = project_laminar(fam, Z)
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                a, b = out[i], out[j]
                assert not a & b or a <= b or b <= a
        assert len(fam) <= len(out) + 3 * len(Z)


@criterion(7, "constructive characterization round trips, 200 instances")
def test_criterion_07():
    rng = random.Random(107)
    for _ in range(200):
        k = rng.randint(1, 3)
        n = rng.randint(2, 8)
        h = referee.random_k_ec_hypergraph(rng, k, max_v=n, max_e=8, max_w=3)
        script = decompose_k_ec(h, k)
        work = Hypergraph([script.base_vertex])
        for op in script.ops:
            if op[0] == "add":
                work = work + Hypergraph(work.vertices, {frozenset(op[1]): 1})
            else:
                work = apply_pinching(work, op[1])
                assert work.degree(op[1].s) == k
            assert is_k_hyperedge_connected(work, k)[0]
        assert work == h


@criterion(8, "weak partition connectivity: triangle + 200 2k-EC instances")
def test_criterion_08():
    t = Hypergraph("abc", {frozenset("ab"): 1, frozenset("bc"): 1, frozenset("ac"): 1})
    assert is_k_hyperedge_connected(t, 2)[0]
    assert weak_partition_connectivity(t, 1) == (True, None)
    verdict, witness = weak_partition_connectivity(t, 2)
    assert verdict is False and witness is not None
    with _uncaptured():
        print(
            "  triangle is 2-hyperedge-connected and 1-wpc but not 2-wpc; "
            "witness partition: "
            + " | ".join("".join(sorted(p)) for p in witness)
        )
    rng = random.Random(108)
    for trial in range(200):
        k = rng.randint(1, 3)
        n = 10 if trial % 40 == 0 else rng.randint(3, 8)
        h = referee.random_k_ec_hypergraph(rng, 2 * k, max_v=n, max_e=8, max_w=3)
        verdict, _ = weak_partition_connectivity(h, k, exact_limit=10)
        assert verdict is True


@criterion(9, "Steiner rooted orientations, 100 instances + triangle rejection")
def test_criterion_09():
    start = time.monotonic()
    t = Hypergraph("abc", {frozenset("ab"): 1, frozenset("bc"): 1, frozenset("ac"): 1})
    with pytest.raises(PreconditionError):
        steiner_rooted_orientation(t, "abc", "a", 2)
    assert orient_rooted_k(t, "a", 2) is None
    assert not brute_orientation_exists(t, "a", 2)

    rng = random.Random(109)
    for trial in range(100):
        k = 2 if trial % 5 == 0 else 1
        n = rng.randint(3, 9)
        if trial % 3 == 0:
            # pure graph input: edges of size two only
            h = referee.random_hypergraph(rng, max_v=n, max_e=10, max_w=3)
            h = Hypergraph(
                h.vertices, {e: w for e, w in h.edges.items() if len(e) == 2}
            )
        else:
            h = referee.random_hypergraph(rng, max_v=n, max_e=10, max_w=3)
        verts = list(h.vertices)
        nt = rng.randint(2, min(4, len(verts)))
        terminals = rng.sample(verts, nt)
        root = terminals[0]
        # boost to Steiner 2k-hyperedge-connectivity
        edges = dict(h.edges)
        while True:
            cand = Hypergraph(verts, edges)
            bad = None
            for i in range(nt):
                for j in range(i + 1, nt):
                    if lambda_value(cand, terminals[i], terminals[j]) < 2 * k:
                        bad = (terminals[i], terminals[j])
                        break
                if bad:
                    break
            if bad is None:
                h = cand
                break
            e = frozenset(bad)
            edges[e] = edges.get(e, 0) + 1
        oh = steiner_rooted_orientation(h, terminals, root, k)
        assert oh.underlying() == h
        for v in terminals:
            if v != root:
                assert oh.paths_value(v, root) >= k
    assert time.monotonic() - start < 300


@criterion(10, "Menger path extraction, 300 instances")
def test_criterion_10():
    rng = random.Random(110)
    for _ in range(300):
        h = referee.random_hypergraph(rng, max_v=8, max_e=10, max_w=4)
        u, v = rng.sample(list(h.vertices), 2)
        paths = menger_paths(h, u, v)
        assert len(paths) == lambda_value(h, u, v)
        used = {}
        for path in paths:
            assert path[0] == u and path[-1] == v
            for i in range(1, len(path), 2):
                e = path[i]
                assert path[i - 1] in e and path[i + 1] in e
                used[e] = used.get(e, 0) + 1
            verts = path[0::2]
            assert len(set(verts)) == len(verts)
        for e, cnt in used.items():
            assert cnt <= h.weight(e)


@criterion(11, "per-step merge-loop invariants across criteria 2-5")
def test_criterion_11():
    steps = RESULTS["steps"]
    assert len(steps) > 500, "criteria 2, 4 and 5 must run first"
    for s in steps:
        assert s.alpha_M >= 1
        # alpha_M saturates the merge bound
        if s.beta_M == POS_INF:
            assert s.alpha_M == min(s.w_e, s.w_f)
        else:
            assert s.alpha_M == min(s.beta_M, s.w_e, s.w_f)
        # merged-edge weight bookkeeping: e+f gained exactly alpha_M
        assert s.wM_ef >= s.alpha_M
        # alpha_R saturates the reduce bound
        if s.beta_R == POS_INF:
            assert s.alpha_R == s.wM_ef
        else:
            assert s.alpha_R == min(s.beta_R, s.wM_ef)
        assert (s.emitted is not None) == (s.alpha_R > 0)
        if s.emitted is not None:
            assert s.emitted == (s.e | s.f, s.alpha_R)
        # A void reduction step always means the merge was beta-limited.
        if s.alpha_R == 0:
            assert s.alpha_M == s.beta_M
        # Conversely, a beta-limited merge forces a void reduction whenever
        # both chosen hyperedges survive the merge with positive weight
        # (beta_M strictly below both weights).  When the merge fully
        # consumes e or f the converse can fail: with a single merged edge
        # left covering the witness sets, no positive-weight hyperedge
        # separates the two maximal tight sets and the union need not be
        # tight, so beta_R may stay positive.
        if (
            s.beta_M != POS_INF
            and s.alpha_M == s.beta_M
            and s.beta_M < min(s.w_e, s.w_f)
        ):
            assert s.alpha_R == 0
