"""Steiner rooted orientation walk-through.

Orients a hypergraph (each unit copy of a hyperedge gets a head vertex) so
that every terminal keeps k hyperarc-disjoint paths to the root, then checks
the paths explicitly with a Menger-style extraction.
"""

from hsplit import Hypergraph, menger_paths, steiner_rooted_orientation

# A doubled triangle plus a Steiner (non-terminal) vertex q hanging off it.
h = Hypergraph(
    "abcq",
    {
        frozenset("ab"): 2,
        frozenset("bc"): 2,
        frozenset("ac"): 2,
        frozenset("aq"): 1,
    },
)
terminals = {"a", "b", "c"}
root, k = "a", 1

oriented = steiner_rooted_orientation(h, terminals, root, k)
print("orientation (one head per unit copy):")
print(oriented.format(), end="")

for t in sorted(terminals - {root}):
    got = oriented.paths_value(t, root)
    assert got >= k
    print(f"hyperarc-disjoint {t} -> {root} paths: {got} (need >= {k})")

print("\nundirected Menger paths b -> a in the input:")
for path in menger_paths(h, "b", "a"):
    pretty = " ".join(
        "{%s}" % ",".join(sorted(x)) if isinstance(x, frozenset) else x for x in path
    )
    print(" ", pretty)
