"""Independent brute-force oracles for every definitional notion, plus the
random graph generators used by the test suites and the ``gen`` command.

Everything here is deliberately slow and self-contained: reachability and
connected-components helpers are local, and nothing imports the fast-path
modules, so an oracle can never accidentally agree with a bug by sharing
code with it.  Size guards raise instead of running forever.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from .graph import DiGraph, GraphError, MixedGraph, Partition, UGraph

SUBSET_SEARCH_EDGE_LIMIT = 10
ORIENTATION_EDGE_LIMIT = 12


# ---------------------------------------------------------------------------
# local helpers (reachability / components, edge-list based)
# ---------------------------------------------------------------------------


def _adj_of(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    return adj


def _reach_adj(adj: Sequence[Sequence[int]], src: int) -> set[int]:
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _reach(n: int, edges: Sequence[tuple[int, int]], src: int) -> set[int]:
    return _reach_adj(_adj_of(n, edges), src)


def _scc_sets(n: int, edges: Sequence[tuple[int, int]]) -> list[frozenset[int]]:
    fwd_adj = _adj_of(n, edges)
    bwd_adj = _adj_of(n, [(v, u) for u, v in edges])
    comps: dict[frozenset[int], None] = {}
    done: set[int] = set()
    for v in range(n):
        if v in done:
            continue
        comp = frozenset(_reach_adj(fwd_adj, v) & _reach_adj(bwd_adj, v))
        done.update(comp)
        comps.setdefault(comp, None)
    return list(comps)


def _scc_partition(n: int, edges: Sequence[tuple[int, int]]) -> Partition:
    return Partition(_scc_sets(n, edges))


def _components(n: int, edges: Sequence[tuple[int, int]]) -> Partition:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    return Partition.from_labels({v: find(v) for v in range(n)})


def _is_strongly_connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    if n <= 1:
        return True
    return len(_reach(n, edges, 0)) == n and len(_reach(n, [(v, u) for u, v in edges], 0)) == n


def _undirected_of(edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    # simple underlying edge set as sorted pairs
    return sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})


# ---------------------------------------------------------------------------
# directed oracles
# ---------------------------------------------------------------------------


def oracle_scc(g: DiGraph) -> Partition:
    return _scc_partition(g.n, g.edges)


def _tscc_by_characterization(n: int, edges: Sequence[tuple[int, int]]) -> Partition:
    """TSCCs via 2ecc-of-underlying, with a brute-force 2ecc subroutine."""
    blocks: list[list[int]] = []
    for comp in _scc_sets(n, edges):
        inner = [(u, v) for u, v in edges if u in comp and v in comp]
        und = _undirected_of(inner)
        part = _components(n, und).restricted(comp)
        for i in range(len(und)):
            rest = und[:i] + und[i + 1 :]
            part = part.refine(_components(n, rest).restricted(comp))
        blocks.extend(list(b) for b in part)
    return Partition(blocks)


def _tscc_by_subsets(n: int, edges: Sequence[tuple[int, int]]) -> Partition:
    """Definitional TSCCs: twin-free spanning subgraph search per SCC."""
    comps = _scc_sets(n, edges)
    together: dict[tuple[int, int], bool] = {}
    for comp in comps:
        inner = [(u, v) for u, v in edges if u in comp and v in comp]
        if len(inner) > SUBSET_SEARCH_EDGE_LIMIT:
            raise GraphError(
                f"subset-search TSCC oracle limited to m<={SUBSET_SEARCH_EDGE_LIMIT}"
            )
        for size in range(len(inner) + 1):
            for sub in itertools.combinations(range(len(inner)), size):
                chosen = [inner[i] for i in sub]
                pairs = {(u, v) for u, v in chosen}
                if any((v, u) in pairs for u, v in pairs if u != v):
                    continue  # twin pair present
                for cset in _scc_sets(n, chosen):
                    cc = sorted(cset & comp)
                    for a, b in itertools.combinations(cc, 2):
                        together[(a, b)] = True
    # union-find over the established pairs
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in together:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    return Partition.from_labels({v: find(v) for v in range(n)})


def oracle_tscc_definitional(g: DiGraph) -> Partition:
    """Exhaustive twin-free strongly-connected spanning-subgraph search.

    Falls back to the 2ecc-of-underlying characterization when an SCC has
    more than SUBSET_SEARCH_EDGE_LIMIT internal edges.
    """
    fits = True
    for comp in _scc_sets(g.n, g.edges):
        if sum(1 for u, v in g.edges if u in comp and v in comp) > SUBSET_SEARCH_EDGE_LIMIT:
            fits = False
            break
    if fits:
        return _tscc_by_subsets(g.n, g.edges)
    return _tscc_by_characterization(g.n, g.edges)


def _tscc_oracle(n: int, edges: Sequence[tuple[int, int]]) -> Partition:
    return _tscc_by_characterization(n, edges)


def oracle_2escc(g: DiGraph) -> Partition:
    """Refine the SCC partition by scc(g minus e) for every edge e."""
    part = _scc_partition(g.n, g.edges)
    for i in range(g.m):
        rest = [e for j, e in enumerate(g.edges) if j != i]
        part = part.refine(_scc_partition(g.n, rest))
    return part


def oracle_2etscc(g: DiGraph) -> Partition:
    """Refine the TSCC partition by tscc(g minus e) for every edge e."""
    part = _tscc_oracle(g.n, g.edges)
    for i in range(g.m):
        rest = [e for j, e in enumerate(g.edges) if j != i]
        part = part.refine(_tscc_oracle(g.n, rest))
    return part


def oracle_strong_bridges(g: DiGraph) -> tuple[int, ...]:
    base = len(_scc_sets(g.n, g.edges))
    out = []
    for i in range(g.m):
        rest = [e for j, e in enumerate(g.edges) if j != i]
        if len(_scc_sets(g.n, rest)) > base:
            out.append(i)
    return tuple(out)


def oracle_twinless_strong_bridges(g: DiGraph) -> tuple[int, ...]:
    base = len(_tscc_oracle(g.n, g.edges))
    out = []
    for i in range(g.m):
        rest = [e for j, e in enumerate(g.edges) if j != i]
        if len(_tscc_oracle(g.n, rest)) > base:
            out.append(i)
    return tuple(out)


def oracle_dominators(g: DiGraph, s: int) -> dict[int, int]:
    """idom by vertex removal: u dominates v iff v is unreachable without u."""
    doms: dict[int, set[int]] = {}
    for v in range(g.n):
        if v == s:
            continue
        dset = {s, v}
        for u in range(g.n):
            if u in (s, v):
                continue
            rest = [e for e in g.edges if u not in e]
            if v not in _reach(g.n, rest, s):
                dset.add(u)
        doms[v] = dset
    idom = {}
    for v, dset in doms.items():
        proper = dset - {v}
        # immediate dominator = the proper dominator dominated by all others
        idom[v] = max(proper, key=lambda u: len(doms.get(u, {s})) if u != s else 1)
    return idom


def oracle_flow_bridges(g: DiGraph, s: int) -> tuple[int, ...]:
    out = []
    for i, (_, v) in enumerate(g.edges):
        rest = [e for j, e in enumerate(g.edges) if j != i]
        if v not in _reach(g.n, rest, s):
            out.append(i)
    return tuple(out)


# ---------------------------------------------------------------------------
# undirected oracles
# ---------------------------------------------------------------------------


def oracle_2ecc(g: UGraph) -> Partition:
    """Same block iff connected after deleting any single edge."""
    part = _components(g.n, g.edges)
    for i in range(g.m):
        rest = [e for j, e in enumerate(g.edges) if j != i]
        part = part.refine(_components(g.n, rest))
    return part


def oracle_bridges(g: UGraph) -> tuple[int, ...]:
    base = len(_components(g.n, g.edges))
    out = []
    for i in range(g.m):
        rest = [e for j, e in enumerate(g.edges) if j != i]
        if len(_components(g.n, rest)) > base:
            out.append(i)
    return tuple(out)


def oracle_3ecc(g: UGraph) -> Partition:
    """Same block iff connected after deleting any two edges."""
    part = oracle_2ecc(g)
    for i, j in itertools.combinations(range(g.m), 2):
        rest = [e for k, e in enumerate(g.edges) if k not in (i, j)]
        part = part.refine(_components(g.n, rest))
    return part


def oracle_mveb(g: UGraph, marked: Iterable[int]) -> Partition:
    """Marked vertex-edge blocks by (vertex, edge) deletion."""
    marked = sorted(set(marked))
    ordinary = [v for v in range(g.n) if v not in marked]
    part = _components(g.n, g.edges).restricted(ordinary)
    for v in marked:
        for i in range(g.m):
            rest = [e for j, e in enumerate(g.edges) if j != i and v not in e]
            part = part.refine(_components(g.n, rest).restricted(ordinary))
    return part


def oracle_articulation_points(g: UGraph) -> tuple[int, ...]:
    out = []
    base: dict[int, int] = {}
    for comp in _components(g.n, g.edges):
        for v in comp:
            base[v] = len(comp)
    for v in range(g.n):
        rest = [e for e in g.edges if v not in e]
        others = [w for w in range(g.n) if w != v]
        before = len(_components(g.n, g.edges).restricted(others))
        after = len(_components(g.n, rest).restricted(others))
        if after > before:
            out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# mixed-graph orientation oracles
# ---------------------------------------------------------------------------


def _co_strong_pairs(
    n: int, directed: Sequence[tuple[int, int]], undirected: Sequence[tuple[int, int]]
) -> set[tuple[int, int]]:
    """Pairs (u < v) co-strongly-connected in some orientation."""
    if len(undirected) > ORIENTATION_EDGE_LIMIT:
        raise GraphError(
            f"orientation oracle limited to <= {ORIENTATION_EDGE_LIMIT} undirected edges"
        )
    pairs: set[tuple[int, int]] = set()
    for bits in range(1 << len(undirected)):
        oriented = list(directed)
        for i, (a, b) in enumerate(undirected):
            oriented.append((a, b) if bits >> i & 1 else (b, a))
        for comp in _scc_sets(n, oriented):
            cc = sorted(comp)
            pairs.update(itertools.combinations(cc, 2))
    return pairs


def _classes_of_relation(n: int, pairs: set[tuple[int, int]], what: str) -> Partition:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    # the relation must already be transitive, otherwise the partition claim fails
    for a in range(n):
        for b in range(a + 1, n):
            if find(a) == find(b) and (a, b) not in pairs:
                raise GraphError(f"{what}: relation is not transitive on ({a},{b})")
    return Partition.from_labels({v: find(v) for v in range(n)})


def oracle_orientable_blocks(g: MixedGraph) -> Partition:
    """Same block iff some orientation makes the pair strongly connected."""
    pairs = _co_strong_pairs(g.n, g.directed, g.undirected)
    return _classes_of_relation(g.n, pairs, "strongly orientable blocks")


def oracle_edge_resilient(g: MixedGraph, fail: str = "both") -> Partition:
    """Same block iff for every failing edge some orientation of the rest
    keeps the pair strongly connected.  ``fail`` selects which edges may
    fail: "directed", "undirected", or "both".
    """
    if fail not in ("both", "directed", "undirected"):
        raise GraphError(f"unknown failure set {fail!r}")
    # the no-deletion constraint is implied whenever a failing edge exists
    # (orient it back in); keeping it explicit settles the degenerate cases
    pairs = _co_strong_pairs(g.n, g.directed, g.undirected)
    if fail in ("both", "directed"):
        for i in range(len(g.directed)):
            rest = [e for j, e in enumerate(g.directed) if j != i]
            pairs &= _co_strong_pairs(g.n, rest, g.undirected)
    if fail in ("both", "undirected"):
        for i in range(len(g.undirected)):
            rest = [e for j, e in enumerate(g.undirected) if j != i]
            pairs &= _co_strong_pairs(g.n, g.directed, rest)
    return _classes_of_relation(g.n, pairs, "edge-resilient blocks")


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def gen_digraph(n: int, m: int, rng: random.Random, model: str = "er") -> DiGraph:
    """Random digraph.  "er" draws uniform ordered pairs; "bridgey" biases
    toward bridges, twins, and parallel edges (cycle backbone + duplicated
    and reversed edges)."""
    if n <= 1:
        return DiGraph(max(n, 0), [])
    if model == "er":
        edges = []
        while len(edges) < m:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u != v:
                edges.append((u, v))
        return DiGraph(n, edges)
    if model == "bridgey":
        edges = []
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(n):
            if len(edges) < m:
                edges.append((perm[i], perm[(i + 1) % n]))
        while len(edges) < m:
            roll = rng.random()
            if edges and roll < 1 / 3:
                edges.append(rng.choice(edges))  # parallel
            elif edges and roll < 2 / 3:
                u, v = rng.choice(edges)
                edges.append((v, u))  # twin
            else:
                u = rng.randrange(n)
                v = rng.randrange(n)
                if u != v:
                    edges.append((u, v))
        return DiGraph(n, edges)
    raise GraphError(f"unknown digraph model {model!r}")


def gen_strongly_connected(
    n: int, m: int, rng: random.Random, model: str = "er", tries: int = 10000
) -> DiGraph:
    """Rejection-sample a strongly connected digraph (small n only)."""
    for _ in range(tries):
        g = gen_digraph(n, m, rng, model)
        if _is_strongly_connected(g.n, g.edges):
            return g
    raise GraphError(f"no strongly connected graph found (n={n}, m={m})")


def gen_strongly_connected_fast(n: int, m: int, rng: random.Random) -> DiGraph:
    """Random strongly connected digraph for large benchmark instances:
    the union of two independent random permutation cycles (2-in/2-out
    regular digraphs are strongly connected with high probability; checked
    and resampled otherwise) plus uniformly random extra edges."""
    if m < 2 * n:
        raise GraphError("need m >= 2n for the two-cycle base")
    for _ in range(64):
        edges: list[tuple[int, int]] = []
        for _ in range(2):
            perm = list(range(n))
            rng.shuffle(perm)
            edges.extend((perm[i], perm[(i + 1) % n]) for i in range(n))
        while len(edges) < m:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u != v:
                edges.append((u, v))
        if _is_strongly_connected(n, edges):
            return DiGraph(n, edges)
    raise GraphError("failed to sample a strongly connected graph")


def gen_twinless_bridge_rich(n: int, m: int, rng: random.Random) -> DiGraph:
    """Strongly connected digraph with many twinless strong bridges and no
    strong bridges: a path of bidirected blobs (cycle plus chords) where
    consecutive blobs are joined by one single directed edge plus one twin
    pair (distinct endpoints, so each junction is a 2-edge cut of the
    underlying graph).  Deleting a single link keeps strong connectivity
    through the twin pair but hangs the underlying graph on one edge, so
    every single link is a twinless strong bridge.  A ring would not do:
    the way around makes the junctions 3-edge-connected.  Used for the
    baseline comparison."""
    if n < 8:
        raise GraphError("need n >= 8 for the blob path")
    k = max(2, n // 8)
    blob = n // k
    sizes = [blob] * k
    sizes[-1] += n - blob * k
    starts = [sum(sizes[:i]) for i in range(k)]
    edges: list[tuple[int, int]] = []
    for s, b in zip(starts, sizes):
        # bidirected squared cycle: 3-edge-connected, so the blob is a
        # single class of the cactus
        for i in range(b):
            u, v = s + i, s + (i + 1) % b
            edges.append((u, v))
            edges.append((v, u))
            if b > 3:
                u, w = s + i, s + (i + 2) % b
                edges.append((u, w))
                edges.append((w, u))
    for i in range(k - 1):
        # junction: one single forward edge plus a twinned link whose
        # return direction is doubled (one underlying edge, two backward
        # routes, so no strong bridge arises)
        s, b = starts[i], sizes[i]
        s2, b2 = starts[i + 1], sizes[i + 1]
        single_to = rng.randrange(b2)
        twin_to = (single_to + 1 + rng.randrange(b2 - 1)) % b2
        edges.append((s + rng.randrange(b), s2 + single_to))
        c, d = s + rng.randrange(b), s2 + twin_to
        edges.append((c, d))
        edges.append((d, c))
        edges.append((d, c))
    while len(edges) < m:  # bidirected chords inside random blobs
        i = rng.randrange(k)
        s, b = starts[i], sizes[i]
        u, v = s + rng.randrange(b), s + rng.randrange(b)
        if u != v:
            edges.append((u, v))
            edges.append((v, u))
    return DiGraph(n, edges)


def gen_mixed(n: int, md: int, mu: int, rng: random.Random) -> MixedGraph:
    if n <= 1:
        return MixedGraph(max(n, 0), [], [])
    directed = []
    while len(directed) < md:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            directed.append((u, v))
    undirected = []
    while len(undirected) < mu:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            undirected.append((a, b))
    return MixedGraph(n, directed, undirected)


def gen_ugraph(n: int, m: int, rng: random.Random) -> UGraph:
    if n <= 1:
        return UGraph(max(n, 0), [])
    edges = []
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.append((a, b))
    return UGraph(n, edges)


def gen_biconnected(n: int, m: int, rng: random.Random, tries: int = 200) -> UGraph:
    """Random biconnected (2-vertex-connected) multigraph.

    Tries rejection sampling briefly for variety, then falls back to a
    random cycle backbone plus random extra edges (always biconnected)."""
    if n == 2:
        return UGraph(2, [(0, 1)] * max(m, 2))
    for _ in range(tries):
        g = gen_ugraph(n, max(m, n), rng)
        if len(_components(g.n, g.edges)) != 1:
            continue
        if oracle_articulation_points(g):
            continue
        return g
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[i], perm[(i + 1) % n]) for i in range(n)]
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.append((a, b))
    return UGraph(n, edges)
