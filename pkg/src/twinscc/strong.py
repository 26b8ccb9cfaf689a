"""SCCs, twinless SCCs, and twinless strong bridges.

A digraph is twinless strongly connected iff it is strongly connected and
its simple underlying undirected graph is 2-edge-connected; the TSCCs of a
digraph are therefore the 2-edge-connected components of the underlying
graphs of its SCCs, computed per SCC on the induced subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DiGraph, Partition, underlying
from .undirected import bridges_2ecc, three_ecc_classes
from .dominators import strong_bridges


@dataclass(frozen=True)
class SccResult:
    """SCC partition plus the condensation in topological order.

    ``comp_of[v]`` is the topological index of v's component:
    every condensation edge (a, b) has a < b.
    """

    partition: Partition
    comp_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    condensation_edges: tuple[tuple[int, int], ...]


def scc(g: DiGraph) -> SccResult:
    """Iterative Tarjan."""
    n = g.n
    ostart, odst, _ = g.out_csr()
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    comp = [-1] * n
    ptr = list(ostart[:n])
    vstack: list[int] = []
    comps: list[tuple[int, ...]] = []
    timer = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = timer
        timer += 1
        vstack.append(root)
        on_stack[root] = 1
        call = [root]
        while call:
            v = call[-1]
            advanced = False
            end = ostart[v + 1]
            i = ptr[v]
            lv = low[v]
            while i < end:
                w = odst[i]
                i += 1
                if index[w] == -1:
                    ptr[v] = i
                    low[v] = lv
                    index[w] = low[w] = timer
                    timer += 1
                    vstack.append(w)
                    on_stack[w] = 1
                    call.append(w)
                    advanced = True
                    break
                if on_stack[w] and index[w] < lv:
                    lv = index[w]
            if not advanced:
                ptr[v] = i
                low[v] = lv
                call.pop()
                if low[v] == index[v]:
                    members = []
                    while True:
                        w = vstack.pop()
                        on_stack[w] = 0
                        comp[w] = len(comps)
                        members.append(w)
                        if w == v:
                            break
                    comps.append(tuple(sorted(members)))
                if call:
                    p = call[-1]
                    if low[v] < low[p]:
                        low[p] = low[v]
    # Tarjan emits components in reverse topological order
    k = len(comps)
    comp_of = tuple(k - 1 - comp[v] for v in range(n))
    components = tuple(reversed(comps))
    cond = sorted(
        {(comp_of[u], comp_of[v]) for u, v in g.edges if comp_of[u] != comp_of[v]}
    )
    return SccResult(Partition(components), comp_of, components, tuple(cond))


def tscc(g: DiGraph) -> Partition:
    """Twinless strongly connected components.

    Per SCC, the blocks are the 2ecc blocks of the underlying undirected
    graph of the induced subgraph.
    """
    blocks: list[list[int]] = []
    for members in scc(g).components:
        if len(members) == 1:
            blocks.append(list(members))
            continue
        if len(members) == g.n:
            sub, verts = g, None
        else:
            sub, verts, _ = g.induced(members)
        _, twoecc = bridges_2ecc(underlying(sub))
        for b in twoecc:
            blocks.append(b if verts is None else [verts[i] for i in b])
    return Partition(blocks)


def twinless_strong_bridges(g: DiGraph) -> tuple[int, ...]:
    """Edges whose deletion increases the number of TSCCs.

    Computed per TSCC on the induced subgraph: its strong bridges plus the
    edges of multiplicity one in the underlying graph whose endpoints lie in
    different 3-edge-connected classes.
    """
    result: set[int] = set()
    for block in tscc(g):
        if len(block) < 3:
            continue
        sub, _, orig_eid = g.induced(block)
        for e in strong_bridges(sub):
            result.add(orig_eid[e])
        view = underlying(sub)
        cls = three_ecc_classes(view).block_index()
        for i, (a, b) in enumerate(view.edges):
            if len(view.origins[i]) == 1 and cls[a] != cls[b]:
                result.add(orig_eid[view.origins[i][0]])
    return tuple(sorted(result))
