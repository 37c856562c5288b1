"""Independent reference implementations used only to cross-check the engine.

Everything here deliberately avoids the package's bitmask machinery:
reachability comes from repeated squaring of a numpy boolean matrix, cycle
detection from networkx, and the subset predicates from literal quantifier
evaluation over explicit sets.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import numpy as np

from ck_spectra.graph_core import CycleClass, Graph, is_omega


def reach_matrix(g: Graph) -> np.ndarray:
    """Reflexive-transitive closure by repeated boolean matrix squaring."""
    n = len(g.vertices)
    m = np.eye(n, dtype=bool)
    for b in g.bundles:
        m[g.index[b.src], g.index[b.dst]] = True
    while True:
        nxt = m @ m
        if (nxt == m).all():
            return m
        m = nxt


def oracle_reaches(g: Graph, u: str, v: str) -> bool:
    m = reach_matrix(g)
    return bool(m[g.index[u], g.index[v]])


def oracle_upward_set(g: Graph, members) -> frozenset:
    m = reach_matrix(g)
    targets = [g.index[s] for s in members]
    return frozenset(
        v for v in g.vertices if any(m[g.index[v], t] for t in targets)
    )


def oracle_cycle_class(g: Graph, v: str) -> CycleClass:
    """Walk enumeration oracle for the simple-cycle count at v.

    Enumerates every first-return walk of length at most |vertices| + 1 as an
    explicit edge sequence, with each bundle expanded into min(mult, 2)
    distinguishable parallel edges.  If the induced subgraph on the vertices
    usable by such walks has a cycle, infinitely many walks exist; otherwise
    every walk is vertex-simple, so the bounded enumeration is complete.
    """
    m = reach_matrix(g)
    iv = g.index[v]

    # vertices (other than v) usable on a first-return walk, by quantifier:
    # reachable from v without crossing v, and reaching v without crossing v
    def avoid_v_reach(src_names, forward: bool) -> set:
        seen = set()
        frontier = [w for w in src_names if w != v]
        while frontier:
            seen.update(frontier)
            nxt = []
            for b in g.bundles:
                a, c = (b.src, b.dst) if forward else (b.dst, b.src)
                if a in seen and c not in seen and c != v:
                    nxt.append(c)
            frontier = nxt
        return seen

    r_out = avoid_v_reach([b.dst for b in g.bundles if b.src == v], True)
    r_in = avoid_v_reach([b.src for b in g.bundles if b.dst == v], False)
    support = r_out & r_in

    induced = nx.MultiDiGraph()
    induced.add_nodes_from(support)
    for b in g.bundles:
        if b.src in support and b.dst in support:
            induced.add_edge(b.src, b.dst)
    try:
        nx.find_cycle(induced)
        has_internal = True
    except nx.NetworkXNoCycle:
        has_internal = False
    if has_internal:
        return CycleClass.TWO_OR_MORE

    # expanded parallel edges: (src, dst, copy-id)
    edges = []
    for b in g.bundles:
        copies = 2 if (is_omega(b.mult) or b.mult >= 2) else 1
        for c in range(copies):
            edges.append((b.src, b.dst, b.label, c))

    bound = len(g.vertices) + 1
    count = 0

    def extend(current: str, length: int):
        nonlocal count
        if count >= 2 or length > bound:
            return
        for e in edges:
            if e[0] != current:
                continue
            if e[1] == v:
                count += 1
                if count >= 2:
                    return
            elif length < bound:
                extend(e[1], length + 1)

    extend(v, 1)
    return CycleClass(min(count, 2))


def oracle_mt1(g: Graph, members: frozenset) -> bool:
    m = reach_matrix(g)
    return all(
        g.vertices[i] in members
        for i in range(len(g.vertices))
        for w in members
        if m[i, g.index[w]]
    )


def oracle_mt2(g: Graph, members: frozenset) -> bool:
    for v in members:
        out = [b for b in g.bundles if b.src == v]
        regular = bool(out) and not any(is_omega(b.mult) for b in out)
        if regular and not any(b.dst in members for b in out):
            return False
    return True


def oracle_mt3(g: Graph, members: frozenset) -> bool:
    m = reach_matrix(g)
    for u, w in combinations(sorted(members), 2):
        if not any(
            m[g.index[u], g.index[c]] and m[g.index[w], g.index[c]] for c in members
        ):
            return False
    return True


def oracle_tails(g: Graph) -> set:
    """All nonempty MT1-MT3 sets by literal quantifier evaluation."""
    verts = list(g.vertices)
    out = set()
    for mask in range(1, 1 << len(verts)):
        members = frozenset(v for i, v in enumerate(verts) if mask >> i & 1)
        if oracle_mt1(g, members) and oracle_mt2(g, members) and oracle_mt3(g, members):
            out.add(members)
    return out


def oracle_sat_her(g: Graph) -> set:
    verts = list(g.vertices)
    out = set()
    for mask in range(1 << len(verts)):
        members = frozenset(v for i, v in enumerate(verts) if mask >> i & 1)
        hereditary = all(b.dst in members for b in g.bundles if b.src in members)
        saturated = True
        for v in verts:
            outs = [b for b in g.bundles if b.src == v]
            total_omega = any(is_omega(b.mult) for b in outs)
            if outs and not total_omega and v not in members:
                if all(b.dst in members for b in outs):
                    saturated = False
                    break
        if hereditary and saturated:
            out.add(members)
    return out
