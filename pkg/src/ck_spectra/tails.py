"""Maximal tails, clusters, boundary-path realization and finite-return vertices.

A vertex set is tested against the four MT axioms:

  MT1  upward closed under reachability,
  MT2  every regular member has an out-edge back into the set,
  MT3  downward directed with the common vertex inside the set,
  MT4  countable separation property (automatic at this scale).

Nonempty sets satisfying MT1-MT4 are the maximal tails; MT1-MT3 the clusters
of maximal tails; MT1-MT2 the unions of maximal tails.  On finite-vertex
graphs tails and clusters coincide, and both enumerations are deliberately
plain exhaustive scans over all subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import InvalidPath, NotAMaximalTail
from .graph_core import (
    DEFAULT_ENUMERATION_LIMIT,
    Bundle,
    Graph,
    _bits,
    classify_vertices,
    has_csp,
    is_downward_directed,
    is_omega,
    mult_sum,
    require_enumerable,
    upward_set,
)


@dataclass(frozen=True)
class MtReport:
    """Per-axiom verdicts for one vertex set, with failure witnesses."""

    mt1: bool
    mt2: bool
    mt3: bool
    mt4: bool
    mt1_witness: Optional[tuple[str, str]] = None  # (v, w): v >= w in the set, v outside
    mt2_witness: Optional[str] = None  # regular member with no out-edge into the set
    mt3_witness: Optional[tuple[str, str]] = None  # pair with no common bound in the set
    csp_witness: frozenset = frozenset()  # minimal separating subset (mt4 always holds)

    @property
    def union_axioms(self) -> bool:
        return self.mt1 and self.mt2

    @property
    def cluster_axioms(self) -> bool:
        return self.mt1 and self.mt2 and self.mt3

    @property
    def tail_axioms(self) -> bool:
        return self.cluster_axioms and self.mt4


def mt_report(g: Graph, members) -> MtReport:
    """Evaluate MT1-MT4 for a vertex set."""
    mask = g.mask(members)
    kinds = classify_vertices(g)

    mt1_witness = None
    for w in _bits(mask):
        outside = g.coreach[w] & ~mask
        if outside:
            v = next(_bits(outside))
            mt1_witness = (g.vertices[v], g.vertices[w])
            break

    mt2_witness = None
    for i in _bits(mask):
        v = g.vertices[i]
        if v in kinds.regular and not g.succ_mask[i] & mask:
            mt2_witness = v
            break

    dd = is_downward_directed(g, g.names(mask))
    _, csp = has_csp(g, g.names(mask))
    return MtReport(
        mt1=mt1_witness is None,
        mt2=mt2_witness is None,
        mt3=dd.holds,
        mt4=True,
        mt1_witness=mt1_witness,
        mt2_witness=mt2_witness,
        mt3_witness=None if dd.holds else dd.witness,
        csp_witness=csp,
    )


def is_union_of_maximal_tails(g: Graph, members) -> bool:
    rep = mt_report(g, members)
    return rep.union_axioms


def _mt_scan(g: Graph, limit: int, *, need_mt3: bool) -> list[frozenset]:
    """All nonempty subsets passing MT1-MT2 (and MT3 when asked), by bitmask order."""
    require_enumerable(g, limit)
    coreach = g.coreach
    succ = g.succ_mask
    reach = g.reach
    regular = [g.index[v] for v in classify_vertices(g).regular]
    found: list[frozenset] = []
    for mask in range(1, g.full_mask + 1):
        members = list(_bits(mask))
        if any(coreach[w] & ~mask for w in members):
            continue
        if any(not succ[i] & mask for i in regular if mask >> i & 1):
            continue
        if need_mt3:
            ok = True
            for a, i in enumerate(members):
                ri = reach[i]
                for j in members[a:]:
                    if not ri & reach[j] & mask:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
        found.append(g.names(mask))
    return found


def maximal_tails(g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[frozenset]:
    """All nonempty sets satisfying MT1-MT4.

    MT4 cannot fail on a finite-vertex graph, but it is still evaluated so
    that this enumeration and :func:`clusters` stay independent computations.
    """
    return [w for w in _mt_scan(g, limit, need_mt3=True) if has_csp(g, w)[0]]


def clusters(g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[frozenset]:
    """All nonempty sets satisfying MT1-MT3."""
    return _mt_scan(g, limit, need_mt3=True)


@dataclass(frozen=True)
class BoundaryPath:
    """A finite path ending at a singular vertex, or an eventually periodic one.

    ``prefix`` is walked once from ``base``; a nonempty ``cycle`` is then
    repeated forever.  A length-zero path at a singular vertex has empty
    prefix and cycle.
    """

    base: str
    prefix: tuple[Bundle, ...] = ()
    cycle: tuple[Bundle, ...] = ()

    @property
    def kind(self) -> str:
        return "eventually-periodic" if self.cycle else "finite"

    @property
    def end(self) -> str:
        if self.cycle:
            return self.cycle[-1].dst
        return self.prefix[-1].dst if self.prefix else self.base

    @property
    def vertex_trace(self) -> frozenset:
        seen = {self.base}
        for b in self.prefix + self.cycle:
            seen.add(b.src)
            seen.add(b.dst)
        return frozenset(seen)


def validate_boundary_path(g: Graph, path: BoundaryPath) -> None:
    """Raise InvalidPath unless the path is a boundary path of g."""
    g.require_vertex(path.base)
    at = path.base
    for b in path.prefix + path.cycle:
        if b not in g.bundles:
            raise InvalidPath(f"bundle {b} is not part of the graph")
        if b.src != at:
            raise InvalidPath(f"bundle {b} does not continue the path at {at!r}")
        at = b.dst
    if path.cycle:
        if path.cycle[-1].dst != path.cycle[0].src:
            raise InvalidPath("cycle part does not close up")
    else:
        end = path.end
        if end not in classify_vertices(g).singular:
            raise InvalidPath(
                f"finite boundary path must end at a sink or infinite emitter, not {end!r}"
            )


def tail_of_boundary(g: Graph, path: BoundaryPath) -> frozenset:
    """T_alpha: everything that can reach the path's vertex trace."""
    validate_boundary_path(g, path)
    return upward_set(g, path.vertex_trace)


def _shortest_route(g: Graph, src: str, dst: str) -> tuple[Bundle, ...]:
    """A shortest bundle walk src -> dst; deterministic via canonical bundle order."""
    if src == dst:
        return ()
    best: dict[str, tuple[Bundle, ...]] = {src: ()}
    frontier = [src]
    while frontier:
        nxt: list[str] = []
        for u in frontier:
            for b in g.out_bundles[u]:
                if b.dst not in best:
                    best[b.dst] = best[u] + (b,)
                    if b.dst == dst:
                        return best[dst]
                    nxt.append(b.dst)
        frontier = nxt
    raise InvalidPath(f"no path from {src!r} to {dst!r}")


def realize_as_tail(g: Graph, members) -> BoundaryPath:
    """Produce a boundary path whose tail is exactly the given set.

    Follows the constructive argument behind the MT characterization: fold a
    countable separating subset into a descending chain inside the set, then
    extend through MT2 until the walk hits a singular vertex or repeats.
    """
    mask = g.mask(members)
    rep = mt_report(g, g.names(mask))
    if mask == 0 or not rep.tail_axioms:
        raise NotAMaximalTail(f"{sorted(g.names(mask))} does not satisfy MT1-MT4 or is empty")

    order = g.sorted_set(g.names(mask))
    _, csp = has_csp(g, g.names(mask))
    anchors = [v for v in order if v in csp]

    base = order[0]
    current = base
    bundles: list[Bundle] = []
    for x in anchors:
        # common lower bound of x and the walk head, inside the set (MT3);
        # MT1 keeps every vertex of the connecting route inside the set.
        common = g.reach[g.index[x]] & g.reach[g.index[current]] & mask
        target = g.vertices[next(_bits(common))]
        bundles.extend(_shortest_route(g, current, target))
        current = target

    singular = classify_vertices(g).singular
    seen_at = {current: len(bundles)}
    while current not in singular:
        step = next(b for b in g.out_bundles[current] if 1 << g.index[b.dst] & mask)
        bundles.append(step)
        current = step.dst
        if current in seen_at:
            cut = seen_at[current]
            return BoundaryPath(base, tuple(bundles[:cut]), tuple(bundles[cut:]))
        seen_at[current] = len(bundles)

    return BoundaryPath(base, tuple(bundles))


def finite_return_vertices(g: Graph) -> frozenset:
    """Infinite emitters with finitely many (but at least one) returning edges.

    An edge returns when its target can reach back to the source; the count
    is the saturating sum of bundle multiplicities over returning bundles.
    """
    out = []
    for v in classify_vertices(g).infinite_emitters:
        iv = g.index[v]
        returning = mult_sum(
            b.mult for b in g.out_bundles[v] if g.reach[g.index[b.dst]] >> iv & 1
        )
        if not is_omega(returning) and returning > 0:
            out.append(v)
    return frozenset(out)


@lru_cache(maxsize=4096)
def _fr_cached(g: Graph) -> frozenset:
    return finite_return_vertices(g)
