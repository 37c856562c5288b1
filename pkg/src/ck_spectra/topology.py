"""Prime spectrum and primitive ideal space as finite topological spaces.

Points are clusters of maximal tails plus finite-return vertices, kept as a
tagged disjoint union (a singleton cluster {v} and the return vertex v are
different points).  The same space is materialized along two routes:

* graph side: membership of a point in the closure of X is decided from
  reachability and bundle multiplicities alone.  Writing V(X) for the union
  of the vertex sets of the points of X, a point p with vertex set W_p lies
  in the closure iff W_p is covered by V(X) *and* no vertex that breaks out
  of the complement of V(X) stays "essential" for both X and p (essential
  vertices of a point are the members of W_p that do not break out of its
  complement, plus the return vertex itself for a return point).

* ideal side: each point is mapped through ``h_map`` to an admissible pair
  and the closure of X is everything containing the meet of the pairs of X.

The two computations must produce identical point sets; that equality, the
Kuratowski axioms, and the density of the primitive points are what
:func:`verify_homeomorphism`, :func:`check_kuratowski` and
:func:`prim_spec_density_check` establish instance by instance.

:func:`naive_graph_closure` keeps the simpler first cut of the graph-side
operator (coverage by V(X), plus an infinitely-many-edges test for return
points).  It agrees with the real closure whenever no breaking vertices are
around, but in general it is neither extensive nor compatible with the ideal
side, and it is retained only as a diagnostic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Union

from .errors import ConditionKRequired, VerificationFailure
from .graph_core import (
    DEFAULT_ENUMERATION_LIMIT,
    Graph,
    _bits,
    _condition_k_cached,
    is_omega,
    mult_sum,
    require_enumerable,
)
from .ideals import (
    AdmissiblePair,
    _breaking_masked,
    admissible_pairs,
    classify_ideal,
    ideal_leq,
    meet,
)
from .tails import _fr_cached, clusters, maximal_tails


@dataclass(frozen=True)
class ClusterPoint:
    """A point of the spectrum given by a cluster of maximal tails."""

    members: frozenset

    def label(self, g: Graph) -> str:
        return "{" + ", ".join(g.sorted_set(self.members)) + "}"


@dataclass(frozen=True)
class FRPoint:
    """A point of the spectrum given by a finite-return vertex."""

    vertex: str

    def label(self, g: Graph) -> str:
        return f"return vertex {self.vertex}"


SpecPoint = Union[ClusterPoint, FRPoint]


def _require_condition_k(g: Graph) -> None:
    if not _condition_k_cached(g):
        raise ConditionKRequired("spectrum computations require Condition (K)")


def spec_points(g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[SpecPoint]:
    """Points of the prime spectrum: clusters, then finite-return vertices."""
    _require_condition_k(g)
    require_enumerable(g, limit)
    pts: list[SpecPoint] = [ClusterPoint(c) for c in clusters(g, limit)]
    pts += [FRPoint(v) for v in g.sorted_set(_fr_cached(g))]
    return pts


def prim_points(g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[SpecPoint]:
    """Points of the primitive ideal space: maximal tails, then return vertices."""
    _require_condition_k(g)
    require_enumerable(g, limit)
    pts: list[SpecPoint] = [ClusterPoint(c) for c in maximal_tails(g, limit)]
    pts += [FRPoint(v) for v in g.sorted_set(_fr_cached(g))]
    return pts


@lru_cache(maxsize=1 << 16)
def _point_mask(g: Graph, p: SpecPoint) -> int:
    """Mask of the vertex set carried by a point (the tail U(v) for return points)."""
    if isinstance(p, ClusterPoint):
        return g.mask(p.members)
    return g.coreach[g.require_vertex(p.vertex)]


@lru_cache(maxsize=1 << 16)
def _essential_mask(g: Graph, p: SpecPoint) -> int:
    """Vertices of the point's set that stay essential for ideal containment.

    These are the members that do not break out of the complement of the
    point's vertex set; for a return point the return vertex itself is kept
    essential even though it breaks.
    """
    w = _point_mask(g, p)
    m = w & ~_breaking_masked(g, g.full_mask & ~w)
    if isinstance(p, FRPoint):
        m |= 1 << g.index[p.vertex]
    return m


def v_of(g: Graph, points: Iterable[SpecPoint]) -> frozenset:
    """V(X): union of the cluster sets and the tails of the return vertices."""
    m = 0
    for p in points:
        m |= _point_mask(g, p)
    return g.names(m)


def graph_closure(
    g: Graph,
    points: Iterable[SpecPoint],
    ambient: Optional[Iterable[SpecPoint]] = None,
) -> frozenset:
    """Closure of a point set, computed from the graph alone.

    ``ambient`` defaults to the full prime spectrum; passing the primitive
    points restricts to the subspace closure.
    """
    pts = tuple(ambient) if ambient is not None else tuple(spec_points(g))
    xs = set(points)
    foreign = xs - set(pts)
    if foreign:
        raise ValueError(f"points outside the ambient space: {sorted(map(str, foreign))}")
    vmask = 0
    for p in xs:
        vmask |= _point_mask(g, p)
    smask = _breaking_masked(g, g.full_mask & ~vmask)
    for p in xs:
        smask &= ~_essential_mask(g, p)
    out = [
        p
        for p in pts
        if not _point_mask(g, p) & ~vmask and not smask & _essential_mask(g, p)
    ]
    return frozenset(out)


def naive_graph_closure(
    g: Graph,
    points: Iterable[SpecPoint],
    ambient: Optional[Iterable[SpecPoint]] = None,
) -> frozenset:
    """Diagnostic: coverage-only closure, ignoring breaking-vertex bookkeeping.

    Clusters enter when covered by V(X); return vertices when they emit
    infinitely many edges into V(X).  Agrees with :func:`graph_closure` when
    the graph has no breaking vertices at all; differs in general.
    """
    pts = tuple(ambient) if ambient is not None else tuple(spec_points(g))
    vmask = 0
    for p in points:
        vmask |= _point_mask(g, p)
    out = []
    for p in pts:
        if isinstance(p, ClusterPoint):
            if not _point_mask(g, p) & ~vmask:
                out.append(p)
        else:
            into = mult_sum(
                b.mult
                for b in g.out_bundles[p.vertex]
                if vmask >> g.index[b.dst] & 1
            )
            if is_omega(into):
                out.append(p)
    return frozenset(out)


@lru_cache(maxsize=1 << 16)
def h_map(g: Graph, p: SpecPoint) -> AdmissiblePair:
    """The admissible pair named by a point.

    A cluster C maps to (complement of C, all its breaking vertices); a
    return vertex v to (complement of U(v), breaking vertices minus v).
    """
    w = _point_mask(g, p)
    hmask = g.full_mask & ~w
    smask = _breaking_masked(g, hmask)
    if isinstance(p, FRPoint):
        smask &= ~(1 << g.index[p.vertex])
    return AdmissiblePair(g.names(hmask), g.names(smask))


def ideal_closure(
    g: Graph,
    ambient: Iterable[SpecPoint],
    points: Iterable[SpecPoint],
) -> frozenset:
    """Closure of a point set through the ideal lattice.

    Maps the points through :func:`h_map`, meets the pairs (the empty family
    meets to the whole-algebra pair, so the empty set is closed), and keeps
    the ambient points whose pair contains the meet.
    """
    pts = tuple(ambient)
    xs = set(points)
    foreign = xs - set(pts)
    if foreign:
        raise ValueError(f"points outside the ambient space: {sorted(map(str, foreign))}")
    bottom = meet(g, [h_map(g, p) for p in xs])
    return frozenset(p for p in pts if ideal_leq(g, bottom, h_map(g, p)))


# -- spaces -------------------------------------------------------------------


class SpecSpace:
    """A finite point set together with a closure operator."""

    def __init__(
        self,
        points: Iterable[SpecPoint],
        closure: Callable[[Iterable[SpecPoint]], frozenset],
        side: str,
        name: str,
    ):
        self.points = tuple(points)
        self._closure = closure
        self.side = side
        self.name = name

    def closure(self, points: Iterable[SpecPoint]) -> frozenset:
        return self._closure(points)

    def __repr__(self) -> str:
        return f"SpecSpace({self.name}/{self.side}, {len(self.points)} points)"


def spec_space(g: Graph, side: str = "graph", limit: int = DEFAULT_ENUMERATION_LIMIT) -> SpecSpace:
    pts = tuple(spec_points(g, limit))
    return SpecSpace(pts, _closure_fn(g, pts, side), side, "spec")


def prim_space(g: Graph, side: str = "graph", limit: int = DEFAULT_ENUMERATION_LIMIT) -> SpecSpace:
    pts = tuple(prim_points(g, limit))
    return SpecSpace(pts, _closure_fn(g, pts, side), side, "prim")


def _closure_fn(g: Graph, pts: tuple, side: str) -> Callable:
    if side == "graph":
        return lambda xs: graph_closure(g, xs, ambient=pts)
    if side == "ideal":
        return lambda xs: ideal_closure(g, pts, xs)
    raise ValueError(f"side must be 'graph' or 'ideal', got {side!r}")


# -- verification reports ------------------------------------------------------


@dataclass(frozen=True)
class HomeomorphismReport:
    points: int
    prime_pairs: int
    primitive_pairs: int
    spec_subsets_checked: int
    prim_subsets_checked: int
    exhaustive: bool


@dataclass(frozen=True)
class KuratowskiReport:
    ok: bool
    failures: tuple
    subsets_checked: int
    union_pairs_checked: int
    exhaustive: bool


@dataclass(frozen=True)
class SeparationReport:
    t0: bool
    t1: bool
    hausdorff: bool
    non_closed_singletons: tuple
    specialization: tuple  # (p, q) pairs with q in the closure of {p}


@dataclass(frozen=True)
class DensityReport:
    spec_point_count: int
    prim_point_count: int


def _subset_pool(n: int, exhaustive_limit: int, seed: int, samples: int):
    """Subset masks to sweep: everything when small, else a seeded selection."""
    if n <= exhaustive_limit:
        return list(range(1 << n)), True
    rng = random.Random(seed)
    pool = {0, (1 << n) - 1}
    pool.update(1 << i for i in range(n))
    while len(pool) < min(samples, 1 << n):
        pool.add(rng.randrange(1 << n))
    return sorted(pool), False


def _pick(points: tuple, mask: int) -> frozenset:
    return frozenset(points[i] for i in _bits(mask))


def verify_homeomorphism(
    g: Graph,
    exhaustive_limit: int = 12,
    *,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    seed: int = 0,
    samples: int = 256,
) -> HomeomorphismReport:
    """Check that the graph-side and ideal-side spaces are the same space.

    Establishes that the point-to-pair map is injective, that its image is
    exactly the prime-classified admissible pairs (primitive ones for the
    primitive-point list), and that the two closure operators agree on every
    swept subset, for the full spectrum and for the primitive subspace.
    Raises :class:`VerificationFailure` with the offending subset otherwise.
    """
    _require_condition_k(g)
    spec_pts = tuple(spec_points(g, limit))
    prim_pts = tuple(prim_points(g, limit))

    pairs = [h_map(g, p) for p in spec_pts]
    if len(set(pairs)) != len(pairs):
        raise VerificationFailure("point-to-ideal map is not injective", spec_pts)
    verdicts = {p: classify_ideal(g, p) for p in admissible_pairs(g, limit)}
    prime_pairs = {p for p, c in verdicts.items() if c.is_prime}
    primitive_pairs = {p for p, c in verdicts.items() if c.is_primitive}
    if set(pairs) != prime_pairs:
        raise VerificationFailure(
            "image of the point map differs from the prime-classified pairs",
            (set(pairs), prime_pairs),
        )
    if {h_map(g, p) for p in prim_pts} != primitive_pairs:
        raise VerificationFailure(
            "primitive points do not match the primitive-classified pairs",
            ({h_map(g, p) for p in prim_pts}, primitive_pairs),
        )

    checked = []
    for pts in (spec_pts, prim_pts):
        masks, exhaustive = _subset_pool(len(pts), exhaustive_limit, seed, samples)
        for m in masks:
            xs = _pick(pts, m)
            left = graph_closure(g, xs, ambient=pts)
            right = ideal_closure(g, pts, xs)
            if left != right:
                raise VerificationFailure(
                    f"closures disagree on {sorted(str(x) for x in xs)}", xs
                )
        checked.append(len(masks))

    return HomeomorphismReport(
        points=len(spec_pts),
        prime_pairs=len(prime_pairs),
        primitive_pairs=len(primitive_pairs),
        spec_subsets_checked=checked[0],
        prim_subsets_checked=checked[1],
        exhaustive=len(spec_pts) <= exhaustive_limit and len(prim_pts) <= exhaustive_limit,
    )


def check_kuratowski(
    space: SpecSpace,
    exhaustive_limit: int = 12,
    *,
    seed: int = 0,
    samples: int = 256,
    union_pair_limit: int = 6,
) -> KuratowskiReport:
    """Test the four closure axioms on the space's power set.

    The empty set, extensivity and idempotence are checked subset by subset;
    finite additivity is checked through singleton decomposition on every
    swept subset and through the literal pairwise union axiom on all pairs of
    subsets when the space is small enough (seeded samples otherwise).
    """
    pts = space.points
    n = len(pts)
    memo: dict[frozenset, frozenset] = {}

    def cl(xs: frozenset) -> frozenset:
        if xs not in memo:
            memo[xs] = frozenset(space.closure(xs))
        return memo[xs]

    failures = []
    masks, exhaustive = _subset_pool(n, exhaustive_limit, seed, samples)
    if cl(frozenset()) != frozenset():
        failures.append(("empty", frozenset(), None))
    for m in masks:
        xs = _pick(pts, m)
        c = cl(xs)
        if not xs <= c:
            failures.append(("extensive", xs, None))
        if cl(c) != c:
            failures.append(("idempotent", xs, None))
        singletons = frozenset().union(*(cl(frozenset((p,))) for p in xs)) if xs else frozenset()
        if c != singletons:
            failures.append(("additive", xs, None))

    if n <= union_pair_limit:
        pair_masks = [(a, b) for a in range(1 << n) for b in range(1 << n)]
    else:
        rng = random.Random(seed + 1)
        pair_masks = [
            (rng.randrange(1 << n), rng.randrange(1 << n)) for _ in range(samples)
        ]
    for a, b in pair_masks:
        xa, xb = _pick(pts, a), _pick(pts, b)
        if cl(xa | xb) != cl(xa) | cl(xb):
            failures.append(("union", xa, xb))

    return KuratowskiReport(
        ok=not failures,
        failures=tuple(failures[:8]),
        subsets_checked=len(masks),
        union_pairs_checked=len(pair_masks),
        exhaustive=exhaustive,
    )


def separation_report(space: SpecSpace) -> SeparationReport:
    """T0/T1/Hausdorff verdicts plus the specialization preorder.

    Works from singleton closures: q lies in the closure of {p} exactly when
    every open set around q contains p, so the minimal open neighborhood of p
    consists of the q with p in the closure of {q}; two points are separated
    by opens iff those minimal neighborhoods are disjoint.
    """
    pts = space.points
    cl = {p: frozenset(space.closure(frozenset((p,)))) for p in pts}
    specialization = tuple((p, q) for p in pts for q in pts if q in cl[p])
    t0 = all(not (q in cl[p] and p in cl[q]) for p in pts for q in pts if p != q)
    non_closed = tuple(p for p in pts if cl[p] != frozenset((p,)))
    t1 = not non_closed
    min_open = {p: frozenset(q for q in pts if p in cl[q]) for p in pts}
    hausdorff = all(
        min_open[p].isdisjoint(min_open[q]) for p in pts for q in pts if p != q
    )
    return SeparationReport(
        t0=t0,
        t1=t1,
        hausdorff=hausdorff,
        non_closed_singletons=non_closed,
        specialization=specialization,
    )


def prim_spec_density_check(g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT) -> DensityReport:
    """Primitive points must exhaust the spectrum here, and be dense in it."""
    spec_pts = tuple(spec_points(g, limit))
    prim_pts = tuple(prim_points(g, limit))
    if set(spec_pts) != set(prim_pts):
        raise VerificationFailure(
            "primitive ideal space differs from the prime spectrum",
            (spec_pts, prim_pts),
        )
    closure = graph_closure(g, prim_pts, ambient=spec_pts)
    if closure != frozenset(spec_pts):
        raise VerificationFailure("primitive points are not dense", closure)
    return DensityReport(len(spec_pts), len(prim_pts))
