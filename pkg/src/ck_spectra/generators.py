"""Reference fixtures and seeded random graph generation.

``running_example`` is the seven-vertex workhorse used throughout the tests:
its tails, breaking vertices, finite-return vertex and full list of prime
ideals are known in advance and recorded on the fixture.  ``ea_graph`` builds
the subset graph on a small ground set, whose vertices are the nonempty
subsets with one bundle for each strict inclusion; with OMEGA bundles every
non-terminal vertex is an infinite emitter, which is the finite stand-in for
the genuinely uncountable version of that construction.  ``px_model`` is the
matching combinatorial model of its spectrum: points are nonempty subsets of
the ground set with a finite-subset-containment closure, and ``phi`` maps a
point to the cluster it represents.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .errors import SizeLimitExceeded
from .graph_core import (
    OMEGA,
    Bundle,
    CycleClass,
    Graph,
    Mult,
    _bits,
    check_mult,
    simple_cycle_class,
)
from .ideals import AdmissiblePair


@dataclass(frozen=True)
class RunningExampleFacts:
    """Expected values for the running-example fixture, aligned by index."""

    tails: tuple  # maximal tails in canonical enumeration order
    complements: tuple  # matching saturated hereditary complements
    breaking: tuple  # matching breaking-vertex sets
    finite_return: frozenset
    prime_pairs: tuple  # every prime (= primitive) ideal
    return_vertex: str
    return_pair: AdmissiblePair  # the prime pair that keeps the return vertex
    full_tail: frozenset  # the tail avoiding only the sink
    full_tail_closure: frozenset  # pairs in the closure of that tail's point
    notes: tuple = ()


@dataclass(frozen=True)
class GraphFixture:
    graph: Graph
    expected: RunningExampleFacts


def running_example() -> GraphFixture:
    """Seven vertices, three infinite emitters, one finite-return vertex.

    The two loops d and e at z keep Condition (K); x keeps a single return
    bundle to u (labeled g) besides its loop f, so its return count is
    exactly two.
    """
    g = Graph(
        "tuvwxyz",
        [
            Bundle("u", "t"),
            Bundle("u", "v", OMEGA),
            Bundle("v", "x"),
            Bundle("w", "x"),
            Bundle("w", "y", OMEGA),
            Bundle("x", "y", OMEGA),
            Bundle("x", "z"),
            Bundle("x", "t"),
            Bundle("x", "u", label="g"),
            Bundle("x", "x", label="f"),
            Bundle("y", "z"),
            Bundle("z", "z", label="d"),
            Bundle("z", "z", label="e"),
        ],
    )
    f = frozenset
    tails = (f("w"), f("uvwx"), f("tuvwx"), f("uvwxyz"))
    complements = (f("tuvxyz"), f("tyz"), f("yz"), f("t"))
    breaking = (f(), f("wx"), f("wx"), f())
    prime_pairs = (
        AdmissiblePair(f("yz"), f("wx")),
        AdmissiblePair(f("tyz"), f("wx")),
        AdmissiblePair(f("tyz"), f("w")),
        AdmissiblePair(f("tuvxyz"), f()),
        AdmissiblePair(f("t"), f()),
    )
    facts = RunningExampleFacts(
        tails=tails,
        complements=complements,
        breaking=breaking,
        finite_return=f("x"),
        prime_pairs=prime_pairs,
        return_vertex="x",
        return_pair=AdmissiblePair(f("tyz"), f("w")),
        full_tail=f("uvwxyz"),
        full_tail_closure=f(
            {
                AdmissiblePair(f("tyz"), f("wx")),
                AdmissiblePair(f("tuvxyz"), f()),
                AdmissiblePair(f("t"), f()),
                AdmissiblePair(f("tyz"), f("w")),
            }
        ),
        notes=(
            "only x has finitely many returning edges: its loop f and the route "
            "through g; u returns through infinitely many parallels, w not at all",
            "t is the unique sink; every tail either contains it or avoids it "
            "together with y and z",
        ),
    )
    return GraphFixture(g, facts)


# -- subset graphs -------------------------------------------------------------


def _subset_name(members: Iterable[str]) -> str:
    return "v_" + "_".join(sorted(members))


def ea_graph(ground, mult: Mult = 1) -> Graph:
    """Subset graph on a ground set: nonempty subsets, bundles along strict inclusion.

    With ``mult=1`` this is an honest finite graph with a single maximal
    tail; with ``mult=OMEGA`` every non-terminal vertex becomes an infinite
    emitter.  The ground set is capped at four elements because every
    downstream enumeration walks the power set of the 2**k - 1 vertices.
    """
    elems = sorted(set(ground))
    if len(elems) > 4:
        raise SizeLimitExceeded(f"ground set of {len(elems)} elements is above the cap of 4")
    check_mult(mult)
    subsets = [
        frozenset(elems[i] for i in _bits(m)) for m in range(1, 1 << len(elems))
    ]
    names = [_subset_name(s) for s in subsets]
    if len(set(names)) != len(names) or not all(n.isidentifier() for n in names):
        raise ValueError("ground-set elements produce colliding or invalid vertex names")
    bundles = [
        Bundle(_subset_name(a), _subset_name(b), mult)
        for a in subsets
        for b in subsets
        if a < b
    ]
    return Graph(names, bundles)


@dataclass(frozen=True)
class PXModel:
    """Nonempty subsets of a ground set with finite-subset-containment closure."""

    ground: tuple
    points: tuple = field(init=False)

    def __post_init__(self):
        pts = tuple(
            frozenset(self.ground[i] for i in _bits(m))
            for m in range(1, 1 << len(self.ground))
        )
        object.__setattr__(self, "points", pts)


def px_model(ground) -> PXModel:
    elems = tuple(sorted(set(ground)))
    if len(elems) > 4:
        raise SizeLimitExceeded(f"ground set of {len(elems)} elements is above the cap of 4")
    return PXModel(elems)


def px_closure(model: PXModel, family: Iterable[frozenset]) -> frozenset:
    """Points all of whose finite subsets fit inside some member of the family.

    The quantifier is evaluated literally over every subset (all subsets are
    finite here); the collapse to plain containment is a lemma the tests
    check, not something this code assumes.
    """
    fam = [frozenset(s) for s in family]
    for s in fam:
        if s not in model.points:
            raise ValueError(f"{sorted(s)} is not a point of the model")
    out = []
    for t in model.points:
        if all(any(a <= s for s in fam) for a in _all_subsets(t)):
            out.append(t)
    return frozenset(out)


def _all_subsets(t: frozenset):
    elems = sorted(t)
    for m in range(1 << len(elems)):
        yield frozenset(elems[i] for i in _bits(m))


@lru_cache(maxsize=64)
def px_companion(model: PXModel) -> Graph:
    """The OMEGA-multiplicity subset graph the model describes."""
    return ea_graph(model.ground, OMEGA)


def phi(model: PXModel, point: frozenset) -> frozenset:
    """The cluster represented by a point: vertices of its nonempty subsets."""
    point = frozenset(point)
    if point not in model.points:
        raise ValueError(f"{sorted(point)} is not a point of the model")
    return frozenset(_subset_name(a) for a in _all_subsets(point) if a)


# -- seeded random graphs --------------------------------------------------------


def _find_first_return_walk(g: Graph, v: str) -> list[Bundle]:
    """The unique first-return walk at a vertex whose cycle class is ONE."""
    iv = g.index[v]
    target_reach = [g.reach[i] >> iv & 1 for i in range(g.n)]

    def dfs(current: str, visited: frozenset, walk: list[Bundle]):
        for b in g.out_bundles[current]:
            if b.dst == v:
                return walk + [b]
            j = g.index[b.dst]
            if b.dst not in visited and target_reach[j]:
                found = dfs(b.dst, visited | {b.dst}, walk + [b])
                if found:
                    return found
        return None

    walk = dfs(v, frozenset((v,)), [])
    if walk is None:
        raise ValueError(f"no first-return walk at {v!r}")
    return walk


def _bump_bundle(g: Graph, target: Bundle) -> Graph:
    bundles = []
    for b in g.bundles:
        if b == target:
            bundles.append(Bundle(b.src, b.dst, b.mult + 1, b.label))
        else:
            bundles.append(b)
    return Graph(g.vertices, bundles)


def random_graph(
    seed: int,
    n: int,
    density: float = 0.3,
    omega_prob: float = 0.25,
) -> Graph:
    """Seeded random graph; may or may not satisfy Condition (K)."""
    rng = random.Random(seed)
    vertices = tuple(f"v{i}" for i in range(n))
    bundles = []
    for u in vertices:
        for w in vertices:
            if rng.random() < density:
                mult = OMEGA if rng.random() < omega_prob else rng.choice((1, 1, 1, 2))
                bundles.append(Bundle(u, w, mult))
    return Graph(vertices, bundles)


def random_condition_k_graph(
    seed: int,
    n: int,
    density: float = 0.3,
    omega_prob: float = 0.25,
) -> Graph:
    """Seeded random graph repaired to satisfy Condition (K).

    Whenever a vertex is the source of exactly one simple cycle, one bundle
    on that unique (necessarily vertex-simple, multiplicity-one) walk gets a
    parallel edge, which lifts every count along it to at least two and never
    creates a fresh singleton count elsewhere.
    """
    g = random_graph(seed, n, density, omega_prob)
    while True:
        lonely = next(
            (v for v in g.vertices if simple_cycle_class(g, v) is CycleClass.ONE),
            None,
        )
        if lonely is None:
            return g
        walk = _find_first_return_walk(g, lonely)
        g = _bump_bundle(g, walk[0])
