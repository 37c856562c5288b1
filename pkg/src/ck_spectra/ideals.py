"""Saturated hereditary sets, admissible pairs and the ideal classification.

An admissible pair (H, S) - a saturated hereditary vertex set H plus a set S
of its breaking vertices - names a gauge-invariant ideal of the graph
algebra.  Under Condition (K) these are all the ideals, the lattice meet is
given by an explicit intersection formula, and each ideal is classified as
primitive, prime-but-not-primitive, or not prime in two independent ways:

* :func:`classify_ideal` reads the answer off the complement of H directly
  (tail / cluster membership and the kept breaking vertices), and
* :func:`classify_via_quotient` builds the quotient graph and applies the
  primeness criterion (Condition (L) plus downward directedness) to it.

The two must agree everywhere; the test suite uses that as its main oracle.

Breaking vertices are counted by *edges*: the saturating multiplicity sum of
the bundles escaping H must be finite and nonzero.  Counting target vertices
instead can disagree when an OMEGA bundle leaves H;
:func:`breaking_vertex_discrepancies` reports exactly those vertices.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .errors import ConditionKRequired, NotSaturatedHereditary
from .graph_core import (
    DEFAULT_ENUMERATION_LIMIT,
    Bundle,
    Check,
    Graph,
    _bits,
    _condition_k_cached,
    classify_vertices,
    has_csp,
    is_downward_directed,
    is_omega,
    condition_L,
    mult_sum,
    require_enumerable,
    upward_set,
)
from .tails import mt_report


@dataclass(frozen=True)
class AdmissiblePair:
    """(H, S): saturated hereditary H together with kept breaking vertices S."""

    h: frozenset
    s: frozenset

    def key(self, g: Graph) -> tuple[int, int]:
        return g.mask(self.h), g.mask(self.s)


class IdealKind(enum.Enum):
    PRIMITIVE_TAIL = "primitive-tail"
    PRIMITIVE_RETURN = "primitive-return"
    PRIME_NOT_PRIMITIVE = "prime-not-primitive"
    NOT_PRIME = "not-prime"


@dataclass(frozen=True)
class IdealClass:
    """Classification verdict; PRIMITIVE_RETURN carries the return vertex."""

    kind: IdealKind
    v0: Optional[str] = None

    @property
    def is_prime(self) -> bool:
        return self.kind is not IdealKind.NOT_PRIME

    @property
    def is_primitive(self) -> bool:
        return self.kind in (IdealKind.PRIMITIVE_TAIL, IdealKind.PRIMITIVE_RETURN)

    def describe(self) -> str:
        if self.kind is IdealKind.PRIMITIVE_TAIL:
            return "primitive (maximal-tail complement)"
        if self.kind is IdealKind.PRIMITIVE_RETURN:
            return f"primitive (finite-return vertex {self.v0})"
        if self.kind is IdealKind.PRIME_NOT_PRIMITIVE:
            return "prime, not primitive"
        return "not prime"


# -- hereditary / saturated predicates ----------------------------------------


def is_hereditary(g: Graph, members) -> Check:
    """Every bundle leaving the set stays inside it; witness is an escaping bundle."""
    mask = g.mask(members)
    for b in g.bundles:
        if 1 << g.index[b.src] & mask and not 1 << g.index[b.dst] & mask:
            return Check(False, b)
    return Check(True)


def is_saturated(g: Graph, members) -> Check:
    """Regular vertices feeding entirely into the set belong to it; witness vertex."""
    mask = g.mask(members)
    regular = classify_vertices(g).regular
    for v in g.vertices:
        i = g.index[v]
        if v in regular and not mask >> i & 1 and not g.succ_mask[i] & ~mask:
            return Check(False, v)
    return Check(True)


@lru_cache(maxsize=1 << 16)
def _sat_her_masked(g: Graph, mask: int) -> bool:
    succ = g.succ_mask
    for i in _bits(mask):
        if succ[i] & ~mask:
            return False
    for v in classify_vertices(g).regular:
        i = g.index[v]
        if not mask >> i & 1 and not succ[i] & ~mask:
            return False
    return True


def saturated_hereditary_sets(g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[frozenset]:
    """All saturated hereditary subsets, in canonical bitmask order."""
    require_enumerable(g, limit)
    return [g.names(m) for m in g.subsets() if _sat_her_masked(g, m)]


# -- breaking vertices ---------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _breaking_masked(g: Graph, hmask: int) -> int:
    """Mask of infinite emitters with a finite, nonzero edge count escaping hmask."""
    out = 0
    for v in classify_vertices(g).infinite_emitters:
        i = g.index[v]
        if hmask >> i & 1:
            continue
        escaping = mult_sum(
            b.mult for b in g.out_bundles[v] if not hmask >> g.index[b.dst] & 1
        )
        if not is_omega(escaping) and escaping > 0:
            out |= 1 << i
    return out


def _require_sat_her(g: Graph, members) -> int:
    mask = g.mask(members)
    if not _sat_her_masked(g, mask):
        raise NotSaturatedHereditary(
            f"{sorted(g.names(mask))} is not saturated hereditary"
        )
    return mask


def breaking_vertices(g: Graph, members) -> frozenset:
    """B_H for a saturated hereditary H, counting escaping edges with saturation."""
    return g.names(_breaking_masked(g, _require_sat_her(g, members)))


def breaking_vertex_discrepancies(g: Graph, members) -> frozenset:
    """Vertices where the edge count and the target-vertex count disagree.

    On a finite-vertex graph the set of escape targets is always finite, so a
    discrepancy happens exactly when some escaping bundle carries OMEGA.
    """
    hmask = _require_sat_her(g, members)
    edge_side = _breaking_masked(g, hmask)
    out = []
    for v in classify_vertices(g).infinite_emitters:
        i = g.index[v]
        targets = g.succ_mask[i] & ~hmask
        vertex_side = targets != 0
        if vertex_side != bool(edge_side >> i & 1):
            out.append(v)
    return frozenset(out)


@lru_cache(maxsize=1 << 16)
def _check_admissible(g: Graph, pair: AdmissiblePair) -> tuple[int, int]:
    hmask = _require_sat_her(g, pair.h)
    smask = g.mask(pair.s)
    if smask & ~_breaking_masked(g, hmask):
        raise NotSaturatedHereditary(
            f"S = {sorted(pair.s)} is not contained in the breaking vertices of H"
        )
    return hmask, smask


def admissible_pair(g: Graph, h, s=()) -> AdmissiblePair:
    """Validated constructor."""
    pair = AdmissiblePair(frozenset(h), frozenset(s))
    _check_admissible(g, pair)
    return pair


def admissible_pairs(g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[AdmissiblePair]:
    """Every (H, S with S a subset of B_H), canonically ordered.

    Without Condition (K) the enumeration still makes sense but only covers
    the gauge-invariant part of the ideal lattice; a warning is emitted.
    """
    require_enumerable(g, limit)
    if not _condition_k_cached(g):
        warnings.warn(
            "graph violates Condition (K); admissible pairs describe only the "
            "gauge-invariant ideals",
            stacklevel=2,
        )
    pairs = []
    for h in saturated_hereditary_sets(g, limit):
        breakers = g.sorted_set(g.names(_breaking_masked(g, g.mask(h))))
        for smask in range(1 << len(breakers)):
            s = frozenset(breakers[i] for i in _bits(smask))
            pairs.append(AdmissiblePair(h, s))
    return pairs


# -- lattice operations --------------------------------------------------------


def meet(g: Graph, pairs: Iterable[AdmissiblePair]) -> AdmissiblePair:
    """Intersection of ideals through the admissible-pair formula.

    H is the intersection of the members' H parts and S collects the common
    breaking material cut back down to B_H.  The empty family yields the
    whole-algebra pair (all vertices, no breaking vertices).
    """
    pairs = list(pairs)
    if not pairs:
        return AdmissiblePair(frozenset(g.vertices), frozenset())
    hmask = g.full_mask
    keep = g.full_mask
    for p in pairs:
        ph, ps = _check_admissible(g, p)
        hmask &= ph
        keep &= ph | ps
    smask = keep & _breaking_masked(g, hmask)
    return AdmissiblePair(g.names(hmask), g.names(smask))


def ideal_leq(g: Graph, p: AdmissiblePair, q: AdmissiblePair) -> bool:
    """Containment of the named ideals, expressed through the meet."""
    return meet(g, (p, q)) == p


# -- quotient graphs -----------------------------------------------------------


@dataclass(frozen=True)
class QuotientGraph:
    """The graph realizing the quotient by the ideal of an admissible pair.

    ``primed`` maps every kept breaking vertex (B_H minus S) to the name of
    its sink copy inside ``graph``; ``provenance`` maps every quotient bundle
    back to the source-graph bundle it came from.
    """

    graph: Graph
    primed: dict
    provenance: dict


def _fresh_name(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def quotient_graph(g: Graph, pair: AdmissiblePair) -> QuotientGraph:
    """Remove H, then re-attach a sink copy v' for every kept breaking vertex.

    Bundles whose target survives are kept verbatim; every bundle into a kept
    breaking vertex v is duplicated toward the sink copy v'.
    """
    hmask, smask = _check_admissible(g, pair)
    kept_breakers = g.names(_breaking_masked(g, hmask) & ~smask)

    taken = set(g.vertices)
    primed = {v: _fresh_name(f"{v}_prime", taken) for v in g.sorted_set(kept_breakers)}
    vertices = [v for v in g.vertices if not hmask >> g.index[v] & 1]
    vertices += [primed[v] for v in g.sorted_set(kept_breakers)]

    labels = {b.label for b in g.bundles if b.label}
    bundles: list[Bundle] = []
    provenance: dict[Bundle, Bundle] = {}
    for b in g.bundles:
        if hmask >> g.index[b.dst] & 1:
            continue
        bundles.append(b)
        provenance[b] = b
        if b.dst in primed:
            label = None
            if b.label is not None:
                label = _fresh_name(f"{b.label}_prime", labels)
            copy = Bundle(b.src, primed[b.dst], b.mult, label)
            bundles.append(copy)
            provenance[copy] = b

    return QuotientGraph(Graph(vertices, bundles), primed, provenance)


# -- classification ------------------------------------------------------------


def _classify_from_structure(
    kept_breakers: tuple,
    complement_is_tail: bool,
    complement_is_cluster: bool,
    complement_is_return_tail: bool,
) -> IdealClass:
    """Decision table shared by the direct route; inputs are plain booleans.

    With the full breaking set kept out of S the verdict depends on whether
    the complement is a maximal tail (primitive), merely a cluster (prime but
    not primitive; impossible on finite-vertex graphs but part of the
    contract), or neither.  Exactly one kept breaking vertex is primitive
    precisely when the complement is that vertex's tail; two or more kept
    breaking vertices always fail (the quotient would hold two sinks).
    """
    if not kept_breakers:
        if complement_is_tail:
            return IdealClass(IdealKind.PRIMITIVE_TAIL)
        if complement_is_cluster:
            return IdealClass(IdealKind.PRIME_NOT_PRIMITIVE)
        return IdealClass(IdealKind.NOT_PRIME)
    if len(kept_breakers) == 1 and complement_is_return_tail:
        return IdealClass(IdealKind.PRIMITIVE_RETURN, v0=kept_breakers[0])
    return IdealClass(IdealKind.NOT_PRIME)


def _require_condition_k(g: Graph) -> None:
    if not _condition_k_cached(g):
        raise ConditionKRequired("classification requires Condition (K)")


def classify_ideal(g: Graph, pair: AdmissiblePair) -> IdealClass:
    """Classify the ideal of (H, S) from the complement of H."""
    _require_condition_k(g)
    hmask, smask = _check_admissible(g, pair)
    kept = g.sorted_set(g.names(_breaking_masked(g, hmask) & ~smask))
    complement = g.names(g.full_mask & ~hmask)

    is_tail = is_cluster = is_return_tail = False
    if not kept:
        rep = mt_report(g, complement)
        is_cluster = bool(complement) and rep.cluster_axioms
        is_tail = is_cluster and rep.mt4
    elif len(kept) == 1:
        is_return_tail = complement == upward_set(g, kept)
    return _classify_from_structure(kept, is_tail, is_cluster, is_return_tail)


def classify_via_quotient(g: Graph, pair: AdmissiblePair) -> IdealClass:
    """Classify by building the quotient graph and testing it for primeness.

    The quotient algebra is prime iff the quotient graph satisfies Condition
    (L) and is downward directed; primitivity additionally needs the countable
    separation property, which always holds here.  The empty quotient (H is
    everything) is the zero algebra and counts as not prime.
    """
    _require_condition_k(g)
    q = quotient_graph(g, pair)
    qg = q.graph
    if not qg.vertices:
        return IdealClass(IdealKind.NOT_PRIME)
    prime = condition_L(qg).holds and is_downward_directed(qg, qg.vertices).holds
    if not prime:
        return IdealClass(IdealKind.NOT_PRIME)
    primitive = has_csp(qg, qg.vertices)[0]
    if not primitive:  # unreachable at this scale; kept for contract symmetry
        return IdealClass(IdealKind.PRIME_NOT_PRIMITIVE)
    if len(q.primed) == 1:
        (v0,) = q.primed
        return IdealClass(IdealKind.PRIMITIVE_RETURN, v0=v0)
    return IdealClass(IdealKind.PRIMITIVE_TAIL)
