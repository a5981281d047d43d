"""Subconstituent structure and connectivity certification.

Certifies, instance by instance, the connectivity statements this tool
exists to check: the union of the last two subconstituents is connected
for Q-polynomial inputs, the tail from the dual-sequence sign change on
is connected, and the d-th subconstituent of the odd graphs splits into
the predicted number of bipartite-double components.  The checks iterate
over every base vertex; vertex transitivity is never assumed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from .errors import MathAssertionError
from .families import disjoint_subset_graph, odd_graph
from .graphs import (DistanceData, Graph, are_isomorphic, bipartite_double,
                     connected_components, distance_data, induced_subgraph,
                     two_coloring)
from .parallel import pmap

log = logging.getLogger(__name__)


def subconstituent(g: Graph, dd: DistanceData, gamma: int, i: int) -> Graph:
    """Induced subgraph on the sphere of radius i about gamma."""
    if not 0 <= i <= dd.diameter:
        raise IndexError(f"subconstituent index {i} outside 0..{dd.diameter}")
    return induced_subgraph(g, dd.sphere(gamma, i)).graph


def union_subconstituent(g: Graph, dd: DistanceData, gamma: int,
                         lo: int, hi: int) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on the union of spheres lo..hi (original labels returned)."""
    members = np.nonzero((dd.dist[gamma] >= lo) & (dd.dist[gamma] <= hi))[0]
    sub, verts = induced_subgraph(g, members)
    return sub, verts


def last_two_connected(g: Graph, dd: DistanceData, gamma: int
                       ) -> tuple[bool, list[list[int]]]:
    """Connectivity of the subgraph on the two outermost spheres about gamma.

    Components are reported in original vertex labels.
    """
    d = dd.diameter
    if d < 2:
        raise ValueError(f"needs diameter at least 2, got {d}")
    sub, verts = union_subconstituent(g, dd, gamma, d - 1, d)
    comps = connected_components(sub)
    mapped = [[verts[v] for v in comp] for comp in comps]
    return len(comps) == 1, mapped


def dual_sign_change_index(dual: np.ndarray, zero_snap: float = 1e-9) -> int:
    """The unique s with dual[s-1] > 0 and dual[s] <= 0.

    Values within ``zero_snap`` of zero are snapped to zero before the sign
    test (and logged).  Raises MathAssertionError when the sign pattern has
    no crossing or more than one, since a unique crossing is guaranteed for
    the second-largest-eigenvalue idempotent of any distance-regular graph.
    """
    seq = np.asarray(dual, dtype=np.float64).copy()
    near_zero = np.abs(seq) <= zero_snap * max(1.0, abs(seq[0]))
    if near_zero.any():
        log.info("snapping dual values %s to zero before the sign test",
                 np.nonzero(near_zero)[0].tolist())
        seq[near_zero] = 0.0
    if seq[0] <= 0:
        raise MathAssertionError(f"dual sequence must start positive, got {seq[0]}")
    crossings = [s for s in range(1, seq.size) if seq[s - 1] > 0 and seq[s] <= 0]
    if len(crossings) != 1:
        raise MathAssertionError(
            f"dual sequence {seq.tolist()} has {len(crossings)} sign crossings, expected exactly 1")
    return crossings[0]


def tail_connected(g: Graph, dd: DistanceData, gamma: int, s: int) -> bool:
    """Connectivity of the subgraph induced on all spheres from radius s outward."""
    if not 0 <= s <= dd.diameter:
        raise IndexError(f"tail start {s} outside 0..{dd.diameter}")
    sub, _ = union_subconstituent(g, dd, gamma, s, dd.diameter)
    return len(connected_components(sub)) == 1


@dataclass
class SubconstituentShape:
    connected: bool
    diameter: Optional[int]   # None when disconnected
    components: int
    vertices: int
    regular_degree: Optional[int]  # None when not regular
    edges: int


def subconstituent_shape(g: Graph, dd: DistanceData, gamma: int, i: int) -> SubconstituentShape:
    """Diameter when connected, component count otherwise, plus degree data."""
    sub = subconstituent(g, dd, gamma, i)
    comps = connected_components(sub)
    degs = sub.degrees()
    regular = degs[0] if degs and len(set(degs)) == 1 else None
    if len(comps) == 1:
        diam = distance_data(sub).diameter if sub.n > 0 else 0
        return SubconstituentShape(True, diam, 1, sub.n, regular, sub.num_edges)
    return SubconstituentShape(False, None, len(comps), sub.n, regular, sub.num_edges)


def sweep_last_two(g: Graph, dd: DistanceData, jobs: int = 1) -> tuple[bool, list[bool]]:
    """last_two_connected at every base vertex; reports are indexed by vertex."""
    flags = pmap(lambda gamma: last_two_connected(g, dd, gamma)[0], range(g.n), jobs)
    return all(flags), flags


def sweep_tail(g: Graph, dd: DistanceData, s: int, jobs: int = 1) -> tuple[bool, list[bool]]:
    flags = pmap(lambda gamma: tail_connected(g, dd, gamma, s), range(g.n), jobs)
    return all(flags), flags


# ---------------------------------------------------------------------------
# Odd-graph component census.
# ---------------------------------------------------------------------------

@dataclass
class CensusRecord:
    d: int
    expected_count: int
    expected_size: int
    sphere_size: int
    count: int
    component_sizes: list[int]
    component_degree: int        # common within-sphere valency of every component
    iso_certified: bool          # every attempted certification succeeded
    iso_components: int          # how many components were certified
    iso_skipped: bool            # True when components were too big to certify
    bipartite_halves_ok: bool
    vertices_checked: int
    failures: list[str] = field(default_factory=list)


def _odd_core(r: int) -> Graph:
    # r-subsets of a (2r+1)-set with disjointness adjacency; r = 1 gives the
    # triangle, which the census needs even though it is below the public
    # odd-graph parameter floor
    return disjoint_subset_graph(2 * r + 1, r, f"odd-core:{r}")


def odd_component_census(d: int, all_vertices: bool = True,
                         iso_cap: int = 64) -> CensusRecord:
    """Census of the components of the d-th subconstituent of the odd graph.

    Checks the component count binom(2m, m)/2 and the common component size
    2 binom(2r+1, r); when components are small enough, certifies each one
    isomorphic to the bipartite double of the order-r odd-graph core.  The
    record reports the lexicographically first base vertex; with
    ``all_vertices`` every base vertex is verified (isomorphism included,
    unless the ambient graph is large, in which case isomorphism runs only
    at the first vertex).

    Raises MathAssertionError when any assertion fails.
    """
    if d < 3:
        raise ValueError(f"census needs d >= 3, got {d}")
    g = odd_graph(d)
    dd = distance_data(g)
    m = d // 2 if d % 2 == 0 else (d + 1) // 2
    r = d // 2 if d % 2 == 0 else (d - 1) // 2
    expected_count = comb(2 * m, m) // 2
    expected_size = 2 * comb(2 * r + 1, r)
    expected_sphere = comb(d, m) * comb(d + 1, m)

    expected_degree = (d + 2) // 2  # the outer sphere's regular valency
    iso_possible = expected_size <= iso_cap
    iso_every_vertex = iso_possible and g.n <= 200
    reference = bipartite_double(_odd_core(r)) if iso_possible else None

    gammas = range(g.n) if all_vertices else range(1)
    failures: list[str] = []
    first_sizes: list[int] = []
    first_count = 0
    iso_done = 0
    halves_ok = True

    for gamma in gammas:
        sphere = dd.sphere(gamma, d)
        if sphere.size != expected_sphere:
            failures.append(f"gamma={gamma}: sphere size {sphere.size} != {expected_sphere}")
            continue
        sub, _ = induced_subgraph(g, sphere)
        comps = connected_components(sub)
        sizes = sorted(len(c) for c in comps)
        if gamma == 0:
            first_count = len(comps)
            first_sizes = sizes
        if len(comps) != expected_count:
            failures.append(f"gamma={gamma}: {len(comps)} components, expected {expected_count}")
        if set(sizes) != {expected_size}:
            failures.append(f"gamma={gamma}: component sizes {sizes}, expected all {expected_size}")
            continue
        for ci, comp in enumerate(comps):
            comp_graph = induced_subgraph(sub, comp).graph
            degrees = set(comp_graph.degrees())
            if degrees != {expected_degree}:
                failures.append(
                    f"gamma={gamma} component {ci}: degrees {sorted(degrees)}, "
                    f"expected {expected_degree}-regular")
            coloring = two_coloring(comp_graph)
            if coloring is None or coloring.count(0) != coloring.count(1):
                halves_ok = False
                failures.append(f"gamma={gamma} component {ci}: not bipartite with equal halves")
            if reference is not None and (iso_every_vertex or gamma == 0):
                ok, _ = are_isomorphic(comp_graph, reference, cap=iso_cap)
                if not ok:
                    failures.append(
                        f"gamma={gamma} component {ci}: not isomorphic to the bipartite double")
                else:
                    iso_done += 1

    record = CensusRecord(
        d=d, expected_count=expected_count, expected_size=expected_size,
        sphere_size=expected_sphere, count=first_count, component_sizes=first_sizes,
        component_degree=expected_degree,
        iso_certified=bool(iso_done) and not any("isomorphic" in f for f in failures),
        iso_components=iso_done, iso_skipped=not iso_possible,
        bipartite_halves_ok=halves_ok, vertices_checked=len(list(gammas)),
        failures=failures)
    if failures:
        raise MathAssertionError(
            "odd-graph census failed:\n  " + "\n  ".join(failures[:20]))
    return record
