"""Cycle algebra S, bounded center R, and the quiver-level geodesic check.

Every cycle label factors through simple cycles, and a multiset of simple
cycles whose supports chain together through a vertex ``i`` is realised by a
closed walk at ``i`` (its arrow multigraph is balanced and connected, hence
Eulerian).  Vertex cycle monoids are therefore built from such "cactus"
multisets instead of raw path enumeration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import networkx as nx

from .lattice import integer_rank
from .matchings import ALL, SIMPLE, LabelTable
from .monomial import Monomial, sort_key
from .paths import (GEODESIC, UNKNOWN, closed_lift_windows, cycles_at, geodesic_certify_bounded,
                    parallel, path_homology, path_label, rotations)
from .quiver import DimerQuiver, Path
from .surface import HomologyClass

DEFAULT_DEGREE_BOUND = 6

EQUAL_UP_TO_BOUND = "equal-up-to-bound"
STRICTLY_SMALLER = "strictly-smaller"
GEODESIC_UP_TO_BOUND = "geodesic-up-to-bound"
FAILS = "fails"


@dataclass(frozen=True)
class CycleRecord:
    cycle: Path
    tau_label: Monomial
    eta_label: Monomial
    homology: HomologyClass
    vertices_visited: frozenset[int]


@dataclass(frozen=True)
class MonomialSet:
    elements: frozenset[Monomial]
    basis: str = SIMPLE

    def sorted(self) -> list[Monomial]:
        return sorted(self.elements, key=sort_key)

    def __contains__(self, m):
        return m in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted())


def _record(quiver: DimerQuiver, table: LabelTable, c: Path) -> CycleRecord:
    return CycleRecord(c, path_label(table, c, SIMPLE), path_label(table, c, ALL),
                       path_homology(quiver, c), frozenset(c.vertices))


def simple_cycles(quiver: DimerQuiver, table: LabelTable) -> list[CycleRecord]:
    """Cycles without repeated interior vertices, one per rotation class, based at the least vertex.

    Vertex cycles come from Johnson's algorithm on the simple digraph; each is
    expanded over the parallel arrows between consecutive vertices.
    """
    g = nx.DiGraph()
    g.add_nodes_from(quiver.vertices)
    parallel_arrows: dict[tuple[int, int], list[str]] = {}
    for a in quiver.arrows:
        g.add_edge(a.tail, a.head)
        parallel_arrows.setdefault((a.tail, a.head), []).append(a.id)
    out = []
    for vc in nx.simple_cycles(g):
        k = vc.index(min(vc))
        vc = vc[k:] + vc[:k]
        hops = [(vc[j], vc[(j + 1) % len(vc)]) for j in range(len(vc))]
        for choice in product(*(parallel_arrows[h] for h in hops)):
            out.append(_record(quiver, table, quiver.path(choice)))
    out.sort(key=lambda r: (r.cycle.length, r.cycle.tail, r.cycle.steps))
    return out


def cycle_algebra_generators(quiver: DimerQuiver, table: LabelTable) -> MonomialSet:
    return MonomialSet(frozenset(r.tau_label for r in simple_cycles(quiver, table)), SIMPLE)


def krull_dimension(gens: MonomialSet) -> int:
    """Krull dimension of the monomial algebra: rank of the exponent lattice."""
    return integer_rank(m.exponents for m in gens.elements)


def vertex_cycle_certificates(quiver: DimerQuiver, table: LabelTable, i: int,
                              degree_bound: int = DEFAULT_DEGREE_BOUND,
                              records: list[CycleRecord] | None = None,
                              ) -> dict[Monomial, tuple[CycleRecord, ...]]:
    """tau-label -> a multiset of simple cycles realising it at vertex ``i``."""
    if records is None:
        records = simple_cycles(quiver, table)
    unit = table.unit(SIMPLE)
    found: dict[Monomial, tuple[CycleRecord, ...]] = {unit: ()}
    start = (frozenset({i}), unit)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (verts, label), used = queue.popleft()
        for r in records:
            if not (r.vertices_visited & verts):
                continue
            nl = label * r.tau_label
            if nl.degree > degree_bound:
                continue
            key = (verts | r.vertices_visited, nl)
            if key in seen:
                continue
            seen.add(key)
            nu = used + (r,)
            found.setdefault(nl, nu)
            queue.append((key, nu))
    return found


def certificate_path(quiver: DimerQuiver, i: int, cycles: tuple[CycleRecord, ...]) -> Path:
    """A closed walk at ``i`` using exactly the arrows of the given cycles (Hierholzer)."""
    if not cycles:
        return quiver.trivial_path(i)
    remaining: dict[int, list[str]] = {}
    for r in cycles:
        for s in r.cycle.steps:
            remaining.setdefault(quiver.arrow(s).tail, []).append(s)
    for v in remaining:
        remaining[v].sort(reverse=True)
    stack = [(i, None)]
    circuit: list[str] = []
    while stack:
        v, via = stack[-1]
        if remaining.get(v):
            a = remaining[v].pop()
            stack.append((quiver.arrow(a).head, a))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    return quiver.path(reversed(circuit), i)


def vertex_cycle_monomials(quiver: DimerQuiver, table: LabelTable, i: int,
                           degree_bound: int = DEFAULT_DEGREE_BOUND, records=None) -> MonomialSet:
    return MonomialSet(frozenset(vertex_cycle_certificates(quiver, table, i, degree_bound, records)))


def center_generators_bounded(quiver: DimerQuiver, table: LabelTable,
                              degree_bound: int = DEFAULT_DEGREE_BOUND) -> MonomialSet:
    records = simple_cycles(quiver, table)
    common = None
    for v in quiver.vertices:
        here = set(vertex_cycle_monomials(quiver, table, v, degree_bound, records).elements)
        common = here if common is None else common & here
    return MonomialSet(frozenset(common or ()))


def bounded_products(gens: MonomialSet, degree_bound: int, unit: Monomial) -> set[Monomial]:
    """All products of generators of degree <= degree_bound (the unit included)."""
    gs = [g for g in gens.elements if not g.is_unit()]
    out = {unit}
    frontier = [unit]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gs:
                p = m * g
                if p.degree <= degree_bound and p not in out:
                    out.add(p)
                    nxt.append(p)
        frontier = nxt
    return out


@dataclass(frozen=True)
class RSComparison:
    outcome: str
    bound: int
    witness: Monomial | None = None


def compare_R_S_bounded(quiver: DimerQuiver, table: LabelTable,
                        degree_bound: int = DEFAULT_DEGREE_BOUND) -> RSComparison:
    S = bounded_products(cycle_algebra_generators(quiver, table), degree_bound, table.unit(SIMPLE))
    R = center_generators_bounded(quiver, table, degree_bound).elements
    missing = sorted(S - R, key=sort_key)
    if missing:
        return RSComparison(STRICTLY_SMALLER, degree_bound, missing[0])
    return RSComparison(EQUAL_UP_TO_BOUND, degree_bound)


# -- quiver-level geodesic check ----------------------------------------------------


def canonical_rotation(c: Path) -> Path:
    return min(rotations(c), key=lambda r: r.steps)


def all_cycles(quiver: DimerQuiver, max_len: int) -> list[Path]:
    """Every nontrivial cycle of length <= max_len, one per rotation class."""
    seen = set()
    out = []
    for v in quiver.vertices:
        for c in cycles_at(quiver, v, max_len):
            r = canonical_rotation(c)
            if r.steps not in seen:
                seen.add(r.steps)
                out.append(r)
    out.sort(key=lambda c: (c.length, c.steps))
    return out


def lift_is_free(quiver: DimerQuiver, c: Path) -> bool:
    """No rotation of ``c`` has a closed subpath (the whole cycle included) in the homology cover."""
    return not any(closed_lift_windows(quiver, r.steps, r.tail) for r in rotations(c))


@dataclass
class GeodesicCheck:
    status: str
    bound: int
    witness: Path | None = None
    witness_class: HomologyClass | None = None
    families: dict = field(default_factory=dict)


def parallel_cover(quiver: DimerQuiver, pool: list[Path]) -> list[Path] | None:
    """Pairwise-parallel subfamily of ``pool`` covering every vertex, if any."""
    vertices = set(quiver.vertices)

    def search(chosen: list[Path], covered: set[int]):
        if covered >= vertices:
            return list(chosen)
        v = min(vertices - covered)
        for c in pool:
            if v in c.vertices and all(parallel(quiver, c, d) for d in chosen):
                chosen.append(c)
                got = search(chosen, covered | set(c.vertices))
                if got is not None:
                    return got
                chosen.pop()
        return None

    return search([], set())


def geodesic_quiver_check_bounded(quiver: DimerQuiver, table: LabelTable,
                                  bound: int = DEFAULT_DEGREE_BOUND) -> GeodesicCheck:
    """For each lift-free cycle class up to the bound, look for a covering parallel geodesic family.

    Family members are taken from the same homology class as the cycle.
    """
    if bound < 1:
        return GeodesicCheck(GEODESIC_UP_TO_BOUND, bound)
    cycles = all_cycles(quiver, bound)
    by_class: dict[HomologyClass, list[Path]] = {}
    for c in cycles:
        by_class.setdefault(path_homology(quiver, c), []).append(c)
    certified: dict[tuple, str] = {}
    result = GeodesicCheck(GEODESIC_UP_TO_BOUND, bound)
    inconclusive = None
    for p in cycles:
        h = path_homology(quiver, p)
        if h in result.families or not lift_is_free(quiver, p):
            continue
        pool, unsure = [], []
        for c in by_class[h]:
            if c.steps not in certified:
                certified[c.steps] = geodesic_certify_bounded(quiver, table, c, bound)
            verdict = certified[c.steps]
            if verdict == GEODESIC:
                pool.append(c)
            elif verdict == UNKNOWN:
                unsure.append(c)
        family = parallel_cover(quiver, pool)
        if family is not None:
            result.families[h] = family
            continue
        if unsure:
            if inconclusive is None:
                inconclusive = (p, h)
            continue
        return GeodesicCheck(FAILS, bound, p, h, result.families)
    if inconclusive is not None:
        result.status = UNKNOWN
        result.witness, result.witness_class = inconclusive
    return result
