"""Paths in a dimer quiver: labels, homology, equality, geodesics, parallelism.

Equality in the ghor algebra is decided exactly (endpoints plus eta label).
Equality in the dimer algebra is only semi-decided, by breadth-first rewriting
with the face relations up to a length bound.  Geodesic certification lifts
paths to the homology cover, where vertices are pairs (vertex, Z^N class);
universal-cover loops project to null-homologous loops, so a path that stays
free of closed subpaths there is certified.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator

from .matchings import ALL, LabelTable, sigma_monomial
from .monomial import Monomial
from .quiver import (IN, OUT, CompositionError, DimerQuiver, Path,
                     complementary_arcs, rotation_system, unit_cycle_at)
from .surface import HomologyClass

EQUAL = "equal"
NOT_EQUAL_WITHIN_BOUND = "not-equal-within-bound"
GEODESIC = "geodesic"
NOT_GEODESIC = "not-geodesic"
UNKNOWN = "unknown"


def compose(p: Path, q: Path) -> Path:
    """``p`` after ``q``."""
    if q.head != p.tail:
        raise CompositionError(f"cannot compose {p} after {q}: {q.head} != {p.tail}")
    return Path(q.steps + p.steps, q.vertices + p.vertices[1:])


def path_label(table: LabelTable, p: Path, basis: str = ALL) -> Monomial:
    labels = table.labels(basis)
    m = table.unit(basis)
    for s in p.steps:
        m = m * labels[s]
    return m


def path_homology(quiver: DimerQuiver, p: Path) -> HomologyClass:
    return quiver.crossing_sum(p.steps)


def ghor_equal(table: LabelTable, p: Path, q: Path) -> bool:
    return (p.tail, p.head) == (q.tail, q.head) and path_label(table, p) == path_label(table, q)


def has_cyclic_subpath(p: Path) -> bool:
    """True if a proper contiguous subpath is a cycle."""
    v = p.vertices
    n = len(v) - 1
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if v[i] == v[j] and (i, j) != (0, n):
                return True
    return False


def sigma_power_relation(table: LabelTable, p: Path, q: Path, basis: str = ALL) -> int | None:
    """``l`` with label(p) = label(q) * sigma^l, if one exists."""
    diff = path_label(table, p, basis) / path_label(table, q, basis)
    e = diff.exponents
    if not e:
        return 0
    return e[0] if all(x == e[0] for x in e) else None


# -- enumeration ----------------------------------------------------------------


def paths_from(quiver: DimerQuiver, v: int, max_len: int) -> Iterator[Path]:
    """All paths starting at ``v`` of length <= max_len, shortest first."""
    frontier = [quiver.trivial_path(v)]
    out_by_vertex = {u: quiver.out_arrows(u) for u in quiver.vertices}
    for _ in range(max_len + 1):
        yield from frontier
        nxt = []
        for p in frontier:
            for a in out_by_vertex[p.head]:
                nxt.append(Path(p.steps + (a.id,), p.vertices + (a.head,)))
        frontier = nxt
        if not frontier:
            return


def cycles_at(quiver: DimerQuiver, v: int, max_len: int, min_len: int = 1) -> list[Path]:
    return [p for p in paths_from(quiver, v, max_len) if p.head == v and p.length >= min_len]


def representatives(quiver: DimerQuiver, table: LabelTable, p: Path, bound: int) -> list[Path]:
    """Paths equal to ``p`` in the ghor algebra (same endpoints and label), length <= bound.

    Labels only grow along a path, so branches whose label stops dividing the
    target are cut.  Arrows with the unit label do not shrink the search; the
    length bound keeps it finite.
    """
    target = path_label(table, p)
    eta = table.eta
    out = []

    def extend(v, steps, verts, lab):
        if v == p.head and lab == target:
            out.append(Path(tuple(steps), tuple(verts)))
        if len(steps) == bound:
            return
        for a in quiver.out_arrows(v):
            nl = lab * eta[a.id]
            if nl.divides(target):
                steps.append(a.id)
                verts.append(a.head)
                extend(a.head, steps, verts, nl)
                steps.pop()
                verts.pop()

    extend(p.tail, [], [p.tail], table.unit())
    if p.length > bound:
        out.append(p)
    return sorted(set(out), key=lambda r: (r.length, r.arrows))


# -- dimer rewriting --------------------------------------------------------------


def dimer_rules(quiver: DimerQuiver) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Directed rewrite rules lhs -> rhs; both complementary arcs of one arrow."""
    rules = set()
    for a in quiver.arrow_ids:
        arcs = [arc for _, arc in complementary_arcs(quiver, a)]
        for x in arcs:
            for y in arcs:
                if x != y:
                    rules.add((x, y))
    return sorted(rules)


def dimer_closure(quiver: DimerQuiver, p: Path, bound: int, rules=None) -> Iterator[Path]:
    """Breadth-first closure of ``p`` under two-sided dimer rewriting, lengths <= bound."""
    if rules is None:
        rules = dimer_rules(quiver)
    seen = {p.steps}
    queue = deque([p.steps])
    while queue:
        s = queue.popleft()
        yield quiver.path(s, p.tail)
        for lhs, rhs in rules:
            k = len(lhs)
            for i in range(len(s) - k + 1):
                if s[i:i + k] == lhs:
                    t = s[:i] + rhs + s[i + k:]
                    if len(t) <= bound and t not in seen:
                        seen.add(t)
                        queue.append(t)


def dimer_equal_bounded(quiver: DimerQuiver, p: Path, q: Path, bound: int) -> str:
    if (p.tail, p.head) != (q.tail, q.head):
        return NOT_EQUAL_WITHIN_BOUND
    if p == q:
        return EQUAL
    if p.length > bound:
        return NOT_EQUAL_WITHIN_BOUND
    for r in dimer_closure(quiver, p, bound):
        if r.steps == q.steps:
            return EQUAL
    return NOT_EQUAL_WITHIN_BOUND


# -- homology cover lifts -----------------------------------------------------------


def closed_lift_windows(quiver: DimerQuiver, steps: tuple[str, ...], start: int) -> list[tuple[int, int]]:
    """Windows ``(i, j)`` of ``steps`` whose lift to the homology cover is closed."""
    pos = (start, HomologyClass.zero(quiver.N))
    lift = [pos]
    for s in steps:
        a = quiver.arrow(s)
        pos = (a.head, pos[1] + a.crossing)
        lift.append(pos)
    return [(i, j) for i in range(len(lift)) for j in range(i + 1, len(lift)) if lift[i] == lift[j]]


def rotations(c: Path) -> list[Path]:
    n = c.length
    return [Path(c.steps[k:] + c.steps[:k], c.vertices[k:-1] + c.vertices[:k + 1]) for k in range(max(n, 1))]


def is_contractible_bounded(quiver: DimerQuiver, table: LabelTable, s: Path, bound: int) -> bool:
    """Cycle ``s`` rewrites to a power of the unit cycle at its base within the bound."""
    sigma = sigma_monomial(table)
    label = path_label(table, s)
    k = sigma_power_relation(table, s, quiver.trivial_path(s.tail))
    if k is None or k < 1 or label != sigma ** k:
        return False
    unit = unit_cycle_at(quiver, s.tail)
    target = quiver.path(unit.steps * k, s.tail)
    limit = max(bound, s.length, target.length) + 2
    return dimer_equal_bounded(quiver, s, target, limit) == EQUAL


def geodesic_certify_bounded(quiver: DimerQuiver, table: LabelTable, c: Path, bound: int) -> str:
    if not c.is_cycle() or c.is_trivial():
        raise ValueError(f"{c} is not a nontrivial cycle")
    found_closed = []
    for rep in representatives(quiver, table, c, bound):
        for r in rotations(rep):
            for i, j in closed_lift_windows(quiver, r.steps, r.tail):
                found_closed.append(quiver.path(r.steps[i:j], r.vertices[i]))
    if not found_closed:
        return GEODESIC
    for s in sorted(set(found_closed), key=lambda x: (x.length, x.arrows)):
        if is_contractible_bounded(quiver, table, s, bound):
            return NOT_GEODESIC
    return UNKNOWN


# -- parallelism -----------------------------------------------------------------


def _same_cycle(c1: Path, c2: Path) -> bool:
    return c1.length == c2.length and any(r.steps == c2.steps for r in rotations(c1))


def _left_of(rot: tuple, out_end, in_end, e) -> bool:
    """Is end ``e`` strictly counterclockwise after ``out_end`` and before ``in_end``?"""
    n = len(rot)
    o, i, x = rot.index(out_end), rot.index(in_end), rot.index(e)
    return 0 < (x - o) % n < (i - o) % n


def crossings(quiver: DimerQuiver, c1: Path, c2: Path) -> list[int]:
    """Vertices where ``c2`` passes from one side of ``c1`` to the other."""
    if not (c1.is_cycle() and c2.is_cycle()) or c1.is_trivial() or c2.is_trivial():
        return []
    if _same_cycle(c1, c2):
        return []
    rot = rotation_system(quiver)
    s1, s2 = c1.steps, c2.steps
    n1, n2 = len(s1), len(s2)
    found = []
    for k in range(n1):
        v = quiver.arrow(s1[k]).tail
        for l in range(n2):
            if quiver.arrow(s2[l]).tail != v:
                continue
            in1, out1 = s1[k - 1], s1[k]
            in2, out2 = s2[l - 1], s2[l]
            if in1 == in2:
                continue
            start_side = _left_of(rot[v], (out1, OUT), (in1, IN), (in2, IN))
            if out1 != out2:
                end_side = _left_of(rot[v], (out1, OUT), (in1, IN), (out2, OUT))
            else:
                m = 1
                while m < min(n1, n2) and s1[(k + m) % n1] == s2[(l + m) % n2]:
                    m += 1
                if m >= min(n1, n2):
                    continue
                kk, ll = (k + m) % n1, (l + m) % n2
                w = quiver.arrow(s1[kk]).tail
                end_side = _left_of(rot[w], (s1[kk], OUT), (s1[kk - 1], IN), (s2[ll], OUT))
            if start_side != end_side:
                found.append(v)
    return found


def parallel(quiver: DimerQuiver, c1: Path, c2: Path) -> bool:
    return not crossings(quiver, c1, c2)
