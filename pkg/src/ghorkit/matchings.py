"""Perfect matchings by exact cover, simplicity, and the eta/tau labelings.

Faces are the columns of the cover problem and arrows the rows; every arrow
covers the (two) faces it bounds.  The search always branches on the face with
the fewest live candidate arrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Mapping, Sequence

from .graphs import is_strongly_connected
from .monomial import Monomial
from .quiver import DimerQuiver

ALL = "all"
SIMPLE = "simple"


class NamingError(ValueError):
    pass


class NotPerfectError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    arrows: frozenset[str]
    name: str | None = None

    @property
    def sorted_arrows(self) -> tuple[str, ...]:
        return tuple(sorted(self.arrows))

    def __str__(self):
        body = ",".join(self.sorted_arrows)
        return f"{self.name}={body}" if self.name else body


def enumerate_perfect_matchings(quiver: DimerQuiver) -> list[Matching]:
    faces = [frozenset(f.arrows) for f in quiver.faces]
    rows = {a: [k for k, f in enumerate(faces) if a in f] for a in quiver.arrow_ids}
    # an arrow lying twice on one face can never be in a perfect matching
    usable = frozenset(a for a in quiver.arrow_ids
                       if all(f.arrows.count(a) <= 1 for f in quiver.faces))
    solutions: list[tuple[str, ...]] = []

    def search(open_faces: frozenset[int], live: frozenset[str], chosen: list[str]):
        if not open_faces:
            solutions.append(tuple(sorted(chosen)))
            return
        best, best_cands = None, None
        for k in sorted(open_faces):
            cands = [a for a in sorted(faces[k]) if a in live]
            if best_cands is None or len(cands) < len(best_cands):
                best, best_cands = k, cands
                if not cands:
                    return
        for a in best_cands:
            hit = set(rows[a])
            if not hit <= open_faces:
                continue
            dead = {b for b in live for k in hit if b in faces[k]}
            chosen.append(a)
            search(open_faces - hit, live - dead, chosen)
            chosen.pop()

    search(frozenset(range(len(faces))), usable, [])
    return [Matching(frozenset(s)) for s in sorted(set(solutions))]


def is_perfect(quiver: DimerQuiver, arrows) -> bool:
    arrows = set(arrows)
    return all(sum(1 for a in f.arrows if a in arrows) == 1 for f in quiver.faces)


def is_simple(quiver: DimerQuiver, matching: Matching) -> bool:
    if not is_perfect(quiver, matching.arrows):
        raise NotPerfectError(f"{sorted(matching.arrows)} is not a perfect matching")
    edges = [(a.tail, a.head) for a in quiver.arrows if a.id not in matching.arrows]
    return is_strongly_connected(quiver.vertices, edges)


@dataclass(frozen=True)
class LabelTable:
    matchings: tuple[Matching, ...]
    simple_flags: tuple[bool, ...]
    eta: Mapping[str, Monomial]
    tau: Mapping[str, Monomial]
    name_order: tuple[int, ...] = ()

    @property
    def simple_indices(self) -> list[int]:
        return [k for k, s in enumerate(self.simple_flags) if s]

    def names(self) -> list[str]:
        return [m.name or f"m{k + 1}" for k, m in enumerate(self.matchings)]

    def display_order(self) -> list[int]:
        """Named variables in naming-map order, then the rest by index."""
        rest = [k for k in range(len(self.matchings)) if k not in self.name_order]
        return list(self.name_order) + rest

    def labels(self, basis: str = ALL) -> Mapping[str, Monomial]:
        if basis == ALL:
            return self.eta
        if basis == SIMPLE:
            return self.tau
        raise ValueError(f"unknown basis {basis!r}")

    def size(self, basis: str = ALL) -> int:
        return len(self.matchings) if basis == ALL else len(self.simple_indices)

    def basis_indices(self, basis: str = ALL) -> list[int]:
        return list(range(len(self.matchings))) if basis == ALL else self.simple_indices

    def format(self, m: Monomial, basis: str = ALL) -> str:
        idx = self.basis_indices(basis)
        names = [self.names()[k] for k in idx]
        pos = {k: j for j, k in enumerate(idx)}
        order = [pos[k] for k in self.display_order() if k in pos]
        return m.format(names, order)

    def unit(self, basis: str = ALL) -> Monomial:
        return Monomial.unit(self.size(basis))


def build_label_table(quiver: DimerQuiver, names: Mapping[str, Sequence[str]] | None = None) -> LabelTable:
    found = enumerate_perfect_matchings(quiver)
    rank: dict[int, int] = {}
    if names:
        by_set = {m.arrows: k for k, m in enumerate(found)}
        assigned: dict[int, str] = {}
        for r, (name, arrows) in enumerate(names.items()):
            key = frozenset(arrows)
            if key not in by_set:
                raise NamingError(f"name {name!r} refers to {sorted(key)}, which is not a perfect matching")
            k = by_set[key]
            if k in assigned:
                raise NamingError(f"matching {sorted(key)} named twice")
            assigned[k] = name
            rank[k] = r
        found = [Matching(m.arrows, assigned.get(k)) for k, m in enumerate(found)]
    flags = tuple(is_simple(quiver, m) for m in found)
    simple = [k for k, s in enumerate(flags) if s]
    eta = {a: Monomial(tuple(int(a in m.arrows) for m in found)) for a in quiver.arrow_ids}
    tau = {a: Monomial(tuple(int(a in found[k].arrows) for k in simple)) for a in quiver.arrow_ids}
    order = tuple(sorted(rank, key=rank.get))
    return LabelTable(tuple(found), flags, eta, tau, order)


def sigma_monomial(table: LabelTable, basis: str = ALL) -> Monomial:
    return Monomial((1,) * table.size(basis))


def parse_names(text: str) -> dict[str, list[str]]:
    """Parse ``name = a,b`` lines into an ordered name -> arrow ids map."""
    out: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition("=")
        name = name.strip()
        if not sep or not name:
            raise NamingError(f"line {lineno}: expected 'name = a,b'")
        out[name] = [t.strip() for t in body.split(",") if t.strip()]
    return out
