"""Dimer quivers embedded in polygon surfaces.

A quiver is given combinatorially: vertices ``1..n``, arrows carrying a
crossing vector in Z^N (signed crossings with the polygon side pairs) and
oriented faces listing their boundary arrows in the order they are traversed.
The DQIF text format is the interchange format::

    surface 2
    vertices 1
    arrow l1 1 1 1 0
    face ccw l1 l2 l3

Paths are stored in application order (``steps[0]`` acts first) but written in
composition order, ``a.d.c.b@1`` being ``b`` then ``c`` then ``d`` then ``a``
starting from vertex 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections.abc import Iterable

from .graphs import is_weakly_connected
from .lattice import integer_rank
from .surface import HomologyClass, PolygonSurface, make_surface

CCW = "ccw"
CW = "cw"
IN = "in"
OUT = "out"


class DQIFError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmbeddingError(ValueError):
    def __init__(self, message: str, vertex=None):
        self.vertex = vertex
        super().__init__(message)


class CompositionError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: int
    head: int
    crossing: HomologyClass


@dataclass(frozen=True)
class Face:
    orientation: str
    arrows: tuple[str, ...]

    def __str__(self):
        return f"{self.orientation}[{','.join(self.arrows)}]"


@dataclass(frozen=True)
class Path:
    """A path in the quiver; ``steps`` in application order, ``vertices`` visited."""

    steps: tuple[str, ...]
    vertices: tuple[int, ...]

    @property
    def tail(self) -> int:
        return self.vertices[0]

    @property
    def head(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def arrows(self) -> tuple[str, ...]:
        """Arrow ids in composition order (rightmost acts first)."""
        return self.steps[::-1]

    def is_cycle(self) -> bool:
        return self.tail == self.head

    def is_trivial(self) -> bool:
        return not self.steps

    def __str__(self):
        return (".".join(self.arrows) or "e") + f"@{self.tail}"


def _face_sort_key(face: Face):
    return (0 if face.orientation == CCW else 1, min(face.arrows), face.arrows)


@dataclass(frozen=True)
class DimerQuiver:
    surface: PolygonSurface
    vertex_count: int
    arrows: tuple[Arrow, ...]
    faces: tuple[Face, ...]
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows, key=lambda a: a.id)))
        object.__setattr__(self, "faces", tuple(sorted(self.faces, key=_face_sort_key)))
        object.__setattr__(self, "_by_id", {a.id: a for a in self.arrows})

    @property
    def N(self) -> int:
        return self.surface.side_pairs

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @property
    def arrow_ids(self) -> list[str]:
        return [a.id for a in self.arrows]

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            raise KeyError(f"unknown arrow {arrow_id!r}") from None

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == v]

    def in_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.head == v]

    def faces_containing(self, arrow_id: str) -> list[Face]:
        return [f for f in self.faces if arrow_id in f.arrows]

    # -- paths --------------------------------------------------------------

    def trivial_path(self, v: int) -> Path:
        if v not in self.vertices:
            raise KeyError(f"unknown vertex {v}")
        return Path((), (v,))

    def path(self, steps: Iterable[str], base: int | None = None) -> Path:
        """Build a path from arrow ids in application order."""
        steps = tuple(steps)
        if not steps:
            if base is None:
                raise CompositionError("trivial path needs a base vertex")
            return self.trivial_path(base)
        first = self.arrow(steps[0])
        if base is not None and first.tail != base:
            raise CompositionError(f"arrow {first.id} does not start at vertex {base}")
        verts = [first.tail]
        for s in steps:
            a = self.arrow(s)
            if a.tail != verts[-1]:
                raise CompositionError(
                    f"arrow {a.id} starts at {a.tail}, previous arrow ends at {verts[-1]}")
            verts.append(a.head)
        return Path(steps, tuple(verts))

    def compose_arrows(self, *arrows: str, base: int | None = None) -> Path:
        """Path from arrow ids in composition order: ``compose_arrows('a','d','c','b')``."""
        return self.path(reversed(arrows), base)

    def parse_path(self, text: str) -> Path:
        """Parse ``a.d.c.b@1`` (composition order, base vertex = tail)."""
        body, sep, base = text.replace(" ", "").partition("@")
        if not sep or not base:
            raise CompositionError(f"path literal {text!r} needs '@<vertex>'")
        try:
            v = int(base)
        except ValueError:
            raise CompositionError(f"bad base vertex in {text!r}") from None
        ids = [t for t in body.split(".") if t] if body not in ("", "e") else []
        return self.path(reversed(ids), v)

    def crossing_sum(self, steps: Iterable[str]) -> HomologyClass:
        total = HomologyClass.zero(self.N)
        for s in steps:
            total = total + self.arrow(s).crossing
        return total


# -- DQIF -------------------------------------------------------------------


def parse_dqif(text: str) -> DimerQuiver:
    n_sides = None
    n_vertices = None
    arrows: dict[str, Arrow] = {}
    raw_faces: list[tuple[int, str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0]
        if kw == "surface":
            if len(tok) != 2 or not _is_int(tok[1]):
                raise DQIFError("expected 'surface <N>'", lineno)
            if n_sides is not None:
                raise DQIFError("duplicate surface line", lineno)
            n_sides = int(tok[1])
            if n_sides < 2:
                raise DQIFError(f"unsupported surface with {n_sides} side pairs", lineno)
        elif kw == "vertices":
            if len(tok) != 2 or not _is_int(tok[1]) or int(tok[1]) < 1:
                raise DQIFError("expected 'vertices <count>'", lineno)
            if n_vertices is not None:
                raise DQIFError("duplicate vertices line", lineno)
            n_vertices = int(tok[1])
        elif kw == "arrow":
            if n_sides is None or n_vertices is None:
                raise DQIFError("arrow before surface/vertices header", lineno)
            if len(tok) < 4:
                raise DQIFError("expected 'arrow <id> <tail> <head> <c_1> ... <c_N>'", lineno)
            aid = tok[1]
            if aid in arrows:
                raise DQIFError(f"duplicate arrow id {aid!r}", lineno)
            if not all(_is_int(t) for t in tok[2:]):
                raise DQIFError("non-integer field in arrow line", lineno)
            tail, head = int(tok[2]), int(tok[3])
            for v in (tail, head):
                if not 1 <= v <= n_vertices:
                    raise DQIFError(f"unknown vertex {v}", lineno)
            coords = tuple(int(t) for t in tok[4:])
            if len(coords) != n_sides:
                raise DQIFError(
                    f"crossing vector of {aid!r} has length {len(coords)}, expected {n_sides}",
                    lineno)
            arrows[aid] = Arrow(aid, tail, head, HomologyClass(coords))
        elif kw == "face":
            if len(tok) < 3 or tok[1] not in (CCW, CW):
                raise DQIFError("expected 'face <ccw|cw> <arrow-id> ...'", lineno)
            raw_faces.append((lineno, tok[1], tok[2:]))
        else:
            raise DQIFError(f"unknown keyword {kw!r}", lineno)
    if n_sides is None:
        raise DQIFError("missing 'surface' line")
    if n_vertices is None:
        raise DQIFError("missing 'vertices' line")
    faces = []
    for lineno, orient, ids in raw_faces:
        for aid in ids:
            if aid not in arrows:
                raise DQIFError(f"face references unknown arrow {aid!r}", lineno)
        faces.append(Face(orient, tuple(ids)))
    return DimerQuiver(make_surface(n_sides), n_vertices, tuple(arrows.values()), tuple(faces))


def serialize_dqif(quiver: DimerQuiver) -> str:
    lines = [f"surface {quiver.N}", f"vertices {quiver.vertex_count}"]
    for a in quiver.arrows:
        coords = " ".join(str(c) for c in a.crossing.coords)
        lines.append(f"arrow {a.id} {a.tail} {a.head} {coords}")
    for f in quiver.faces:
        lines.append(f"face {f.orientation} {' '.join(f.arrows)}")
    return "\n".join(lines) + "\n"


def _is_int(s: str) -> bool:
    try:
        int(s)
    except ValueError:
        return False
    return True


# -- validation -------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list[str] = field(default_factory=list)

    def __str__(self):
        s = f"check {self.name}: {'pass' if self.passed else 'fail'}"
        if self.witnesses:
            s += " witness=" + ";".join(self.witnesses)
        return s


@dataclass
class ValidationReport:
    checks: list[Check]

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [str(c) for c in self.checks] + [f"valid={'true' if self.valid else 'false'}"]


def validate(quiver: DimerQuiver) -> ValidationReport:
    checks = []

    bad = []
    for f in quiver.faces:
        arrs = [quiver.arrow(a) for a in f.arrows]
        if any(arrs[k].head != arrs[(k + 1) % len(arrs)].tail for k in range(len(arrs))):
            bad.append(str(f))
    checks.append(Check("face-composable", not bad, bad))

    bad = []
    for a in quiver.arrow_ids:
        n_ccw = sum(f.arrows.count(a) for f in quiver.faces if f.orientation == CCW)
        n_cw = sum(f.arrows.count(a) for f in quiver.faces if f.orientation == CW)
        if (n_ccw, n_cw) != (1, 1):
            bad.append(a)
    checks.append(Check("arrow-in-one-ccw-and-one-cw-face", not bad, bad))

    chi = quiver.vertex_count - len(quiver.arrows) + len(quiver.faces)
    ok = chi == quiver.surface.euler_char
    checks.append(Check("euler-characteristic", ok,
                        [] if ok else [f"V-E+F={chi}, expected {quiver.surface.euler_char}"]))

    bad = [str(f) for f in quiver.faces if not quiver.crossing_sum(f.arrows).is_zero()]
    checks.append(Check("face-crossing-sum-zero", not bad, bad))

    edges = [(a.tail, a.head) for a in quiver.arrows]
    ok = is_weakly_connected(quiver.vertices, edges)
    checks.append(Check("connected", ok, [] if ok else ["underlying graph disconnected"]))

    rank = integer_rank(c.coords for c in cycle_basis_crossings(quiver))
    ok = rank == quiver.N
    checks.append(Check("homology-rank", ok, [] if ok else [f"rank {rank}, expected {quiver.N}"]))

    try:
        rotation_system(quiver)
        checks.append(Check("rotation-system", True))
    except EmbeddingError as exc:
        checks.append(Check("rotation-system", False, [f"vertex {exc.vertex}: {exc}"]))
    return ValidationReport(checks)


def cycle_basis_crossings(quiver: DimerQuiver) -> list[HomologyClass]:
    """Crossing sums of the fundamental cycles of a BFS spanning forest."""
    zero = HomologyClass.zero(quiver.N)
    potential: dict[int, HomologyClass] = {}
    tree: set[str] = set()
    for root in quiver.vertices:
        if root in potential:
            continue
        potential[root] = zero
        todo = [root]
        while todo:
            v = todo.pop(0)
            for a in quiver.arrows:
                if a.tail == v and a.head not in potential:
                    potential[a.head] = potential[v] + a.crossing
                elif a.head == v and a.tail not in potential:
                    potential[a.tail] = potential[v] - a.crossing
                else:
                    continue
                tree.add(a.id)
                todo.append(a.head if a.tail == v else a.tail)
    return [potential[a.tail] + a.crossing - potential[a.head]
            for a in quiver.arrows if a.id not in tree]


# -- rotation system ----------------------------------------------------------


def face_corners(quiver: DimerQuiver, face: Face) -> list[tuple[int, str, str]]:
    """Corners ``(vertex, incoming arrow, outgoing arrow)`` of a face."""
    arr = face.arrows
    return [(quiver.arrow(arr[k]).head, arr[k], arr[(k + 1) % len(arr)]) for k in range(len(arr))]


def rotation_system(quiver: DimerQuiver) -> dict[int, tuple[tuple[str, str], ...]]:
    """Counterclockwise cyclic order of arrow-ends ``(arrow_id, 'in'|'out')`` at each vertex.

    A ccw face lies to the left of its arrows, so at a ccw corner (x in, y out)
    the end after ``y`` counterclockwise is ``x``; at a cw corner the end after
    ``x`` is ``y``.  The order starts at the least end.
    """
    succ: dict[tuple[str, str], tuple[str, str]] = {}
    owner: dict[tuple[str, str], int] = {}
    for face in quiver.faces:
        for v, x, y in face_corners(quiver, face):
            src, dst = ((y, OUT), (x, IN)) if face.orientation == CCW else ((x, IN), (y, OUT))
            if src in succ and succ[src] != dst:
                raise EmbeddingError(f"arrow-end {src} has two successors", v)
            succ[src] = dst
            owner[src] = v
    result = {}
    for v in quiver.vertices:
        ends = sorted([(a.id, OUT) for a in quiver.out_arrows(v)] +
                      [(a.id, IN) for a in quiver.in_arrows(v)])
        if not ends:
            raise EmbeddingError(f"isolated vertex {v}", v)
        for e in ends:
            if e not in succ:
                raise EmbeddingError(f"arrow-end {e} lies on no face corner", v)
        images = [succ[e] for e in ends]
        if sorted(images) != ends:
            raise EmbeddingError("face corners do not permute the arrow-ends", v)
        cyc = [ends[0]]
        while True:
            nxt = succ[cyc[-1]]
            if nxt == ends[0]:
                break
            cyc.append(nxt)
        if len(cyc) != len(ends):
            raise EmbeddingError(f"neighbourhood of vertex {v} is not a disk", v)
        result[v] = tuple(cyc)
    return result


def unit_cycle_at(quiver: DimerQuiver, vertex: int) -> Path:
    """Least ccw face through ``vertex``, rotated to start at its first corner there."""
    for face in quiver.faces:
        if face.orientation != CCW:
            continue
        arr = face.arrows
        for k, aid in enumerate(arr):
            if quiver.arrow(aid).tail == vertex:
                return quiver.path(arr[k:] + arr[:k])
    raise EmbeddingError(f"no ccw face passes through vertex {vertex}", vertex)


def complementary_arcs(quiver: DimerQuiver, arrow_id: str) -> list[tuple[Face, tuple[str, ...]]]:
    """For each face containing the arrow, the rest of the face after it (application order)."""
    out = []
    for face in quiver.faces_containing(arrow_id):
        arr = face.arrows
        k = arr.index(arrow_id)
        out.append((face, arr[k + 1:] + arr[:k]))
    return out


def load_dqif(path) -> DimerQuiver:
    with open(path, encoding="utf-8") as fh:
        return parse_dqif(fh.read())
