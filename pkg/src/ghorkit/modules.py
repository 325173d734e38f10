"""Simple modules with dimension vector in {0,1}^Q0, their annihilators and syzygies.

A module is given by its support and one scalar per supported arrow; a path
acts by the product of the scalars along it (zero as soon as it uses an
arrow without a scalar).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import cycle_algebra_generators, simple_cycles
from .graphs import is_strongly_connected
from .matchings import ALL, SIMPLE, LabelTable, sigma_monomial
from .monomial import Monomial, sort_key
from .paths import cycles_at, path_label, paths_from, rotations
from .quiver import CCW, Check, DimerQuiver, Path, ValidationReport, complementary_arcs

DEFAULT_PATH_BOUND = 4


class ModuleSpecError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class WellDefinednessError(ValueError):
    pass


class NotLocallyInvertibleError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleModuleSpec:
    support: frozenset[int]
    scalars: dict[str, Fraction] = field(default_factory=dict, hash=False)

    def scalar(self, arrow_id: str) -> Fraction:
        return self.scalars.get(arrow_id, Fraction(0))

    def act(self, p: Path) -> Fraction:
        """Scalar by which ``p`` acts (``e_i`` acts by 1 on supported ``i``)."""
        if p.tail not in self.support:
            return Fraction(0)
        out = Fraction(1)
        for s in p.steps:
            out *= self.scalar(s)
            if not out:
                break
        return out

    def is_full(self, quiver: DimerQuiver) -> bool:
        return self.support == frozenset(quiver.vertices)


def parse_module(text: str) -> SimpleModuleSpec:
    support: set[int] = set()
    scalars: dict[str, Fraction] = {}
    header = False
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "module":
            if header or len(parts) != 1:
                raise ModuleSpecError("unexpected 'module' line", n)
            header = True
            continue
        if not header:
            raise ModuleSpecError("file must start with 'module'", n)
        if key == "support":
            try:
                support.update(int(x) for x in parts[1:])
            except ValueError:
                raise ModuleSpecError(f"bad vertex in {line!r}", n) from None
        elif key == "scalar":
            if len(parts) != 3:
                raise ModuleSpecError("expected 'scalar <arrow> <p/q>'", n)
            if parts[1] in scalars:
                raise ModuleSpecError(f"duplicate scalar for {parts[1]}", n)
            try:
                scalars[parts[1]] = Fraction(parts[2])
            except (ValueError, ZeroDivisionError):
                raise ModuleSpecError(f"bad rational {parts[2]!r}", n) from None
        else:
            raise ModuleSpecError(f"unknown keyword {key!r}", n)
    if not header:
        raise ModuleSpecError("empty module file")
    return SimpleModuleSpec(frozenset(support), scalars)


def serialize_module(spec: SimpleModuleSpec) -> str:
    lines = ["module", "support " + " ".join(str(v) for v in sorted(spec.support))]
    lines += [f"scalar {a} {spec.scalars[a]}" for a in sorted(spec.scalars)]
    return "\n".join(lines) + "\n"


def load_module(path) -> SimpleModuleSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_module(fh.read())


def validate_simple_module(quiver: DimerQuiver, table: LabelTable, spec: SimpleModuleSpec,
                           path_bound: int = DEFAULT_PATH_BOUND) -> ValidationReport:
    checks = []

    bad = sorted(v for v in spec.support if v not in quiver.vertices)
    checks.append(Check("support-vertices", not bad and bool(spec.support),
                        [str(v) for v in bad] or ([] if spec.support else ["empty"])))

    bad = []
    for a, x in sorted(spec.scalars.items()):
        if a not in quiver.arrow_ids:
            bad.append(f"{a}:unknown")
            continue
        arr = quiver.arrow(a)
        if x == 0:
            bad.append(f"{a}:zero")
        elif arr.tail not in spec.support or arr.head not in spec.support:
            bad.append(f"{a}:off-support")
    checks.append(Check("scalars-on-support", not bad, bad))
    if bad or not checks[0].passed:
        return ValidationReport(checks)

    edges = [(quiver.arrow(a).tail, quiver.arrow(a).head) for a in spec.scalars]
    connected = is_strongly_connected(sorted(spec.support), edges)
    checks.append(Check("strongly-connected", connected, [] if connected else [",".join(map(str, sorted(spec.support)))]))

    seen: dict[tuple, tuple[Path, Fraction]] = {}
    witness = []
    for v in sorted(spec.support):
        for p in paths_from(quiver, v, path_bound):
            key = (p.tail, p.head, path_label(table, p))
            x = spec.act(p)
            if key not in seen:
                seen[key] = (p, x)
            elif seen[key][1] != x:
                q = seen[key][0]
                witness = [f"{q}={seen[key][1]}", f"{p}={x}"]
                break
        if witness:
            break
    checks.append(Check("label-consistency", not witness, witness))
    return ValidationReport(checks)


# -- annihilator -----------------------------------------------------------------


@dataclass(frozen=True)
class AnnihilatorPoint:
    values: dict[Monomial, Fraction]

    def items(self, table: LabelTable) -> list[tuple[str, Fraction]]:
        return [(table.format(g, SIMPLE), self.values[g]) for g in sorted(self.values, key=sort_key)]


def annihilator_point(quiver: DimerQuiver, table: LabelTable, spec: SimpleModuleSpec,
                      cycle_bound: int | None = None) -> AnnihilatorPoint:
    """Value of each cycle-algebra generator at the point of Max S cut out by the module."""
    if cycle_bound is None:
        cycle_bound = len(quiver.vertices)
    realized: dict[Monomial, tuple[Path, Fraction]] = {}
    for v in sorted(spec.support):
        for c in cycles_at(quiver, v, cycle_bound):
            x = spec.act(c)
            if not x:
                continue
            g = path_label(table, c, SIMPLE)
            if g in realized and realized[g][1] != x:
                raise WellDefinednessError(
                    f"cycles {realized[g][0]} and {c} share label {table.format(g, SIMPLE)} "
                    f"but act by {realized[g][1]} and {x}")
            realized.setdefault(g, (c, x))
    gens = cycle_algebra_generators(quiver, table)
    return AnnihilatorPoint({g: realized[g][1] if g in realized else Fraction(0) for g in gens.elements})


# -- escape paths and syzygies ------------------------------------------------------


def minimal_escape_paths(quiver: DimerQuiver, spec: SimpleModuleSpec, i: int) -> list[Path]:
    """Paths from ``i`` leaving the support at their head, acting nonzero before the last arrow."""
    if i not in spec.support:
        raise ValueError(f"vertex {i} is not in the support")
    out = []

    def extend(p: Path):
        for a in quiver.out_arrows(p.head):
            if a.head in p.vertices:
                continue
            q = Path(p.steps + (a.id,), p.vertices + (a.head,))
            if a.head not in spec.support:
                out.append(q)
            elif spec.scalar(a.id):
                extend(q)

    extend(quiver.trivial_path(i))
    return sorted(out, key=lambda p: (p.length, p.arrows))


MONOMIAL = "monomial"
BINOMIAL = "binomial"


@dataclass(frozen=True)
class SyzygyGenerator:
    kind: str
    path: Path
    scalar: Fraction = Fraction(0)

    def __str__(self):
        if self.kind == MONOMIAL:
            return str(self.path)
        return f"{self.path} - {self.scalar}e{self.path.tail}"

    def annihilated(self, spec: SimpleModuleSpec) -> bool:
        e = Fraction(1) if self.path.tail in spec.support else Fraction(0)
        if self.kind == MONOMIAL:
            return spec.act(self.path) == 0
        return spec.act(self.path) - self.scalar * e == 0


def syzygy_generators(quiver: DimerQuiver, table: LabelTable, spec: SimpleModuleSpec,
                      length_bound: int | None = None) -> list[SyzygyGenerator]:
    """Escape paths, then ``s - s~ e`` for cycles without cyclic subpaths at supported vertices.

    Cycles that begin with an escape path already lie in the left ideal it
    generates and are skipped.
    """
    out: list[SyzygyGenerator] = []
    escapes = set()
    for i in sorted(spec.support):
        for p in minimal_escape_paths(quiver, spec, i):
            escapes.add(p.steps)
            out.append(SyzygyGenerator(MONOMIAL, p))
    binomials = []
    for r in simple_cycles(quiver, table):
        if length_bound is not None and r.cycle.length > length_bound:
            continue
        for c in rotations(r.cycle):
            if c.tail not in spec.support:
                continue
            if any(c.steps[:k] in escapes for k in range(1, c.length + 1)):
                continue
            binomials.append(SyzygyGenerator(BINOMIAL, c, spec.act(c)))
    binomials.sort(key=lambda g: (g.path.length, g.path.tail, g.path.arrows))
    return out + binomials


# -- localized paths ----------------------------------------------------------------


@dataclass(frozen=True)
class LocalizedPath:
    """A word in arrows and formal inverses, application order, with its vertex sequence."""
    steps: tuple[tuple[str, int], ...]
    vertices: tuple[int, ...]

    @property
    def tail(self) -> int:
        return self.vertices[0]

    @property
    def head(self) -> int:
        return self.vertices[-1]

    @classmethod
    def from_path(cls, p: Path) -> "LocalizedPath":
        return cls(tuple((s, 1) for s in p.steps), p.vertices)

    @classmethod
    def trivial(cls, v: int) -> "LocalizedPath":
        return cls((), (v,))

    def after(self, other: "LocalizedPath") -> "LocalizedPath":
        if other.head != self.tail:
            raise ValueError(f"cannot compose {self} after {other}")
        return LocalizedPath(other.steps + self.steps, other.vertices + self.vertices[1:])

    def label(self, table: LabelTable, basis: str = ALL) -> Monomial:
        labels = table.labels(basis)
        m = table.unit(basis)
        for s, e in self.steps:
            m = m * labels[s] if e > 0 else m / labels[s]
        return m

    def __str__(self):
        if not self.steps:
            return f"e{self.tail}"
        words = [s if e > 0 else f"{s}^-1" for s, e in reversed(self.steps)]
        return ".".join(words) + f"@{self.tail}"


def invert_supported_path(quiver: DimerQuiver, spec: SimpleModuleSpec, p: Path) -> LocalizedPath:
    for s in p.steps:
        if not spec.scalar(s):
            raise NotLocallyInvertibleError(f"arrow {s} of {p} acts by zero")
    return LocalizedPath(tuple((s, -1) for s in reversed(p.steps)), tuple(reversed(p.vertices)))


def inverse_realization(quiver: DimerQuiver, table: LabelTable, arrow_id: str) -> tuple[Path, Monomial]:
    """``a^-1 = c * sigma^-1`` with ``c`` the arc completing ``a`` to its counterclockwise face."""
    for face, arc in complementary_arcs(quiver, arrow_id):
        if face.orientation == CCW:
            a = quiver.arrow(arrow_id)
            return quiver.path(arc, a.head), sigma_monomial(table).inverse()
    raise ValueError(f"arrow {arrow_id} lies in no counterclockwise face")
