"""Projective complexes for simple modules: a Koszul part over homology directions,
escape-path and generalized Berenstein-Douglas terms, and a d*d = 0 verifier.

Conventions.  A term is a list of slots, slot ``k`` standing for the free
module ``A e_v``.  ``maps[k-1]`` sends term ``k`` to term ``k-1``; its entry at
``(src, tgt)`` is a formal sum of localized paths from ``v_tgt`` to ``v_src``,
and an element ``beta`` of slot ``src`` goes to ``beta * entry``.  Composite
entries are therefore ``sum_mid M_k[src][mid] * M_{k-1}[mid][tgt]`` with the
left factor applied last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cycles import compare_R_S_bounded, cycle_algebra_generators, krull_dimension, EQUAL_UP_TO_BOUND
from .lattice import rational_rank
from .matchings import LabelTable, SIMPLE
from .modules import LocalizedPath, SimpleModuleSpec, minimal_escape_paths, validate_simple_module
from .monomial import Monomial
from .paths import (GEODESIC, UNKNOWN, compose, cycles_at, dimer_closure, geodesic_certify_bounded,
                    path_homology, path_label, paths_from)
from .quiver import OUT, DimerQuiver, Path, rotation_system, unit_cycle_at
from .surface import HomologyClass

REPRESENTATIVE_BOUND = 6
BD_SEARCH_BOUND = 6

FULL = "full-support"
PARTIAL = "partial-support"


class RepresentativeNotFoundError(LookupError):
    pass


class BDSearchError(LookupError):
    pass


class InvalidModuleError(ValueError):
    pass


# -- Koszul tuples ------------------------------------------------------------------


@dataclass(frozen=True)
class KoszulTupleBasis:
    N: int
    m: int
    with_sigma: bool
    tuples: tuple[tuple[tuple[int, ...], ...], ...]

    def __len__(self):
        return len(self.tuples)


def koszul_vectors(N: int, with_sigma: bool) -> list[tuple[int, ...]]:
    vecs = [v for v in product((-1, 0, 1), repeat=N) if any(v)]
    if with_sigma:
        vecs = [v + (0,) for v in vecs] + [(0,) * N + (1,)]
    return vecs


def koszul_basis(N: int, m: int, with_sigma: bool) -> KoszulTupleBasis:
    """Ordered m-tuples of Z-linearly independent vectors."""
    if m < 0:
        raise ValueError("m must be non-negative")
    vecs = koszul_vectors(N, with_sigma)
    out = []

    def extend(chosen: list):
        if len(chosen) == m:
            out.append(tuple(chosen))
            return
        for v in vecs:
            if v not in chosen and rational_rank(chosen + [v]) == len(chosen) + 1:
                chosen.append(v)
                extend(chosen)
                chosen.pop()

    extend([])
    return KoszulTupleBasis(N, m, with_sigma, tuple(out))


# -- formal sums --------------------------------------------------------------------


PathClass = tuple[int, int, Monomial]
Term = tuple[Fraction, LocalizedPath]


class PathSum:
    """Finite sum of localized paths, reduced by (tail, head, label)."""

    def __init__(self, table: LabelTable):
        self.table = table
        self.coeffs: dict[PathClass, Fraction] = {}
        self.sample: dict[PathClass, LocalizedPath] = {}

    def add(self, c: Fraction, p: LocalizedPath):
        key = (p.tail, p.head, p.label(self.table))
        self.coeffs[key] = self.coeffs.get(key, Fraction(0)) + c
        self.sample.setdefault(key, p)

    def nonzero(self) -> list[tuple[Fraction, LocalizedPath]]:
        return [(c, self.sample[k]) for k, c in sorted(self.coeffs.items(), key=lambda kv: str(self.sample[kv[0]]))
                if c != 0]

    def is_zero(self) -> bool:
        return not self.nonzero()


def format_entry(terms) -> str:
    if not terms:
        return "0"
    return " + ".join(f"{c}*{p}" for c, p in terms)


# -- complexes ------------------------------------------------------------------------


@dataclass(frozen=True)
class Slot:
    vertex: int
    kind: str
    tag: tuple = ()

    def __str__(self):
        if self.kind == "koszul":
            vs = ",".join("(" + ",".join(str(x) for x in v) + ")" for v in self.tag)
            return f"{self.vertex}:k[{vs}]"
        if self.kind == "escape":
            return f"{self.vertex}:p[{self.tag[0]}]"
        if self.kind == "bd":
            return f"{self.vertex}:r{self.tag[0]}"
        return f"{self.vertex}:{self.kind}"


Matrix = dict[tuple[int, int], tuple[Term, ...]]


@dataclass
class ProjComplex:
    terms: list[list[Slot]]
    maps: list[Matrix]
    warnings: list[str] = field(default_factory=list)

    @property
    def ranks(self) -> list[int]:
        return [len(t) for t in self.terms]

    @property
    def length(self) -> int:
        nonempty = [k for k, t in enumerate(self.terms) if t]
        return max(nonempty) if nonempty else 0


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    witness: str | None = None


def verify_complex(cx: ProjComplex, table: LabelTable) -> VerifyResult:
    """Check that every composite of consecutive maps cancels class by class."""
    for k in range(1, len(cx.maps)):
        upper, lower = cx.maps[k], cx.maps[k - 1]
        by_mid: dict[int, list[tuple[int, tuple[Term, ...]]]] = {}
        for (mid, tgt), e in lower.items():
            by_mid.setdefault(mid, []).append((tgt, e))
        sums: dict[tuple[int, int], PathSum] = {}
        for (src, mid), e1 in sorted(upper.items()):
            for tgt, e2 in by_mid.get(mid, ()):
                s = sums.setdefault((src, tgt), PathSum(table))
                for c1, x in e1:
                    for c2, y in e2:
                        s.add(c1 * c2, x.after(y))
        for (src, tgt), s in sorted(sums.items()):
            if not s.is_zero():
                return VerifyResult(False, f"d{k}*d{k + 1} at term {k + 1} slot {cx.terms[k + 1][src]} "
                                           f"-> slot {cx.terms[k - 1][tgt]}: {format_entry(s.nonzero())}")
    return VerifyResult(True)


def _lp(p: Path) -> LocalizedPath:
    return LocalizedPath.from_path(p)


# -- representatives ------------------------------------------------------------------------


@dataclass
class Representatives:
    """Canonical cycle per Koszul direction at a vertex: shortest, then least, certified geodesic."""
    quiver: DimerQuiver
    table: LabelTable
    bound: int = REPRESENTATIVE_BOUND
    warnings: list[str] = field(default_factory=list)
    _cache: dict = field(default_factory=dict)

    def cycle(self, i: int, direction: tuple[int, ...]) -> Path:
        key = (i, direction)
        if key not in self._cache:
            self._cache[key] = self._find(i, direction)
        return self._cache[key]

    def _find(self, i: int, direction: tuple[int, ...]) -> Path:
        N = self.quiver.N
        if len(direction) == N + 1 and direction[N]:
            return unit_cycle_at(self.quiver, i)
        cls = HomologyClass(tuple(direction[:N]))
        pool = [c for c in cycles_at(self.quiver, i, self.bound) if path_homology(self.quiver, c) == cls]
        pool.sort(key=lambda c: (c.length, c.arrows))
        fallback = None
        for c in pool:
            verdict = geodesic_certify_bounded(self.quiver, self.table, c, self.bound)
            if verdict == GEODESIC:
                return c
            if verdict == UNKNOWN and fallback is None:
                fallback = c
        if fallback is not None:
            self.warnings.append(f"representative {fallback} of class {cls} at {i} is not certified")
            return fallback
        raise RepresentativeNotFoundError(f"no geodesic cycle of class {cls} at vertex {i} within length {self.bound}")


def koszul_differential(quiver: DimerQuiver, table: LabelTable, spec: SimpleModuleSpec, i: int, m: int,
                        with_sigma: bool | None = None, reps: Representatives | None = None,
                        ) -> tuple[KoszulTupleBasis, KoszulTupleBasis, Matrix]:
    """Alternating map sending (a_1..a_m) to sum (-1)^(j+1) (s_j - s~_j e_i) (a_1..^a_j..a_m)."""
    if with_sigma is None:
        with_sigma = spec.is_full(quiver)
    if reps is None:
        reps = Representatives(quiver, table)
    rows = koszul_basis(quiver.N, m, with_sigma)
    cols = koszul_basis(quiver.N, m - 1, with_sigma)
    index = {t: k for k, t in enumerate(cols.tuples)}
    e = LocalizedPath.trivial(i)
    mat: Matrix = {}
    for r, tup in enumerate(rows.tuples):
        for j, alpha in enumerate(tup):
            s = reps.cycle(i, alpha)
            sign = Fraction(1 if j % 2 == 0 else -1)
            terms = [(sign, _lp(s))]
            scalar = spec.act(s)
            if scalar:
                terms.append((-sign * scalar, e))
            mat[(r, index[tup[:j] + tup[j + 1:]])] = tuple(terms)
    return rows, cols, mat


# -- escape paths and Berenstein-Douglas data ----------------------------------------------


def ordered_escape_paths(quiver: DimerQuiver, spec: SimpleModuleSpec, i: int) -> list[Path]:
    """Escape paths at ``i``, counterclockwise from the one with the least first arrow."""
    escapes = minimal_escape_paths(quiver, spec, i)
    if not escapes:
        return []
    rot = rotation_system(quiver)[i]
    first = min(p.steps[0] for p in escapes)
    start = rot.index((first, OUT))
    n = len(rot)

    def key(p: Path):
        return ((rot.index((p.steps[0], OUT)) - start) % n, p.length, p.arrows)

    return sorted(escapes, key=key)


def paths_with_label(quiver: DimerQuiver, table: LabelTable, tail: int, head: int, label: Monomial,
                     bound: int) -> list[Path]:
    """Paths ``tail -> head`` with eta label exactly ``label``, length <= bound, least first."""
    if not label.is_polynomial():
        return []
    eta = table.eta
    out = []

    def extend(v, steps, verts, lab):
        if v == head and lab == label:
            out.append(Path(tuple(steps), tuple(verts)))
        if len(steps) == bound:
            return
        for a in quiver.out_arrows(v):
            nl = lab * eta[a.id]
            if nl.divides(label):
                steps.append(a.id)
                verts.append(a.head)
                extend(a.head, steps, verts, nl)
                steps.pop()
                verts.pop()

    extend(tail, [], [tail], table.unit())
    return sorted(out, key=lambda p: (p.length, p.arrows))


@dataclass(frozen=True)
class BDData:
    vertex: int
    escapes: tuple[Path, ...]
    u: tuple[Path, ...]
    v: tuple[Path, ...]
    r: tuple[Path, ...]


def _pair_search(quiver, table, p: Path, q: Path, bound: int) -> tuple[Path, Path] | None:
    """Least (u, w) with u*p = w*q in the ghor algebra, by total length then arrows."""
    us = list(paths_from(quiver, p.head, bound))
    ws = list(paths_from(quiver, q.head, bound))
    lp, lq = path_label(table, p), path_label(table, q)
    best = None
    for u in us:
        lu = path_label(table, u) * lp
        for w in ws:
            if u.length + w.length > bound or w.head != u.head:
                continue
            if p == q and u == w:
                continue
            if path_label(table, w) * lq == lu:
                key = (u.length + w.length, u.arrows, w.arrows)
                if best is None or key < best[0]:
                    best = (key, u, w)
    return None if best is None else (best[1], best[2])


def bd_data(quiver: DimerQuiver, table: LabelTable, spec: SimpleModuleSpec, i: int,
            search_bound: int = BD_SEARCH_BOUND) -> BDData:
    escapes = ordered_escape_paths(quiver, spec, i)
    if not escapes:
        raise ValueError(f"no escape paths at vertex {i}: the module has full support there")
    ell = len(escapes)
    u: list[Path] = [None] * ell
    v: list[Path] = [None] * ell
    for j in range(ell):
        p, q = escapes[j], escapes[(j + 1) % ell]
        found = _pair_search(quiver, table, p, q, search_bound)
        if found is None:
            raise BDSearchError(f"no u, v with u*{p} = v*{q} within length {search_bound}")
        u[j], v[(j + 1) % ell] = found
    lab = lambda x: path_label(table, x)
    for r_last in paths_from(quiver, u[-1].head, search_bound):
        if r_last.head != i:
            continue
        r: list[Path] = [None] * ell
        r[-1] = r_last
        ok = True
        for j in range(ell - 1):
            prev = r[j - 1]
            target = lab(prev) * lab(v[j]) / lab(u[j])
            cands = paths_with_label(quiver, table, u[j].head, i, target, search_bound)
            if not cands:
                ok = False
                break
            r[j] = cands[0]
        if ok and lab(r[-2] if ell > 1 else r[-1]) * lab(v[-1]) == lab(r[-1]) * lab(u[-1]):
            return BDData(i, tuple(escapes), tuple(u), tuple(v), tuple(r))
    raise BDSearchError(f"no r_1..r_{ell} with r_(j-1) v_j = r_j u_j within length {search_bound}")


def disappearing_factor(quiver: DimerQuiver, spec: SimpleModuleSpec, t: Path, escapes: set,
                        bound: int) -> tuple[Path, Path] | None:
    """Least dimer representative of ``t`` that leaves the support through an escape prefix.

    Returns ``(q, p)`` with the representative equal to ``q`` after ``p``.
    """
    best = None
    for r in dimer_closure(quiver, t, bound):
        k = next((n for n, x in enumerate(r.vertices) if x not in spec.support), None)
        if k is None or r.steps[:k] not in escapes:
            continue
        key = (r.length, r.arrows)
        if best is None or key < best[0]:
            best = (key, r, k)
    if best is None:
        return None
    _, r, k = best
    return Path(r.steps[k:], r.vertices[k:]), Path(r.steps[:k], r.vertices[:k + 1])


# -- assembly -----------------------------------------------------------------------------


def _vertex_complex(quiver, table, spec, i, reps: Representatives, bd_bound: int) -> ProjComplex:
    N = quiver.N
    full = spec.is_full(quiver)
    top = N + 1 if full else N
    bases = [koszul_basis(N, m, full) for m in range(top + 1)]
    terms = [[Slot(i, "koszul", t) if m else Slot(i, "e") for t in bases[m].tuples] for m in range(top + 1)]
    maps: list[Matrix] = []
    for m in range(1, top + 1):
        _, _, mat = koszul_differential(quiver, table, spec, i, m, full, reps)
        maps.append(dict(mat))
    if full:
        return ProjComplex(terms, maps)

    while len(terms) < 4:
        terms.append([])
        maps.append({})
    bd = bd_data(quiver, table, spec, i, bd_bound)
    escapes = list(bd.escapes)
    esc_index = {}
    for p in escapes:
        esc_index[p.steps] = len(terms[1])
        terms[1].append(Slot(p.head, "escape", (p,)))
        maps[0][(esc_index[p.steps], 0)] = ((Fraction(1), _lp(p)),)

    # Koszul pairs whose commutator leaves the support are rerouted through escape slots.
    escape_steps = set(esc_index)
    for r, tup in enumerate(bases[2].tuples if len(bases) > 2 else ()):
        t1, t2 = reps.cycle(i, tup[0]), reps.cycle(i, tup[1])
        s12, s21 = compose(t1, t2), compose(t2, t1)
        bound = max(s12.length, s21.length) + 2
        f12 = disappearing_factor(quiver, spec, s12, escape_steps, bound)
        f21 = disappearing_factor(quiver, spec, s21, escape_steps, bound)
        if f12 is None or f21 is None:
            continue
        for key in [k for k in maps[1] if k[0] == r]:
            del maps[1][key]
        entry: dict[int, list[Term]] = {}
        for sign, (q, p) in ((Fraction(1), f12), (Fraction(-1), f21)):
            entry.setdefault(esc_index[p.steps], []).append((sign, _lp(q)))
        for col, ts in entry.items():
            maps[1][(r, col)] = tuple(ts)

    ell = len(escapes)
    bd_index = []
    for j in range(ell):
        bd_index.append(len(terms[2]))
        terms[2].append(Slot(bd.r[j].tail, "bd", (j + 1,)))
        nxt = (j + 1) % ell
        entry = {}
        entry.setdefault(esc_index[escapes[j].steps], []).append((Fraction(1), _lp(bd.u[j])))
        entry.setdefault(esc_index[escapes[nxt].steps], []).append((Fraction(-1), _lp(bd.v[nxt])))
        for col, ts in entry.items():
            maps[1][(bd_index[j], col)] = tuple(ts)
    top_index = len(terms[3])
    terms[3].append(Slot(i, "top"))
    for j in range(ell):
        maps[2][(top_index, bd_index[j])] = ((Fraction(1), _lp(bd.r[j])),)
    return ProjComplex(terms, maps)


def direct_sum(parts: list[ProjComplex]) -> ProjComplex:
    depth = max((len(p.terms) for p in parts), default=1)
    terms: list[list[Slot]] = [[] for _ in range(depth)]
    maps: list[Matrix] = [{} for _ in range(depth - 1)]
    warnings = []
    for p in parts:
        offsets = [len(t) for t in terms]
        for k, t in enumerate(p.terms):
            terms[k].extend(t)
        for k, mat in enumerate(p.maps):
            for (src, tgt), e in mat.items():
                maps[k][(src + offsets[k + 1], tgt + offsets[k])] = e
        warnings.extend(p.warnings)
    while len(terms) > 1 and not terms[-1]:
        terms.pop()
        maps.pop()
    return ProjComplex(terms, maps, warnings)


def assemble_resolution(quiver: DimerQuiver, table: LabelTable, spec: SimpleModuleSpec,
                        representative_bound: int = REPRESENTATIVE_BOUND,
                        bd_bound: int = BD_SEARCH_BOUND) -> ProjComplex:
    report = validate_simple_module(quiver, table, spec)
    if not report.valid:
        bad = "; ".join(str(c) for c in report.failures())
        raise InvalidModuleError(f"module is not a valid simple module: {bad}")
    reps = Representatives(quiver, table, representative_bound)
    cx = direct_sum([_vertex_complex(quiver, table, spec, i, reps, bd_bound) for i in sorted(spec.support)])
    cx.warnings = sorted(set(reps.warnings))
    return cx


# -- reports --------------------------------------------------------------------------------


def pd_formula(N: int, full: bool) -> int:
    """Projective dimension (full support) or its upper bound (otherwise)."""
    return N + 1 if full else max(3, N)


@dataclass(frozen=True)
class PDReport:
    length: int
    case: str
    bound: int
    verified: bool

    def lines(self) -> list[str]:
        return [f"pd={self.length}", f"case={'full' if self.case == FULL else 'partial'}"]


def pd_report(quiver: DimerQuiver, table: LabelTable, spec: SimpleModuleSpec,
              complex_: ProjComplex | None = None) -> PDReport:
    cx = complex_ if complex_ is not None else assemble_resolution(quiver, table, spec)
    full = spec.is_full(quiver)
    return PDReport(cx.length, FULL if full else PARTIAL, pd_formula(quiver.N, full), verify_complex(cx, table).ok)


@dataclass(frozen=True)
class GldimReport:
    bound: int
    dimS: int
    agrees: bool
    rs_outcome: str
    rs_bound: int
    rs_witness: str | None

    @property
    def locus_note(self) -> str:
        if self.rs_outcome == EQUAL_UP_TO_BOUND:
            return f"R=S up to degree {self.rs_bound}"
        return f"R!=S up to degree {self.rs_bound} (witness {self.rs_witness})"


def gldim_report(quiver: DimerQuiver, table: LabelTable, degree_bound: int = 6) -> GldimReport:
    dim_s = krull_dimension(cycle_algebra_generators(quiver, table))
    rs = compare_R_S_bounded(quiver, table, degree_bound)
    witness = table.format(rs.witness, SIMPLE) if rs.witness is not None else None
    return GldimReport(quiver.N + 1, dim_s, dim_s == quiver.N + 1, rs.outcome, degree_bound, witness)
