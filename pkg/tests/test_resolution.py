from fractions import Fraction

import pytest

from ghorkit.modules import SimpleModuleSpec
from ghorkit.paths import GEODESIC, geodesic_certify_bounded, path_homology, path_label
from ghorkit.resolution import (FULL, PARTIAL, BDSearchError, InvalidModuleError, ProjComplex,
                                RepresentativeNotFoundError, Representatives, assemble_resolution, bd_data,
                                gldim_report, koszul_basis, koszul_differential, pd_formula, pd_report,
                                verify_complex)
from ghorkit.surface import HomologyClass

HEX_235 = SimpleModuleSpec(frozenset({1}), {"l1": Fraction(2), "l2": Fraction(3), "l3": Fraction(5)})
VERTEX1 = SimpleModuleSpec(frozenset({1}), {"a": Fraction(7)})


def brute_tuple_count(vectors, m):
    from itertools import permutations
    import sympy
    return sum(1 for t in permutations(vectors, m) if sympy.Matrix(t).rank() == m) if m else 1


@pytest.mark.parametrize("N", [1, 2])
def test_koszul_counts(N):
    for with_sigma in (False, True):
        vecs = [v for v in koszul_basis(N, 1, with_sigma).tuples]
        vecs = [t[0] for t in vecs]
        for m in range(0, N + 3):
            assert len(koszul_basis(N, m, with_sigma)) == brute_tuple_count(vecs, m)
    assert len(koszul_basis(N, 1, True)) == 3 ** N
    assert len(koszul_basis(N, 1, False)) == 3 ** N - 1
    assert len(koszul_basis(N, N + 2, True)) == 0


def test_koszul_examples():
    assert len(koszul_basis(2, 1, True)) == 9
    assert len(koszul_basis(2, 1, False)) == 8
    assert len(koszul_basis(2, 2, True)) == 64
    assert len(koszul_basis(2, 4, True)) == 0
    for t in koszul_basis(2, 2, True).tuples:
        assert all(any(v) for v in t)


def test_koszul_degree_one_entry(hexq):
    quiver, table = hexq
    rows, cols, mat = koszul_differential(quiver, table, HEX_235, 1, 1)
    r = rows.tuples.index(((1, 0, 0),))
    assert [(c, str(p)) for c, p in mat[(r, 0)]] == [(1, "l1@1"), (-2, "e1")]


def test_koszul_composite_vanishes(hexq):
    quiver, table = hexq
    _, _, d2 = koszul_differential(quiver, table, HEX_235, 1, 2)
    _, _, d1 = koszul_differential(quiver, table, HEX_235, 1, 1)
    rows = koszul_basis(2, 2, True).tuples
    terms = [[None] * 1, [None] * 9, [None] * len(rows)]
    assert verify_complex(ProjComplex(terms, [d1, d2]), table).ok


def test_representatives(hexq):
    quiver, table = hexq
    reps = Representatives(quiver, table, 4)
    s = reps.cycle(1, (1, 1))
    assert path_homology(quiver, s) == HomologyClass((1, 1))
    assert geodesic_certify_bounded(quiver, table, s, 4) == GEODESIC
    assert str(reps.cycle(1, (0, 0, 1))) == "l3.l2.l1@1"
    with pytest.raises(RepresentativeNotFoundError):
        Representatives(quiver, table, 1).cycle(1, (1, 1))


def test_bd_data(fig1, hexq):
    quiver, table = fig1
    bd = bd_data(quiver, table, VERTEX1, 1)
    assert [str(p) for p in bd.escapes] == ["b@1", "b'@1"]
    assert [str(p) for p in bd.u] == ["d.c@2", "d'.c@2"]
    assert [str(p) for p in bd.v] == ["d.c@2", "d'.c@2"]
    ell = len(bd.escapes)
    lab = lambda p: path_label(table, p)
    for j in range(ell):
        nxt = (j + 1) % ell
        assert lab(bd.u[j]) * lab(bd.escapes[j]) == lab(bd.v[nxt]) * lab(bd.escapes[nxt])
        assert lab(bd.r[j - 1]) * lab(bd.v[j]) == lab(bd.r[j]) * lab(bd.u[j])
    with pytest.raises(BDSearchError):
        bd_data(quiver, table, VERTEX1, 1, 1)
    with pytest.raises(ValueError):
        bd_data(*hexq, HEX_235, 1)


def test_hex_resolution(hexq):
    quiver, table = hexq
    cx = assemble_resolution(quiver, table, HEX_235)
    assert cx.ranks == [1, 9, 64, len(koszul_basis(2, 3, True))] == [1, 9, 64, 144]
    assert cx.length == 3 == quiver.N + 1
    assert verify_complex(cx, table).ok
    report = pd_report(quiver, table, HEX_235, cx)
    assert (report.length, report.case, report.verified) == (3, FULL, True)


def test_vertex_simple_resolution(fig1):
    quiver, table = fig1
    cx = assemble_resolution(quiver, table, VERTEX1)
    assert cx.ranks == [1, 10, 50, 1]
    assert cx.length <= max(3, quiver.N)
    assert verify_complex(cx, table).ok
    assert pd_report(quiver, table, VERTEX1, cx).case == PARTIAL


def test_sign_flip_detected(hexq):
    quiver, table = hexq
    cx = assemble_resolution(quiver, table, HEX_235)
    key = sorted(cx.maps[1])[0]
    cx.maps[1][key] = tuple((-c, p) for c, p in cx.maps[1][key])
    result = verify_complex(cx, table)
    assert not result.ok and result.witness.startswith("d1*d2")


def test_zero_complex(hexq):
    assert verify_complex(ProjComplex([[]], []), hexq[1]).ok


def test_invalid_module_rejected(fig1):
    bad = SimpleModuleSpec(frozenset({1, 2, 3}), {a: Fraction(1) for a in fig1[0].arrow_ids} | {"d": Fraction(2)})
    with pytest.raises(InvalidModuleError):
        assemble_resolution(*fig1, bad)


def test_pd_formula():
    assert pd_formula(2, True) == 3
    assert pd_formula(2, False) == 3
    assert pd_formula(4, True) == 5
    assert pd_formula(4, False) == 4


def test_gldim_reports(fig1, hexq, g2):
    g = gldim_report(*fig1)
    assert (g.bound, g.dimS, g.rs_witness) == (3, 3, "z")
    assert "witness z" in g.locus_note
    g = gldim_report(*hexq)
    assert (g.bound, g.dimS, g.agrees) == (3, 3, True)
    assert gldim_report(*g2).bound == 5
