from itertools import combinations

import networkx as nx
import pytest

from ghorkit.matchings import (SIMPLE, Matching, NamingError, NotPerfectError, build_label_table,
                               enumerate_perfect_matchings, is_perfect, is_simple, parse_names, sigma_monomial)
from ghorkit.monomial import Monomial
from ghorkit.quiver import unit_cycle_at
from ghorkit.paths import path_label


def subset_oracle(quiver):
    ids = quiver.arrow_ids
    out = []
    for r in range(len(ids) + 1):
        for combo in combinations(ids, r):
            chosen = set(combo)
            if all(sum(a in chosen for a in f.arrows) == 1 for f in quiver.faces):
                out.append(tuple(sorted(chosen)))
    return sorted(out)


def simple_oracle(quiver, arrows):
    g = nx.MultiDiGraph()
    g.add_nodes_from(quiver.vertices)
    g.add_edges_from((a.tail, a.head) for a in quiver.arrows if a.id not in arrows)
    return nx.is_strongly_connected(g)


def test_enumeration_matches_subset_oracle(corpus_entry):
    _, quiver, _ = corpus_entry
    found = [m.sorted_arrows for m in enumerate_perfect_matchings(quiver)]
    assert found == subset_oracle(quiver)


def test_simplicity_matches_networkx(corpus_entry):
    _, quiver, _ = corpus_entry
    for m in enumerate_perfect_matchings(quiver):
        assert is_simple(quiver, m) == simple_oracle(quiver, m.arrows)


def test_fig1_matchings(fig1):
    quiver, table = fig1
    got = {m.name: (m.sorted_arrows, s) for m, s in zip(table.matchings, table.simple_flags)}
    assert got == {
        "x": (("b", "d'"), True), "y": (("b'", "d"), True), "z": (("a", "c'"), True),
        "u": (("b", "b'"), False), "v": (("c", "c'"), False), "w": (("d", "d'"), False),
    }


def test_fig1_tau_labels(fig1):
    quiver, table = fig1
    tau = {a: table.format(table.tau[a], SIMPLE) for a in quiver.arrow_ids}
    assert tau == {"a": "z", "b": "x", "b'": "y", "c": "1", "c'": "z", "d": "y", "d'": "x"}


def test_unit_cycles_carry_sigma(corpus_entry):
    _, quiver, table = corpus_entry
    for v in quiver.vertices:
        for basis in ("all", "simple"):
            assert path_label(table, unit_cycle_at(quiver, v), basis) == sigma_monomial(table, basis)


def test_hex_matchings(hexq):
    _, table = hexq
    assert [m.sorted_arrows for m in table.matchings] == [("l1",), ("l2",), ("l3",)]
    assert all(table.simple_flags)
    assert table.names() == ["m1", "m2", "m3"]


def test_is_perfect(fig1):
    quiver, _ = fig1
    assert is_perfect(quiver, {"a", "c'"})
    assert not is_perfect(quiver, {"a"})
    with pytest.raises(NotPerfectError):
        is_simple(quiver, Matching(frozenset({"a"})))


def test_naming_errors(fig1):
    quiver, _ = fig1
    with pytest.raises(NamingError):
        build_label_table(quiver, {"x": ["a"]})
    with pytest.raises(NamingError):
        build_label_table(quiver, {"x": ["a", "c'"], "y": ["c'", "a"]})


def test_parse_names():
    assert parse_names("# c\nx = b, d'\ny=b',d\n") == {"x": ["b", "d'"], "y": ["b'", "d"]}


def test_format_respects_naming_order(fig1):
    _, table = fig1
    assert table.format(sigma_monomial(table)) == "x*y*z*u*v*w"
    assert table.format(Monomial.unit(6)) == "1"
