import json

import pytest

from planaralg.cells import (
    GraphInconsistency, bratteli, export_dot, half_diagrams, label_text, path_counts,
)
from planaralg.diagrams import enumerate_basis


def test_half_diagram_examples():
    h = half_diagrams(3, "TL")
    assert {k: len(v) for k, v in h.items()} == {1: 2, 3: 1}
    assert {k: len(v) for k, v in half_diagrams(2, "FC").items()} == {"": 1, "aa": 1, "abba": 1}
    # level 3 row colours are a b b a a b
    assert {k: len(v) for k, v in half_diagrams(3, "FC").items()} == {
        "ab": 3, "aaab": 1, "abbb": 1, "abbaab": 1}


@pytest.mark.parametrize("family, top", [("TL", 8), ("FC", 5)])
def test_sum_of_squares_is_dimension(family, top):
    for n in range(top + 1):
        dims = [len(v) for v in half_diagrams(n, family).values()]
        assert sum(d * d for d in dims) == len(enumerate_basis(family, n))


def test_tl_chain():
    g = bratteli(3, "TL")
    assert g.levels == [{0: 1}, {1: 1}, {0: 1, 2: 1}]
    assert g.edges[1] == {(0, 1): 1}
    assert g.edges[2] == {(1, 0): 1, (1, 2): 1}


def test_tl_half_line():
    g = bratteli(8, "TL")
    for k in range(1, 8):
        assert all(abs(u - v) == 1 and m == 1 for (u, v), m in g.edges[k].items())


def test_path_counts_examples():
    g = bratteli(5, "TL")
    assert path_counts(g)[4][0] == 2
    f = bratteli(4, "FC")
    assert path_counts(f)[3]["ab"] == 3
    assert path_counts(bratteli(1, "FC")) == [{"": 1}]


@pytest.mark.parametrize("family, levels", [("TL", 9), ("FC", 6)])
def test_path_counts_match_dims(family, levels):
    g = bratteli(levels, family)
    for k, counts in enumerate(path_counts(g)):
        assert counts == g.levels[k]


def test_fc_colour_word_parity():
    # cups remove same-coloured pairs from a row with k a's and k b's
    g = bratteli(6, "FC")
    for k, verts in enumerate(g.levels):
        for lab in verts:
            assert lab.count("a") % 2 == k % 2 == lab.count("b") % 2


def test_inconsistency_detected():
    g = bratteli(4, "TL")
    g.edges[3][(2, 1)] += 1
    with pytest.raises(GraphInconsistency) as err:
        path_counts(g)
    assert err.value.level == 3 and err.value.label == 1
    assert path_counts(g, check=False)[3][1] == 3


def test_export_dot():
    g = bratteli(4, "FC")
    dot = export_dot(g)
    assert dot == export_dot(bratteli(4, "FC"))
    assert dot.startswith("graph bratteli_fc {")
    nodes = [ln for ln in dot.splitlines() if "[label=" in ln]
    assert len(nodes) == sum(len(v) for v in g.levels)
    edges = [ln for ln in dot.splitlines() if " -- " in ln]
    assert len(edges) == sum(sum(e.values()) for e in g.edges)
    assert 'label="0/∅/1"' in dot


def test_repeated_edges_in_dot():
    g = bratteli(3, "TL")
    g.edges[2][(1, 2)] = 2
    assert export_dot(g).count("v1_0 -- v2_1") == 2


def test_json_dump():
    g = bratteli(3, "FC")
    obj = json.loads(json.dumps(g.to_json()))
    assert obj["family"] == "FC"
    assert obj["levels"][2]["vertices"] == [{"label": "", "dim": 1}, {"label": "aa", "dim": 1},
                                            {"label": "abba", "dim": 1}]


def test_label_text():
    assert label_text("") == "∅" and label_text(2) == "2"


def test_bad_arguments():
    with pytest.raises(ValueError):
        bratteli(0)
    with pytest.raises(ValueError):
        half_diagrams(-1)
