import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from setrealize.model import (
    FormatError,
    Graph,
    GroundSet,
    Ordering,
    SetFamily,
    Tree,
    induced_component_count,
    intersection_graph,
    parse_family,
    parse_graph,
    serialize_family,
    serialize_graph,
    validate_subtree_representation,
)
from setrealize.testkit import counterexample_truncation

from conftest import DATA, STAR, fam, graph


def test_ground_set_is_sorted_and_rejects_duplicates():
    g = GroundSet(["b", "a", "c"])
    assert g.elements == ("a", "b", "c")
    assert g.labels(g.mask(["c", "a"])) == ("a", "c")
    with pytest.raises(ValueError, match="duplicate"):
        GroundSet(["a", "a"])


def test_parse_family_direct_encoding():
    f = parse_family(b'{"ground":["a","b"],"sets":{"s1":["a","b"]}}')
    assert f.ground.elements == ("a", "b")
    assert dict(f.items()) == {"s1": ("a", "b")}


def test_parse_family_unknown_label():
    with pytest.raises(FormatError, match="unknown label z") as info:
        parse_family((DATA / "bad_label.json").read_bytes())
    assert info.value.location == "sets.s1[0]"


def test_parse_family_reports_line_and_column():
    with pytest.raises(FormatError) as info:
        parse_family((DATA / "malformed.json").read_bytes())
    assert info.value.location.startswith("line 2, column")


def test_parse_family_duplicate_set_name():
    with pytest.raises(FormatError, match="duplicate set name s1"):
        parse_family('{"ground":["a"],"sets":{"s1":["a"],"s1":[]}}')


def test_parse_truncated_counterexample():
    f = parse_family((DATA / "truncation4.json").read_bytes())
    assert len(f) == 6
    assert f == counterexample_truncation(4)


def test_empty_and_duplicate_members_parse():
    f = parse_family('{"ground":["a","b"],"sets":{"x":[],"y":["a"],"z":["a"]}}')
    assert f.members == ((), ("a",), ("a",))


def test_serialize_is_canonical():
    text = '{"sets": {"t": ["b", "a"], "s": ["a"]}, "ground": ["b", "a"]}'
    assert serialize_family(parse_family(text)) == '{"ground":["a","b"],"sets":{"s":["a"],"t":["a","b"]}}\n'


labels = st.sampled_from(list("abcdefg"))


@st.composite
def families(draw):
    ground = sorted(draw(st.sets(labels, min_size=1)))
    k = draw(st.integers(0, 5))
    sets = {f"n{i}": draw(st.lists(st.sampled_from(ground), unique=True)) for i in range(k)}
    return SetFamily(ground, sets)


@given(families())
def test_family_round_trip(f):
    text = serialize_family(f)
    assert parse_family(text) == f
    assert serialize_family(parse_family(text)) == text


@given(families(), st.permutations(range(5)))
def test_intersection_graph_commutes_with_renaming(f, perm):
    rename = {n: f"r{perm[i]}" for i, n in enumerate(f.names)}
    g1 = intersection_graph(f)
    g2 = intersection_graph(SetFamily(f.ground, {rename[n]: m for n, m in f.items()}))
    assert {tuple(sorted((rename[u], rename[v]))) for u, v in g1.edges} == set(g2.edges)


def test_intersection_graph_four_cycle():
    g = intersection_graph(fam("1234", "12", "23", "34", "14"))
    assert g.sorted_edges() == [("s1", "s2"), ("s1", "s4"), ("s2", "s3"), ("s3", "s4")]


def test_intersection_graph_single_set():
    g = intersection_graph(fam("a", "a"))
    assert g.vertices.elements == ("s1",) and not g.edges


def test_intersection_graph_star_is_triangle():
    assert len(intersection_graph(STAR).edges) == 3


def test_graph_rejects_loops_and_strangers():
    with pytest.raises(ValueError, match="loop"):
        Graph("ab", [("a", "a")])
    with pytest.raises(ValueError, match="outside"):
        Graph("ab", [("a", "z")])


def test_graph_text_round_trip():
    g = parse_graph((DATA / "trident.txt").read_text())
    assert len(g) == 7 and len(g.edges) == 6
    assert parse_graph(serialize_graph(g)) == g
    assert serialize_graph(g).startswith("vertices: a1 a2 b1 b2 c c1 c2\n")


def test_graph_parse_errors():
    with pytest.raises(FormatError, match="vertices"):
        parse_graph("a b\n")
    with pytest.raises(FormatError, match="unknown label z") as info:
        parse_graph("vertices: a b\na z\n")
    assert info.value.location == "line 2, column 3"


def test_tree_invariants_checked():
    with pytest.raises(ValueError, match="edges"):
        Tree.from_edges("abc", [("a", "b")])
    with pytest.raises(ValueError, match="connected"):
        Tree.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "a")])


PATH3 = Tree.from_edges("123", [("1", "2"), ("2", "3")])
STAR_TREE = Tree.from_edges("abcd", [("c", "a"), ("c", "b"), ("c", "d")])


@pytest.mark.parametrize(
    "tree, subset, expected",
    [
        (PATH3, "13", 2),
        (PATH3, "123", 1),
        (STAR_TREE, "ab", 2),
        (PATH3, "", 0),
    ],
)
def test_induced_component_count(tree, subset, expected):
    assert induced_component_count(tree, list(subset)) == expected


def test_induced_component_count_rejects_strangers():
    with pytest.raises(ValueError, match="unknown label"):
        induced_component_count(PATH3, ["9"])


def test_validate_star():
    assert validate_subtree_representation(STAR_TREE, STAR).ok


def test_validate_reports_witness():
    tree = Tree.from_edges("abc", [("a", "b"), ("b", "c")])
    report = validate_subtree_representation(tree, fam("abc", "ac"))
    assert report.failures == (("s1", 2),)


def test_validate_truncated_counterexample():
    tree = Tree.from_edges("01234", [("1", "2"), ("2", "3"), ("3", "4"), ("0", "4")])
    assert validate_subtree_representation(tree, counterexample_truncation(4)).ok


def test_validate_rejects_vertex_mismatch():
    with pytest.raises(ValueError, match="vertex set"):
        validate_subtree_representation(PATH3, STAR)


def test_validate_ignores_empty_sets():
    assert validate_subtree_representation(PATH3, fam("123", "", "12")).ok


def test_ordering_intervals():
    o = Ordering(("a", "b", "c"))
    assert o.is_interval("ab") and not o.is_interval("ac") and o.is_interval("")
    assert o.as_path().sorted_edges() == [("a", "b"), ("b", "c")]
    with pytest.raises(ValueError):
        Ordering(("a", "a"))


def test_json_format_is_plain_json():
    doc = json.loads(serialize_family(STAR))
    assert doc == {"ground": ["a", "b", "c", "d"], "sets": {"s1": ["a", "c"], "s2": ["b", "c"], "s3": ["c", "d"]}}
    assert graph("ab", "ab").has_edge("b", "a")
