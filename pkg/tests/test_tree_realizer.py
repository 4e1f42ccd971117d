from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setrealize.checkers import ChordlessCycle, HellyViolation, check_chordal, check_helly_bruteforce
from setrealize.model import GroundSet, SetFamily, Tree, intersection_graph, validate_subtree_representation
from setrealize.testkit import (
    counterexample_truncation,
    enumerate_labeled_trees,
    families_up_to_isomorphism,
    realize_tree_bruteforce,
)
from setrealize.tree_realizer import (
    DisconnectedMeeting,
    Fleet,
    NotAFleet,
    extend_fleet_maximally,
    find_disconnected_meeting,
    realize_tree,
    spanning_tree_of_edge_ships,
)

from conftest import STAR, TRIANGLE, fam


def fleet(ground, *sets):
    return Fleet(fam(ground, ground, *sets))


def addable(f: SetFamily, pair: tuple[str, str]) -> bool:
    """Oracle: does adding the pair keep Helly (exhaustive) and chordality?"""
    trial = SetFamily(f.ground, {**f.as_dict(), "__candidate": list(pair)})
    if check_helly_bruteforce(trial) is not None:
        return False
    return not isinstance(check_chordal(intersection_graph(trial)), ChordlessCycle)


def test_star_family_gives_star():
    tree = realize_tree(STAR)
    assert tree.sorted_edges() == [("a", "c"), ("b", "c"), ("c", "d")]


def test_triangle_of_pairs_is_refused():
    assert isinstance(realize_tree(TRIANGLE), HellyViolation)


def test_four_cycle_is_refused_with_cycle():
    f = fam("1234", "12", "23", "34", "14")
    result = realize_tree(f)
    assert isinstance(result, ChordlessCycle)
    assert result.verify(intersection_graph(f))


def test_truncated_counterexample_tree():
    f = counterexample_truncation(4)
    realizers = {
        tuple(t.sorted_edges()) for t in enumerate_labeled_trees(f.ground) if validate_subtree_representation(t, f).ok
    }
    # exhaustive over all 125 labeled trees on five vertices
    assert realizers == {
        (("0", "3"), ("1", "2"), ("2", "3"), ("3", "4")),
        (("0", "4"), ("1", "2"), ("2", "3"), ("3", "4")),
    }
    assert tuple(realize_tree(f).sorted_edges()) in realizers


def test_singleton_ground_set():
    tree = realize_tree(fam("x", "x"))
    assert tree.vertices.elements == ("x",) and not tree.edges


def test_singleton_ground_with_empty_set_is_refused():
    assert realize_tree(fam("x", "")) == HellyViolation(("s1",))


def test_duplicates_are_harmless():
    assert realize_tree(fam("abc", "ab", "ab", "bc")).sorted_edges() == [("a", "b"), ("b", "c")]


def test_empty_ground_rejected():
    with pytest.raises(ValueError):
        realize_tree(SetFamily([], {}))


def test_extend_two_point_ground():
    out = extend_fleet_maximally(fleet("ab"))
    assert out.edge_ships == (("a", "b"),)


def test_non_fleet_rejected():
    with pytest.raises(NotAFleet, match="Helly"):
        fleet("abc", "ab", "bc", "ac")
    with pytest.raises(NotAFleet, match="ground"):
        Fleet(fam("ab", "a"))


def test_extend_adds_one_of_two_pairs():
    out = extend_fleet_maximally(fleet("123", "12"))
    ships = set(out.edge_ships)
    assert ("1", "2") in ships
    assert len(ships & {("1", "3"), ("2", "3")}) == 1
    assert len(spanning_tree_of_edge_ships(out).edges) == 2
    missing = [p for p in combinations("123", 2) if p not in ships]
    assert missing and not any(addable(out.family, p) for p in missing)


def test_disconnected_ground():
    m = find_disconnected_meeting(fleet("abcd", "ab", "cd"))
    assert m == DisconnectedMeeting(("s1",), ("a", "b", "c", "d"), (("a", "b"), ("c", "d")))


def test_connected_edge_ships_leave_no_disconnected_meeting():
    assert find_disconnected_meeting(fleet("123", "12", "23")) is None


def test_minimal_disconnected_meeting_is_smallest():
    # {a,b,c} is a meeting with no internal edge ship; W itself is also disconnected
    m = find_disconnected_meeting(fleet("abcd", "abc", "cd"))
    assert m.meeting == ("a", "b", "c")
    assert m.parts == (("a",), ("b",), ("c",))


def test_spanning_tree_path():
    tree = spanning_tree_of_edge_ships(fleet("abc", "ab", "bc"))
    assert tree.sorted_edges() == [("a", "b"), ("b", "c")]


def test_spanning_tree_needs_connectivity():
    with pytest.raises(ValueError, match="connect"):
        spanning_tree_of_edge_ships(fleet("abc", "ab"))


def test_spanning_tree_of_extended_truncation():
    f = counterexample_truncation(4)
    ext = extend_fleet_maximally(Fleet.from_family(f))
    assert validate_subtree_representation(spanning_tree_of_edge_ships(ext), f).ok


@st.composite
def nonempty_families(draw, max_n=5, max_sets=6):
    n = draw(st.integers(1, max_n))
    masks = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=max_sets))
    return SetFamily.from_masks(GroundSet("abcdefgh"[:n]), [(f"s{i}", m) for i, m in enumerate(masks)])


@settings(max_examples=300, deadline=None)
@given(nonempty_families())
def test_realizer_matches_bruteforce(f):
    result = realize_tree(f)
    oracle = realize_tree_bruteforce(f)
    assert isinstance(result, Tree) == (oracle is not None)
    if isinstance(result, Tree):
        assert validate_subtree_representation(result, f).ok
        for m in f.members:
            if len(m) == 2:
                assert tuple(m) in result.edges
    elif isinstance(result, HellyViolation):
        assert result.verify(f)
    else:
        assert result.verify(intersection_graph(f))


@settings(max_examples=150, deadline=None)
@given(nonempty_families())
def test_maximal_fleets_have_no_disconnected_meeting(f):
    if not isinstance(realize_tree(f), Tree) or len(f.ground) < 2:
        return
    ext = extend_fleet_maximally(Fleet.from_family(f))
    assert find_disconnected_meeting(ext) is None
    ships = set(ext.edge_ships)
    missing = [p for p in combinations(f.ground.elements, 2) if p not in ships]
    assert not any(addable(ext.family, p) for p in missing)


def test_realize_is_deterministic():
    f = counterexample_truncation(7)
    assert realize_tree(f) == realize_tree(SetFamily(f.ground, dict(reversed(list(f.items())))))


def test_exhaustive_five_up_to_isomorphism():
    """Every family of at most six distinct nonempty subsets of a 5-set, one per class."""
    seen = 0
    for f in families_up_to_isomorphism(GroundSet("abcde"), 6):
        result = realize_tree(f)
        assert isinstance(result, Tree) == (realize_tree_bruteforce(f) is not None), f.as_dict()
        if isinstance(result, Tree):
            maximal = extend_fleet_maximally(Fleet.from_family(f))
            assert find_disconnected_meeting(maximal) is None
        seen += 1
    assert seen == 10_849
