import pytest
from hypothesis import given

from conftest import ltss
from pis.lts import (
    TAU, Lts, LtsError, find_deadlock, hide, is_deadlock_free, is_isomorphic,
    reachable_states, traces,
)


def chain():
    return Lts.build([("s0", "a", "s1"), ("s1", "b", "s2")], ["s0"])


def test_tau_is_a_singleton_distinct_from_actions():
    assert TAU is type(TAU)()
    assert TAU != "tau"
    assert repr(TAU) == "tau"


def test_rejects_empty_initials():
    with pytest.raises(LtsError):
        Lts.build([("s0", "a", "s0")], [])


def test_rejects_dangling_transition():
    with pytest.raises(LtsError):
        Lts(frozenset({"s0"}), frozenset({"a"}), frozenset({("s0", "a", "s9")}), frozenset({"s0"}))


def test_rejects_undeclared_label():
    with pytest.raises(LtsError):
        Lts(frozenset({"s0"}), frozenset(), frozenset({("s0", "a", "s0")}), frozenset({"s0"}))


def test_duplicate_transitions_collapse():
    lts = Lts.build([("s0", "a", "s1"), ("s0", "a", "s1")], ["s0"])
    assert len(lts.transitions) == 1


def test_reachable_single_state():
    assert reachable_states(Lts.build([], ["s0"])) == {"s0"}


def test_reachable_chain():
    assert reachable_states(chain()) == {"s0", "s1", "s2"}


def test_reachable_skips_isolated():
    lts = Lts.build([], ["s0"], states=["s1"])
    assert reachable_states(lts) == {"s0"}


def test_reachable_unions_all_initials():
    lts = Lts.build([("a0", "x", "a1")], ["a0", "b0"])
    assert reachable_states(lts) == {"a0", "a1", "b0"}


def test_deadlock_free_self_loop():
    assert is_deadlock_free(Lts.build([("s0", "a", "s0")], ["s0"]))


def test_deadlock_single_sink():
    assert not is_deadlock_free(Lts.build([], ["s0"]))


def test_deadlock_decided_by_reachable_sink_only():
    lts = Lts.build([("s0", "a", "s1"), ("s2", "b", "s2")], ["s0"])
    assert not is_deadlock_free(lts)


def test_tau_counts_as_outgoing():
    assert is_deadlock_free(Lts.build([("s0", TAU, "s0")], ["s0"]))


def test_find_deadlock_shortest_and_replayable():
    lts = Lts.build([
        ("s0", "a", "s1"), ("s1", "b", "s2"), ("s0", "c", "s3"), ("s3", "c", "s0"),
        ("s2", "d", "s4"),
    ], ["s0"])
    trace = find_deadlock(lts)
    assert trace.labels == ("a", "b", "d")
    assert trace.replays_to_sink(lts)
    assert find_deadlock(Lts.build([("s0", "a", "s0")], ["s0"])) is None


def test_hide_partial():
    hidden = hide(chain(), {"a"})
    assert hidden.transitions == {("s0", "a", "s1"), ("s1", TAU, "s2")}
    assert hidden.labels == {"a", TAU}


def test_hide_identity():
    lts = chain()
    assert hide(lts, {"a", "b"}) == lts


def test_hide_everything():
    lts = chain()
    hidden = hide(lts, set())
    assert len(hidden.transitions) == 2
    assert all(l is TAU for _, l, _ in hidden.transitions)
    assert hidden.labels == {TAU}


def test_hide_turns_existing_tau_into_tau():
    lts = Lts.build([("s0", TAU, "s1")], ["s0"])
    assert hide(lts, {"a"}).transitions == {("s0", TAU, "s1")}


@given(ltss(), ltss())
def test_hide_idempotent_and_shape_preserving(l, other):
    keep = {"a"} | {x for x in other.labels if x is not TAU}
    once = hide(l, keep)
    assert hide(once, keep) == once
    assert once.states == l.states and once.initials == l.initials
    # hiding may merge two transitions that differed only in their label
    assert len(once.transitions) <= len(l.transitions)
    assert {(s, t) for s, _, t in once.transitions} == {(s, t) for s, _, t in l.transitions}


@given(ltss())
def test_deadlock_freedom_ignores_unreachable_states(l):
    bigger = Lts.build(l.transitions | {("zz", "a", "zz")}, l.initials, states=l.states)
    assert is_deadlock_free(bigger) == is_deadlock_free(l)


@given(ltss(), ltss())
def test_reachability_monotone_under_transition_addition(l, other):
    extra = {(s, a, t) for s, a, t in other.transitions if s in l.states and t in l.states}
    bigger = Lts.build(l.transitions | extra, l.initials, states=l.states)
    assert reachable_states(l) <= reachable_states(bigger)


def test_traces_depth():
    assert traces(chain(), 1) == {(), ("a",)}
    assert traces(chain(), 5) == {(), ("a",), ("a", "b")}


def test_isomorphism_ignores_names():
    l1 = Lts.build([("x", "a", "y"), ("y", "b", "x")], ["x"])
    l2 = Lts.build([("1", "a", "2"), ("2", "b", "1")], ["1"])
    l3 = Lts.build([("1", "a", "2"), ("2", "b", "2")], ["1"])
    assert is_isomorphic(l1, l2)
    assert not is_isomorphic(l1, l3)
