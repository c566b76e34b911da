import random

import pytest

from pis.generators import generate_ex1, generate_star, random_system
from pis.lts import TAU, Lts
from pis.system import (
    InvalidSystemError, PortRef, QueryError, System, ensure_valid, project_component,
    project_port, validate,
)


def tiny(**overrides):
    parts = dict(
        components=["x", "y"],
        ports={"x": ["p"], "y": ["q"]},
        alphabets={PortRef("x", "p"): {"a"}, PortRef("y", "q"): {"b"}},
        interactions={frozenset({"a", "b"})},
        behaviors={"x": Lts.build([("0", "a", "0")], ["0"]),
                   "y": Lts.build([("0", "b", "0")], ["0"])},
        protocols={PortRef("x", "p"): Lts.build([("0", "a", "0")], ["0"]),
                   PortRef("y", "q"): Lts.build([("0", "b", "0")], ["0"])},
    )
    parts.update(overrides)
    return System(**parts)


def rules(system, **kw):
    return [v.rule for v in validate(system, **kw)]


def test_star_is_valid():
    assert validate(generate_star(3)) == []


def test_ex1_is_valid():
    assert validate(generate_ex1()) == []


def test_tiny_is_valid():
    assert validate(tiny()) == []


def test_shared_action_is_one_disjointness_violation():
    s = tiny(alphabets={PortRef("x", "p"): {"a"}, PortRef("y", "q"): {"a", "b"}},
             interactions={frozenset({"a"}), frozenset({"b"})})
    vs = [v for v in validate(s) if v.rule == "alphabet-disjoint"]
    assert len(vs) == 1
    assert vs[0].subjects == ("x.p", "y.q")


def test_uncovered_action_is_reported_by_name():
    s = tiny(alphabets={PortRef("x", "p"): {"a", "z"}, PortRef("y", "q"): {"b"}})
    vs = [v for v in validate(s) if v.rule == "interaction-coverage"]
    assert [v.subjects for v in vs] == [("z",)]


def test_two_actions_of_one_component_in_an_interaction():
    s = tiny(alphabets={PortRef("x", "p"): {"a", "c"}, PortRef("y", "q"): {"b"}},
             interactions={frozenset({"a", "c"}), frozenset({"b"})})
    assert "interaction-one-per-component" in rules(s)


def test_behavior_with_tau_rejected():
    s = tiny(behaviors={"x": Lts.build([("0", TAU, "0"), ("0", "a", "0")], ["0"]),
                        "y": Lts.build([("0", "b", "0")], ["0"])})
    assert "behavior-tau-free" in rules(s)


def test_behavior_with_foreign_action_rejected():
    s = tiny(behaviors={"x": Lts.build([("0", "b", "0")], ["0"]),
                        "y": Lts.build([("0", "b", "0")], ["0"])})
    assert "behavior-labels" in rules(s)


def test_protocol_may_use_tau_but_not_foreign_actions():
    ok = tiny(protocols={PortRef("x", "p"): Lts.build([("0", TAU, "1"), ("1", "a", "1")], ["0"]),
                         PortRef("y", "q"): Lts.build([("0", "b", "0")], ["0"])})
    assert validate(ok) == []
    bad = tiny(protocols={PortRef("x", "p"): Lts.build([("0", "b", "0")], ["0"]),
                          PortRef("y", "q"): Lts.build([("0", "b", "0")], ["0"])})
    assert "protocol-labels" in rules(bad)


def test_missing_behavior_and_protocol():
    s = tiny(behaviors={"x": Lts.build([("0", "a", "0")], ["0"])}, protocols={})
    r = rules(s)
    assert "behavior-present" in r and r.count("protocol-present") == 2


def test_tau_is_a_reserved_action_name():
    s = tiny(alphabets={PortRef("x", "p"): {"a", "tau"}, PortRef("y", "q"): {"b"}},
             interactions={frozenset({"a", "b"}), frozenset({"tau"})})
    assert "reserved-tau" in rules(s)


def test_unused_action_is_only_a_warning():
    s = tiny(alphabets={PortRef("x", "p"): {"a", "c"}, PortRef("y", "q"): {"b"}},
             interactions={frozenset({"a", "b"}), frozenset({"c"})})
    assert validate(s) == []
    warnings = validate(s, warnings=True)
    assert [(v.rule, v.severity) for v in warnings] == [("action-unused", "warning")]


def test_empty_alphabet_is_a_warning():
    s = tiny(ports={"x": ["p", "e"], "y": ["q"]},
             alphabets={PortRef("x", "p"): {"a"}, PortRef("x", "e"): set(), PortRef("y", "q"): {"b"}},
             protocols={PortRef("x", "p"): Lts.build([("0", "a", "0")], ["0"]),
                        PortRef("x", "e"): Lts.build([], ["0"]),
                        PortRef("y", "q"): Lts.build([("0", "b", "0")], ["0"])})
    assert validate(s) == []
    assert [v.rule for v in validate(s, warnings=True)] == ["empty-alphabet"]


def test_violations_are_canonically_ordered():
    s = tiny(alphabets={PortRef("x", "p"): {"a", "z", "y"}, PortRef("y", "q"): {"b", "a"}})
    vs = validate(s)
    assert vs == sorted(vs)
    assert validate(s) == vs


def test_interactions_are_deduplicated():
    s = tiny(interactions=[frozenset({"a", "b"}), frozenset({"b", "a"})])
    assert len(s.interactions) == 1


def test_ensure_valid_raises_with_descriptors():
    s = tiny(interactions=set())
    with pytest.raises(InvalidSystemError) as info:
        ensure_valid(s)
    assert len(info.value.violations) == 2


# projections -----------------------------------------------------------------

def test_project_component_star():
    s = generate_star(3)
    alpha = frozenset({"a_m^1", "a_1"})
    assert project_component(alpha, "m", s) == {"a_m^1"}
    assert project_component(alpha, "2", s) == set()


def test_project_component_ex1():
    s = generate_ex1()
    assert project_component({"a_i", "a_j"}, "i", s) == {"a_i"}


def test_project_port_star():
    s = generate_star(3)
    alpha = frozenset({"a_m^1", "a_1"})
    assert project_port(alpha, PortRef("m", "1"), s) == {"a_m^1"}
    assert project_port(alpha, PortRef("m", "2"), s) == set()
    assert project_port(alpha, PortRef("3", "p"), s) == set()


def test_unknown_component_or_port_is_a_query_error():
    s = generate_star(2)
    with pytest.raises(QueryError):
        project_component({"a_1"}, "nope", s)
    with pytest.raises(QueryError):
        project_port({"a_1"}, PortRef("m", "9"), s)


@pytest.mark.parametrize("seed", range(30))
def test_projection_laws_on_random_systems(seed):
    s = random_system(random.Random(seed))
    for alpha in s.interactions:
        assert sum(len(project_port(alpha, p, s)) for p in s.port_refs) == len(alpha)
        for c in s.components:
            by_ports = frozenset().union(
                *(project_port(alpha, PortRef(c, p), s) for p in s.ports[c]))
            assert project_component(alpha, c, s) == by_ports
            assert len(project_component(alpha, c, s)) <= 1
