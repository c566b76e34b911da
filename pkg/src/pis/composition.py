"""Global, partial and port behaviors built on the fly from initial states."""

from __future__ import annotations

import os
from collections import deque
from itertools import product

from .lts import TAU, Lts, label_key, state_key
from .system import PortRef, QueryError, System

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """The composite state space outgrew the configured budget."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"composite state budget of {budget} states exceeded")


def default_budget() -> int:
    value = os.environ.get("PIS_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


def _moves(lts: Lts) -> dict:
    """state -> {label: [targets]}"""
    table: dict = {s: {} for s in lts.states}
    for s, lab, t in lts.sorted_transitions():
        table[s].setdefault(lab, []).append(t)
    return table


def _product(parts: list, steps: list, interleave_tau: bool, labels: frozenset,
             budget: int | None) -> Lts:
    """Synchronized product of ``parts`` restricted to its reachable states.

    ``steps`` lists ``(label, [(k, action), ...])``: the label fires when
    every listed participant ``k`` can do ``action``; all others stay put.
    With ``interleave_tau`` any single participant may also take a τ-step
    alone.
    """
    if budget is None:
        budget = default_budget()
    moves = [_moves(lts) for lts in parts]
    initials = [tuple(c) for c in product(*(sorted(l.initials, key=state_key) for l in parts))]
    seen = set(initials)
    if len(seen) > budget:
        raise BudgetExceeded(budget)
    queue = deque(initials)
    transitions = set()
    while queue:
        state = queue.popleft()
        succs = []
        for label, sync in steps:
            options = []
            for k, action in sync:
                targets = moves[k][state[k]].get(action)
                if not targets:
                    break
                options.append(targets)
            else:
                for choice in product(*options):
                    nxt = list(state)
                    for (k, _), t in zip(sync, choice):
                        nxt[k] = t
                    succs.append((label, tuple(nxt)))
        if interleave_tau:
            for k, m in enumerate(moves):
                for t in m[state[k]].get(TAU, ()):
                    nxt = list(state)
                    nxt[k] = t
                    succs.append((TAU, tuple(nxt)))
        for label, nxt in succs:
            transitions.add((state, label, nxt))
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > budget:
                    raise BudgetExceeded(budget)
                queue.append(nxt)
    return Lts(frozenset(seen), labels, frozenset(transitions), frozenset(initials))


def projected_interactions(system: System, actions: frozenset) -> list:
    """``{α ∩ actions | α ∈ Int} \\ {∅}`` in canonical order."""
    labels = set()
    for a in actions:
        for alpha in system.interactions_by_action.get(a, ()):
            labels.add(alpha & actions)
    return sorted(labels, key=label_key)


def global_behavior(system: System, budget: int | None = None) -> Lts:
    return partial_behavior(system, system.components, budget)


def partial_behavior(system: System, components, budget: int | None = None) -> Lts:
    """Product of the behaviors of ``components`` (a nonempty set)."""
    comps = sorted(set(components))
    if not comps:
        raise QueryError("partial behavior needs at least one component")
    for c in comps:
        system.check_component(c)
    position = {c: k for k, c in enumerate(comps)}
    actions = frozenset().union(*(system.component_actions[c] for c in comps))
    labels = projected_interactions(system, actions)
    steps = [
        (beta, sorted((position[system.owner[a].component], a) for a in beta))
        for beta in labels
    ]
    parts = [system.behaviors[c] for c in comps]
    return _product(parts, steps, False, frozenset(labels), budget)


def port_behavior(system: System, ports, budget: int | None = None) -> Lts:
    """Product of the protocols of ``ports``; τ-steps interleave.

    ``ports`` may be a collection of :class:`PortRef` or a mapping from
    port to the protocol LTS to use instead of the system's own.
    """
    if hasattr(ports, "items"):
        protocols = {PortRef(*p): l for p, l in ports.items()}
    else:
        protocols = {}
        for p in ports:
            system.check_port(p)
            protocols[PortRef(*p)] = system.protocols[PortRef(*p)]
    refs = sorted(protocols)
    if not refs:
        raise QueryError("port behavior needs at least one port")
    for p in refs:
        system.check_port(p)
    position = {p: k for k, p in enumerate(refs)}
    actions = frozenset().union(*(system.alphabets[p] for p in refs))
    labels = projected_interactions(system, actions)
    steps = [
        (beta, sorted((position[system.owner[a]], a) for a in beta))
        for beta in labels
    ]
    parts = [protocols[p] for p in refs]
    return _product(parts, steps, True, frozenset(labels) | {TAU}, budget)


def cost(lts: Lts) -> int:
    """Machine-independent exploration cost: states plus transitions."""
    return len(lts.states) + len(lts.transitions)
