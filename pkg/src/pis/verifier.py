"""Compositional deadlock-freedom check, the global oracle, and their comparison.

The compositional check works only on port protocols: if the
communication graph is a tree, every port is uniquely connected,
conforms to its component and has a τ-free minimal protocol, and every
pair of connected port protocols composes without deadlock, then the
global behavior is deadlock-free.  The oracle explores the global
behavior directly and is only usable for small systems.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .composition import BudgetExceeded, global_behavior, partial_behavior, port_behavior
from .equivalence import branching_bisimilar, hidden_behavior, is_minimal, is_tau_free, minimize
from .lts import Lts, Trace, find_deadlock
from .system import PortRef, System, ensure_valid
from .topology import comm_graph, is_tree_like, port_connectivity


class Outcome(enum.Enum):
    DEADLOCK_FREE_BY_THEOREM = "deadlock-free (theorem)"
    DEADLOCK_FREE_BY_ORACLE = "deadlock-free (oracle)"
    DEADLOCK_WITNESS = "deadlock"
    INAPPLICABLE = "inapplicable"


class FailureKind(enum.Enum):
    NOT_TREE_LIKE = "NotTreeLike"
    PORT_NOT_UNIQUELY_CONNECTED = "PortNotUniquelyConnected"
    PORT_NOT_CONFORM = "PortNotConform"
    MINIMIZED_PROTOCOL_NOT_TAU_FREE = "MinimizedProtocolNotTauFree"
    PAIR_DEADLOCK = "PairDeadlock"
    ISOLATED_COMPONENT_DEADLOCK = "IsolatedComponentDeadlock"


@dataclass(frozen=True)
class Failure:
    kind: FailureKind
    ports: tuple = ()
    trace: Trace | None = None
    component: str | None = None

    def __str__(self):
        subject = ", ".join(str(p) for p in self.ports)
        if self.component is not None:
            subject = self.component + (f": {subject}" if subject else "")
        return f"{self.kind.value}({subject})" if subject else self.kind.value


@dataclass(frozen=True)
class PairCheck:
    pair: tuple
    deadlock_free: bool
    tau_free: bool
    state_count: int
    transition_count: int
    witness: Trace | None = None
    composite: Lts | None = field(default=None, repr=False, compare=False)

    @property
    def cost(self) -> int:
        return self.state_count + self.transition_count


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    trace: Trace | None = None
    failures: tuple = ()
    pair_checks: tuple = ()
    non_minimal_ports: tuple = ()
    state_count: int | None = None

    @property
    def deadlock_free(self) -> bool:
        return self.outcome in (Outcome.DEADLOCK_FREE_BY_THEOREM, Outcome.DEADLOCK_FREE_BY_ORACLE)

    def __str__(self):
        if self.outcome is Outcome.INAPPLICABLE:
            return "inapplicable: " + "; ".join(str(f) for f in self.failures)
        if self.outcome is Outcome.DEADLOCK_WITNESS:
            return "deadlock after " + format_trace(self.trace)
        return self.outcome.value


def format_label(label) -> str:
    if isinstance(label, frozenset):
        return "{" + ",".join(sorted(label)) + "}"
    return str(label)


def format_trace(trace: Trace | None) -> str:
    if trace is None:
        return "-"
    if not trace.labels:
        return "<initial state>"
    return " ".join(format_label(l) for l in trace.labels)


def check_pair(system: System, p: PortRef, q: PortRef, protocols: dict,
               budget: int | None = None) -> PairCheck:
    composite = port_behavior(system, {p: protocols[p], q: protocols[q]}, budget)
    witness = find_deadlock(composite)
    return PairCheck(
        pair=(p, q),
        deadlock_free=witness is None,
        tau_free=is_tau_free(composite),
        state_count=len(composite.states),
        transition_count=len(composite.transitions),
        witness=witness,
        composite=composite,
    )


def check_theorem(system: System, budget: int | None = None) -> Verdict:
    """Decide deadlock-freedom from port protocols alone, when applicable.

    All precondition failures are collected before giving up.  A pair of
    connected protocols that deadlocks makes the result ``INAPPLICABLE``:
    the hypothesis fails, which says nothing about the global behavior.
    """
    ensure_valid(system)
    minimized = {p: minimize(system.protocols[p]) for p in system.port_refs}
    non_minimal = tuple(p for p in system.port_refs if not is_minimal(system.protocols[p]))

    graph = comm_graph(system)
    failures = []
    if not is_tree_like(graph):
        failures.append(Failure(FailureKind.NOT_TREE_LIKE))
    for p in system.port_refs:
        if port_connectivity(graph, p) >= 2:
            failures.append(Failure(FailureKind.PORT_NOT_UNIQUELY_CONNECTED, (p,)))
    for p in system.port_refs:
        if not branching_bisimilar(minimized[p], hidden_behavior(system, p)):
            failures.append(Failure(FailureKind.PORT_NOT_CONFORM, (p,)))
    for p in system.port_refs:
        if not is_tau_free(minimized[p]):
            failures.append(Failure(FailureKind.MINIMIZED_PROTOCOL_NOT_TAU_FREE, (p,)))
    if failures:
        return Verdict(Outcome.INAPPLICABLE, failures=tuple(failures), non_minimal_ports=non_minimal)

    checks = []
    for p, q in graph.port_edges():
        check = check_pair(system, p, q, minimized, budget)
        checks.append(check)
        if not check.deadlock_free:
            failures.append(Failure(FailureKind.PAIR_DEADLOCK, (p, q), check.witness))

    # A component none of whose ports is connected has no pair check; it is
    # live when at least one of its protocols is.
    linked = {p.component for edge in graph.port_edges() for p in edge}
    for c in system.components:
        if c in linked:
            continue
        ports = [PortRef(c, x) for x in system.ports.get(c, ())]
        first_witness = None
        live = False
        for p in ports:
            composite = port_behavior(system, {p: minimized[p]}, budget)
            witness = find_deadlock(composite)
            if witness is None:
                live = True
                break
            if first_witness is None:
                first_witness = witness
        if not live:
            failures.append(Failure(FailureKind.ISOLATED_COMPONENT_DEADLOCK, tuple(ports),
                                    first_witness, component=c))

    if failures:
        return Verdict(Outcome.INAPPLICABLE, failures=tuple(failures),
                       pair_checks=tuple(checks), non_minimal_ports=non_minimal)
    return Verdict(Outcome.DEADLOCK_FREE_BY_THEOREM, pair_checks=tuple(checks),
                   non_minimal_ports=non_minimal)


def check_oracle(system: System, budget: int | None = None) -> Verdict:
    """Explore the global behavior and look for a reachable sink.

    Raises :class:`BudgetExceeded` when the global behavior is too large.
    """
    ensure_valid(system)
    lts = global_behavior(system, budget)
    witness = find_deadlock(lts)
    if witness is None:
        return Verdict(Outcome.DEADLOCK_FREE_BY_ORACLE, state_count=len(lts.states))
    return Verdict(Outcome.DEADLOCK_WITNESS, trace=witness, state_count=len(lts.states))


@dataclass(frozen=True)
class CrossValidation:
    theorem: Verdict
    oracle: Verdict | None
    oracle_error: str | None = None

    @property
    def soundness_violation(self) -> bool:
        return (
            self.theorem.outcome is Outcome.DEADLOCK_FREE_BY_THEOREM
            and self.oracle is not None
            and self.oracle.outcome is Outcome.DEADLOCK_WITNESS
        )

    @property
    def consistent(self) -> bool:
        return not self.soundness_violation


def cross_validate(system: System, budget: int | None = None) -> CrossValidation:
    """Run both procedures; ``budget`` caps the oracle only."""
    theorem = check_theorem(system)
    try:
        oracle = check_oracle(system, budget)
    except BudgetExceeded as exc:
        return CrossValidation(theorem, None, f"oracle unknown: {exc}")
    return CrossValidation(theorem, oracle)


def check_pairs_components(system: System, budget: int | None = None) -> list[PairCheck]:
    """Baseline: deadlock check of the partial behavior of every connected component pair.

    For each port-port edge the two owning components are composed in
    full.  Used to compare costs with the protocol-based check; it is not
    a decision procedure by itself.
    """
    checks = []
    for p, q in comm_graph(system).port_edges():
        lts = partial_behavior(system, {p.component, q.component}, budget)
        witness = find_deadlock(lts)
        checks.append(PairCheck(
            pair=(p, q),
            deadlock_free=witness is None,
            tau_free=True,
            state_count=len(lts.states),
            transition_count=len(lts.transitions),
            witness=witness,
        ))
    return checks


def total_cost(checks) -> int:
    return sum(c.cost for c in checks)

