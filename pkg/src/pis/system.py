"""Protocol interaction systems and their well-formedness rules."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .lts import TAU, Lts


class QueryError(KeyError):
    """A query named a component or port the system does not have."""


class InvalidSystemError(ValueError):
    """Raised when a system fails validation; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations)
        super().__init__(f"invalid system:\n{lines}")


class PortRef(NamedTuple):
    component: str
    port: str

    def __str__(self):
        return f"{self.component}.{self.port}"

    @classmethod
    def parse(cls, text: str) -> "PortRef":
        comp, sep, port = text.partition(".")
        if not sep or not comp or not port:
            raise ValueError(f"port reference must look like <component>.<port>, got {text!r}")
        return cls(comp, port)


@dataclass(frozen=True, order=True)
class Violation:
    """One broken well-formedness rule.

    ``subjects`` names the offending components, ports, actions or
    interactions as strings so descriptors sort and print stably.
    """

    rule: str
    subjects: tuple
    message: str = field(compare=False)
    severity: str = field(default="error", compare=False)

    def __str__(self):
        return f"[{self.severity}] {self.rule}: {self.message}"


@dataclass(frozen=True, eq=False)
class System:
    """A protocol interaction system.

    ``ports`` maps each component to its port ids, ``alphabets`` maps each
    :class:`PortRef` to its action set, ``interactions`` is a frozenset of
    nonempty action frozensets, ``behaviors`` maps components to τ-free
    LTSs and ``protocols`` maps ports to their port protocols.
    """

    components: tuple
    ports: dict
    alphabets: dict
    interactions: frozenset
    behaviors: dict
    protocols: dict
    name: str = "sys"

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components)))
        ports = {c: tuple(sorted(ps)) for c, ps in self.ports.items()}
        for c in self.components:
            ports.setdefault(c, ())
        object.__setattr__(self, "ports", ports)
        object.__setattr__(
            self, "alphabets",
            {PortRef(*p): frozenset(a) for p, a in self.alphabets.items()},
        )
        object.__setattr__(
            self, "interactions", frozenset(frozenset(a) for a in self.interactions)
        )
        object.__setattr__(
            self, "protocols", {PortRef(*p): l for p, l in self.protocols.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, System):
            return NotImplemented
        return (
            self.name == other.name
            and self.components == other.components
            and self.ports == other.ports
            and self.alphabets == other.alphabets
            and self.interactions == other.interactions
            and self.behaviors == other.behaviors
            and self.protocols == other.protocols
        )

    __hash__ = None

    @cached_property
    def port_refs(self) -> tuple:
        """All ports in canonical order (component id, then port id)."""
        return tuple(
            PortRef(c, p) for c in self.components for p in self.ports.get(c, ())
        )

    @cached_property
    def component_actions(self) -> dict:
        return {
            c: frozenset().union(*(self.alphabets.get(PortRef(c, p), ()) for p in self.ports.get(c, ())))
            for c in self.components
        }

    @cached_property
    def actions(self) -> frozenset:
        return frozenset().union(*self.component_actions.values())

    @cached_property
    def owner(self) -> dict:
        """Map action -> owning port (first owner if alphabets overlap)."""
        owner = {}
        for p in self.port_refs:
            for a in sorted(self.alphabets.get(p, ())):
                owner.setdefault(a, p)
        return owner

    @cached_property
    def interactions_by_action(self) -> dict:
        index: dict = {}
        for alpha in self.interactions:
            for a in alpha:
                index.setdefault(a, []).append(alpha)
        return index

    def sorted_interactions(self) -> list:
        return sorted(self.interactions, key=lambda a: tuple(sorted(a)))

    def check_component(self, i: str):
        if i not in self.component_actions:
            raise QueryError(f"unknown component {i!r}")

    def check_port(self, p: PortRef):
        if PortRef(*p) not in self.alphabets:
            raise QueryError(f"unknown port {p}")


def project_component(alpha, i: str, system: System) -> frozenset:
    """The (at most one) action of component ``i`` taking part in ``alpha``."""
    system.check_component(i)
    return system.component_actions[i] & frozenset(alpha)


def project_port(alpha, p: PortRef, system: System) -> frozenset:
    system.check_port(p)
    return system.alphabets[PortRef(*p)] & frozenset(alpha)


def _fmt_set(items) -> str:
    return "{" + ", ".join(sorted(str(x) for x in items)) + "}"


def validate(system: System, warnings: bool = False) -> list[Violation]:
    """Check every well-formedness rule of a protocol interaction system.

    Returns the violations in canonical order; an empty list means the
    system is valid.  With ``warnings=True`` warning-grade descriptors
    (unused actions, empty port alphabets) are included as well.
    """
    out: list[Violation] = []
    comps = set(system.components)

    for c in system.ports:
        if c not in comps:
            out.append(Violation("port-owner", (c,), f"ports declared for unknown component {c!r}"))
    for p in system.alphabets:
        if p.component not in comps or p.port not in system.ports.get(p.component, ()):
            out.append(Violation("port-declared", (str(p),), f"alphabet given for undeclared port {p}"))
    for p in system.port_refs:
        if p not in system.alphabets:
            out.append(Violation("port-alphabet", (str(p),), f"port {p} has no alphabet"))
        elif not system.alphabets[p] and warnings:
            out.append(Violation("empty-alphabet", (str(p),), f"port {p} has an empty alphabet",
                                 "warning"))

    # reserved label
    for p, alph in system.alphabets.items():
        if "tau" in alph:
            out.append(Violation("reserved-tau", (str(p),), f"port {p} uses the reserved action name 'tau'"))

    # pairwise disjoint port alphabets
    holders: dict = {}
    for p in sorted(system.alphabets):
        for a in system.alphabets[p]:
            holders.setdefault(a, []).append(p)
    clashes: dict = {}
    for a, ps in holders.items():
        for k, p in enumerate(ps):
            for q in ps[k + 1:]:
                clashes.setdefault((p, q), set()).add(a)
    for (p, q), shared in clashes.items():
        out.append(Violation(
            "alphabet-disjoint", (str(p), str(q)),
            f"ports {p} and {q} share actions {_fmt_set(shared)}",
        ))

    act = system.actions
    covered = set()
    for alpha in system.sorted_interactions():
        name = _fmt_set(alpha)
        covered |= alpha
        if not alpha:
            out.append(Violation("interaction-nonempty", ("{}",), "empty interaction"))
            continue
        unknown = alpha - act
        if unknown:
            out.append(Violation("interaction-actions", (name,),
                                 f"interaction {name} uses undeclared actions {_fmt_set(unknown)}"))
        per_comp: dict = {}
        for a in alpha:
            if a in system.owner:
                per_comp.setdefault(system.owner[a].component, set()).add(a)
        for c in sorted(per_comp):
            mine = per_comp[c]
            if len(mine) > 1:
                out.append(Violation("interaction-one-per-component", (name, c),
                                     f"interaction {name} holds {len(mine)} actions of component {c}"))
    for a in sorted(act - covered):
        out.append(Violation("interaction-coverage", (a,), f"action {a!r} occurs in no interaction"))

    for c in system.components:
        beh = system.behaviors.get(c)
        if beh is None:
            out.append(Violation("behavior-present", (c,), f"component {c} has no behavior"))
            continue
        if TAU in beh.labels:
            out.append(Violation("behavior-tau-free", (c,), f"behavior of {c} uses tau"))
        stray = {l for l in beh.labels if l is not TAU} - system.component_actions[c]
        if stray:
            out.append(Violation("behavior-labels", (c,),
                                 f"behavior of {c} uses foreign actions {_fmt_set(stray)}"))
        if warnings:
            used = {l for _, l, _ in beh.transitions}
            for a in sorted(system.component_actions[c] - used):
                out.append(Violation("action-unused", (c, a),
                                     f"action {a!r} of {c} never occurs in its behavior", "warning"))
    for c in system.behaviors:
        if c not in comps:
            out.append(Violation("behavior-owner", (c,), f"behavior given for unknown component {c!r}"))

    for p in system.port_refs:
        prot = system.protocols.get(p)
        if prot is None:
            out.append(Violation("protocol-present", (str(p),), f"port {p} has no protocol"))
            continue
        stray = {l for l in prot.labels if l is not TAU} - system.alphabets.get(p, frozenset())
        if stray:
            out.append(Violation("protocol-labels", (str(p),),
                                 f"protocol of {p} uses actions {_fmt_set(stray)} outside its alphabet"))
    for p in system.protocols:
        if p not in set(system.port_refs):
            out.append(Violation("protocol-owner", (str(p),), f"protocol given for unknown port {p}"))

    return sorted(out)


def ensure_valid(system: System) -> System:
    violations = validate(system)
    if violations:
        raise InvalidSystemError(violations)
    return system

