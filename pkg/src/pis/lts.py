"""Labeled transition systems.

An :class:`Lts` is an immutable, purely set-theoretic carrier: a set of
states, a set of labels, a transition relation and a nonempty set of
initial states.  Visible labels are plain action names (strings) or, for
composed systems, frozensets of action names.  The internal label is the
singleton :data:`TAU`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable


class _Tau:
    """The unobservable label.  There is exactly one instance."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "tau"

    def __reduce__(self):
        return (_Tau, ())


TAU = _Tau()

State = Hashable
Label = Hashable
Transition = tuple  # (source, label, target)


def label_key(label):
    """Sort key giving a total, deterministic order over all label kinds."""
    if label is TAU:
        return (0, ())
    if isinstance(label, str):
        return (1, (label,))
    return (2, tuple(sorted(label)))


def state_key(state):
    """Sort key for state identifiers (strings, ints, or tuples of those)."""
    if isinstance(state, tuple):
        return (1, tuple(state_key(s) for s in state))
    if isinstance(state, str):
        return (0, (0, state))
    return (0, (1, repr(state)))


class LtsError(ValueError):
    """Raised when an LTS violates its structural invariants."""


@dataclass(frozen=True)
class Lts:
    states: frozenset
    labels: frozenset
    transitions: frozenset
    initials: frozenset

    def __post_init__(self):
        for name in ("states", "labels", "transitions", "initials"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))
        if not self.initials:
            raise LtsError("an LTS needs at least one initial state")
        if not self.initials <= self.states:
            missing = sorted(self.initials - self.states, key=state_key)
            raise LtsError(f"initial states not in state set: {missing}")
        for src, lab, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise LtsError(f"transition {src!r} -{lab!r}-> {dst!r} leaves the state set")
            if lab not in self.labels:
                raise LtsError(f"transition label {lab!r} is not declared")

    @classmethod
    def build(cls, transitions: Iterable = (), initials: Iterable = (),
              states: Iterable = (), labels: Iterable = ()) -> "Lts":
        """Build an LTS, inferring states and labels from the transitions.

        Explicit ``states`` and ``labels`` are added to the inferred ones, so
        isolated states and unused labels can still be declared.
        """
        transitions = frozenset(tuple(t) for t in transitions)
        initials = frozenset(initials)
        all_states = set(states) | set(initials)
        all_labels = set(labels)
        for src, lab, dst in transitions:
            all_states.add(src)
            all_states.add(dst)
            all_labels.add(lab)
        return cls(frozenset(all_states), frozenset(all_labels), transitions, initials)

    @cached_property
    def successors(self) -> dict:
        """Map state -> tuple of (label, target), canonically ordered."""
        succ = {s: [] for s in self.states}
        for src, lab, dst in self.transitions:
            succ[src].append((lab, dst))
        return {
            s: tuple(sorted(moves, key=lambda m: (label_key(m[0]), state_key(m[1]))))
            for s, moves in succ.items()
        }

    def sorted_states(self) -> list:
        return sorted(self.states, key=state_key)

    def sorted_transitions(self) -> list:
        return sorted(
            self.transitions,
            key=lambda t: (state_key(t[0]), label_key(t[1]), state_key(t[2])),
        )

    def __len__(self):
        return len(self.states)


def reachable_states(lts: Lts) -> set:
    """States reachable from some initial state in zero or more steps."""
    seen = set(lts.initials)
    stack = list(lts.initials)
    succ = lts.successors
    while stack:
        s = stack.pop()
        for _, t in succ[s]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def is_deadlock_free(lts: Lts) -> bool:
    succ = lts.successors
    return all(succ[s] for s in reachable_states(lts))


@dataclass(frozen=True)
class Trace:
    """A path through an LTS: start state, then alternating labels and states."""

    start: State
    labels: tuple
    states: tuple  # states[k] is reached after labels[k]

    @property
    def end(self):
        return self.states[-1] if self.states else self.start

    def __len__(self):
        return len(self.labels)

    def replays_to_sink(self, lts: Lts) -> bool:
        """True iff the trace is a real path of ``lts`` ending in a sink."""
        if self.start not in lts.initials:
            return False
        cur = self.start
        for lab, nxt in zip(self.labels, self.states):
            if (cur, lab, nxt) not in lts.transitions:
                return False
            cur = nxt
        return not lts.successors[cur]


def find_deadlock(lts: Lts) -> Trace | None:
    """Breadth-first search for a reachable sink.

    Returns a shortest trace to the first sink met in canonical order, or
    ``None`` when the LTS is deadlock-free.
    """
    succ = lts.successors
    parent: dict = {}
    queue = deque()
    for s in sorted(lts.initials, key=state_key):
        parent[s] = None
        queue.append(s)
    while queue:
        s = queue.popleft()
        if not succ[s]:
            labels, states = [], []
            cur = s
            while parent[cur] is not None:
                prev, lab = parent[cur]
                labels.append(lab)
                states.append(cur)
                cur = prev
            return Trace(cur, tuple(reversed(labels)), tuple(reversed(states)))
        for lab, t in succ[s]:
            if t not in parent:
                parent[t] = (s, lab)
                queue.append(t)
    return None


def hide(lts: Lts, keep) -> Lts:
    """Rename every transition whose label is not in ``keep`` to TAU."""
    keep = frozenset(keep)
    transitions = frozenset(
        (s, lab if (lab is not TAU and lab in keep) else TAU, t)
        for s, lab, t in lts.transitions
    )
    labels = frozenset(lab for _, lab, _ in transitions)
    return Lts(lts.states, labels, transitions, lts.initials)


def restrict_to_reachable(lts: Lts) -> Lts:
    reach = reachable_states(lts)
    transitions = frozenset(t for t in lts.transitions if t[0] in reach)
    return Lts(frozenset(reach), lts.labels, transitions, lts.initials)


def traces(lts: Lts, depth: int) -> set:
    """All label sequences of length <= ``depth`` from an initial state."""
    result = {()}
    frontier = {((), s) for s in lts.initials}
    succ = lts.successors
    for _ in range(depth):
        nxt = set()
        for word, s in frontier:
            for lab, t in succ[s]:
                nxt.add((word + (lab,), t))
        result.update(word for word, _ in nxt)
        frontier = nxt
    return result


def is_isomorphic(l1: Lts, l2: Lts) -> bool:
    """Label-preserving isomorphism test by backtracking.

    Intended for small LTSs (tests, minimization laws).  Labels must be
    identical; only state names may differ.
    """
    if (len(l1.states), len(l1.transitions), len(l1.initials)) != (
        len(l2.states), len(l2.transitions), len(l2.initials)
    ):
        return False
    if l1.labels != l2.labels:
        return False

    def profile(lts):
        out = {s: [] for s in lts.states}
        inc = {s: [] for s in lts.states}
        for s, lab, t in lts.transitions:
            out[s].append(label_key(lab) + ((s == t),))
            inc[t].append(label_key(lab))
        return {
            s: (s in lts.initials, tuple(sorted(out[s])), tuple(sorted(inc[s])))
            for s in lts.states
        }

    p1, p2 = profile(l1), profile(l2)
    if sorted(p1.values()) != sorted(p2.values()):
        return False
    order = l1.sorted_states()
    candidates = {s: [t for t in l2.sorted_states() if p2[t] == p1[s]] for s in order}
    t2 = l2.transitions
    mapping: dict = {}
    used: set = set()

    def consistent(s):
        for a, lab, b in l1.transitions:
            if a in mapping and b in mapping and (a == s or b == s):
                if (mapping[a], lab, mapping[b]) not in t2:
                    return False
        return True

    def extend(k):
        if k == len(order):
            return True
        s = order[k]
        for t in candidates[s]:
            if t in used:
                continue
            mapping[s] = t
            used.add(t)
            if consistent(s) and extend(k + 1):
                return True
            del mapping[s]
            used.discard(t)
        return False

    return extend(0)
