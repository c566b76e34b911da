"""Branching bisimilarity: partition refinement, quotients and conformance."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .lts import TAU, Lts, hide, label_key, state_key
from .refine import refine
from .system import PortRef, System


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering an LTS's state set.

    Blocks are ordered by their canonical least member; ``index`` maps a
    state to the position of its block.
    """

    blocks: tuple
    index: dict

    def block_of(self, state) -> frozenset:
        return self.blocks[self.index[state]]

    def same_block(self, s, t) -> bool:
        return self.index[s] == self.index[t]

    def __len__(self):
        return len(self.blocks)


def _encode(lts: Lts):
    """CSR arrays over canonically numbered states; TAU is label 0."""
    states = lts.sorted_states()
    sid = {s: k for k, s in enumerate(states)}
    visible = sorted((l for l in lts.labels if l is not TAU), key=label_key)
    lid = {l: k + 1 for k, l in enumerate(visible)}
    lid[TAU] = 0
    succ = lts.successors
    offsets = [0]
    labels, targets = [], []
    for s in states:
        for lab, t in succ[s]:
            labels.append(lid[lab])
            targets.append(sid[t])
        offsets.append(len(labels))
    return states, offsets, labels, targets


def branching_partition(lts: Lts) -> Partition:
    """Coarsest partition whose blocks are branching-bisimilarity classes."""
    states, offsets, labels, targets = _encode(lts)
    ids = refine(len(states), offsets, labels, targets, 0)
    groups: list[list] = []
    for s, b in zip(states, ids):
        if b == len(groups):
            groups.append([])
        groups[b].append(s)
    # ids are numbered by first state in canonical order, so blocks already
    # sort by least member
    blocks = tuple(frozenset(g) for g in groups)
    index = {s: b for s, b in zip(states, ids)}
    return Partition(blocks, index)


def _disjoint_union(l1: Lts, l2: Lts) -> Lts:
    tag = lambda k, lts: Lts(
        frozenset((k, s) for s in lts.states),
        lts.labels,
        frozenset(((k, s), a, (k, t)) for s, a, t in lts.transitions),
        frozenset((k, s) for s in lts.initials),
    )
    a, b = tag(0, l1), tag(1, l2)
    return Lts(a.states | b.states, a.labels | b.labels,
               a.transitions | b.transitions, a.initials | b.initials)


def branching_bisimilar(l1: Lts, l2: Lts) -> bool:
    union = _disjoint_union(l1, l2)
    part = branching_partition(union)
    left = {part.index[(0, s)] for s in l1.initials}
    right = {part.index[(1, s)] for s in l2.initials}
    return left == right


def minimize(lts: Lts) -> Lts:
    """Quotient by branching bisimilarity, restricted to reachable blocks.

    Each block is named by its least member; τ-steps inside one block are
    dropped.
    """
    part = branching_partition(lts)
    rep = [min(b, key=state_key) for b in part.blocks]
    lifted = set()
    for s, lab, t in lts.transitions:
        bs, bt = part.index[s], part.index[t]
        if lab is TAU and bs == bt:
            continue
        lifted.add((bs, lab, bt))
    init = {part.index[s] for s in lts.initials}
    out: dict = {}
    for bs, lab, bt in lifted:
        out.setdefault(bs, []).append(bt)
    seen = set(init)
    stack = list(init)
    while stack:
        b = stack.pop()
        for c in out.get(b, ()):
            if c not in seen:
                seen.add(c)
                stack.append(c)
    transitions = frozenset((rep[bs], lab, rep[bt]) for bs, lab, bt in lifted if bs in seen)
    return Lts(
        frozenset(rep[b] for b in seen),
        frozenset(lab for _, lab, _ in transitions),
        transitions,
        frozenset(rep[b] for b in init),
    )


def is_minimal(lts: Lts) -> bool:
    """True when minimization would not shrink ``lts``."""
    m = minimize(lts)
    return len(m.states) == len(lts.states) and len(m.transitions) == len(lts.transitions)


def is_tau_free(lts: Lts) -> bool:
    return all(lab is not TAU for _, lab, _ in lts.transitions)


def hidden_behavior(system: System, p: PortRef) -> Lts:
    """The component behavior of ``p``'s owner seen through ``p`` only."""
    system.check_port(p)
    p = PortRef(*p)
    return hide(system.behaviors[p.component], system.alphabets[p])


def conforms(system: System, p: PortRef, protocol: Lts | None = None) -> bool:
    """Whether port ``p``'s protocol is branching-bisimilar to its component.

    ``protocol`` overrides the system's own protocol for ``p`` (used to
    check an already-minimized protocol).
    """
    hidden = hidden_behavior(system, p)
    if protocol is None:
        protocol = system.protocols[PortRef(*p)]
    return branching_bisimilar(protocol, hidden)


def naive_branching_bisimilarity(lts: Lts) -> set:
    """Greatest-fixpoint computation of branching bisimilarity as a pair set.

    Starts from the full relation and deletes pairs until every step of
    either side is matched:  ``s -a-> s'`` is matched by ``t`` when
    ``a`` is τ and ``(s', t)`` stays related, or when ``t`` reaches some
    ``t0`` by τ-steps with ``(s, t0)`` related and ``t0 -a-> t'`` with
    ``(s', t')`` related.  Cubic or worse; meant as an independent oracle
    for small LTSs.
    """
    states = list(lts.states)
    succ = {s: [] for s in states}
    for s, a, t in lts.transitions:
        succ[s].append((a, t))
    closure = {}
    for s in states:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for a, v in succ[u]:
                if a is TAU and v not in seen:
                    seen.add(v)
                    stack.append(v)
        closure[s] = seen

    rel = set(product(states, states))

    def matched(s, t):
        for a, s2 in succ[s]:
            if a is TAU and (s2, t) in rel:
                continue
            ok = False
            for t0 in closure[t]:
                if (s, t0) not in rel:
                    continue
                for b, t2 in succ[t0]:
                    if b == a and (s2, t2) in rel:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False
        return True

    changed = True
    while changed:
        changed = False
        for s, t in list(rel):
            if (s, t) in rel and not (matched(s, t) and matched(t, s)):
                rel.discard((s, t))
                rel.discard((t, s))
                changed = True
    return rel


def naive_partition(lts: Lts) -> set:
    """Blocks of the naive oracle relation, as a set of frozensets."""
    rel = naive_branching_bisimilarity(lts)
    return {frozenset(t for t in lts.states if (s, t) in rel) for s in lts.states}
