"""Example systems, test fixtures and random system generators."""

from __future__ import annotations

import random
from itertools import product

from .equivalence import is_tau_free, minimize
from .lts import TAU, Lts, hide
from .system import PortRef, QueryError, System, ensure_valid


def _lts(transitions, initials=("0",)) -> Lts:
    return Lts.build(transitions, initials)


def _derived_protocols(behaviors: dict, alphabets: dict) -> dict:
    return {p: minimize(hide(behaviors[p.component], alph)) for p, alph in alphabets.items()}


def generate_ex1() -> System:
    """Two components whose single ports restrict each other.

    ``i`` offers ``a`` or ``b`` first, ``j`` offers ``a`` or ``d``; only
    the alternation of ``{a_i,a_j}`` and ``{c_i,c_j}`` survives the
    composition.  Each component's only port sees all of its actions, so
    the protocols are the behaviors themselves.
    """
    beh_i = _lts([
        ("0", "a_i", "1"), ("0", "b_i", "2"),
        ("1", "c_i", "0"), ("2", "d_i", "0"),
    ])
    beh_j = _lts([
        ("0", "a_j", "1"), ("0", "d_j", "2"),
        ("1", "c_j", "0"), ("1", "b_j", "3"),
        ("2", "c_j", "0"), ("3", "a_j", "0"),
    ])
    alphabets = {
        PortRef("i", "p"): {"a_i", "b_i", "c_i", "d_i"},
        PortRef("j", "q"): {"a_j", "b_j", "c_j", "d_j"},
    }
    behaviors = {"i": beh_i, "j": beh_j}
    return System(
        components=("i", "j"),
        ports={"i": ("p",), "j": ("q",)},
        alphabets=alphabets,
        interactions={frozenset({f"{x}_i", f"{x}_j"}) for x in "abcd"},
        behaviors=behaviors,
        protocols={p: behaviors[p.component] for p in alphabets},
        name="ex1",
    )


def generate_star(n: int) -> System:
    """A middle component ``m`` talking to ``n`` border components.

    ``m`` loops in one state on every ``a_m^i``; border ``i`` loops on
    ``a_i``; interactions pair ``a_m^i`` with ``a_i``.
    """
    if n < 1:
        raise QueryError(f"star needs n >= 1, got {n}")
    borders = [str(k) for k in range(1, n + 1)]
    alphabets = {PortRef("m", k): {f"a_m^{k}"} for k in borders}
    alphabets.update({PortRef(k, "p"): {f"a_{k}"} for k in borders})
    behaviors = {"m": _lts([("0", f"a_m^{k}", "0") for k in borders])}
    behaviors.update({k: _lts([("0", f"a_{k}", "0")]) for k in borders})
    return System(
        components=["m"] + borders,
        ports={"m": borders, **{k: ("p",) for k in borders}},
        alphabets=alphabets,
        interactions={frozenset({f"a_m^{k}", f"a_{k}"}) for k in borders},
        behaviors=behaviors,
        protocols=_derived_protocols(behaviors, alphabets),
        name=f"star{n}",
    )


def generate_star_pair_deadlock(n: int = 1) -> System:
    """Star where border 1 alternates ``a_1 b_1`` but ``m`` never offers ``b``.

    ``b_1`` synchronizes with ``b_m^1``, an action in the alphabet of
    ``m.1`` that ``m``'s behavior never performs, so the pair
    ``m.1``/``1.p`` gets stuck after one step.
    """
    base = generate_star(n)
    alphabets = dict(base.alphabets)
    alphabets[PortRef("m", "1")] = {"a_m^1", "b_m^1"}
    alphabets[PortRef("1", "p")] = {"a_1", "b_1"}
    behaviors = dict(base.behaviors)
    behaviors["1"] = _lts([("0", "a_1", "1"), ("1", "b_1", "0")])
    return System(
        components=base.components,
        ports=base.ports,
        alphabets=alphabets,
        interactions=set(base.interactions) | {frozenset({"b_m^1", "b_1"})},
        behaviors=behaviors,
        protocols=_derived_protocols(behaviors, alphabets),
        name=f"star{n}-pair-deadlock",
    )


def generate_ring(k: int = 3) -> System:
    """``k`` components in a cycle, each looping on both of its actions.

    The communication graph has a cycle, so the compositional check does
    not apply, yet the system never deadlocks.
    """
    comps = [f"c{x}" for x in range(k)]
    alphabets, interactions, behaviors = {}, set(), {}
    for x, c in enumerate(comps):
        nxt = comps[(x + 1) % k]
        alphabets[PortRef(c, "l")] = {f"{c}_l"}
        alphabets[PortRef(c, "r")] = {f"{c}_r"}
        interactions.add(frozenset({f"{c}_r", f"{nxt}_l"}))
        behaviors[c] = _lts([("0", f"{c}_l", "0"), ("0", f"{c}_r", "0")])
    return System(
        components=comps,
        ports={c: ("l", "r") for c in comps},
        alphabets=alphabets,
        interactions=interactions,
        behaviors=behaviors,
        protocols=_derived_protocols(behaviors, alphabets),
        name=f"ring{k}",
    )


# random generation ---------------------------------------------------------

def random_lts(rng: random.Random, actions, max_states: int, live: bool = False,
               tau: bool = False, extra: float = 1.0, min_states: int = 1) -> Lts:
    """A random LTS with all states reachable from state ``"0"``.

    ``live`` gives every state at least one outgoing transition.
    """
    actions = sorted(actions)
    labels = list(actions)
    if tau:
        labels.append(TAU)
    if not labels:
        return Lts.build((), ["0"])
    n = rng.randint(min_states, max_states)
    names = [str(k) for k in range(n)]
    trans = set()
    for k in range(1, n):
        trans.add((names[rng.randrange(k)], rng.choice(labels), names[k]))
    for _ in range(rng.randint(0, int(extra * n) + 1)):
        trans.add((rng.choice(names), rng.choice(labels), rng.choice(names)))
    if live:
        has_out = {s for s, _, _ in trans}
        for s in names:
            if s not in has_out:
                trans.add((s, rng.choice(labels), rng.choice(names)))
    return Lts.build(trans, ["0"])


def _interleave(parts: list) -> Lts:
    """Asynchronous product of LTSs over disjoint alphabets."""
    states = list(product(*(sorted(p.states) for p in parts)))
    name = {s: "_".join(s) for s in states}
    trans = set()
    for s in states:
        for k, p in enumerate(parts):
            for src, lab, dst in p.transitions:
                if src == s[k]:
                    t = s[:k] + (dst,) + s[k + 1:]
                    trans.add((name[s], lab, name[t]))
    init = [name[s] for s in product(*(sorted(p.initials) for p in parts))]
    return Lts.build(trans, init, states=name.values())


def _wire_interactions(rng, left: list, right: list) -> set:
    out = set()
    for a in left:
        out.add(frozenset({a, rng.choice(right)}))
    covered = {b for alpha in out for b in alpha}
    for b in right:
        if b not in covered:
            out.add(frozenset({rng.choice(left), b}))
    return out


def random_tree_system(rng: random.Random, max_components: int = 4, max_states: int = 5,
                       live_bias: float = 0.7, local_ports: float = 0.15) -> System:
    """A random system meeting every structural precondition of the theorem.

    The communication graph is a tree over components, every port is
    uniquely connected, protocols are derived from the behaviors (hence
    conform) and each component is re-drawn until its minimized protocols
    are τ-free.  Whether connected pairs deadlock is left to chance.
    """
    k = rng.randint(1, max_components)
    comps = [f"c{x}" for x in range(k)]
    ports = {c: [] for c in comps}
    alphabets = {}
    interactions = set()

    def new_port(c, pid):
        size = rng.randint(1, 2)
        ports[c].append(pid)
        acts = [f"{c}{pid}{x}" for x in range(size)]
        alphabets[PortRef(c, pid)] = set(acts)
        return acts

    for x in range(1, k):
        parent = comps[rng.randrange(x)]
        child = comps[x]
        left = new_port(parent, f"to{child}")
        right = new_port(child, f"to{parent}")
        interactions |= _wire_interactions(rng, left, right)
    for c in comps:
        if not ports[c] or rng.random() < local_ports:
            for a in new_port(c, "loc"):
                interactions.add(frozenset({a}))

    behaviors = {}
    for c in comps:
        refs = [PortRef(c, p) for p in ports[c]]
        live = rng.random() < live_bias
        chosen = None
        for _ in range(20):
            acts = set().union(*(alphabets[p] for p in refs))
            cand = random_lts(rng, acts, max_states, live=live)
            if all(_tau_free_view(cand, alphabets[p]) for p in refs):
                chosen = cand
                break
        if chosen is None:
            sizes = _split_budget(rng, len(refs), max_states)
            chosen = _interleave([
                random_lts(rng, alphabets[p], s, live=live) for p, s in zip(refs, sizes)
            ])
        behaviors[c] = chosen

    system = System(
        components=comps,
        ports=ports,
        alphabets=alphabets,
        interactions=interactions,
        behaviors=behaviors,
        protocols=_derived_protocols(behaviors, alphabets),
        name="randtree",
    )
    return ensure_valid(system)


def _tau_free_view(lts: Lts, alphabet) -> bool:
    return is_tau_free(minimize(hide(lts, alphabet)))


def _split_budget(rng, parts: int, max_states: int) -> list:
    """State counts per part whose product stays within ``max_states``."""
    sizes = [1] * parts
    order = list(range(parts))
    rng.shuffle(order)
    for k in order:
        rest = 1
        for j, s in enumerate(sizes):
            if j != k:
                rest *= s
        sizes[k] = rng.randint(1, max(1, max_states // rest))
    return sizes


def random_system(rng: random.Random, max_components: int = 3, max_states: int = 4,
                  tau_protocols: bool = True) -> System:
    """An arbitrary small valid system: random interactions, random protocols.

    Protocols are either derived from the behavior or drawn at random, so
    the result exercises composition, not the theorem's preconditions.
    """
    k = rng.randint(1, max_components)
    comps = [f"c{x}" for x in range(k)]
    ports, alphabets, owner_comp = {}, {}, {}
    for c in comps:
        ports[c] = [f"p{x}" for x in range(rng.randint(1, 2))]
        for p in ports[c]:
            acts = [f"{c}{p}{x}" for x in range(rng.randint(1, 2))]
            alphabets[PortRef(c, p)] = set(acts)
            for a in acts:
                owner_comp[a] = c
    actions = sorted(owner_comp)
    interactions = set()
    for a in actions:
        alpha = {a}
        for c in comps:
            if c != owner_comp[a] and rng.random() < 0.4:
                mine = [b for b in actions if owner_comp[b] == c]
                alpha.add(rng.choice(mine))
        interactions.add(frozenset(alpha))
    behaviors = {}
    for c in comps:
        acts = [a for a in actions if owner_comp[a] == c]
        behaviors[c] = random_lts(rng, acts, max_states, live=rng.random() < 0.5)
    protocols = {}
    for p, alph in alphabets.items():
        if rng.random() < 0.5:
            protocols[p] = minimize(hide(behaviors[p.component], alph))
        else:
            protocols[p] = random_lts(rng, alph, max_states, tau=tau_protocols)
    return ensure_valid(System(comps, ports, alphabets, interactions, behaviors, protocols,
                               name="random"))
