"""Brute-force reference constructions used only by the tests."""

from itertools import product

from pis.lts import TAU, Lts, restrict_to_reachable
from pis.system import PortRef


def naive_component_product(system, components):
    """Full Cartesian product of behaviors, then cut down to reachable states."""
    comps = sorted(components)
    behs = [system.behaviors[c] for c in comps]
    acts = [system.component_actions[c] for c in comps]
    union = frozenset().union(*acts)
    labels = {alpha & union for alpha in system.interactions} - {frozenset()}
    states = list(product(*(sorted(b.states) for b in behs)))
    trans = set()
    for s in states:
        for t in states:
            for beta in labels:
                ok = True
                for k, b in enumerate(behs):
                    mine = beta & acts[k]
                    if mine:
                        (a,) = mine
                        if (s[k], a, t[k]) not in b.transitions:
                            ok = False
                            break
                    elif s[k] != t[k]:
                        ok = False
                        break
                if ok:
                    trans.add((s, beta, t))
    init = set(product(*(b.initials for b in behs)))
    full = Lts(frozenset(states), frozenset(labels), frozenset(trans), frozenset(init))
    return restrict_to_reachable(full)


def naive_port_product(system, ports, protocols=None):
    refs = sorted(PortRef(*p) for p in ports)
    prots = [(protocols or system.protocols)[p] for p in refs]
    alphs = [system.alphabets[p] for p in refs]
    union = frozenset().union(*alphs)
    labels = {alpha & union for alpha in system.interactions} - {frozenset()}
    states = list(product(*(sorted(l.states) for l in prots)))
    trans = set()
    for s in states:
        for t in states:
            for beta in labels:
                ok = True
                for k, l in enumerate(prots):
                    mine = beta & alphs[k]
                    if mine:
                        (a,) = mine
                        if (s[k], a, t[k]) not in l.transitions:
                            ok = False
                            break
                    elif s[k] != t[k]:
                        ok = False
                        break
                if ok:
                    trans.add((s, beta, t))
            diff = [k for k in range(len(refs)) if s[k] != t[k]]
            movers = diff if diff else range(len(refs))
            for k in movers:
                if all(s[j] == t[j] for j in range(len(refs)) if j != k) and \
                        (s[k], TAU, t[k]) in prots[k].transitions:
                    trans.add((s, TAU, t))
    init = set(product(*(l.initials for l in prots)))
    full = Lts(frozenset(states), frozenset(labels) | {TAU}, frozenset(trans), frozenset(init))
    return restrict_to_reachable(full)
