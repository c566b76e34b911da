"""Scaling benchmarks.

``bench_scaling`` compares the protocol-pair check with the baseline
that composes whole component pairs, on the star family.
``bench_backends`` times the two partition-refinement kernels.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import refine as refine_mod
from .equivalence import _encode, minimize
from .generators import generate_star, random_lts
from .topology import comm_graph
from .verifier import check_pair, check_pairs_components, total_cost


@dataclass(frozen=True)
class ScalingRow:
    n: int
    theorem_cost: int
    baseline_cost: int
    theorem_ms: float
    baseline_ms: float


def theorem_path(system) -> list:
    protocols = {p: minimize(system.protocols[p]) for p in system.port_refs}
    return [check_pair(system, p, q, protocols) for p, q in comm_graph(system).port_edges()]


def bench_scaling(n_values) -> list[ScalingRow]:
    n_values = list(n_values)
    if not n_values:
        raise ValueError("need at least one n")
    rows = []
    for n in n_values:
        system = generate_star(n)
        t0 = time.perf_counter()
        ours = theorem_path(system)
        t1 = time.perf_counter()
        base = check_pairs_components(system)
        t2 = time.perf_counter()
        rows.append(ScalingRow(n, total_cost(ours), total_cost(base),
                               (t1 - t0) * 1e3, (t2 - t1) * 1e3))
    return rows


def scaling_csv(rows) -> str:
    lines = ["n,theorem_cost,baseline_cost,theorem_ms,baseline_ms"]
    for r in rows:
        lines.append(f"{r.n},{r.theorem_cost},{r.baseline_cost},{r.theorem_ms:.3f},{r.baseline_ms:.3f}")
    return "\n".join(lines) + "\n"


def bench_backends(sizes=(50, 100, 200, 400), seed: int = 0, repeat: int = 3) -> list[dict]:
    """Time every available refinement backend on random τ-rich LTSs."""
    rng = random.Random(seed)
    rows = []
    for n in sizes:
        lts = random_lts(rng, ["a", "b", "c"], n, live=True, tau=True, extra=2.0, min_states=n)
        states, offsets, labels, targets = _encode(lts)
        row = {"states": len(states), "transitions": len(labels)}
        results = {}
        for name, fn in refine_mod.BACKENDS.items():
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                results[name] = fn(len(states), offsets, labels, targets, 0)
                best = min(best, time.perf_counter() - t0)
            row[f"{name}_ms"] = best * 1e3
        values = list(results.values())
        row["agree"] = all(v == values[0] for v in values)
        rows.append(row)
    return rows
