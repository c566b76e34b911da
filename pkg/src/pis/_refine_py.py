"""Pure-Python branching-bisimulation signature refinement.

Same contract as the compiled ``_refine`` extension.  States are
``0..n-1``; outgoing transitions of state ``s`` are
``labels[offsets[s]:offsets[s+1]]`` / ``targets[...]``; label ``tau`` is
the internal action.
"""


def refine(n, offsets, labels, targets, tau=0):
    """Return block ids of the coarsest branching bisimulation.

    Blocks are numbered ``0..k-1`` in order of their first state.
    """
    block = [0] * n
    count = 1 if n else 0
    stamp = [-1] * n
    epoch = 0
    while True:
        table = {}
        new_block = [0] * n
        for s in range(n):
            b = block[s]
            sig = set()
            epoch += 1
            stamp[s] = epoch
            stack = [s]
            # inert tau-closure: tau steps that stay inside the current block
            while stack:
                u = stack.pop()
                for k in range(offsets[u], offsets[u + 1]):
                    lab = labels[k]
                    v = targets[k]
                    bv = block[v]
                    if lab == tau and bv == b:
                        if stamp[v] != epoch:
                            stamp[v] = epoch
                            stack.append(v)
                    else:
                        sig.add((lab, bv))
            key = (b, tuple(sorted(sig)))
            nb = table.get(key)
            if nb is None:
                nb = table[key] = len(table)
            new_block[s] = nb
        block = new_block
        if len(table) == count:
            return block
        count = len(table)
