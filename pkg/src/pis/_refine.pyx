# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled branching-bisimulation signature refinement.

Mirrors :mod:`pis._refine_py` exactly, including block numbering.
"""

from libcpp.map cimport map as cmap
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort, unique
from cython.operator cimport dereference as deref


def refine(Py_ssize_t n, offsets, labels, targets, long long tau=0):
    cdef vector[long long] off, lab, tgt
    cdef Py_ssize_t i
    off.reserve(n + 1)
    for x in offsets:
        off.push_back(x)
    for x in labels:
        lab.push_back(x)
    for x in targets:
        tgt.push_back(x)

    cdef vector[long long] block, new_block, stamp
    block.assign(n, 0)
    new_block.assign(n, 0)
    stamp.assign(n, -1)
    cdef vector[long long] stack
    cdef vector[long long] sig
    cdef cmap[vector[long long], long long] table
    cdef cmap[vector[long long], long long].iterator it
    cdef long long count = 1 if n > 0 else 0
    cdef long long b, u, v, bv, l, nb
    cdef long long epoch = 0
    cdef Py_ssize_t s, k

    while True:
        table.clear()
        for s in range(n):
            b = block[s]
            sig.clear()
            sig.push_back(b)
            epoch += 1
            stamp[s] = epoch
            stack.clear()
            stack.push_back(s)
            while not stack.empty():
                u = stack.back()
                stack.pop_back()
                for k in range(off[u], off[u + 1]):
                    l = lab[k]
                    v = tgt[k]
                    bv = block[v]
                    if l == tau and bv == b:
                        if stamp[v] != epoch:
                            stamp[v] = epoch
                            stack.push_back(v)
                    else:
                        # (label, block) packed into one integer; block < n
                        sig.push_back(l * (n + 1) + bv)
            sort(sig.begin() + 1, sig.end())
            sig.erase(unique(sig.begin() + 1, sig.end()), sig.end())
            it = table.find(sig)
            if it == table.end():
                nb = <long long>table.size()
                table[sig] = nb
            else:
                nb = deref(it).second
            new_block[s] = nb
        block.swap(new_block)
        if <long long>table.size() == count:
            return [block[i] for i in range(n)]
        count = table.size()

