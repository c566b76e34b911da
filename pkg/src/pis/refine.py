"""Backend selection for the partition-refinement kernel.

The compiled extension is used when it was built; otherwise the
pure-Python twin is used.  Both return identical block numberings.
"""

from ._refine_py import refine as refine_python

try:
    from ._refine import refine as refine_compiled
except ImportError:  # extension not built
    refine_compiled = None

BACKENDS = {"python": refine_python}
if refine_compiled is not None:
    BACKENDS["compiled"] = refine_compiled

_active = "compiled" if refine_compiled is not None else "python"


def backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    _active = name


def refine(n, offsets, labels, targets, tau=0):
    return BACKENDS[_active](n, offsets, labels, targets, tau)
