"""Dense linear algebra over F_p.

Row reduction runs in the compiled ``_ckernels`` extension when it is built;
otherwise (or with ``THILB_PURE=1``) the pure-Python ``_pykernels`` is used.
``BACKEND`` names the active implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("THILB_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"


def rref(rows, ncols: int, p: int, backend: str | None = None):
    impl = _select(backend)
    return impl.rref_mod_p(rows, ncols, p)


def rank(rows, ncols: int, p: int, backend: str | None = None) -> int:
    return len(rref(rows, ncols, p, backend)[1])


def _select(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _pykernels
    if backend == "cython":
        from . import _ckernels  # type: ignore[attr-defined]

        return _ckernels
    raise ValueError(f"unknown backend {backend!r}")


def nullspace(rows, ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : rows . v = 0} over F_p."""
    reduced, pivots = rref(rows, ncols, p)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = (-row[free]) % p
        basis.append(v)
    return basis


def span_basis(vectors, ncols: int, p: int) -> list[list[int]]:
    """Reduced echelon basis of the span of ``vectors``."""
    return rref(list(vectors), ncols, p)[0]


def intersect_spans(a, b, ncols: int, p: int) -> list[list[int]]:
    """Basis of span(a) ∩ span(b) (Zassenhaus)."""
    if not a or not b:
        return []
    rows = [list(v) + list(v) for v in a] + [list(v) + [0] * ncols for v in b]
    reduced, pivots = rref(rows, 2 * ncols, p)
    return [row[ncols:] for row, pc in zip(reduced, pivots) if pc >= ncols]


def in_span(v, basis, ncols: int, p: int) -> bool:
    if not any(x % p for x in v):
        return True
    return rank(list(basis) + [list(v)], ncols, p) == rank(basis, ncols, p)
