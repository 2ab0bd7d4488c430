"""Local rings R = P/J at the origin, with ideal arithmetic done on lifts to P."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg
from .fieldpoly import GREVLEX, MonomialOrder, PolyRing, Polynomial
from .groebner import INFINITE, Ideal, ideal_quotient, krull_dimension


class NotLocalError(ValueError):
    """The quotient has finite length but is not supported only at the origin."""


class PresentedRing:
    """R = F_p[variables] / J, viewed locally at the ideal of the variables."""

    def __init__(self, p: int, names: Sequence[str], defining: Iterable = (), order: MonomialOrder = GREVLEX):
        self.poly_ring = PolyRing(p, names, order)
        self.defining = Ideal(self.poly_ring, defining)
        if self.defining.is_unit():
            raise ValueError("defining ideal is the unit ideal")
        self.dim = krull_dimension(self.defining)

    @property
    def p(self) -> int:
        return self.poly_ring.p

    @property
    def names(self) -> tuple:
        return self.poly_ring.names

    def __repr__(self):
        rel = ", ".join(str(g) for g in self.defining.gens) or "0"
        return f"{self.poly_ring!r}/({rel})"

    def elem(self, f) -> Polynomial:
        return self.poly_ring(f)

    def reduce(self, f) -> Polynomial:
        return self.defining.normal_form(self.elem(f))

    def is_zero(self, f) -> bool:
        return not self.reduce(f)

    def ideal(self, gens: Iterable) -> "IdealInR":
        return IdealInR(self, gens)

    def maximal_ideal(self) -> "IdealInR":
        return IdealInR(self, self.poly_ring.gens())

    def unit_ideal(self) -> "IdealInR":
        return IdealInR(self, [self.poly_ring.one()])


def make_ring(spec: dict) -> PresentedRing:
    """Build a ring from ``{"p": ..., "variables": [...], "defining": [...]}``."""
    return PresentedRing(spec["p"], spec["variables"], spec.get("defining", ()))


class IdealInR:
    """Ideal of a presented ring, stored through its lift ``gens + J`` in P."""

    def __init__(self, ring: PresentedRing, gens: Iterable):
        self.ring = ring
        gl = []
        for g in gens:
            g = ring.elem(g)
            if g:
                gl.append(g)
        self.gens = tuple(gl)
        self.lifted = Ideal(ring.poly_ring, self.gens + ring.defining.gens)

    def __repr__(self):
        return f"IdealInR({[str(g) for g in self.gens]})"

    def __eq__(self, other):
        if not isinstance(other, IdealInR):
            return NotImplemented
        return self.ring is other.ring and self.lifted.same_ideal(other.lifted)

    __hash__ = None

    def contains(self, f) -> bool:
        return self.lifted.contains(self.ring.elem(f))

    def issubset(self, other: "IdealInR") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __add__(self, other: "IdealInR") -> "IdealInR":
        return IdealInR(self.ring, self.gens + other.gens)

    def __mul__(self, other: "IdealInR") -> "IdealInR":
        return IdealInR(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, n: int) -> "IdealInR":
        return ideal_power_in_R(self, n)

    def length(self):
        return length_in_R(self)

    def local_length(self) -> int:
        """ℓ(R/A), accepted only when R/A is supported at the origin alone."""
        n = length_in_R(self)
        if n is INFINITE:
            raise NotLocalError("R/A has infinite length")
        if not origin_supported(self):
            raise NotLocalError("R/A is not supported only at the origin; affine and local lengths differ")
        return n

    def generators_text(self) -> list[str]:
        return [str(self.ring.reduce(g)) for g in self.gens if not self.ring.is_zero(g)]


def length_in_R(A: IdealInR):
    return A.lifted.vs_length()


def origin_supported(A: IdealInR) -> bool:
    """True iff P/A.lifted is finite-dimensional and every variable is nilpotent there."""
    n = A.lifted.vs_length()
    if n is INFINITE:
        return False
    if n == 0:
        return True
    ring = A.ring.poly_ring
    for i in range(ring.nvars):
        e = [0] * ring.nvars
        e[i] = n
        if A.lifted.normal_form(ring.monomial(e)):
            return False
    return True


def is_sop(gens: Sequence, R: PresentedRing) -> bool:
    gens = [R.elem(g) for g in gens]
    if len(gens) != R.dim:
        return False
    A = IdealInR(R, gens)
    return A.lifted.vs_length() is not INFINITE and origin_supported(A)


@dataclass
class ParameterIdeal:
    """An ordered system of parameters x_1, ..., x_d of R."""

    ring: PresentedRing
    gens: tuple
    as_ideal: IdealInR = field(repr=False)

    @classmethod
    def make(cls, ring: PresentedRing, gens: Sequence) -> "ParameterIdeal":
        gl = tuple(ring.elem(g) for g in gens)
        if not is_sop(gl, ring):
            raise ValueError(
                f"{[str(g) for g in gl]} is not a system of parameters of {ring!r} (dim {ring.dim})"
            )
        return cls(ring, gl, IdealInR(ring, gl))

    @property
    def d(self) -> int:
        return len(self.gens)


def ideal_power_in_R(Q: IdealInR, n: int) -> IdealInR:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Q.ring.unit_ideal()
    prods = []
    for combo in itertools.combinations_with_replacement(Q.gens, n):
        f = Q.ring.poly_ring.one()
        for g in combo:
            f = f * g
        prods.append(f)
    return IdealInR(Q.ring, prods)


@dataclass
class SuperficialReport:
    holds: bool
    c: int
    n_max: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.holds


def _image_subspace(B: Ideal, gens, index) -> list[list[int]]:
    std = B.standard_monomials()
    vecs = []
    for g in gens:
        for m in std:
            v = B.coordinates(g.mul_monomial(m), index)
            if any(v):
                vecs.append(v)
    return linalg.span_basis(vecs, len(std), B.ring.p) if vecs else []


def is_superficial(x, I: IdealInR, c: int, n_max: int) -> SuperficialReport:
    """Check (I^{n+1} : x) ∩ I^c = I^n for c <= n <= n_max.

    Works inside P/(I^{n+1} + J), where both sides are subspaces containing
    I^n/I^{n+1}; equality is a dimension comparison.
    """
    R = I.ring
    x = R.elem(x)
    if not I.contains(x):
        raise ValueError(f"{x} is not in the ideal")
    if c < 1 or n_max < c:
        raise ValueError("need 1 <= c <= n_max")
    p = R.p
    Ic = ideal_power_in_R(I, c)
    failures = []
    for n in range(c, n_max + 1):
        big = ideal_power_in_R(I, n + 1).lifted
        if big.vs_length() is INFINITE:
            raise ValueError("superficiality check needs an m-primary ideal")
        std = big.standard_monomials()
        index = {m: i for i, m in enumerate(std)}
        L = len(std)
        cols = [big.coordinates(x.mul_monomial(m), index) for m in std]
        rows = [[cols[j][i] for j in range(L)] for i in range(L)]
        colon = linalg.nullspace(rows, L, p)
        img = _image_subspace(big, Ic.gens + R.defining.gens, index)
        lhs = len(linalg.intersect_spans(colon, img, L, p))
        rhs = L - ideal_power_in_R(I, n).lifted.vs_length()
        if lhs != rhs:
            failures.append({"n": n, "dim_lhs": lhs, "dim_rhs": rhs})
    return SuperficialReport(not failures, c, n_max, failures)


def quotient_in_R(A: IdealInR, g) -> IdealInR:
    """(A : g) in R."""
    lifted = ideal_quotient(A.lifted, A.ring.elem(g))
    return IdealInR(A.ring, lifted.gb())
