"""Closure operators on parameter ideals of presented rings.

Tight closure cannot be decided by a finite computation; the candidate here
intersects the Frobenius kernels for e = 1..E and is a semidecision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .fieldpoly import Polynomial, block, frobenius_pow
from .groebner import BudgetExceeded, INFINITE, Ideal, _extend_ring, _lift, eliminate, ideal_quotient
from .quotient import IdealInR, ParameterIdeal, PresentedRing, ideal_power_in_R


class ChainError(RuntimeError):
    """The colon chain defining the limit closure failed to ascend."""


class InvalidHomomorphism(ValueError):
    pass


# ---------------------------------------------------------------------------
# limit closure


@dataclass
class LimitClosure:
    ideal: IdealInR
    stable_at: int
    chain_lengths: list


def limit_closure_details(Q: ParameterIdeal, max_n: int = 40) -> LimitClosure:
    R = Q.ring
    P = R.poly_ring
    prod = P.one()
    for x in Q.gens:
        prod = prod * x
    prev = None
    history = []
    lengths = []
    for n in range(max_n + 1):
        base = Ideal(P, [x ** (n + 1) for x in Q.gens] + list(R.defining.gens))
        Ln = ideal_quotient(base, prod**n) if n else base
        lengths.append(Ln.vs_length())
        if prev is not None and not prev.issubset(Ln):
            raise ChainError(f"L_{n - 1} is not contained in L_{n}")
        history.append(Ln)
        if len(history) >= 3 and history[-3].same_ideal(history[-2]) and history[-2].same_ideal(history[-1]):
            stable = history[-3]
            return LimitClosure(IdealInR(R, stable.gb()), n - 2, lengths)
        prev = Ln
    raise BudgetExceeded(f"limit closure did not stabilise within n <= {max_n}")


def limit_closure(Q: ParameterIdeal, max_n: int = 40) -> IdealInR:
    """Q^lim = union of ((x_1^{n+1}, ..., x_d^{n+1}) + J) : (x_1...x_d)^n."""
    return limit_closure_details(Q, max_n).ideal


def generator_independence_check(Q: ParameterIdeal, alt_gens: Sequence) -> bool:
    alt = ParameterIdeal.make(Q.ring, alt_gens)
    if not Q.as_ideal.lifted.same_ideal(alt.as_ideal.lifted):
        raise ValueError("the two generator lists define different ideals")
    return limit_closure(Q) == limit_closure(alt)


# ---------------------------------------------------------------------------
# Frobenius kernels and the tight-closure candidate


def _bracket_target(A: IdealInR, e: int) -> Ideal:
    R = A.ring
    return Ideal(R.poly_ring, [frobenius_pow(g, e) for g in A.gens] + list(R.defining.gens))


def frobenius_map(A: IdealInR, c, e: int, v) -> Polynomial:
    """normal_form(c * v^(p^e)) modulo A^[p^e] + J."""
    R = A.ring
    c, v = R.elem(c), R.elem(v)
    return _bracket_target(A, e).normal_form(c * frobenius_pow(v, e))


@dataclass
class FrobeniusSystem:
    """Linear equations (rows) on the standard-monomial coordinates of P/A whose
    solutions are the v with c·v^q in A^[q] + J."""

    basis: list
    rows: list


def frobenius_system(A: IdealInR, c, e: int) -> FrobeniusSystem:
    R = A.ring
    c = R.elem(c)
    if R.is_zero(c):
        raise ValueError("test element reduces to 0 in R")
    if A.lifted.vs_length() is INFINITE:
        raise ValueError("Frobenius kernel needs an ideal of finite colength")
    std = A.lifted.standard_monomials()
    target = _bracket_target(A, e)
    q = R.p**e
    cols = []
    mon_index: dict = {}
    for m in std:
        mq = tuple(x * q for x in m)
        nf = target.normal_form(c.mul_monomial(mq))
        for mono in nf.terms:
            mon_index.setdefault(mono, len(mon_index))
        cols.append(nf.terms)
    rows = [[0] * len(std) for _ in range(len(mon_index))]
    for j, terms in enumerate(cols):
        for mono, coef in terms.items():
            rows[mon_index[mono]][j] = coef
    return FrobeniusSystem(std, rows)


def frobenius_kernel(A: IdealInR, c, e: int) -> list[Polynomial]:
    """Basis of {v in span(std monomials of A) : c·v^(p^e) in A^[p^e] + J}."""
    sysm = frobenius_system(A, c, e)
    P = A.ring.poly_ring
    ker = linalg.nullspace(sysm.rows, len(sysm.basis), A.ring.p) if sysm.rows else _identity(len(sysm.basis))
    return [_combine(P, sysm.basis, v) for v in ker]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _combine(P, basis, v) -> Polynomial:
    return Polynomial(P, {basis[i]: a for i, a in enumerate(v) if a})


@dataclass
class TightClosureResult:
    closure: IdealInR
    test_element: Polynomial
    e_range: tuple
    kernel_dims: list
    cumulative_dims: list
    stabilized: bool
    contains_limit: bool | None = None
    semidecision: bool = True
    notes: list = field(default_factory=list)

    def length(self) -> int:
        return self.closure.local_length()


def tight_closure_candidate(A, c, E: int = 4) -> TightClosureResult:
    """A + ∩_{e=1..E} K_e; stabilized when the last two intersections agree.

    ``A`` is a ParameterIdeal or any m-primary IdealInR (powers of Q).
    """
    if E < 2:
        raise ValueError("exponent bound E must be at least 2")
    Q = A
    A = A.as_ideal if isinstance(A, ParameterIdeal) else A
    R = A.ring
    p = R.p
    stacked: list = []
    kernel_dims = []
    cumulative = []
    basis = None
    for e in range(1, E + 1):
        sysm = frobenius_system(A, c, e)
        basis = sysm.basis
        L = len(basis)
        kernel_dims.append(L - linalg.rank(sysm.rows, L, p) if sysm.rows else L)
        stacked.extend(sysm.rows)
        cumulative.append(L - linalg.rank(stacked, L, p) if stacked else L)
    L = len(basis)
    ker = linalg.nullspace(stacked, L, p) if stacked else _identity(L)
    P = R.poly_ring
    extra = [_combine(P, basis, v) for v in ker]
    closure = IdealInR(R, list(A.gens) + extra)
    res = TightClosureResult(
        closure=closure,
        test_element=R.elem(c),
        e_range=(1, E),
        kernel_dims=kernel_dims,
        cumulative_dims=cumulative,
        stabilized=cumulative[-1] == cumulative[-2],
    )
    if isinstance(Q, ParameterIdeal):
        res.contains_limit = limit_closure(Q).issubset(closure)
    return res


def frobenius_closure_candidate(A, E: int = 4) -> TightClosureResult:
    return tight_closure_candidate(A, 1, E)


# ---------------------------------------------------------------------------
# contraction from a module-finite extension


@dataclass
class ExtensionData:
    """R -> S given by images of R's variables (presented kind), or the
    saturation of a semigroup ring (semigroup kind)."""

    kind: str
    target: PresentedRing | None = None
    images: tuple = ()
    semigroup: object = None
    f_regular: bool = False

    def validate(self, R: PresentedRing) -> None:
        if self.kind != "presented":
            return
        S = self.target
        if len(self.images) != len(R.names):
            raise InvalidHomomorphism("need one image per variable of R")
        for g in R.defining.gens:
            img = apply_map(g, self.images, S)
            if not S.defining.contains(img):
                raise InvalidHomomorphism(f"defining relation {g} does not map into the ideal of S")


def apply_map(f: Polynomial, images, S: PresentedRing) -> Polynomial:
    imgs = [S.elem(v) for v in images]
    return f.substitute(dict(enumerate(imgs)), target=S.poly_ring)


def identity_extension(R: PresentedRing) -> ExtensionData:
    return ExtensionData("presented", R, tuple(R.poly_ring.gens()))


def contracted_closure(Q, n: int, ext: ExtensionData) -> IdealInR:
    """Q^n S ∩ R, by eliminating S's variables from the graph of R -> S."""
    if ext.kind != "presented":
        raise ValueError("semigroup extensions are handled by thilb.semigroup")
    Qi = Q.as_ideal if isinstance(Q, ParameterIdeal) else Q
    R = Qi.ring
    ext.validate(R)
    S = ext.target
    kS = len(S.names)
    big = _extend_ring(R.poly_ring, list(S.names))
    big = big.with_order(block(kS))
    Pr = R.poly_ring

    def from_S(f):
        return Polynomial(big, {m + (0,) * Pr.nvars: c for m, c in f.terms.items()}, _trusted=True)

    gens = [from_S(g) for g in S.defining.gens]
    power = ideal_power_in_R(Qi, n)
    gens += [from_S(apply_map(g, ext.images, S)) for g in power.gens]
    for i, img in enumerate(ext.images):
        gens.append(_lift(Pr.var(i), big, kS) - from_S(S.elem(img)))
    elim = eliminate(Ideal(big, gens), kS, target=Pr)
    return IdealInR(R, elim.gens)
