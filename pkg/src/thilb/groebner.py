"""Buchberger's algorithm over F_p and the ideal-arithmetic toolbox built on it."""

from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass
from operator import add, le, sub
from typing import Iterable, Sequence

from . import linalg
from .fieldpoly import GREVLEX, MonomialOrder, PolyRing, Polynomial, block, frobenius_pow


class BudgetExceeded(RuntimeError):
    """A computation hit the configured pair or degree cap."""


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


@dataclass
class Budget:
    max_pairs: int = 2_000_000
    max_degree: int = 1_000_000
    pairs_used: int = 0

    @classmethod
    def from_env(cls) -> "Budget":
        raw = os.environ.get("THILB_BUDGET", "").strip()
        if not raw:
            return cls()
        parts = [x.strip() for x in raw.split(",")]
        try:
            b = cls(max_pairs=int(parts[0]))
            if len(parts) > 1 and parts[1]:
                b.max_degree = int(parts[1])
        except ValueError:
            raise ValueError(f"THILB_BUDGET must be 'PAIRS[,DEGREE]', got {raw!r}") from None
        return b

    def charge(self, n: int = 1):
        self.pairs_used += n
        if self.pairs_used > self.max_pairs:
            raise BudgetExceeded(f"critical-pair budget of {self.max_pairs} exceeded")

    def check_degree(self, deg: int):
        if deg > self.max_degree:
            raise BudgetExceeded(f"degree budget of {self.max_degree} exceeded (degree {deg})")


_default_budget: Budget | None = None


def default_budget() -> Budget:
    global _default_budget
    if _default_budget is None:
        _default_budget = Budget.from_env()
    return _default_budget


def set_default_budget(budget: Budget | None) -> None:
    global _default_budget
    _default_budget = budget


# ---------------------------------------------------------------------------
# core reduction on raw term dicts


def _neg_key_fn(order: MonomialOrder):
    if order.kind == "grevlex":
        return lambda m: (-sum(m),) + m[::-1]
    key = order.key
    return lambda m: tuple(-x for x in key(m))


def _divides(a, b):
    return all(map(le, a, b))


def _reduce(f: dict, basis, nkey, p: int, full: bool = True) -> dict:
    """Normal form of the term dict ``f`` by ``basis`` = list of (lm, tail) with monic leaders.

    ``tail`` is a list of (monomial, coefficient) pairs.  With ``full=False``
    only the leading term is reduced (stops at the first irreducible term).
    """
    f = dict(f)
    rem = {}
    heap = [(nkey(m), m) for m in f]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    get = f.get
    while heap:
        _, m = pop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        for lm, tail in basis:
            if all(map(le, lm, m)):
                q = tuple(map(sub, m, lm))
                for tm, tc in tail:
                    mm = tuple(map(add, tm, q))
                    v = get(mm)
                    if v is None:
                        f[mm] = (-c * tc) % p
                        push(heap, (nkey(mm), mm))
                    else:
                        v = (v - c * tc) % p
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic(f: dict, lm, p: int) -> dict:
    inv = pow(f[lm], p - 2, p)
    if inv == 1:
        return f
    return {m: c * inv % p for m, c in f.items()}


def _as_basis_entry(f: dict, key):
    items = sorted(f.items(), key=lambda t: key(t[0]), reverse=True)
    return items[0][0], items[1:]


def _lcm(a, b):
    return tuple(map(max, a, b))


def _disjoint(a, b):
    return not any(x and y for x, y in zip(a, b))


def buchberger(polys: Sequence[dict], order: MonomialOrder, p: int, budget: Budget | None = None) -> list[dict]:
    """Reduced Gröbner basis (monic term dicts, sorted by leading monomial) of ``polys``."""
    budget = budget or default_budget()
    key = order.key
    nkey = _neg_key_fn(order)

    # inter-reduce the input first; cheap and keeps pair counts small
    work = [dict(f) for f in polys if f]
    if not work:
        return []
    polys_all: list[dict] = []
    lms: list[tuple] = []
    entries: list = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def lm_of(f):
        return max(f, key=key)

    def add_poly(f):
        lm = lm_of(f)
        f = _monic(f, lm, p)
        budget.check_degree(sum(lm))
        polys_all.append(f)
        lms.append(lm)
        entries.append(_as_basis_entry(f, key))
        return len(polys_all) - 1

    def current_basis():
        return [entries[i] for i in G]

    def update(h):
        nonlocal G, B
        lh = lms[h]
        C = [g for g in G]
        D = []
        # Gebauer-Möller criteria
        while C:
            g1 = C.pop(0)
            l1 = _lcm(lms[g1], lh)
            if _disjoint(lms[g1], lh):
                D.append(g1)
                continue
            redundant = False
            for g2 in itertools.chain(C, D):
                l2 = _lcm(lms[g2], lh)
                if _divides(l2, l1):
                    redundant = True
                    break
            if not redundant:
                D.append(g1)
        E = [(g, h) for g in D if not _disjoint(lms[g], lh)]
        newB = []
        for g1, g2 in B:
            l12 = _lcm(lms[g1], lms[g2])
            if (
                not _divides(lh, l12)
                or _lcm(lms[g1], lh) == l12
                or _lcm(lms[g2], lh) == l12
            ):
                newB.append((g1, g2))
        B = newB + E
        G = [g for g in G if not _divides(lh, lms[g])] + [h]

    work.sort(key=lambda f: key(lm_of(f)))
    for f in work:
        r = _reduce(f, current_basis(), nkey, p)
        if r:
            if all(v == 0 for v in lm_of(r)):
                return [{tuple(0 for _ in lm_of(r)): 1}]
            update(add_poly(r))

    while B:
        # normal strategy: smallest lcm first, ties by index for determinism
        best = min(range(len(B)), key=lambda i: (key(_lcm(lms[B[i][0]], lms[B[i][1]])), B[i]))
        g1, g2 = B.pop(best)
        budget.charge()
        l = _lcm(lms[g1], lms[g2])
        f1, f2 = polys_all[g1], polys_all[g2]
        q1 = tuple(map(sub, l, lms[g1]))
        q2 = tuple(map(sub, l, lms[g2]))
        s = {}
        for m, c in f1.items():
            s[tuple(map(add, m, q1))] = c
        for m, c in f2.items():
            mm = tuple(map(add, m, q2))
            v = (s.get(mm, 0) - c) % p
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        if not s:
            continue
        r = _reduce(s, current_basis(), nkey, p)
        if r:
            lm = lm_of(r)
            if not any(lm):
                return [{lm: 1}]
            update(add_poly(r))

    # minimal basis, then tail-reduce each element against the others
    minimal = [i for i in G if not any(j != i and _divides(lms[j], lms[i]) for j in G)]
    minimal.sort(key=lambda i: key(lms[i]))
    out = []
    for i in minimal:
        others = [entries[j] for j in minimal if j != i]
        lm = lms[i]
        tail = {m: c for m, c in polys_all[i].items() if m != lm}
        red = _reduce(tail, others, nkey, p) if tail else {}
        red[lm] = 1
        out.append(red)
    return out


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal of a polynomial ring with a lazily cached reduced Gröbner basis."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial | str | int] = (), order: MonomialOrder | None = None):
        self.ring = ring
        self.order = order or ring.order
        gl = []
        for g in gens:
            g = ring(g)
            if g:
                gl.append(g)
        self.gens = tuple(gl)
        self._gb: list[Polynomial] | None = None
        self._entries = None
        self._std = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]}, {self.ring!r}, {self.order!r})"

    # -- Gröbner data
    def gb(self, budget: Budget | None = None) -> list[Polynomial]:
        if self._gb is None:
            raw = buchberger([g.terms for g in self.gens], self.order, self.ring.p, budget)
            self._gb = [Polynomial(self.ring, f, _trusted=True) for f in raw]
        return self._gb

    def _basis_entries(self):
        if self._entries is None:
            key = self.order.key
            self._entries = [_as_basis_entry(g.terms, key) for g in self.gb()]
        return self._entries

    def leading_monomials(self) -> list[tuple]:
        return [e[0] for e in self._basis_entries()]

    def normal_form(self, f: Polynomial) -> Polynomial:
        f = self.ring(f)
        if not f:
            return f
        r = _reduce(f.terms, self._basis_entries(), _neg_key_fn(self.order), self.ring.p)
        return Polynomial(self.ring, r, _trusted=True)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def is_unit(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and not any(gb[0].leading_monomial(self.order))

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def same_ideal(self, other: "Ideal") -> bool:
        if self.ring != other.ring:
            raise ValueError("signature mismatch")
        if self.order == other.order:
            return [g.terms for g in self.gb()] == [g.terms for g in other.gb()]
        return self.issubset(other) and other.issubset(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.same_ideal(other)

    __hash__ = None

    def with_order(self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.ring, self.gens, order)

    # -- standard monomials
    def is_zero_dimensional(self) -> bool:
        lms = self.leading_monomials()
        n = self.ring.nvars
        pure = set()
        for m in lms:
            nz = [i for i, e in enumerate(m) if e]
            if len(nz) == 1:
                pure.add(nz[0])
            elif not nz:
                return True
        return len(pure) == n

    def standard_monomials(self) -> list[tuple]:
        """Monomials outside the leading-term ideal, ascending in the order (finite case only)."""
        if self._std is None:
            if not self.is_zero_dimensional():
                raise ValueError("ideal is not zero-dimensional; infinitely many standard monomials")
            lms = self.leading_monomials()
            n = self.ring.nvars
            if any(not any(m) for m in lms):
                self._std = []
                return self._std
            seen = {(0,) * n}
            stack = [(0,) * n]
            while stack:
                m = stack.pop()
                for i in range(n):
                    mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                    if mm in seen:
                        continue
                    if any(all(map(le, l, mm)) for l in lms):
                        continue
                    seen.add(mm)
                    stack.append(mm)
            self._std = sorted(seen, key=self.order.key)
        return self._std

    def vs_length(self):
        if self.is_unit():
            return 0
        if not self.is_zero_dimensional():
            return INFINITE
        return len(self.standard_monomials())

    def coordinates(self, f: Polynomial, index: dict | None = None) -> list[int]:
        """Coefficient vector of normal_form(f) on the standard monomial basis."""
        if index is None:
            index = {m: i for i, m in enumerate(self.standard_monomials())}
        v = [0] * len(index)
        for m, c in self.normal_form(f).terms.items():
            v[index[m]] = c
        return v

    def from_coordinates(self, v: Sequence[int]) -> Polynomial:
        std = self.standard_monomials()
        return Polynomial(self.ring, {std[i]: c for i, c in enumerate(v) if c % self.ring.p}, _trusted=False)


def _check_same(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise ValueError(f"signature mismatch: {I.ring!r} vs {J.ring!r}")


def groebner_basis(I: Ideal) -> list[Polynomial]:
    return I.gb()


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    return I.normal_form(f)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    return Ideal(I.ring, I.gens + J.gens, I.order)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens], I.order)


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Ideal(I.ring, [I.ring.one()], I.order)
    gens = list(I.gens)
    prods = {}
    for combo in itertools.combinations_with_replacement(range(len(gens)), n):
        f = I.ring.one()
        for i in combo:
            f = f * gens[i]
        prods[combo] = f
    return Ideal(I.ring, prods.values(), I.order)


def _extend_ring(ring: PolyRing, prefix: Sequence[str]) -> PolyRing:
    names = list(prefix)
    taken = set(ring.names)
    fixed = []
    for nm in names:
        while nm in taken:
            nm = nm + "_"
        taken.add(nm)
        fixed.append(nm)
    return PolyRing(ring.field, fixed + list(ring.names), block(len(fixed)))


def _lift(f: Polynomial, big: PolyRing, k: int) -> Polynomial:
    pad = (0,) * k
    return Polynomial(big, {pad + m: c for m, c in f.terms.items()}, _trusted=True)


def _drop(f: Polynomial, small: PolyRing, k: int) -> Polynomial:
    return Polynomial(small, {m[k:]: c for m, c in f.terms.items()}, _trusted=True)


def eliminate(I: Ideal, k: int, target: PolyRing | None = None) -> Ideal:
    """Generators of I ∩ F_p[x_{k+1}, ...], via a block(k) Gröbner basis.

    With ``target`` the result is returned in that ring (which must carry the
    last n-k variables); otherwise it stays in I's ring.
    """
    if k == 0:
        return I if target is None else Ideal(target, [_drop(g, target, 0) for g in I.gens])
    elim_ring = I.ring.with_order(block(k))
    gb = Ideal(elim_ring, [Polynomial(elim_ring, g.terms, _trusted=True) for g in I.gens]).gb()
    kept = [g for g in gb if all(not any(m[:k]) for m in g.terms)]
    if target is not None:
        if target.nvars != I.ring.nvars - k:
            raise ValueError("target ring has the wrong number of variables")
        return Ideal(target, [_drop(g, target, k) for g in kept])
    return Ideal(I.ring, [Polynomial(I.ring, g.terms, _trusted=True) for g in kept], I.order)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1 - t)·J."""
    _check_same(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [], I.order)
    big = _extend_ring(ring, ["_t"])
    t = big.var(0)
    gens = [t * _lift(f, big, 1) for f in I.gens] + [(1 - t) * _lift(g, big, 1) for g in J.gens]
    res = eliminate(Ideal(big, gens), 1, target=ring)
    return Ideal(ring, res.gens, I.order)


def divide_exact(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    """f / g, raising ValueError when g does not divide f."""
    order = order or f.ring.order
    key = order.key
    p = f.ring.p
    lm_g = g.leading_monomial(order)
    inv = pow(g.terms[lm_g], p - 2, p)
    rest = dict(f.terms)
    q = {}
    while rest:
        lm = max(rest, key=key)
        if not _divides(lm_g, lm):
            raise ValueError("division is not exact")
        c = rest[lm] * inv % p
        mono = tuple(map(sub, lm, lm_g))
        q[mono] = c
        for m, a in g.terms.items():
            mm = tuple(map(add, m, mono))
            v = (rest.get(mm, 0) - c * a) % p
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return Polynomial(f.ring, q, _trusted=True)


def _quotient_zero_dim(I: Ideal, g: Polynomial) -> Ideal:
    std = I.standard_monomials()
    index = {m: i for i, m in enumerate(std)}
    L = len(std)
    cols = [I.coordinates(g.mul_monomial(m), index) for m in std]
    rows = [[cols[j][i] for j in range(L)] for i in range(L)]
    ker = linalg.nullspace(rows, L, I.ring.p)
    extra = [I.from_coordinates(v) for v in ker]
    return Ideal(I.ring, list(I.gb()) + extra, I.order)


def ideal_quotient(I: Ideal, g: Polynomial, saturate: bool = False, method: str = "auto") -> Ideal:
    """(I : g), or (I : g^∞) when ``saturate`` is set.

    ``method`` is ``"intersect"`` (divide I ∩ (g) by g), ``"linear"``
    (kernel of multiplication by g on P/I; zero-dimensional I only) or
    ``"auto"``.
    """
    g = I.ring(g)
    if not g:
        raise ValueError("cannot take the quotient by 0")

    def once(A: Ideal) -> Ideal:
        use_linear = method == "linear" or (method == "auto" and A.is_zero_dimensional())
        if use_linear:
            return _quotient_zero_dim(A, g)
        inter = ideal_intersect(A, Ideal(A.ring, [g], A.order))
        return Ideal(A.ring, [divide_exact(h, g, A.order) for h in inter.gb()], A.order)

    current = once(I)
    if not saturate:
        return current
    while True:
        nxt = once(current)
        if nxt.same_ideal(current):
            return current
        current = nxt


def ideal_quotient_by_ideal(I: Ideal, K: Ideal, saturate: bool = False) -> Ideal:
    result = None
    for g in K.gens:
        Q = ideal_quotient(I, g, saturate=saturate)
        result = Q if result is None else ideal_intersect(result, Q)
    return result if result is not None else Ideal(I.ring, [I.ring.one()], I.order)


def saturation(I: Ideal, K: Ideal | None = None) -> Ideal:
    """(I : K^∞); K defaults to the ideal of all variables."""
    if K is None:
        K = Ideal(I.ring, I.ring.gens(), I.order)
    current = I
    while True:
        nxt = ideal_quotient_by_ideal(current, K)
        if nxt.same_ideal(current):
            return current
        current = nxt


def bracket_power(I: Ideal, e: int) -> Ideal:
    """I^[p^e], generated by the p^e-th powers of the given generators."""
    if e < 1:
        raise ValueError("e must be at least 1")
    return Ideal(I.ring, [frobenius_pow(g, e) for g in I.gens], I.order)


def vs_length(I: Ideal):
    return I.vs_length()


def krull_dimension(I: Ideal) -> int:
    """Largest set of variables independent modulo the leading-term ideal."""
    if I.is_unit():
        raise ValueError("the unit ideal has no dimension")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in I.leading_monomials()]
    n = I.ring.nvars
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def graded_hilbert_function(I: Ideal, n: int) -> int:
    """dim (P/I)_n for homogeneous I."""
    if not all(g.is_homogeneous() for g in I.gens):
        raise ValueError("graded Hilbert function needs homogeneous generators")
    if I.order.kind != "grevlex":
        I = I.with_order(GREVLEX)
    lms = I.leading_monomials()
    count = 0
    for m in monomials_of_degree(I.ring.nvars, n):
        if not any(all(map(le, l, m)) for l in lms):
            count += 1
    return count


def monomials_of_degree(nvars: int, d: int):
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - a):
            yield (a,) + rest


def max_gb_degree(I: Ideal) -> int:
    return max((g.total_degree() for g in I.gb()), default=0)
