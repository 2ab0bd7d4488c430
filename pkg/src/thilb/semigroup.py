"""Affine semigroup rings F_p[S] for finitely generated S ⊆ N².

Elements of S index the monomials X^a Y^b of the ring.  The saturation S̄
(cone ∩ lattice) plays the role of the module-finite extension, and the gap
set S̄ \\ S carries the module structure used for H¹.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .fieldpoly import PolyRing
from .groebner import Ideal, _extend_ring, _lift, eliminate
from .quotient import PresentedRing

Vec = tuple


class InfiniteGapSet(ValueError):
    """S̄ \\ S could not be certified finite."""


class NotCofinite(ValueError):
    """A monomial ideal whose complement in S is infinite."""


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _scale(k, a):
    return (k * a[0], k * a[1])


def _det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _primitive(v):
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


def _hnf_basis(vectors):
    """Upper-triangular basis ((a, b), (0, d)) of the Z-span of 2-vectors (rank 2)."""
    rows = [list(v) for v in vectors if v != (0, 0)]
    # column 0: gcd reduction
    while sum(1 for r in rows if r[0] != 0) > 1:
        rows.sort(key=lambda r: (r[0] == 0, abs(r[0])))
        piv = rows[0]
        for r in rows[1:]:
            if r[0]:
                k = r[0] // piv[0]
                r[0] -= k * piv[0]
                r[1] -= k * piv[1]
        rows = [r for r in rows if r != [0, 0]]
    rows.sort(key=lambda r: r[0] == 0)
    first = rows[0]
    if first[0] < 0:
        first = [-first[0], -first[1]]
    d = 0
    for r in rows[1:]:
        d = gcd(d, r[1])
    if d:
        first = [first[0], first[1] % d]
    return (first[0], first[1]), (0, d)


@dataclass
class GapCertificate:
    """Per residue class p mod Z v1 + Z v2: least a, b with p + a·v1, p + b·v2 in S."""

    v1: Vec
    v2: Vec
    residues: dict
    box_bound: int

    def as_dict(self):
        return {
            "v1": list(self.v1),
            "v2": list(self.v2),
            "residues": {f"{k[0]},{k[1]}": list(v) for k, v in sorted(self.residues.items())},
        }


class SemigroupRing:
    """The semigroup ring F_p[S] of S = N-span of ``gens`` ⊆ N²."""

    def __init__(self, gens: Iterable[Sequence[int]], p: int = 2, search_bound: int = 256):
        gl = []
        for g in gens:
            g = (int(g[0]), int(g[1]))
            if g[0] < 0 or g[1] < 0 or g == (0, 0):
                raise ValueError(f"generator {g} must be a nonzero vector in N^2")
            if g not in gl:
                gl.append(g)
        if not gl:
            raise ValueError("need at least one generator")
        self.gens = tuple(gl)
        self.p = p
        self.search_bound = search_bound
        self._member_cache: dict = {(0, 0): True}
        dirs = {_primitive(g) for g in self.gens}
        self.rank = 1 if len(dirs) == 1 else 2
        if self.rank == 1:
            self._init_rank1()
        else:
            self._init_rank2()

    def __repr__(self):
        return f"SemigroupRing({list(self.gens)})"

    # -- structure
    def _init_rank1(self):
        w = _primitive(self.gens[0])
        mults = [max(g[0], g[1]) // max(w) for g in self.gens]
        m = 0
        for x in mults:
            m = gcd(m, x)
        self.direction = w
        self.lattice_step = m
        self.ray_dirs = (w, w)
        reduced = sorted({x // m for x in mults})
        self._rank1_min = reduced[0]
        # gaps of the numerical semigroup generated by `reduced`
        bound = reduced[0] * reduced[-1] + 1
        reach = [False] * (bound + 1)
        reach[0] = True
        for t in range(1, bound + 1):
            reach[t] = any(t >= r and reach[t - r] for r in reduced)
        gaps = [t for t in range(bound + 1) if not reach[t]]
        self.gaps = frozenset(_scale(t * m, w) for t in gaps)
        self.certificate = GapCertificate(
            _scale(m, w), _scale(m, w), {(0, 0): (0, 0)}, bound
        )
        self.v1 = self.v2 = _scale(m * reduced[0], w)

    def _init_rank2(self):
        # extremal rays: smallest and largest angle
        def angle_key(g):
            return Fraction(g[1], g[0] + g[1])

        ordered = sorted(self.gens, key=angle_key)
        r1, r2 = _primitive(ordered[0]), _primitive(ordered[-1])
        self.ray_dirs = (r1, r2)
        self.basis = _hnf_basis(self.gens)
        # smallest generators of S on each ray
        on1 = [g for g in self.gens if _det(r1, g) == 0]
        on2 = [g for g in self.gens if _det(r2, g) == 0]
        self.v1 = min(on1, key=lambda g: g[0] + g[1])
        self.v2 = min(on2, key=lambda g: g[0] + g[1])
        self._compute_gaps()

    def in_lattice(self, v) -> bool:
        if self.rank == 1:
            w, m = self.direction, self.lattice_step
            if _det(w, v) != 0:
                return False
            t = v[0] // w[0] if w[0] else v[1] // w[1]
            return _scale(t, w) == tuple(v) and t % m == 0
        (a, b), (_, d) = self.basis
        if v[0] % a:
            return False
        s = v[0] // a
        rest = v[1] - s * b
        return rest % d == 0 if d else rest == 0

    def phi(self, v):
        """Coordinates measuring distance from the two rays (both >= 0 on the cone)."""
        r1, r2 = self.ray_dirs
        return _det(r1, v), -_det(r2, v)

    def in_saturation(self, v) -> bool:
        v = tuple(v)
        if self.rank == 1:
            w = self.direction
            return self.in_lattice(v) and v[0] >= 0 and v[1] >= 0 and _det(w, v) == 0
        a, b = self.phi(v)
        return a >= 0 and b >= 0 and self.in_lattice(v)

    def _member_search(self, v) -> bool:
        """Bounded dynamic programming: is v an N-combination of the generators?"""
        cache = self._member_cache
        if v in cache:
            return cache[v]
        stack = [v]
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            if u[0] < 0 or u[1] < 0:
                cache[u] = False
                stack.pop()
                continue
            pending = False
            found = False
            for g in self.gens:
                w = (u[0] - g[0], u[1] - g[1])
                if w[0] < 0 or w[1] < 0:
                    continue
                r = cache.get(w)
                if r is None:
                    stack.append(w)
                    pending = True
                elif r:
                    found = True
                    break
            if found:
                cache[u] = True
                stack.pop()
            elif not pending:
                cache[u] = False
                stack.pop()
        return cache[v]

    def _residues(self):
        """Lattice points p = α v1 + β v2 with 0 <= α, β < 1."""
        v1, v2 = self.v1, self.v2
        D = _det(v1, v2)
        corners = [(0, 0), v1, v2, _add(v1, v2)]
        xs = [c[0] for c in corners]
        ys = [c[1] for c in corners]
        out = []
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                v = (x, y)
                al = Fraction(_det(v, v2), D)
                be = Fraction(_det(v1, v), D)
                if 0 <= al < 1 and 0 <= be < 1 and self.in_lattice(v):
                    out.append(v)
        return out

    def _compute_gaps(self):
        v1, v2 = self.v1, self.v2
        residues = {}
        gaps = set()
        for p0 in self._residues():
            a = next((k for k in range(self.search_bound) if self._member_search(_add(p0, _scale(k, v1)))), None)
            b = next((k for k in range(self.search_bound) if self._member_search(_add(p0, _scale(k, v2)))), None)
            if a is None or b is None:
                raise InfiniteGapSet(
                    f"residue class {p0} has no element of S on the ray direction within "
                    f"{self.search_bound} steps; S̄ \\ S is not certified finite"
                )
            residues[p0] = (a, b)
            for k1 in range(a):
                for k2 in range(b):
                    v = _add(p0, _add(_scale(k1, v1), _scale(k2, v2)))
                    if not self._member_search(v):
                        gaps.add(v)
        self.gaps = frozenset(gaps)
        self.certificate = GapCertificate(v1, v2, residues, self.search_bound)

    def residue_box(self, v):
        """(p, k1, k2) with v = p + k1 v1 + k2 v2 (v in the lattice cone)."""
        v1, v2 = self.v1, self.v2
        D = _det(v1, v2)
        k1 = _det(v, v2) // D
        k2 = _det(v1, v) // D
        p0 = _sub(v, _add(_scale(k1, v1), _scale(k2, v2)))
        return p0, k1, k2

    # -- membership
    def member(self, v) -> bool:
        v = (v[0], v[1])
        return self.in_saturation(v) and v not in self.gaps

    def sorted_gaps(self) -> list:
        return sorted(self.gaps, key=lambda g: (g[0] + g[1], g))

    @cached_property
    def hilbert_basis(self) -> tuple:
        """Irreducible elements of the saturation S̄."""
        if self.rank == 1:
            return (_scale(self.lattice_step, self.direction),)
        u1, u2 = self._primitive_lattice_rays()
        D = _det(u1, u2)
        cands = set()
        corners = [(0, 0), u1, u2, _add(u1, u2)]
        for x in range(min(c[0] for c in corners), max(c[0] for c in corners) + 1):
            for y in range(min(c[1] for c in corners), max(c[1] for c in corners) + 1):
                v = (x, y)
                if v == (0, 0) or not self.in_lattice(v):
                    continue
                al = Fraction(_det(v, u2), D)
                be = Fraction(_det(u1, v), D)
                if 0 <= al <= 1 and 0 <= be <= 1:
                    cands.add(v)
        irreducible = []
        for v in sorted(cands, key=lambda c: (c[0] + c[1], c)):
            if not any(self.in_saturation(_sub(v, w)) and _sub(v, w) != (0, 0) for w in irreducible):
                irreducible.append(v)
        return tuple(irreducible)

    def _primitive_lattice_rays(self):
        out = []
        for r in self.ray_dirs:
            k = 1
            while not self.in_lattice(_scale(k, r)):
                k += 1
            out.append(_scale(k, r))
        return tuple(out)

    def saturation(self) -> "SemigroupRing":
        return SemigroupRing(self.hilbert_basis, self.p, self.search_bound)

    def decompose(self, v) -> tuple:
        """Multiplicities n_i with v = Σ n_i gens[i]; ValueError if v ∉ S."""
        v = tuple(v)
        if not self.member(v):
            raise ValueError(f"{v} is not in the semigroup")
        counts = [0] * len(self.gens)
        while v != (0, 0):
            for i, g in enumerate(self.gens):
                w = _sub(v, g)
                if w[0] >= 0 and w[1] >= 0 and self._member_search(w):
                    counts[i] += 1
                    v = w
                    break
        return tuple(counts)

    # -- ideals
    def ideal(self, gens) -> "MonomialIdealInS":
        return MonomialIdealInS(self, gens)

    def maximal_ideal(self) -> "MonomialIdealInS":
        return MonomialIdealInS(self, self.gens)


def sg_make(gens, p: int = 2) -> SemigroupRing:
    return SemigroupRing(gens, p)


def sg_member(v, S: SemigroupRing) -> bool:
    v = tuple(v)
    if v[0] < 0 or v[1] < 0:
        return False
    return S._member_search(v)


class MonomialIdealInS:
    """Ideal of F_p[S] generated by monomials (exponent vectors in S)."""

    def __init__(self, S: SemigroupRing, gens: Iterable[Sequence[int]]):
        self.S = S
        gl = []
        for g in gens:
            g = (int(g[0]), int(g[1]))
            if not S.member(g):
                raise ValueError(f"generator {g} is not in the semigroup")
            if g not in gl:
                gl.append(g)
        self.gens = tuple(sorted(gl, key=lambda g: (g[0] + g[1], g)))

    def __repr__(self):
        return f"MonomialIdealInS({list(self.gens)})"

    def contains(self, v, contracted: bool = False) -> bool:
        test = self.S.in_saturation if contracted else self.S.member
        return any(test(_sub(v, g)) for g in self.gens)

    def power(self, n: int) -> "MonomialIdealInS":
        if n == 0:
            return MonomialIdealInS(self.S, [(0, 0)])
        sums = set()
        for combo in itertools.combinations_with_replacement(self.gens, n):
            s = (sum(c[0] for c in combo), sum(c[1] for c in combo))
            sums.add(s)
        return MonomialIdealInS(self.S, _minimalize(self.S, sums))

    def __mul__(self, other: "MonomialIdealInS") -> "MonomialIdealInS":
        return MonomialIdealInS(self.S, _minimalize(self.S, {_add(a, b) for a in self.gens for b in other.gens}))

    def __add__(self, other: "MonomialIdealInS") -> "MonomialIdealInS":
        return MonomialIdealInS(self.S, _minimalize(self.S, set(self.gens) | set(other.gens)))

    def __eq__(self, other):
        if not isinstance(other, MonomialIdealInS):
            return NotImplemented
        return self.S is other.S and set(self.standard()) == set(other.standard())

    __hash__ = None

    def issubset(self, other: "MonomialIdealInS") -> bool:
        return all(other.contains(g) for g in self.gens)

    def _ray_multipliers(self, contracted: bool):
        S = self.S
        ks = []
        for v in (S.v1, S.v2):
            k = next((k for k in range(1, 4 * S.search_bound) if self.contains(_scale(k, v), contracted)), None)
            if k is None:
                raise NotCofinite(f"ideal {list(self.gens)} contains no power of the ray element {v}")
            ks.append(k)
        return ks

    def standard(self, contracted: bool = False) -> list:
        """Elements of S outside the ideal (outside I·S̄ when ``contracted``)."""
        S = self.S
        if (0, 0) in self.gens:
            return []
        K1, K2 = self._ray_multipliers(contracted)
        out = []
        if S.rank == 1:
            for k in range(K1 * S._rank1_min + S.certificate.box_bound + 1):
                v = _scale(k, S.certificate.v1)
                if S.member(v) and not self.contains(v, contracted):
                    out.append(v)
            return sorted(set(out))
        for p0, (a, b) in S.certificate.residues.items():
            for k1 in range(K1 + a):
                for k2 in range(K2 + b):
                    v = _add(p0, _add(_scale(k1, S.v1), _scale(k2, S.v2)))
                    if S.member(v) and not self.contains(v, contracted):
                        out.append(v)
        return sorted(out, key=lambda g: (g[0] + g[1], g))

    def length(self, contracted: bool = False) -> int:
        return len(self.standard(contracted))

    def with_monomials(self, extra) -> "MonomialIdealInS":
        return MonomialIdealInS(self.S, _minimalize(self.S, set(self.gens) | set(extra)))


def _minimalize(S: SemigroupRing, vecs) -> list:
    vecs = sorted(set(vecs), key=lambda g: (g[0] + g[1], g))
    keep = []
    for v in vecs:
        if not any(S.member(_sub(v, w)) for w in keep):
            keep.append(v)
    return keep


def sg_length(Q: MonomialIdealInS, n: int, contracted: bool = False) -> int:
    """ℓ(R/Q^n), or ℓ(R/(Q^n S̄ ∩ R)) with ``contracted``."""
    return Q.power(n).length(contracted)


def contracted_ideal(Q: MonomialIdealInS, n: int) -> MonomialIdealInS:
    """Q^n S̄ ∩ R as a monomial ideal of R."""
    I = Q.power(n)
    std = set(I.standard(contracted=True))
    plain = I.standard(contracted=False)
    return I.with_monomials([v for v in plain if v not in std])


# ---------------------------------------------------------------------------
# the gap module N = S̄ / S


def _mult_matrix(S: SemigroupRing, gaps: list, poly: dict) -> list[list[int]]:
    """Matrix (rows indexed by gaps) of multiplication by ``poly`` on N."""
    index = {g: i for i, g in enumerate(gaps)}
    n = len(gaps)
    rows = [[0] * n for _ in range(n)]
    for j, g in enumerate(gaps):
        for m, c in poly.items():
            t = _add(g, m)
            i = index.get(t)
            if i is not None:
                rows[i][j] = (rows[i][j] + c) % S.p
    return rows


def _image_vectors(S, gaps, poly):
    rows = _mult_matrix(S, gaps, poly)
    n = len(gaps)
    return [[rows[i][j] for i in range(n)] for j in range(n)]


def sg_gap_module(S: SemigroupRing, Q: MonomialIdealInS | None = None, f: dict | None = None):
    """(ℓ(N), ℓ(N/QN), ℓ(N/fN)) for N = S̄/S; missing Q or f gives None."""
    gaps = S.sorted_gaps()
    n = len(gaps)
    if n == 0:
        return (0, 0 if Q is not None else None, 0 if f is not None else None)
    lq = lf = None
    if Q is not None:
        vecs = []
        for g in Q.gens:
            vecs.extend(_image_vectors(S, gaps, {g: 1}))
        lq = n - linalg.rank(vecs, n, S.p)
    if f is not None:
        for m in f:
            if not S.member(m):
                raise ValueError(f"monomial {m} of f is not in the semigroup")
        lf = n - linalg.rank(_image_vectors(S, gaps, f), n, S.p)
    return (n, lq, lf)


# ---------------------------------------------------------------------------
# closures in the semigroup ring


@dataclass
class SemigroupLimit:
    ideal: MonomialIdealInS
    stable_at: int
    chain_lengths: list


def sg_limit_closure(Q: MonomialIdealInS, max_n: int = 40) -> SemigroupLimit:
    """Limit closure for Q generated by a monomial system of parameters."""
    S = Q.S
    xs = Q.gens
    if len(xs) != S.rank:
        raise ValueError("limit closure needs exactly dim R monomial generators")
    total = (sum(x[0] for x in xs), sum(x[1] for x in xs))
    history = []
    lengths = []
    base_std = Q.standard()
    for n in range(max_n + 1):
        In = MonomialIdealInS(S, [_scale(n + 1, x) for x in xs])
        shift = _scale(n, total)
        extra = [s for s in base_std if In.contains(_add(s, shift))]
        Ln = frozenset(s for s in base_std if s not in extra)
        lengths.append(len(Ln))
        if history and not Ln <= history[-1]:
            raise RuntimeError(f"limit chain does not ascend at n = {n}")
        history.append(Ln)
        if len(history) >= 3 and history[-3] == history[-2] == history[-1]:
            closed = Q.with_monomials([s for s in base_std if s not in history[-3]])
            return SemigroupLimit(closed, n - 2, lengths)
    raise RuntimeError(f"limit closure did not stabilise within n <= {max_n}")


@dataclass
class SemigroupTight:
    ideal: MonomialIdealInS
    test_element: tuple
    e_range: tuple
    kernel_dims: list
    cumulative_dims: list
    stabilized: bool
    semidecision: bool = True


def sg_tight_candidate(I: MonomialIdealInS, c: Sequence[int] = (0, 0), E: int = 4) -> SemigroupTight:
    """I + ∩_{e<=E} {s : c + q·s ∈ I^[q]} for a monomial test element c.

    For a monomial c the Frobenius map sends monomials to monomials or zero,
    so each kernel is spanned by standard monomials.
    """
    if E < 2:
        raise ValueError("exponent bound E must be at least 2")
    S = I.S
    c = tuple(c)
    if not S.member(c):
        raise ValueError(f"test element exponent {c} is not in the semigroup")
    std = I.standard()
    kernel_dims = []
    cumulative = []
    passing = set(std)
    for e in range(1, E + 1):
        q = S.p**e
        bracket = [_scale(q, g) for g in I.gens]
        ker = {s for s in std if any(S.member(_sub(_add(c, _scale(q, s)), b)) for b in bracket)}
        kernel_dims.append(len(ker))
        passing &= ker
        cumulative.append(len(passing))
    closure = I.with_monomials(passing)
    return SemigroupTight(closure, c, (1, E), kernel_dims, cumulative, cumulative[-1] == cumulative[-2])


# ---------------------------------------------------------------------------
# toric presentation


@dataclass
class ToricPresentation:
    ring: PresentedRing
    semigroup: SemigroupRing
    names: tuple

    def monomial(self, v):
        """Polynomial in the presentation representing X^v (v ∈ S)."""
        counts = self.semigroup.decompose(v)
        return self.ring.poly_ring.monomial(counts)

    def element(self, poly: dict):
        out = self.ring.poly_ring.zero()
        for m, c in poly.items():
            out = out + self.monomial(m).scale(c)
        return out


def _toric_ideal(S: SemigroupRing, names: Sequence[str]) -> list:
    small = PolyRing(S.p, names)
    big = _extend_ring(small, ["X", "Y"])
    X, Y = big.var(0), big.var(1)
    gens = []
    for i, g in enumerate(S.gens):
        gens.append(_lift(small.var(i), big, 2) - X ** g[0] * Y ** g[1])
    return list(eliminate(Ideal(big, gens), 2, target=small).gens)


def sg_to_presentation(S: SemigroupRing, prefix: str = "a"):
    """Toric presentation of F_p[S] and ExtensionData into the presented saturation."""
    from .closures import ExtensionData

    names = tuple(f"{prefix}{i + 1}" for i in range(len(S.gens)))
    R = PresentedRing(S.p, names, _toric_ideal(S, names))
    pres = ToricPresentation(R, S, names)
    Sbar = S.saturation()
    bnames = tuple(f"b{i + 1}" for i in range(len(Sbar.gens)))
    Rbar = PresentedRing(S.p, bnames, _toric_ideal(Sbar, bnames))
    bar_pres = ToricPresentation(Rbar, Sbar, bnames)
    images = tuple(bar_pres.monomial(g) for g in S.gens)
    ext = ExtensionData("presented", Rbar, images, f_regular=True)
    return pres, ext, bar_pres
