"""Prime fields, monomial orders and sparse polynomials over F_p.

Monomials are exponent tuples.  A :class:`Polynomial` is an immutable map
from exponent tuples to nonzero residues mod ``p`` together with the
:class:`PolyRing` it lives in (characteristic, variable names, default order).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from operator import add, le, sub
from typing import Iterable, Mapping

MAX_EXPONENT = 2**31 - 1
MAX_PRIME = 2**31 - 1


class ExponentOverflow(ArithmeticError):
    """An exponent would leave the supported 32-bit range."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"characteristic must be a prime in [2, 2^31-1], got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.p)
        return pow(a, -1, self.p)


# ---------------------------------------------------------------------------
# monomials


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(add, a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """a / b, assuming b divides a."""
    return tuple(map(sub, a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True iff a divides b."""
    return all(map(le, a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(map(max, a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)


class MonomialOrder:
    """Monomial order: ``lex``, ``grevlex`` or ``block`` eliminating the first k variables.

    ``key`` maps an exponent tuple to a tuple whose natural ordering is the
    monomial order (larger key = larger monomial).
    """

    __slots__ = ("kind", "k", "key")

    def __init__(self, kind: str = "grevlex", k: int = 0):
        if kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and k < 0:
            raise ValueError("block size must be non-negative")
        self.kind = kind
        self.k = k if kind == "block" else 0
        if kind == "lex":
            self.key = _lex_key
        elif kind == "grevlex":
            self.key = _grevlex_key
        else:
            kk = k

            def _block_key(e, kk=kk):
                return _grevlex_key(e[:kk]) + _grevlex_key(e[kk:])

            self.key = _block_key

    def compare(self, a: tuple, b: tuple) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


def _lex_key(e):
    return e


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


# ---------------------------------------------------------------------------
# rings and polynomials

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyRing:
    """F_p[x_1, ..., x_n] with a default monomial order."""

    def __init__(self, p: int, names: Iterable[str], order: MonomialOrder = GREVLEX):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.names = tuple(names)
        for nm in self.names:
            if not _IDENT.match(nm):
                raise ValueError(f"bad variable name {nm!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.order = order
        self.nvars = len(self.names)
        self._index = {nm: i for i, nm in enumerate(self.names)}

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def signature(self) -> tuple:
        return (self.field.p, self.names)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"F_{self.p}[{', '.join(self.names)}]"

    # constructors
    def zero_mono(self) -> tuple:
        return (0,) * self.nvars

    def poly(self, terms: Mapping[tuple, int] | None = None) -> "Polynomial":
        return Polynomial(self, terms or {})

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {self.zero_mono(): c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def var(self, name_or_index) -> "Polynomial":
        i = self._index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1}, _trusted=True)

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def index(self, name: str) -> int:
        return self._index[name]

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise ValueError(f"signature mismatch: {x.ring!r} vs {self!r}")
            return x
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")


class Polynomial:
    """Immutable sparse polynomial; ``terms`` never holds a zero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, int], _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            p = ring.p
            n = ring.nvars
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} has wrong length for {ring!r}")
                if any(e < 0 for e in m):
                    raise ValueError("negative exponent")
                if any(e > MAX_EXPONENT for e in m):
                    raise ExponentOverflow(f"exponent exceeds {MAX_EXPONENT}")
                c %= p
                if c:
                    clean[m] = c
            self.terms = clean
        self._hash = None

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.signature, frozenset(self.terms.items())))
        return self._hash

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[tuple, int]]:
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder | None = None) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: MonomialOrder | None = None) -> int:
        return self.terms[self.leading_monomial(order)]

    def constant_term(self) -> int:
        return self.terms.get(self.ring.zero_mono(), 0)

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"signature mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(map(add, m1, m2))
                out[m] = (get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: a * c % p for m, a in self.terms.items()}, _trusted=True)

    def mul_monomial(self, mono: tuple, c: int = 1) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {tuple(map(add, m, mono)): a * c % p for m, a in self.terms.items()}, _trusted=True
        )

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        if self.terms and self.total_degree() * n > MAX_EXPONENT:
            raise ExponentOverflow(f"degree {self.total_degree()} * {n} exceeds {MAX_EXPONENT}")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius_pow(self, e: int) -> "Polynomial":
        return frobenius_pow(self, e)

    def substitute(self, values: Mapping[int, "Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Substitute ``values[i]`` for variable i.

        Variables without a value stay put, which needs ``target`` to be this ring.
        """
        target = target or self.ring
        if target != self.ring and any(i not in values for i in range(self.ring.nvars)):
            raise ValueError("every variable needs a value when mapping into another ring")
        out = target.zero()
        for m, c in self.terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * (values[i] if i in values else target.var(i)) ** e
            out = out + t
        return out

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def frobenius_pow(f: Polynomial, e: int) -> Polynomial:
    """f^(p^e): every monomial is raised to the p^e-th power, coefficients are fixed."""
    if e < 0:
        raise ValueError("e must be non-negative")
    q = f.ring.p**e
    out = {}
    for m, c in f.terms.items():
        mq = tuple(x * q for x in m)
        if any(x > MAX_EXPONENT for x in mq):
            raise ExponentOverflow(f"monomial {m} ^ {q} exceeds 32-bit exponents")
        out[mq] = c
    return Polynomial(f.ring, out, _trusted=True)


def poly_arith(kind: str, f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise ValueError(f"signature mismatch: {f.ring!r} vs {g.ring!r}")
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    raise ValueError(f"unknown operation {kind!r}")


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.group(0).strip() == ""):
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def error(self, msg):
        raise ParseError(msg, self.peek()[2], self.text)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            self.error(f"unexpected {tok[1]!r} (implicit multiplication is not allowed)"
                       if tok[0] in ("int", "id", "(") else f"unexpected {tok[1]!r}")
        return f

    def expr(self) -> Polynomial:
        f = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek()[0] == "*":
            self.take()
            f = f * self.factor()
        return f

    def factor(self) -> Polynomial:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.factor()
        if kind == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                self.error("negative exponent")
            _, n, _ = self.take("int")
            if n > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {n} exceeds {MAX_EXPONENT}")
            base = base**n
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(val)
        if kind == "id":
            self.take()
            if val not in self.ring._index:
                raise ParseError(f"unknown identifier {val!r}", pos, self.text)
            return self.ring.var(val)
        if kind == "(":
            self.take()
            f = self.expr()
            self.take(")")
            return f
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {val!r}")


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` (integers, variables, ``+ - * ^`` and parentheses) into ``ring``."""
    return _Parser(text, ring).parse()


def format_poly(f: Polynomial, order: MonomialOrder | None = None) -> str:
    if not f.terms:
        return "0"
    p = f.ring.p
    names = f.ring.names
    parts = []
    for m, c in f.sorted_terms(order):
        neg = c > p // 2 and p > 2
        a = p - c if neg else c
        factors = []
        for nm, e in zip(names, m):
            if e == 1:
                factors.append(nm)
            elif e:
                factors.append(f"{nm}^{e}")
        if a != 1 or not factors:
            factors.insert(0, str(a))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
