"""Sparse multivariate polynomials over a prime field F_p.

A polynomial is an immutable map from exponent tuples to nonzero residues
mod p.  Monomial orders are realised as integer sort keys so that comparing
two monomials is a single int comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

MAX_EXPONENT = 2**31 - 1
MAX_PRIME = 2**16

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
# Base for packing key digits into one int; exponent sums stay below it.
_KEY_BASE = 1 << 64


class ContextMismatch(ValueError):
    """Operands live in different polynomial rings."""


class ExponentOverflow(OverflowError):
    """An exponent would exceed the 32-bit bound."""


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial expression; ``pos`` is the 0-based offset."""

    def __init__(self, message, text="", pos=0):
        super().__init__(f"{message} at position {pos}")
        self.text = text
        self.pos = pos


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_exponent(e: int) -> None:
    if e > MAX_EXPONENT:
        raise ExponentOverflow(f"exponent {e} exceeds 2^31-1")


def _normalize_order(order, n):
    if isinstance(order, str):
        if order in ("grevlex", "lex"):
            return order
        m = re.fullmatch(r"block\((\d+)\)|block-elimination\((\d+)\)|block:(\d+)", order)
        if m:
            order = ("block", int(next(g for g in m.groups() if g)))
        else:
            raise ValueError(f"unknown monomial order {order!r}")
    if isinstance(order, tuple) and len(order) == 2 and order[0] == "block":
        k = int(order[1])
        if not 0 <= k <= n:
            raise ValueError(f"block size {k} out of range for {n} variables")
        return ("block", k)
    raise ValueError(f"unknown monomial order {order!r}")


def _pack(digits):
    key = 0
    for d in digits:
        key = key * _KEY_BASE + d
    return key


def _grevlex_digits(exps):
    # larger total degree first; ties broken by the smallest last exponent
    return [sum(exps)] + [_KEY_BASE - 1 - a for a in reversed(exps)]


@dataclass(frozen=True)
class RingContext:
    """The ambient ring F_p[vars] with a monomial order.

    ``order`` is ``"grevlex"``, ``"lex"`` or ``("block", k)``: lex on the
    first k variables, ties broken by grevlex on the remaining ones.
    """

    p: int
    vars: tuple
    order: object = "grevlex"
    _key_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p >= MAX_PRIME:
            raise ValueError(f"p must be a prime below 2^16, got {self.p!r}")
        names = tuple(self.vars)
        object.__setattr__(self, "vars", names)
        for v in names:
            if not isinstance(v, str) or not _VAR_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        object.__setattr__(self, "order", _normalize_order(self.order, len(names)))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def mon_key(self, exps: tuple) -> int:
        """Integer key; ``a > b`` in the monomial order iff key(a) > key(b)."""
        k = self._key_cache.get(exps)
        if k is None:
            k = self._key_cache[exps] = _pack(self._digits(exps))
        return k

    def _digits(self, exps):
        if self.order == "grevlex":
            return _grevlex_digits(exps)
        if self.order == "lex":
            return list(exps)
        k = self.order[1]
        return list(exps[:k]) + _grevlex_digits(exps[k:])

    def order_name(self) -> str:
        if isinstance(self.order, tuple):
            return f"block({self.order[1]})"
        return self.order

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gens(self) -> list:
        return [self.var(v) for v in self.vars]

    def var(self, name: str) -> "Polynomial":
        i = self.vars.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: 1})

    def monomial(self, exps, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __call__(self, text):
        if isinstance(text, Polynomial):
            if text.ctx != self:
                raise ContextMismatch("polynomial belongs to another ring")
            return text
        if isinstance(text, int):
            return self.const(text)
        return parse_polynomial(self, text)

    def fresh_name(self, stem="t") -> str:
        name, i = stem, 0
        while name in self.vars:
            i += 1
            name = f"{stem}{i}"
        return name

    def elimination_extension(self, stem="t") -> "RingContext":
        """Ring with one new variable in front that is eliminated first.

        Restricting the new order to monomials free of the new variable
        gives back this ring's order.
        """
        names = (self.fresh_name(stem),) + self.vars
        if self.order == "grevlex":
            order = ("block", 1)
        elif self.order == "lex":
            order = "lex"
        else:
            order = ("block", self.order[1] + 1)
        return RingContext(self.p, names, order)


class Polynomial:
    """Immutable polynomial over ``ctx``; ``terms`` maps exponents to residues."""

    __slots__ = ("ctx", "terms", "_lm")

    def __init__(self, ctx: RingContext, terms: dict, _clean=False):
        self.ctx = ctx
        if not _clean:
            p = ctx.p
            n = ctx.nvars
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"exponent vector {m} has wrong length")
                c %= p
                if c:
                    clean[m] = c
            terms = clean
        self.terms = terms
        self._lm = None

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def lm(self) -> tuple:
        """Leading exponent vector."""
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ctx.mon_key)
        return self._lm

    def lc(self) -> int:
        return self.terms[self.lm()]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list:
        key = self.ctx.mon_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        p = self.ctx.p
        inv = pow(self.lc(), -1, p)
        return Polynomial(self.ctx, {m: c * inv % p for m, c in self.terms.items()}, _clean=True)

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, a in enumerate(m) if a)
        return {self.ctx.vars[i] for i in used}

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch("polynomials belong to different rings")
            return other
        if isinstance(other, int):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ctx, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Polynomial(self.ctx, {m: p - c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = (get(m, 0) + ca * cb) % p
        return Polynomial(self.ctx, {m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        p = self.ctx.p
        c %= p
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {m: v * c % p for m, v in self.terms.items()}, _clean=True)

    def mul_monomial(self, exps: tuple, c: int = 1) -> "Polynomial":
        p = self.ctx.p
        c %= p
        if not c:
            return self.ctx.zero()
        return Polynomial(
            self.ctx,
            {tuple(x + y for x, y in zip(m, exps)): v * c % p for m, v in self.terms.items()},
            _clean=True,
        )

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if self.terms and k:
            check_exponent(max(max(m, default=0) for m in self.terms) * k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, q: int) -> "Polynomial":
        """``self ** q`` for q a power of p, computed by scaling exponents.

        Valid because x -> x^q is a ring endomorphism fixing F_p.
        """
        if self.terms:
            check_exponent(max(max(m, default=0) for m in self.terms) * q)
        return Polynomial(
            self.ctx, {tuple(a * q for a in m): c for m, c in self.terms.items()}, _clean=True
        )

    def divexact(self, g: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ValueError if g does not divide self."""
        g = self._coerce(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        ctx, p = self.ctx, self.ctx.p
        glm, ginv = g.lm(), pow(g.lc(), -1, p)
        gterms = list(g.terms.items())
        rem = dict(self.terms)
        quot = {}
        key = ctx.mon_key
        while rem:
            m = max(rem, key=key)
            if any(a < b for a, b in zip(m, glm)):
                raise ValueError("polynomial is not divisible")
            q = tuple(a - b for a, b in zip(m, glm))
            c = rem[m] * ginv % p
            quot[q] = c
            for gm, gc in gterms:
                t = tuple(a + b for a, b in zip(q, gm))
                v = (rem.get(t, 0) - c * gc) % p
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial(ctx, quot, _clean=True)

    def evaluate(self, point) -> int:
        p = self.ctx.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, a in zip(point, m):
                v = v * pow(x, a, p) % p
            total += v
        return total % p

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.vars, frozenset(self.terms.items())))

    def __str__(self):
        return format_polynomial(self.ctx, self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self.ctx, self)!r}, p={self.ctx.p})"


def poly_arith(ctx: RingContext, op: str, a: Polynomial, b) -> Polynomial:
    """Dispatch ``add``, ``mul`` or ``pow``; ``b`` is an exponent for ``pow``."""
    if a.ctx != ctx or (isinstance(b, Polynomial) and b.ctx != ctx):
        raise ContextMismatch("operands do not share the given ring")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def _format_monomial(names, exps):
    parts = []
    for name, a in zip(names, exps):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_polynomial(ctx: RingContext, f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for m, c in f.sorted_terms():
        mono = _format_monomial(ctx.vars, m)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


# -- parser ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.)", re.S)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        start = pos
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("VAR", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise PolynomialSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, ctx, text):
        self.ctx = ctx
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "END" else repr(kind)
            got = "end of input" if tok[0] == "END" else repr(tok[1])
            raise PolynomialSyntaxError(f"expected {want}, got {got}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        negate = False
        if self.peek()[0] == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def exponent(self):
        tok = self.take("INT")
        k = int(tok[1])
        if k > MAX_EXPONENT:
            raise PolynomialSyntaxError("exponent overflow", self.text, tok[2])
        return k

    def factor(self):
        kind, value, pos = self.peek()
        if kind == "INT":
            self.take()
            return self.ctx.const(int(value))
        if kind == "VAR":
            self.take()
            if value not in self.ctx.vars:
                raise PolynomialSyntaxError(f"unknown variable {value!r}", self.text, pos)
            k = 1
            if self.peek()[0] == "^":
                self.take()
                k = self.exponent()
            i = self.ctx.vars.index(value)
            exps = tuple(k if j == i else 0 for j in range(self.ctx.nvars))
            return Polynomial(self.ctx, {exps: 1}, _clean=True)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            if self.peek()[0] == "^":
                self.take()
                return inner ** self.exponent()
            return inner
        got = "end of input" if kind == "END" else repr(value)
        raise PolynomialSyntaxError(f"unexpected {got}", self.text, pos)


def parse_polynomial(ctx: RingContext, text: str) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``ctx``.

    Integer literals are reduced mod p.  Raises PolynomialSyntaxError for
    malformed input, unknown variables and exponents above 2^31-1.
    """
    parser = _Parser(ctx, text)
    if parser.peek()[0] == "END":
        raise PolynomialSyntaxError("empty expression", text, 0)
    result = parser.expr()
    parser.take("END")
    return result
