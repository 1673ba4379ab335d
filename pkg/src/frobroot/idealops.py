"""Gröbner bases over F_p and the ideal operations built on them.

The engine works on vectors of a free module A^r so that ideals (r = 1)
and syzygy computations share one Buchberger loop.  A vector is a dict
mapping flat terms ``(pos, e_1, ..., e_n)`` to nonzero residues.  Module
terms are ordered position-over-term with earlier positions larger.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from itertools import combinations

from .ringcore import ContextMismatch, Polynomial, RingContext


class _Engine:
    """Term order and arithmetic helpers for A^rank."""

    def __init__(self, ctx: RingContext, rank: int = 1):
        self.ctx = ctx
        self.p = ctx.p
        self.rank = rank
        # strictly larger than any monomial key of this ring
        self._shift = 1 << (64 * (ctx.nvars + 2))
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            k = (self.rank - term[0]) * self._shift + self.ctx.mon_key(term[1:])
            self._cache[term] = k
        return k

    def lead(self, vec):
        return max(vec, key=self.key)


def _divides(a, b):
    # a, b are flat terms; a | b iff same position and componentwise <=
    if a[0] != b[0]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Elem:
    __slots__ = ("lt", "tail", "vec")

    def __init__(self, vec, lt):
        self.vec = vec
        self.lt = lt
        self.tail = [(t, c) for t, c in vec.items() if t != lt]


def _monic(vec, lt, p):
    inv = pow(vec[lt], -1, p)
    if inv == 1:
        return dict(vec)
    return {t: c * inv % p for t, c in vec.items()}


def _reduce(eng, vec, basis, skip=None):
    """Full normal form of ``vec`` modulo the monic elements in ``basis``."""
    if not vec or not basis:
        return dict(vec)
    p = eng.p
    key = eng.key
    h = dict(vec)
    heap = [(-key(t), t) for t in h]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = h.pop(t, None)
        if c is None:
            continue
        for g in basis:
            if g is not skip and _divides(g.lt, t):
                break
        else:
            rem[t] = c
            continue
        q = [a - b for a, b in zip(t, g.lt)]
        q[0] = 0
        for s, d in g.tail:
            u = tuple(a + b for a, b in zip(q, s)) if any(q) else s
            v = h.get(u)
            if v is None:
                v = (-c * d) % p
                if v:
                    h[u] = v
                    heapq.heappush(heap, (-key(u), u))
            else:
                v = (v - c * d) % p
                if v:
                    h[u] = v
                else:
                    del h[u]
    return rem


def _lcm(a, b):
    return (a[0],) + tuple(max(x, y) for x, y in zip(a[1:], b[1:]))


def _shift(vec, q, c, p):
    return {tuple(a + b for a, b in zip(q, t)): v * c % p for t, v in vec.items()}


def _spoly(eng, f, g):
    p = eng.p
    L = _lcm(f.lt, g.lt)
    qf = (0,) + tuple(a - b for a, b in zip(L[1:], f.lt[1:]))
    qg = (0,) + tuple(a - b for a, b in zip(L[1:], g.lt[1:]))
    out = _shift(f.vec, qf, 1, p)
    for t, v in _shift(g.vec, qg, 1, p).items():
        w = (out.get(t, 0) - v) % p
        if w:
            out[t] = w
        else:
            out.pop(t, None)
    return out


def groebner(eng: _Engine, vectors) -> list:
    """Reduced Gröbner basis of the submodule generated by ``vectors``.

    Returns monic dict vectors sorted by leading term, largest first.
    """
    p = eng.p
    unit_term = (0,) + (0,) * eng.ctx.nvars
    G = []
    pending = {}
    heap = []

    def add(vec):
        lt = eng.lead(vec)
        vec = _monic(vec, lt, p)
        elem = _Elem(vec, lt)
        j = len(G)
        G.append(elem)
        for i, other in enumerate(G[:-1]):
            if other.lt[0] != lt[0]:
                continue
            if eng.rank == 1 and all(a == 0 or b == 0 for a, b in zip(other.lt[1:], lt[1:])):
                continue  # coprime leading monomials: S-pair reduces to zero
            L = _lcm(other.lt, lt)
            pending[(i, j)] = L
            heapq.heappush(heap, (eng.key(L), i, j))
        return lt

    for v in vectors:
        v = _reduce(eng, v, G)
        if v:
            if add(v) == unit_term and eng.rank == 1:
                return [{unit_term: 1}]

    while heap:
        _, i, j = heapq.heappop(heap)
        L = pending.pop((i, j))
        chained = False
        for k, g in enumerate(G):
            if k in (i, j) or not _divides(g.lt, L):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chained = True
                break
        if chained:
            continue
        s = _reduce(eng, _spoly(eng, G[i], G[j]), G)
        if s:
            if add(s) == unit_term and eng.rank == 1:
                return [{unit_term: 1}]

    # minimalize, then interreduce tails
    order = sorted(G, key=lambda g: eng.key(g.lt))
    minimal = []
    for g in order:
        if not any(_divides(h.lt, g.lt) for h in minimal):
            minimal.append(g)
    out = []
    for g in minimal:
        rest = [h for h in minimal if h is not g]
        tail = _reduce(eng, {t: c for t, c in g.vec.items() if t != g.lt}, rest)
        tail[g.lt] = 1
        out.append(_Elem(tail, g.lt))
    out.sort(key=lambda g: eng.key(g.lt), reverse=True)
    return [g.vec for g in out]


# -- conversions between Polynomial and flat-term vectors ---------------------

def _to_vec(f: Polynomial, pos=0):
    return {(pos,) + m: c for m, c in f.terms.items()}


def _from_vec(ctx, vec, pos=0):
    return Polynomial(ctx, {t[1:]: c for t, c in vec.items() if t[0] == pos}, _clean=True)


def _check_ctx(*items):
    ctx = None
    for it in items:
        c = it.ctx
        if ctx is None:
            ctx = c
        elif c != ctx:
            raise ContextMismatch("operands belong to different rings")
    return ctx


# -- ideals -------------------------------------------------------------------

class Ideal:
    """An ideal given by generators, with a lazily computed reduced Gröbner basis.

    Equality and hashing go through the reduced basis, so two handles for
    the same ideal compare equal.
    """

    def __init__(self, ctx: RingContext, gens=()):
        self.ctx = ctx
        polys = []
        for g in gens:
            g = ctx(g)
            if g:
                polys.append(g)
        self.gens = tuple(polys)
        self._gb = None
        self._gb_vecs = None
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ctx):
        I = cls(ctx, [ctx.one()])
        I._gb = (ctx.one(),)
        return I

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    def _compute(self):
        with self._lock:
            if self._gb is None:
                eng = _Engine(self.ctx)
                vecs = groebner(eng, [_to_vec(g) for g in self.gens])
                self._gb = tuple(_from_vec(self.ctx, v) for v in vecs)
        return self._gb

    def gb(self) -> tuple:
        """Reduced Gröbner basis (``(1,)`` for the unit ideal, empty for zero)."""
        if self._gb is None:
            self._compute()
        return self._gb

    def _elems(self):
        if self._gb_vecs is None:
            self._gb_vecs = [_Elem(_to_vec(g), (0,) + g.lm()) for g in self.gb()]
        return self._gb_vecs

    def reduce(self, f: Polynomial) -> Polynomial:
        f = self.ctx(f)
        vec = _reduce(_Engine(self.ctx), _to_vec(f), self._elems())
        return _from_vec(self.ctx, vec)

    def contains(self, f) -> bool:
        return not self.reduce(f)

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        _check_ctx(self, other)
        if self.is_unit():
            return True
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ctx == other.ctx and self.gb() == other.gb()

    def __hash__(self):
        return hash(self.gb())

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        _check_ctx(self, other)
        return Ideal(self.ctx, [a * b for a in self.gens for b in other.gens])

    def __and__(self, other):
        return ideal_intersection(self, other)

    def __le__(self, other):
        return other.contains_ideal(self)

    def __ge__(self, other):
        return self.contains_ideal(other)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gb()) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def normal_form(f: Polynomial, G) -> Polynomial:
    """Remainder of ``f`` on division by the list ``G``.

    No term of the result is divisible by a leading monomial of ``G``.  The
    divisor tried first is the earliest in ``G`` whose leading term divides.
    """
    G = [g for g in G if g]
    _check_ctx(f, *G)
    eng = _Engine(f.ctx)
    p = f.ctx.p
    elems = []
    for g in G:
        lt = (0,) + g.lm()
        elems.append(_Elem(_monic(_to_vec(g), lt, p), lt))
    return _from_vec(f.ctx, _reduce(eng, _to_vec(f), elems))


def reduced_gb(I: Ideal) -> list:
    return list(I.gb())


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    _check_ctx(f, I)
    return I.contains(f)


def ideal_equal(I1: Ideal, I2: Ideal) -> bool:
    _check_ctx(I1, I2)
    return I1.gb() == I2.gb()


def ideal_sum(I1: Ideal, I2: Ideal) -> Ideal:
    ctx = _check_ctx(I1, I2)
    return Ideal(ctx, I1.gens + I2.gens)


def _embed(src: RingContext, dst: RingContext, f: Polynomial, lead=1) -> Polynomial:
    # place ``f`` in ``dst`` whose first ``lead`` variables are new
    pad = (0,) * lead
    return Polynomial(dst, {pad + m: c for m, c in f.terms.items()}, _clean=True)


def _contract(dst: RingContext, f: Polynomial, lead=1):
    if any(any(m[:lead]) for m in f.terms):
        return None
    return Polynomial(dst, {m[lead:]: c for m, c in f.terms.items()}, _clean=True)


def eliminate_first(ext: RingContext, base: RingContext, gens) -> Ideal:
    """Intersect the ideal of ``gens`` in ``ext`` with ``base``.

    ``ext`` must carry one extra leading variable under an elimination order.
    """
    gb = Ideal(ext, gens).gb()
    kept = [q for q in (_contract(base, g) for g in gb) if q is not None]
    out = Ideal(base, kept)
    out._gb = tuple(kept)  # restriction of a reduced GB under an elimination order
    return out


def ideal_intersection(I1: Ideal, I2: Ideal) -> Ideal:
    """I1 ∩ I2 by eliminating t from t*I1 + (1-t)*I2."""
    ctx = _check_ctx(I1, I2)
    if I1.is_zero() or I2.is_zero():
        return Ideal.zero(ctx)
    if I1.is_unit():
        return I2
    if I2.is_unit():
        return I1
    ext = ctx.elimination_extension()
    t = ext.var(ext.vars[0])
    gens = [t * _embed(ctx, ext, g) for g in I1.gens]
    gens += [(1 - t) * _embed(ctx, ext, g) for g in I2.gens]
    return eliminate_first(ext, ctx, gens)


def intersect_all(ctx, ideals) -> Ideal:
    result = Ideal.unit(ctx)
    for I in ideals:
        result = ideal_intersection(result, I)
    return result


def _colon_principal(I: Ideal, g: Polynomial) -> Ideal:
    if g.is_constant():
        return I
    meet = ideal_intersection(I, Ideal(I.ctx, [g]))
    quotients = []
    for h in meet.gb():
        try:
            quotients.append(h.divexact(g))
        except ValueError as exc:  # pragma: no cover - A is a domain
            raise AssertionError("element of I ∩ (g) not divisible by g") from exc
    return Ideal(I.ctx, quotients)


def ideal_colon(I: Ideal, Q: Ideal) -> Ideal:
    """(I : Q) = {a : a*Q ⊆ I}, intersected over the generators of Q."""
    ctx = _check_ctx(I, Q)
    if I.is_unit() or Q.is_zero():
        return Ideal.unit(ctx)
    if Q.is_unit():
        return I
    if I.contains_ideal(Q):
        return Ideal.unit(ctx)
    return intersect_all(ctx, [_colon_principal(I, g) for g in Q.gb()])


def ideal_saturation(I: Ideal, Q: Ideal, return_steps=False):
    """(I : Q^∞): iterate the colon until the chain repeats."""
    _check_ctx(I, Q)
    current, steps = I, 0
    while True:
        nxt = ideal_colon(current, Q)
        steps += 1
        if nxt == current:
            break
        current = nxt
    return (current, steps) if return_steps else current


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """Whether some power of ``f`` lies in I (Rabinowitsch trick)."""
    ctx = _check_ctx(f, I)
    if not f:
        return True
    ext = ctx.elimination_extension()
    t = ext.var(ext.vars[0])
    gens = [_embed(ctx, ext, g) for g in I.gens] + [1 - t * _embed(ctx, ext, f)]
    return Ideal(ext, gens).is_unit()


# -- syzygies and minors -------------------------------------------------------

@dataclass(frozen=True)
class SyzygyBasis:
    """Generators of {a in A^s : sum a_i g_i in the designated ideal}."""

    ctx: RingContext
    s: int
    rows: tuple

    def matrix(self) -> "PolyMatrix":
        """Relation matrix: one column per syzygy, one row per generator."""
        cols = self.rows
        return PolyMatrix(self.ctx, [[c[i] for c in cols] for i in range(self.s)])


def syzygies(gens, modulo: Ideal | None = None) -> SyzygyBasis:
    """Relations among ``gens`` modulo an ideal, via a position-over-term module GB.

    Each generator f_k (and each generator of ``modulo``) becomes the vector
    (f_k | e_k) in A^(1+m); GB elements with vanishing first coordinate
    generate the syzygies, projected onto the coordinates of ``gens``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("syzygies need at least one generator")
    ctx = _check_ctx(*gens)
    hs = list(modulo.gens) if modulo is not None else []
    if hs:
        _check_ctx(gens[0], modulo)
    s = len(gens)
    allg = gens + hs
    eng = _Engine(ctx, rank=1 + len(allg))
    zero = (0,) * ctx.nvars
    vectors = []
    for k, f in enumerate(allg):
        vec = _to_vec(f, 0)
        vec[(k + 1,) + zero] = 1
        vectors.append(vec)
    rows = []
    seen = set()
    for vec in groebner(eng, vectors):
        if any(t[0] == 0 for t in vec):
            continue
        row = tuple(_from_vec(ctx, vec, pos) for pos in range(1, s + 1))
        if not any(row):
            continue
        if row not in seen:
            seen.add(row)
            rows.append(row)
    return SyzygyBasis(ctx, s, tuple(rows))


class PolyMatrix:
    """Rectangular grid of polynomials."""

    def __init__(self, ctx: RingContext, rows):
        self.ctx = ctx
        self.rows = [[ctx(e) for e in r] for r in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("matrix rows have different lengths")
        self.nrows = len(self.rows)
        self.ncols = widths.pop() if widths else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def delete_row(self, i: int) -> "PolyMatrix":
        m = PolyMatrix(self.ctx, [r for k, r in enumerate(self.rows) if k != i])
        if m.nrows == 0:
            m.ncols = self.ncols
        return m


def minors(M: PolyMatrix, k: int) -> list:
    """All k×k minors of M, by Laplace expansion along the first row with memoisation."""
    ctx = M.ctx
    if k == 0:
        return [ctx.one()]
    if k > min(M.nrows, M.ncols):
        return []
    memo = {}

    def det(rows, cols):
        if len(rows) == 1:
            return M.rows[rows[0]][cols[0]]
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = ctx.zero()
        r0 = M.rows[rows[0]]
        for j, c in enumerate(cols):
            a = r0[c]
            if not a:
                continue
            sub = det(rows[1:], cols[:j] + cols[j + 1:])
            if sub:
                term = a * sub
                total = total - term if j % 2 else total + term
        memo[key] = total
        return total

    out = []
    for rows in combinations(range(M.nrows), k):
        for cols in combinations(range(M.ncols), k):
            out.append(det(rows, cols))
    return out


def minors_ideal(M: PolyMatrix, k: int) -> Ideal:
    if k < 0:
        raise ValueError("minor size must be nonnegative")
    return Ideal(M.ctx, minors(M, k))
