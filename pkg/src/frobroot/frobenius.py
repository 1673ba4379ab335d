"""Frobenius powers and the p^e-th root operator I_e.

A = F_p[x] is free over its subring of q-th powers (q = p^e) with basis the
monomials x^a, 0 <= a_i < q.  Writing f = sum_a g_a^q x^a, the ideal I_e((f))
is generated by the g_a, and I_e of an ideal is the sum over its generators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .idealops import Ideal
from .ringcore import Polynomial, check_exponent


@dataclass(frozen=True)
class RootDecomposition:
    """f = sum over ``parts`` of g_a^(p^e) * x^a."""

    e: int
    q: int
    parts: dict  # basis exponent tuple -> nonzero Polynomial

    def reconstruct(self, ctx) -> Polynomial:
        total = ctx.zero()
        for alpha, g in self.parts.items():
            total = total + g.frobenius(self.q).mul_monomial(alpha)
        return total


def frobenius_power(I: Ideal, e: int) -> Ideal:
    """I^[p^e], generated by the p^e-th powers of the generators of I."""
    if e < 0:
        raise ValueError("Frobenius exponent must be nonnegative")
    if e == 0:
        return I
    q = I.ctx.p ** e
    check_exponent(q)
    return Ideal(I.ctx, [g.frobenius(q) for g in I.gens])


def pe_root_decompose(f: Polynomial, e: int) -> RootDecomposition:
    if e < 1:
        raise ValueError("root decomposition needs e >= 1")
    ctx = f.ctx
    q = ctx.p ** e
    buckets = {}
    # coefficients are their own q-th roots in F_p
    for m, c in f.terms.items():
        alpha = tuple(a % q for a in m)
        quo = tuple(a // q for a in m)
        buckets.setdefault(alpha, {})[quo] = c
    parts = {alpha: Polynomial(ctx, terms, _clean=True) for alpha, terms in buckets.items()}
    return RootDecomposition(e, q, parts)


def root_parts(f: Polynomial, e: int) -> list:
    """The coefficient polynomials g_a of f, in a deterministic order."""
    dec = pe_root_decompose(f, e)
    return [dec.parts[a] for a in sorted(dec.parts, key=f.ctx.mon_key, reverse=True)]


def ie_operator(J: Ideal, e: int) -> Ideal:
    """Smallest ideal L with J ⊆ L^[p^e]."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0:
        return J
    gens = []
    for f in J.gens:
        gens.extend(root_parts(f, e))
    out = Ideal(J.ctx, gens)
    out.gb()
    return out
