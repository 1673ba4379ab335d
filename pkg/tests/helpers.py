"""Random inputs and independent oracles shared by the test modules."""

import itertools
import random

import numpy as np

from frobroot.ringcore import Polynomial


def random_poly(ctx, rng: random.Random, max_deg=3, nterms=3, allow_const=True):
    terms = {}
    n = ctx.nvars
    for _ in range(nterms):
        d = rng.randint(0 if allow_const else 1, max_deg)
        exps = [0] * n
        for _ in range(d):
            exps[rng.randrange(n)] += 1
        terms[tuple(exps)] = rng.randrange(1, ctx.p)
    return Polynomial(ctx, terms)


def random_nonconstant(ctx, rng, max_deg=3, nterms=3):
    while True:
        f = random_poly(ctx, rng, max_deg, nterms, allow_const=False)
        if f and not f.is_constant():
            return f


def brute_expand(factors):
    """Multiply polynomials by enumerating one term from each factor."""
    ctx = factors[0].ctx
    out = {}
    for choice in itertools.product(*[list(f.terms.items()) for f in factors]):
        exps = tuple(sum(col) for col in zip(*[m for m, _ in choice]))
        c = 1
        for _, v in choice:
            c = c * v % ctx.p
        out[exps] = (out.get(exps, 0) + c) % ctx.p
    return Polynomial(ctx, out)


def monomials_upto(n, d):
    out = []
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _rank_mod_p(M, p):
    M = M.copy() % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i, c]), None)
        if pivot is None:
            continue
        M[[r, pivot]] = M[[pivot, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        nz = np.nonzero(M[:, c])[0]
        for i in nz:
            if i != r:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        r += 1
        if r == rows:
            break
    return r


def macaulay_member(f, gens, degree_bound):
    """f in the F_p-span of {m*g : deg(m*g) <= degree_bound}, by rank comparison.

    One-sided: a True answer is a certificate of membership.
    """
    ctx = f.ctx
    p = ctx.p
    gens = [g for g in gens if g]
    if not f:
        return True
    rows = []
    for g in gens:
        dg = g.degree()
        for m in monomials_upto(ctx.nvars, degree_bound - dg):
            rows.append(g.mul_monomial(m))
    support = sorted({m for r in rows for m in r.terms} | set(f.terms))
    index = {m: i for i, m in enumerate(support)}

    def vec(poly):
        v = np.zeros(len(support), dtype=np.int64)
        for m, c in poly.terms.items():
            v[index[m]] = c
        return v

    if not rows:
        return False
    A = np.array([vec(r) for r in rows], dtype=np.int64)
    rank_a = _rank_mod_p(A, p)
    rank_b = _rank_mod_p(np.vstack([A, vec(f)]), p)
    return rank_a == rank_b


def in_monomial_ideal(f, monomial_gens):
    """Membership in a monomial ideal: every term divisible by some generator."""
    return all(
        any(all(a >= b for a, b in zip(m, g)) for g in monomial_gens) for m in f.terms
    )
