"""HSL numbers of top local cohomology and the stratification of Spec(A) by them.

Setting: B = A/J with A = F_p[x_1..x_n], and Omega ⊆ A the preimage of a
canonical ideal of B (Omega = (1) when B is Gorenstein).  The Frobenius
maps on the top local cohomology of B at a prime are given by the module

    U_(e) = ((J^[q] : J) ∩ (Omega^[q] : Omega)) / J^[q],    q = p^e,

which is locally principal.  On the open set where a generator u of U_(1)
generates it, the HSL number is the first e with L_e = L_{e+1}, where

    L_e = I_e(u^(nu_e) * Omega),   nu_e = 1 + p + ... + p^(e-1),  nu_0 = 0.

The chain is computed through L_{e+1} = I_1(u * L_e), which follows from
I_e(a^(p^e) M) = a I_e(M) and I_{e+1} = I_1 ∘ I_e.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .frobenius import frobenius_power, ie_operator
from .idealops import (
    Ideal,
    ideal_colon,
    ideal_intersection,
    ideal_saturation,
    intersect_all,
    minors_ideal,
    syzygies,
)
from .ringcore import Polynomial, RingContext

log = logging.getLogger(__name__)

DEFAULT_MAX_E = 10

CAVEAT_CM = (
    "unchecked hypothesis: B = A/J is a Cohen-Macaulay domain and Omega is the "
    "preimage of a canonical ideal of B"
)
CAVEAT_RADICAL = "merged loci Z_e are correct up to radical"
CAVEAT_OVERRIDE = (
    "u was supplied explicitly: results are valid only where u generates the "
    "module of Frobenius maps"
)


class CoverIncomplete(Exception):
    """The generator charts do not cover Spec(A): U_(1) is not locally principal."""

    def __init__(self, generators, cover):
        self.generators = generators
        self.cover = cover
        super().__init__(
            "sum of the chart ideals is not the unit ideal; the Frobenius-map module "
            "is not locally principal (input violates the Cohen-Macaulay domain / "
            "canonical ideal hypotheses)"
        )


class UNotInModule(ValueError):
    """u is not in (J^[p] : J) ∩ (Omega^[p] : Omega)."""


class NoChart(AssertionError):
    """No chart contains the prime; impossible once the cover is verified."""


class ChainPersistenceError(AssertionError):
    """L_e = L_{e+1} was detected but L_{e+1} != L_{e+2}."""


@dataclass
class PresentedAlgebra:
    ctx: RingContext
    J: Ideal
    omega: Ideal
    gorenstein: bool = False
    u_override: Polynomial | None = None

    def __post_init__(self):
        if self.gorenstein and not self.omega.is_unit():
            raise ValueError("gorenstein algebras must have Omega = (1)")
        if not self.omega.contains_ideal(self.J):
            raise ValueError("J must be contained in Omega")
        if self.u_override is not None and not module_ideal(self, 1).contains(self.u_override):
            raise UNotInModule(f"u = {self.u_override} is not in (J^[p]:J) ∩ (Omega^[p]:Omega)")

    @classmethod
    def from_strings(cls, p, vars, J, omega="gorenstein", u=None, order="grevlex"):
        """Build from expression strings; ``omega`` is a list or ``"gorenstein"``."""
        ctx = RingContext(p, tuple(vars), order)
        Jideal = Ideal(ctx, J)
        if omega == "gorenstein":
            return cls(ctx, Jideal, Ideal.unit(ctx), True, ctx(u) if u is not None else None)
        return cls(ctx, Jideal, Ideal(ctx, omega), False, ctx(u) if u is not None else None)


@dataclass
class HSLChain:
    u: Polynomial
    p: int
    nu: list
    L: list
    stab: int | None
    max_e: int

    @property
    def stabilized(self) -> bool:
        return self.stab is not None


@dataclass
class Chart:
    index: int
    g: Polynomial
    m: Ideal
    chain: HSLChain
    K: list


@dataclass
class Stratification:
    algebra: PresentedAlgebra
    charts: list
    merged: list
    global_bound: int | None
    status: str = "ok"
    caveats: list = field(default_factory=list)


# -- Frobenius-map module --------------------------------------------------------

def module_ideal(alg: PresentedAlgebra, e: int) -> Ideal:
    """V_e = (J^[q] : J) ∩ (Omega^[q] : Omega)."""
    Jq = frobenius_power(alg.J, e)
    V = ideal_colon(Jq, alg.J)
    if not alg.omega.is_unit():
        V = ideal_intersection(V, ideal_colon(frobenius_power(alg.omega, e), alg.omega))
    return V


def frobenius_module_generators(alg: PresentedAlgebra, e: int) -> list:
    """Generators of U_(e) = V_e / J^[q], as normal forms modulo J^[q].

    Generators vanishing modulo J^[q], or lying in J^[q] plus the ones
    already kept, are dropped.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    Jq = frobenius_power(alg.J, e)
    V = module_ideal(alg, e)
    cands = []
    for g in V.gb():
        r = Jq.reduce(g).monic()
        if r and r not in cands:
            cands.append(r)
    cands.sort(key=lambda f: (f.degree(), len(f), f.ctx.mon_key(f.lm())))
    kept = []
    for g in cands:
        if not Ideal(alg.ctx, Jq.gens + tuple(kept)).contains(g):
            kept.append(g)
    return kept


def cover_from_generators(gens, modulo: Ideal) -> list:
    """Charts (g_i, m_i) for the module generated by ``gens`` modulo an ideal.

    m_i is the ideal of (s-1)-minors of the relation matrix with row i
    deleted; g_i generates the module exactly off V(m_i).
    """
    ctx = modulo.ctx
    s = len(gens)
    if s == 0:
        raise CoverIncomplete([], [])
    if s == 1:
        return [(gens[0], Ideal.unit(ctx))]
    rel = syzygies(gens, modulo).matrix()
    cover = []
    for i in range(s):
        m = minors_ideal(rel.delete_row(i), s - 1)
        m.gb()
        cover.append((gens[i], m))
    total = Ideal(ctx, [g for _, m in cover for g in m.gens])
    if not total.is_unit():
        raise CoverIncomplete(list(gens), cover)
    return cover


def generator_cover(alg: PresentedAlgebra) -> list:
    gens = frobenius_module_generators(alg, 1)
    return cover_from_generators(gens, frobenius_power(alg.J, 1))


# -- HSL chains -----------------------------------------------------------------

def nu(p: int, e: int) -> int:
    return (p**e - 1) // (p - 1)


def chain_term(alg: PresentedAlgebra, u: Polynomial, e: int) -> Ideal:
    """L_e = I_e(u^(nu_e) * Omega) straight from the definition."""
    if e == 0:
        return alg.omega
    w = u ** nu(alg.ctx.p, e)
    return ie_operator(Ideal(alg.ctx, [w * g for g in alg.omega.gens]), e)


def _next_term(u: Polynomial, L: Ideal) -> Ideal:
    return ie_operator(Ideal(L.ctx, [u * g for g in L.gb()]), 1)


def hsl_chain(alg: PresentedAlgebra, u: Polynomial, max_e: int = DEFAULT_MAX_E,
              check_u: bool = True) -> HSLChain:
    """Compute L_0, L_1, ... until two consecutive terms agree or ``max_e`` is hit.

    ``stab`` is the first e with L_e = L_{e+1}; the term after that is
    recomputed and must agree as well.
    """
    if max_e < 1:
        raise ValueError("max_e must be >= 1")
    u = alg.ctx(u)
    if check_u and not module_ideal(alg, 1).contains(u):
        raise UNotInModule(f"u = {u} is not in (J^[p]:J) ∩ (Omega^[p]:Omega)")
    p = alg.ctx.p
    L = [alg.omega]
    stab = None
    for e in range(max_e):
        nxt = _next_term(u, L[-1])
        if not L[-1].contains_ideal(nxt):
            raise AssertionError(f"chain is not descending at e = {e + 1}")
        L.append(nxt)
        if nxt == L[-2]:
            stab = e
            if _next_term(u, nxt) != nxt:
                raise ChainPersistenceError(f"chain left its stable value after e = {e}")
            break
    nus = [nu(p, e) for e in range(len(L))]
    if stab is None:
        log.info("chain for u = %s did not stabilise within %d steps", u, max_e)
    return HSLChain(u, p, nus, L, stab, max_e)


def strata_ideals(chain: HSLChain) -> list:
    """K_e = (L_{e+1} : L_e); V(K_e) is where the local HSL number exceeds e."""
    last = chain.stab if chain.stab is not None else len(chain.L) - 2
    return [ideal_colon(chain.L[e + 1], chain.L[e]) for e in range(last + 1)]


# -- stratification -------------------------------------------------------------

def _build_chart(alg, index, g, m, max_e):
    chain = hsl_chain(alg, g, max_e, check_u=False)
    return Chart(index, g, m, chain, strata_ideals(chain))


def stratify(alg: PresentedAlgebra, max_e: int = DEFAULT_MAX_E, threads: int = 1,
             cover: list | None = None) -> Stratification:
    """Charts, HSL chains and strata for every generator of U_(1), merged globally.

    Z_e = J + ∩_i (K_e^(i) : m_i^∞) cuts out, up to radical, the primes of
    V(J) whose HSL number is at least e + 1.  An explicit ``cover`` of
    (g_i, m_i) pairs replaces the computed one.
    """
    ctx = alg.ctx
    caveats = [CAVEAT_CM, CAVEAT_RADICAL]
    if cover is not None:
        cover = list(cover)
    elif alg.u_override is not None:
        cover = [(alg.u_override, Ideal.unit(ctx))]
        caveats.append(CAVEAT_OVERRIDE)
    else:
        cover = generator_cover(alg)

    jobs = [(alg, i, g, m, max_e) for i, (g, m) in enumerate(cover)]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            charts = list(pool.map(lambda a: _build_chart(*a), jobs))
    else:
        charts = [_build_chart(*a) for a in jobs]

    stabilized = all(c.chain.stab is not None for c in charts)
    if stabilized:
        global_bound = max(c.chain.stab for c in charts)
        depth = global_bound
    else:
        global_bound = None
        depth = max_e
    unit = Ideal.unit(ctx)
    merged = []
    for e in range(depth):
        local = []
        for c in charts:
            K = c.K[e] if e < len(c.K) else unit
            local.append(ideal_saturation(K, c.m))
        Z = intersect_all(ctx, local) + alg.J
        Z.gb()
        merged.append(Z)
    status = "ok" if stabilized else "no_stabilization"
    return Stratification(alg, charts, merged, global_bound, status, caveats)


def _outside(I: Ideal, P: Ideal) -> bool:
    # I ⊄ P
    return not P.contains_ideal(I)


def local_hsl(strat: Stratification, P: Ideal, chart: int | None = None) -> int | None:
    """HSL number of the top local cohomology of B at the prime P.

    Returns None when the relevant chart's chain did not stabilise before
    the HSL index was reached.  P is assumed prime.
    """
    if P.is_unit():
        raise ValueError("P must be a proper ideal")
    if _outside(strat.algebra.J, P):
        return 0
    if chart is None:
        for c in strat.charts:
            if _outside(c.m, P):
                break
        else:
            raise NoChart("no chart contains the prime")
    else:
        c = strat.charts[chart]
        if not _outside(c.m, P):
            raise NoChart(f"chart {chart} does not contain the prime")
    for e, K in enumerate(c.K):
        if _outside(K, P):
            return e
    return None


def f_injective_locus(alg: PresentedAlgebra, max_e: int = DEFAULT_MAX_E,
                      strat: Stratification | None = None) -> Ideal:
    """Ideal whose vanishing locus is the non-F-injective set (up to radical)."""
    if strat is None:
        strat = stratify(alg, max_e)
    if not strat.merged:
        return Ideal.unit(alg.ctx)
    return strat.merged[0]
