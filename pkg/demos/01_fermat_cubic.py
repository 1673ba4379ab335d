"""
The Fermat cubic in characteristic two
======================================

Walk the whole pipeline on one hypersurface: Frobenius generator,
descending chain, strata, and point queries.
"""

from frobroot import Ideal, PresentedAlgebra, hsl_chain, local_hsl, stratify
from frobroot.frobenius import pe_root_decompose

alg = PresentedAlgebra.from_strings(2, "xyz", ["x^3+y^3+z^3"])
R = alg.ctx
f = R("x^3+y^3+z^3")

# Each term splits as (square) * (basis monomial); the roots generate I_1.
for basis, root in sorted(pe_root_decompose(f, 1).parts.items()):
    print("basis", basis, "root", root)

# For a Gorenstein hypersurface the Frobenius generator is f^(p-1) = f.
chain = hsl_chain(alg, f)
for e, L in enumerate(chain.L):
    print(f"L_{e} = {L}")
print("stabilizes at", chain.stab)

strat = stratify(alg)
print("non-F-injective locus:", strat.merged[0])

###############################################################################
# The cone point has HSL one; points off it are F-injective.
for gens in (["x", "y", "z"], ["x", "y+z"], ["x", "y", "z-1"]):
    P = Ideal(R, gens)
    print(P, "->", local_hsl(strat, P))
