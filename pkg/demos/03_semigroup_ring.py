"""
A non-Gorenstein curve
======================

k[t^3, t^4, t^5] is Cohen-Macaulay but not Gorenstein, so the canonical
ideal must be supplied.  Compare characteristics 2 and 3.
"""

from frobroot import PresentedAlgebra, f_injective_locus, frobenius_module_generators, stratify

J = ["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]
omega = ["x", "y", "z^2"]  # preimage of (t^3, t^4)

for p in (2, 3):
    alg = PresentedAlgebra.from_strings(p, "xyz", J, omega)
    gens = frobenius_module_generators(alg, 1)
    print(f"p = {p}: Frobenius generator {gens[0]}")
    s = stratify(alg)
    for e, Z in enumerate(s.merged):
        print(f"  Z_{e} = {Z}")
    print("  global bound", s.global_bound)
    print("  F-injective locus complement:", f_injective_locus(alg, strat=s))
