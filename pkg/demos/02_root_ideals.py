"""
Frobenius root ideals
=====================

I_e(J) is the smallest ideal whose q-th Frobenius power contains J.
"""

from frobroot import Ideal, RingContext, frobenius_power, ie_operator

R = RingContext(3, ("x", "y"))
f = R("x^4*y^3 + 2*y^7")
J = Ideal(R, [f, "x^5*y^2"])

for e in (1, 2):
    L = ie_operator(J, e)
    print(f"I_{e}(J) =", L)
    # adjointness: J sits inside L^[q]
    print("  J in L^[q]:", frobenius_power(L, e).contains_ideal(J))

# Composition: two single steps equal one double step
print(ie_operator(J, 2) == ie_operator(ie_operator(J, 1), 1))

# Pulling out a q-th power
a = R("x + y^2")
lhs = ie_operator(Ideal(R, [a.frobenius(3) * f]), 1)
print(lhs, "equals", a, "times", ie_operator(Ideal(R, [f]), 1))
