"""Integrate 2-D step functions by iterating two 1-D integrals.

The product integral of f(x)g(y) splits into J(f)K(g), and on anything built
from such products by lattice operations both iteration orders agree.
"""
from fractions import Fraction as F

from daniell import ElementaryIntegral1D, ProductIntegral, StepFunction1D, TensorElement
from daniell import flatten, iterated_integral, riesz_closure_corpus, theorem1_residual

ind = StepFunction1D.indicator
J = ElementaryIntegral1D.lebesgue()
K = ElementaryIntegral1D.stieltjes((0, 1, 3), (2, F(1, 2)))   # density 2, then 1/2

f = StepFunction1D((0, 1, 2), (1, -3))
g = ind(F(1, 2), 3, F(2, 3))
print("J(f) =", J(f), " K(g) =", K(g))
print("residual I(f(x)g) - J(f)K(g) =", theorem1_residual(J, K, f, g))

t = TensorElement(((f, g), (ind(0, 3), ind(0, 1, -1))))
grid = flatten(t)
print("x cuts:", [str(b) for b in grid.x_breakpoints], " y cuts:", [str(b) for b in grid.y_breakpoints])
I = ProductIntegral(J, K)
print("I(t) =", I(grid), " I(|t|) =", I(abs(grid)))

corpus = riesz_closure_corpus([t], depth=2, budget=40)
same = all(iterated_integral(J, K, h, "xy") == iterated_integral(J, K, h, "yx") for h in corpus)
print(f"{len(corpus)} lattice combinations, both orders agree: {same}")
