"""Approximate |f| for f = sum g_i(x)h_i(y) by a finite sum of products.

Each factor's domain is cut into cells where floor(n g_i / g) is constant.
The absolute value of the resulting sum stays within 2k/n of |f|, measured
relative to the dominator g(x)h(y).
"""
from fractions import Fraction as F

from daniell import ElementaryIntegral1D, ProductIntegral, StepFunction1D, TensorElement
from daniell import extended_integral, flatten, lemma6_abs_certificate, lemma6_approximation

ind = StepFunction1D.indicator
t = TensorElement((
    (StepFunction1D((0, 1, 2), (1, F(1, 3))), ind(0, 2)),
    (ind(F(1, 2), 2, 2), StepFunction1D((0, 1, 2), (-1, F(1, 4)))),
))

print(" n   cells  achieved  allowed")
for n in (1, 2, 4, 8, 16, 64):
    approx = lemma6_approximation(t, n)
    b = approx.check_bounds()
    print(f"{n:3d}  {len(approx.x_cells):2d}x{len(approx.y_cells):<2d}  {float(b.achieved):8.5f}  {float(b.allowed):7.4f}")

I = ProductIntegral(ElementaryIntegral1D.lebesgue(), ElementaryIntegral1D.lebesgue())
exact = I(abs(flatten(t)))
approx = extended_integral(I, lemma6_abs_certificate(t), F(1, 10**6))
print("exact I(|f|) =", exact, "  from the approximating sequence:", float(approx.value))
