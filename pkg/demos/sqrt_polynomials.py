"""Build |f| from f^2 with the polynomials p_1 = 0, p_{n+1} = (t - p_n^2)/2 + p_n.

On [0, 1] they climb monotonically to sqrt(t): quadratically at t = 1, only
linearly near t = 0.
"""
from fractions import Fraction as F

from daniell import FiniteFunction, abs_certificate, evaluate, sqrt_iterates, sqrt_polynomial

for n in range(1, 5):
    print(f"p_{n} coefficients:", [str(c) for c in sqrt_polynomial(n).coefficients])

for t in (F(1), F(1, 4), F(1, 256)):
    values = sqrt_iterates(t, 20)
    print(f"t={t}:  p_5={float(values[4]):.6f}  p_20={float(values[-1]):.6f}")

f = FiniteFunction([F(3, 4), -1, F(-1, 2)])
cert = abs_certificate(f, 1)
print("|f| recovered:", [round(float(evaluate(cert, z, F(1, 10**4)).value), 4) for z in range(3)])
