"""Restrict f >= 0 to the support of g with the sequence inf(f, n|g|).

For step functions the sequence stops moving at a computable index, so the
limit and its integral come out exactly.
"""
from fractions import Fraction as F

from daniell import ElementaryIntegral1D, StepFunction1D, closed_form, extended_integral
from daniell import lemma1_certificate, lemma1_sequence, stationarity_index

leb = ElementaryIntegral1D.lebesgue()
f = StepFunction1D((0, 1, 3), (2, 5))
g = StepFunction1D((F(1, 2), 2, 4), (F(1, 3), -1))

n_star = stationarity_index(f, g)
for n in (1, 2, 4, n_star):
    fn = lemma1_sequence(f, g, n)
    print(f"n={n:2d}  integral={leb(fn)}  values={[str(v) for v in fn.values]}")
print("closed form f on {g != 0}:", closed_form(f, g))
print("extended integral:", extended_integral(leb, lemma1_certificate(f, g)).value)
