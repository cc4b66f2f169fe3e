"""Decide dominated-limit closure membership for subspaces of R^d.

f qualifies when it lies in the span and some element of the span bounds
|f| from above.  The second condition is an exact linear feasibility problem.
"""
from daniell import FiniteFunction, SubspaceBasis, p_closure_membership

cases = [
    ((1, 1, 0), (0, 1, 1)),
    ((1, -1, 0),),
    ((2, 1, -1), (1, 1, 1)),
]
probes = [(1, 2, 1), (1, -1, 0), (0, 0, 0), (1, 0, -2)]
for basis in cases:
    m = SubspaceBasis(tuple(FiniteFunction(b) for b in basis))
    for f in probes:
        w = p_closure_membership(m, FiniteFunction(f))
        verdict = "no" if w is None else "dominated by " + str([str(v) for v in w.dominator(m).values])
        print(f"span{basis}  f={f}:  {verdict}")
