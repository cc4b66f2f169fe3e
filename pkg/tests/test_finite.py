from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import finite_functions
from daniell import FiniteFunction, SubspaceBasis, WeightedIntegral, derive_lattice_ops
from daniell import integrate, p_closure_membership, riesz_closure_samples
from daniell.errors import DomainMismatchError, MalformedInputError
from daniell.fme import eliminate, feasible_point

F = Fraction
FF = FiniteFunction


def test_lattice_example():
    s, i = derive_lattice_ops(FF([1, -1]), FF([0, 0]))
    assert s == FF([1, 0]) and i == FF([0, -1])


def test_mismatched_domains():
    with pytest.raises(DomainMismatchError):
        FF([1, 2]) + FF([1])
    with pytest.raises(DomainMismatchError):
        derive_lattice_ops(FF([1]), FF([1, 2]))
    with pytest.raises(DomainMismatchError):
        integrate(WeightedIntegral((1, 1)), FF([1, 2, 3]))


@pytest.mark.parametrize("w, f, expected", [((1, 1), (1, 2), 3), ((2, 3), (0, 0), 0), ((2, 3), (1, 1), 5)])
def test_weighted_sums(w, f, expected):
    assert integrate(WeightedIntegral(w), FF(f)) == expected


def test_negative_weights_need_opt_in():
    with pytest.raises(MalformedInputError):
        WeightedIntegral((1, -1))
    assert WeightedIntegral((1, -1), signed=True)(FF([0, -1])) == 1


def test_membership_examples():
    one = SubspaceBasis((FF([1, 1]),))
    w = p_closure_membership(one, FF([1, 1]))
    assert w is not None and w.verify(one, FF([1, 1]))
    assert abs(FF([1, 1])).leq(w.dominator(one))
    assert p_closure_membership(SubspaceBasis((FF([1, -1]),)), FF([1, -1])) is None
    assert p_closure_membership(one, FF([1, -1])) is None


def test_dependent_basis_rejected():
    with pytest.raises(MalformedInputError):
        SubspaceBasis((FF([1, 2]), FF([2, 4])))


def test_closure_samples():
    assert FF([1, 1]) in riesz_closure_samples(SubspaceBasis((FF([1, -1]),)), 1, 20)
    samples = riesz_closure_samples(SubspaceBasis((FF([1, 1]),)), 0, 10)
    assert FF([1, 1]) in samples
    assert all(s.values[0] == s.values[1] for s in samples)


def test_fme_examples():
    # x <= 2, -x <= -1
    assert feasible_point([((1,), 2), ((-1,), -1)], 1) == (F(1),)
    # x + y <= 1, -x <= -1, -y <= -1
    assert feasible_point([((1, 1), 1), ((-1, 0), -1), ((0, -1), -1)], 2) is None
    projected = eliminate([((F(1), F(1)), F(1)), ((F(-1), F(0)), F(0))], 0)
    assert projected == [((F(0), F(1)), F(1))]


systems = st.integers(1, 3).flatmap(
    lambda nv: st.tuples(
        st.just(nv),
        st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=nv, max_size=nv), st.integers(-3, 3)),
                 min_size=1, max_size=6),
    )
)


@given(systems)
def test_fme_agrees_with_lp_oracle(system):
    scipy_opt = pytest.importorskip("scipy.optimize")
    nv, rows = system
    point = feasible_point(rows, nv)
    if point is not None:
        for coeffs, b in rows:
            assert sum(F(c) * x for c, x in zip(coeffs, point)) <= b
    # maximize slack s subject to A x + s <= b, s <= 1; sign of s decides robust cases
    A = [list(c) + [1] for c, _ in rows] + [[0] * nv + [1]]
    b = [bnd for _, bnd in rows] + [1]
    res = scipy_opt.linprog([0] * nv + [-1], A_ub=A, b_ub=b, bounds=[(None, None)] * (nv + 1))
    slack = -res.fun
    if slack > 1e-7:
        assert point is not None
    elif slack < -1e-7:
        assert point is None


@given(finite_functions(3), finite_functions(3))
def test_lattice_ops_match_coordinatewise(f, g):
    s, i = derive_lattice_ops(f, g)
    assert s.values == tuple(max(a, b) for a, b in zip(f.values, g.values))
    assert i.values == tuple(min(a, b) for a, b in zip(f.values, g.values))
