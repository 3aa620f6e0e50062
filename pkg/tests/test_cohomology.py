import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibext.algebra import lie_quotient, multiplicity
from leibext.bimodule import Parity, adjoint_bimodule, lift, trivial_bimodule
from leibext.catalog import GuardError, algebra_from_spec, sl2, sl2_irrep
from leibext.cohomology import (
    CECohomology,
    LeibnizCohomology,
    ce_complex,
    ce_dims,
    cochain_action,
    hl,
    hl_dims,
    induced_action_on_hl,
    leibniz_complex,
    leibniz_differential,
)
from leibext.exactlin import Mat
from oracles import bracket_table, ce_dims_dense, hl_dims_dense

H = algebra_from_spec("hemi:sl2:V1")
QD = lie_quotient(H)


def lifted(m, parity):
    if m == 0:
        return trivial_bimodule(H)
    return lift(sl2_irrep(m, QD.quotient), parity, H, QD)


def dense(ops):
    return [a.to_dense() for a in ops]


@pytest.mark.parametrize("m,parity", [(0, "s"), (1, "a"), (1, "s"), (2, "a")])
def test_leibniz_complex_is_complex(m, parity):
    leibniz_complex(H, lifted(m, parity), 3).check()


def test_adjoint_complex_is_complex():
    leibniz_complex(H, adjoint_bimodule(H), 2).check()


@pytest.mark.parametrize("m", range(4))
def test_ce_complex_is_complex(m):
    ce_complex(sl2(), sl2_irrep(m), 3).check()


def test_differential_shapes():
    d = leibniz_differential(H, lifted(1, "a"), 2)
    assert d.shape == (5**3 * 2, 5**2 * 2)


@pytest.mark.parametrize(
    "m,parity",
    [(0, "s"), (1, "a"), (2, "a"), (1, "s"), (2, "s")],
)
def test_hl_matches_functional_oracle(m, parity):
    b = lifted(m, parity)
    c = bracket_table(H)
    assert hl_dims(H, b, 2) == hl_dims_dense(c, dense(b.left), dense(b.right), b.dim, 2)


def test_hl_adjoint_matches_functional_oracle():
    b = adjoint_bimodule(H)
    c = bracket_table(H)
    assert hl_dims(H, b, 1) == hl_dims_dense(c, dense(b.left), dense(b.right), b.dim, 1)


@given(st.integers(0, 4))
@settings(max_examples=5, deadline=None)
def test_ce_matches_functional_oracle(m):
    v = sl2_irrep(m)
    assert ce_dims(sl2(), v, 3) == ce_dims_dense(bracket_table(sl2()), dense(v.rho), v.dim, 3)


def test_ce_trivial_sl2_frozen():
    # third cohomology from the functional oracle: [1, 0, 0, 1]
    assert ce_dims(sl2(), sl2_irrep(0), 3) == [1, 0, 0, 1]
    assert CECohomology(sl2(), sl2_irrep(0)).dim(4) == 0


def test_hl_representatives_are_cocycles():
    b = lifted(1, "a")
    spaces = hl(H, b, 2)
    assert [s.dim for s in spaces] == [2, 1, 0]
    for q, s in enumerate(spaces):
        d = leibniz_differential(H, b, q)
        assert (d @ s.representatives).is_zero()


def test_hl0_is_right_invariants():
    # HL^0(h, M) = {m : [m, x]_R = 0}; for a symmetric nontrivial simple this is 0
    assert hl_dims(H, lifted(2, "s"), 0) == [0]
    assert hl_dims(H, lifted(2, "a"), 0) == [3]


def test_guard_on_large_degree():
    with pytest.raises(GuardError, match="cochain space"):
        hl_dims(H, lifted(10, "a"), 5)
    with pytest.raises(GuardError):
        LeibnizCohomology(H, lifted(10, "a"), max_degree=5)


def test_cochain_action_degree_zero_is_left_action():
    b = lifted(2, "a")
    for x in range(H.dim):
        assert cochain_action(H, b, 0, x) == b.left[x]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_induced_action_on_hl0_and_hl1(m):
    b = lifted(m, "a")
    hl0 = induced_action_on_hl(H, b, 0, QD)
    assert hl0.dim == m + 1
    assert multiplicity(sl2_irrep(m, QD.quotient), hl0) == 1
    hl1 = induced_action_on_hl(H, b, 1, QD)
    assert hl1.dim == (1 if m < 3 else 0)
    assert all(r.is_zero() for r in hl1.rho)


def test_induced_action_zero_space():
    mod = induced_action_on_hl(H, lifted(1, "s"), 1, QD)
    assert mod.dim == 0 and len(mod.rho) == 3
    assert all(r.shape == (0, 0) for r in mod.rho)


def test_space_splitting_coordinates():
    b = lifted(1, "a")
    lc = LeibnizCohomology(H, b)
    sp = lc.space(1)
    rep = sp.representatives
    coords = sp.splitting.coordinates(rep)
    assert coords is not None and coords == Mat.identity(sp.dim)
