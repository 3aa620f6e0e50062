from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibext.algebra import (
    LeibnizAlgebra,
    LieAlgebra,
    absolutely_irreducible,
    commutant,
    derived_algebra,
    ideal_closure,
    is_simple_leibniz,
    killing_form,
    leibniz_kernel,
    lie_quotient,
    multiplicity,
    validate_leibniz,
)
from leibext.bimodule import LieModule, hom_module
from leibext.catalog import abelian, algebra_from_spec, direct_sum, hemisemidirect, sl2, sl2_irrep
from leibext.exactlin import Mat, Subspace
from oracles import (
    bracket_table,
    brute_leibniz_violations,
    char_irrep,
    char_tensor,
    decompose,
)


def block_sum(a: LieModule, b: LieModule) -> LieModule:
    rho = []
    for ra, rb in zip(a.rho, b.rho):
        ents = {(r, c): v for r, c, v in ra.items()}
        ents.update({(r + a.dim, c + a.dim): v for r, c, v in rb.items()})
        rho.append(Mat(a.dim + b.dim, a.dim + b.dim, ents))
    return LieModule(a.algebra, a.dim + b.dim, rho, name=f"{a.name}+{b.name}")


@pytest.mark.parametrize("spec", ["sl2", "sl2+sl2", "abelian:3", "hemi:sl2:V1", "hemi:sl2:V2", "hemi:sl2:V3"])
def test_catalog_algebras_valid_against_bruteforce(spec):
    h = algebra_from_spec(spec)
    rep = validate_leibniz(h)
    assert rep.ok and rep.checked == h.dim**3
    assert brute_leibniz_violations(bracket_table(h)) == []


@given(
    i=st.integers(0, 4), j=st.integers(0, 4), k=st.integers(0, 4),
    delta=st.integers(-3, 3).filter(bool),
)
@settings(max_examples=40, deadline=None)
def test_validation_matches_bruteforce_on_perturbations(i, j, k, delta):
    h = algebra_from_spec("hemi:sl2:V1")
    br = {key: dict(v) for key, v in h.brackets.items()}
    br.setdefault((i, j), {})
    br[(i, j)][k] = br[(i, j)].get(k, 0) + delta
    bad = LeibnizAlgebra(h.dim, h.labels, br)
    assert list(validate_leibniz(bad).violations) == brute_leibniz_violations(bracket_table(bad))


def test_lie_algebra_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        LieAlgebra(2, ("a", "b"), {(0, 1): {0: 1}})


def test_structure_constants_validation():
    with pytest.raises(ValueError):
        LeibnizAlgebra(2, ("a", "b"), {(0, 2): {0: 1}})
    with pytest.raises(ValueError):
        LeibnizAlgebra(2, ("a",), {})


def test_bracket_bilinear():
    g = sl2()
    assert g.bracket({1: 1}, {0: 1}) == {0: 2}
    assert g.bracket({0: 1, 2: 1}, {0: 1, 2: 1}) == {}
    assert g.bracket({0: Fraction(1, 2)}, {2: 2}) == {1: 1}


def test_leibniz_kernel_and_quotient_of_hemi_v1():
    h = algebra_from_spec("hemi:sl2:V1")
    leib = leibniz_kernel(h)
    assert leib == Subspace.span(5, [{3: 1}, {4: 1}])
    qd = lie_quotient(h)
    assert qd.quotient.same_structure(sl2())
    assert (qd.projection @ qd.section).to_dense() == Mat.identity(3).to_dense()
    assert (qd.projection @ leib.basis).is_zero()


@given(st.integers(1, 5))
@settings(max_examples=5, deadline=None)
def test_hemisemidirect_invariants(m):
    h = hemisemidirect(sl2(), sl2_irrep(m))
    assert leibniz_kernel(h).dim == m + 1
    assert derived_algebra(h).dim == h.dim
    assert lie_quotient(h).quotient.same_structure(sl2())


def test_hemi_v0_is_lie():
    h = hemisemidirect(sl2(), sl2_irrep(0))
    assert leibniz_kernel(h).dim == 0
    assert h.is_antisymmetric()


def test_ideal_closure_two_sided():
    h = algebra_from_spec("hemi:sl2:V1")
    assert ideal_closure(h, Subspace.span(5, [{3: 1}])).dim == 2
    assert ideal_closure(h, Subspace.span(5, [{1: 1}])).dim == 5


def test_killing_form_sl2():
    kf, nondeg = killing_form(sl2())
    assert nondeg
    assert kf.to_dense() == [[0, 0, 4], [0, 8, 0], [4, 0, 0]]
    _, nd = killing_form(abelian(2))
    assert not nd


def test_burnside_on_irreps():
    g = sl2()
    adj = absolutely_irreducible(g.left_mults)
    assert adj.is_yes and adj.closure_dim == 9
    for m in range(0, 5):
        assert absolutely_irreducible(sl2_irrep(m).rho, m + 1).is_yes


def test_burnside_finds_witness_on_sum():
    w = block_sum(sl2_irrep(1), sl2_irrep(2))
    v = absolutely_irreducible(w.rho, 5)
    assert v.status == "no"
    assert v.witness is not None and 0 < v.witness.dim < 5


@given(st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=16, deadline=None)
def test_multiplicities_follow_clebsch_gordan(a, b):
    w = hom_module(sl2_irrep(a), sl2_irrep(b))
    expected = decompose(char_tensor(char_irrep(a), char_irrep(b)))
    total = 0
    for m in range(0, a + b + 1):
        mult = multiplicity(sl2_irrep(m), w)
        assert mult == expected.get(m, 0)
        total += mult * (m + 1)
    assert total == w.dim


def test_commutant_of_irrep_is_scalars():
    assert len(commutant(sl2_irrep(3).rho, 4)) == 1
    assert len(commutant(block_sum(sl2_irrep(1), sl2_irrep(2)).rho, 5)) == 2


@pytest.mark.parametrize(
    "spec,status",
    [
        ("sl2", "simple-certified"),
        ("hemi:sl2:V1", "simple-certified"),
        ("hemi:sl2:V3", "simple-certified"),
        ("sl2+sl2", "not-simple"),
        ("abelian:2", "not-simple"),
        ("hemi:sl2:V2", "not-certified"),
    ],
)
def test_simplicity_verdicts(spec, status):
    assert is_simple_leibniz(algebra_from_spec(spec)).status == status


def test_proper_two_sided_ideal_is_found():
    h = hemisemidirect(sl2(), block_sum(sl2_irrep(1), sl2_irrep(3)))
    v = is_simple_leibniz(h)
    assert v.status == "not-simple"
    assert v.witness is not None and 0 < v.witness.dim < leibniz_kernel(h).dim


def test_direct_sum_labels_and_kernel():
    s = direct_sum(sl2(), sl2())
    assert s.dim == 6 and isinstance(s, LieAlgebra)
    assert leibniz_kernel(s).dim == 0
