import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homnambu import catalog
from homnambu.axioms import is_valid
from homnambu.cohomology import (
    Cochain,
    CohomologyError,
    alpha_commuting_maps,
    bracket_to_skew_coords,
    coboundary_space,
    cocycle_space,
    cohomology_dim,
    compatible_cochain_basis,
    def_coboundary_space,
    def_cocycle_space,
    def_cohomology_dim,
    deformation_coordinates,
    delta0,
    delta1,
    delta1_vs_delta_m,
    delta_m,
    is_rigid,
    rigidity_report,
    skew_coords_to_bracket,
)
from homnambu.constructions import direct_sum, yau_twist
from homnambu.core import BracketTensor, LinearMap, SuperSpace
from homnambu.sampling import random_algebra, random_cochain, random_even_map

from oracles import ce_h2_adjoint, rank, structure_constants


def sl2_twisted():
    s = catalog.sl2()
    return yau_twist(s, LinearMap.diagonal(s.space, [2, Fraction(1, 2), 1]))


def test_algebras():
    out = list(catalog.standard().values())
    out.append(sl2_twisted())
    a = catalog.super_1_1()
    out.append(yau_twist(a, LinearMap.diagonal(a.space, [1, 3])))
    return out


test_algebras.__test__ = False


def test_delta0_examples():
    ab = catalog.abelian((0, 0, 1))
    assert delta0(ab, random_even_map(ab.space, random.Random(1))).is_zero()
    s = catalog.sl2()
    adh = LinearMap.diagonal(s.space, [2, -2, 0])
    assert delta0(s, adh).is_zero()
    phi = LinearMap.diagonal(s.space, [0, 0, 1])
    F = delta0(s, phi).to_bracket()
    assert F.value((0, 1)) == (0, 0, -1)


def test_delta0_needs_alpha_commuting_map():
    s = sl2_twisted()
    with pytest.raises(CohomologyError):
        delta0(s, LinearMap(s.space, [[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


def test_delta1_examples():
    for alg in test_algebras():
        assert delta1(alg, alg.bracket).is_zero(), alg.name
    s = catalog.sl2()
    for phi in alpha_commuting_maps(s):
        assert delta1(s, delta0(s, phi)).is_zero()
    ab = catalog.abelian((0, 0))
    f = BracketTensor(ab.space, 2, {(0, 1): (1, 0)})
    assert delta1(ab, f).is_zero()


def test_delta_m_examples():
    ab = catalog.abelian((0, 0, 1), 3)
    f = random_cochain(ab, 1, 0, random.Random(3), alpha_compat=False)
    assert delta_m(ab, f).is_zero()
    s = catalog.sl2()
    b = Cochain.from_bracket(s, s.bracket)
    assert delta_m(s, b).is_zero()
    assert delta1(s, b).is_zero()


def test_delta_m_level0_matches_delta0():
    for alg in test_algebras():
        for phi in alpha_commuting_maps(alg, 0):
            assert delta_m(alg, Cochain.from_map(alg, phi)) == delta0(alg, phi)


def test_delta1_matches_generic_kernel():
    for alg in test_algebras():
        for p in (0, 1):
            rep = delta1_vs_delta_m(alg, p)
            assert rep["same_kernel"], (alg.name, p)


def test_def_space_examples():
    ab2 = catalog.abelian((0, 0))
    assert def_cocycle_space(ab2).dim == 2
    assert def_coboundary_space(ab2).dim == 0
    assert def_cohomology_dim(ab2) == 2
    assert not is_rigid(ab2)
    ab1 = catalog.abelian((0,))
    assert def_cocycle_space(ab1).dim == 0
    assert def_cohomology_dim(ab1) == 0
    assert is_rigid(ab1)
    s = catalog.sl2()
    assert def_cohomology_dim(s) == 0
    assert is_rigid(s)
    # Z = B = 9 - 3 (all of gl(3) minus the derivations), confirmed by the CE oracle below
    assert def_cocycle_space(s).dim == 6
    assert def_coboundary_space(s).dim == 6


def test_super11_coboundaries_are_delta0_rank():
    a = catalog.super_1_1()
    for p in (0, 1):
        coords = deformation_coordinates(a, p)
        images = [bracket_to_skew_coords(a, coords, delta0(a, phi).to_bracket())
                  for phi in alpha_commuting_maps(a, p)]
        assert def_coboundary_space(a, p).dim == (rank(images) if images else 0)


def test_rigidity_report_values():
    expected = {
        "abelian2": (2, 0), "sl2": (6, 6), "aff1": (2, 2), "heisenberg": (8, 3),
        "super11": (1, 1), "super12": (3, 3), "A4": (10, 10), "ternary21": (1, 1),
    }
    algs = catalog.standard()
    for name, (Z, B) in expected.items():
        rep = rigidity_report(algs[name])
        assert (rep["even"]["Z"], rep["even"]["B"]) == (Z, B), name
    rep = rigidity_report(algs["super12"])
    assert rep["odd"] == {"Z": 4, "B": 2, "H": 2}
    assert rep["rigid"]


def test_ce_oracle_agreement():
    algs = [a for a in catalog.standard().values()
            if a.arity == 2 and not any(a.parity) and a.alpha == LinearMap.identity(a.space)]
    algs.append(direct_sum(catalog.sl2(), catalog.abelian((0,))))
    algs.append(direct_sum(catalog.affine_line(), catalog.affine_line()))
    for alg in algs:
        Z, B, H = ce_h2_adjoint(structure_constants(alg))
        assert def_cocycle_space(alg).dim == Z, alg.name
        assert def_coboundary_space(alg).dim == B, alg.name
        assert def_cohomology_dim(alg) == H, alg.name


def test_coboundaries_inside_cocycles():
    for alg in test_algebras():
        for p in (0, 1):
            Z, B = def_cocycle_space(alg, p), def_coboundary_space(alg, p)
            assert B.is_subspace_of(Z)


def test_skew_coordinate_round_trip():
    s = catalog.sl2()
    coords = deformation_coordinates(s)
    v = bracket_to_skew_coords(s, coords, s.bracket)
    assert skew_coords_to_bracket(s, coords, v) == s.bracket


def test_cochain_parity_checked():
    a = catalog.super_1_1()
    vals = np.zeros((2, 2, 2), dtype=object)
    vals[0, 0, 0] = 1  # (x; x) -> x is even data
    Cochain(a, 1, vals, 0)
    with pytest.raises(CohomologyError):
        Cochain(a, 1, vals, 1)


def test_generic_complex_dims():
    s = catalog.sl2()
    assert cohomology_dim(s, 1) == {"Z": 6, "B": 6, "H": 0}
    assert cohomology_dim(s, 2) == {"Z": 21, "B": 21, "H": 0}
    assert coboundary_space(s, 0).dim == 0
    with pytest.raises(CohomologyError):
        cocycle_space(s, 9)


def test_delta_squared_needs_compatible_cochains():
    # outside the alpha-compatible cochains the square of the operator need not vanish
    s = sl2_twisted()
    basis = compatible_cochain_basis(s, 0, 0, alpha_compat=False)
    bad = 0
    for b in range(basis.shape[0]):
        f = Cochain(s, 0, basis[b], 0)
        bad += not delta_m(s, delta_m(s, f)).is_zero()
    assert bad > 0
    for b in compatible_cochain_basis(s, 0, 0):
        f = Cochain(s, 0, b, 0)
        assert delta_m(s, delta_m(s, f)).is_zero()


def test_delta1_delta0_exhaustive():
    for alg in test_algebras():
        for p in (0, 1):
            for phi in alpha_commuting_maps(alg, p):
                assert delta1(alg, delta0(alg, phi)).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([1, 2]), st.sampled_from([0, 1]))
def test_delta_squared_zero(seed, level, parity):
    rng = random.Random(seed)
    alg = random_algebra(rng, max_dim=3).alg
    if alg.arity == 3 and level == 2 and alg.dim == 3:
        level = 1  # keep the example fast; level 2 is covered in the acceptance suite
    f = random_cochain(alg, level, parity, rng)
    assert f.is_alpha_compatible()
    assert delta_m(alg, delta_m(alg, f)).is_zero()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_bracket_is_cocycle(seed):
    alg = random_algebra(random.Random(seed), max_dim=3).alg
    assert is_valid(alg)
    assert delta1(alg, alg.bracket).is_zero()
