import random

import pytest

from homnambu import catalog
from homnambu.cohomology import (
    alpha_commuting_maps,
    bracket_to_skew_coords,
    def_coboundary_space,
    deformation_coordinates,
    delta0,
    delta1,
)
from homnambu.core import BracketTensor, LinearMap
from homnambu.deformation import (
    DeformationError,
    DeformationReport,
    FormalAutomorphism,
    FormalDeformation,
    are_equivalent,
    check_deformation,
    compose,
    formal_inverse,
    infinitesimal_class,
    pushforward,
    reduce_step,
    trivialize,
)
from homnambu.sampling import random_algebra, random_bracket, random_formal_automorphism


def abelian_nonabelian(order):
    ab = catalog.abelian((0, 0))
    f1 = BracketTensor(ab.space, 2, {(0, 1): (1, 0)})
    zero = BracketTensor.zero(ab.space, 2)
    return FormalDeformation.from_terms(ab, [f1] + [zero] * (order - 1))


def sl2_pushforward(order, seed):
    s = catalog.sl2()
    P = random_formal_automorphism(s, order, random.Random(seed))
    return pushforward(FormalDeformation.null(s, order), P), P


def test_null_is_valid():
    for alg in catalog.standard().values():
        rep = check_deformation(FormalDeformation.null(alg, 3))
        assert rep.valid and rep.valid_to_order == 3


def test_abelian_nonabelian_valid():
    D = abelian_nonabelian(5)
    assert check_deformation(D).valid_to_order == 5
    f1, ok = infinitesimal_class(D)
    assert ok and f1 == D.terms[1]


def test_sl2_non_cocycle_fails_at_order_one():
    s = catalog.sl2()
    f1 = BracketTensor(s.space, 2, {(0, 1): (1, 0, 0)})
    assert not delta1(s, f1).is_zero()
    rep = check_deformation(FormalDeformation.from_terms(s, [f1, BracketTensor.zero(s.space, 2)]))
    assert rep.valid_to_order == 0
    assert rep.first_failure[0] == 1 and rep.first_failure[1] == "identity"
    assert not rep.valid


def test_alpha_failure_reported():
    s = catalog.sl2(alpha=LinearMap.diagonal(catalog.sl2().space, [-1, -1, 1]))
    f1 = BracketTensor(s.space, 2, {(0, 1): (1, 0, 0)})
    with pytest.raises(DeformationError):
        FormalDeformation.from_terms(s, [f1])
    rep = check_deformation(FormalDeformation.from_terms(s, [f1], strict=False))
    assert rep.first_failure[1] == "alpha"


def test_report_invariant():
    with pytest.raises(ValueError):
        DeformationReport(3, 1, None)
    d = check_deformation(abelian_nonabelian(2)).as_dict()
    assert d == {"order": 2, "valid_to_order": 2, "valid": True}


def test_infinitesimal_of_null():
    f1, ok = infinitesimal_class(FormalDeformation.null(catalog.sl2(), 2))
    assert f1.is_zero() and ok


def test_order_zero_term_must_be_base():
    s = catalog.sl2()
    with pytest.raises(DeformationError):
        FormalDeformation(s, [BracketTensor.zero(s.space, 2)])


def test_formal_inverse_examples():
    s = catalog.sl2()
    I = FormalAutomorphism.identity(s, 4)
    assert formal_inverse(I) == I
    h = alpha_commuting_maps(s)[1]
    r = 2
    P = FormalAutomorphism(s, [LinearMap.identity(s.space), LinearMap.zero(s.space), -h,
                               LinearMap.zero(s.space), LinearMap.zero(s.space)])
    Q = formal_inverse(P)
    assert Q.terms[r] == h and Q.terms[2 * r] == h @ h
    assert Q.terms[1] == LinearMap.zero(s.space) and Q.terms[3] == LinearMap.zero(s.space)
    R = random_formal_automorphism(s, 3, random.Random(2))
    assert compose(R, formal_inverse(R)) == FormalAutomorphism.identity(s, 3)
    assert compose(formal_inverse(R), R) == FormalAutomorphism.identity(s, 3)


def test_pushforward_examples():
    s = catalog.sl2()
    D = FormalDeformation.null(s, 3)
    assert pushforward(D, FormalAutomorphism.identity(s, 3)) == D
    adh = LinearMap.diagonal(s.space, [2, -2, 0])
    zero = LinearMap.zero(s.space)
    P = FormalAutomorphism.from_terms(s, [adh, zero, zero])
    E = pushforward(D, P)
    assert check_deformation(E).valid
    assert are_equivalent(D, E) is not None


def test_pushforward_kills_coboundary_term():
    s = catalog.sl2()
    h = alpha_commuting_maps(s)[4]
    r = 2
    f = delta0(s, h).to_bracket()
    assert not f.is_zero()
    zero = BracketTensor.zero(s.space, 2)
    # valid through order 3: f_2 is a cocycle and no product of nonzero terms appears yet
    D = FormalDeformation.from_terms(s, [zero, f, zero])
    assert check_deformation(D).valid
    zm = LinearMap.zero(s.space)
    P = FormalAutomorphism.from_terms(s, [zm, -h, zm])
    E = pushforward(D, P)
    assert all(E.terms[i].is_zero() for i in range(1, r + 1))


def test_pushforward_round_trip():
    for seed in range(5):
        smp = random_algebra(random.Random(seed), max_dim=3)
        D = FormalDeformation.null(smp.alg, 3)
        P = random_formal_automorphism(smp.alg, 3, random.Random(seed + 100))
        E = pushforward(D, P)
        assert pushforward(E, formal_inverse(P)) == D


def test_are_equivalent_examples():
    D, P = sl2_pushforward(3, 4)
    assert are_equivalent(D, D) is not None
    null = FormalDeformation.null(catalog.sl2(), 3)
    W = are_equivalent(null, D)
    assert W is not None
    assert pushforward(D, W) == null
    assert are_equivalent(FormalDeformation.null(catalog.abelian((0, 0)), 1), abelian_nonabelian(1)) is None


def test_reduce_step_examples():
    step = reduce_step(FormalDeformation.null(catalog.sl2(), 2))
    assert step.status == "trivial" and not step
    D, _ = sl2_pushforward(3, 9)
    step = reduce_step(D)
    assert step.status == "reduced"
    low = [i for i in range(1, 4) if not step.deformation.terms[i].is_zero()]
    assert not low or low[0] > step.order
    obs = reduce_step(abelian_nonabelian(2))
    assert obs.status == "obstructed" and obs.order == 1


def test_reduce_rejects_non_cocycle():
    s = catalog.sl2()
    f1 = BracketTensor(s.space, 2, {(0, 1): (1, 0, 0)})
    with pytest.raises(DeformationError):
        reduce_step(FormalDeformation.from_terms(s, [f1]))


def test_trivialize_examples():
    null = FormalDeformation.null(catalog.sl2(), 3)
    assert trivialize(null) == FormalAutomorphism.identity(catalog.sl2(), 3)
    for seed in range(3):
        D, _ = sl2_pushforward(4, seed)
        W = trivialize(D)
        assert W is not None
        assert pushforward(D, W).is_null()
    assert trivialize(abelian_nonabelian(3)) is None


def test_trivialize_rejects_invalid():
    s = catalog.sl2()
    f1 = BracketTensor(s.space, 2, {(0, 1): (1, 0, 0)})
    with pytest.raises(DeformationError):
        trivialize(FormalDeformation.from_terms(s, [f1]))


def test_equivalent_infinitesimals_cohomologous():
    for seed in range(4):
        smp = random_algebra(random.Random(seed), max_dim=3)
        alg = smp.alg
        D = FormalDeformation.null(alg, 2)
        E = pushforward(D, random_formal_automorphism(alg, 2, random.Random(seed)))
        diff = E.terms[1] - D.terms[1]
        coords = deformation_coordinates(alg)
        assert def_coboundary_space(alg).contains(bracket_to_skew_coords(alg, coords, diff))


def test_valid_deformation_has_cocycle_infinitesimal():
    for seed in range(6):
        D, _ = sl2_pushforward(2, seed)
        assert infinitesimal_class(D)[1]
    # an arbitrary bracket perturbation usually is not valid; when it is, f1 is a cocycle
    rng = random.Random(1)
    s = catalog.sl2()
    for _ in range(10):
        f1 = random_bracket(s.space, 2, rng)
        D = FormalDeformation.from_terms(s, [f1])
        if check_deformation(D).valid_to_order >= 1:
            assert infinitesimal_class(D)[1]
