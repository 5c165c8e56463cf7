"""Named example algebras used by the tests, the benchmarks and the corpus."""
from __future__ import annotations

from .core import BracketTensor, HomNambuSuperalgebra, LinearMap, SuperSpace


def _alg(name, parity, arity, entries, alpha=None):
    space = SuperSpace(parity)
    d = space.dim

    def vec(pairs):
        v = [0] * d
        for k, c in pairs.items():
            v[k] = c
        return v

    bracket = BracketTensor.from_entries(space, arity, [(t, vec(val)) for t, val in entries])
    if alpha is not None and not isinstance(alpha, LinearMap):
        alpha = LinearMap(space, alpha)
    return HomNambuSuperalgebra(space, arity, bracket, alpha, name=name)


def abelian(parity=(0, 0), arity: int = 2, alpha=None) -> HomNambuSuperalgebra:
    return _alg("abelian", parity, arity, [], alpha)


def sl2(alpha=None) -> HomNambuSuperalgebra:
    """sl(2) on the basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return _alg("sl2", (0, 0, 0), 2, [
        ((0, 1), {2: 1}),
        ((2, 0), {0: 2}),
        ((2, 1), {1: -2}),
    ], alpha)


def affine_line() -> HomNambuSuperalgebra:
    """The 2-dim non-abelian Lie algebra [e0, e1] = e1."""
    return _alg("aff1", (0, 0), 2, [((0, 1), {1: 1})])


def heisenberg() -> HomNambuSuperalgebra:
    """[e0, e1] = e2."""
    return _alg("heisenberg", (0, 0, 0), 2, [((0, 1), {2: 1})])


def super_1_1() -> HomNambuSuperalgebra:
    """The (1|1) superalgebra with x even, y odd and [x, y] = y."""
    return _alg("super11", (0, 1), 2, [((0, 1), {1: 1})])


def super_1_1_square() -> HomNambuSuperalgebra:
    """The (1|1) superalgebra with [y, y] = x."""
    return _alg("super11sq", (0, 1), 2, [((1, 1), {0: 1})])


def super_1_2() -> HomNambuSuperalgebra:
    """(1|2) with a central even x and [y1, y1] = [y2, y2] = x, [y1, y2] = 0."""
    return _alg("super12", (0, 1, 1), 2, [((1, 1), {0: 1}), ((2, 2), {0: 1})])


def simple_3lie(alpha=None) -> HomNambuSuperalgebra:
    """The 4-dim simple 3-Lie algebra [e_i, e_j, e_k] = eps_ijkl e_l."""
    return _alg("A4", (0, 0, 0, 0), 3, [
        ((0, 1, 2), {3: 1}),
        ((0, 1, 3), {2: -1}),
        ((0, 2, 3), {1: 1}),
        ((1, 2, 3), {0: -1}),
    ], alpha)


def ternary_3d() -> HomNambuSuperalgebra:
    """3-dim 3-Lie algebra [e0, e1, e2] = e0."""
    return _alg("ternary3", (0, 0, 0), 3, [((0, 1, 2), {0: 1})])


def ternary_super() -> HomNambuSuperalgebra:
    """(2|1) ternary superalgebra with [x0, x1, y] = y."""
    return _alg("ternary21", (0, 0, 1), 3, [((0, 1, 2), {2: 1})])


def ternary_odd() -> HomNambuSuperalgebra:
    """(0|2) ternary superalgebra with [y1, y1, y1] = y0."""
    return _alg("ternary02", (1, 1), 3, [((1, 1, 1), {0: 1})])


def standard() -> dict[str, HomNambuSuperalgebra]:
    """All named algebras, keyed by name."""
    algs = [
        abelian((0,)),
        abelian((0, 0)),
        sl2(),
        affine_line(),
        heisenberg(),
        super_1_1(),
        super_1_1_square(),
        super_1_2(),
        simple_3lie(),
        simple_3lie(alpha=LinearMap.scalar(SuperSpace.even(4), -1)),
        ternary_3d(),
        ternary_super(),
        ternary_odd(),
    ]
    names = ["abelian1", "abelian2", "sl2", "aff1", "heisenberg", "super11", "super11sq",
             "super12", "A4", "A4_minus", "ternary3", "ternary21", "ternary02"]
    for name, a in zip(names, algs):
        a.name = name
    return dict(zip(names, algs))
