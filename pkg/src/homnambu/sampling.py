"""Random generators for property tests, benchmarks and the acceptance suite.

Verified random algebras are built from small seed algebras in three steps:
twist by a diagonal endomorphism found by search, then conjugate by a random
unimodular even change of basis. Both steps preserve the axioms, so no
rejection sampling is needed. Endomorphisms of the result are the conjugated
diagonal endomorphisms of the seed, which all commute with the new alpha.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


from . import catalog
from .cohomology import Cochain, alpha_commuting_maps, compatible_cochain_basis
from .constructions import is_morphism
from .core import (
    BracketTensor,
    HomNambuSuperalgebra,
    LinearMap,
    SuperSpace,
    apply_output,
    apply_slot,
    canonical_tuples,
    tuple_parity,
    zeros,
)

__all__ = [
    "Sample",
    "seed_algebras",
    "diagonal_endomorphisms",
    "random_unimodular",
    "conjugate",
    "random_algebra",
    "random_even_map",
    "random_bracket",
    "corrupt",
    "random_cochain",
    "random_formal_automorphism",
]

DIAGONAL_VALUES = (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, Fraction(1, 3))


def _abelian(parity, arity):
    a = catalog.abelian(parity, arity)
    a.name = f"abelian{len(parity)}_{''.join(map(str, parity))}_n{arity}"
    return a


def _extra_ternary():
    return [
        catalog._alg("ternary011", (0, 1, 1), 3, [((2, 2, 2), {1: 1})]),
        catalog._alg("ternary001", (0, 0, 1), 3, [((1, 2, 2), {0: 1})]),
    ]


@lru_cache(maxsize=None)
def _seeds(max_dim: int, arities: tuple) -> tuple:
    out = []
    named = catalog.standard()
    for a in list(named.values()) + _extra_ternary():
        if a.dim <= max_dim and a.arity in arities and a.name != "A4_minus":
            out.append(a)
    for n in arities:
        for parity in [(0,), (0, 0), (0, 1), (0, 0, 1), (0, 1, 1)]:
            if len(parity) <= max_dim:
                out.append(_abelian(parity, n))
    return tuple(out)


def seed_algebras(max_dim: int = 3, arities=(2, 3)) -> list[HomNambuSuperalgebra]:
    return list(_seeds(max_dim, tuple(arities)))


@lru_cache(maxsize=None)
def _diag_cache(key):
    alg = _seed_by_key[key]
    entries = list(alg.bracket.items())
    A = alg.alpha.matrix
    found = []
    for vals in itertools.product(DIAGONAL_VALUES, repeat=alg.dim):
        # a diagonal map scales [e_t] by prod(vals[t]) and e_k by vals[k]
        ok = all(vals[k] * x == x * _prod(vals[i] for i in t)
                 for t, v in entries for k, x in enumerate(v) if x != 0)
        ok = ok and all(A[i, j] == 0 or vals[i] == vals[j]
                        for i in range(alg.dim) for j in range(alg.dim))
        if ok:
            f = LinearMap.diagonal(alg.space, vals)
            if not is_morphism(f, alg, alg).holds:  # pragma: no cover - entry test is exact
                raise AssertionError("diagonal shortcut disagrees with is_morphism")
            found.append(tuple(vals))
    return tuple(found)


def _prod(xs):
    out = 1
    for x in xs:
        out = out * x
    return out


_seed_by_key: dict = {}


def diagonal_endomorphisms(alg: HomNambuSuperalgebra) -> list[LinearMap]:
    """All diagonal endomorphisms with entries in ``DIAGONAL_VALUES`` commuting with alpha."""
    key = (alg.arity, alg.parity, tuple(sorted((t, tuple(v)) for t, v in alg.bracket.items())),
           alg.alpha.flat())
    _seed_by_key[key] = alg
    return [LinearMap.diagonal(alg.space, v) for v in _diag_cache(key)]


def random_unimodular(space: SuperSpace, rng: random.Random, steps: int = 4):
    """``(P, P^-1)``: a product of even elementary matrices with small integer entries."""
    d = space.dim
    par = space.parity
    P = LinearMap.identity(space).matrix.copy()
    Q = P.copy()
    pairs = [(i, j) for i in range(d) for j in range(d) if i != j and par[i] == par[j]]
    for _ in range(steps if pairs else 0):
        i, j = rng.choice(pairs)
        c = rng.choice((-2, -1, 1, 2))
        E = LinearMap.identity(space).matrix.copy()
        E[i, j] = c
        Einv = LinearMap.identity(space).matrix.copy()
        Einv[i, j] = -c
        P = P.dot(E)
        Q = Einv.dot(Q)
    return LinearMap(space, P, 0), LinearMap(space, Q, 0)


def conjugate(alg: HomNambuSuperalgebra, P: LinearMap, Pinv: LinearMap) -> HomNambuSuperalgebra:
    """The isomorphic algebra with bracket ``P [P^-1 x_1, ..]`` and twist ``P alpha P^-1``."""
    T = alg.bracket.full()
    for s in range(alg.arity):
        T = apply_slot(T, s, Pinv.matrix)
    T = apply_output(T, P.matrix)
    B = BracketTensor.from_full(alg.space, alg.arity, T, check=True)
    A = P.matrix.dot(alg.alpha.matrix).dot(Pinv.matrix)
    return HomNambuSuperalgebra(alg.space, alg.arity, B, LinearMap(alg.space, A, 0), alg.name)


@dataclass
class Sample:
    alg: HomNambuSuperalgebra
    endomorphisms: list  # endomorphisms commuting with alg.alpha
    seed: str


def random_algebra(rng: random.Random, max_dim: int = 3, arities=(2, 3), *,
                   twist: bool = True, conj: bool = True) -> Sample:
    seed = rng.choice(seed_algebras(max_dim, arities))
    endos = diagonal_endomorphisms(seed)
    alg = seed
    if twist:
        beta = rng.choice(endos)
        alg = HomNambuSuperalgebra(seed.space, seed.arity, seed.bracket.compose_output(beta),
                                   LinearMap(seed.space, beta.matrix, 0), seed.name)
    if conj:
        P, Pinv = random_unimodular(seed.space, rng)
        alg = conjugate(alg, P, Pinv)
        endos = [LinearMap(seed.space, P.matrix.dot(e.matrix).dot(Pinv.matrix), 0) for e in endos]
    return Sample(alg, endos, seed.name)


def random_even_map(space: SuperSpace, rng: random.Random, lo: int = -2, hi: int = 2) -> LinearMap:
    d, par = space.dim, space.parity
    M = zeros((d, d))
    for i in range(d):
        for j in range(d):
            if par[i] == par[j]:
                M[i, j] = rng.randint(lo, hi)
    return LinearMap(space, M, 0)


def random_bracket(space: SuperSpace, arity: int, rng: random.Random, density: float = 0.4,
                   parity: int = 0) -> BracketTensor:
    """A random super-skew map of the given parity with small integer values."""
    vals = {}
    par = space.parity
    for t in canonical_tuples(space, arity):
        if rng.random() > density:
            continue
        want = (tuple_parity(t, space) + parity) % 2
        vec = [rng.randint(-2, 2) if par[k] == want else 0 for k in range(space.dim)]
        if any(vec):
            vals[t] = vec
    return BracketTensor(space, arity, vals, parity=parity)


def corrupt(alg: HomNambuSuperalgebra, rng: random.Random) -> HomNambuSuperalgebra:
    """Add a random even skew perturbation to the bracket (usually breaking the identity)."""
    for _ in range(20):
        delta = random_bracket(alg.space, alg.arity, rng, density=0.3)
        if not delta.is_zero():
            break
    return HomNambuSuperalgebra(alg.space, alg.arity, alg.bracket + delta, alg.alpha,
                                alg.name + "~")


def random_cochain(alg: HomNambuSuperalgebra, level: int, parity: int, rng: random.Random,
                   alpha_compat: bool = True) -> Cochain:
    """Random integer combination of a basis of (alpha-compatible) level-m cochains."""
    basis = compatible_cochain_basis(alg, level, parity, alpha_compat)
    vals = zeros(basis.shape[1:])
    for b in range(basis.shape[0]):
        c = rng.randint(-3, 3)
        if c:
            vals = vals + basis[b] * c
    return Cochain(alg, level, vals, parity, check=False)


def random_formal_automorphism(alg: HomNambuSuperalgebra, order: int, rng: random.Random):
    from .deformation import FormalAutomorphism

    basis = alpha_commuting_maps(alg, 0)
    terms = []
    for _ in range(order):
        M = zeros((alg.dim, alg.dim))
        for b in basis:
            M = M + b.matrix * rng.randint(-2, 2)
        terms.append(LinearMap(alg.space, M, 0))
    return FormalAutomorphism.from_terms(alg, terms)
