"""Morphisms, Yau twists, direct sums, graphs, subalgebras and ideals."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .axioms import first_difference, verify
from .core import (
    AlgebraError,
    BracketTensor,
    HomNambuSuperalgebra,
    LinearMap,
    SuperSpace,
    apply_output,
    apply_slot,
    canonical_tuples,
    zeros,
)
from .linalg import SubspaceBasis

__all__ = [
    "GradedSubspace",
    "MorphismReport",
    "is_morphism",
    "yau_twist",
    "direct_sum",
    "graph",
    "is_subalgebra",
    "is_ideal",
    "graph_is_subalgebra_iff_morphism",
]


class GradedSubspace:
    """A subspace spanned by parity-homogeneous vectors."""

    def __init__(self, ambient: SuperSpace, vectors: Sequence[Sequence] = ()):
        self.ambient = ambient
        self.basis = SubspaceBasis(ambient.dim, vectors)
        self.parities = []
        for i, v in enumerate(self.basis):
            p = ambient.vector_parity(v)
            if p is None or not any(x != 0 for x in v):
                raise AlgebraError(f"basis vector {i} is zero or not homogeneous")
            self.parities.append(p)

    @classmethod
    def whole(cls, ambient: SuperSpace) -> "GradedSubspace":
        return cls(ambient, [tuple(int(i == j) for j in range(ambient.dim)) for i in range(ambient.dim)])

    @classmethod
    def spanned_by(cls, ambient: SuperSpace, indices: Sequence[int]) -> "GradedSubspace":
        return cls(ambient, [tuple(int(i == j) for j in range(ambient.dim)) for i in indices])

    @property
    def dim(self) -> int:
        return self.basis.dim

    def contains(self, v) -> bool:
        return self.basis.contains(list(v))

    def __repr__(self):
        return f"GradedSubspace(dim={self.dim} in {self.ambient.dim})"


@dataclass(frozen=True)
class MorphismReport:
    holds: bool
    witness: Optional[tuple] = None  # ("bracket", tuple, left, right) or ("alpha", (i, j), left, right)

    def __bool__(self):
        return self.holds


def _check_compatible(f: LinearMap, src: HomNambuSuperalgebra, dst: HomNambuSuperalgebra):
    if src.arity != dst.arity:
        raise AlgebraError(f"arity mismatch: {src.arity} vs {dst.arity}")
    if f.space != src.space or f.target != dst.space:
        raise AlgebraError("map does not go from the source space to the target space")


def is_morphism(f: LinearMap, src: HomNambuSuperalgebra, dst: HomNambuSuperalgebra) -> MorphismReport:
    """Check ``f[x_1..x_n] = [f x_1 .. f x_n]'`` on basis tuples and ``f alpha = alpha' f``.

    Only even maps are considered; an odd or mixed map raises.
    """
    _check_compatible(f, src, dst)
    if not f.is_even():
        raise AlgebraError("morphisms must be even")
    M = f.matrix
    left = apply_output(src.bracket.full(), M)
    right = dst.bracket.full()
    for s in range(src.arity):
        right = apply_slot(right, s, M)
    w = first_difference(left, right)
    if w is not None:
        return MorphismReport(False, ("bracket",) + w)
    fa = M.dot(src.alpha.matrix)
    af = dst.alpha.matrix.dot(M)
    w = first_difference(fa.T, af.T)  # columns are images of basis vectors
    if w is not None:
        return MorphismReport(False, ("alpha",) + w)
    return MorphismReport(True)


def yau_twist(alg: HomNambuSuperalgebra, beta: LinearMap) -> HomNambuSuperalgebra:
    """The algebra ``(g, beta o [..], beta o alpha)``; re-verified before returning."""
    rep = is_morphism(beta, alg, alg)
    if not rep.holds:
        raise AlgebraError(f"beta is not an endomorphism of the algebra: {rep.witness}")
    if not beta.commutes_with(alg.alpha):
        raise AlgebraError("beta does not commute with alpha")
    out = HomNambuSuperalgebra(
        alg.space, alg.arity, alg.bracket.compose_output(beta),
        LinearMap(alg.space, beta.matrix.dot(alg.alpha.matrix), 0), alg.name,
    )
    failed = [r for r in verify(out) if not r.holds]
    if failed:
        raise AssertionError(f"twisted algebra fails {failed[0].axiom}: {failed[0].witness}")
    return out


def direct_sum(a: HomNambuSuperalgebra, b: HomNambuSuperalgebra) -> HomNambuSuperalgebra:
    """Block sum: mixed tuples bracket to zero and alpha acts diagonally."""
    if a.arity != b.arity:
        raise AlgebraError(f"arity mismatch: {a.arity} vs {b.arity}")
    space = a.space + b.space
    da, d = a.dim, a.dim + b.dim
    vals = {}
    for t, v in a.bracket.items():
        vals[t] = tuple(v) + (0,) * b.dim
    for t, v in b.bracket.items():
        vals[tuple(i + da for i in t)] = (0,) * da + tuple(v)
    A = zeros((d, d))
    A[:da, :da] = a.alpha.matrix
    A[da:, da:] = b.alpha.matrix
    name = f"{a.name}+{b.name}" if a.name and b.name else ""
    return HomNambuSuperalgebra(space, a.arity, BracketTensor(space, a.arity, vals),
                                LinearMap(space, A, 0), name)


def graph(f: LinearMap, src: HomNambuSuperalgebra, dst: HomNambuSuperalgebra) -> GradedSubspace:
    """Span of ``(e_i, f(e_i))`` inside ``src + dst``."""
    if f.space.dim != src.dim or f.target.dim != dst.dim:
        raise AlgebraError("map dimensions do not match the algebras")
    if not f.is_even():
        raise AlgebraError("the graph of a non-even map is not graded")
    ambient = src.space + dst.space
    vecs = []
    for i in range(src.dim):
        e = [int(i == j) for j in range(src.dim)]
        vecs.append(tuple(e) + tuple(f.matrix[:, i]))
    return GradedSubspace(ambient, vecs)


def _closed(alg: HomNambuSuperalgebra, H: GradedSubspace, slots) -> bool:
    if H.ambient != alg.space:
        raise AlgebraError("subspace lives in a different space")
    A = alg.alpha.matrix
    for v in H.basis:
        if not H.contains(A.dot(np.array(v, dtype=object))):
            return False
    for args in itertools.product(*slots):
        if not H.contains(alg.bracket.eval_vectors(args)):
            return False
    return True


def is_subalgebra(alg: HomNambuSuperalgebra, H: GradedSubspace) -> bool:
    vecs = list(H.basis)
    return _closed(alg, H, [vecs] * alg.arity)


def is_ideal(alg: HomNambuSuperalgebra, H: GradedSubspace) -> bool:
    vecs = list(H.basis)
    units = [tuple(int(i == j) for j in range(alg.dim)) for i in range(alg.dim)]
    return _closed(alg, H, [vecs] + [units] * (alg.arity - 1))


def graph_is_subalgebra_iff_morphism(f: LinearMap, src, dst) -> tuple[bool, bool]:
    """``(is_morphism, graph is a subalgebra of the direct sum)``, computed independently."""
    m = is_morphism(f, src, dst).holds
    s = is_subalgebra(direct_sum(src, dst), graph(f, src, dst))
    return m, s
