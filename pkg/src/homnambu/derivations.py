"""Twisted derivations, inner derivations and the Lie superalgebra they form.

A linear map ``D`` of parity ``|D|`` is an alpha^k-derivation when it commutes
with alpha and

    D[x_1, .., x_n] = sum_i (-1)^(|D|(|x_1|+..+|x_(i-1)|)) [a^k x_1, .., D x_i, .., a^k x_n].

Derivation spaces are returned as subspaces of the ``d*d`` row-major matrix
coordinates; only the parity-compatible block can be nonzero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .axioms import first_difference
from .core import (
    AlgebraError,
    HomNambuSuperalgebra,
    LinearMap,
    WedgeElement,
    apply_output,
    apply_slot,
    zeros,
)
from .linalg import SubspaceBasis, kernel_basis

__all__ = [
    "DerivationSpace",
    "InnerSpace",
    "DerAlgebraReport",
    "leibniz_residual",
    "is_derivation",
    "derivation_space",
    "inner_derivation",
    "inner_space",
    "alpha_fixed_fundamental",
    "der_commutator",
    "check_der_superalgebra",
]


def _maps(space, basis: SubspaceBasis, parity=None) -> list[LinearMap]:
    return [LinearMap.from_flat(space, v, parity) for v in basis]


@dataclass
class DerivationSpace:
    k: int
    parity: int
    basis: SubspaceBasis
    alg: HomNambuSuperalgebra = field(repr=False)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def maps(self) -> list[LinearMap]:
        return _maps(self.alg.space, self.basis, self.parity)

    def contains(self, D: LinearMap) -> bool:
        return self.basis.contains(D.flat())


@dataclass
class InnerSpace:
    k: int
    basis: SubspaceBasis
    alg: HomNambuSuperalgebra = field(repr=False)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def maps(self) -> list[LinearMap]:
        return _maps(self.alg.space, self.basis)

    def contains(self, D: LinearMap) -> bool:
        return self.basis.contains(D.flat())


def _leibniz_sign(par, i, parity):
    """``(-1)^(parity (|x_1|+..+|x_i|))`` broadcast over the first ``i`` slots."""
    acc = np.zeros((), dtype=np.int64)
    for _ in range(i):
        acc = np.add.outer(acc, par)
    return 1 - 2 * ((acc * parity) % 2)


def leibniz_residual(alg: HomNambuSuperalgebra, D: np.ndarray, k: int, parity: int) -> np.ndarray:
    """Raw tensor of ``D[x..] - sum_i sign [a^k x_1, .., D x_i, .., a^k x_n]``."""
    n = alg.arity
    B = alg.bracket.full()
    Ak = alg.alpha_power(k)
    par = alg.space.parity_array
    out = apply_output(B, D)
    for i in range(n):
        T = B
        for s in range(n):
            T = apply_slot(T, s, D if s == i else Ak)
        if parity and i:
            sign = _leibniz_sign(par, i, parity)
            T = T * sign.reshape(sign.shape + (1,) * (n - i + 1))
        out = out - T
    return out


def is_derivation(alg: HomNambuSuperalgebra, D: LinearMap, k: int):
    """``(holds, witness)``; the witness is a failing basis tuple or ``"alpha"``."""
    p = D.parity
    if p is None:
        raise AlgebraError("derivation test needs a homogeneous map")
    if not D.commutes_with(alg.alpha):
        return False, "alpha"
    w = first_difference(leibniz_residual(alg, D.matrix, k, p), zeros((alg.dim,) * (alg.arity + 1)))
    return w is None, (None if w is None else w[0])


def derivation_space(alg: HomNambuSuperalgebra, k: int = 0, parity: int = 0) -> DerivationSpace:
    if k < 0:
        raise AlgebraError("k must be nonnegative")
    cache = alg.__dict__.setdefault("_der_cache", {})
    key = (k, parity)
    if key in cache:
        return cache[key]
    d = alg.dim
    par = alg.space.parity
    coords = [(i, j) for i in range(d) for j in range(d) if (par[i] + par[j]) % 2 == parity]
    A = alg.alpha.matrix
    cols = []
    for i, j in coords:
        E = zeros((d, d))
        E[i, j] = 1
        res = leibniz_residual(alg, E, k, parity).reshape(-1)
        comm = (E.dot(A) - A.dot(E)).reshape(-1)
        cols.append(np.concatenate([res, comm]))
    if coords:
        M = np.array(cols, dtype=object).T
        rows = [list(r) for r in M if any(x != 0 for x in r)]
        ker = kernel_basis(rows, len(coords))
    else:
        ker = SubspaceBasis(0, ())
    vecs = []
    for v in ker:
        full = [0] * (d * d)
        for (i, j), c in zip(coords, v):
            full[i * d + j] = c
        vecs.append(full)
    out = DerivationSpace(k, parity, SubspaceBasis(d * d, vecs, check=False), alg)
    cache[key] = out
    return out


def alpha_fixed_fundamental(alg: HomNambuSuperalgebra) -> list[WedgeElement]:
    """Homogeneous basis of the fundamental objects fixed by the induced alpha."""
    fb = alg.fundamental_basis
    LA = alg.induced_alpha(1)
    out = []
    for p in (0, 1):
        idx = [w for w in range(len(fb)) if fb.parity[w] == p]
        if not idx:
            continue
        sub = LA[np.ix_(idx, idx)]
        M = sub - np.eye(len(idx), dtype=np.int64).astype(object)
        ker = kernel_basis([list(r) for r in M], len(idx))
        for v in ker:
            coords = [0] * len(fb)
            for w, c in zip(idx, v):
                coords[w] = c
            out.append(WedgeElement(fb, coords))
    return out


def inner_derivation(alg: HomNambuSuperalgebra, k: int, X: WedgeElement, *, check: bool = True) -> LinearMap:
    """``y -> [X, a^k y]``, extended linearly in ``X``; it is an alpha^(k+1)-derivation."""
    if k < 0:
        raise AlgebraError("k must be nonnegative")
    coords = np.array(X.coords, dtype=object)
    if not np.array_equal(alg.induced_alpha(1).dot(coords), coords):
        raise AlgebraError("the fundamental object is not fixed by alpha")
    p = X.parity
    if p is None:
        raise AlgebraError("the fundamental object must be homogeneous")
    T = np.tensordot(coords, alg.adjoint, axes=([0], [0]))  # [v, out]
    M = T.T.dot(alg.alpha_power(k))
    D = LinearMap(alg.space, M, p)
    if check and not derivation_space(alg, k + 1, p).contains(D):
        raise AssertionError("inner derivation failed the derivation test")
    return D


def inner_space(alg: HomNambuSuperalgebra, k: int = 1) -> InnerSpace:
    """Span of the inner maps ``ad_(k-1)(X)`` over alpha-fixed ``X`` (alpha^k-derivations)."""
    if k < 1:
        raise AlgebraError("inner levels start at 1")
    d = alg.dim
    vecs = [inner_derivation(alg, k - 1, X).flat() for X in alpha_fixed_fundamental(alg)]
    return InnerSpace(k, SubspaceBasis.span(d * d, vecs), alg)


def der_commutator(D: LinearMap, Dp: LinearMap, *, alg: Optional[HomNambuSuperalgebra] = None,
                   levels: Optional[tuple[int, int]] = None) -> LinearMap:
    """``D o D' - (-1)^(|D||D'|) D' o D``.

    With ``alg`` and ``levels = (k, k')`` the result is checked to be an
    alpha^(k+k')-derivation (the inputs are assumed to be derivations).
    """
    p, q = D.parity, Dp.parity
    if p is None or q is None:
        raise AlgebraError("commutator needs homogeneous maps")
    sign = -1 if (p * q) % 2 else 1
    C = LinearMap(D.space, D.matrix.dot(Dp.matrix) - sign * Dp.matrix.dot(D.matrix), (p + q) % 2)
    if alg is not None:
        if not (D.commutes_with(alg.alpha) and Dp.commutes_with(alg.alpha)):
            raise AlgebraError("commutator arguments must commute with alpha")
        if levels is not None:
            k, kp = levels
            if not derivation_space(alg, k + kp, C.parity).contains(C):
                raise AssertionError(f"commutator is not an alpha^{k + kp}-derivation")
    return C


@dataclass
class DerAlgebraReport:
    k_max: int
    dims: dict          # (k, parity) -> dim Der
    inner_dims: dict    # k -> dim Inn
    failures: list      # (check, detail)
    counts: dict

    @property
    def holds(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "k_max": self.k_max,
            "holds": self.holds,
            "der_dims": {f"{k},{p}": v for (k, p), v in sorted(self.dims.items())},
            "inner_dims": {str(k): v for k, v in sorted(self.inner_dims.items())},
            "checks": dict(self.counts),
            "failures": [{"check": c, "detail": str(d)} for c, d in self.failures],
        }


def _homogeneous_der(alg, k):
    out = []
    for p in (0, 1):
        out.extend((D, k) for D in derivation_space(alg, k, p).maps())
    return out


def _homogeneous_parts(alg, M: LinearMap) -> list[LinearMap]:
    par = alg.space.parity
    parts = []
    for p in (0, 1):
        A = M.matrix.copy()
        for i in range(alg.dim):
            for j in range(alg.dim):
                if (par[i] + par[j]) % 2 != p:
                    A[i, j] = 0
        if any(x != 0 for x in A.reshape(-1)):
            parts.append(LinearMap(alg.space, A, p))
    return parts


def check_der_superalgebra(alg: HomNambuSuperalgebra, k_max: int = 2, jacobi_samples: int = 64) -> DerAlgebraReport:
    """Closure of twisted derivations under the super-commutator, the ideal property of
    inner derivations at the level ``k + k'``, and super-Jacobi on basis triples."""
    if k_max < 1:
        raise AlgebraError("k_max must be at least 1")
    failures = []
    counts = {"closure": 0, "inner_ideal": 0, "inner_in_der": 0, "jacobi": 0}
    ders = {k: _homogeneous_der(alg, k) for k in range(2 * k_max + 1)}
    dims = {(k, p): derivation_space(alg, k, p).dim for k in range(k_max + 1) for p in (0, 1)}
    inner = {k: inner_space(alg, k) for k in range(1, 2 * k_max + 1)}

    for k in range(1, k_max + 1):
        for M in inner[k].maps():
            for part in _homogeneous_parts(alg, M):
                counts["inner_in_der"] += 1
                if not derivation_space(alg, k, part.parity).contains(part):
                    failures.append(("inner_in_der", (k, part)))

    for k in range(k_max + 1):
        for kp in range(k_max + 1):
            target = {p: derivation_space(alg, k + kp, p) for p in (0, 1)}
            for D, _ in ders[k]:
                for Dp, _ in ders[kp]:
                    C = der_commutator(D, Dp)
                    counts["closure"] += 1
                    if not target[C.parity].contains(C):
                        failures.append(("closure", (k, kp, D, Dp)))

    for kp in range(k_max + 1):
        for k in range(1, k_max + 1):
            goal = inner[k + kp]
            for D, _ in ders[kp]:
                for M in inner[k].maps():
                    for part in _homogeneous_parts(alg, M):
                        C = der_commutator(D, part)
                        counts["inner_ideal"] += 1
                        if not goal.contains(C):
                            failures.append(("inner_ideal", (kp, k, D, part)))

    pool = [D for k in range(k_max + 1) for D, _ in ders[k]]
    triples = list(itertools.product(pool, repeat=3))
    step = max(1, len(triples) // jacobi_samples) if triples else 1
    for D1, D2, D3 in triples[::step]:
        counts["jacobi"] += 1
        s12 = -1 if (D1.parity * D2.parity) % 2 else 1
        lhs = der_commutator(D1, der_commutator(D2, D3))
        rhs = der_commutator(der_commutator(D1, D2), D3) + der_commutator(D2, der_commutator(D1, D3)) * s12
        if not np.array_equal(lhs.matrix, rhs.matrix):
            failures.append(("jacobi", (D1, D2, D3)))

    return DerAlgebraReport(k_max, dims, {k: v.dim for k, v in inner.items() if k <= k_max}, failures, counts)
