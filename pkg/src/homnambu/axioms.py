"""Brute-force verification of the defining identities on basis tuples.

Multilinearity makes a check over all basis tuples complete. Each report
carries the first violation in row-major tuple order as a witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import format_rational
from .core import (
    HomNambuSuperalgebra,
    _canonicalize,
    apply_output,
    apply_slot,
    canonical_tuples,
    einsum_letters,
    tuple_parity,
    zeros,
)

AXIOMS = ("grading", "super_skew", "hom_nambu", "multiplicative")


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witness: Optional[tuple] = None  # (basis tuple, left value, right value)

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report fails exactly when it has a witness")

    def as_dict(self) -> dict:
        out = {"axiom": self.axiom, "holds": self.holds}
        if self.witness is not None:
            t, left, right = self.witness
            out["witness"] = {
                "tuple": list(t),
                "left": [format_rational(x) for x in left],
                "right": [format_rational(x) for x in right],
            }
        return out


def first_difference(left: np.ndarray, right: np.ndarray):
    """First index (row-major over all but the output axis) where two tensors differ."""
    d = left.shape[-1]
    lf = left.reshape(-1, d)
    rf = right.reshape(-1, d)
    for k in range(lf.shape[0]):
        if any(a != b for a, b in zip(lf[k], rf[k])):
            idx = np.unravel_index(k, left.shape[:-1])
            return tuple(int(i) for i in idx), tuple(lf[k]), tuple(rf[k])
    return None


def parity_sum(parity: np.ndarray, k: int) -> np.ndarray:
    """``(|x_1| + ... + |x_k|) mod 2`` as a k-dimensional array over basis indices."""
    out = np.zeros((len(parity),) * k, dtype=np.int64)
    for s in range(k):
        shape = [1] * k
        shape[s] = len(parity)
        out = out + parity.reshape(shape)
    return out % 2


def _check_grading(alg: HomNambuSuperalgebra) -> AxiomReport:
    par = alg.space.parity
    for t, v in alg.bracket.items():
        want = tuple_parity(t, alg.space)
        for k, x in enumerate(v):
            if x != 0 and par[k] != want:
                projected = tuple(x if par[j] == want else 0 for j, x in enumerate(v))
                return AxiomReport("grading", False, (t, tuple(v), projected))
    return AxiomReport("grading", True)


def _permutation_sign(perm, parities) -> int:
    """Koszul sign of permuting entries with given parities, by inversion count."""
    sign = 1
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b]:
                if not (parities[perm[a]] and parities[perm[b]]):
                    sign = -sign
    return sign


def _check_super_skew(alg: HomNambuSuperalgebra) -> AxiomReport:
    space, br = alg.space, alg.bracket
    par = space.parity
    n = alg.arity
    # tuples forced to zero must evaluate to zero
    for t in itertools.combinations_with_replacement(range(space.dim), n):
        if _canonicalize(t, par) is None:
            v = br.eval_indices(t)
            if any(x != 0 for x in v):
                return AxiomReport("super_skew", False, (t, tuple(v), (0,) * space.dim))
    for t in canonical_tuples(space, n):
        base = np.array(br.value(t), dtype=object)
        for perm in itertools.permutations(range(n)):
            raw = tuple(t[i] for i in perm)
            sign = _permutation_sign(perm, [par[i] for i in t])
            got = br.eval_indices(raw)
            want = base * sign
            if any(a != b for a, b in zip(got, want)):
                return AxiomReport("super_skew", False, (raw, tuple(got), tuple(want)))
    return AxiomReport("super_skew", True)


def nambu_sides(A: np.ndarray, parity: np.ndarray, outer: np.ndarray, inner: np.ndarray):
    """Both sides of the twisted fundamental identity for a pair of even n-ary maps.

    ``left = outer(A x_1, .., A x_(n-1), inner(y_1..y_n))`` and
    ``right = sum_i sign_i outer(A y_1, .., inner(x, y_i), .., A y_n)``, as
    tensors over ``(x_1..x_(n-1), y_1..y_n, out)``.
    """
    n = outer.ndim - 1
    Ox = outer
    for s in range(n - 1):
        Ox = apply_slot(Ox, s, A)
    L = einsum_letters(2 * n + 1)
    xs, ys, v, o = L[: n - 1], L[n - 1: 2 * n - 1], L[2 * n - 1], L[2 * n]
    xs_s, ys_s = "".join(xs), "".join(ys)
    left = np.einsum(f"{xs_s}{v}{o},{ys_s}{v}->{xs_s}{ys_s}{o}", Ox, inner)
    px = parity_sum(parity, n - 1)
    right = zeros(left.shape)
    for i in range(n):
        Oi = outer
        for s in range(n):
            if s != i:
                Oi = apply_slot(Oi, s, A)
        spliced = ys[:i] + [v] + ys[i + 1:]
        term = np.einsum(f"{''.join(spliced)}{o},{xs_s}{ys[i]}{v}->{xs_s}{ys_s}{o}", Oi, inner)
        py = parity_sum(parity, i) if i else np.zeros((), dtype=np.int64)
        sign = 1 - 2 * (np.multiply.outer(px, py) % 2)
        sign = sign.reshape(sign.shape + (1,) * (n - i) + (1,))
        right = right + term * sign
    return left, right


def hom_nambu_sides(alg: HomNambuSuperalgebra):
    """Both sides of the twisted fundamental identity as tensors over (x_1..x_{n-1}, y_1..y_n)."""
    B = alg.bracket.full()
    return nambu_sides(alg.alpha.matrix, alg.space.parity_array, B, B)


def _check_hom_nambu(alg: HomNambuSuperalgebra) -> AxiomReport:
    left, right = hom_nambu_sides(alg)
    w = first_difference(left, right)
    return AxiomReport("hom_nambu", w is None, w)


def _check_multiplicative(alg: HomNambuSuperalgebra) -> AxiomReport:
    A = alg.alpha.matrix
    B = alg.bracket.full()
    left = apply_output(B, A)
    right = B
    for s in range(alg.arity):
        right = apply_slot(right, s, A)
    w = first_difference(left, right)
    return AxiomReport("multiplicative", w is None, w)


_CHECKS = {
    "grading": _check_grading,
    "super_skew": _check_super_skew,
    "hom_nambu": _check_hom_nambu,
    "multiplicative": _check_multiplicative,
}


def check_identity(alg: HomNambuSuperalgebra, axiom: str) -> AxiomReport:
    try:
        check = _CHECKS[axiom]
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {AXIOMS}") from None
    return check(alg)


def verify(alg: HomNambuSuperalgebra) -> list[AxiomReport]:
    return [check_identity(alg, a) for a in AXIOMS]


def is_valid(alg: HomNambuSuperalgebra) -> bool:
    return all(r.holds for r in verify(alg))
