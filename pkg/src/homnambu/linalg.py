"""Exact linear algebra over the rationals.

Matrices are sequences of rows (lists, tuples or 2-d numpy object arrays) of
``int``/``Fraction`` entries. Every routine clears denominators row by row and
hands the integer matrix to the row reduction kernel, so nothing is ever
rounded and equality is literal.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels

__all__ = [
    "Scalar",
    "as_scalar",
    "format_rational",
    "SubspaceBasis",
    "LinearAlgebraError",
    "echelon",
    "rank",
    "kernel_basis",
    "solve_particular",
    "quotient_dim",
    "contains",
    "matvec",
]

Scalar = Fraction


class LinearAlgebraError(ValueError):
    pass


def as_scalar(x):
    """Normalize to ``int`` when integral, else a reduced ``Fraction``."""
    if isinstance(x, int):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_scalar(Fraction(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x) -> str:
    """Reduced ``"p/q"`` text form (integers as ``"k/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _int_row(row) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _rows(A) -> list:
    return [list(r) for r in A]


def echelon(A, ncols: Optional[int] = None) -> tuple[list[list[int]], list[int]]:
    rows = _rows(A)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise LinearAlgebraError(f"row of length {len(r)} in a {ncols}-column matrix")
    return _kernels.echelon([_int_row(r) for r in rows], ncols)


def rank(A, ncols: Optional[int] = None) -> int:
    return len(echelon(A, ncols)[1])


def _primitive_vector(v: list) -> tuple:
    """Scale a rational vector to coprime integers (sign of the first nonzero kept)."""
    ints = _int_row(v)
    g = gcd(*ints) if ints else 0
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def kernel_basis(A, ncols: Optional[int] = None) -> "SubspaceBasis":
    """Basis of ``{v : A v = 0}``; one primitive integer vector per free column."""
    rows = _rows(A)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = echelon(rows, ncols)
    pivset = set(pivots)
    vectors = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = Fraction(-row[f], row[pc])
        vectors.append(_primitive_vector(v))
    return SubspaceBasis(ncols, vectors, check=False)


def solve_particular(A, b: Sequence, ncols: Optional[int] = None) -> Optional[tuple]:
    """Some ``x`` with ``A x = b`` (free variables set to zero), or ``None``."""
    rows = _rows(A)
    if len(b) != len(rows):
        raise LinearAlgebraError(f"right-hand side has length {len(b)}, matrix has {len(rows)} rows")
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    red, pivots = echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = as_scalar(Fraction(row[ncols], row[pc]))
    return tuple(x)


def matvec(A, x: Sequence) -> tuple:
    return tuple(as_scalar(sum((a * xi for a, xi in zip(row, x)), 0)) for row in _rows(A))


class SubspaceBasis:
    """A linearly independent list of vectors in ``K^ambient_dim``.

    Independence is verified on construction unless ``check=False`` is passed
    by a caller that produced the vectors from an echelon form.
    """

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (), *, check: bool = True):
        self.ambient_dim = int(ambient_dim)
        self.vectors = tuple(tuple(as_scalar(x) for x in v) for v in vectors)
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise LinearAlgebraError(
                    f"vector of length {len(v)} in a subspace of K^{self.ambient_dim}"
                )
        self._echelon = None
        if check and self.vectors and len(self._reduced()[1]) != len(self.vectors):
            raise LinearAlgebraError("vectors are linearly dependent")

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        """Echelonized basis of the span of an arbitrary spanning list."""
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, ())
        red, pivots = echelon(vectors, ambient_dim)
        out = cls(ambient_dim, red, check=False)
        out._echelon = (red, pivots)
        return out

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __repr__(self):
        return f"SubspaceBasis(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def _reduced(self):
        if self._echelon is None:
            self._echelon = echelon(self.vectors, self.ambient_dim) if self.vectors else ([], [])
        return self._echelon

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise LinearAlgebraError(f"vector of length {len(v)} tested against K^{self.ambient_dim}")
        red, pivots = self._reduced()
        w = [Fraction(x) for x in v]
        for row, pc in zip(red, pivots):
            c = w[pc]
            if c:
                f = c / row[pc]
                w = [wi - f * ri for wi, ri in zip(w, row)]
        return not any(w)

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Optional[tuple]:
        """Coefficients expressing ``v`` in this basis, or ``None`` if outside."""
        if not self.vectors:
            return () if not any(v) else None
        cols = list(zip(*self.vectors))
        return solve_particular(cols, list(v), ncols=self.dim)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(v) for v in self.vectors)

    def same_span(self, other: "SubspaceBasis") -> bool:
        return self.dim == other.dim and self.is_subspace_of(other)

    def as_matrix(self) -> list[list]:
        return [list(v) for v in self.vectors]


def contains(S: SubspaceBasis, v: Sequence) -> bool:
    return S.contains(v)


def quotient_dim(Z: SubspaceBasis, B: SubspaceBasis) -> int:
    """``dim Z - dim B``; raises if ``B`` is not inside ``Z``."""
    if Z.ambient_dim != B.ambient_dim:
        raise LinearAlgebraError("subspaces live in different ambient spaces")
    for i, v in enumerate(B.vectors):
        if not Z.contains(v):
            raise LinearAlgebraError(f"containment violated: vector {i} of B is not in Z")
    return Z.dim - B.dim
