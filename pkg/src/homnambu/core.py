"""Graded data model: superspaces, even/odd linear maps, super-skew brackets.

Brackets are stored on canonical (sorted) index tuples only; the value on any
other tuple is recovered with the Koszul sign of the sorting permutation. For
a swap of neighbours of parities ``p`` and ``q`` that sign is
``-(-1)**(p*q)``: even/even and even/odd swaps flip the sign, odd/odd swaps
keep it. Consequently a tuple with a repeated even index is identically zero,
while repeated odd indices are legitimate (the super-exterior power is
``Lambda(g_0) (x) S(g_1)``).

Dense tensors are numpy arrays of dtype ``object`` holding ``int`` and
``Fraction`` entries; the last axis is always the output coordinate.
"""
from __future__ import annotations

import itertools
import string
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .linalg import as_scalar

__all__ = [
    "SuperSpace",
    "LinearMap",
    "BracketTensor",
    "HomNambuSuperalgebra",
    "WedgeBasis",
    "WedgeElement",
    "AlgebraError",
    "canonicalize_tuple",
    "bracket_eval",
    "wedge_basis",
    "apply_linear",
    "zeros",
    "apply_slot",
    "apply_output",
]


class AlgebraError(ValueError):
    pass


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def to_object_array(data, shape=None) -> np.ndarray:
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    flat = arr.reshape(-1)
    for i, x in enumerate(flat):
        flat[i] = as_scalar(x)
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def apply_slot(T: np.ndarray, slot: int, M: np.ndarray) -> np.ndarray:
    """Precompose input ``slot`` of a multilinear tensor with the map ``M``.

    ``M`` follows the column convention (column ``j`` is the image of
    ``e_j``), so the result is ``T(..., M x, ...)``.
    """
    out = np.tensordot(M, T, axes=([0], [slot]))
    return np.moveaxis(out, 0, slot)


def apply_output(T: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Postcompose the output of ``T`` with ``M``."""
    return np.tensordot(T, M, axes=([T.ndim - 1], [1]))


def is_zero(arr) -> bool:
    return not any(x != 0 for x in np.asarray(arr, dtype=object).reshape(-1))


class SuperSpace:
    """A finite-dimensional Z/2-graded space with a homogeneous ordered basis."""

    __slots__ = ("parity",)

    def __init__(self, parity: Iterable[int]):
        parity = tuple(int(p) for p in parity)
        if not parity:
            raise AlgebraError("a superspace needs at least one basis vector")
        if any(p not in (0, 1) for p in parity):
            raise AlgebraError(f"parities must be 0 or 1, got {parity}")
        object.__setattr__(self, "parity", parity)

    def __setattr__(self, name, value):
        raise AttributeError("SuperSpace is immutable")

    @classmethod
    def even(cls, dim: int) -> "SuperSpace":
        return cls((0,) * dim)

    @classmethod
    def of_dims(cls, even: int, odd: int) -> "SuperSpace":
        """The space ``K^(even|odd)``; even basis vectors come first."""
        return cls((0,) * even + (1,) * odd)

    @property
    def dim(self) -> int:
        return len(self.parity)

    def __len__(self):
        return len(self.parity)

    def __eq__(self, other):
        return isinstance(other, SuperSpace) and self.parity == other.parity

    def __hash__(self):
        return hash(self.parity)

    def __repr__(self):
        return f"SuperSpace({list(self.parity)})"

    def __add__(self, other: "SuperSpace") -> "SuperSpace":
        return SuperSpace(self.parity + other.parity)

    @property
    def parity_array(self) -> np.ndarray:
        return _parity_array(self.parity)

    def vector_parity(self, v) -> Optional[int]:
        """Parity of a homogeneous vector; ``None`` for 0 or mixed support."""
        ps = {self.parity[i] for i, x in enumerate(v) if x != 0}
        return ps.pop() if len(ps) == 1 else None

    def check_index(self, i: int):
        if not 0 <= i < self.dim:
            raise AlgebraError(f"basis index {i} out of range for dimension {self.dim}")


@lru_cache(maxsize=None)
def _parity_array(parity: tuple) -> np.ndarray:
    return _frozen(np.array(parity, dtype=np.int64))


def canonicalize_tuple(indices: Sequence[int], space: SuperSpace):
    """Sort ``indices`` and return ``(sign, canonical)``, or ``None`` if zero.

    The sort is a stable bubble sort; every adjacent transposition of entries
    with parities ``p, q`` contributes ``-(-1)**(p*q)``.
    """
    for i in indices:
        space.check_index(i)
    return _canonicalize(tuple(indices), space.parity)


@lru_cache(maxsize=200_000)
def _canonicalize(indices: tuple, parity: tuple):
    t = list(indices)
    sign = 1
    n = len(t)
    for end in range(n - 1, 0, -1):
        for j in range(end):
            if t[j] > t[j + 1]:
                if not (parity[t[j]] and parity[t[j + 1]]):
                    sign = -sign
                t[j], t[j + 1] = t[j + 1], t[j]
    for j in range(n - 1):
        if t[j] == t[j + 1] and not parity[t[j]]:
            return None
    return sign, tuple(t)


def canonical_tuples(space: SuperSpace, length: int) -> list[tuple]:
    """All canonical tuples: sorted, no repeated even index."""
    return list(_canonical_tuples(space.parity, length))


@lru_cache(maxsize=None)
def _canonical_tuples(parity: tuple, length: int) -> tuple:
    out = []
    for t in itertools.combinations_with_replacement(range(len(parity)), length):
        if all(not (t[j] == t[j + 1] and not parity[t[j]]) for j in range(length - 1)):
            out.append(t)
    return tuple(out)


def tuple_parity(t: Sequence[int], space: SuperSpace) -> int:
    return sum(space.parity[i] for i in t) % 2


class WedgeBasis:
    """Canonical basis of the super-exterior power of ``space`` of a given length."""

    def __init__(self, space: SuperSpace, length: int):
        if length < 1:
            raise AlgebraError("wedge length must be positive")
        self.space = space
        self.length = length
        self.tuples = canonical_tuples(space, length)
        self.index = {t: i for i, t in enumerate(self.tuples)}
        self.parity = tuple(tuple_parity(t, space) for t in self.tuples)

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __repr__(self):
        return f"WedgeBasis(dim={self.space.dim}, length={self.length}, size={len(self)})"

    @property
    def parity_array(self) -> np.ndarray:
        return _parity_array(self.parity)

    def locate(self, raw: Sequence[int]):
        """``(position, sign)`` of a raw index tuple, or ``None`` if it is zero."""
        c = _canonicalize(tuple(raw), self.space.parity)
        if c is None:
            return None
        return self.index[c[1]], c[0]

    @cached_property
    def projection(self) -> np.ndarray:
        """Tensor ``P[i_1, ..., i_L, w]``: coordinate of ``e_i1 ^ ... ^ e_iL`` at ``w``."""
        d = self.space.dim
        P = zeros((d,) * self.length + (len(self),))
        for raw in itertools.product(range(d), repeat=self.length):
            loc = self.locate(raw)
            if loc is not None:
                P[raw + (loc[0],)] = loc[1]
        return _frozen(P)

    @cached_property
    def representatives(self) -> np.ndarray:
        """Tensor ``E[w, i_1, ..., i_L]`` selecting the canonical tuple of ``w``."""
        d = self.space.dim
        E = zeros((len(self),) + (d,) * self.length)
        for w, t in enumerate(self.tuples):
            E[(w,) + t] = 1
        return _frozen(E)

    def gather(self, T: np.ndarray, start: int = 0) -> np.ndarray:
        """Restrict ``length`` consecutive raw axes of ``T`` (from ``start``) to canonical tuples."""
        idx = [slice(None)] * start
        cols = list(zip(*self.tuples)) if self.tuples else [()] * self.length
        for c in cols:
            idx.append(np.array(c, dtype=np.intp))
        out = T[tuple(idx)]
        if not self.tuples:
            shape = T.shape[:start] + (0,) + T.shape[start + self.length:]
            return zeros(shape)
        return out

    def wedge(self, vectors: Sequence) -> np.ndarray:
        """Coordinates of ``v_1 ^ ... ^ v_L``."""
        if len(vectors) != self.length:
            raise AlgebraError(f"expected {self.length} vectors, got {len(vectors)}")
        out = self.projection
        for v in vectors:
            out = np.tensordot(np.asarray(v, dtype=object), out, axes=([0], [0]))
        return out

    def induced(self, M: np.ndarray) -> np.ndarray:
        """Matrix (column convention) of ``x_1 ^ ... ^ x_L -> Mx_1 ^ ... ^ Mx_L``."""
        T = self.representatives
        for s in range(self.length):
            T = np.moveaxis(np.tensordot(T, M, axes=([1 + s], [1])), -1, 1 + s)
        # T[w, j_1..j_L] = prod M[j_s, t_s]; project back onto the basis.
        L = self.length
        out = np.tensordot(T, self.projection, axes=(list(range(1, L + 1)), list(range(L))))
        return out.T.copy()


@lru_cache(maxsize=None)
def _wedge_basis(space: SuperSpace, length: int) -> WedgeBasis:
    return WedgeBasis(space, length)


def wedge_basis(space: SuperSpace, length: int) -> WedgeBasis:
    return _wedge_basis(space, length)


class WedgeElement:
    """A general element of a super-exterior power, in canonical coordinates."""

    def __init__(self, basis: WedgeBasis, coords: Sequence):
        if len(coords) != len(basis):
            raise AlgebraError(f"{len(coords)} coordinates for a wedge basis of size {len(basis)}")
        self.basis = basis
        self.coords = tuple(as_scalar(x) for x in coords)

    @classmethod
    def from_tuple(cls, basis: WedgeBasis, raw: Sequence[int]) -> "WedgeElement":
        coords = [0] * len(basis)
        loc = basis.locate(raw)
        if loc is not None:
            coords[loc[0]] = loc[1]
        return cls(basis, coords)

    @property
    def parity(self) -> Optional[int]:
        ps = {self.basis.parity[w] for w, c in enumerate(self.coords) if c != 0}
        return ps.pop() if len(ps) == 1 else None

    def terms(self):
        for w, c in enumerate(self.coords):
            if c != 0:
                yield c, self.basis.tuples[w]

    def __repr__(self):
        return " + ".join(f"{c}*{t}" for c, t in self.terms()) or "0"


class LinearMap:
    """A linear map ``space -> target`` given by its matrix.

    Column ``j`` of ``matrix`` is the image of basis vector ``j``. A declared
    parity is enforced against the block structure.
    """

    def __init__(self, space: SuperSpace, matrix, declared_parity: Optional[int] = None,
                 target: Optional[SuperSpace] = None):
        self.space = space
        self.target = space if target is None else target
        M = to_object_array(matrix)
        if M.shape != (self.target.dim, space.dim):
            raise AlgebraError(
                f"matrix of shape {M.shape} for a map of dimension {space.dim} -> {self.target.dim}"
            )
        self.matrix = _frozen(M)
        if declared_parity is not None:
            declared_parity = int(declared_parity)
            bad = self._block_violation(declared_parity)
            if bad is not None:
                raise AlgebraError(
                    f"entry {bad} is nonzero in a map declared of parity {declared_parity}"
                )
        self.declared_parity = declared_parity

    def _block_violation(self, p: int):
        tp, sp = self.target.parity, self.space.parity
        for i in range(self.target.dim):
            for j in range(self.space.dim):
                if self.matrix[i, j] != 0 and (tp[i] + sp[j]) % 2 != p:
                    return (i, j)
        return None

    @classmethod
    def identity(cls, space: SuperSpace) -> "LinearMap":
        M = zeros((space.dim, space.dim))
        for i in range(space.dim):
            M[i, i] = 1
        return cls(space, M, 0)

    @classmethod
    def zero(cls, space: SuperSpace, target: Optional[SuperSpace] = None) -> "LinearMap":
        target = space if target is None else target
        return cls(space, zeros((target.dim, space.dim)), 0, target)

    @classmethod
    def scalar(cls, space: SuperSpace, c) -> "LinearMap":
        return cls(space, cls.identity(space).matrix * as_scalar(c), 0)

    @classmethod
    def diagonal(cls, space: SuperSpace, entries: Sequence) -> "LinearMap":
        M = zeros((space.dim, space.dim))
        for i, c in enumerate(entries):
            M[i, i] = as_scalar(c)
        return cls(space, M, 0)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def parity(self) -> Optional[int]:
        """Declared parity, else the detected one (``None`` if mixed, 0 for the zero map)."""
        if self.declared_parity is not None:
            return self.declared_parity
        if self._block_violation(0) is None:
            return 0
        if self._block_violation(1) is None:
            return 1
        return None

    def is_even(self) -> bool:
        return self._block_violation(0) is None

    def __call__(self, v):
        return apply_linear(self, v)

    def _wrap(self, M, parity=None, space=None, target=None):
        return LinearMap(space or self.space, M, parity, target or self.target)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if other.target != self.space:
            raise AlgebraError("composition of maps with mismatched spaces")
        p = None
        if self.declared_parity is not None and other.declared_parity is not None:
            p = (self.declared_parity + other.declared_parity) % 2
        return LinearMap(other.space, self.matrix.dot(other.matrix), p, self.target)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        p = self.declared_parity if self.declared_parity == other.declared_parity else None
        return self._wrap(self.matrix + other.matrix, p)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        p = self.declared_parity if self.declared_parity == other.declared_parity else None
        return self._wrap(self.matrix - other.matrix, p)

    def __neg__(self) -> "LinearMap":
        return self._wrap(-self.matrix, self.declared_parity)

    def __mul__(self, c) -> "LinearMap":
        c = as_scalar(c)
        return self._wrap(self.matrix * c, self.declared_parity)

    __rmul__ = __mul__

    def power(self, k: int) -> "LinearMap":
        if self.target != self.space:
            raise AlgebraError("power of a non-endomorphism")
        out = LinearMap.identity(self.space)
        for _ in range(k):
            out = self @ out
        return out

    def commutes_with(self, other: "LinearMap") -> bool:
        return np.array_equal(self.matrix.dot(other.matrix), other.matrix.dot(self.matrix))

    def __eq__(self, other):
        return (isinstance(other, LinearMap) and self.space == other.space
                and self.target == other.target and np.array_equal(self.matrix, other.matrix))

    __hash__ = None

    def flat(self) -> tuple:
        """Row-major coordinates (``target.dim * space.dim`` of them)."""
        return tuple(self.matrix.reshape(-1))

    @classmethod
    def from_flat(cls, space: SuperSpace, coords: Sequence, declared_parity=None,
                  target: Optional[SuperSpace] = None) -> "LinearMap":
        target = space if target is None else target
        return cls(space, np.array(list(coords), dtype=object).reshape(target.dim, space.dim),
                   declared_parity, target)

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in r) + "]" for r in self.matrix]
        return f"LinearMap([{', '.join(rows)}])"


def apply_linear(f: LinearMap, v) -> np.ndarray:
    v = np.asarray(v, dtype=object)
    if v.shape != (f.space.dim,):
        raise AlgebraError(f"vector of length {len(v)} for a map on dimension {f.space.dim}")
    return f.matrix.dot(v)


class BracketTensor:
    """An even super-skew n-linear map ``g x ... x g -> g`` on canonical storage."""

    def __init__(self, space: SuperSpace, arity: int, values: Mapping[tuple, Sequence] = (),
                 *, parity: int = 0):
        if arity < 2:
            raise AlgebraError(f"arity must be at least 2, got {arity}")
        self.space = space
        self.arity = arity
        self.parity = parity
        stored = {}
        for t, v in dict(values).items():
            t = tuple(int(i) for i in t)
            if len(t) != arity:
                raise AlgebraError(f"tuple {t} has length {len(t)}, arity is {arity}")
            for i in t:
                space.check_index(i)
            c = _canonicalize(t, space.parity)
            if c is None or c != (1, t):
                raise AlgebraError(f"tuple {t} is not canonical")
            vec = tuple(as_scalar(x) for x in v)
            if len(vec) != space.dim:
                raise AlgebraError(f"value for {t} has length {len(vec)}, dimension is {space.dim}")
            want = (tuple_parity(t, space) + parity) % 2
            for k, x in enumerate(vec):
                if x != 0 and space.parity[k] != want:
                    raise AlgebraError(
                        f"grading violated: value of {t} has a component on basis vector {k} "
                        f"of parity {space.parity[k]}, expected {want}"
                    )
            if any(x != 0 for x in vec):
                stored[t] = vec
        self._values = dict(sorted(stored.items()))

    @classmethod
    def from_entries(cls, space: SuperSpace, arity: int, entries: Iterable[tuple],
                     *, parity: int = 0) -> "BracketTensor":
        """Build from ``(raw_tuple, value)`` pairs in any argument order.

        Raw tuples are canonicalized with their Koszul signs; two entries that
        collide must agree, and a tuple forced to zero must carry zero.
        """
        merged: dict[tuple, tuple] = {}
        for raw, v in entries:
            vec = tuple(as_scalar(x) for x in v)
            c = canonicalize_tuple(raw, space)
            if c is None:
                if any(x != 0 for x in vec):
                    raise AlgebraError(f"tuple {tuple(raw)} repeats an even index but has a nonzero value")
                continue
            sign, t = c
            signed = tuple(sign * x for x in vec)
            if t in merged and merged[t] != signed:
                raise AlgebraError(f"entries for {tuple(raw)} and its reordering {t} conflict")
            merged[t] = signed
        return cls(space, arity, merged, parity=parity)

    @classmethod
    def from_full(cls, space: SuperSpace, arity: int, T: np.ndarray, *, parity: int = 0,
                  check: bool = False) -> "BracketTensor":
        """Read the canonical values out of a full raw tensor."""
        vals = {}
        for t in canonical_tuples(space, arity):
            vals[t] = tuple(T[t])
        out = cls(space, arity, vals, parity=parity)
        if check and not np.array_equal(out.full(), T):
            raise AlgebraError("tensor is not super-skew")
        return out

    @classmethod
    def zero(cls, space: SuperSpace, arity: int) -> "BracketTensor":
        return cls(space, arity, {})

    def items(self):
        return self._values.items()

    def __len__(self):
        return len(self._values)

    def value(self, t: tuple) -> tuple:
        return self._values.get(tuple(t), (0,) * self.space.dim)

    def __call__(self, *args) -> np.ndarray:
        """Evaluate on basis indices."""
        return self.eval_indices(args)

    def eval_indices(self, args: Sequence[int]) -> np.ndarray:
        if len(args) != self.arity:
            raise AlgebraError(f"{len(args)} arguments for a bracket of arity {self.arity}")
        c = canonicalize_tuple(args, self.space)
        out = zeros(self.space.dim)
        if c is None:
            return out
        sign, t = c
        v = self._values.get(t)
        if v is None:
            return out
        for k, x in enumerate(v):
            out[k] = sign * x
        return out

    def eval_vectors(self, vectors: Sequence) -> np.ndarray:
        """Multilinear evaluation on arbitrary coordinate vectors."""
        T = self.full()
        for v in vectors:
            T = np.tensordot(np.asarray(v, dtype=object), T, axes=([0], [0]))
        return T

    def full(self) -> np.ndarray:
        """The raw tensor ``T[i_1, ..., i_n, out]`` on all ordered tuples."""
        if getattr(self, "_full", None) is None:
            d, n = self.space.dim, self.arity
            T = zeros((d,) * n + (d,))
            for raw in itertools.product(range(d), repeat=n):
                c = _canonicalize(raw, self.space.parity)
                if c is None:
                    continue
                v = self._values.get(c[1])
                if v is not None:
                    T[raw] = np.array(v, dtype=object) * c[0]
            self._full = _frozen(T)
        return self._full

    def canonical_coords(self) -> np.ndarray:
        """Array ``[w, out]`` over the canonical tuples of length ``arity``."""
        wb = wedge_basis(self.space, self.arity)
        out = zeros((len(wb), self.space.dim))
        for t, v in self._values.items():
            out[wb.index[t]] = np.array(v, dtype=object)
        return out

    @classmethod
    def from_canonical_coords(cls, space: SuperSpace, arity: int, coords, *, parity: int = 0):
        wb = wedge_basis(space, arity)
        coords = np.asarray(coords, dtype=object).reshape(len(wb), space.dim)
        return cls(space, arity, {t: tuple(coords[w]) for w, t in enumerate(wb.tuples)},
                   parity=parity)

    def compose_output(self, beta: LinearMap) -> "BracketTensor":
        """``beta o [.,...,.]``."""
        return BracketTensor(self.space, self.arity,
                             {t: tuple(beta.matrix.dot(np.array(v, dtype=object)))
                              for t, v in self._values.items()}, parity=self.parity)

    def __add__(self, other: "BracketTensor") -> "BracketTensor":
        keys = set(self._values) | set(other._values)
        z = (0,) * self.space.dim
        return BracketTensor(self.space, self.arity,
                             {t: tuple(a + b for a, b in zip(self._values.get(t, z), other._values.get(t, z)))
                              for t in keys}, parity=self.parity)

    def __neg__(self) -> "BracketTensor":
        return BracketTensor(self.space, self.arity,
                             {t: tuple(-x for x in v) for t, v in self._values.items()},
                             parity=self.parity)

    def __sub__(self, other: "BracketTensor") -> "BracketTensor":
        return self + (-other)

    def __mul__(self, c) -> "BracketTensor":
        c = as_scalar(c)
        return BracketTensor(self.space, self.arity,
                             {t: tuple(c * x for x in v) for t, v in self._values.items()},
                             parity=self.parity)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self._values

    def __eq__(self, other):
        return (isinstance(other, BracketTensor) and self.space == other.space
                and self.arity == other.arity and self._values == other._values)

    __hash__ = None

    def __repr__(self):
        return f"BracketTensor(arity={self.arity}, entries={len(self._values)})"


class HomNambuSuperalgebra:
    """The triple (space, bracket, alpha) of a multiplicative n-ary Hom-Nambu-Lie superalgebra.

    Construction checks only shapes and gradings; the defining identities are
    checked by :mod:`homnambu.axioms`.
    """

    def __init__(self, space: SuperSpace, arity: int, bracket: BracketTensor,
                 alpha: Optional[LinearMap] = None, name: str = ""):
        if alpha is None:
            alpha = LinearMap.identity(space)
        if bracket.arity != arity:
            raise AlgebraError(f"bracket arity {bracket.arity} differs from arity {arity}")
        if bracket.space != space or alpha.space != space or alpha.target != space:
            raise AlgebraError("bracket, twist map and algebra live on different spaces")
        if bracket.parity != 0:
            raise AlgebraError("the bracket must be even")
        if not alpha.is_even():
            raise AlgebraError("the twist map must be even")
        if alpha.declared_parity != 0:
            alpha = LinearMap(space, alpha.matrix, 0)
        self.space = space
        self.arity = arity
        self.bracket = bracket
        self.alpha = alpha
        self.name = name

    @classmethod
    def abelian(cls, space: SuperSpace, arity: int, alpha: Optional[LinearMap] = None):
        return cls(space, arity, BracketTensor.zero(space, arity), alpha, name="abelian")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def parity(self) -> tuple:
        return self.space.parity

    def with_alpha(self, alpha: LinearMap) -> "HomNambuSuperalgebra":
        return HomNambuSuperalgebra(self.space, self.arity, self.bracket, alpha, self.name)

    def __eq__(self, other):
        return (isinstance(other, HomNambuSuperalgebra) and self.arity == other.arity
                and self.space == other.space and self.bracket == other.bracket
                and self.alpha == other.alpha)

    __hash__ = None

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"HomNambuSuperalgebra({label}dim={self.dim}, arity={self.arity}, parity={list(self.parity)})"

    # cached structure tensors shared by the solvers

    @cached_property
    def alpha_powers(self) -> list:
        return [LinearMap.identity(self.space).matrix]

    def alpha_power(self, k: int) -> np.ndarray:
        pw = self.alpha_powers
        while len(pw) <= k:
            pw.append(self.alpha.matrix.dot(pw[-1]))
        return pw[k]

    @cached_property
    def fundamental_basis(self) -> WedgeBasis:
        """Canonical basis of the (n-1)-th super-exterior power."""
        return wedge_basis(self.space, self.arity - 1)

    @cached_property
    def adjoint(self) -> np.ndarray:
        """``Ad[w, z, out]``: the bracket with a canonical fundamental tuple in front."""
        B = self.bracket.full()
        return self.fundamental_basis.gather(B, 0)

    def induced_alpha(self, k: int = 1) -> np.ndarray:
        """Matrix of alpha^k acting on the fundamental objects."""
        cache = self.__dict__.setdefault("_induced", {})
        if k not in cache:
            cache[k] = self.fundamental_basis.induced(self.alpha_power(k))
        return cache[k]


def bracket_eval(alg: HomNambuSuperalgebra, args: Sequence[int]) -> np.ndarray:
    if len(args) != alg.arity:
        raise AlgebraError(f"{len(args)} arguments for an algebra of arity {alg.arity}")
    return alg.bracket.eval_indices(args)


def einsum_letters(count: int, skip: str = "") -> list[str]:
    letters = [c for c in string.ascii_letters if c not in skip]
    return letters[:count]
