"""Coboundary operators with adjoint coefficients and the deformation complex.

Level-m cochains are stored densely on canonical fundamental tuples: an array
of shape ``(W,)*m + (d, d)`` indexed by ``(X_1, ..., X_m, z, out)``, where
``W`` is the size of the canonical basis of ``g^(n-1)``. A level-0 cochain is
a linear map stored as ``[z, out]`` (the transpose of its matrix).

Two complexes live here:

* the generic one, ``delta_m``, applying the four-term coboundary with
  ``X . z = [x^1, ..., x^(n-1), z]`` and the twisted bracket of fundamental
  objects ``[X, Y]_alpha``;
* the deformation complex, where level-0 cochains are alpha-commuting maps,
  level-1 cochains are alpha-compatible super-skew n-ary maps and the
  operators are ``delta0`` and ``delta1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    AlgebraError,
    BracketTensor,
    HomNambuSuperalgebra,
    LinearMap,
    apply_output,
    apply_slot,
    canonical_tuples,
    einsum_letters,
    is_zero,
    wedge_basis,
    zeros,
)
from .linalg import SubspaceBasis, kernel_basis, quotient_dim

__all__ = [
    "Cochain",
    "CochainConstraint",
    "CohomologyError",
    "delta0",
    "delta1",
    "delta_m",
    "def_cocycle_space",
    "def_coboundary_space",
    "def_cohomology_dim",
    "is_rigid",
    "rigidity_report",
    "cocycle_space",
    "coboundary_space",
    "cohomology_dim",
    "alpha_commuting_maps",
    "compatible_cochain_basis",
    "deformation_coordinates",
    "skew_coords_to_bracket",
    "bracket_to_skew_coords",
    "delta1_vs_delta_m",
]

MAX_LEVEL = 3


class CohomologyError(AlgebraError):
    pass


def _sign(parity_exp) -> np.ndarray:
    return 1 - 2 * (np.asarray(parity_exp, dtype=np.int64) % 2)


def _outer_parity(*arrays) -> np.ndarray:
    """Sum of parities over a product of index sets, mod 2."""
    out = np.zeros((), dtype=np.int64)
    for a in arrays:
        out = np.add.outer(out, a)
    return out % 2


class Cochain:
    """A level-m cochain with adjoint coefficients and a declared parity."""

    def __init__(self, alg: HomNambuSuperalgebra, level: int, values, parity: int = 0,
                 *, check: bool = True):
        if level < 0:
            raise CohomologyError("cochain level must be nonnegative")
        self.alg = alg
        self.level = level
        self.parity = int(parity)
        W, d = len(alg.fundamental_basis), alg.dim
        shape = (W,) * level + (d, d)
        values = np.asarray(values, dtype=object)
        if values.shape != shape:
            raise CohomologyError(f"level-{level} cochain needs shape {shape}, got {values.shape}")
        self.values = values
        if check:
            bad = np.argwhere(values_mask_violations(alg, level, self.parity, values))
            if len(bad):
                raise CohomologyError(
                    f"value at {tuple(bad[0])} violates the declared parity {self.parity}"
                )

    @classmethod
    def zero(cls, alg, level, parity=0):
        W, d = len(alg.fundamental_basis), alg.dim
        return cls(alg, level, zeros((W,) * level + (d, d)), parity, check=False)

    @classmethod
    def from_map(cls, alg, phi: LinearMap) -> "Cochain":
        p = phi.parity
        if p is None:
            raise CohomologyError("a level-0 cochain must be homogeneous")
        return cls(alg, 0, phi.matrix.T.copy(), p)

    def as_map(self) -> LinearMap:
        if self.level != 0:
            raise CohomologyError("only level-0 cochains are linear maps")
        return LinearMap(self.alg.space, self.values.T.copy())

    @classmethod
    def from_bracket(cls, alg, F: BracketTensor) -> "Cochain":
        """The level-1 cochain ``(X, z) -> F(x^1, ..., x^(n-1), z)``."""
        if F.arity != alg.arity:
            raise CohomologyError("arity mismatch")
        vals = alg.fundamental_basis.gather(F.full(), 0)
        return cls(alg, 1, vals, F.parity, check=False)

    def to_bracket(self) -> BracketTensor:
        """Read back a super-skew n-ary map (raises if the level-1 data is not skew)."""
        if self.level != 1:
            raise CohomologyError("only level-1 cochains are n-ary maps")
        raw = _level1_raw(self.alg, self.values[None])[0]
        out = BracketTensor.from_full(self.alg.space, self.alg.arity, raw, parity=self.parity)
        if not np.array_equal(Cochain.from_bracket(self.alg, out).values, self.values):
            raise CohomologyError("level-1 cochain is not super-skew in its last slot")
        return out

    def is_zero(self) -> bool:
        return is_zero(self.values)

    def is_alpha_compatible(self) -> bool:
        """``f(aX_1, .., aX_m, a z) == a f(X_1, .., X_m, z)``."""
        return is_zero(_alpha_compat_level(self.alg, self.values[None], self.level))

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.level == other.level
                and np.array_equal(self.values, other.values))

    __hash__ = None

    def __add__(self, other):
        return Cochain(self.alg, self.level, self.values + other.values, self.parity, check=False)

    def __sub__(self, other):
        return Cochain(self.alg, self.level, self.values - other.values, self.parity, check=False)

    def __mul__(self, c):
        return Cochain(self.alg, self.level, self.values * c, self.parity, check=False)

    __rmul__ = __mul__

    def items(self):
        """Nonzero values keyed by ``(fundamental tuples, z)``."""
        fb = self.alg.fundamental_basis
        W, d = len(fb), self.alg.dim
        for idx in itertools.product(range(W), repeat=self.level):
            for z in range(d):
                v = self.values[idx + (z,)]
                if any(x != 0 for x in v):
                    yield tuple(fb.tuples[w] for w in idx), z, tuple(v)

    def __repr__(self):
        return f"Cochain(level={self.level}, parity={self.parity})"


def values_mask_violations(alg, level, parity, values) -> np.ndarray:
    allowed = parity_mask(alg, level, parity)
    nz = np.vectorize(lambda x: x != 0, otypes=[bool])(values) if values.size else np.zeros(values.shape, bool)
    return nz & ~allowed


def parity_mask(alg: HomNambuSuperalgebra, level: int, parity: int) -> np.ndarray:
    """Boolean mask of coordinates allowed for a homogeneous cochain of ``parity``."""
    pw = alg.fundamental_basis.parity_array
    pz = alg.space.parity_array
    args = _outer_parity(*([pw] * level + [pz]))
    want = (args + parity) % 2
    return np.equal.outer(want, pz)


@dataclass(frozen=True)
class CochainConstraint:
    """Side conditions imposed on deformation cochains."""

    require_alpha_compat: bool = True
    require_super_skew_last_slot: bool = True


# structure tensors -----------------------------------------------------------


def _fundamental_bracket(alg: HomNambuSuperalgebra) -> np.ndarray:
    """``L[w_i, w_j, u]``: coordinates of ``[X_i, X_j]_alpha`` on canonical fundamental tuples.

    ``[X, Y]_alpha = sum_k (-1)^(|X| (|y^1|+...+|y^(k-1)|))
    alpha(y^1) ^ ... ^ (X . y^k) ^ ... ^ alpha(y^(n-1))``.
    """
    cache = alg.__dict__.setdefault("_fund_bracket", None)
    if cache is not None:
        return cache
    fb = alg.fundamental_basis
    W, L = len(fb), fb.length
    A = alg.alpha_power(1)
    Ad = alg.adjoint
    P = fb.projection
    par = alg.space.parity
    out = zeros((W, W, W))
    for j, y in enumerate(fb.tuples):
        ay = [A[:, y[s]] for s in range(L)]
        for k in range(L):
            pre = sum(par[y[s]] for s in range(k)) % 2
            # wedge with slot k left open: T[v, u]
            T = P
            for s in range(L):
                if s == k:
                    T = np.moveaxis(T, 0, -1)
                else:
                    T = np.tensordot(ay[s], T, axes=([0], [0]))
            # T now [u, v]; contract v with Ad[w_i, y_k, v]
            contrib = np.tensordot(Ad[:, y[k], :], T, axes=([1], [1]))  # [w_i, u]
            for i in range(W):
                sgn = -1 if (fb.parity[i] * pre) % 2 else 1
                out[i, j, :] = out[i, j, :] + sgn * contrib[i]
    alg.__dict__["_fund_bracket"] = out
    return out


def _twisted_adjoint(alg: HomNambuSuperalgebra, k: int) -> np.ndarray:
    """``[alpha^k(X) . v]`` as ``[w, v, out]``."""
    LA = alg.induced_alpha(k)
    return np.tensordot(LA, alg.adjoint, axes=([0], [0]))


def _last_term_tensors(alg: HomNambuSuperalgebra, m: int) -> list:
    """For each slot k of the last fundamental object, ``Q_k[w, v, z, out]``.

    ``Q_k`` evaluates ``[alpha^m x^1, ..., v (slot k), ..., alpha^m x^(n-1), alpha^m z]``.
    """
    fb = alg.fundamental_basis
    L, d, W = fb.length, alg.dim, len(fb)
    Am = alg.alpha_power(m)
    B = alg.bracket.full()
    out = []
    for k in range(L):
        Bk = B
        for s in range(L + 1):
            if s != k:
                Bk = apply_slot(Bk, s, Am)
        Q = zeros((W, d, d, d))
        for w, t in enumerate(fb.tuples):
            idx = tuple(slice(None) if s == k else t[s] for s in range(L))
            Q[w] = Bk[idx]
        out.append(Q)
    return out


# generic coboundary ----------------------------------------------------------


def _delta_batch(alg: HomNambuSuperalgebra, f: np.ndarray, m: int, parity: int) -> np.ndarray:
    """Coboundary of a batch ``f[b, X_1..X_m, z, out]`` of level-m cochains."""
    fb = alg.fundamental_basis
    W, d = len(fb), alg.dim
    n = alg.arity
    L = n - 1
    pw = fb.parity_array
    A1 = alg.alpha_power(1)
    LA1 = alg.induced_alpha(1)
    batch = f.shape[0]
    out = zeros((batch,) + (W,) * (m + 1) + (d, d))

    letters = einsum_letters(m + 6)
    bl = letters[0]
    X = letters[1: m + 2]          # X_1 .. X_{m+1}
    z, o, u, v = letters[m + 2: m + 6]
    out_sub = bl + "".join(X) + z + o

    def wedge_slots_alpha(arr, skip=None):
        for s in range(m):
            if s != skip:
                arr = apply_slot(arr, 1 + s, LA1)
        return arr

    def par_between(a, b):
        """Sum of parities of X_a .. X_b (1-based, inclusive) broadcast over all X."""
        shape = [1] * (m + 1)
        acc = np.zeros([1] * (m + 1), dtype=np.int64)
        for c in range(a, b + 1):
            sh = list(shape)
            sh[c - 1] = W
            acc = acc + pw.reshape(sh)
        return acc % 2

    def px(i):
        sh = [1] * (m + 1)
        sh[i - 1] = W
        return pw.reshape(sh)

    def with_tail(sign):
        return sign.reshape((1,) + sign.shape + (1, 1))

    # term 1: sum_{i<j} (-1)^i (-1)^{|X_i|(|X_{i+1}|+..+|X_{j-1}|)} f(aX_1,..^i..,[X_i,X_j]_a,..,aX_{m+1}, a z)
    if m >= 1:
        Lbr = _fundamental_bracket(alg)
        fz = apply_slot(f, 1 + m, A1)
        for i in range(1, m + 2):
            for j in range(i + 1, m + 2):
                slot_j = j - 2  # position of X_j among f's wedge slots once X_i is removed
                Fj = wedge_slots_alpha(fz, skip=slot_j)
                fsub = [X[c - 1] for c in range(1, m + 2) if c != i]
                fsub[slot_j] = u
                term = np.einsum(f"{bl}{''.join(fsub)}{z}{o},{X[i - 1]}{X[j - 1]}{u}->{out_sub}", Fj, Lbr)
                sign = (-1) ** i * _sign(px(i) * par_between(i + 1, j - 1))
                out = out + term * with_tail(sign)

    # term 2: sum_i (-1)^i (-1)^{|X_i|(|X_{i+1}|+..+|X_{m+1}|)} f(aX_1,..^i..,aX_{m+1}, X_i . z)
    Ad = alg.adjoint
    Fall = wedge_slots_alpha(f)
    for i in range(1, m + 2):
        fsub = "".join(X[c - 1] for c in range(1, m + 2) if c != i)
        term = np.einsum(f"{bl}{fsub}{v}{o},{X[i - 1]}{z}{v}->{out_sub}", Fall, Ad)
        sign = (-1) ** i * _sign(px(i) * par_between(i + 1, m + 1))
        out = out + term * with_tail(sign)

    # term 3: sum_i (-1)^{i+1} (-1)^{|X_i|(|f|+|X_1|+..+|X_{i-1}|)} a^m(X_i) . f(X_1,..^i..,X_{m+1}, z)
    AdM = _twisted_adjoint(alg, m)
    for i in range(1, m + 2):
        fsub = "".join(X[c - 1] for c in range(1, m + 2) if c != i)
        term = np.einsum(f"{bl}{fsub}{z}{v},{X[i - 1]}{v}{o}->{out_sub}", f, AdM)
        sign = (-1) ** (i + 1) * _sign(px(i) * (parity + par_between(1, i - 1)))
        out = out + term * with_tail(sign)

    # term 4: (-1)^m (f(X_1..X_m, ) . X_{m+1}) ._a a^m(z)
    Qs = _last_term_tensors(alg, m)
    pre_f = (parity + par_between(1, m)) % 2  # shape broadcast over X_1..X_{m+1}
    for k in range(L):
        comp = np.array([t[k] for t in fb.tuples], dtype=np.intp)
        G = f[(slice(None),) * (m + 1) + (comp,)]  # [b, X_1..X_m, w, v]
        fsub = "".join(X[:m])
        w = X[m]
        term = np.einsum(f"{bl}{fsub}{w}{v},{w}{v}{z}{o}->{out_sub}", G, Qs[k])
        pre_x = np.array([sum(alg.space.parity[t[s]] for s in range(k)) % 2 for t in fb.tuples],
                         dtype=np.int64)
        sh = [1] * (m + 1)
        sh[m] = W
        sign = (-1) ** m * _sign(pre_f * pre_x.reshape(sh))
        out = out + term * with_tail(sign)
    return out


def delta_m(alg: HomNambuSuperalgebra, f: Cochain) -> Cochain:
    """The level-(m+1) coboundary of a level-m cochain (``m = 0`` allowed)."""
    if f.alg is not alg and f.alg != alg:
        raise CohomologyError("cochain belongs to a different algebra")
    vals = _delta_batch(alg, f.values[None], f.level, f.parity)[0]
    return Cochain(alg, f.level + 1, vals, f.parity, check=False)


# deformation complex ---------------------------------------------------------


def _level1_raw(alg: HomNambuSuperalgebra, f: np.ndarray) -> np.ndarray:
    """Batch of level-1 arrays ``[b, w, z, out]`` to raw n-ary tensors."""
    P = alg.fundamental_basis.projection
    L = alg.arity - 1
    letters = einsum_letters(L + 4)
    xs = "".join(letters[:L])
    b, w, z, o = letters[L: L + 4]
    return np.einsum(f"{xs}{w},{b}{w}{z}{o}->{b}{xs}{z}{o}", P, f)


def _phi_raw(alg: HomNambuSuperalgebra, phis: np.ndarray, parity: int) -> np.ndarray:
    """Raw ``[b, x_1..x_n, out]`` of ``sum_i +-[x_1, .., phi x_i, .., x_n] - phi[x_1..x_n]``."""
    n, d = alg.arity, alg.dim
    B = alg.bracket.full()
    par = alg.space.parity_array
    letters = einsum_letters(n + 4)
    xs = letters[:n]
    b, v, o = letters[n: n + 3]
    xs_s = "".join(xs)
    # phis[b, out, in] are matrices (column convention)
    out = -np.einsum(f"{b}{o}{v},{xs_s}{v}->{b}{xs_s}{o}", phis, B)
    for i in range(n):
        inner = xs[:i] + [v] + xs[i + 1:]
        term = np.einsum(f"{''.join(inner)}{o},{b}{v}{xs[i]}->{b}{xs_s}{o}", B, phis)
        if parity and i:
            sign = _sign(_outer_parity(*([par] * i)) * parity)
            term = term * sign.reshape((1,) + sign.shape + (1,) * (n - i + 1))
        out = out + term
    return out


def _gather_canonical(alg: HomNambuSuperalgebra, raw: np.ndarray) -> np.ndarray:
    """``[b, x_1..x_n, out]`` -> ``[b, canonical n-tuple, out]``."""
    wb = wedge_basis(alg.space, alg.arity)
    return wb.gather(raw, 1)


def _check_phi(alg: HomNambuSuperalgebra, phi: LinearMap, require_commuting: bool = True) -> int:
    p = phi.parity
    if p is None:
        raise CohomologyError("delta0 needs a homogeneous map")
    if require_commuting and not phi.commutes_with(alg.alpha):
        raise CohomologyError("delta0 needs a map commuting with alpha")
    return p


def delta0(alg: HomNambuSuperalgebra, phi: LinearMap) -> Cochain:
    """``(delta0 phi)(x_1..x_n) = sum_i [x_1, .., phi(x_i), .., x_n] - phi[x_1, .., x_n]``.

    For odd ``phi`` the i-th term carries the Koszul sign of moving ``phi``
    past ``x_1 .. x_(i-1)``. The result is returned as a level-1 cochain.
    """
    p = _check_phi(alg, phi)
    raw = _phi_raw(alg, phi.matrix[None], p)[0]
    F = BracketTensor.from_full(alg.space, alg.arity, raw, parity=p)
    return Cochain.from_bracket(alg, F)


def _delta1_raw(alg: HomNambuSuperalgebra, F: np.ndarray, parity: int) -> np.ndarray:
    """l = 1 deformation operator on a batch of raw skew maps ``F[b, y_1..y_n, out]``.

    Returns ``[b, x_1..x_{n-1}, y_1..y_n, out]``.
    """
    n = alg.arity
    A = alg.alpha.matrix
    B = alg.bracket.full()
    par = alg.space.parity_array
    letters = einsum_letters(2 * n + 3)
    xs, ys = letters[: n - 1], letters[n - 1: 2 * n - 1]
    v, o, b = letters[2 * n - 1], letters[2 * n], letters[2 * n + 1]
    xs_s, ys_s = "".join(xs), "".join(ys)
    out_sub = f"{b}{xs_s}{ys_s}{o}"

    Bx = B
    for s in range(n - 1):
        Bx = apply_slot(Bx, s, A)
    Fx = F
    for s in range(n - 1):
        Fx = apply_slot(Fx, 1 + s, A)
    px = _outer_parity(*([par] * (n - 1)))

    def tail(sign, lead):
        return sign.reshape((1,) + sign.shape + (1,) * lead)

    # [a x_1, .., a x_{n-1}, f(y)] with the sign of f passing the x's
    t1 = np.einsum(f"{xs_s}{v}{o},{b}{ys_s}{v}->{out_sub}", Bx, F)
    if parity:
        t1 = t1 * tail(_sign(px * parity), n + 1)
    # f(a x_1, .., a x_{n-1}, [y])
    t2 = np.einsum(f"{b}{xs_s}{v}{o},{ys_s}{v}->{out_sub}", Fx, B)
    out = t1 + t2
    for i in range(n):
        Bi, Fi = B, F
        for s in range(n):
            if s != i:
                Bi = apply_slot(Bi, s, A)
                Fi = apply_slot(Fi, 1 + s, A)
        inner = "".join(ys[:i] + [v] + ys[i + 1:])
        py = _outer_parity(*([par] * i)) if i else np.zeros((), dtype=np.int64)
        sgn = np.add.outer(np.zeros(px.shape, np.int64), py)
        s3 = _sign(np.multiply.outer(px, py) + parity * sgn)
        s4 = _sign(np.multiply.outer(px, py))
        lead = (n - i) + 1
        # [a y_1, .., f(x, y_i), .., a y_n]
        t3 = np.einsum(f"{inner}{o},{b}{xs_s}{ys[i]}{v}->{out_sub}", Bi, F)
        # f(a y_1, .., [x, y_i], .., a y_n)
        t4 = np.einsum(f"{b}{inner}{o},{xs_s}{ys[i]}{v}->{out_sub}", Fi, B)
        out = out - t3 * tail(s3, lead) - t4 * tail(s4, lead)
    return out


def _delta1_level2(alg: HomNambuSuperalgebra, raw: np.ndarray) -> np.ndarray:
    """Restrict ``[b, x.., y.., out]`` to canonical ``(X, Y, z)`` level-2 layout."""
    fb = alg.fundamental_basis
    L = fb.length
    g = fb.gather(raw, 1)
    return fb.gather(g, 2)


def delta1(alg: HomNambuSuperalgebra, f) -> Cochain:
    """The l = 1 deformation operator.

    Its value at ``(x_1..x_(n-1); y_1..y_n)`` is
    ``[a x, f(y)] + f(a x, [y]) - sum_i s_i ([a y.., f(x, y_i), .., a y_n] + f(a y.., [x, y_i], .., a y_n))``
    with ``s_i = (-1)^((|x_1|+..+|x_(n-1)|)(|y_1|+..+|y_(i-1)|))`` (and the
    extra Koszul signs of ``f`` passing arguments when ``f`` is odd).
    ``f`` may be a :class:`BracketTensor` or a level-1 :class:`Cochain`.
    """
    if isinstance(f, Cochain):
        if f.level != 1:
            raise CohomologyError("delta1 acts on level-1 cochains")
        F = f.to_bracket()
    else:
        F = f
    raw = _delta1_raw(alg, F.full()[None], F.parity)
    return Cochain(alg, 2, _delta1_level2(alg, raw)[0], F.parity, check=False)


def delta1_vs_delta_m(alg: HomNambuSuperalgebra, parity: int = 0) -> dict:
    """Diagnostic: compare the kernels of ``delta1`` and ``delta_m`` (m = 1) on skew cochains."""
    space = _skew_coordinates(alg, parity)
    basis = np.array(_skew_unit_brackets(alg, parity, space), dtype=object)
    if not len(space):
        return {"unknowns": 0, "kernel_delta1": 0, "kernel_delta_m": 0, "same_kernel": True,
                "proportional": True}
    Fraw = basis
    lev1 = alg.fundamental_basis.gather(Fraw, 1)
    a = _delta1_level2(alg, _delta1_raw(alg, Fraw, parity)).reshape(len(space), -1)
    b = _delta_batch(alg, lev1, 1, parity).reshape(len(space), -1)
    ka = kernel_basis(a.T.tolist(), len(space))
    kb = kernel_basis(b.T.tolist(), len(space))
    prop = None
    for c in (1, -1):
        if np.array_equal(a, b * c):
            prop = c
    return {
        "unknowns": len(space),
        "kernel_delta1": ka.dim,
        "kernel_delta_m": kb.dim,
        "same_kernel": ka.same_span(kb),
        "proportional": prop,
    }


def _skew_coordinates(alg: HomNambuSuperalgebra, parity: int) -> list[tuple[int, int]]:
    """Allowed ``(canonical n-tuple position, target)`` pairs for a homogeneous skew map."""
    wb = wedge_basis(alg.space, alg.arity)
    par = alg.space.parity
    return [(w, k) for w in range(len(wb)) for k in range(alg.dim)
            if par[k] == (wb.parity[w] + parity) % 2]


def _skew_unit_brackets(alg, parity, coords) -> list:
    """Raw full tensors of the unit skew maps on the given coordinates."""
    wb = wedge_basis(alg.space, alg.arity)
    out = []
    d = alg.dim
    for w, k in coords:
        vec = [0] * d
        vec[k] = 1
        F = BracketTensor(alg.space, alg.arity, {wb.tuples[w]: vec}, parity=parity)
        out.append(F.full())
    return out


def skew_coords_to_bracket(alg, coords_space, vec, parity=0) -> BracketTensor:
    wb = wedge_basis(alg.space, alg.arity)
    vals: dict = {}
    for (w, k), c in zip(coords_space, vec):
        if c != 0:
            vals.setdefault(wb.tuples[w], [0] * alg.dim)[k] = c
    return BracketTensor(alg.space, alg.arity, vals, parity=parity)


def bracket_to_skew_coords(alg, coords_space, F: BracketTensor) -> tuple:
    wb = wedge_basis(alg.space, alg.arity)
    return tuple(F.value(wb.tuples[w])[k] for w, k in coords_space)


def _alpha_compat_rows(alg, Fraw: np.ndarray) -> np.ndarray:
    """``alpha o f - f o (alpha, .., alpha)`` for a batch of raw maps, flattened per batch item."""
    A = alg.alpha.matrix
    left = apply_output(Fraw, A)
    right = Fraw
    for s in range(alg.arity):
        right = apply_slot(right, 1 + s, A)
    return (left - right).reshape(Fraw.shape[0], -1)


def _stack_columns(*blocks) -> list[list]:
    """Blocks are ``[unknowns, rows]``; return the row-major constraint matrix."""
    mats = [blk for blk in blocks if blk.shape[1]]
    if not mats:
        return []
    M = np.concatenate(mats, axis=1).T
    return [list(r) for r in M if any(x != 0 for x in r)]


@dataclass
class DeformationSpaces:
    coordinates: list            # (canonical n-tuple position, target) pairs
    cocycles: SubspaceBasis
    coboundaries: SubspaceBasis
    parity: int

    @property
    def cohomology_dim(self) -> int:
        return quotient_dim(self.cocycles, self.coboundaries)


def def_cocycle_space(alg: HomNambuSuperalgebra, parity: int = 0) -> SubspaceBasis:
    """Alpha-compatible super-skew n-ary maps of the given parity killed by ``delta1``.

    Coordinates: the pairs returned by ``deformation_coordinates``.
    """
    return _def_spaces(alg, parity).cocycles


def def_coboundary_space(alg: HomNambuSuperalgebra, parity: int = 0) -> SubspaceBasis:
    """Image of ``delta0`` on alpha-commuting maps of the given parity."""
    return _def_spaces(alg, parity).coboundaries


def deformation_coordinates(alg: HomNambuSuperalgebra, parity: int = 0) -> list:
    return _skew_coordinates(alg, parity)


def alpha_commuting_maps(alg: HomNambuSuperalgebra, parity: int = 0) -> list[LinearMap]:
    """Basis of the maps of the given parity that commute with alpha."""
    d = alg.dim
    par = alg.space.parity
    coords = [(i, j) for i in range(d) for j in range(d) if (par[i] + par[j]) % 2 == parity]
    A = alg.alpha.matrix
    cols = []
    for i, j in coords:
        M = zeros((d, d))
        M[i, j] = 1
        cols.append((M.dot(A) - A.dot(M)).reshape(-1))
    rows = _stack_columns(np.array(cols, dtype=object).reshape(len(coords), d * d)) if coords else []
    ker = kernel_basis(rows, len(coords))
    maps = []
    for vec in ker:
        M = zeros((d, d))
        for (i, j), c in zip(coords, vec):
            M[i, j] = c
        maps.append(LinearMap(alg.space, M, parity))
    return maps


def _def_spaces(alg: HomNambuSuperalgebra, parity: int) -> DeformationSpaces:
    cache = alg.__dict__.setdefault("_def_spaces", {})
    if parity in cache:
        return cache[parity]
    coords = _skew_coordinates(alg, parity)
    N = len(coords)
    if N:
        Fraw = np.array(_skew_unit_brackets(alg, parity, coords), dtype=object)
        compat = _alpha_compat_rows(alg, Fraw)
        d1 = _delta1_level2(alg, _delta1_raw(alg, Fraw, parity)).reshape(N, -1)
        Z = kernel_basis(_stack_columns(compat, d1), N)
    else:
        Z = SubspaceBasis(0, ())
    phis = alpha_commuting_maps(alg, parity)
    if phis and N:
        mats = np.array([p.matrix for p in phis], dtype=object)
        raw = _phi_raw(alg, mats, parity)
        canon = _gather_canonical(alg, raw)
        images = [[canon[b][w, k] for w, k in coords] for b in range(len(phis))]
        Bsp = SubspaceBasis.span(N, images)
    else:
        Bsp = SubspaceBasis(N, ())
    spaces = DeformationSpaces(coords, Z, Bsp, parity)
    try:
        quotient_dim(Z, Bsp)
    except ValueError as exc:
        raise CohomologyError(f"coboundaries not contained in cocycles (parity {parity}): {exc}") from exc
    cache[parity] = spaces
    return spaces


def def_cohomology_dim(alg: HomNambuSuperalgebra, parity: int = 0) -> int:
    """``dim Z - dim B`` for the deformation complex; asserts ``B`` inside ``Z``."""
    return _def_spaces(alg, parity).cohomology_dim


def rigidity_report(alg: HomNambuSuperalgebra) -> dict:
    out = {}
    for p, label in ((0, "even"), (1, "odd")):
        sp = _def_spaces(alg, p)
        out[label] = {"Z": sp.cocycles.dim, "B": sp.coboundaries.dim, "H": sp.cohomology_dim}
    out["rigid"] = out["even"]["H"] == 0
    return out


def is_rigid(alg: HomNambuSuperalgebra) -> bool:
    """True iff the even deformation cohomology vanishes."""
    return def_cohomology_dim(alg, 0) == 0


# generic complex -------------------------------------------------------------


def _level_coordinates(alg, level, parity):
    mask = parity_mask(alg, level, parity)
    return [tuple(int(i) for i in idx) for idx in np.argwhere(mask)], mask.shape


def _unit_cochains(alg, level, parity):
    coords, shape = _level_coordinates(alg, level, parity)
    units = zeros((len(coords),) + shape)
    for b, idx in enumerate(coords):
        units[(b,) + idx] = 1
    return coords, units


def _alpha_compat_level(alg, f: np.ndarray, level: int) -> np.ndarray:
    """``f(aX_1, .., aX_m, a z) - a f(X_1, .., z)`` for a batch."""
    LA = alg.induced_alpha(1)
    A = alg.alpha.matrix
    g = f
    for s in range(level):
        g = apply_slot(g, 1 + s, LA)
    g = apply_slot(g, 1 + level, A)
    return (g - apply_output(f, A)).reshape(f.shape[0], -1)


def compatible_cochain_basis(alg, level: int, parity: int = 0, alpha_compat: bool = True) -> np.ndarray:
    """Basis, as a batch array ``[b, X_1..X_m, z, out]``, of level-m cochains of a parity.

    With ``alpha_compat`` only cochains with ``f(aX_1, .., aX_m, a z) = a f(X_1, .., z)``.
    """
    cache = alg.__dict__.setdefault("_cochain_basis", {})
    key = (level, parity, alpha_compat)
    if key not in cache:
        cache[key] = _compatible_cochains(alg, level, parity, alpha_compat)
    return cache[key]


def _alpha_compat_operator(alg, level: int) -> np.ndarray:
    """Matrix of ``f -> f(aX_1, .., aX_m, a z) - a f(X_1, .., z)`` on row-major coordinates."""
    LA = alg.induced_alpha(1)
    A = alg.alpha.matrix
    d = alg.dim
    eye = LinearMap.identity(alg.space).matrix
    K = np.ones((1, 1), dtype=object)
    for _ in range(level):
        K = np.kron(K, LA.T)
    left = np.kron(np.kron(K, A.T), eye)
    right = np.kron(np.eye(K.shape[0] * d, dtype=np.int64).astype(object), A)
    return left - right


def _compatible_cochains(alg, level, parity, alpha_compat):
    coords, units = _unit_cochains(alg, level, parity)
    if not coords or not alpha_compat:
        return units
    shape = units.shape[1:]
    cols = [int(np.ravel_multi_index(idx, shape)) for idx in coords]
    M = _alpha_compat_operator(alg, level)[:, cols]
    rows = [list(r) for r in M if any(x != 0 for x in r)]
    ker = kernel_basis(rows, len(coords))
    out = zeros((ker.dim,) + shape)
    for b, vec in enumerate(ker):
        for idx, c in zip(coords, vec):
            if c != 0:
                out[(b,) + idx] = c
    return out


def cocycle_space(alg, level: int, parity: int = 0, alpha_compat: bool = True) -> SubspaceBasis:
    """Kernel of ``delta_m`` on level-m cochains (in the cochains' flattened coordinates)."""
    _check_level(level)
    basis = compatible_cochain_basis(alg, level, parity, alpha_compat)
    size = int(np.prod(basis.shape[1:]))
    if not basis.shape[0]:
        return SubspaceBasis(size, ())
    images = _delta_batch(alg, basis, level, parity).reshape(basis.shape[0], -1)
    ker = kernel_basis(_stack_columns(images), basis.shape[0])
    flat = basis.reshape(basis.shape[0], -1)
    vecs = [np.dot(np.array(k, dtype=object), flat) for k in ker]
    return SubspaceBasis(size, vecs, check=False)


def coboundary_space(alg, level: int, parity: int = 0, alpha_compat: bool = True) -> SubspaceBasis:
    """Image of ``delta_{m-1}`` in level m (``level >= 1``)."""
    _check_level(level)
    if level < 1:
        W, d = len(alg.fundamental_basis), alg.dim
        return SubspaceBasis(d * d, ())
    basis = compatible_cochain_basis(alg, level - 1, parity, alpha_compat)
    W, d = len(alg.fundamental_basis), alg.dim
    size = W ** level * d * d
    if not basis.shape[0]:
        return SubspaceBasis(size, ())
    images = _delta_batch(alg, basis, level - 1, parity).reshape(basis.shape[0], -1)
    return SubspaceBasis.span(size, images.tolist())


def cohomology_dim(alg, level: int, parity: int = 0, alpha_compat: bool = True) -> dict:
    Z = cocycle_space(alg, level, parity, alpha_compat)
    B = coboundary_space(alg, level, parity, alpha_compat)
    try:
        H = quotient_dim(Z, B)
    except ValueError as exc:
        raise CohomologyError(f"level {level}: {exc}") from exc
    return {"Z": Z.dim, "B": B.dim, "H": H}


def _check_level(level):
    if not 0 <= level <= MAX_LEVEL:
        raise CohomologyError(f"level must be between 0 and {MAX_LEVEL}")
