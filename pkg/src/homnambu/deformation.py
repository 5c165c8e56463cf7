"""Truncated formal deformations of the bracket and formal automorphisms.

Every power series lives in ``K[t]/(t^(N+1))``: a deformation is the list of
brackets ``f_0, .., f_N`` with ``f_0`` the base bracket, and a formal
automorphism is the list of even maps ``phi_0 = id, phi_1, .., phi_N``, each
commuting with alpha. "Valid" and "equivalent" always mean through order N.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .axioms import first_difference, nambu_sides
from .cohomology import alpha_commuting_maps, delta1
from .core import (
    AlgebraError,
    BracketTensor,
    HomNambuSuperalgebra,
    LinearMap,
    apply_output,
    apply_slot,
    wedge_basis,
    zeros,
)
from .linalg import format_rational, solve_particular

__all__ = [
    "DeformationError",
    "FormalDeformation",
    "FormalAutomorphism",
    "DeformationReport",
    "ReductionStep",
    "check_deformation",
    "infinitesimal_class",
    "compose",
    "formal_inverse",
    "pushforward",
    "equivalence_residual",
    "are_equivalent",
    "reduce_step",
    "trivialize",
]


class DeformationError(AlgebraError):
    pass


def _alpha_defect(alg: HomNambuSuperalgebra, F: BracketTensor):
    """First tuple where ``alpha o F`` and ``F o (alpha, .., alpha)`` differ, or None."""
    A = alg.alpha.matrix
    T = F.full()
    right = T
    for s in range(alg.arity):
        right = apply_slot(right, s, A)
    return first_difference(apply_output(T, A), right)


class FormalDeformation:
    """``f_t = f_0 + f_1 t + .. + f_N t^N`` over a fixed base algebra.

    ``f_0`` must be the base bracket and every term even. With ``strict`` the
    alpha-compatibility of each term is enforced as well; otherwise it is
    left to :func:`check_deformation` to report.
    """

    def __init__(self, base: HomNambuSuperalgebra, terms: Sequence[BracketTensor], *, strict: bool = True):
        terms = list(terms)
        if not terms:
            raise DeformationError("a deformation needs at least the order-0 term")
        if terms[0] != base.bracket:
            raise DeformationError("the order-0 term must be the base bracket")
        for p, F in enumerate(terms):
            if F.space != base.space or F.arity != base.arity:
                raise DeformationError(f"term {p} lives on a different space or arity")
            if F.parity != 0:
                raise DeformationError(f"term {p} is not even")
            if strict and p and _alpha_defect(base, F) is not None:
                raise DeformationError(f"term {p} does not commute with alpha")
        self.base = base
        self.terms = terms

    @classmethod
    def null(cls, base: HomNambuSuperalgebra, order: int) -> "FormalDeformation":
        zero = BracketTensor.zero(base.space, base.arity)
        return cls(base, [base.bracket] + [zero] * order)

    @classmethod
    def from_terms(cls, base, higher: Sequence[BracketTensor], **kw) -> "FormalDeformation":
        """Build from ``f_1, .., f_N``."""
        return cls(base, [base.bracket] + list(higher), **kw)

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def is_null(self) -> bool:
        return all(F.is_zero() for F in self.terms[1:])

    def truncate(self, order: int) -> "FormalDeformation":
        zero = BracketTensor.zero(self.base.space, self.base.arity)
        terms = self.terms[: order + 1] + [zero] * max(0, order - self.order)
        return FormalDeformation(self.base, terms, strict=False)

    def __eq__(self, other):
        return (isinstance(other, FormalDeformation) and self.base == other.base
                and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        return f"FormalDeformation(order={self.order}, nonzero={[p for p, F in enumerate(self.terms) if not F.is_zero()]})"


class FormalAutomorphism:
    """``Phi_t = id + phi_1 t + .. + phi_N t^N`` with alpha-commuting even terms."""

    def __init__(self, base: HomNambuSuperalgebra, terms: Sequence[LinearMap]):
        terms = list(terms)
        if not terms or terms[0] != LinearMap.identity(base.space):
            raise DeformationError("the order-0 term of a formal automorphism must be the identity")
        for i, phi in enumerate(terms):
            if phi.space != base.space or phi.target != base.space:
                raise DeformationError(f"term {i} lives on a different space")
            if not phi.is_even():
                raise DeformationError(f"term {i} is not even")
            if not phi.commutes_with(base.alpha):
                raise DeformationError(f"term {i} does not commute with alpha")
        self.base = base
        self.terms = [LinearMap(base.space, phi.matrix, 0) for phi in terms]

    @classmethod
    def identity(cls, base, order: int) -> "FormalAutomorphism":
        return cls(base, [LinearMap.identity(base.space)] + [LinearMap.zero(base.space)] * order)

    @classmethod
    def from_terms(cls, base, higher: Sequence[LinearMap]) -> "FormalAutomorphism":
        return cls(base, [LinearMap.identity(base.space)] + list(higher))

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def matrices(self) -> list[np.ndarray]:
        return [phi.matrix for phi in self.terms]

    def __eq__(self, other):
        return isinstance(other, FormalAutomorphism) and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"FormalAutomorphism(order={self.order})"


@dataclass(frozen=True)
class DeformationReport:
    order: int
    valid_to_order: int
    first_failure: Optional[tuple] = None  # (order, equation, witness tuple, residual vector)

    def __post_init__(self):
        if (self.first_failure is not None) != (self.valid_to_order < self.order):
            raise ValueError("first_failure is present exactly when validity stops short of the order")

    @property
    def valid(self) -> bool:
        return self.first_failure is None

    def as_dict(self) -> dict:
        out = {"order": self.order, "valid_to_order": self.valid_to_order, "valid": self.valid}
        if self.first_failure is not None:
            l, eq, t, res = self.first_failure
            out["first_failure"] = {"order": l, "equation": eq, "tuple": list(t),
                                    "residual": [format_rational(x) for x in res]}
        return out


def check_deformation(D: FormalDeformation) -> DeformationReport:
    """Check alpha-compatibility of each term and the order-l identities, l = 0..N.

    At order ``l`` the identity is
    ``sum_(p+q=l) f_p(a x_1, .., a x_(n-1), f_q(y)) = sum_i sign_i sum_(p+q=l) f_p(a y_1, .., f_q(x, y_i), .., a y_n)``.
    """
    alg = D.base
    A = alg.alpha.matrix
    par = alg.space.parity_array
    full = [F.full() for F in D.terms]
    N = D.order
    for l in range(N + 1):
        w = _alpha_defect(alg, D.terms[l])
        if w is not None:
            t, left, right = w
            res = tuple(a - b for a, b in zip(left, right))
            return DeformationReport(N, l - 1, (l, "alpha", t, res))
        left = right = None
        for p in range(l + 1):
            lp, rp = nambu_sides(A, par, full[p], full[l - p])
            left = lp if left is None else left + lp
            right = rp if right is None else right + rp
        w = first_difference(left, right)
        if w is not None:
            t, lv, rv = w
            res = tuple(a - b for a, b in zip(lv, rv))
            return DeformationReport(N, l - 1, (l, "identity", t, res))
    return DeformationReport(N, N)


def infinitesimal_class(D: FormalDeformation):
    """``(f_1, delta1(f_1) == 0)``; ``f_1`` is zero for an order-0 deformation."""
    f1 = D.terms[1] if D.order >= 1 else BracketTensor.zero(D.base.space, D.base.arity)
    return f1, delta1(D.base, f1).is_zero()


# power series of maps ---------------------------------------------------------


def compose(P: FormalAutomorphism, Q: FormalAutomorphism) -> FormalAutomorphism:
    """Truncated product ``P o Q``."""
    N = min(P.order, Q.order)
    terms = []
    for r in range(N + 1):
        M = zeros((P.base.dim,) * 2)
        for i in range(r + 1):
            M = M + P.terms[i].matrix.dot(Q.terms[r - i].matrix)
        terms.append(LinearMap(P.base.space, M, 0))
    return FormalAutomorphism(P.base, terms)


def formal_inverse(P: FormalAutomorphism) -> FormalAutomorphism:
    """``Q_0 = id``, ``Q_r = -sum_(i=1..r) P_i Q_(r-i)``."""
    Q = [P.terms[0].matrix]
    for r in range(1, P.order + 1):
        M = zeros((P.base.dim,) * 2)
        for i in range(1, r + 1):
            M = M - P.terms[i].matrix.dot(Q[r - i])
        Q.append(M)
    return FormalAutomorphism(P.base, [LinearMap(P.base.space, M, 0) for M in Q])


def _series_slots(series: list, maps: list, n: int, N: int) -> list:
    """``f_t(Phi x_1, .., Phi x_n)`` as a truncated list of raw tensors."""
    for s in range(n):
        new = []
        for r in range(N + 1):
            acc = None
            for i in range(r + 1):
                if i >= len(maps):
                    break
                term = apply_slot(series[r - i], s, maps[i])
                acc = term if acc is None else acc + term
            new.append(acc)
        series = new
    return series


def _series_output(series: list, maps: list, N: int) -> list:
    """``Phi o f_t`` truncated."""
    out = []
    for r in range(N + 1):
        acc = None
        for i in range(r + 1):
            if i >= len(maps):
                break
            term = apply_output(series[r - i], maps[i])
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def _check_orders(D: FormalDeformation, P: FormalAutomorphism):
    if D.base.space != P.base.space or D.base.alpha != P.base.alpha:
        raise DeformationError("deformation and automorphism have different bases")
    if D.order != P.order:
        raise DeformationError(f"truncation orders differ ({D.order} vs {P.order})")


def pushforward(D: FormalDeformation, P: FormalAutomorphism, *, check: bool = True) -> FormalDeformation:
    """``f'_t = Phi^-1 o f_t(Phi x_1, .., Phi x_n)`` through order N.

    With ``check`` the result is re-checked and must be valid to the same order as ``D``.
    """
    _check_orders(D, P)
    N, n = D.order, D.base.arity
    series = _series_slots([F.full() for F in D.terms], P.matrices(), n, N)
    series = _series_output(series, formal_inverse(P).matrices(), N)
    terms = [BracketTensor.from_full(D.base.space, n, T, check=True) for T in series]
    terms[0] = D.base.bracket
    out = FormalDeformation(D.base, terms, strict=False)
    if check:
        before, after = check_deformation(D), check_deformation(out)
        if before.valid_to_order != after.valid_to_order:
            raise AssertionError(
                f"pushforward changed validity: {before.valid_to_order} -> {after.valid_to_order}"
            )
    return out


def equivalence_residual(D1: FormalDeformation, D2: FormalDeformation, Phi: FormalAutomorphism) -> list:
    """Per-order raw tensors of ``Phi o f_t - f'_t(Phi, .., Phi)``."""
    N, n = Phi.order, D1.base.arity
    mats = Phi.matrices()
    left = _series_output([F.full() for F in D1.terms[: N + 1]], mats, N)
    right = _series_slots([F.full() for F in D2.terms[: N + 1]], mats, n, N)
    return [a - b for a, b in zip(left, right)]


def _delta0_columns(alg: HomNambuSuperalgebra, maps: list[LinearMap]) -> np.ndarray:
    """Canonical coordinates of ``delta0(phi)`` for each map, as columns."""
    from .cohomology import _gather_canonical, _phi_raw

    if not maps:
        return zeros((0, 0))
    raw = _phi_raw(alg, np.array([m.matrix for m in maps], dtype=object), 0)
    canon = _gather_canonical(alg, raw)
    return canon.reshape(len(maps), -1).T


def _solve_delta0(alg, target: np.ndarray, maps: list[LinearMap]) -> Optional[LinearMap]:
    """Some combination ``h`` of ``maps`` with ``delta0(h) = target`` (raw tensor), or None."""
    rhs = wedge_basis(alg.space, alg.arity).gather(target, 0).reshape(-1)
    if not maps:
        return LinearMap.zero(alg.space) if all(x == 0 for x in rhs) else None
    cols = _delta0_columns(alg, maps)
    x = solve_particular([list(r) for r in cols], list(rhs), len(maps))
    if x is None:
        return None
    M = zeros((alg.dim, alg.dim))
    for c, m in zip(x, maps):
        M = M + m.matrix * c
    return LinearMap(alg.space, M, 0)


def are_equivalent(D1: FormalDeformation, D2: FormalDeformation, order: Optional[int] = None
                   ) -> Optional[FormalAutomorphism]:
    """Search for ``Phi`` with ``Phi o f_t = f'_t(Phi x_1, .., Phi x_n)`` through ``order``.

    At order ``r`` the unknown ``phi_r`` enters as ``-delta0(phi_r)``; it is
    solved among alpha-commuting even maps with earlier terms frozen, so the
    search is greedy and the witness is not canonical. Returns None when some
    order has no solution. On success ``pushforward(D2, Phi) == D1``.
    """
    if D1.base != D2.base:
        raise DeformationError("deformations of different algebras")
    N = min(D1.order, D2.order) if order is None else order
    if N > min(D1.order, D2.order):
        raise DeformationError("requested order exceeds the deformations' order")
    alg = D1.base
    basis = alpha_commuting_maps(alg, 0)
    phis = [LinearMap.identity(alg.space)]
    for r in range(1, N + 1):
        trial = FormalAutomorphism(alg, phis + [LinearMap.zero(alg.space)] * (N - r + 1))
        E = equivalence_residual(D1.truncate(N), D2.truncate(N), trial)[r]
        h = _solve_delta0(alg, E, basis)
        if h is None:
            return None
        phis.append(h)
    return FormalAutomorphism(alg, phis)


@dataclass
class ReductionStep:
    """Outcome of one reduction: ``status`` is ``"reduced"``, ``"trivial"`` or ``"obstructed"``."""

    status: str
    order: Optional[int] = None
    deformation: Optional[FormalDeformation] = None
    automorphism: Optional[FormalAutomorphism] = None
    note: str = ""

    def __bool__(self):
        return self.status == "reduced"


def _lowest_nonzero(D: FormalDeformation) -> Optional[int]:
    for r in range(1, D.order + 1):
        if not D.terms[r].is_zero():
            return r
    return None


def reduce_step(D: FormalDeformation) -> ReductionStep:
    """Kill the lowest nonzero term ``f_r`` with ``Phi = id - h t^r`` where ``f_r = delta0(h)``.

    ``h`` must commute with alpha; when ``f_r`` is a coboundary only of a
    non-commuting map the step is reported as obstructed with a note.
    """
    alg = D.base
    r = _lowest_nonzero(D)
    if r is None:
        return ReductionStep("trivial", note="no nonzero term beyond order 0")
    f_r = D.terms[r]
    if not delta1(alg, f_r).is_zero():
        raise DeformationError(f"lowest term f_{r} is not a cocycle; the deformation is not valid")
    h = _solve_delta0(alg, f_r.full(), alpha_commuting_maps(alg, 0))
    if h is None:
        note = f"f_{r} is not a coboundary"
        every = _all_even_maps(alg)
        if _solve_delta0(alg, f_r.full(), every) is not None:
            note += " of an alpha-commuting map (it is one of a map not commuting with alpha)"
        return ReductionStep("obstructed", order=r, note=note)
    terms = [LinearMap.identity(alg.space)] + [LinearMap.zero(alg.space)] * D.order
    terms[r] = -h
    P = FormalAutomorphism(alg, terms)
    return ReductionStep("reduced", order=r, deformation=pushforward(D, P), automorphism=P)


def _all_even_maps(alg) -> list[LinearMap]:
    d, par = alg.dim, alg.space.parity
    out = []
    for i in range(d):
        for j in range(d):
            if par[i] == par[j]:
                M = zeros((d, d))
                M[i, j] = 1
                out.append(LinearMap(alg.space, M, 0))
    return out


def trivialize(D: FormalDeformation, max_steps: Optional[int] = None) -> Optional[FormalAutomorphism]:
    """Compose reduction steps until the deformation is null through order N.

    Returns ``Phi`` with ``pushforward(D, Phi)`` null, or None if a step is obstructed.
    """
    rep = check_deformation(D)
    if not rep.valid:
        raise DeformationError(f"deformation is only valid to order {rep.valid_to_order}")
    steps = D.order if max_steps is None else max_steps
    witness = FormalAutomorphism.identity(D.base, D.order)
    current = D
    for _ in range(steps + 1):
        step = reduce_step(current)
        if step.status == "trivial":
            return witness
        if step.status == "obstructed":
            return None
        witness = compose(witness, step.automorphism)
        current = step.deformation
    return witness if current.is_null() else None
