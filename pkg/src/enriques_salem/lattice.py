"""Coordinate models of the rank-10 Enriques lattice.

Two models are used:

* the isotropic-sequence model, with basis ``f_1, ..., f_10`` and Gram matrix
  ``J - I`` (this spans an index-3 sublattice; ``delta = (f_1 + ... + f_10)/3``
  has rational coordinates);
* the Petersen model, with basis the ten (-2)-classes ``U_ab`` indexed by the
  2-subsets of ``{1, ..., 5}`` in the order 12, 13, 14, 15, 23, 24, 25, 34, 35, 45.

Both models check their defining identities exactly when built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .kernel import IntMatrix, RatVector, bilinear, char_poly, solve_rational
from .salem import count_roots, sturm_sequence

RANK = 10

PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(1, 6), 2))
"""The ten pairs ``ab`` in the fixed order used by every word index."""


class LatticeInvariantError(AssertionError):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise LatticeInvariantError(msg)


def pair_index(pair) -> int:
    """0-based position of a pair, given as ``(a, b)``, ``"ab"`` or ``ab`` (e.g. 12)."""
    return PAIRS.index(parse_pair(pair))


def parse_pair(pair) -> tuple[int, int]:
    if isinstance(pair, int):
        pair = str(pair)
    if isinstance(pair, str):
        s = pair.strip()
        if len(s) != 2 or not s.isdigit():
            raise ValueError(f"bad pair {pair!r}")
        pair = (int(s[0]), int(s[1]))
    a, b = sorted(int(v) for v in pair)
    if (a, b) not in PAIRS:
        raise ValueError(f"bad pair {pair!r}")
    return (a, b)


def disjoint(p: Sequence[int], q: Sequence[int]) -> bool:
    return not set(p) & set(q)


def inner(model, v: RatVector, w: RatVector) -> Fraction:
    """Intersection pairing of two vectors in the model's basis."""
    return bilinear(model.gram, v, w)


def signature_check(gram: IntMatrix) -> tuple[int, int, int]:
    """Return ``(positive, negative, zero)`` eigenvalue counts of a symmetric Gram matrix.

    The eigenvalues of a real symmetric matrix are real, so Sturm counts on the
    characteristic polynomial decide the signs exactly.
    """
    if not gram.is_symmetric():
        raise ValueError("Gram matrix must be symmetric")
    p = char_poly(gram)
    zero = 0
    while p.coeffs and p.coeffs[0] == 0:
        p = type(p)(p.coeffs[1:])
        zero += 1
    if p.degree == 0:
        return 0, 0, zero
    pos = _count_with_multiplicity(p, 0, None)
    neg = _count_with_multiplicity(p, None, 0)
    return pos, neg, zero


def _count_with_multiplicity(p, lo, hi) -> int:
    # repeated eigenvalues are common (e.g. -1 with multiplicity 9 for J - I), so
    # peel off gcd(p, p') layers: each layer drops one multiplicity from every root
    total = 0
    cur = p
    while cur.degree and cur.degree > 0:
        seq = sturm_sequence(cur)
        total += count_roots(cur, lo, hi, seq)
        g = seq[-1]
        if g.degree == 0:
            break
        cur = g
    return total


# ---------------------------------------------------------------------------
# isotropic-sequence model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NodalClass:
    """The (-2)-class ``r_{i,i+1} = f_i + f_{i+1} - f_{11-i}``, ``i = 1..4``."""

    index: int
    coords: RatVector

    @property
    def label(self) -> str:
        return f"r_{self.index}{self.index + 1}"


@dataclass(frozen=True)
class FBasisModel:
    gram: IntMatrix
    delta: RatVector
    f10: RatVector
    labels: tuple[str, ...]
    simple_roots: tuple[RatVector, ...]

    def f(self, i: int) -> RatVector:
        """``f_i`` for ``i = 1..10``."""
        if not 1 <= i <= RANK:
            raise IndexError(f"f_{i} out of range")
        return RatVector.basis(RANK, i - 1)

    def inner(self, v: RatVector, w: RatVector) -> Fraction:
        return inner(self, v, w)

    def nodal_class(self, i: int) -> NodalClass:
        if not 1 <= i <= 4:
            raise ValueError("nodal classes are r_12, r_23, r_34, r_45")
        return NodalClass(i, self.f(i) + self.f(i + 1) - self.f(RANK - i + 1))


@lru_cache(maxsize=None)
def build_f_model() -> FBasisModel:
    n = RANK
    gram = IntMatrix.from_rows([[0 if i == j else 1 for j in range(n)] for i in range(n)])
    delta = RatVector(tuple(Fraction(1, 3) for _ in range(n)))
    f = [RatVector.basis(n, i) for i in range(n)]
    f10 = delta * 3
    for v in f[:9]:
        f10 = f10 - v
    # alpha_0 = delta - f1 - f2 - f3, alpha_i = f_i - f_{i+1}
    roots = [delta - f[0] - f[1] - f[2]] + [f[i] - f[i + 1] for i in range(9)]
    model = FBasisModel(
        gram=gram,
        delta=delta,
        f10=f10,
        labels=tuple(f"f_{i}" for i in range(1, n + 1)),
        simple_roots=tuple(roots),
    )

    _require(f10 == f[9], "f_10 must equal 3 delta - f_1 - ... - f_9")
    for i in range(n):
        for j in range(n):
            _require(model.inner(f[i], f[j]) == (0 if i == j else 1), "isotropic 10-sequence")
        _require(model.inner(delta, f[i]) == 3, "(delta, f_i) = 3")
    _require(model.inner(delta, delta) == 10, "delta^2 = 10")
    _require(signature_check(gram)[:2] == (1, 9), "signature (1, 9)")
    for a in roots:
        _require(model.inner(a, a) == -2, "simple roots have norm -2")
    return model


# ---------------------------------------------------------------------------
# Petersen model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PetersenModel:
    pairs: tuple[tuple[int, int], ...]
    gram: IntMatrix
    f_coords: tuple[RatVector, ...]
    alpha_coords: tuple[RatVector, ...]
    delta: RatVector

    def U(self, pair) -> RatVector:
        return RatVector.basis(RANK, pair_index(pair))

    def f(self, pair) -> RatVector:
        return self.f_coords[pair_index(pair)]

    def alpha(self, pair) -> RatVector:
        return self.alpha_coords[pair_index(pair)]

    def inner(self, v: RatVector, w: RatVector) -> Fraction:
        return inner(self, v, w)


def petersen_gram() -> IntMatrix:
    return IntMatrix.from_rows(
        [
            [-2 if p == q else int(disjoint(p, q)) for q in PAIRS]
            for p in PAIRS
        ]
    )


@lru_cache(maxsize=None)
def build_petersen_model() -> PetersenModel:
    """Petersen-basis model with ``f_ab`` solved from ``(f_ab, U_cd) = [ab, cd disjoint]``."""
    gram = petersen_gram()
    f_coords = tuple(
        solve_rational(gram, RatVector(tuple(Fraction(int(disjoint(p, q))) for q in PAIRS)))
        for p in PAIRS
    )
    alpha = tuple(f - RatVector.basis(RANK, i) for i, f in enumerate(f_coords))
    delta = RatVector(tuple(Fraction(1) for _ in PAIRS))
    model = PetersenModel(PAIRS, gram, f_coords, alpha, delta)

    _require(gram.det() == -256, "Petersen Gram determinant is -256")
    _require(signature_check(gram)[:2] == (1, 9), "signature (1, 9)")
    _require(model.inner(delta, delta) == 10, "Delta^2 = 10")
    total = RatVector.zero(RANK)
    for i, p in enumerate(PAIRS):
        _require(model.inner(delta, RatVector.basis(RANK, i)) == 1, "Delta . U_ab = 1")
        total = total + f_coords[i]
        for j, q in enumerate(PAIRS):
            fij = model.inner(f_coords[i], f_coords[j])
            _require(fij == (0 if i == j else 1), "f_ab form an isotropic 10-sequence")
            _require(
                model.inner(f_coords[i], RatVector.basis(RANK, j)) == int(disjoint(p, q)),
                "(f_ab, U_cd) = 1 iff disjoint",
            )
            expected = -2 if i == j else (0 if disjoint(p, q) else 1)
            _require(model.inner(alpha[i], alpha[j]) == expected, "anti-Petersen relations")
        for v in (f_coords[i], alpha[i]):
            for w in (f_coords, alpha):
                for u in w:
                    _require(model.inner(v, u).denominator == 1, "pairings are integral")
    _require(total == delta * 3, "sum of f_ab is 3 delta")
    return model
