"""Exact integer/rational linear algebra and integer polynomials.

Everything here is immutable and uses Python's arbitrary precision ``int``
and :class:`fractions.Fraction`; no floating point value is ever stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import mul
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class DimensionMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    """Raised by :func:`poly_exact_div` when the divisor does not divide exactly."""


class SingularGram(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix of Python ints, stored row-major as a tuple of tuples."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise ValueError("matrix must have positive dimension")
        for row in self.rows:
            if len(row) != n:
                raise DimensionMismatch("matrix is not square")
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise TypeError(f"non-integer entry {v!r}")

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...]) -> "IntMatrix":
        # skips validation; only for rows produced by exact integer arithmetic here
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        return obj

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Rational]]) -> "IntMatrix":
        """Build a matrix whose j-th column is ``cols[j]``; entries must be integral."""
        n = len(cols)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                v = Fraction(cols[j][i])
                if v.denominator != 1:
                    raise ValueError(f"non-integral entry {v} at ({i}, {j})")
                row.append(int(v))
            rows.append(tuple(row))
        return cls(tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, images: Sequence[int]) -> "IntMatrix":
        """Matrix sending basis vector ``e_j`` to ``e_{images[j]}`` (0-based)."""
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError("not a permutation")
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(images):
            rows[i][j] = 1
        return cls.from_rows(rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        _check_dims(self, other)
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        _check_dims(self, other)
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def apply(self, v: "RatVector") -> "RatVector":
        """Matrix times column vector."""
        if len(v) != self.dim:
            raise DimensionMismatch(f"{self.dim} x {self.dim} matrix applied to {len(v)}-vector")
        return RatVector(tuple(sum(a * b for a, b in zip(row, v.entries)) for row in self.rows))

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.dim)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.dim
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def preserves(self, gram: "IntMatrix") -> bool:
        """True if ``M^T G M == G``, i.e. the matrix is an isometry of ``gram``."""
        return self.transpose() @ gram @ self == gram

    def __str__(self) -> str:
        width = max(len(str(v)) for row in self.rows for v in row)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.rows)


def _check_dims(a: IntMatrix, b: IntMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


def _mul_rows(a, b) -> tuple[tuple[int, ...], ...]:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(map(mul, row, col)) for col in cols) for row in a)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    _check_dims(a, b)
    return IntMatrix._trusted(_mul_rows(a.rows, b.rows))


def mat_product(mats: Iterable[IntMatrix], dim: int) -> IntMatrix:
    """Left-to-right product; the empty product is the identity."""
    out = IntMatrix.identity(dim)
    for m in mats:
        out = out @ m
    return out


# ---------------------------------------------------------------------------
# rational vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatVector:
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) == 0:
            raise ValueError("vector must have positive dimension")
        # Fraction is always stored in lowest terms with a positive denominator.
        object.__setattr__(self, "entries", tuple(Fraction(v) for v in self.entries))

    @classmethod
    def of(cls, *values: Rational) -> "RatVector":
        return cls(tuple(values))

    @classmethod
    def zero(cls, n: int) -> "RatVector":
        return cls((Fraction(0),) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> "RatVector":
        return cls(tuple(Fraction(int(k == i)) for k in range(n)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def _check(self, other: "RatVector") -> None:
        if len(self) != len(other):
            raise DimensionMismatch(f"{len(self)} vs {len(other)}")

    def __add__(self, other: "RatVector") -> "RatVector":
        self._check(other)
        return RatVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "RatVector") -> "RatVector":
        self._check(other)
        return RatVector(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "RatVector":
        return RatVector(tuple(-a for a in self))

    def __mul__(self, c: Rational) -> "RatVector":
        return RatVector(tuple(c * a for a in self))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.entries) + ")"


def bilinear(gram: IntMatrix, v: RatVector, w: RatVector) -> Fraction:
    """``v^T G w`` computed exactly."""
    if not (len(v) == len(w) == gram.dim):
        raise DimensionMismatch("vector/gram dimension mismatch")
    total = Fraction(0)
    for vi, row in zip(v.entries, gram.rows):
        if vi:
            total += vi * sum(g * wj for g, wj in zip(row, w.entries))
    return total


def solve_rational(gram: IntMatrix, rhs: RatVector) -> RatVector:
    """Solve ``gram @ x == rhs`` over the rationals by Gauss-Jordan elimination."""
    n = gram.dim
    if len(rhs) != n:
        raise DimensionMismatch("right-hand side has wrong length")
    a = [[Fraction(v) for v in row] + [rhs[i]] for i, row in enumerate(gram.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularGram("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return RatVector(tuple(a[i][n] for i in range(n)))


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial with coefficients in ascending degree order.

    Trailing zeros are stripped at construction, so the zero polynomial is the
    empty tuple and its :attr:`degree` is ``None``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * n + (c,))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_reciprocal(self) -> bool:
        return bool(self.coeffs) and self.coeffs == self.coeffs[::-1]

    def reverse(self) -> "IntPolynomial":
        """``x^deg p(1/x)``."""
        return IntPolynomial(self.coeffs[::-1])

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t):
        """Horner evaluation at an int, Fraction or any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_matrix(self, m: IntMatrix) -> IntMatrix:
        """Evaluate at a square matrix (Horner)."""
        n = m.dim
        acc = IntMatrix(tuple((0,) * n for _ in range(n)))
        eye = IntMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + eye.scale(c)
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        g = self.content()
        if g <= 1:
            return self
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: IntPolynomial, var: str = "x") -> str:
    """Human-readable descending form, e.g. ``x^2 - 5x + 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def poly_divmod_monic(p: IntPolynomial, q: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Quotient and remainder of ``p`` by a monic ``q``; exact over the integers."""
    if not q.is_monic():
        raise ValueError("divisor must be monic")
    dq = len(q.coeffs) - 1
    rem = list(p.coeffs)
    if len(rem) - 1 < dq:
        return IntPolynomial(()), p
    quot = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c:
            quot[k - dq] = c
            for i, b in enumerate(q.coeffs):
                rem[k - dq + i] -= c * b
    return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dq]))


def poly_exact_div(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Return ``r`` with ``p == q * r``; raise :class:`NotDivisible` otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quot, rem = poly_divmod_monic(p, q)
    if not rem.is_zero():
        raise NotDivisible(f"{format_poly(q)} does not divide {format_poly(p)}")
    return quot


def _trace_of_product(a, b) -> int:
    # tr(A B) = sum_ij A_ij B_ji, no product matrix needed
    return sum(sum(map(mul, row, col)) for row, col in zip(a, zip(*b)))


def char_poly(m: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial ``det(xI - M)``.

    This is the Faddeev-LeVerrier recurrence written on power sums: with
    ``p_k = tr(M^k)`` and ``det(xI - M) = sum c_j x^j``, Newton's identities
    give ``k c_{n-k} = -(p_k + c_{n-1} p_{k-1} + ... + c_{n-k+1} p_1)``.
    The division by ``k`` is always exact for integer matrices; we assert it.
    Only ``M^2 .. M^ceil(n/2)`` are formed; higher traces come from
    ``tr(M^a M^b)``.
    """
    n = m.dim
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    if n == 0:
        return IntPolynomial((1,))
    half = (n + 1) // 2
    powers = [None, m.rows]
    for _ in range(2, half + 1):
        powers.append(_mul_rows(powers[-1], m.rows))
    traces = [0] * (n + 1)
    for k in range(1, n + 1):
        if k <= half:
            traces[k] = sum(powers[k][i][i] for i in range(n))
        else:
            traces[k] = _trace_of_product(powers[half], powers[k - half])
    for k in range(1, n + 1):
        t = traces[k] + sum(coeffs[n - i] * traces[k - i] for i in range(1, k))
        q, r = divmod(-t, k)
        if r:
            raise ArithmeticError("power-sum recurrence produced a non-integral coefficient")
        coeffs[n - k] = q
    return IntPolynomial(tuple(coeffs))
