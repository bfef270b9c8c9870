"""Cyclotomic stripping, Salem classification and certified spectral radii.

The characteristic polynomial of an isometry of a hyperbolic lattice is a
product of cyclotomic polynomials and at most one Salem polynomial.  The
functions here split off the cyclotomic part exactly and certify the root
geometry of what remains with Sturm sequences; floating point never decides
anything.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, isqrt

from .kernel import IntPolynomial, NotDivisible, poly_divmod_monic, poly_exact_div

DEFAULT_WIDTH = Fraction(1, 10**12)
DISPLAY_PLACES = 4


class NotSalem(ValueError):
    pass


class Classification(str, enum.Enum):
    UNIT = "Unit"
    SALEM = "Salem"
    ANOMALOUS = "Anomalous"

    @property
    def report_label(self) -> str:
        # a residual of 1 means every factor was cyclotomic
        return "AllCyclotomic" if self is Classification.UNIT else self.value


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> IntPolynomial:
    p = IntPolynomial.monomial(n) - IntPolynomial.one()
    for d in range(1, n):
        if n % d == 0:
            p = poly_exact_div(p, _cyclotomic(d))
    return p


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by dividing ``x^n - 1`` by the smaller ones."""
    if n < 1:
        raise ValueError("n must be positive")
    return _cyclotomic(n)


def cyclotomic_candidates(degree: int) -> list[int]:
    """All n with ``phi(n) <= degree``.

    ``phi(n) >= sqrt(n / 2)`` bounds the search to ``n <= 2 * degree**2``.
    """
    if degree < 1:
        return []
    return [n for n in range(1, 2 * degree * degree + 3) if totient(n) <= degree]


# ---------------------------------------------------------------------------
# real root counting
# ---------------------------------------------------------------------------


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm chain of ``p`` kept over the integers.

    Remainders come from pseudo-division scaled by a *positive* power of the
    divisor's leading coefficient and are then made primitive, so every member
    is a positive multiple of the classical rational Sturm polynomial.
    """
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p.primitive(), p.derivative().primitive()]
    if seq[1].is_zero():
        return seq[:1]
    while True:
        a, b = seq[-2], seq[-1]
        if b.degree == 0:
            break
        delta = a.degree - b.degree + 1
        scale = abs(b.lead) ** delta
        rem = _pseudo_rem(a * scale, b)
        if rem.is_zero():
            break
        seq.append((-rem).primitive())
    return seq


def _pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    # a has been pre-scaled so that integer long division by b is exact
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    lb = b.lead
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            q, r = divmod(c, lb)
            if r:
                raise ArithmeticError("pseudo-division not exact")
            for i, bc in enumerate(b.coeffs):
                rem[k - db + i] -= q * bc
    return IntPolynomial(tuple(rem[:db]))


def _variations(seq: list[IntPolynomial], t) -> int:
    signs = [s for s in (_sign(q(t)) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _variations_at_infinity(seq: list[IntPolynomial], positive: bool) -> int:
    signs = []
    for q in seq:
        s = _sign(q.lead)
        if not positive and q.degree % 2:
            s = -s
        signs.append(s)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(p: IntPolynomial, lo=None, hi=None, seq=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` stands for minus/plus infinity.
    """
    seq = seq if seq is not None else sturm_sequence(p)
    v_lo = _variations_at_infinity(seq, positive=False) if lo is None else _variations(seq, lo)
    v_hi = _variations_at_infinity(seq, positive=True) if hi is None else _variations(seq, hi)
    return v_lo - v_hi


def cauchy_bound(p: IntPolynomial) -> int:
    """Integer strictly above the absolute value of every root."""
    lead = abs(p.lead)
    return 1 + max((-(-abs(c) // lead) for c in p.coeffs[:-1]), default=0)


# ---------------------------------------------------------------------------
# factorization report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorizationReport:
    input: IntPolynomial
    cyclotomic_part: tuple[tuple[int, int], ...]
    residual: IntPolynomial
    classification: Classification

    def cyclotomic_product(self) -> IntPolynomial:
        out = IntPolynomial.one()
        for n, mult in self.cyclotomic_part:
            out = out * cyclotomic(n) ** mult
        return out

    @property
    def salem_factor(self) -> IntPolynomial | None:
        return self.residual if self.classification is Classification.SALEM else None


def _strip(p: IntPolynomial) -> tuple[list[tuple[int, int]], IntPolynomial]:
    parts = []
    residual = p
    for n in cyclotomic_candidates(p.degree or 0):
        phi = cyclotomic(n)
        if phi.degree > residual.degree:
            continue
        mult = 0
        while True:
            q, r = poly_divmod_monic(residual, phi)
            if not r.is_zero():
                break
            residual = q
            mult += 1
        if mult:
            parts.append((n, mult))
    return parts, residual


def strip_cyclotomic(p: IntPolynomial) -> FactorizationReport:
    """Divide out every cyclotomic factor of a monic ``p`` to maximal multiplicity."""
    if not p.is_monic():
        raise ValueError("strip_cyclotomic expects a monic polynomial")
    return _strip_cached(p)


@lru_cache(maxsize=1 << 16)
def _strip_cached(p: IntPolynomial) -> FactorizationReport:
    parts, residual = _strip(p)
    return FactorizationReport(p, tuple(parts), residual, classify_residual(residual))


def trace_polynomial(p: IntPolynomial) -> IntPolynomial:
    """``Q`` with ``p(x) = x^k Q(x + 1/x)`` for reciprocal ``p`` of degree ``2k``."""
    if not p.is_reciprocal() or p.degree % 2:
        raise NotSalem("trace polynomial needs a reciprocal polynomial of even degree")
    k = p.degree // 2
    a = p.coeffs
    y = IntPolynomial.x()
    # D_j(x + 1/x) = x^j + x^-j
    d_prev, d_cur = IntPolynomial.of(2), y
    q = IntPolynomial.of(a[k])
    for j in range(1, k + 1):
        q = q + d_cur * a[k + j]
        d_prev, d_cur = d_cur, y * d_cur - d_prev
    return q


def classify_residual(p: IntPolynomial) -> Classification:
    """Decide Unit / Salem / Anomalous for a polynomial with no cyclotomic factor.

    Salem is certified exactly: ``p`` reciprocal of even degree ``2k`` and its
    trace polynomial has ``k - 1`` distinct roots in ``(-2, 2)`` and exactly one
    in ``(2, inf)``.  The roots in ``(-2, 2)`` lift to conjugate pairs on the unit
    circle and the big root to ``lambda > 1 > 1/lambda``.  Irreducibility is not
    checked; a product of two Salem polynomials comes back Anomalous because
    its trace polynomial has two roots above 2.
    """
    if p == IntPolynomial.one():
        return Classification.UNIT
    if not p.is_monic() or p.degree % 2 or not p.is_reciprocal():
        return Classification.ANOMALOUS
    q = trace_polynomial(p)
    k = q.degree
    if q(2) == 0 or q(-2) == 0:
        return Classification.ANOMALOUS
    seq = sturm_sequence(q)
    if count_roots(q, 2, None, seq) != 1:
        return Classification.ANOMALOUS
    if count_roots(q, -2, 2, seq) != k - 1:
        return Classification.ANOMALOUS
    return Classification.SALEM


# ---------------------------------------------------------------------------
# spectral radius
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralRadius:
    """Certified enclosure ``lower <= lambda <= upper`` of a Salem number."""

    lower: Fraction
    upper: Fraction
    decimal_hint: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def display(self) -> str:
        """Truncated to four decimals, the way tables of Salem numbers print them."""
        return self.decimal_hint[: self.decimal_hint.index(".") + 1 + DISPLAY_PLACES]

    def __float__(self) -> float:
        return float((self.lower + self.upper) / 2)

    def contains(self, value) -> bool:
        return self.lower <= Fraction(value) <= self.upper


def _sqrt_bounds(r: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational bounds ``lo <= sqrt(r) <= hi`` with ``hi - lo <= 2^-bits``."""
    scale = 1 << bits
    num = r.numerator * r.denominator * scale * scale
    s = isqrt(num)
    lo = Fraction(s, r.denominator * scale)
    hi = lo if s * s == num else Fraction(s + 1, r.denominator * scale)
    return lo, hi


def _truncated_decimal(lower: Fraction, upper: Fraction, places: int) -> str | None:
    scale = 10**places
    a, b = floor(lower * scale), floor(upper * scale)
    if a != b:
        return None
    whole, frac = divmod(a, scale)
    return f"{whole}.{frac:0{places}d}"


def spectral_radius(p: IntPolynomial, width: Fraction = DEFAULT_WIDTH) -> SpectralRadius:
    """Enclose the Salem root ``lambda > 1`` of ``p`` to within ``width``.

    The largest root ``y0 > 2`` of the trace polynomial is isolated by exact
    bisection and mapped back through ``lambda = (y0 + sqrt(y0^2 - 4)) / 2``,
    which is increasing on ``y > 2``, using rational square root bounds.
    Refinement continues until the 4-place and 12-place truncations of both
    endpoints agree, so the display strings are certified too.
    """
    if classify_residual(p) is not Classification.SALEM:
        raise NotSalem(f"{p} is not a Salem polynomial")
    return _spectral_radius(p, Fraction(width))


@lru_cache(maxsize=1 << 14)
def _spectral_radius(p: IntPolynomial, width: Fraction) -> SpectralRadius:
    q = trace_polynomial(p)
    lo, hi = Fraction(2), Fraction(cauchy_bound(q))
    s_lo = _sign(q(lo))
    bits = 64
    while True:
        # a Salem trace polynomial can have a rational root (x^2 - 5x + 1 -> y = 5)
        if lo == hi:
            y_lo = y_hi = lo
        else:
            y_lo, y_hi = lo, hi
        lam_lo = (y_lo + _sqrt_bounds(y_lo * y_lo - 4, bits)[0]) / 2
        lam_hi = (y_hi + _sqrt_bounds(y_hi * y_hi - 4, bits)[1]) / 2
        if lam_hi - lam_lo <= width:
            hint = _truncated_decimal(lam_lo, lam_hi, 12)
            if hint is not None and _truncated_decimal(lam_lo, lam_hi, DISPLAY_PLACES) is not None:
                break
        if lo == hi:
            bits += 32
            continue
        mid = (lo + hi) / 2
        s_mid = _sign(q(mid))
        if s_mid == 0:
            lo = hi = mid
        elif s_mid == s_lo:
            lo = mid
        else:
            hi = mid
        bits = max(bits, hi.denominator.bit_length() + 16)
    if _sign(p(lam_lo)) == _sign(p(lam_hi)) or _sign(p(lam_lo)) == 0:
        raise ArithmeticError("enclosure does not bracket the Salem root")
    return SpectralRadius(lam_lo, lam_hi, hint)


def salem_of(p: IntPolynomial) -> tuple[FactorizationReport, SpectralRadius | None]:
    """Strip and, if a Salem factor remains, enclose its spectral radius."""
    rep = strip_cyclotomic(p)
    if rep.classification is Classification.SALEM:
        return rep, spectral_radius(rep.residual)
    return rep, None


__all__ = [
    "Classification",
    "FactorizationReport",
    "NotDivisible",
    "NotSalem",
    "SpectralRadius",
    "cauchy_bound",
    "classify_residual",
    "count_roots",
    "cyclotomic",
    "cyclotomic_candidates",
    "salem_of",
    "spectral_radius",
    "strip_cyclotomic",
    "sturm_sequence",
    "totient",
    "trace_polynomial",
]
