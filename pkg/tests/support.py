"""Shared fixtures: published tables, an independent polynomial parser, and the
log of every spectral-radius enclosure built during the session."""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from enriques_salem.kernel import IntPolynomial

LEHMER_FLOOR = Fraction(117628, 100000)

# lower endpoints of every SpectralRadius constructed in this process
LAMBDA_LOWER_BOUNDS: list[Fraction] = []

_X = sympy.Symbol("x")
_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse_printed(text: str) -> IntPolynomial:
    """Parse ``x^4-16x^3+...`` with sympy into an ascending coefficient tuple."""
    expr = parse_expr(text.replace("{", "(").replace("}", ")"), local_dict={"x": _X}, transformations=_TRANSFORMS)
    poly = sympy.Poly(expr, _X)
    return IntPolynomial(tuple(int(c) for c in reversed(poly.all_coeffs())))


def self_consistent(p: IntPolynomial) -> bool:
    """Reciprocity check applied to a printed polynomial."""
    return p.is_monic() and p.is_reciprocal()


# Salem factors of c_3, ..., c_10 as printed for the first experiment
EXPERIMENT1_PRINTED = [
    "x^4-16x^3+14x^2-16x+1",
    "x^2-14x+1",
    "x^6-54x^5+63x^4-84x^3+63x^2-54x+1",
    "x^6-70x^5-113x^4-148x^3-113x^2-70x+1",
    "x^6-186x^5-129x^4-332x^3-129x^2-186x+1",
    "x^8-320x^7-548x^6-704x^5-698x^4-704x^3-548x^2-320x+1",
    "x^{10}-706x^9+845x^8-1048x^7+1202x^6-1048x^3+845x^2-706x+1",
    "x^8-992x^7-1700x^6-1568x^5-1466x^4-1568x^3-1700x^2-992x+1",
]

# same, for the second experiment with m nodal generators
EXPERIMENT2_PRINTED = {
    1: [
        "x^4-12x^3+6x^2-12x+1",
        "x^2-10x+1",
        "x^6-42x^5+31x^4-44x^3+31x^2-42x+1",
        "x^6-50x^5-65x^4-92x^3-65x^2-50x+1",
        "x^6-142x^5-145x^4-260x^3-145x^2-142x+1",
        "x^8-236x^7-316x^6-404x^5-394x^4-404x^3-316x^2-236x+1",
        "x^{8}-452x^7+452x^6-892x^5+502x^4-892x^3+452x^2-452x+1",
        "x^8-576x^7+44x^6-704x^5-90x^4-704x^3+44x^2-576x+1",
    ],
    2: [
        "x^2-8x+1",
        "x^4-8x^3-6x^2-8x+1",
        "x^6-34x^5-5x^4-52x^3-5x^2-34x+1",
        "x^6-42x^5-21x^4-68x^3-21x^2-42x+1",
        "x^8-120x^7+8x^6-136x^5+46x^4-136x^3+8x^2-120x+1",
        "x^6-218x^5-113x^4-300x^3-113x^2-218x+1",
        "x^{10}-430x^9+305x^6-192x^7+206x^6-36x^5+206x^4-192x^3+305x^2-430x+1",
        "x^{10}-354x^9-231x^8-272x^7-282x^6-28x^5-282x^4-272x^3-231x^2-354x+1",
    ],
    3: [
        "x^4-5x^3-5x+1",
        "x^4-8x^3-2x^2-8x+1",
        "x^8-27x^7+26x^6-53x^5+42x^4-53x^3+26x^2-27x+1",
        "x^6-35x^5+11x^4-66x^3+11x^2-35x+1",
        "x^8-97x^7+146x^6-207x^5+250x^4-207x^3+146x^2-97x+1",
        "x^8-173x^7-230x^6-99x^5-22x^4-99x^3-22x^2-99x+1",
        "x^{8}-389x^7+186x^6-267x^5-278x^4-267x^3+186x^2-389x+1",
        "x^8-291x^7-246x^6-221x^5-214x^4-221x^3-246x^2-291x+1",
    ],
    4: [
        "x^4-5x^3-5x+1",
        "x^6-5x^5-4x^4-12x^3-4x^2-5x+1",
        "x^8-21x^7+5x^6-43x^5+4x^4-43x^3+5x^2-21x+1",
        "x^6-33x^5-8x^4-60x^3-8x^2-33x+1",
        "x^8-91x^7-91x^6-133x^5-124x^4-133x^3-91x^2-91x+1",
        "x^8-165x^7+223x^6-59x^5-133x^4-59x^3+223x^2-165x+1",
        "x^6-371x^5-62x^4-80x^3-62x^2-371x+1",
        "x^{10}-277x^9-104x^8+390x^7-25x^6-546x^5-25x^4+390x^3-104x^2-277x+1",
    ],
}

# dynamical degree grid: row m, columns k = 3..10, as displayed
GRID = {
    0: ["15.1", "13.9", "52.8", "71.6", "186.7", "321.7", "704.8", "993.7"],
    1: ["11.6", "9.9", "41.3", "51.3", "143.0", "273.3", "429.2", "575.9"],
    2: ["7.8", "8.8", "34.2", "42.5", "119.9", "218.5", "429.2", "354.6"],
    3: ["5.2", "8.3", "26.0", "34.7", "95.5", "174.3", "388.5", "291.8"],
    4: ["5.2", "6.0", "20.80", "33.2", "92.0", "163.6", "371.2", "277.4"],
}

# (word, printed minimal polynomial, displayed lambda) for the general Hessian surface
HESSIAN_GENERAL = [
    ((1, 2, 3, 4, 5, 6, 7), "x^2-5x+1", "4.7912"),
    ((2, 6, 1, 3), "x^4-4x^3-2x^2-4x+1", "4.3306"),
    ((1, 2, 3, 4, 5, 6, 8), "x^6-6x^5+6x^4-6x^3+6x^2-6x+1", "5.0015"),
    ((2, 3, 1, 8, 9, 10), "x^8-7x^7+3x^4-9x^5+8x^4-9x^3+3x^2-7x+1", "6.7309"),
]

# same for the Eckardt specialization
HESSIAN_ECKARDT = [
    ((7, 8, 10, 1, 4), "x^2-4x+1", "3.7320"),
    ((2, 5, 8, 7, 10), "x^4-x^3-2x^2-x+1", "2.0810"),
    ((6, 8, 7, 1, 9, 4), "x^6-4x^5-x^4-4x^3-x^2-4x+1", "4.4480"),
    ((7, 8, 9, 2), "x^8-4x^7+4x^6-5x^5+4x^4-5x^3+4x^2-4x+1", "3.1473"),
    ((1, 5, 8, 4, 7, 5, 4, 10), "x^10-6x^9-7x^8-9x^7-6x^6-10x^5-6x^4-9x^3-7x^2-6x+1", "7.1715"),
]
