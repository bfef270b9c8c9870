"""Integer matrices of double-plane and projection involutions.

Three families:

* general double-plane involutions ``g_ij`` on the f-basis, which fix
  ``f_i, f_j`` and send every other ``f_a`` to ``2 f_i + 2 f_j - f_a``;
* nodal double-plane involutions, where the pencils ``|2F_i|`` and ``|2F_j|``
  share (-2)-curves spanning a root lattice ``R`` on which the involution acts
  by the diagram symmetry of :func:`sigma_action`;
* projection involutions ``h_ab`` of a Hessian-type surface, acting on the
  Petersen basis as the reflection in ``alpha_ab`` composed with the index
  transposition ``(ab)``, or as the bare transposition at an Eckardt point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .kernel import IntMatrix, RatVector, bilinear, solve_rational
from .lattice import (
    PAIRS,
    RANK,
    NodalClass,
    build_f_model,
    build_petersen_model,
    disjoint,
    pair_index,
    parse_pair,
    signature_check,
)

TABLE2_ECKARDT: frozenset[tuple[int, int]] = frozenset(
    p for p in PAIRS if set(p) <= {1, 2, 3, 4}
)
"""Eckardt nodes ``P_ab`` with ``a, b`` in ``{1, 2, 3, 4}`` (six Eckardt points)."""


class InvolutionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# diagram symmetries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaAction:
    """Action of the deck involution on the components of a contracted fiber.

    ``perm[i - 1]`` is the (1-based) image of component ``i``.  Components are
    labelled as in the usual pictures: ``a_1 - ... - a_n`` for ``A_n``;
    ``d_1, d_2`` the two short legs at ``d_3`` for ``D_n``; ``e_1`` the leg
    hanging off ``e_4`` for ``E_n``.
    """

    graph_type: str
    n: int
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, self.n + 1)):
            raise InvolutionError("sigma must permute the components")
        if any(self.perm[self.perm[i] - 1] != i + 1 for i in range(self.n)):
            raise InvolutionError("sigma must be an involution")

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]


def sigma_action(graph_type: str, n: int) -> SigmaAction:
    t = graph_type.upper()
    if t == "A" and n >= 1:
        perm = tuple(n + 1 - i for i in range(1, n + 1))
    elif t == "D" and n >= 4:
        perm = tuple(range(1, n + 1)) if n % 2 == 0 else (2, 1) + tuple(range(3, n + 1))
    elif t == "E" and n == 6:
        perm = (1,) + tuple(8 - i for i in range(2, 7))
    elif t == "E" and n in (7, 8):
        perm = tuple(range(1, n + 1))
    else:
        raise InvolutionError(f"no root diagram of type {graph_type}_{n}")
    return SigmaAction(t, n, perm)


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionSpec:
    """A generator: what it is (family and indices) plus its realized matrix."""

    family: str
    label: str
    matrix: IntMatrix
    gram: IntMatrix = field(repr=False)
    indices: tuple = ()
    eckardt: bool = False
    nodal: tuple[str, ...] = ()

    def __post_init__(self):
        m = self.matrix
        if not (m @ m).is_identity():
            raise InvolutionError(f"{self.label} does not square to the identity")
        if not m.preserves(self.gram):
            raise InvolutionError(f"{self.label} does not preserve the intersection form")


RootData = Sequence[tuple[Union[NodalClass, RatVector, Sequence], SigmaAction]]


def _classes(obj) -> list[RatVector]:
    if isinstance(obj, NodalClass):
        return [obj.coords]
    if isinstance(obj, RatVector):
        return [obj]
    return [c.coords if isinstance(c, NodalClass) else c for c in obj]


def double_plane_action(
    gram: IntMatrix, fi: RatVector, fj: RatVector, R: RootData = ()
) -> IntMatrix:
    """Matrix of a double-plane involution on any basis with Gram matrix ``gram``.

    Each basis vector ``gamma`` is split as
    ``(gamma, f_i) f_j + (gamma, f_j) f_i + r + gamma_perp`` with ``r`` the
    orthogonal projection onto ``span(R)``; the involution fixes the first
    three pieces up to ``sigma`` on ``r`` and negates ``gamma_perp``, so
    ``g(gamma) = -gamma + 2 (gamma, f_i) f_j + 2 (gamma, f_j) f_i + sigma(r) + r``.
    """
    n = gram.dim
    ip = lambda v, w: bilinear(gram, v, w)  # noqa: E731
    if ip(fi, fi) != 0 or ip(fj, fj) != 0 or ip(fi, fj) != 1:
        raise InvolutionError("f_i, f_j must be isotropic with (f_i, f_j) = 1")

    comps: list[RatVector] = []
    images: list[int] = []
    for obj, sigma in R:
        cls = _classes(obj)
        if len(cls) != sigma.n:
            raise InvolutionError(f"{sigma.graph_type}_{sigma.n} needs {sigma.n} classes, got {len(cls)}")
        offset = len(comps)
        comps.extend(cls)
        images.extend(offset + sigma(k + 1) - 1 for k in range(sigma.n))
    for r in comps:
        if ip(r, fi) != 0 or ip(r, fj) != 0:
            raise InvolutionError("nodal classes must be orthogonal to f_i and f_j")

    if comps:
        gram_r = IntMatrix.from_columns([[ip(a, b) for a in comps] for b in comps])
        pos, neg, _ = signature_check(gram_r)
        if pos or neg != len(comps):
            raise InvolutionError("nodal classes must span a negative definite lattice")

    cols = []
    for c in range(n):
        gamma = RatVector.basis(n, c)
        v = -gamma + fj * (2 * ip(gamma, fi)) + fi * (2 * ip(gamma, fj))
        if comps:
            coef = solve_rational(gram_r, RatVector(tuple(ip(gamma, r) for r in comps)))
            for k, r in enumerate(comps):
                if coef[k]:
                    v = v + r * coef[k] + comps[images[k]] * coef[k]
        cols.append(v.entries)
    try:
        m = IntMatrix.from_columns(cols)
    except ValueError as exc:
        raise InvolutionError(f"non-integral action, inconsistent nodal data: {exc}") from None
    return m


def _check_f_indices(i: int, j: int) -> tuple[int, int]:
    if not (1 <= i <= RANK and 1 <= j <= RANK and i != j):
        raise InvolutionError(f"bad index pair ({i}, {j})")
    return (i, j) if i < j else (j, i)


def general_double_plane(i: int, j: int) -> InvolutionSpec:
    """``g_ij`` when the double-plane map contracts nothing."""
    i, j = _check_f_indices(i, j)
    model = build_f_model()
    cols = []
    for a in range(1, RANK + 1):
        if a in (i, j):
            cols.append(model.f(a).entries)
        else:
            cols.append((model.f(i) * 2 + model.f(j) * 2 - model.f(a)).entries)
    return InvolutionSpec(
        "general", f"g_{i},{j}", IntMatrix.from_columns(cols), model.gram, (i, j)
    )


def nodal_double_plane(i: int, j: int, R: RootData) -> InvolutionSpec:
    i, j = _check_f_indices(i, j)
    model = build_f_model()
    m = double_plane_action(model.gram, model.f(i), model.f(j), R)
    names = []
    for obj, sigma in R:
        if isinstance(obj, NodalClass):
            names.append(obj.label)
        else:
            names.append(f"{sigma.graph_type}{sigma.n}")
    family = "nodal" if R else "general"
    return InvolutionSpec(family, f"g_{i},{j}", m, model.gram, (i, j), nodal=tuple(names))


def experiment_generators(m: int = 0) -> list[InvolutionSpec]:
    """``g_12, g_23, ..., g_9,10, g_1,10``; for ``i <= m`` the map ``g_i,i+1`` contracts ``r_i,i+1``.

    ``m = 0`` is the unnodal case.
    """
    if not 0 <= m <= 4:
        raise InvolutionError("m must be in 0..4")
    model = build_f_model()
    pairs = [(i, i + 1) for i in range(1, RANK)] + [(1, RANK)]
    gens = []
    for i, j in pairs:
        if j == i + 1 and i <= m:
            gens.append(nodal_double_plane(i, j, [(model.nodal_class(i), sigma_action("A", 1))]))
        else:
            gens.append(general_double_plane(i, j))
    return gens


# ---------------------------------------------------------------------------
# Hessian projections
# ---------------------------------------------------------------------------


def transposition_matrix(pair) -> IntMatrix:
    """Permutation of the ``U_cd`` induced by the transposition ``(ab)`` of ``{1..5}``."""
    a, b = parse_pair(pair)
    swap = {a: b, b: a}
    images = []
    for p in PAIRS:
        q = tuple(sorted(swap.get(k, k) for k in p))
        images.append(PAIRS.index(q))
    return IntMatrix.permutation(images)


def reflection_matrix(gram: IntMatrix, alpha: RatVector) -> IntMatrix:
    """``x -> x + (x, alpha) alpha`` for a (-2)-vector ``alpha``."""
    if bilinear(gram, alpha, alpha) != -2:
        raise InvolutionError("reflection vector must have norm -2")
    n = gram.dim
    cols = []
    for c in range(n):
        e = RatVector.basis(n, c)
        cols.append((e + alpha * bilinear(gram, e, alpha)).entries)
    return IntMatrix.from_columns(cols)


def hessian_projection(pair, eckardt: bool = False) -> InvolutionSpec:
    model = build_petersen_model()
    p = parse_pair(pair)
    t = transposition_matrix(p)
    tag = f"h_{p[0]}{p[1]}"
    if eckardt:
        return InvolutionSpec("hessian", tag + "*", t, model.gram, p, eckardt=True)
    r = reflection_matrix(model.gram, model.alpha(p))
    return InvolutionSpec("hessian", tag, r @ t, model.gram, p)


def parse_eckardt(spec: Union[str, Iterable, None]) -> frozenset[tuple[int, int]]:
    """Eckardt pair set from ``None``/``"none"``, ``"table2"`` or pairs like ``"12,13"``."""
    if spec is None:
        return frozenset()
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("", "none"):
            return frozenset()
        if s in ("table2", "eckardt"):
            return TABLE2_ECKARDT
        spec = [tok for tok in s.replace("+", ",").split(",") if tok]
    return frozenset(parse_pair(p) for p in spec)


def hessian_generators(eckardt=None) -> list[InvolutionSpec]:
    """The ten ``h_ab`` in pair order, specialized at the given Eckardt pairs."""
    eck = parse_eckardt(eckardt)
    return [hessian_projection(p, p in eck) for p in PAIRS]


def _complement_pair(p, q) -> tuple[int, int]:
    rest = sorted(set(range(1, 6)) - set(p) - set(q))
    return (rest[0], rest[1])


def derived_g(ab, cd) -> InvolutionSpec:
    """Double-plane involution ``g_{ab,cd}`` written through projection involutions.

    Disjoint pairs give ``h_ab h_cd``; pairs sharing an index give the single
    ``h_de`` with ``{d, e}`` the complement of ``ab`` and ``cd``.
    """
    p, q = parse_pair(ab), parse_pair(cd)
    if p == q:
        raise InvolutionError("derived_g needs two different pairs")
    model = build_petersen_model()
    label = f"g_{p[0]}{p[1]},{q[0]}{q[1]}"
    if disjoint(p, q):
        m = hessian_projection(p).matrix @ hessian_projection(q).matrix
    else:
        m = hessian_projection(_complement_pair(p, q)).matrix
    return InvolutionSpec("derived", label, m, model.gram, (p, q))


def common_fiber_components(ab, cd) -> list[int]:
    """Indices of the ``U_ef`` orthogonal to both ``f_ab`` and ``f_cd``."""
    model = build_petersen_model()
    fa, fc = model.f(ab), model.f(cd)
    return [
        k
        for k in range(RANK)
        if model.inner(RatVector.basis(RANK, k), fa) == 0
        and model.inner(RatVector.basis(RANK, k), fc) == 0
    ]


def _chains(gram: IntMatrix, nodes: list[int]) -> list[list[int]]:
    adj = {u: [v for v in nodes if v != u and gram[u, v] != 0] for u in nodes}
    for u in nodes:
        if any(gram[u, v] != 1 for v in adj[u]):
            raise InvolutionError("components must meet transversally once")
    seen: set[int] = set()
    out = []
    for start in nodes:
        if start in seen:
            continue
        comp, stack = [], [start]
        while stack:
            u = stack.pop()
            if u not in seen:
                seen.add(u)
                comp.append(u)
                stack.extend(adj[u])
        ends = [u for u in comp if len(adj[u]) <= 1]
        if any(len(adj[u]) > 2 for u in comp) or not ends:
            raise InvolutionError("only A_n configurations are detected automatically")
        chain, prev = [ends[0]], None
        while len(chain) < len(comp):
            nxt = [v for v in adj[chain[-1]] if v != prev]
            prev = chain[-1]
            chain.append(nxt[0])
        out.append(chain)
    return out


def petersen_double_plane(ab, cd) -> IntMatrix:
    """``g_{ab,cd}`` computed directly from the pencils ``|2F_ab|``, ``|2F_cd|``.

    The common fiber components among the ``U_ef`` form a disjoint union of
    ``A_n`` chains; the deck involution reverses each chain.
    """
    model = build_petersen_model()
    p, q = parse_pair(ab), parse_pair(cd)
    nodes = common_fiber_components(p, q)
    R = [
        ([RatVector.basis(RANK, k) for k in chain], sigma_action("A", len(chain)))
        for chain in _chains(model.gram, nodes)
    ]
    return double_plane_action(model.gram, model.f(p), model.f(q), R)


__all__ = [
    "InvolutionError",
    "InvolutionSpec",
    "SigmaAction",
    "TABLE2_ECKARDT",
    "common_fiber_components",
    "derived_g",
    "double_plane_action",
    "experiment_generators",
    "general_double_plane",
    "hessian_generators",
    "hessian_projection",
    "nodal_double_plane",
    "pair_index",
    "parse_eckardt",
    "petersen_double_plane",
    "reflection_matrix",
    "sigma_action",
    "transposition_matrix",
]
