"""Words in involutions, their Salem factors, and searches for small ones."""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .involutions import (
    InvolutionSpec,
    experiment_generators,
    hessian_generators,
    parse_eckardt,
)
from .kernel import IntMatrix, IntPolynomial, RatVector, bilinear, char_poly
from .lattice import PAIRS, build_f_model, build_petersen_model
from .salem import (
    Classification,
    FactorizationReport,
    SpectralRadius,
    salem_of,
    spectral_radius,
)

Word = tuple[int, ...]

DEFAULT_BUDGET = 10**7
SALEM_DEGREES = (2, 4, 6, 8, 10)


# ---------------------------------------------------------------------------
# generator families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """A named, ordered list of generators sharing one Gram matrix."""

    name: str
    generators: tuple[InvolutionSpec, ...]
    delta: RatVector | None = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a family needs at least one generator")
        g = self.generators[0].gram
        if any(s.gram != g for s in self.generators):
            raise ValueError("generators act on different lattices")

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __iter__(self):
        return iter(self.generators)

    @property
    def gram(self) -> IntMatrix:
        return self.generators[0].gram

    @property
    def dim(self) -> int:
        return self.gram.dim

    def digest(self) -> str:
        """Hash of the generator matrices; identifies the configuration in caches."""
        h = hashlib.sha256()
        for s in self.generators:
            h.update(repr(s.matrix.rows).encode())
        h.update(repr(self.gram.rows).encode())
        return h.hexdigest()[:16]


def get_family(name: str) -> Family:
    """Resolve ``exp1``, ``exp2:<m>``, ``hessian`` or ``hessian:<eckardt>``.

    ``<eckardt>`` is ``none``, ``table2``/``eckardt`` or a list of pairs such as
    ``12+13+23``.
    """
    key = name.strip().lower()
    if key in ("exp1", "exp2:0"):
        return Family("exp1", tuple(experiment_generators(0)), build_f_model().delta)
    if key.startswith("exp2:"):
        m = int(key.split(":", 1)[1])
        return Family(f"exp2:{m}", tuple(experiment_generators(m)), build_f_model().delta)
    if key == "hessian" or key.startswith("hessian:"):
        spec = key.split(":", 1)[1] if ":" in key else None
        eck = parse_eckardt(spec)
        label = "hessian" if not eck else "hessian:" + "+".join(
            f"{a}{b}" for a, b in sorted(eck)
        )
        if eck == parse_eckardt("table2"):
            label = "hessian:table2"
        return Family(label, tuple(hessian_generators(eck)), build_petersen_model().delta)
    raise ValueError(f"unknown family {name!r}")


def _as_family(generators) -> Family:
    if isinstance(generators, Family):
        return generators
    return Family("", tuple(generators))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _frac(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class SalemReport:
    word: Word
    char_poly: IntPolynomial
    factorization: FactorizationReport
    lam: SpectralRadius | None
    family: str = ""

    @property
    def classification(self) -> Classification:
        return self.factorization.classification

    @property
    def salem_factor(self) -> IntPolynomial | None:
        return self.factorization.salem_factor

    @property
    def salem_degree(self) -> int:
        return self.factorization.residual.degree or 0

    @property
    def hyperbolic(self) -> bool:
        return self.lam is not None

    @property
    def anomalous(self) -> bool:
        return self.classification is Classification.ANOMALOUS

    @property
    def display(self) -> str:
        """Dynamical degree to four places (``1.0000`` when not hyperbolic)."""
        return self.lam.display if self.lam is not None else "1.0000"

    def to_dict(self) -> dict:
        lam = None
        if self.lam is not None:
            lam = {
                "lower": str(self.lam.lower),
                "upper": str(self.lam.upper),
                "display": self.lam.display,
                "decimal": self.lam.decimal_hint,
            }
        sf = self.salem_factor
        return {
            "word": list(self.word),
            "family": self.family,
            "char_poly": list(self.char_poly.coeffs),
            "cyclotomic": [[n, k] for n, k in self.factorization.cyclotomic_part],
            "residual": list(self.factorization.residual.coeffs),
            "classification": self.classification.value,
            "salem": list(sf.coeffs) if sf is not None else None,
            "salem_degree": self.salem_degree,
            "lambda": lam,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SalemReport":
        cp = IntPolynomial(tuple(d["char_poly"]))
        fact = FactorizationReport(
            cp,
            tuple((int(n), int(k)) for n, k in d["cyclotomic"]),
            IntPolynomial(tuple(d["residual"])),
            Classification(d["classification"]),
        )
        lam = None
        if d.get("lambda") is not None:
            L = d["lambda"]
            lam = SpectralRadius(_frac(L["lower"]), _frac(L["upper"]), L["decimal"])
        return cls(tuple(d["word"]), cp, fact, lam, d.get("family", ""))

    def with_word(self, word: Word) -> "SalemReport":
        return SalemReport(tuple(word), self.char_poly, self.factorization, self.lam, self.family)


def word_matrix(word: Sequence[int], generators) -> IntMatrix:
    """``M_{w_1} M_{w_2} ... M_{w_k}`` acting on column vectors."""
    fam = _as_family(generators)
    out = IntMatrix.identity(fam.dim)
    for k in word:
        out = out @ fam.generators[k - 1].matrix
    return out


def _check_word(word: Sequence[int], n: int) -> Word:
    w = tuple(int(k) for k in word)
    bad = [k for k in w if not 1 <= k <= n]
    if bad:
        raise ValueError(f"word letters {bad} outside 1..{n}")
    return w


def analyze_matrix(word: Word, m: IntMatrix, family: str = "") -> SalemReport:
    cp = char_poly(m)
    fact, lam = salem_of(cp)
    return SalemReport(word, cp, fact, lam, family)


def analyze(word: Sequence[int], generators) -> SalemReport:
    """Compose, take the characteristic polynomial, strip, classify, enclose lambda.

    Anomalous residuals are returned flagged in the report, never dropped.
    """
    fam = _as_family(generators)
    w = _check_word(word, len(fam))
    return analyze_matrix(w, word_matrix(w, fam), fam.name)


# ---------------------------------------------------------------------------
# conjugacy heuristics
# ---------------------------------------------------------------------------


def free_reduce(word: Sequence[int]) -> Word:
    """Cancel adjacent equal letters (every generator is an involution)."""
    out: list[int] = []
    for k in word:
        if out and out[-1] == k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def canonical_form(word: Sequence[int]) -> Word:
    """Smallest rotation of the word or its reversal, after cyclic reduction.

    Rotations are conjugates and the reversal is the inverse, so every word
    merged here has the same characteristic polynomial.
    """
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == w[-1]:
        w = list(free_reduce(w[1:-1]))
    if not w:
        return ()
    rev = w[::-1]
    n = len(w)
    return min(
        min(tuple(w[i:] + w[:i]) for i in range(n)),
        min(tuple(rev[i:] + rev[:i]) for i in range(n)),
    )


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def compare_lambda(a: SalemReport, b: SalemReport) -> int:
    """Exact comparison of two hyperbolic reports' spectral radii (-1, 0, 1)."""
    if a.salem_factor == b.salem_factor:
        return 0
    la, lb = a.lam, b.lam
    width = Fraction(1, 10**12)
    for _ in range(8):
        if la.upper < lb.lower:
            return -1
        if lb.upper < la.lower:
            return 1
        width /= 10**12
        la = spectral_radius(a.salem_factor, width)
        lb = spectral_radius(b.salem_factor, width)
    raise ArithmeticError("could not separate two distinct Salem numbers")


def _word_order(w: Word) -> tuple:
    return (len(w), w)


def _improves(new: SalemReport, old: SalemReport | None) -> bool:
    if old is None:
        return True
    c = compare_lambda(new, old)
    return c < 0 or (c == 0 and _word_order(new.word) < _word_order(old.word))


@dataclass
class SearchSummary:
    """Per-degree minima of a search.

    ``ties[d]`` holds every examined word whose lambda equals the degree-``d``
    minimum; ``minima[d]`` is the first of them in (length, lexicographic) order.
    """

    minima: dict[int, SalemReport] = field(default_factory=dict)
    words_examined: int = 0
    dedup_classes: int = 0
    seed: int | None = None
    budget_exhausted: bool = False
    anomalies: list[SalemReport] = field(default_factory=list)
    family: str = ""
    reports: list[SalemReport] = field(default_factory=list)
    ties: dict[int, set[Word]] = field(default_factory=dict)

    def record(self, rep: SalemReport, keep: bool = False) -> None:
        if keep:
            self.reports.append(rep)
        if rep.anomalous:
            self.anomalies.append(rep)
            return
        if rep.lam is None:
            return
        self._offer(rep, [rep.word])

    def _offer(self, rep: SalemReport, words) -> None:
        d = rep.salem_degree
        old = self.minima.get(d)
        c = -1 if old is None else compare_lambda(rep, old)
        if c < 0:
            self.minima[d] = rep
            self.ties[d] = set(words)
        elif c == 0:
            self.ties[d].update(words)
            if _word_order(rep.word) < _word_order(old.word):
                self.minima[d] = rep

    def merge(self, other: "SearchSummary") -> "SearchSummary":
        out = SearchSummary(
            dict(self.minima),
            self.words_examined + other.words_examined,
            self.dedup_classes + other.dedup_classes,
            self.seed,
            self.budget_exhausted or other.budget_exhausted,
            self.anomalies + other.anomalies,
            self.family or other.family,
            self.reports + other.reports,
            {d: set(ws) for d, ws in self.ties.items()},
        )
        for d in sorted(other.minima):
            out._offer(other.minima[d], other.ties[d])
        return out

    def tied_words(self, degree: int) -> list[Word]:
        return sorted(self.ties.get(degree, ()), key=_word_order)

    def to_dict(self, include_reports: bool = False) -> dict:
        out = {
            "family": self.family,
            "seed": self.seed,
            "words_examined": self.words_examined,
            "dedup_classes": self.dedup_classes,
            "budget_exhausted": self.budget_exhausted,
            "minima": [self.minima[d].to_dict() for d in sorted(self.minima)],
            "ties": {str(d): [list(w) for w in self.tied_words(d)] for d in sorted(self.ties)},
            "anomalies": [r.to_dict() for r in self.anomalies],
        }
        if include_reports:
            out["reports"] = [r.to_dict() for r in self.reports]
        return out


def iter_words(n: int, max_length: int, distinct_letters: bool, first: int | None = None) -> Iterator[Word]:
    """Words over ``1..n`` by increasing length, lexicographic within a length."""
    if first is not None:
        rest = [k for k in range(1, n + 1) if not (distinct_letters and k == first)]
        yield (first,)
        for w in iter_words_over(rest, max_length - 1, distinct_letters):
            yield (first,) + w
        return
    yield from iter_words_over(range(1, n + 1), max_length, distinct_letters)


def iter_words_over(letters, max_length: int, distinct_letters: bool) -> Iterator[Word]:
    letters = list(letters)
    for length in range(1, max_length + 1):
        if distinct_letters:
            if length > len(letters):
                break
            it: Iterable = permutations(letters, length)
        else:
            it = product(letters, repeat=length)
        yield from it


def _canonical_candidates(n: int, max_length: int, distinct_letters: bool,
                          first: int | None = None) -> Iterator[Word]:
    # a canonical word starts with its smallest letter, so only words whose
    # later letters are >= the first can survive the canonical_form check
    firsts = range(1, n + 1) if first is None else (first,)
    for length in range(1, max_length + 1):
        for a in firsts:
            rest = range(a + 1 if distinct_letters else a, n + 1)
            if distinct_letters:
                tails: Iterable = permutations(rest, length - 1)
            else:
                tails = product(rest, repeat=length - 1)
            for t in tails:
                yield (a,) + t


class _Products:
    """Prefix-cached word products; lexicographic enumeration keeps hits high."""

    def __init__(self, fam: Family, size: int = 1 << 12):
        self.fam = fam
        self._get = lru_cache(maxsize=size)(self._compute)

    def _compute(self, w: Word) -> IntMatrix:
        if not w:
            return IntMatrix.identity(self.fam.dim)
        return self._get(w[:-1]) @ self.fam.generators[w[-1] - 1].matrix

    def __call__(self, w: Word) -> IntMatrix:
        return self._get(w)


def _cached_analysis(fam: Family, w: Word, matrix_of, cache) -> SalemReport:
    if cache is not None:
        rep = cache.lookup(fam, w)
        if rep is not None:
            return rep
    rep = analyze_matrix(w, matrix_of(w), fam.name)
    if cache is not None:
        cache.store(fam, rep)
    return rep


def _exhaustive(fam: Family, max_length: int, distinct_letters: bool, budget: int,
                first: int | None, keep_reports: bool, cache=None) -> SearchSummary:
    summary = SearchSummary(family=fam.name)
    prod_of = _Products(fam)
    for w in _canonical_candidates(len(fam), max_length, distinct_letters, first):
        summary.words_examined += 1
        if canonical_form(w) != w:
            continue
        if summary.dedup_classes >= budget:
            summary.budget_exhausted = True
            break
        summary.dedup_classes += 1
        summary.record(_cached_analysis(fam, w, prod_of, cache), keep_reports)
    return summary


def _exhaustive_job(args):
    return _exhaustive(*args)


def exhaustive_search(
    generators,
    max_length: int,
    distinct_letters: bool = False,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    keep_reports: bool = False,
    cache=None,
) -> SearchSummary:
    """Analyze one word per rotation/reversal class up to ``max_length``.

    With ``workers > 1`` the first-letter subtrees run in separate processes and
    are merged with the same tie-breaking rule (smallest lambda, then shortest
    and lexicographically first word), so the result does not depend on the
    worker count.  The budget then applies per subtree, and ``cache`` (any
    object with ``lookup``/``store``) is only consulted in the serial path.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    fam = _as_family(generators)
    if workers <= 1:
        return _exhaustive(fam, max_length, distinct_letters, budget, None, keep_reports, cache)
    jobs = [(fam, max_length, distinct_letters, budget, a, keep_reports) for a in range(1, len(fam) + 1)]
    out = SearchSummary(family=fam.name)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_exhaustive_job, jobs):
            out = out.merge(part)
    if keep_reports:
        out.reports.sort(key=lambda r: _word_order(r.word))
    return out


def random_search(
    generators,
    trials: int,
    max_length: int,
    seed: int = 0,
    distinct_letters: bool = False,
    budget: int = DEFAULT_BUDGET,
    keep_reports: bool = False,
    cache=None,
) -> SearchSummary:
    """Seeded uniform sampling: length uniform in ``1..max_length``, letters uniform."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    fam = _as_family(generators)
    n = len(fam)
    rng = random.Random(seed)
    summary = SearchSummary(seed=seed, family=fam.name)
    seen: set[Word] = set()
    for _ in range(trials):
        length = rng.randint(1, max_length)
        if distinct_letters:
            w = tuple(rng.sample(range(1, n + 1), min(length, n)))
        else:
            w = tuple(rng.randint(1, n) for _ in range(length))
        summary.words_examined += 1
        c = canonical_form(w)
        if c in seen:
            continue
        if summary.dedup_classes >= budget:
            summary.budget_exhausted = True
            break
        seen.add(c)
        summary.dedup_classes += 1
        summary.record(_cached_analysis(fam, c, lambda w: word_matrix(w, fam), cache), keep_reports)
    return summary


# ---------------------------------------------------------------------------
# orbit growth
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthResult:
    count: int
    elements: int
    ball_sizes: tuple[int, ...]
    complete: bool
    max_length: int
    r: Fraction

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "elements": self.elements,
            "ball_sizes": list(self.ball_sizes),
            "complete": self.complete,
            "max_length": self.max_length,
            "r": str(self.r),
        }


def growth_count(
    generators,
    h: RatVector,
    r,
    max_length: int,
    budget: int = 10**6,
) -> GrowthResult:
    """Count distinct group elements ``g`` of word length ``<= max_length`` with ``(g h, h) <= r``.

    Elements are found breadth first and deduplicated by exact matrix equality.
    ``complete`` is False when the element budget stopped the enumeration early.
    """
    fam = _as_family(generators)
    gram = fam.gram
    r = Fraction(r)
    if bilinear(gram, h, h) <= 0:
        raise ValueError("h must have positive square")
    ident = IntMatrix.identity(fam.dim)
    seen = {ident}
    frontier = [ident]
    sizes = [1]
    complete = True
    for _ in range(max_length):
        nxt = []
        for m in frontier:
            for g in fam.generators:
                p = m @ g.matrix
                if p not in seen:
                    if len(seen) >= budget:
                        complete = False
                        break
                    seen.add(p)
                    nxt.append(p)
            if not complete:
                break
        sizes.append(len(seen))
        frontier = nxt
        if not complete:
            break
    count = sum(1 for m in seen if bilinear(gram, m.apply(h), h) <= r)
    return GrowthResult(count, len(seen), tuple(sizes), complete, max_length, r)


def table_word(word: Sequence[int]) -> str:
    """Pairs spelled out, e.g. ``(2,6,1,3)`` -> ``h_13 h_24 h_12 h_14``."""
    return " ".join(f"h_{PAIRS[k - 1][0]}{PAIRS[k - 1][1]}" for k in word)
