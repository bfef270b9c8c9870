"""Run configurations shared by the CLI and the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import (
    DEFAULT_BUDGET,
    GrowthResult,
    SearchSummary,
    exhaustive_search,
    get_family,
    growth_count,
    random_search,
)
from .kernel import RatVector

MODES = ("exhaustive", "random")
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    command: str
    output_format: str = "text"
    cache: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")


@dataclass(frozen=True)
class SearchConfig:
    family: str
    mode: str = "exhaustive"
    max_length: int = 4
    distinct_letters: bool = False
    trials: int = 1000
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    keep_reports: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.max_length < 1:
            raise ValueError("max_length must be at least 1")
        if self.trials < 1 or self.budget < 1 or self.workers < 1:
            raise ValueError("trials, budget and workers must be positive")
        get_family(self.family)

    def run(self, cache=None) -> SearchSummary:
        fam = get_family(self.family)
        if self.mode == "exhaustive":
            # the cache is not shared with worker processes
            return exhaustive_search(
                fam, self.max_length, self.distinct_letters, self.budget, self.workers,
                self.keep_reports, cache=cache if self.workers == 1 else None,
            )
        return random_search(
            fam, self.trials, self.max_length, self.seed, self.distinct_letters, self.budget,
            self.keep_reports, cache=cache,
        )


@dataclass(frozen=True)
class GrowthConfig:
    family: str
    r: Fraction
    max_length: int
    h: RatVector | None = None  # None means the family's delta
    budget: int = 10**6

    def __post_init__(self):
        if self.max_length < 0:
            raise ValueError("max_length must be non-negative")
        object.__setattr__(self, "r", Fraction(self.r))
        get_family(self.family)

    def run(self) -> GrowthResult:
        fam = get_family(self.family)
        h = self.h if self.h is not None else fam.delta
        return growth_count(fam, h, self.r, self.max_length, self.budget)
