"""Per-cell aggregation of search outcomes.

A cell is one (configuration, allowable error) pair.  Each cell reports the
mean achieved distance over successful searches, the mean hop count of
successful searches, and the fraction of searches that failed.  Means over
zero successes are ``None`` rather than 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import EmptyReportError
from .search import SearchConfig, SearchOutcome
from .semantic import check_allowable_error


class CellKey(NamedTuple):
    config: SearchConfig
    allowable_error: float

    @classmethod
    def make(cls, config, allowable_error) -> "CellKey":
        return cls(SearchConfig(config), check_allowable_error(allowable_error))


@dataclass
class CellStats:
    total: int = 0
    successes: int = 0
    sum_achieved_distance: int = 0
    sum_success_hops: int = 0
    swaps: int = 0

    def add(self, outcome: SearchOutcome, swaps: int = 0) -> None:
        self.total += 1
        self.swaps += swaps
        if outcome.success:
            self.successes += 1
            self.sum_achieved_distance += outcome.achieved_distance
            self.sum_success_hops += outcome.hops

    def merge(self, other: "CellStats") -> None:
        self.total += other.total
        self.successes += other.successes
        self.sum_achieved_distance += other.sum_achieved_distance
        self.sum_success_hops += other.sum_success_hops
        self.swaps += other.swaps

    @property
    def failure_ratio(self) -> float:
        return (self.total - self.successes) / self.total

    @property
    def mean_average_error(self) -> Optional[float]:
        return self.sum_achieved_distance / self.successes if self.successes else None

    @property
    def avg_success_hops(self) -> Optional[float]:
        return self.sum_success_hops / self.successes if self.successes else None


class MetricsRow(NamedTuple):
    config: str
    allowable_error: float
    mean_average_error: Optional[float]
    avg_success_hops: Optional[float]
    failure_ratio: float
    swaps: int
    successes: int
    total: int


class MetricsReport:
    def __init__(self):
        self.cells: dict[CellKey, CellStats] = {}

    def __len__(self) -> int:
        return len(self.cells)

    def __getitem__(self, key) -> CellStats:
        return self.cells[CellKey.make(*key)]

    def record_outcome(self, key, outcome: SearchOutcome, swaps: int = 0) -> None:
        key = CellKey.make(*key)
        stats = self.cells.get(key)
        if stats is None:
            stats = self.cells[key] = CellStats()
        stats.add(outcome, swaps)

    def merge(self, other: "MetricsReport") -> "MetricsReport":
        """Fold ``other`` into this report in place and return self."""
        for key, stats in other.cells.items():
            self.cells.setdefault(key, CellStats()).merge(stats)
        return self

    @classmethod
    def combine(cls, reports: Iterable["MetricsReport"]) -> "MetricsReport":
        out = cls()
        for r in reports:
            out.merge(r)
        return out

    def finalize(self) -> list[MetricsRow]:
        if not self.cells:
            raise EmptyReportError("no outcomes were recorded")
        rows = []
        for key in sorted(self.cells, key=lambda k: (k.config.value, k.allowable_error)):
            s = self.cells[key]
            rows.append(MetricsRow(
                key.config.value, key.allowable_error, s.mean_average_error,
                s.avg_success_hops, s.failure_ratio, s.swaps, s.successes, s.total,
            ))
        return rows
