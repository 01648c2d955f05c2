import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from overlaysim import CellStats, EmptyReportError, MetricsReport, SearchOutcome

OK = SearchOutcome(True, 4, 2, 3, 2)
FAIL = SearchOutcome(False, None, 10, None, 10)
KEY = ("config2", 3.0)


def test_single_success():
    r = MetricsReport()
    r.record_outcome(KEY, OK)
    (row,) = r.finalize()
    assert (row.mean_average_error, row.avg_success_hops, row.failure_ratio) == (3.0, 2.0, 0.0)


def test_single_failure():
    r = MetricsReport()
    r.record_outcome(KEY, FAIL)
    (row,) = r.finalize()
    assert row.failure_ratio == 1.0
    assert row.mean_average_error is None and row.avg_success_hops is None
    assert r[KEY] == CellStats(total=1)


def test_mixed():
    r = MetricsReport()
    r.record_outcome(KEY, OK)
    r.record_outcome(KEY, FAIL, swaps=2)
    (row,) = r.finalize()
    assert row.failure_ratio == 0.5 and row.swaps == 2 and row.total == 2


def test_empty_report():
    with pytest.raises(EmptyReportError):
        MetricsReport().finalize()


def test_bad_key():
    with pytest.raises(ValueError):
        MetricsReport().record_outcome(("config9", 1.0), OK)
    with pytest.raises(ValueError):
        MetricsReport().record_outcome(("config1", 12.5), OK)


def test_full_sweep_rows_sorted():
    r = MetricsReport()
    levels = [6.0, 0.0, 3.0, 1.0, 5.0, 2.0, 4.0]
    for cfg, lvl in itertools.product(["config3", "config1", "config2"], levels):
        r.record_outcome((cfg, lvl), OK if lvl >= 3 else FAIL)
    rows = r.finalize()
    assert len(rows) == 21
    assert [(x.config, x.allowable_error) for x in rows] == sorted(
        itertools.product(["config1", "config2", "config3"], sorted(levels)))


outcomes = st.one_of(
    st.just(FAIL),
    st.builds(lambda d, h: SearchOutcome(True, 1, h, d, h), st.integers(0, 12), st.integers(1, 10)),
)
log_entries = st.lists(st.tuples(st.sampled_from(["config1", "config2", "config3"]),
                                 st.sampled_from([0.0, 1.0, 2.5]), outcomes, st.integers(0, 3)),
                       min_size=1, max_size=60)


@given(log_entries, st.randoms(use_true_random=False))
def test_replay_and_merge_reproduce_report(log, rnd):
    whole = MetricsReport()
    for cfg, lvl, out, sw in log:
        whole.record_outcome((cfg, lvl), out, sw)
    # replaying the persisted log in any split and order gives the same table
    shuffled = list(log)
    rnd.shuffle(shuffled)
    cut = rnd.randrange(len(shuffled) + 1)
    parts = [MetricsReport(), MetricsReport()]
    for i, (cfg, lvl, out, sw) in enumerate(shuffled):
        parts[i >= cut].record_outcome((cfg, lvl), out, sw)
    merged = MetricsReport.combine(reversed(parts) if rnd.random() < 0.5 else parts)
    assert merged.finalize() == whole.finalize()
    for row in whole.finalize():
        assert 0.0 <= row.failure_ratio <= 1.0
        if row.mean_average_error is not None:
            assert row.mean_average_error <= 12 and row.avg_success_hops <= 10
