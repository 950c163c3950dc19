import math

import pytest

from hyperlrc.errors import ConfigError
from hyperlrc.tables import TABLES, Row, candidate_fibers, format_row, run_table
from hyperlrc.verify import singleton_bound


@pytest.mark.parametrize("tid", ["III", "IV", "VI", "VII"])
def test_listed_rows_are_optimal_parameters(tid):
    """Every exact row meets the locality Singleton bound with equality."""
    tab = TABLES[tid]
    r = {"III": 3, "IV": 5, "VI": 2, "VII": 4}[tid]
    for row in tab.rows:
        n, k, d = row.claimed
        assert d == singleton_bound(n, k, r), row


def test_bound_only_rows_follow_the_odd_formulas():
    for row in TABLES["V"].rows:
        n, k, d = row.claimed
        r = row.r
        assert (r + 1) % 2 == 0 and 240 % (r + 1) == 0
        assert n == row.ell * (r + 1) and k == r * row.t - (r - 1)
        assert d == n - (row.t - 1) * (r + 1) - 1
        assert singleton_bound(n, k, r) - d <= 1
    assert TABLES["V-r2"] is TABLES["V"]
    assert max(row.r for row in TABLES["V"].rows) == 239


@pytest.mark.parametrize("tid", ["IV", "VI"])
def test_small_tables_rebuild(tid):
    res = run_table(tid, trials=20)
    assert len(res) == len(TABLES[tid].rows)
    for row in res:
        assert row["match"], format_row(row)
        assert row["actual"] == row["claimed"]
        assert row["report"]["repair_trials"]["mismatches"] == 0


def test_candidate_fibers_start_with_default():
    class Plan:
        fibers = [0] * 5

    cands = list(candidate_fibers(Plan, Row(3, 2, (0, 0, 0), "4t+1")))
    assert cands[0] is None
    assert len(cands) == math.comb(5, 3)          # default combination listed once
    assert [0, 1, 2] not in cands
    assert len(list(candidate_fibers(Plan, Row(3, 2, (0, 0, 0), "4t+1"), limit=3))) == 3


def test_unknown_table():
    with pytest.raises(ConfigError):
        run_table("IX")
