"""Tests for stored run models."""

from datetime import datetime

import pytest

from pyfraxis.models.run import RunRecord, RunTable


class TestRunTable:
    """Test cases for RunTable model."""

    def test_table_creation(self) -> None:
        """Test basic table creation."""
        table = RunTable(name="finals", header=("trial", "energy"))
        assert table.name == "finals"
        assert table.rows == []

    def test_column(self) -> None:
        """Test column lookup by header name."""
        table = RunTable("finals", ("trial", "energy"), [["0", "-0.3"], ["1", "-0.29"]])
        assert table.column("energy") == ["-0.3", "-0.29"]
        assert table.column("trial") == ["0", "1"]

    def test_unknown_column(self) -> None:
        """Test that unknown headers raise ValueError."""
        with pytest.raises(ValueError):
            RunTable("finals", ("trial",)).column("energy")


class TestRunRecord:
    """Test cases for RunRecord model."""

    def test_record_creation(self) -> None:
        """Test defaults for a new record."""
        record = RunRecord(name="run", command="optimize")
        assert record.config == {}
        assert record.summary == {}
        assert record.tables == []
        assert isinstance(record.created_at, datetime)

    def test_add_and_find_tables(self) -> None:
        """Test adding tables and looking them up by name."""
        record = RunRecord(name="run", command="expressibility")
        added = record.add_table("histogram", ["bin_lower", "count"], [["0", "3"]])

        assert added.header == ("bin_lower", "count")
        assert record.table("histogram") is added
        assert record.table("missing") is None

    def test_tables_keep_insertion_order(self) -> None:
        """Test that tables are stored in the order they were added."""
        record = RunRecord(name="run", command="optimize")
        for name in ("trial_001", "trial_000", "finals"):
            record.add_table(name, ("energy",), [])
        assert [t.name for t in record.tables] == ["trial_001", "trial_000", "finals"]
