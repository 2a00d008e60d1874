"""Tests for the run browser."""

import asyncio
import tempfile

from textual.widgets import DataTable, ListView

from pyfraxis.data import RunStorage
from pyfraxis.ui.app import PyfraxisApp
from tests.test_persistence import sample_run


def column_labels(table: DataTable) -> list[str]:
    return [str(column.label) for column in table.columns.values()]


class TestRunDetailView:
    """Test the run detail view."""

    def test_every_table_can_be_shown(self) -> None:
        """Test that the trajectory opens first and other tables are selectable."""

        async def scenario(storage: RunStorage) -> None:
            app = PyfraxisApp(storage)
            async with app.run_test() as pilot:
                app.run_detail.show_run("petersen-relax")
                app.current_view = "detail"
                await pilot.pause()

                table = app.query_one("#run-table", DataTable)
                assert app.run_detail.current_table == "trial_000"
                assert column_labels(table) == ["sweep", "slot", "energy"]
                assert table.row_count == 2
                assert len(app.query_one("#table-list", ListView)) == 2

                app.run_detail.show_table("finals")
                await pilot.pause()
                assert app.run_detail.current_table == "finals"
                assert column_labels(table) == ["trial", "energy"]
                assert table.row_count == 1

        with tempfile.TemporaryDirectory() as temp_dir:
            storage = RunStorage(temp_dir)
            storage.save_run(sample_run())
            asyncio.run(scenario(storage))

    def test_missing_table(self) -> None:
        """Test that an unknown table name shows the placeholder."""

        async def scenario(storage: RunStorage) -> None:
            app = PyfraxisApp(storage)
            async with app.run_test() as pilot:
                app.run_detail.show_run("petersen-relax")
                app.run_detail.show_table("trial_999")
                await pilot.pause()

                assert app.run_detail.current_table is None
                assert column_labels(app.query_one("#run-table", DataTable)) == ["No tables"]

        with tempfile.TemporaryDirectory() as temp_dir:
            storage = RunStorage(temp_dir)
            storage.save_run(sample_run())
            asyncio.run(scenario(storage))
