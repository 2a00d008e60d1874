"""Textual browser for stored pyfraxis runs."""

import json

from textual.app import App, ComposeResult
from textual.binding import Binding
from textual.containers import Container
from textual.reactive import Reactive, reactive
from textual.widgets import DataTable, Footer, Header, ListItem, ListView, Static

from ..data.persistence import PersistenceError, RunStorage
from ..models.run import RunRecord

MAX_TABLE_ROWS = 500


class RunListView(Container):
    """Widget listing stored runs."""

    def __init__(self, storage: RunStorage) -> None:
        super().__init__()
        self.storage = storage
        self.runs: list[str] = []

    def compose(self) -> ComposeResult:
        yield Static("Runs", classes="section-title")
        yield ListView(id="run-list")

    def on_mount(self) -> None:
        self.refresh_runs()

    def refresh_runs(self) -> None:
        """Reload run names from storage."""
        list_view = self.query_one("#run-list", ListView)
        list_view.clear()
        try:
            self.runs = self.storage.list_runs()
        except PersistenceError as e:
            list_view.append(ListItem(Static(f"Error: {e}"), disabled=True))
            return

        if not self.runs:
            list_view.append(ListItem(Static("No runs found"), disabled=True))
            return
        for run_name in self.runs:
            try:
                run = self.storage.load_run(run_name)
                label = f"{run_name} [{run.command}] {run.created_at:%Y-%m-%d %H:%M}"
            except PersistenceError:
                label = f"{run_name} (error loading)"
            list_view.append(ListItem(Static(label), name=run_name))


class RunDetailView(Container):
    """Widget showing a run's summary and one of its tables at a time."""

    def __init__(self, storage: RunStorage) -> None:
        super().__init__()
        self.storage = storage
        self.current_run: RunRecord | None = None
        self.current_table: str | None = None

    def compose(self) -> ComposeResult:
        yield Static("Run Details", classes="section-title", id="detail-title")
        yield Static("", id="run-info")
        yield ListView(id="table-list")
        yield DataTable(id="run-table")

    def show_run(self, run_name: str) -> None:
        try:
            self.current_run = self.storage.load_run(run_name)
            self._update_display()
        except PersistenceError as e:
            self._show_error(f"Error loading run: {e}")

    def _update_display(self) -> None:
        if not self.current_run:
            return
        run = self.current_run
        self.query_one("#detail-title", Static).update(f"Run: {run.name}")

        scalars = {
            k: v for k, v in run.summary.items() if not isinstance(v, (list, dict))
        }
        self.query_one("#run-info", Static).update(
            f"Command: {run.command} | Tables: {len(run.tables)}\n"
            + json.dumps(scalars, sort_keys=True)
        )

        table_list = self.query_one("#table-list", ListView)
        table_list.clear()
        for run_table in run.tables:
            label = f"{run_table.name} ({len(run_table.rows)} rows)"
            table_list.append(ListItem(Static(label), name=run_table.name))
        # per-trial trajectories come first
        self.show_table(run.tables[0].name if run.tables else None)

    def show_table(self, table_name: str | None) -> None:
        """Fill the data table with one of the current run's tables."""
        table = self.query_one("#run-table", DataTable)
        table.clear(columns=True)
        shown = self.current_run.table(table_name) if self.current_run and table_name else None
        self.current_table = shown.name if shown else None
        if shown is None:
            table.add_column("No tables")
            table.add_row("This run stored no tables")
            return
        for name in shown.header:
            table.add_column(name)
        for row in shown.rows[:MAX_TABLE_ROWS]:
            table.add_row(*row)

    def _show_error(self, error_message: str) -> None:
        self.current_table = None
        self.query_one("#detail-title", Static).update("Error")
        self.query_one("#run-info", Static).update(error_message)
        self.query_one("#table-list", ListView).clear()
        table = self.query_one("#run-table", DataTable)
        table.clear(columns=True)
        table.add_column("Error")
        table.add_row(error_message)


class PyfraxisApp(App[None]):
    """Terminal browser over a run storage directory."""

    theme: Reactive[str] = reactive("gruvbox")

    CSS = """
    .section-title {
        background: $primary;
        color: $text;
        padding: 0 1;
        margin-bottom: 1;
        text-align: center;
        text-style: bold;
    }

    #run-list {
        height: 1fr;
        border: solid $primary;
    }

    #table-list {
        height: auto;
        max-height: 8;
        border: solid $primary;
    }

    #run-table {
        height: 1fr;
        border: solid $primary;
    }

    #run-info {
        padding: 1;
        background: $surface;
        color: $text;
        margin-bottom: 1;
    }
    """

    BINDINGS = [
        Binding("q", "quit", "Quit"),
        Binding("r", "refresh", "Refresh"),
        Binding("escape", "back", "Back"),
    ]

    current_view: reactive[str] = reactive("list")

    def __init__(self, storage: RunStorage | None = None) -> None:
        super().__init__()
        self.storage = storage if storage is not None else RunStorage()

    def compose(self) -> ComposeResult:
        yield Header()
        with Container(id="main-container"):
            self.run_list = RunListView(self.storage)
            self.run_detail = RunDetailView(self.storage)
            yield self.run_list
            yield self.run_detail
        yield Footer()

    def on_mount(self) -> None:
        self.title = "pyfraxis"
        self.sub_title = "Stored runs"
        self._update_view()

    def watch_current_view(self, _old_view: str, _new_view: str) -> None:
        self._update_view()

    def _update_view(self) -> None:
        if self.current_view == "list":
            self.run_list.display = True
            self.run_detail.display = False
            self.sub_title = "Stored runs"
        elif self.current_view == "detail":
            self.run_list.display = False
            self.run_detail.display = True
            run_name = getattr(self.run_detail.current_run, "name", "Run")
            self.sub_title = f"Viewing: {run_name}"

    def on_list_view_selected(self, event: ListView.Selected) -> None:
        if event.list_view.id == "run-list" and event.item.name:
            self.run_detail.show_run(event.item.name)
            self.current_view = "detail"
        elif event.list_view.id == "table-list" and event.item.name:
            self.run_detail.show_table(event.item.name)

    def action_refresh(self) -> None:
        if self.current_view == "list":
            self.run_list.refresh_runs()
        elif self.current_view == "detail" and self.run_detail.current_run:
            selected = self.run_detail.current_table
            self.run_detail.show_run(self.run_detail.current_run.name)
            run = self.run_detail.current_run
            if selected and run and run.table(selected):
                self.run_detail.show_table(selected)

    async def action_back(self) -> None:
        if self.current_view == "detail":
            self.current_view = "list"
