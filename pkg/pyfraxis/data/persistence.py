"""Run storage: one directory per run with config, summary and CSV tables."""

import csv
import json
import os
import re
import shutil
from datetime import datetime
from pathlib import Path

import yaml

from ..models.run import RunRecord, RunTable

DATA_DIR_ENV = "PYFRAXIS_DATA_DIR"


class PersistenceError(Exception):
    """Base exception for persistence operations."""

    pass


def default_data_dir() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV) or os.path.expanduser("~/pyfraxis-data"))


class RunStorage:
    """Saves and loads experiment runs under a data directory.

    A run named ``name`` lives in ``<data_dir>/<name>/`` as ``config.yaml``,
    ``summary.json`` and one ``<table>.csv`` per table.
    """

    def __init__(self, data_dir: str | Path | None = None) -> None:
        self.data_dir = Path(data_dir) if data_dir is not None else default_data_dir()
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def _sanitize_name(self, name: str) -> str:
        """Convert a run or table name to a safe path component."""
        safe_name = re.sub(r'[<>:"/\\|?*]', "_", name)
        safe_name = safe_name.strip(". ")
        if not safe_name:
            safe_name = "unnamed_run"
        return safe_name

    def run_path(self, run_name: str) -> Path:
        return self.data_dir / self._sanitize_name(run_name)

    def save_run(self, run: RunRecord, overwrite: bool = True) -> Path:
        """Write a run; returns its directory."""
        try:
            path = self.run_path(run.name)
            if path.exists() and not overwrite:
                raise PersistenceError(f"Run '{run.name}' already exists")
            path.mkdir(parents=True, exist_ok=True)
            # tables from an earlier save of this run
            for stale in path.glob("*.csv"):
                stale.unlink()

            metadata = {
                "run": {
                    "name": run.name,
                    "command": run.command,
                    "created_at": run.created_at.isoformat(),
                    "tables": [table.name for table in run.tables],
                },
                "config": run.config,
            }
            with open(path / "config.yaml", "w", encoding="utf-8") as f:
                yaml.safe_dump(metadata, f, default_flow_style=False, sort_keys=False)

            with open(path / "summary.json", "w", encoding="utf-8") as f:
                json.dump(run.summary, f, indent=2, sort_keys=True)
                f.write("\n")

            for table in run.tables:
                write_csv(path / f"{self._sanitize_name(table.name)}.csv", table)
            return path

        except PersistenceError:
            raise
        except Exception as e:
            raise PersistenceError(f"Failed to save run '{run.name}': {e}") from e

    def load_run(self, run_name: str) -> RunRecord:
        try:
            path = self.run_path(run_name)
            if not (path / "config.yaml").exists():
                raise PersistenceError(f"Run '{run_name}' not found")

            with open(path / "config.yaml", encoding="utf-8") as f:
                metadata = yaml.safe_load(f)
            if not isinstance(metadata, dict) or "run" not in metadata:
                raise PersistenceError(f"Invalid metadata in run '{run_name}'")
            info = metadata["run"]

            summary_path = path / "summary.json"
            summary = {}
            if summary_path.exists():
                with open(summary_path, encoding="utf-8") as f:
                    summary = json.load(f)

            tables = [
                read_csv(path / f"{self._sanitize_name(name)}.csv", name)
                for name in info.get("tables", [])
            ]
            return RunRecord(
                name=info["name"],
                command=info["command"],
                config=metadata.get("config") or {},
                summary=summary,
                tables=tables,
                created_at=datetime.fromisoformat(info["created_at"]),
            )

        except PersistenceError:
            raise
        except Exception as e:
            raise PersistenceError(f"Failed to load run '{run_name}': {e}") from e

    def list_runs(self) -> list[str]:
        """Names of stored runs, sorted."""
        try:
            return sorted(
                p.name for p in self.data_dir.iterdir() if (p / "config.yaml").exists()
            )
        except Exception as e:
            raise PersistenceError(f"Failed to list runs: {e}") from e

    def delete_run(self, run_name: str) -> None:
        try:
            path = self.run_path(run_name)
            if not (path / "config.yaml").exists():
                raise PersistenceError(f"Run '{run_name}' not found")
            shutil.rmtree(path)
        except PersistenceError:
            raise
        except Exception as e:
            raise PersistenceError(f"Failed to delete run '{run_name}': {e}") from e

    def run_exists(self, run_name: str) -> bool:
        return (self.run_path(run_name) / "config.yaml").exists()


def write_csv(path: Path, table: RunTable) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(table.header)
        writer.writerows(table.rows)


def read_csv(path: Path, name: str | None = None) -> RunTable:
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise PersistenceError(f"Empty table file {path}")
    return RunTable(name or path.stem, tuple(rows[0]), [list(r) for r in rows[1:]])
