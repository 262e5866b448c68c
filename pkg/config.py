# config.py
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

FORMATS = ('text', 'json', 'csv')
COMMANDS = ('invariants', 'enumerate', 'verify', 'unknot', 'rrp', 'trees', 'column', 'export',
            'census')


def load_environment(env_file: Optional[Path] = None) -> dict:
    """Load a .env file (if any) and return the recognised MINBRAID_* settings."""
    load_dotenv(env_file)
    return {
        'home': os.getenv('MINBRAID_HOME'),
        'fixture': os.getenv('MINBRAID_FIXTURE'),
        'jobs': os.getenv('MINBRAID_JOBS'),
        'budget': os.getenv('MINBRAID_BUDGET'),
        'progress': os.getenv('MINBRAID_PROGRESS', '1') != '0',
    }


@dataclass
class MinbraidConfig:
    base_dir: Path = field(default_factory=Path.cwd)

    @property
    def errors_dir(self) -> Path:
        return self.base_dir / 'error_log'

    @property
    def runs_dir(self) -> Path:
        return self.base_dir / 'runs'

    @property
    def exports_dir(self) -> Path:
        return self.base_dir / 'exports'

    @property
    def manifest_file(self) -> Path:
        return self.runs_dir / 'all_runs.json'

    def create_directories(self):
        """Create all required directories."""
        for dir_path in [self.errors_dir, self.runs_dir, self.exports_dir]:
            dir_path.mkdir(exist_ok=True)


@dataclass
class RunConfig:
    command: str
    max_crossings: int = 6
    max_strands: Optional[int] = None
    components: Optional[int] = None
    output_format: str = 'text'
    jobs: int = 1
    fixture: Optional[str] = None
    budget: int = 6
    moves_budget: int = 20_000
    depth: int = 6
    strands: Optional[int] = None
    max_vertices: int = 10
    progress: bool = True
    target: Optional[str] = None
    started: str = field(default_factory=lambda: datetime.now().isoformat())

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}, got {self.output_format!r}")
        if self.jobs < 1:
            raise ValueError(f"worker count must be at least 1, got {self.jobs}")
        if self.budget < 0 or self.moves_budget < 0:
            raise ValueError("budgets must be nonnegative")
        if not 1 <= self.max_vertices <= 12:
            raise ValueError(f"max_vertices must be in 1..12, got {self.max_vertices}")
        if self.depth < 0:
            raise ValueError(f"column depth must be nonnegative, got {self.depth}")
        if self.max_crossings < 0:
            raise ValueError(f"max_crossings must be nonnegative, got {self.max_crossings}")
        return self

    def to_dict(self) -> dict:
        return {k: str(v) if isinstance(v, Path) else v for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, data: dict):
        return cls(**data)


class RunManifest:
    """JSON ledger of CLI runs: one file per run plus a master file keyed by run id."""

    def __init__(self, runs_dir: Path):
        self.runs_dir = runs_dir
        self.manifest_file = runs_dir / 'all_runs.json'
        self._ensure_manifest_file()

    def _ensure_manifest_file(self):
        if not self.manifest_file.exists():
            self.save_manifest({})

    def load_manifest(self) -> dict:
        try:
            return json.loads(self.manifest_file.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return {}

    def save_manifest(self, data: dict):
        self.manifest_file.write_text(json.dumps(data, indent=4))

    def record_run(self, config: RunConfig, summary: dict) -> Path:
        run_id = config.started.replace(':', '-')
        record = {'config': config.to_dict(), 'summary': summary}

        file_path = self.runs_dir / f"run_{run_id}.json"
        file_path.write_text(json.dumps(record, indent=4))

        manifest = self.load_manifest()
        manifest[run_id] = record
        self.save_manifest(manifest)

        return file_path
