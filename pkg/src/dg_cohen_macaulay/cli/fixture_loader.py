"""
Fixture loader for the bundled ``.dgcm`` example problems.
"""
import os
from pathlib import Path
from typing import List, Optional, Tuple

from src.dg_cohen_macaulay.utils import get_env_var, load_environment, slugify_fixture_name

FIXTURE_SUFFIX = ".dgcm"


class FixtureLoader:
    """Handles locating and reading problem files and bundled fixtures."""

    def __init__(self, fixture_dir: Optional[str] = None):
        """
        Initialize the fixture loader.

        Args:
            fixture_dir: Directory holding ``.dgcm`` files; ``DGCM_FIXTURE_DIR`` or the
                bundled directory by default.
        """
        load_environment()
        configured = fixture_dir or get_env_var("DGCM_FIXTURE_DIR")
        if configured:
            self.fixture_dir = Path(configured)
        else:
            self.fixture_dir = Path(os.path.dirname(os.path.abspath(__file__))) / 'fixtures'

    def list_fixtures(self) -> List[str]:
        """Names of every fixture, sorted."""
        if not self.fixture_dir.is_dir():
            return []
        return sorted(p.stem for p in self.fixture_dir.glob(f"*{FIXTURE_SUFFIX}"))

    def load_fixture(self, name: str) -> str:
        """
        Load a fixture by name.

        Args:
            name: The fixture name, with or without the ``.dgcm`` suffix.

        Returns:
            The contents of the fixture file.

        Raises:
            FileNotFoundError: If no fixture has that name.
        """
        fixture_path = self.fixture_dir / (slugify_fixture_name(name) + FIXTURE_SUFFIX)

        if not fixture_path.exists():
            raise FileNotFoundError(f"Fixture not found: {name}")

        with open(fixture_path, 'r', encoding='utf-8') as file:
            return file.read()

    def resolve(self, path_or_name: str) -> Tuple[str, str]:
        """
        Read a problem given as a file path or as a bundled fixture name.

        Returns:
            The source label and the file contents.

        Raises:
            FileNotFoundError: If neither a file nor a fixture matches.
        """
        if os.path.isfile(path_or_name):
            with open(path_or_name, 'r', encoding='utf-8') as file:
                return path_or_name, file.read()
        return slugify_fixture_name(path_or_name) + FIXTURE_SUFFIX, self.load_fixture(path_or_name)
