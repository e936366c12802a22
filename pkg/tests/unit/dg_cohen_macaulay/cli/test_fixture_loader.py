"""
Unit tests for the FixtureLoader class.
"""
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import mock_open, patch

from src.dg_cohen_macaulay.cli.fixture_loader import FixtureLoader


class TestFixtureLoader(unittest.TestCase):
    """Test cases for the FixtureLoader class."""

    def setUp(self):
        """Set up a temporary fixture directory."""
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        for name in ("beta", "alpha"):
            Path(self.tmp.name, f"{name}.dgcm").write_text(f'{{"name": "{name}"}}', encoding="utf-8")
        Path(self.tmp.name, "notes.txt").write_text("ignored", encoding="utf-8")
        self.loader = FixtureLoader(self.tmp.name)

    def test_list_fixtures(self):
        """Test that only .dgcm files are listed, sorted."""
        self.assertEqual(self.loader.list_fixtures(), ["alpha", "beta"])

    def test_missing_directory(self):
        """Test that a missing directory has no fixtures."""
        loader = FixtureLoader(os.path.join(self.tmp.name, "absent"))
        self.assertEqual(loader.list_fixtures(), [])

    def test_load_fixture(self):
        """Test loading with and without the suffix."""
        self.assertEqual(self.loader.load_fixture("alpha"), '{"name": "alpha"}')
        self.assertEqual(self.loader.load_fixture("Alpha.dgcm"), '{"name": "alpha"}')

    def test_fixture_not_found(self):
        """Test that FileNotFoundError is raised for unknown names."""
        with self.assertRaises(FileNotFoundError):
            self.loader.load_fixture("gamma")

    @patch('pathlib.Path.exists')
    @patch('builtins.open', new_callable=mock_open, read_data='{"variables": ["x"]}')
    def test_load_fixture_opens_slugged_path(self, mock_file, mock_exists):
        """Test that the opened path is built from the slug."""
        mock_exists.return_value = True
        result = self.loader.load_fixture("Reg-Not-Par")
        self.assertEqual(result, '{"variables": ["x"]}')
        args, _ = mock_file.call_args
        self.assertTrue(str(args[0]).endswith("reg-not-par.dgcm"))

    def test_resolve_path_and_name(self):
        """Test that a file path wins and names fall back to fixtures."""
        path = os.path.join(self.tmp.name, "beta.dgcm")
        self.assertEqual(self.loader.resolve(path), (path, '{"name": "beta"}'))
        self.assertEqual(self.loader.resolve("alpha"), ("alpha.dgcm", '{"name": "alpha"}'))

    def test_environment_directory(self):
        """Test that DGCM_FIXTURE_DIR selects the directory."""
        with patch.dict('os.environ', {'DGCM_FIXTURE_DIR': self.tmp.name}):
            loader = FixtureLoader()
        self.assertEqual(loader.fixture_dir, Path(self.tmp.name))

    def test_bundled_fixtures(self):
        """Test that the bundled directory ships the documented examples."""
        with patch.dict('os.environ', {}, clear=True):
            with patch('src.dg_cohen_macaulay.cli.fixture_loader.load_environment'):
                loader = FixtureLoader()
        names = loader.list_fixtures()
        for name in ("reg-not-par", "non-cm-max-ideal", "localiz-counterexample", "zd-koszul"):
            self.assertIn(name, names)


if __name__ == '__main__':
    unittest.main()
