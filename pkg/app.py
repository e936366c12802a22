"""
Main entry point for the DG Cohen-Macaulay analyzer.
"""
import logging
import sys

from src.dg_cohen_macaulay.cli.app import main as cli_main
from src.dg_cohen_macaulay.utils import get_env_var, load_environment


def main():
    """Main entry point for the application."""
    load_environment()
    level = get_env_var("DGCM_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
