"""
Utility functions for the DG Cohen-Macaulay analyzer.
"""
import os
import re
from typing import Any, Iterable, List, Optional

from dotenv import load_dotenv

_ENV_LOADED = False


def load_environment() -> None:
    """Load variables from a ``.env`` file once per process."""
    global _ENV_LOADED
    if not _ENV_LOADED:
        load_dotenv()
        _ENV_LOADED = True


def get_env_var(name: str, default: Optional[str] = None) -> Optional[str]:
    """
    Get an environment variable, with an optional default value.

    Args:
        name: The name of the environment variable.
        default: The default value to return if the environment variable is not set.

    Returns:
        The value of the environment variable, or the default value if not set.
    """
    return os.environ.get(name, default)


def get_env_int(name: str, default: int) -> int:
    """
    Get an integer environment variable.

    Args:
        name: The name of the environment variable.
        default: Value used when the variable is unset or empty.

    Returns:
        The parsed integer.

    Raises:
        ValueError: If the variable is set but not an integer.
    """
    raw = get_env_var(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got {raw!r}")


def split_generator_list(text: str) -> List[str]:
    """
    Split a comma-separated list of polynomials as given on the command line.

    Args:
        text: e.g. ``"x, y^2 - z"``.

    Returns:
        The stripped, non-empty polynomial strings.
    """
    return [part.strip() for part in text.split(",") if part.strip()]


def format_degree_set(degrees: Iterable[int]) -> str:
    """
    Format a set of cohomological degrees as ``{-1, 0, 2}``.

    Args:
        degrees: The degrees to format.

    Returns:
        The formatted set, sorted ascending.
    """
    return "{" + ", ".join(str(d) for d in sorted(degrees)) + "}"


def format_invariant(value: Any) -> str:
    """
    Format an invariant, printing the minus-infinity sentinel as ``-inf``.

    Args:
        value: An integer, the float sentinel, or None.

    Returns:
        The printable form.
    """
    if value is None:
        return "n/a"
    if isinstance(value, float) and value == float("-inf"):
        return "-inf"
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    return str(value)


def truncate_text(text: str, max_length: int = 100) -> str:
    """
    Truncate text to a specified length, adding ellipsis if needed.

    Args:
        text: The text to truncate.
        max_length: The maximum length of the truncated text.

    Returns:
        The truncated text.
    """
    if not text:
        return ""

    if len(text) <= max_length:
        return text

    return text[:max_length - 3] + '...'


def slugify_fixture_name(name: str) -> str:
    """
    Normalize a fixture name or file name to its bare slug.

    Args:
        name: e.g. ``"Reg-Not-Par.dgcm"``.

    Returns:
        The slug, e.g. ``"reg-not-par"``.
    """
    base = os.path.basename(name)
    if base.endswith(".dgcm"):
        base = base[:-len(".dgcm")]
    return re.sub(r'[^a-z0-9\-]', '-', base.lower()).strip('-')
