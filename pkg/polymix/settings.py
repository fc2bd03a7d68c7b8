"""
Take settings from environment variables and expose them as a settings object.
"""

import os
from pathlib import Path


_POLYMIX_COSET_LIMIT_KEY = "POLYMIX_COSET_LIMIT"
_POLYMIX_ORACLE_BUDGET_KEY = "POLYMIX_ORACLE_BUDGET"
_POLYMIX_UNIVERSAL_LIMIT_KEY = "POLYMIX_UNIVERSAL_LIMIT"
_POLYMIX_DEBUG_KEY = "POLYMIX_DEBUG"

DEFAULT_COSET_LIMIT = 1_000_000
DEFAULT_ORACLE_BUDGET = 10_000
DEFAULT_UNIVERSAL_LIMIT = 20_000


def _get_positive_int_envvar(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ValueError(f"{key} must be a positive integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{key} must be a positive integer, got {raw!r}")
    return value


def _get_bool_envvar(key: str) -> bool:
    return os.getenv(key, "false").strip().lower() in ("1", "true", "yes")


class Settings:
    """
    Settings object.

    Unlike a web app, nothing here is required: every variable has a default that is fine for
    desk-scale work. Values are read when the object is built rather than at class definition, so a
    test can monkeypatch the environment and construct a fresh `Settings()`.

    Library functions take an explicit `limit` / `budget` argument and only fall back to these
    values when it is None; the CLI flags override both.
    """

    def __init__(self) -> None:
        # max live cosets during enumeration, and max size of a mix closure
        self.COSET_LIMIT = _get_positive_int_envvar(_POLYMIX_COSET_LIMIT_KEY, DEFAULT_COSET_LIMIT)
        # max group order the face-poset oracle will accept
        self.ORACLE_BUDGET = _get_positive_int_envvar(_POLYMIX_ORACLE_BUDGET_KEY, DEFAULT_ORACLE_BUDGET)
        # universal rotation groups are often infinite, so their comixes get a smaller cap
        self.UNIVERSAL_LIMIT = _get_positive_int_envvar(_POLYMIX_UNIVERSAL_LIMIT_KEY, DEFAULT_UNIVERSAL_LIMIT)
        self.DEBUG = _get_bool_envvar(_POLYMIX_DEBUG_KEY)

        self.BASE_DIR = Path(__file__).parent.parent
        self.PRESENTATIONS_DIR = self.BASE_DIR / "presentations"


settings = Settings()
