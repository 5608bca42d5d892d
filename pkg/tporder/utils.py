"""
Utilities for tporder
"""

import os

OKGREEN = "\033[92m"
FAIL = "\033[91m"
ENDC = "\033[0m"
BOLD = "\033[1m"


def bold(to_bold: str) -> str:
    """
    Returns the input bolded
    """
    return BOLD + to_bold + ENDC


def green(to_green: str) -> str:
    """
    Returns the input green
    """
    return OKGREEN + to_green + ENDC


def red(to_red: str) -> str:
    """
    Returns the input red
    """
    return FAIL + to_red + ENDC


def _int_env(name: str, default: int) -> int:
    try:
        v = os.getenv(name)
        return int(v) if v is not None and str(v).strip() != "" else default
    except Exception:
        return default


def worker_count(requested: int | None, cap: int = 0) -> int:
    """
    Resolves how many worker processes to use: explicit request, then
    TPORDER_WORKERS, then 1. A positive cap (or the cpu count) bounds it.
    """
    n = requested if requested is not None else _int_env("TPORDER_WORKERS", 1)
    limit = cap if cap > 0 else (os.cpu_count() or 1)
    return max(1, min(n, limit))
