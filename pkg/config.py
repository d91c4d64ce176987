"""
Runtime configuration: environment overrides, logging setup and the default
truncation/tolerance table of the numeric identity checks.
"""

import logging
import os
from pathlib import Path
from typing import Dict, Optional, Tuple

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

# Load environment variables
load_dotenv()

DEFAULT_CACHE_DIR = ".polyzeta-cache"
CACHE_DIR_ENV = "POLYZETA_CACHE_DIR"

# pi to 40 significant digits
PI_DIGITS = "3.141592653589793238462643383279502884197"

MZV_CHUNK = int(os.getenv("POLYZETA_MZV_CHUNK", "65536"))

# identity -> l -> (N, tolerance); the l=1 row is the fallback for other l
IDENTITY_DEFAULTS: Dict[str, Dict[int, Tuple[int, float]]] = {
    "id1": {1: (10**6, 1e-4), 2: (10**7, 5e-3)},
    "id1a": {1: (10**6, 1e-6), 2: (10**6, 1e-6)},
    "eighth": {1: (10**6, 1e-5), 2: (10**7, 1e-4)},
    "lemma2": {1: (5000, 1e-2), 2: (5000, 1e-2)},
}

# product truncation used on the other side of the lemma2 comparison
LEMMA2_PRODUCT_TERMS = 2000


def identity_defaults(identity: str, l: int) -> Tuple[int, float]:
    table = IDENTITY_DEFAULTS[identity]
    return table.get(l, table[1])


def cache_dir(override: Optional[str] = None) -> Path:
    """Resolve the cache directory: flag, then environment, then default."""
    if override:
        return Path(override)
    return Path(os.getenv(CACHE_DIR_ENV, DEFAULT_CACHE_DIR))


def setup_logging(level: Optional[str] = None) -> None:
    level_name = (level or os.getenv("POLYZETA_LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )
