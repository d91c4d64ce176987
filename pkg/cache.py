"""
On-disk cache of family tables, one JSON file per (family, alpha, nmax).
"""

import hashlib
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from pydantic import ValidationError

from families import Family, FamilyTable
from models import CacheEnvelope, FamilyTableRecord

logger = logging.getLogger(__name__)

CACHE_VERSION = 1


def encode_alpha(alpha: Optional[Fraction]) -> str:
    """'none', '1d3' for 1/3, 'm5d2' for -5/2."""
    if alpha is None:
        return "none"
    alpha = Fraction(alpha)
    text = str(abs(alpha.numerator))
    if alpha.denominator != 1:
        text += f"d{alpha.denominator}"
    return ("m" if alpha < 0 else "") + text


def _digest(record: FamilyTableRecord) -> str:
    return hashlib.sha256(f"{CACHE_VERSION}|{record.model_dump_json()}".encode()).hexdigest()


class TableCache:
    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def path_for(self, family: Family, alpha: Optional[Fraction], nmax: int) -> Path:
        return self.directory / f"{Family(family).value}_{encode_alpha(alpha)}_{nmax}.json"

    def load(self, family: Family, alpha: Optional[Fraction], nmax: int) -> Optional[FamilyTable]:
        """The cached table, or None on a miss or an unreadable file."""
        path = self.path_for(family, alpha, nmax)
        if not path.exists():
            return None
        try:
            envelope = CacheEnvelope.model_validate_json(path.read_text())
        except (OSError, ValidationError, ValueError) as e:
            logger.warning("Ignoring unreadable cache file %s: %s", path, e.__class__.__name__)
            return None
        if envelope.version != CACHE_VERSION or envelope.digest != _digest(envelope.table):
            logger.warning("Ignoring cache file %s: digest mismatch", path)
            return None
        table = FamilyTable.from_record(envelope.table)
        if table.family != Family(family) or table.alpha != alpha or table.nmax != nmax:
            logger.warning("Ignoring cache file %s: key mismatch", path)
            return None
        return table

    def store(self, table: FamilyTable) -> None:
        """Write atomically; failures only cost a recomputation later."""
        record = table.to_record()
        envelope = CacheEnvelope(version=CACHE_VERSION, digest=_digest(record), table=record)
        path = self.path_for(table.family, table.alpha, table.nmax)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as f:
                    f.write(envelope.model_dump_json())
                os.replace(tmp, path)
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise
        except OSError as e:
            logger.warning("Could not write cache file %s: %s", path, e)

    def get_or_compute(self, family: Family, alpha: Optional[Fraction], nmax: int,
                       compute: Callable[[], FamilyTable]) -> FamilyTable:
        table = self.load(family, alpha, nmax)
        if table is not None:
            logger.debug("cache hit for %s", self.path_for(family, alpha, nmax).name)
            return table
        table = compute()
        self.store(table)
        return table


def cache_roundtrip(table: FamilyTable, cache: TableCache) -> FamilyTable:
    """Store a table, then read it back through the same path."""
    cache.store(table)
    loaded = cache.load(table.family, table.alpha, table.nmax)
    return table if loaded is None else loaded
