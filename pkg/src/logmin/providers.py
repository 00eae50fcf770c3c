"""Provider resolution through a local longest-prefix table.

The table file is a UTF-8 CSV with header ``prefix,provider`` and one
digit-string prefix per row. Resolution strips a leading ``+`` and, for
international numbers, the 1-3 country-code digits in front of the
national number, then picks the provider of the longest prefix that
matches. Numbers written without ``+`` are matched as-is.

The resolver is deliberately a plain callable contract: anything with the
same ``resolve(number) -> provider`` shape (say, a networked lookup) can
replace a PrefixTable without the mining code noticing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .errors import BadPrefixTable
from .ingest import SELF_NUMBER

UNKNOWN_PROVIDER = "UNKNOWN"

# E.164 country codes are 1-3 digits long.
_COUNTRY_CODE_LENGTHS = (0, 1, 2, 3)


@dataclass(frozen=True)
class PrefixTable:
    """Immutable prefix -> provider mapping."""

    prefixes: dict[str, str]

    def __len__(self) -> int:
        return len(self.prefixes)

    def resolve(self, number: str) -> str:
        return resolve_provider(number, self)


def empty_table() -> PrefixTable:
    """A table that resolves every number to UNKNOWN."""
    return PrefixTable({})


def load_prefix_table(path: str) -> PrefixTable:
    """Load and validate a prefix table CSV."""
    prefixes: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != ("prefix", "provider"):
            raise BadPrefixTable(f"{path}: expected header 'prefix,provider'")
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise BadPrefixTable(f"{path}: line {line}: expected 2 fields, got {len(row)}")
            prefix, provider = row[0].strip(), row[1].strip()
            if not (prefix.isascii() and prefix.isdigit()):
                raise BadPrefixTable(f"{path}: line {line}: prefix {prefix!r} is not a digit string")
            if not provider:
                raise BadPrefixTable(f"{path}: line {line}: empty provider name")
            if prefix in prefixes:
                raise BadPrefixTable(f"{path}: line {line}: duplicate prefix {prefix!r}")
            prefixes[prefix] = provider
    return PrefixTable(prefixes)


def resolve_provider(number: str, table: PrefixTable, *, self_provider: str = UNKNOWN_PROVIDER) -> str:
    """Longest-prefix provider lookup for one number.

    ``SELF`` resolves to `self_provider` (the device's own, configured
    provider). A ``+``-prefixed number is tried both as written and with
    1-3 leading country-code digits removed; the longest matching table
    prefix wins, ties going to the fewest digits stripped. No match yields
    UNKNOWN.
    """
    if number == SELF_NUMBER:
        return self_provider

    digits = number[1:] if number.startswith("+") else number
    if not (digits.isascii() and digits.isdigit()):
        return UNKNOWN_PROVIDER

    offsets = _COUNTRY_CODE_LENGTHS if number.startswith("+") else (0,)
    best: tuple[int, int] | None = None  # (prefix length, -offset)
    best_provider = UNKNOWN_PROVIDER
    for offset in offsets:
        national = digits[offset:]
        for length in range(len(national), 0, -1):
            provider = table.prefixes.get(national[:length])
            if provider is not None:
                rank = (length, -offset)
                if best is None or rank > best:
                    best = rank
                    best_provider = provider
                break
    return best_provider
