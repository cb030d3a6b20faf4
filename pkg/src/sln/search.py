"""Instant search over website entries and per-tab row filtering.

Matching is plain case-insensitive substring search (Unicode case folding),
cheap enough to re-run on every keystroke.  The main index covers the
fields that identify a gateway entry: name, location, purpose.  Tab tables
filter their own rows with the same semantics via :func:`filter_rows`.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .model import Notebook

# Priority order: a hit reports the first of these fields that matches.
_FIELDS = ("name", "location", "purpose")


@dataclass(frozen=True)
class Hit:
    """One matching entry: its index in the notebook, the field that
    matched first, and the match offset into the case-folded field text."""

    entry: int
    field: str
    offset: int


@dataclass(frozen=True)
class QueryResult:
    hits: tuple[Hit, ...] = ()

    def entry_ids(self) -> tuple[int, ...]:
        return tuple(hit.entry for hit in self.hits)


class SearchIndex:
    """Case-folded copies of each entry's searchable fields.

    The index is a snapshot of one (immutable) notebook; build a new index
    after mutating.  Reads may be shared freely across threads.
    """

    def __init__(self, rows: list[tuple[str, str, str]]):
        self._rows = rows

    def __len__(self) -> int:
        return len(self._rows)

    def query(self, text: str) -> QueryResult:
        needle = text.casefold()
        hits = []
        for entry_id, row in enumerate(self._rows):
            for field_name, folded in zip(_FIELDS, row):
                offset = folded.find(needle)
                if offset >= 0:
                    hits.append(Hit(entry_id, field_name, offset))
                    break
        return QueryResult(tuple(hits))


def build_index(nb: Notebook) -> SearchIndex:
    """Index every entry by substrings of its name, location and purpose."""
    return SearchIndex(
        [
            (site.name.casefold(), site.location.casefold(), site.purpose.casefold())
            for site in nb.websites
        ]
    )


def query(index: SearchIndex, text: str) -> QueryResult:
    """All entries whose name, location or purpose contains ``text``.

    The empty query matches everything.  Results come in document order;
    per entry the matched field is the first of name > location > purpose.
    """
    return index.query(text)


def filter_rows(rows, keyword: str) -> list:
    """Keep the rows any of whose text fields contains ``keyword``.

    Rows may be mappings (their values are searched) or sequences of
    strings.  Order is preserved; the empty keyword keeps every row.
    """
    needle = keyword.casefold()
    kept = []
    for row in rows:
        if isinstance(row, Mapping):
            fields = row.values()
        elif isinstance(row, str):
            fields = (row,)
        elif isinstance(row, Sequence):
            fields = row
        else:
            raise TypeError(f"row must be a mapping or sequence, got {type(row).__name__}")
        if any(needle in str(value).casefold() for value in fields):
            kept.append(row)
    return kept
