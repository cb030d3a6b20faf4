"""Domain model for SLN notebook documents.

An SLN file is a container of "website" entries: one entry per solar data
gateway, carrying the notes, contacts, datasets and media a scientist has
recorded for it.  The types here are the in-memory form of that container,
independent of the XML wire format (see :mod:`sln.xmlio`).

All values are immutable after construction.  Constructors normalize their
inputs (sequences become tuples, ISO date strings become ``datetime.date``)
and raise :class:`InvalidEntry` on any invariant violation, so a value that
exists is a valid value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date

SLN_NAMESPACE = "http://umbra.nascom.nasa.gov/"
SCHEMA_URL = "http://umbra.nascom.nasa.gov/sln/schema/sln.xsd"

# Hard bound enforced by the image editor contract.
MAX_IMAGE_DIM = 2048


class InvalidEntry(ValueError):
    """A notebook value violates a model invariant."""


_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}\Z")
_MIME_RE = re.compile(
    r"[-!#$%&'*+.^_`|~0-9A-Za-z]+/[-!#$%&'*+.^_`|~0-9A-Za-z]+\Z"
)
# Characters that XML 1.0 cannot carry, not even as character references:
# C0 controls other than tab/LF/CR, surrogate code points, U+FFFE/U+FFFF.
_UNSTORABLE_RE = re.compile(r"[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff￾￿]")


def _check_text(value: str, what: str, required: bool = False) -> str:
    if not isinstance(value, str):
        raise InvalidEntry(f"{what} must be a string, got {type(value).__name__}")
    if required and not value:
        raise InvalidEntry(f"{what} must not be empty")
    match = _UNSTORABLE_RE.search(value)
    if match:
        raise InvalidEntry(
            f"{what} contains U+{ord(match.group()):04X}, which XML cannot store"
        )
    return value


def _check_date(value: date | str, what: str) -> date:
    if isinstance(value, date):
        return value
    if isinstance(value, str):
        if not _DATE_RE.fullmatch(value):
            raise InvalidEntry(f"{what} must have the form YYYY-MM-DD, got {value!r}")
        year, month, day = value.split("-")
        try:
            return date(int(year), int(month), int(day))
        except ValueError as exc:
            raise InvalidEntry(f"{what} is not a real calendar date: {value!r} ({exc})")
    raise InvalidEntry(f"{what} must be a date or YYYY-MM-DD string")


def _check_items(values, item_type, what: str) -> tuple:
    items = tuple(values)
    for item in items:
        if not isinstance(item, item_type):
            raise InvalidEntry(
                f"{what} items must be {item_type.__name__}, got {type(item).__name__}"
            )
    return items


def _set(obj, name: str, value) -> None:
    # Frozen dataclasses normalize fields through object.__setattr__.
    object.__setattr__(obj, name, value)


@dataclass(frozen=True)
class MediaBlob:
    """Embedded media: a MIME type plus the decoded payload bytes.

    On the wire this becomes an RFC 2397 data URI (see :mod:`sln.media`).
    """

    media_type: str
    payload: bytes = b""

    def __post_init__(self):
        if not _MIME_RE.fullmatch(self.media_type):
            raise InvalidEntry(f"malformed media type: {self.media_type!r}")
        if not isinstance(self.payload, bytes):
            raise InvalidEntry("payload must be bytes")

    @property
    def encoded_length(self) -> int:
        """Length of the Base64 text this payload serializes to."""
        return 4 * ((len(self.payload) + 2) // 3)


@dataclass(frozen=True)
class RelatedUrl:
    """A URL related to the active website entry, with free-form notes."""

    value: str
    notes: str = ""

    def __post_init__(self):
        _check_text(self.value, "related URL value", required=True)
        _check_text(self.notes, "related URL notes")


@dataclass(frozen=True)
class Contact:
    """A person associated with the entry; name and surname are mandatory."""

    name: str
    surname: str
    email: str = ""
    webpage: str = ""
    notes: str = ""

    def __post_init__(self):
        _check_text(self.name, "contact name", required=True)
        _check_text(self.surname, "contact surname", required=True)
        _check_text(self.email, "contact email")
        _check_text(self.webpage, "contact webpage")
        _check_text(self.notes, "contact notes")


@dataclass(frozen=True)
class Dataset:
    """Raw text-form data of unbounded length stored inline in the file."""

    name: str
    notes: str = ""
    content: str = ""

    def __post_init__(self):
        _check_text(self.name, "dataset name", required=True)
        _check_text(self.notes, "dataset notes")
        _check_text(self.content, "dataset content")


@dataclass(frozen=True)
class ImageRecord:
    """A stored image: the full raster plus its pre-computed thumbnail.

    Dimensions are carried explicitly so readers can lay out tables and
    validate bounds without decoding the payloads.
    """

    name: str
    full: MediaBlob
    thumbnail: MediaBlob
    full_width: int
    full_height: int
    thumb_width: int
    thumb_height: int
    notes: str = ""
    related_url: str | None = None

    def __post_init__(self):
        _check_text(self.name, "image name", required=True)
        _check_text(self.notes, "image notes")
        if self.related_url is not None:
            _check_text(self.related_url, "image related URL", required=True)
        if not isinstance(self.full, MediaBlob) or not isinstance(self.thumbnail, MediaBlob):
            raise InvalidEntry("image full/thumbnail must be MediaBlob values")
        for label, value in (
            ("full_width", self.full_width),
            ("full_height", self.full_height),
            ("thumb_width", self.thumb_width),
            ("thumb_height", self.thumb_height),
        ):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidEntry(f"image {label} must be a positive integer")
        if self.full_width > MAX_IMAGE_DIM or self.full_height > MAX_IMAGE_DIM:
            raise InvalidEntry(
                f"full image exceeds {MAX_IMAGE_DIM}x{MAX_IMAGE_DIM}: "
                f"{self.full_width}x{self.full_height}"
            )
        if self.thumb_width > self.full_width or self.thumb_height > self.full_height:
            raise InvalidEntry("thumbnail dimensions exceed the full image")


@dataclass(frozen=True)
class VideoRecord:
    """Placeholder for stored video media; no decode semantics yet."""

    name: str
    notes: str = ""
    media: MediaBlob | None = None

    def __post_init__(self):
        _check_text(self.name, "video name", required=True)
        _check_text(self.notes, "video notes")
        if self.media is not None and not isinstance(self.media, MediaBlob):
            raise InvalidEntry("video media must be a MediaBlob or None")


@dataclass(frozen=True)
class TodoItem:
    """A reminder note, optionally dated, with a done flag."""

    text: str
    due_date: date | str | None = None
    done: bool = False

    def __post_init__(self):
        _check_text(self.text, "todo text", required=True)
        if self.due_date is not None:
            _set(self, "due_date", _check_date(self.due_date, "todo due date"))
        if not isinstance(self.done, bool):
            raise InvalidEntry("todo done flag must be a bool")


@dataclass(frozen=True)
class Note:
    """Free-form text that fits no other tab."""

    text: str = ""

    def __post_init__(self):
        _check_text(self.text, "note text")


@dataclass(frozen=True)
class WebsiteEntry:
    """One gateway group: the central entity an SLN file is organized around.

    Collections keep their insertion order; document order is meaningful
    (readers activate the first entry on load).
    """

    name: str
    location: str
    date: date | str
    purpose: str = ""
    related: tuple[RelatedUrl, ...] = ()
    contacts: tuple[Contact, ...] = ()
    datasets: tuple[Dataset, ...] = ()
    images: tuple[ImageRecord, ...] = ()
    videos: tuple[VideoRecord, ...] = ()
    todos: tuple[TodoItem, ...] = ()
    other_notes: tuple[Note, ...] = ()

    def __post_init__(self):
        _check_text(self.name, "website name", required=True)
        _check_text(self.location, "website location")
        _check_text(self.purpose, "website purpose")
        _set(self, "date", _check_date(self.date, "website date"))
        _set(self, "related", _check_items(self.related, RelatedUrl, "related"))
        _set(self, "contacts", _check_items(self.contacts, Contact, "contacts"))
        _set(self, "datasets", _check_items(self.datasets, Dataset, "datasets"))
        _set(self, "images", _check_items(self.images, ImageRecord, "images"))
        _set(self, "videos", _check_items(self.videos, VideoRecord, "videos"))
        _set(self, "todos", _check_items(self.todos, TodoItem, "todos"))
        _set(self, "other_notes", _check_items(self.other_notes, Note, "other notes"))


@dataclass(frozen=True)
class Notebook:
    """Root container: an ordered run of website entries.

    Zero entries is a legal state (a freshly created file).  ``schema_location``
    is the URI of the governing schema document; ``None`` suppresses the
    location hint on serialization.
    """

    websites: tuple[WebsiteEntry, ...] = ()
    schema_location: str | None = SCHEMA_URL

    def __post_init__(self):
        _set(self, "websites", _check_items(self.websites, WebsiteEntry, "websites"))
        if self.schema_location is not None:
            _check_text(self.schema_location, "schema location", required=True)


def new_notebook() -> Notebook:
    """Return an empty notebook, as produced by the "New" action."""
    return Notebook()


def add_website(nb: Notebook, entry: WebsiteEntry) -> Notebook:
    """Return a copy of ``nb`` with ``entry`` appended after the last entry."""
    if not isinstance(nb, Notebook):
        raise InvalidEntry("add_website expects a Notebook")
    if not isinstance(entry, WebsiteEntry):
        raise InvalidEntry("add_website expects a WebsiteEntry")
    return Notebook(nb.websites + (entry,), nb.schema_location)
