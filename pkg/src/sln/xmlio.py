"""Bidirectional codec between SLN XML documents and the notebook model.

Serialization always emits the canonical form: utf-8 declaration, fixed
element and attribute order, 2-space indentation, LF newlines.  Serializing
equal notebooks therefore yields byte-identical documents.

Parsing is strict and streaming: a single forward pass over the byte
stream, rejecting unknown elements, unknown attributes, and any encoding
other than utf-8.  :func:`stream_stats` shares the same pass but counts
payloads instead of buffering them, so its memory use is independent of
dataset and media sizes.
"""

from __future__ import annotations

import enum
import io
import re
from dataclasses import dataclass
from xml.parsers import expat

from . import media
from .model import (
    SCHEMA_URL,
    SLN_NAMESPACE,
    Contact,
    Dataset,
    ImageRecord,
    InvalidEntry,
    MediaBlob,
    Note,
    Notebook,
    RelatedUrl,
    TodoItem,
    VideoRecord,
    WebsiteEntry,
)

XSI_NAMESPACE = "http://www.w3.org/2001/XMLSchema-instance"


class ParseErrorKind(enum.Enum):
    NOT_WELL_FORMED = "NotWellFormed"
    WRONG_ROOT_NAMESPACE = "WrongRootNamespace"
    UNKNOWN_ELEMENT = "UnknownElement"
    BAD_ATTRIBUTE = "BadAttribute"
    BAD_ENCODING = "BadEncoding"


class SlnParseError(Exception):
    """A document cannot be read as an SLN notebook.

    ``kind`` classifies the failure; ``BAD_ATTRIBUTE`` covers bad or missing
    attributes and invalid element values/cardinality alike.  ``line`` and
    ``column`` are 1-based positions into the source document.
    """

    def __init__(self, kind: ParseErrorKind, line: int, column: int, detail: str):
        super().__init__(f"{kind.value} at {line}:{column}: {detail}")
        self.kind = kind
        self.line = line
        self.column = column
        self.detail = detail


# ---------------------------------------------------------------------------
# Serialization


def _esc_text(text: str) -> str:
    # CR must go out as a character reference or parsers would fold it away.
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace("\r", "&#13;")
    )


def _esc_attr(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
        .replace("\r", "&#13;")
        .replace("\n", "&#10;")
        .replace("\t", "&#9;")
    )


class _Writer:
    def __init__(self, sink):
        self._sink = sink

    def raw(self, text: str) -> None:
        self._sink.write(text.encode("utf-8"))

    def text_element(self, indent: str, name: str, text: str, attrs: str = "") -> None:
        if text:
            self.raw(f"{indent}<{name}{attrs}>{_esc_text(text)}</{name}>\n")
        else:
            self.raw(f"{indent}<{name}{attrs}/>\n")


def _attr(name: str, value: str) -> str:
    return f' {name}="{_esc_attr(value)}"'


def serialize_notebook(nb: Notebook, sink) -> None:
    """Write ``nb`` to a binary sink in canonical form."""
    w = _Writer(sink)
    w.raw('<?xml version="1.0" encoding="utf-8"?>\n')
    root_attrs = _attr("xmlns", SLN_NAMESPACE)
    if nb.schema_location is not None:
        root_attrs += _attr("xmlns:xsi", XSI_NAMESPACE)
        root_attrs += _attr(
            "xsi:schemaLocation", f"{SLN_NAMESPACE} {nb.schema_location}"
        )
    if not nb.websites:
        w.raw(f"<sln{root_attrs}/>\n")
        return
    w.raw(f"<sln{root_attrs}>\n")
    for site in nb.websites:
        _write_website(w, site, "  ")
    w.raw("</sln>\n")


def serialize_notebook_bytes(nb: Notebook) -> bytes:
    """Canonical document bytes for ``nb``."""
    out = io.BytesIO()
    serialize_notebook(nb, out)
    return out.getvalue()


def _write_website(w: _Writer, site: WebsiteEntry, ind: str) -> None:
    sub = ind + "  "
    item = sub + "  "
    w.raw(f"{ind}<website{_attr('name', site.name)}{_attr('location', site.location)}>\n")
    w.text_element(sub, "purpose", site.purpose)
    w.text_element(sub, "date", site.date.isoformat())
    if site.related:
        w.raw(f"{sub}<related>\n")
        for rel in site.related:
            w.raw(f"{item}<reluri{_attr('value', rel.value)}>\n")
            w.text_element(item + "  ", "notes", rel.notes)
            w.raw(f"{item}</reluri>\n")
        w.raw(f"{sub}</related>\n")
    if site.contacts:
        w.raw(f"{sub}<contacts>\n")
        for con in site.contacts:
            w.raw(f"{item}<contact{_attr('name', con.name)}{_attr('surname', con.surname)}>\n")
            w.text_element(item + "  ", "email", con.email)
            w.text_element(item + "  ", "webpage", con.webpage)
            w.text_element(item + "  ", "notes", con.notes)
            w.raw(f"{item}</contact>\n")
        w.raw(f"{sub}</contacts>\n")
    if site.datasets:
        w.raw(f"{sub}<datasets>\n")
        for ds in site.datasets:
            w.raw(f"{item}<dataset{_attr('name', ds.name)}>\n")
            w.text_element(item + "  ", "notes", ds.notes)
            w.text_element(item + "  ", "content", ds.content)
            w.raw(f"{item}</dataset>\n")
        w.raw(f"{sub}</datasets>\n")
    if site.images:
        w.raw(f"{sub}<images>\n")
        for img in site.images:
            attrs = _attr("name", img.name)
            if img.related_url is not None:
                attrs += _attr("url", img.related_url)
            w.raw(f"{item}<image{attrs}>\n")
            w.text_element(item + "  ", "notes", img.notes)
            dims = _attr("width", str(img.full_width)) + _attr("height", str(img.full_height))
            w.text_element(item + "  ", "data", _uri(img.full), dims)
            dims = _attr("width", str(img.thumb_width)) + _attr("height", str(img.thumb_height))
            w.text_element(item + "  ", "thumbnail", _uri(img.thumbnail), dims)
            w.raw(f"{item}</image>\n")
        w.raw(f"{sub}</images>\n")
    if site.videos:
        w.raw(f"{sub}<videos>\n")
        for vid in site.videos:
            w.raw(f"{item}<video{_attr('name', vid.name)}>\n")
            w.text_element(item + "  ", "notes", vid.notes)
            if vid.media is not None:
                w.text_element(item + "  ", "data", _uri(vid.media))
            w.raw(f"{item}</video>\n")
        w.raw(f"{sub}</videos>\n")
    if site.todos:
        w.raw(f"{sub}<todos>\n")
        for todo in site.todos:
            attrs = ""
            if todo.due_date is not None:
                attrs += _attr("due", todo.due_date.isoformat())
            if todo.done:
                attrs += _attr("done", "true")
            w.text_element(item, "todo", todo.text, attrs)
        w.raw(f"{sub}</todos>\n")
    if site.other_notes:
        w.raw(f"{sub}<othernotes>\n")
        for note in site.other_notes:
            w.text_element(item, "note", note.text)
        w.raw(f"{sub}</othernotes>\n")
    w.raw(f"{ind}</website>\n")


def _uri(blob: MediaBlob) -> str:
    return media.encode_data_uri(blob.media_type, blob.payload)


# ---------------------------------------------------------------------------
# Parsing


def _as_reader(source):
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source)
    if hasattr(source, "read"):
        return source
    raise TypeError("source must be bytes or a binary file-like object")


_UTF_BOMS = (b"\xff\xfe", b"\xfe\xff", b"\x00\x00\xfe\xff", b"\xff\xfe\x00\x00")

_ENCODING_ERRORS = {
    expat.errors.codes[expat.errors.XML_ERROR_UNKNOWN_ENCODING],
    expat.errors.codes[expat.errors.XML_ERROR_INCORRECT_ENCODING],
}


def _run_expat(source, handler) -> None:
    """Feed ``source`` through expat, dispatching to ``handler`` methods.

    The handler gets ``start(name, attrs)``, ``end(name)`` and
    ``chars(text)`` calls, with names in "namespace localname" form, plus a
    ``pos()`` callable for current 1-based (line, column).
    """
    reader = _as_reader(source)
    parser = expat.ParserCreate(namespace_separator=" ")
    parser.buffer_text = True
    parser.buffer_size = 1 << 16

    def pos() -> tuple[int, int]:
        return parser.CurrentLineNumber, parser.CurrentColumnNumber + 1

    def xml_decl(version, encoding, standalone):
        if encoding is not None and encoding.lower() != "utf-8":
            raise SlnParseError(
                ParseErrorKind.BAD_ENCODING, *pos(), f"unsupported encoding {encoding!r}"
            )

    handler.pos = pos
    parser.XmlDeclHandler = xml_decl
    parser.StartElementHandler = handler.start
    parser.EndElementHandler = handler.end
    parser.CharacterDataHandler = handler.chars

    first = True
    try:
        while True:
            chunk = reader.read(1 << 20)
            if first:
                if chunk.startswith(_UTF_BOMS[2]) or chunk.startswith(_UTF_BOMS[3]) or (
                    chunk[:2] in (_UTF_BOMS[0], _UTF_BOMS[1])
                ):
                    raise SlnParseError(
                        ParseErrorKind.BAD_ENCODING, 1, 1, "non-utf-8 byte order mark"
                    )
                first = False
            if not chunk:
                parser.Parse(b"", True)
                break
            parser.Parse(chunk, False)
    except expat.ExpatError as exc:
        kind = (
            ParseErrorKind.BAD_ENCODING
            if exc.code in _ENCODING_ERRORS
            else ParseErrorKind.NOT_WELL_FORMED
        )
        raise SlnParseError(
            kind, exc.lineno, exc.offset + 1, expat.errors.messages[exc.code]
        )


def _split_name(name: str) -> tuple[str, str]:
    ns, sep, local = name.rpartition(" ")
    return (ns, local) if sep else ("", name)


_ROOT = f"{SLN_NAMESPACE} sln"
_SCHEMA_LOCATION_ATTR = f"{XSI_NAMESPACE} schemaLocation"

# parent element -> allowed children (local names within the SLN namespace)
_CHILDREN = {
    "sln": {"website"},
    "website": {
        "purpose", "date", "related", "contacts", "datasets",
        "images", "videos", "todos", "othernotes",
    },
    "related": {"reluri"},
    "reluri": {"notes"},
    "contacts": {"contact"},
    "contact": {"email", "webpage", "notes"},
    "datasets": {"dataset"},
    "dataset": {"notes", "content"},
    "images": {"image"},
    "image": {"notes", "data", "thumbnail"},
    "videos": {"video"},
    "video": {"notes", "data"},
    "todos": {"todo"},
    "othernotes": {"note"},
}

_TEXT_BEARING = {
    "purpose", "date", "notes", "email", "webpage", "content",
    "data", "thumbnail", "todo", "note",
}

_REQUIRED_ATTRS = {
    "website": ("name", "location"),
    "reluri": ("value",),
    "contact": ("name", "surname"),
    "dataset": ("name",),
    "image": ("name",),
    "video": ("name",),
}

_OPTIONAL_ATTRS = {
    "image": ("url",),
    "todo": ("due", "done"),
}


class _Frame:
    __slots__ = ("local", "attrs", "text", "fields", "seen")

    def __init__(self, local: str, attrs: dict):
        self.local = local
        self.attrs = attrs
        self.text: list[str] = []
        self.fields: dict = {}
        self.seen: set[str] = set()


class _ModelBuilder:
    """Strict single-pass builder from expat events to a Notebook."""

    def __init__(self):
        self.stack: list[_Frame] = []
        self.notebook: Notebook | None = None
        self.pos = lambda: (0, 0)

    def _fail(self, kind: ParseErrorKind, detail: str):
        raise SlnParseError(kind, *self.pos(), detail)

    def start(self, name: str, attrs: dict) -> None:
        ns, local = _split_name(name)
        if not self.stack:
            if name != _ROOT:
                self._fail(
                    ParseErrorKind.WRONG_ROOT_NAMESPACE,
                    f"expected root 'sln' in namespace {SLN_NAMESPACE}, got "
                    f"{local!r} in namespace {ns or '(none)'!r}",
                )
            frame = _Frame("sln", {})
            frame.fields["websites"] = []
            frame.fields["schema_location"] = self._root_schema_location(attrs)
            self.stack.append(frame)
            return
        parent = self.stack[-1]
        if ns != SLN_NAMESPACE:
            self._fail(
                ParseErrorKind.UNKNOWN_ELEMENT,
                f"element {local!r} is not namespace-qualified as {SLN_NAMESPACE}",
            )
        if local not in _CHILDREN.get(parent.local, set()):
            self._fail(
                ParseErrorKind.UNKNOWN_ELEMENT,
                f"element <{local}> not allowed inside <{parent.local}>",
            )
        # Single-occurrence children: everything except the repeatable items.
        if local in _TEXT_BEARING or local in _CHILDREN:
            if parent.local != "sln" and local in parent.seen and not _repeatable(
                parent.local, local
            ):
                self._fail(
                    ParseErrorKind.BAD_ATTRIBUTE,
                    f"duplicate element <{local}> inside <{parent.local}>",
                )
            parent.seen.add(local)
        self.stack.append(_Frame(local, self._check_attrs(local, attrs)))

    def _root_schema_location(self, attrs: dict) -> str | None:
        location = None
        for key, value in attrs.items():
            if key == _SCHEMA_LOCATION_ATTR:
                tokens = value.split()
                for i in range(0, len(tokens) - 1, 2):
                    if tokens[i] == SLN_NAMESPACE:
                        location = tokens[i + 1]
            else:
                self._fail(
                    ParseErrorKind.BAD_ATTRIBUTE, f"unexpected attribute {key!r} on root"
                )
        return location

    def _check_attrs(self, local: str, attrs: dict) -> dict:
        required = _REQUIRED_ATTRS.get(local, ())
        optional = _OPTIONAL_ATTRS.get(local, ())
        if local in ("data", "thumbnail") and self.stack[-1].local == "image":
            required = ("width", "height")
        for key in attrs:
            if key not in required and key not in optional:
                self._fail(
                    ParseErrorKind.BAD_ATTRIBUTE,
                    f"unexpected attribute {key!r} on <{local}>",
                )
        for key in required:
            if key not in attrs:
                self._fail(
                    ParseErrorKind.BAD_ATTRIBUTE,
                    f"<{local}> is missing required attribute {key!r}",
                )
        return attrs

    def chars(self, text: str) -> None:
        if not self.stack:
            return
        frame = self.stack[-1]
        if frame.local in _TEXT_BEARING:
            frame.text.append(text)
        elif text.strip():
            self._fail(
                ParseErrorKind.BAD_ATTRIBUTE,
                f"unexpected text content inside <{frame.local}>",
            )

    def end(self, name: str) -> None:
        frame = self.stack.pop()
        parent = self.stack[-1] if self.stack else None
        text = "".join(frame.text)
        try:
            self._finish(frame, parent, text)
        except InvalidEntry as exc:
            self._fail(ParseErrorKind.BAD_ATTRIBUTE, str(exc))
        except media.MalformedDataUri as exc:
            self._fail(ParseErrorKind.BAD_ATTRIBUTE, f"bad data URI: {exc}")

    def _finish(self, frame: _Frame, parent: _Frame | None, text: str) -> None:
        local = frame.local
        fields = frame.fields
        if local == "sln":
            self.notebook = Notebook(
                tuple(fields["websites"]), fields["schema_location"]
            )
        elif local == "website":
            if "purpose" not in frame.seen or "date" not in frame.seen:
                missing = {"purpose", "date"} - frame.seen
                self._fail(
                    ParseErrorKind.BAD_ATTRIBUTE,
                    f"<website> is missing required {sorted(missing)}",
                )
            entry = WebsiteEntry(
                name=frame.attrs["name"],
                location=frame.attrs["location"],
                date=fields["date"],
                purpose=fields["purpose"],
                related=fields.get("related", ()),
                contacts=fields.get("contacts", ()),
                datasets=fields.get("datasets", ()),
                images=fields.get("images", ()),
                videos=fields.get("videos", ()),
                todos=fields.get("todos", ()),
                other_notes=fields.get("othernotes", ()),
            )
            parent.fields["websites"].append(entry)
        elif local in ("purpose", "date", "notes", "email", "webpage", "content"):
            parent.fields[local] = text
        elif local in ("related", "contacts", "datasets", "images", "videos", "todos", "othernotes"):
            parent.fields[local] = tuple(fields.get("items", ()))
        elif local == "reluri":
            self._require(frame, ("notes",))
            item = RelatedUrl(frame.attrs["value"], fields["notes"])
            parent.fields.setdefault("items", []).append(item)
        elif local == "contact":
            self._require(frame, ("email", "webpage", "notes"))
            item = Contact(
                frame.attrs["name"], frame.attrs["surname"],
                fields["email"], fields["webpage"], fields["notes"],
            )
            parent.fields.setdefault("items", []).append(item)
        elif local == "dataset":
            self._require(frame, ("notes", "content"))
            item = Dataset(frame.attrs["name"], fields["notes"], fields["content"])
            parent.fields.setdefault("items", []).append(item)
        elif local in ("data", "thumbnail") and parent.local == "image":
            media_type, payload = media.decode_data_uri(text)
            parent.fields[local] = (
                MediaBlob(media_type, payload),
                _int_attr(frame, "width"),
                _int_attr(frame, "height"),
            )
        elif local == "image":
            self._require(frame, ("notes", "data", "thumbnail"))
            blob, width, height = fields["data"]
            thumb, t_width, t_height = fields["thumbnail"]
            item = ImageRecord(
                name=frame.attrs["name"],
                full=blob,
                thumbnail=thumb,
                full_width=width,
                full_height=height,
                thumb_width=t_width,
                thumb_height=t_height,
                notes=fields["notes"],
                related_url=frame.attrs.get("url"),
            )
            parent.fields.setdefault("items", []).append(item)
        elif local == "data":  # video payload
            media_type, payload = media.decode_data_uri(text)
            parent.fields["data"] = MediaBlob(media_type, payload)
        elif local == "video":
            self._require(frame, ("notes",))
            item = VideoRecord(frame.attrs["name"], fields["notes"], fields.get("data"))
            parent.fields.setdefault("items", []).append(item)
        elif local == "todo":
            done = frame.attrs.get("done", "false")
            if done not in ("true", "false"):
                self._fail(
                    ParseErrorKind.BAD_ATTRIBUTE, f"todo done must be true/false, got {done!r}"
                )
            item = TodoItem(text, frame.attrs.get("due"), done == "true")
            parent.fields.setdefault("items", []).append(item)
        elif local == "note":
            parent.fields.setdefault("items", []).append(Note(text))

    def _require(self, frame: _Frame, names: tuple[str, ...]) -> None:
        missing = [n for n in names if n not in frame.seen]
        if missing:
            self._fail(
                ParseErrorKind.BAD_ATTRIBUTE,
                f"<{frame.local}> is missing required {missing}",
            )


def _repeatable(parent_local: str, local: str) -> bool:
    return (parent_local, local) in {
        ("related", "reluri"), ("contacts", "contact"), ("datasets", "dataset"),
        ("images", "image"), ("videos", "video"), ("todos", "todo"),
        ("othernotes", "note"),
    }


def _int_attr(frame: _Frame, key: str) -> int:
    value = frame.attrs[key]
    if not re.fullmatch(r"[0-9]+", value):
        raise InvalidEntry(
            f"attribute {key!r} must be a nonnegative integer, got {value!r}"
        )
    return int(value)


def parse_notebook(source) -> Notebook:
    """Parse an SLN document from bytes or a binary stream.

    Raises :class:`SlnParseError` on malformed XML, foreign root namespace,
    unknown content, bad values, or non-utf-8 encodings.
    """
    builder = _ModelBuilder()
    _run_expat(source, builder)
    if builder.notebook is None:
        raise SlnParseError(ParseErrorKind.NOT_WELL_FORMED, 1, 1, "empty document")
    return builder.notebook


# ---------------------------------------------------------------------------
# Streaming statistics


@dataclass(frozen=True)
class StreamStats:
    """Counts computed in one pass without buffering payloads."""

    website_count: int = 0
    dataset_bytes: int = 0
    image_count: int = 0
    total_media_bytes: int = 0


class _Base64Meter:
    """Counts the decoded size of a data URI fed to it in text chunks."""

    __slots__ = ("header", "chars", "pads")

    def __init__(self):
        self.header: list[str] | None = []
        self.chars = 0
        self.pads = 0

    def feed(self, text: str) -> None:
        if self.header is not None:
            self.header.append(text)
            joined = "".join(self.header)
            comma = joined.find(",")
            if comma < 0:
                if len(joined) > 8192:
                    self.header = [joined[-8:]]
                return
            self.header = None
            text = joined[comma + 1 :]
        self.chars += len(text)
        self.pads += text.count("=")

    def decoded_bytes(self) -> int:
        if self.header is not None or self.chars % 4:
            return 0
        return (self.chars // 4) * 3 - self.pads


class _StatsCollector:
    def __init__(self):
        self.stack: list[str] = []
        self.website_count = 0
        self.dataset_bytes = 0
        self.image_count = 0
        self.total_media_bytes = 0
        self._meter: _Base64Meter | None = None
        self._in_content = False
        self.pos = lambda: (0, 0)

    def start(self, name: str, attrs: dict) -> None:
        ns, local = _split_name(name)
        if not self.stack:
            if name != _ROOT:
                raise SlnParseError(
                    ParseErrorKind.WRONG_ROOT_NAMESPACE, *self.pos(),
                    f"expected root 'sln' in namespace {SLN_NAMESPACE}",
                )
            self.stack.append("sln")
            return
        parent = self.stack[-1]
        if ns == SLN_NAMESPACE:
            if local == "website":
                self.website_count += 1
            elif local == "image":
                self.image_count += 1
            elif local == "content" and parent == "dataset":
                self._in_content = True
            elif local == "data" and parent in ("image", "video"):
                self._meter = _Base64Meter()
            elif local == "thumbnail" and parent == "image":
                self._meter = _Base64Meter()
        self.stack.append(local)

    def chars(self, text: str) -> None:
        if self._meter is not None:
            self._meter.feed(text)
        elif self._in_content:
            self.dataset_bytes += len(text.encode("utf-8"))

    def end(self, name: str) -> None:
        self.stack.pop()
        if self._meter is not None:
            self.total_media_bytes += self._meter.decoded_bytes()
            self._meter = None
        self._in_content = False


def stream_stats(source) -> StreamStats:
    """Count websites, dataset bytes and media bytes in a single pass."""
    collector = _StatsCollector()
    _run_expat(source, collector)
    return StreamStats(
        website_count=collector.website_count,
        dataset_bytes=collector.dataset_bytes,
        image_count=collector.image_count,
        total_media_bytes=collector.total_media_bytes,
    )
