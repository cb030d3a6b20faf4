"""Validation of SLN documents against the notebook schema rules.

This is a hand-coded rule engine for the one fixed SLN content model, not a
general XSD processor.  Element sequence order matters; attributes are
checked for presence and type but not order.  Every violated rule yields a
finding addressed by a document path; validation never stops at the first
problem.

The engine streams: it rides the same expat pass as :mod:`sln.xmlio`, so
arbitrarily large datasets and media payloads are checked without being
buffered.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field

from .model import Notebook, SLN_NAMESPACE
from .xmlio import (
    ParseErrorKind,
    SlnParseError,
    XSI_NAMESPACE,
    _run_expat,
    _split_name,
    serialize_notebook_bytes,
)


class SchemaConstruct(enum.Enum):
    SEQUENCE_ORDER = "SequenceOrder"
    REQUIRED_ATTRIBUTE = "RequiredAttribute"
    OCCURRENCE = "Occurrence"
    SIMPLE_TYPE_LEXICAL = "SimpleTypeLexical"
    NAMESPACE_QUALIFIED = "NamespaceQualified"
    UNKNOWN_CONTENT = "UnknownContent"


class Severity(enum.Enum):
    ERROR = "Error"
    WARNING = "Warning"


class UnknownRule(KeyError):
    """The rule id is not in the catalogue."""


@dataclass(frozen=True)
class Rule:
    """One validation rule with a stable id."""

    id: str
    description: str
    schema_construct: SchemaConstruct


_RULES = (
    Rule("SLN-NS-001", "The root element must be 'sln' in the namespace "
         f"{SLN_NAMESPACE}.", SchemaConstruct.NAMESPACE_QUALIFIED),
    Rule("SLN-NS-002", "Every element must be namespace-qualified in the target "
         "namespace; unqualified or foreign-namespace children are rejected.",
         SchemaConstruct.NAMESPACE_QUALIFIED),
    Rule("SLN-SEQ-001", "Children of <website> must appear in the fixed order: "
         "purpose, date, related, contacts, datasets, images, videos, todos, "
         "othernotes.", SchemaConstruct.SEQUENCE_ORDER),
    Rule("SLN-SEQ-002", "Children of <contact> must appear in the fixed order: "
         "email, webpage, notes.", SchemaConstruct.SEQUENCE_ORDER),
    Rule("SLN-SEQ-003", "Children of <dataset> must appear in the fixed order: "
         "notes, content.", SchemaConstruct.SEQUENCE_ORDER),
    Rule("SLN-SEQ-004", "Children of <image> must appear in the fixed order: "
         "notes, data, thumbnail.", SchemaConstruct.SEQUENCE_ORDER),
    Rule("SLN-SEQ-005", "Children of <video> must appear in the fixed order: "
         "notes, data.", SchemaConstruct.SEQUENCE_ORDER),
    Rule("SLN-OCC-001", "A <website> holds exactly one <purpose> and one <date>, "
         "and each collection container at most once.",
         SchemaConstruct.OCCURRENCE),
    Rule("SLN-OCC-002", "A collection container, when present, holds at least "
         "one item element.", SchemaConstruct.OCCURRENCE),
    Rule("SLN-OCC-003", "A <contact> holds exactly one each of <email>, "
         "<webpage>, <notes>.", SchemaConstruct.OCCURRENCE),
    Rule("SLN-OCC-004", "A <reluri> holds exactly one <notes>.",
         SchemaConstruct.OCCURRENCE),
    Rule("SLN-OCC-005", "A <dataset> holds exactly one <notes> and one "
         "<content>.", SchemaConstruct.OCCURRENCE),
    Rule("SLN-OCC-006", "An <image> holds exactly one each of <notes>, <data>, "
         "<thumbnail>.", SchemaConstruct.OCCURRENCE),
    Rule("SLN-OCC-007", "A <video> holds exactly one <notes> and at most one "
         "<data>.", SchemaConstruct.OCCURRENCE),
    Rule("SLN-ATT-001", "A <website> requires the attributes 'name' and "
         "'location'.", SchemaConstruct.REQUIRED_ATTRIBUTE),
    Rule("SLN-ATT-002", "A <contact> requires the attributes 'name' and "
         "'surname'.", SchemaConstruct.REQUIRED_ATTRIBUTE),
    Rule("SLN-ATT-003", "A <reluri> requires the attribute 'value'.",
         SchemaConstruct.REQUIRED_ATTRIBUTE),
    Rule("SLN-ATT-004", "A <dataset> requires the attribute 'name'.",
         SchemaConstruct.REQUIRED_ATTRIBUTE),
    Rule("SLN-ATT-005", "An <image> requires 'name'; its <data> and <thumbnail> "
         "require 'width' and 'height'.", SchemaConstruct.REQUIRED_ATTRIBUTE),
    Rule("SLN-ATT-006", "A <video> requires the attribute 'name'.",
         SchemaConstruct.REQUIRED_ATTRIBUTE),
    Rule("SLN-LEX-001", "A <date> must have the lexical form YYYY-MM-DD and "
         "denote a real calendar date.", SchemaConstruct.SIMPLE_TYPE_LEXICAL),
    Rule("SLN-LEX-002", "Name-like attributes (website/contact/dataset/image/"
         "video names, contact surname, reluri value) must be non-empty "
         "strings.", SchemaConstruct.SIMPLE_TYPE_LEXICAL),
    Rule("SLN-LEX-003", "Image 'width'/'height' must be integers in [1, 2048], "
         "and thumbnail dimensions must not exceed the full image's.",
         SchemaConstruct.SIMPLE_TYPE_LEXICAL),
    Rule("SLN-LEX-004", "Media payloads must be base64 data URIs: "
         "data:<type>/<subtype>;base64,<payload> with the standard padded "
         "alphabet and no whitespace.", SchemaConstruct.SIMPLE_TYPE_LEXICAL),
    Rule("SLN-LEX-005", "A <todo> 'due' attribute must be YYYY-MM-DD and "
         "'done' must be 'true' or 'false'.", SchemaConstruct.SIMPLE_TYPE_LEXICAL),
    Rule("SLN-LEX-006", "A <todo> must carry non-empty text.",
         SchemaConstruct.SIMPLE_TYPE_LEXICAL),
    Rule("SLN-UNK-001", "Elements not defined by the content model are "
         "rejected.", SchemaConstruct.UNKNOWN_CONTENT),
    Rule("SLN-UNK-002", "Attributes not defined by the content model are "
         "rejected (xsi:* is always allowed).", SchemaConstruct.UNKNOWN_CONTENT),
    Rule("SLN-UNK-003", "Element-only content must not contain text.",
         SchemaConstruct.UNKNOWN_CONTENT),
    Rule("SLN-ADV-001", "Advisory: an empty <purpose> is legal but probably "
         "an oversight.", SchemaConstruct.SIMPLE_TYPE_LEXICAL),
)

_RULES_BY_ID = {rule.id: rule for rule in _RULES}

# Rules that the lenient mode downgrades to warnings.
_LENIENT_DOWNGRADE = {"SLN-UNK-001", "SLN-UNK-002", "SLN-UNK-003"}
_ALWAYS_WARNING = {"SLN-ADV-001"}


def rule_catalogue() -> tuple[Rule, ...]:
    """All implemented rules, in stable id order."""
    return _RULES


def explain(rule_id: str) -> str:
    """Stable human-readable description of one rule."""
    try:
        rule = _RULES_BY_ID[rule_id]
    except KeyError:
        raise UnknownRule(rule_id)
    return f"{rule.id} [{rule.schema_construct.value}] {rule.description}"


@dataclass(frozen=True)
class Finding:
    rule_id: str
    path: str
    severity: Severity
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Ordered findings; the document is valid iff none is an error."""

    findings: tuple[Finding, ...] = ()

    @property
    def valid(self) -> bool:
        return all(f.severity is not Severity.ERROR for f in self.findings)

    def to_text(self) -> str:
        return "\n".join(
            f"{f.severity.value} {f.rule_id} {f.path} {f.message}"
            for f in self.findings
        )

    def to_json(self) -> str:
        doc = {
            "valid": self.valid,
            "findings": [
                {
                    "severity": f.severity.value,
                    "rule_id": f.rule_id,
                    "path": f.path,
                    "message": f.message,
                }
                for f in self.findings
            ],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Content model

# text kinds: None (element-only), "any", "purpose", "date", "datauri", "todo"
# attr kinds: "string", "nonempty", "dim", "date", "bool"


@dataclass(frozen=True)
class _ElemType:
    children: tuple[tuple[str, str, int, int | None], ...] = ()
    attrs: dict = field(default_factory=dict)
    text: str | None = None
    occ_rule: str = "SLN-OCC-001"
    seq_rule: str | None = None
    att_rule: str | None = None


def _container(item: str, item_type: str) -> _ElemType:
    return _ElemType(
        children=((item, item_type, 1, None),), occ_rule="SLN-OCC-002"
    )


_TYPES = {
    "sln": _ElemType(children=(("website", "website", 0, None),)),
    "website": _ElemType(
        children=(
            ("purpose", "purpose", 1, 1),
            ("date", "date", 1, 1),
            ("related", "related", 0, 1),
            ("contacts", "contacts", 0, 1),
            ("datasets", "datasets", 0, 1),
            ("images", "images", 0, 1),
            ("videos", "videos", 0, 1),
            ("todos", "todos", 0, 1),
            ("othernotes", "othernotes", 0, 1),
        ),
        attrs={"name": ("nonempty", True), "location": ("string", True)},
        occ_rule="SLN-OCC-001",
        seq_rule="SLN-SEQ-001",
        att_rule="SLN-ATT-001",
    ),
    "purpose": _ElemType(text="purpose"),
    "date": _ElemType(text="date"),
    "related": _container("reluri", "reluri"),
    "reluri": _ElemType(
        children=(("notes", "text", 1, 1),),
        attrs={"value": ("nonempty", True)},
        occ_rule="SLN-OCC-004",
        att_rule="SLN-ATT-003",
    ),
    "contacts": _container("contact", "contact"),
    "contact": _ElemType(
        children=(
            ("email", "text", 1, 1),
            ("webpage", "text", 1, 1),
            ("notes", "text", 1, 1),
        ),
        attrs={"name": ("nonempty", True), "surname": ("nonempty", True)},
        occ_rule="SLN-OCC-003",
        seq_rule="SLN-SEQ-002",
        att_rule="SLN-ATT-002",
    ),
    "datasets": _container("dataset", "dataset"),
    "dataset": _ElemType(
        children=(("notes", "text", 1, 1), ("content", "text", 1, 1)),
        attrs={"name": ("nonempty", True)},
        occ_rule="SLN-OCC-005",
        seq_rule="SLN-SEQ-003",
        att_rule="SLN-ATT-004",
    ),
    "images": _container("image", "image"),
    "image": _ElemType(
        children=(
            ("notes", "text", 1, 1),
            ("data", "image-data", 1, 1),
            ("thumbnail", "thumbnail", 1, 1),
        ),
        attrs={"name": ("nonempty", True), "url": ("string", False)},
        occ_rule="SLN-OCC-006",
        seq_rule="SLN-SEQ-004",
        att_rule="SLN-ATT-005",
    ),
    "image-data": _ElemType(
        text="datauri",
        attrs={"width": ("dim", True), "height": ("dim", True)},
        att_rule="SLN-ATT-005",
    ),
    "thumbnail": _ElemType(
        text="datauri",
        attrs={"width": ("dim", True), "height": ("dim", True)},
        att_rule="SLN-ATT-005",
    ),
    "videos": _container("video", "video"),
    "video": _ElemType(
        children=(("notes", "text", 1, 1), ("data", "video-data", 0, 1)),
        attrs={"name": ("nonempty", True)},
        occ_rule="SLN-OCC-007",
        seq_rule="SLN-SEQ-005",
        att_rule="SLN-ATT-006",
    ),
    "video-data": _ElemType(text="datauri"),
    "todos": _container("todo", "todo"),
    "todo": _ElemType(
        text="todo",
        attrs={"due": ("date", False), "done": ("bool", False)},
    ),
    "othernotes": _container("note", "text"),
    "text": _ElemType(text="any"),
}

_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}\Z")
_URI_HEADER_RE = re.compile(
    r"data:[-!#$%&'*+.^_`|~0-9A-Za-z]+/[-!#$%&'*+.^_`|~0-9A-Za-z]+;base64,"
)
_B64_CHUNK_RE = re.compile(r"[A-Za-z0-9+/]*=*\Z")


def _real_date(text: str) -> bool:
    if not _DATE_RE.fullmatch(text):
        return False
    from datetime import date

    year, month, day = map(int, text.split("-"))
    try:
        date(year, month, day)
    except ValueError:
        return False
    return True


class _UriLex:
    """Streaming lexical check of a base64 data URI."""

    __slots__ = ("header", "length", "pads", "bad")

    def __init__(self):
        self.header: list[str] | None = []
        self.length = 0
        self.pads = 0
        self.bad: str | None = None

    def feed(self, text: str) -> None:
        if self.bad:
            return
        if self.header is not None:
            self.header.append(text)
            joined = "".join(self.header)
            comma = joined.find(",")
            if comma < 0:
                if len(joined) > 8192:
                    self.bad = "missing ';base64,' marker"
                return
            if not _URI_HEADER_RE.fullmatch(joined[: comma + 1]):
                self.bad = "malformed data URI prefix"
                return
            self.header = None
            text = joined[comma + 1 :]
        # Once padding starts, only more padding may follow (chunks can
        # split an "==" pair).
        if self.pads and text.replace("=", ""):
            self.bad = "characters after base64 padding"
            return
        if not _B64_CHUNK_RE.fullmatch(text):
            self.bad = "character outside the base64 alphabet"
            return
        self.length += len(text)
        self.pads += text.count("=")

    def problem(self) -> str | None:
        if self.bad:
            return self.bad
        if self.header is not None:
            return "missing ';base64,' marker"
        if self.length % 4 or self.pads > 2:
            return "bad base64 padding"
        return None


class _Frame:
    __slots__ = (
        "type", "path", "counts", "max_slot", "suppressed",
        "text_state", "text_flagged", "data_dims",
    )

    def __init__(self, type_name: str | None, path: str, suppressed: bool):
        self.type = _TYPES.get(type_name) if type_name else None
        self.path = path
        self.counts: dict[str, int] = {}
        self.max_slot = -1
        self.suppressed = suppressed
        self.text_flagged = False
        self.data_dims: tuple[int, int] | None = None
        kind = self.type.text if self.type else None
        if kind == "datauri":
            self.text_state = _UriLex()
        elif kind in ("date", "purpose", "todo"):
            self.text_state = []
        else:
            self.text_state = None


class _RuleChecker:
    def __init__(self):
        self.stack: list[_Frame] = []
        self.findings: list[tuple[str, str, str]] = []  # (rule, path, message)
        self.pos = lambda: (0, 0)

    def _report(self, rule_id: str, path: str, message: str) -> None:
        self.findings.append((rule_id, path, message))

    # -- expat events

    def start(self, name: str, attrs: dict) -> None:
        ns, local = _split_name(name)
        if not self.stack:
            path = f"/{local}"
            if name != f"{SLN_NAMESPACE} sln":
                self._report(
                    "SLN-NS-001", path,
                    f"root is {local!r} in namespace {ns or '(none)'!r}",
                )
                self.stack.append(_Frame(None, path, True))
                return
            frame = _Frame("sln", path, False)
            self._check_attrs(frame, "sln", attrs)
            self.stack.append(frame)
            return

        parent = self.stack[-1]
        if parent.suppressed or parent.type is None:
            self.stack.append(_Frame(None, parent.path + "/" + local, True))
            return

        child_map = {c[0]: c for c in parent.type.children}
        ordinal = parent.counts.get(local, 0) + 1
        parent.counts[local] = ordinal
        segment = local if ordinal == 1 else f"{local}[{ordinal}]"
        path = parent.path + "/" + segment

        if ns != SLN_NAMESPACE:
            self._report(
                "SLN-NS-002", path,
                f"element {local!r} is in namespace {ns or '(none)'!r}",
            )
            if local not in child_map:
                self.stack.append(_Frame(None, path, True))
                return
        elif local not in child_map:
            self._report("SLN-UNK-001", path, f"unknown element <{local}>")
            self.stack.append(_Frame(None, path, True))
            return

        child_name, child_type, _lo, hi = child_map[local]
        slot = next(i for i, c in enumerate(parent.type.children) if c[0] == local)
        if slot < parent.max_slot and parent.type.seq_rule:
            self._report(
                parent.type.seq_rule, path,
                f"<{local}> appears out of sequence order",
            )
        parent.max_slot = max(parent.max_slot, slot)
        if hi is not None and ordinal > hi:
            self._report(
                parent.type.occ_rule, path,
                f"<{local}> occurs more than {hi} time(s)",
            )

        frame = _Frame(child_type, path, False)
        self._check_attrs(frame, child_type, attrs)
        if child_type == "thumbnail":
            self._check_thumb_dims(frame, parent, attrs)
        elif child_type == "image-data":
            parent.data_dims = _parse_dims(attrs)
        self.stack.append(frame)

    def _check_attrs(self, frame: _Frame, type_name: str, attrs: dict) -> None:
        spec = _TYPES[type_name].attrs
        att_rule = _TYPES[type_name].att_rule
        for key, value in attrs.items():
            ns, local = _split_name(key)
            if ns == XSI_NAMESPACE:
                continue
            if ns or local not in spec:
                self._report(
                    "SLN-UNK-002", frame.path, f"unknown attribute {local!r}"
                )
                continue
            kind = spec[local][0]
            if kind == "nonempty" and not value:
                self._report(
                    "SLN-LEX-002", frame.path, f"attribute {local!r} must be non-empty"
                )
            elif kind == "dim" and not _valid_dim(value):
                self._report(
                    "SLN-LEX-003", frame.path,
                    f"attribute {local!r} must be an integer in [1, 2048], got {value!r}",
                )
            elif kind == "date" and not _real_date(value):
                self._report(
                    "SLN-LEX-005", frame.path,
                    f"attribute {local!r} must be YYYY-MM-DD, got {value!r}",
                )
            elif kind == "bool" and value not in ("true", "false"):
                self._report(
                    "SLN-LEX-005", frame.path,
                    f"attribute {local!r} must be 'true' or 'false', got {value!r}",
                )
        for key, (kind, required) in spec.items():
            if required and key not in attrs:
                self._report(
                    att_rule, frame.path, f"missing required attribute {key!r}"
                )

    def _check_thumb_dims(self, frame: _Frame, image_frame: _Frame, attrs: dict) -> None:
        dims = _parse_dims(attrs)
        full = image_frame.data_dims
        if dims and full and (dims[0] > full[0] or dims[1] > full[1]):
            self._report(
                "SLN-LEX-003", frame.path,
                f"thumbnail {dims[0]}x{dims[1]} exceeds full image {full[0]}x{full[1]}",
            )

    def chars(self, text: str) -> None:
        if not self.stack:
            return
        frame = self.stack[-1]
        if frame.suppressed or frame.type is None:
            return
        kind = frame.type.text
        if kind is None:
            if not frame.text_flagged and text.strip():
                frame.text_flagged = True
                self._report(
                    "SLN-UNK-003", frame.path, "unexpected text in element-only content"
                )
        elif isinstance(frame.text_state, _UriLex):
            frame.text_state.feed(text)
        elif isinstance(frame.text_state, list):
            if len(frame.text_state) < 64:
                frame.text_state.append(text[:256])

    def end(self, name: str) -> None:
        frame = self.stack.pop()
        if frame.suppressed or frame.type is None:
            return
        kind = frame.type.text
        if isinstance(frame.text_state, _UriLex):
            problem = frame.text_state.problem()
            if problem:
                self._report("SLN-LEX-004", frame.path, problem)
        elif kind == "date":
            text = "".join(frame.text_state)
            if not _real_date(text):
                self._report(
                    "SLN-LEX-001", frame.path,
                    f"not a YYYY-MM-DD calendar date: {text!r}",
                )
        elif kind == "purpose":
            if not "".join(frame.text_state).strip():
                self._report("SLN-ADV-001", frame.path, "purpose is empty")
        elif kind == "todo":
            if not "".join(frame.text_state):
                self._report("SLN-LEX-006", frame.path, "todo text is empty")
        for child_name, _t, lo, _hi in frame.type.children:
            have = frame.counts.get(child_name, 0)
            if have < lo:
                self._report(
                    frame.type.occ_rule, frame.path,
                    f"expected at least {lo} <{child_name}>, found {have}",
                )


def _valid_dim(value: str) -> bool:
    return bool(re.fullmatch(r"[0-9]+", value)) and 1 <= int(value) <= 2048


def _parse_dims(attrs: dict) -> tuple[int, int] | None:
    width = attrs.get("width", "")
    height = attrs.get("height", "")
    if _valid_dim(width) and _valid_dim(height):
        return int(width), int(height)
    return None


def validate(source, lenient: bool = False) -> ValidationReport:
    """Validate a document (bytes or stream) or a Notebook value.

    A Notebook is validated through its canonical serialization, keeping one
    source of truth for the rules.  Raises :class:`SlnParseError` when the
    input is not well-formed XML (distinct from invalid-but-well-formed).
    """
    if isinstance(source, Notebook):
        source = serialize_notebook_bytes(source)
    checker = _RuleChecker()
    _run_expat(source, checker)
    findings = []
    for rule_id, path, message in checker.findings:
        if rule_id in _ALWAYS_WARNING:
            severity = Severity.WARNING
        elif lenient and rule_id in _LENIENT_DOWNGRADE:
            severity = Severity.WARNING
        else:
            severity = Severity.ERROR
        findings.append(Finding(rule_id, path, severity, message))
    return ValidationReport(tuple(findings))
