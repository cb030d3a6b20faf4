"""Toolkit for the Solar Lab Notebook (.sln) XML container format.

The notebook is a self-contained text file: website entries with notes,
contacts, datasets and Base64-embedded media, governed by a fixed schema.
This package provides the data model, a canonical XML codec, a streaming
validator, media and search operations, archive tooling, and the `sln` CLI.
"""

from .model import (
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
    add_website,
    new_notebook,
)
from .xmlio import (
    ParseErrorKind,
    SlnParseError,
    StreamStats,
    parse_notebook,
    serialize_notebook,
    serialize_notebook_bytes,
    stream_stats,
)
from .schema import (
    Finding,
    Rule,
    Severity,
    UnknownRule,
    ValidationReport,
    explain,
    rule_catalogue,
    validate,
)
from .media import (
    BadMediaType,
    CorruptImage,
    CropRect,
    ImageFormat,
    MalformedDataUri,
    OutOfBounds,
    Raster,
    ScaleFactor,
    UnsupportedFormat,
    crop,
    decode_data_uri,
    decode_raster,
    encode_data_uri,
    encode_raster,
    make_thumbnail,
    scale,
    sniff_format,
)
from .search import QueryResult, SearchIndex, build_index, filter_rows, query
from .ops import (
    Added,
    EntryKey,
    FieldChange,
    FixtureManifest,
    FixtureSpec,
    MergePolicy,
    Modified,
    Removed,
    Reordered,
    diff,
    extract_datasets,
    extract_media,
    generate_fixture,
    merge,
    patch,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
