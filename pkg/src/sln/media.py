"""Base64 data-URI codec and raster operations for embedded images.

The wire form of every embedded payload is an RFC 2397 data URI with the
standard padded Base64 alphabet and no line breaks:

    data:<type>/<subtype>;base64,<payload>

Pixel operations (crop, fixed-ratio scale, thumbnail) work on RGBA8 rasters
and are implemented for PNG only; other sniffed formats are carried as
opaque blobs.  Downscaling uses a box filter so results are deterministic.
"""

from __future__ import annotations

import base64
import binascii
import enum
import io
import re
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from .model import MAX_IMAGE_DIM, _MIME_RE

THUMBNAIL_MAX_SIDE = 128


class BadMediaType(ValueError):
    """The MIME type is not of the form type/subtype."""


class MalformedDataUri(ValueError):
    """The text is not a well-formed base64 data URI."""


class OutOfBounds(ValueError):
    """A crop rectangle does not fit inside its source raster."""


class UnsupportedFormat(ValueError):
    """Pixel access was requested for a format we only store opaquely."""


class CorruptImage(ValueError):
    """The payload looked like a supported format but failed to decode."""


class ImageFormat(enum.Enum):
    PNG = "png"
    JPEG = "jpeg"
    GIF = "gif"
    BMP = "bmp"
    SVG = "svg"
    UNKNOWN = "unknown"


class ScaleFactor(enum.Enum):
    """The editor's fixed reduction ratios."""

    FULL = 1
    HALF = 2
    QUARTER = 4
    EIGHTH = 8

    @classmethod
    def from_ratio(cls, text: str) -> "ScaleFactor":
        """Parse a "1:k" ratio string."""
        for member in cls:
            if text == f"1:{member.value}":
                return member
        raise ValueError(f"unknown scale ratio {text!r}")


_DATA_URI_RE = re.compile(
    r"data:(?P<type>[-!#$%&'*+.^_`|~0-9A-Za-z]+/[-!#$%&'*+.^_`|~0-9A-Za-z]+)"
    r";base64,(?P<payload>[A-Za-z0-9+/]*={0,2})\Z"
)


def encode_data_uri(media_type: str, data: bytes) -> str:
    """Encode ``data`` as a base64 data URI with the given MIME type."""
    if not isinstance(media_type, str) or not _MIME_RE.fullmatch(media_type):
        raise BadMediaType(f"malformed media type: {media_type!r}")
    return f"data:{media_type};base64,{base64.b64encode(data).decode('ascii')}"


def decode_data_uri(text: str) -> tuple[str, bytes]:
    """Decode a data URI back to (media_type, bytes).

    The payload must be canonical: standard alphabet, correct padding, no
    whitespace.  Anything else raises :class:`MalformedDataUri`.
    """
    match = _DATA_URI_RE.fullmatch(text)
    if not match:
        raise MalformedDataUri(_describe_bad_uri(text))
    payload = match.group("payload")
    try:
        data = base64.b64decode(payload, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise MalformedDataUri(f"bad base64 payload: {exc}")
    # b64decode tolerates non-canonical trailing bits; require exact inverse.
    if base64.b64encode(data).decode("ascii") != payload:
        raise MalformedDataUri("non-canonical base64 payload")
    return match.group("type"), data


def _describe_bad_uri(text: str) -> str:
    if not isinstance(text, str) or not text.startswith("data:"):
        return "missing data: prefix"
    if ";base64," not in text:
        return "missing ;base64, marker"
    return "bad media type, alphabet, or padding"


def sniff_format(data: bytes) -> ImageFormat:
    """Identify an image payload by magic bytes (or XML root, for SVG).

    Never decodes the image; unknown input yields ``ImageFormat.UNKNOWN``.
    """
    if data.startswith(b"\x89PNG"):
        return ImageFormat.PNG
    if data.startswith(b"\xff\xd8\xff"):
        return ImageFormat.JPEG
    if data.startswith((b"GIF87a", b"GIF89a")):
        return ImageFormat.GIF
    if data.startswith(b"BM"):
        return ImageFormat.BMP
    if _sniff_svg(data):
        return ImageFormat.SVG
    return ImageFormat.UNKNOWN


_SVG_ROOT_RE = re.compile(r"<(?:[A-Za-z_][\w.-]*:)?svg[\s>/]")


def _sniff_svg(data: bytes) -> bool:
    head = data[:4096].decode("utf-8", errors="replace").lstrip("﻿ \t\r\n")
    # Skip prolog junk before the root element: declaration, comments, doctype.
    pos = 0
    while pos < len(head):
        if head.startswith("<?", pos):
            end = head.find("?>", pos)
        elif head.startswith("<!--", pos):
            end = head.find("-->", pos)
        elif head.startswith("<!", pos):
            end = head.find(">", pos) - 1
        elif head.startswith("<", pos):
            return bool(_SVG_ROOT_RE.match(head, pos))
        else:
            pos += 1
            continue
        if end < pos:
            return False
        pos = end + 2
        while pos < len(head) and head[pos] in " \t\r\n":
            pos += 1
    return False


class Raster:
    """A width x height grid of RGBA8 samples backed by a numpy array."""

    def __init__(self, pixels: np.ndarray):
        pixels = np.asarray(pixels, dtype=np.uint8)
        if pixels.ndim != 3 or pixels.shape[2] != 4:
            raise ValueError("raster pixels must have shape (height, width, 4)")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError("raster must be at least 1x1")
        self.pixels = pixels

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Raster):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __repr__(self) -> str:
        return f"Raster({self.width}x{self.height})"

    @classmethod
    def filled(cls, width: int, height: int, rgba=(0, 0, 0, 255)) -> "Raster":
        pixels = np.empty((height, width, 4), dtype=np.uint8)
        pixels[:, :] = rgba
        return cls(pixels)


@dataclass(frozen=True)
class CropRect:
    """Pixel rectangle (x, y) top-left corner, w x h extent."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0 or self.w < 1 or self.h < 1:
            raise OutOfBounds(f"degenerate crop rectangle {self}")


def crop(raster: Raster, rect: CropRect) -> Raster:
    """Extract ``rect`` from ``raster``; the rectangle must fit entirely."""
    if rect.x + rect.w > raster.width or rect.y + rect.h > raster.height:
        raise OutOfBounds(
            f"crop {rect} exceeds source {raster.width}x{raster.height}"
        )
    return Raster(raster.pixels[rect.y : rect.y + rect.h, rect.x : rect.x + rect.w])


def scale(raster: Raster, factor: ScaleFactor) -> Raster:
    """Downscale by 1:k with a k x k box filter; 1:1 is the identity.

    Output dimensions are (max(1, floor(w/k)), max(1, floor(h/k))).  Each
    output pixel is the rounded mean of its source block; blocks clipped by
    the right/bottom edge average just the pixels they cover.
    """
    k = factor.value
    if k == 1:
        return raster
    out_w = max(1, raster.width // k)
    out_h = max(1, raster.height // k)
    src = raster.pixels
    if out_w * k <= raster.width and out_h * k <= raster.height:
        block = src[: out_h * k, : out_w * k].astype(np.uint32)
        block = block.reshape(out_h, k, out_w, k, 4)
        total = block.sum(axis=(1, 3))
        out = (total + k * k // 2) // (k * k)
        return Raster(out.astype(np.uint8))
    # Degenerate axis (size < k): a single block covering what exists.
    out = np.empty((out_h, out_w, 4), dtype=np.uint8)
    for j in range(out_h):
        for i in range(out_w):
            cell = src[j * k : min((j + 1) * k, raster.height),
                       i * k : min((i + 1) * k, raster.width)]
            count = cell.shape[0] * cell.shape[1]
            total = cell.astype(np.uint32).sum(axis=(0, 1))
            out[j, i] = (total + count // 2) // count
    return Raster(out)


def make_thumbnail(raster: Raster) -> Raster:
    """Shrink so the longest side is at most 128 px, preserving aspect ratio.

    Rasters already within the bound are returned unchanged, so the
    operation is idempotent.  Resampling is an area-weighted box filter.
    """
    longest = max(raster.width, raster.height)
    if longest <= THUMBNAIL_MAX_SIDE:
        return raster
    ratio = THUMBNAIL_MAX_SIDE / longest
    out_w = max(1, round(raster.width * ratio))
    out_h = max(1, round(raster.height * ratio))
    data = raster.pixels.astype(np.float64)
    data = _box_resample_axis(data, out_h, axis=0)
    data = _box_resample_axis(data, out_w, axis=1)
    return Raster(np.floor(data + 0.5).astype(np.uint8))


def _box_resample_axis(data: np.ndarray, new_len: int, axis: int) -> np.ndarray:
    """Average ``data`` down to ``new_len`` along ``axis``.

    Output cell i covers the source interval [i*n/m, (i+1)*n/m); fractional
    overlap weights partial source pixels.
    """
    old_len = data.shape[axis]
    if old_len == new_len:
        return data
    moved = np.moveaxis(data, axis, 0)
    result = np.empty((new_len,) + moved.shape[1:], dtype=np.float64)
    step = old_len / new_len
    for i in range(new_len):
        lo = i * step
        hi = (i + 1) * step
        first = int(np.floor(lo))
        last = min(int(np.ceil(hi)), old_len)
        weights = np.ones(last - first, dtype=np.float64)
        weights[0] -= lo - first
        if last - 1 >= first:
            weights[-1] -= last - hi if last > hi else 0.0
        total = np.tensordot(weights, moved[first:last], axes=(0, 0))
        result[i] = total / weights.sum()
    return np.moveaxis(result, 0, axis)


def decode_raster(data: bytes) -> Raster:
    """Decode a PNG payload to an RGBA8 raster.

    Only PNG gets pixel access; any other sniffed format raises
    :class:`UnsupportedFormat` (it can still travel as an opaque blob).
    """
    kind = sniff_format(data)
    if kind is not ImageFormat.PNG:
        raise UnsupportedFormat(f"pixel operations support PNG only, got {kind.value}")
    try:
        with Image.open(io.BytesIO(data)) as img:
            rgba = img.convert("RGBA")
            pixels = np.asarray(rgba, dtype=np.uint8)
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise CorruptImage(f"PNG decode failed: {exc}")
    return Raster(pixels)


def encode_raster(raster: Raster) -> bytes:
    """Encode a raster as PNG bytes; decode(encode(r)) is pixel-identical."""
    img = Image.fromarray(raster.pixels, mode="RGBA")
    out = io.BytesIO()
    img.save(out, format="PNG")
    return out.getvalue()
