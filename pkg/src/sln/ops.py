"""Whole-archive tooling: merge, diff/patch, media extraction, fixtures.

Website entries are identified by the key (name, location) for merge and
diff purposes; a positional occurrence number disambiguates duplicates.
Diffs are key-based rather than positional so that reordered notebooks
(common after sharing files between labs) produce quiet change lists.
"""

from __future__ import annotations

import base64
import enum
import json
import random
from dataclasses import asdict, dataclass, replace
from datetime import date
from pathlib import Path
from urllib.parse import quote

import numpy as np

from . import media, xmlio
from .model import (
    Contact,
    Dataset,
    ImageRecord,
    MediaBlob,
    Notebook,
    Note,
    RelatedUrl,
    TodoItem,
    WebsiteEntry,
)

# WebsiteEntry fields a Modified change can touch; name/location form the key.
_DIFF_FIELDS = (
    "date", "purpose", "related", "contacts", "datasets",
    "images", "videos", "todos", "other_notes",
)


class MergePolicy(enum.Enum):
    KEEP_BOTH = "both"
    PREFER_FIRST = "first"
    PREFER_SECOND = "second"


def merge(a: Notebook, b: Notebook, policy: MergePolicy = MergePolicy.KEEP_BOTH) -> Notebook:
    """Concatenate two notebooks, resolving (name, location) collisions.

    Order is always a's entries then b's.  KEEP_BOTH keeps collisions from
    both sides; PREFER_FIRST drops b's colliding entries; PREFER_SECOND
    drops a's.
    """
    if policy is MergePolicy.KEEP_BOTH:
        websites = a.websites + b.websites
    else:
        keys_a = {(site.name, site.location) for site in a.websites}
        keys_b = {(site.name, site.location) for site in b.websites}
        if policy is MergePolicy.PREFER_FIRST:
            websites = a.websites + tuple(
                site for site in b.websites if (site.name, site.location) not in keys_a
            )
        else:
            websites = tuple(
                site for site in a.websites if (site.name, site.location) not in keys_b
            ) + b.websites
    return Notebook(websites, a.schema_location or b.schema_location)


# ---------------------------------------------------------------------------
# Diff / patch


@dataclass(frozen=True)
class EntryKey:
    """Identity of a website entry; ordinal counts duplicates of the same
    (name, location) pair in document order, starting at 1."""

    name: str
    location: str
    ordinal: int = 1


@dataclass(frozen=True)
class FieldChange:
    field: str
    old: object
    new: object


@dataclass(frozen=True)
class Added:
    key: EntryKey
    entry: WebsiteEntry


@dataclass(frozen=True)
class Removed:
    key: EntryKey


@dataclass(frozen=True)
class Modified:
    key: EntryKey
    changes: tuple[FieldChange, ...]


@dataclass(frozen=True)
class Reordered:
    """Final key order of the target notebook (only present when the
    surviving entries' order actually changes)."""

    order: tuple[EntryKey, ...]


def _keyed(nb: Notebook) -> dict[EntryKey, WebsiteEntry]:
    seen: dict[tuple[str, str], int] = {}
    table = {}
    for site in nb.websites:
        pair = (site.name, site.location)
        seen[pair] = seen.get(pair, 0) + 1
        table[EntryKey(site.name, site.location, seen[pair])] = site
    return table


def diff(a: Notebook, b: Notebook) -> tuple:
    """Change list turning ``a`` into ``b``; empty when they are equal."""
    table_a = _keyed(a)
    table_b = _keyed(b)
    changes: list = []
    for key in table_a:
        if key not in table_b:
            changes.append(Removed(key))
    for key, entry in table_b.items():
        if key not in table_a:
            changes.append(Added(key, entry))
    for key, entry_b in table_b.items():
        entry_a = table_a.get(key)
        if entry_a is None or entry_a == entry_b:
            continue
        field_changes = tuple(
            FieldChange(name, getattr(entry_a, name), getattr(entry_b, name))
            for name in _DIFF_FIELDS
            if getattr(entry_a, name) != getattr(entry_b, name)
        )
        changes.append(Modified(key, field_changes))
    # Without a directive, patch keeps a's surviving order and appends
    # additions; emit one only when that would not reproduce b.
    surviving = [key for key in table_a if key in table_b]
    added = [key for key in table_b if key not in table_a]
    target = list(table_b)
    if surviving + added != target:
        changes.append(Reordered(tuple(target)))
    if a.schema_location != b.schema_location:
        changes.append(FieldChange("schema_location", a.schema_location, b.schema_location))
    return tuple(changes)


def patch(a: Notebook, changes: tuple) -> Notebook:
    """Apply a change list produced by :func:`diff`; patch(a, diff(a, b)) == b."""
    table = _keyed(a)
    order = list(table)
    schema_location = a.schema_location
    for change in changes:
        if isinstance(change, Removed):
            del table[change.key]
            order.remove(change.key)
        elif isinstance(change, Added):
            table[change.key] = change.entry
            order.append(change.key)
        elif isinstance(change, Modified):
            entry = table[change.key]
            table[change.key] = replace(
                entry, **{fc.field: fc.new for fc in change.changes}
            )
        elif isinstance(change, Reordered):
            order = list(change.order)
        elif isinstance(change, FieldChange) and change.field == "schema_location":
            schema_location = change.new
    return Notebook(tuple(table[key] for key in order), schema_location)


# ---------------------------------------------------------------------------
# Extraction

_EXTENSIONS = {
    media.ImageFormat.PNG: ".png",
    media.ImageFormat.JPEG: ".jpg",
    media.ImageFormat.GIF: ".gif",
    media.ImageFormat.BMP: ".bmp",
    media.ImageFormat.SVG: ".svg",
    media.ImageFormat.UNKNOWN: ".bin",
}


def _safe_name(name: str) -> str:
    # Portable ASCII subset; everything else percent-escaped.
    return quote(name, safe="")


def _assign_filenames(stems: list[str]) -> list[str]:
    """Resolve duplicate stems by numbering every member of a collision
    group -1, -2, ...; unique stems stay untouched."""
    counts: dict[str, int] = {}
    for stem in stems:
        counts[stem] = counts.get(stem, 0) + 1
    numbered: dict[str, int] = {}
    taken: set[str] = set()
    out = []
    for stem in stems:
        candidate = stem
        if counts[stem] > 1:
            numbered[stem] = numbered.get(stem, 0) + 1
            candidate = f"{stem}-{numbered[stem]}"
        while candidate in taken:
            numbered[stem] = numbered.get(stem, 0) + 1
            candidate = f"{stem}-{numbered[stem]}"
        taken.add(candidate)
        out.append(candidate)
    return out


def extract_media(nb: Notebook, out_dir) -> list[dict]:
    """Write every image's full payload to ``out_dir``; returns a manifest.

    Files are named <website-index>-<image-name><ext> with a 1-based index,
    the name percent-escaped to portable ASCII, and the extension chosen by
    format sniffing.  Name collisions get numeric suffixes.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for site_index, site in enumerate(nb.websites, start=1):
        for image in site.images:
            ext = _EXTENSIONS[media.sniff_format(image.full.payload)]
            records.append((site_index, image.name, image.full.payload, ext))
    stems = [f"{idx}-{_safe_name(name)}" for idx, name, _p, _e in records]
    manifest = []
    for (site_index, name, payload, ext), stem in zip(records, _assign_filenames(stems)):
        filename = stem + ext
        (out_dir / filename).write_bytes(payload)
        manifest.append(
            {
                "website": site_index,
                "name": name,
                "file": filename,
                "bytes": len(payload),
            }
        )
    return manifest


def extract_datasets(nb: Notebook, out_dir) -> list[dict]:
    """Write every dataset's content as utf-8 text files; returns a manifest.

    Content that looks like an XML document gets an .xml extension,
    everything else .txt.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for site_index, site in enumerate(nb.websites, start=1):
        for ds in site.datasets:
            ext = ".xml" if ds.content.lstrip().startswith("<") else ".txt"
            records.append((site_index, ds.name, ds.content, ext))
    stems = [f"{idx}-{_safe_name(name)}" for idx, name, _c, _e in records]
    manifest = []
    for (site_index, name, content, ext), stem in zip(records, _assign_filenames(stems)):
        filename = stem + ext
        (out_dir / filename).write_bytes(content.encode("utf-8"))
        manifest.append(
            {
                "website": site_index,
                "name": name,
                "file": filename,
                "bytes": len(content.encode("utf-8")),
            }
        )
    return manifest


def manifest_json(manifest) -> str:
    """Manifest serialized with stable key order."""
    return json.dumps(manifest, indent=2, ensure_ascii=False, sort_keys=False)


# ---------------------------------------------------------------------------
# Synthetic fixtures for performance testing


@dataclass(frozen=True)
class FixtureSpec:
    """Deterministic synthetic notebook: same seed, same bytes."""

    website_count: int
    datasets_per_site: int = 0
    dataset_bytes: int = 0
    images_per_site: int = 0
    image_size: tuple[int, int] = (64, 64)
    seed: int = 0

    @property
    def target_bytes(self) -> int:
        """Approximate output size; payloads dominate real documents."""
        per_site = self.datasets_per_site * (self.dataset_bytes + 120)
        per_site += self.images_per_site * self._image_estimate()
        return 400 + self.website_count * (per_site + 700)

    def _image_estimate(self) -> int:
        # Random RGBA noise is incompressible: ~4 bytes/pixel, twice
        # (full + thumbnail when small), base64-inflated by 4/3.
        width, height = self.image_size
        raw = width * height * 4
        return int(2 * raw * 4 / 3) + 400


@dataclass(frozen=True)
class FixtureManifest:
    """Ground truth recorded while generating; comparable to stream_stats."""

    website_count: int
    dataset_bytes: int
    image_count: int
    total_media_bytes: int
    file_bytes: int

    def stats(self) -> xmlio.StreamStats:
        return xmlio.StreamStats(
            website_count=self.website_count,
            dataset_bytes=self.dataset_bytes,
            image_count=self.image_count,
            total_media_bytes=self.total_media_bytes,
        )


_WORDS = (
    "corona", "flare", "filament", "sunspot", "plage", "prominence",
    "magnetogram", "aurora", "heliosphere", "photosphere",
)


def _random_text(rng: random.Random, nbytes: int) -> str:
    # Base64 of random bytes: pure ASCII, no XML escaping, exact length.
    raw = base64.b64encode(rng.randbytes(3 * (nbytes // 4) + 3)).decode("ascii")
    return raw[:nbytes]


def generate_fixture(spec: FixtureSpec, out_path, manifest_path=None) -> FixtureManifest:
    """Write a schema-valid notebook of roughly ``spec.target_bytes`` bytes.

    Websites are streamed out one at a time, so generation memory stays
    proportional to a single site's payload, not the whole file.
    """
    rng = random.Random(spec.seed)
    out_path = Path(out_path)
    dataset_bytes = 0
    image_count = 0
    media_bytes = 0

    image_cache = None
    with open(out_path, "wb") as sink:
        writer = xmlio._Writer(sink)
        writer.raw('<?xml version="1.0" encoding="utf-8"?>\n')
        writer.raw(
            f'<sln xmlns="{xmlio.SLN_NAMESPACE}"'
            f' xmlns:xsi="{xmlio.XSI_NAMESPACE}"'
            f' xsi:schemaLocation="{xmlio.SLN_NAMESPACE} {xmlio.SCHEMA_URL}">\n'
        )
        for index in range(spec.website_count):
            datasets = []
            for d in range(spec.datasets_per_site):
                content = _random_text(rng, spec.dataset_bytes)
                dataset_bytes += len(content)
                datasets.append(
                    Dataset(f"dataset-{index}-{d}", f"synthetic block {d}", content)
                )
            images = []
            for i in range(spec.images_per_site):
                if image_cache is None:
                    image_cache = _noise_image(rng, spec.image_size)
                full, thumb, dims = image_cache
                media_bytes += len(full.payload) + len(thumb.payload)
                image_count += 1
                images.append(
                    ImageRecord(
                        name=f"image-{index}-{i}",
                        full=full,
                        thumbnail=thumb,
                        full_width=dims[0],
                        full_height=dims[1],
                        thumb_width=dims[2],
                        thumb_height=dims[3],
                        notes=rng.choice(_WORDS),
                    )
                )
            site = WebsiteEntry(
                name=f"site-{index}-{rng.choice(_WORDS)}",
                location=f"http://example.org/gateway/{index}",
                date=date(2014, 1 + index % 12, 1 + index % 28),
                purpose=f"synthetic fixture entry {index}",
                related=(RelatedUrl(f"http://example.org/rel/{index}", "generated"),),
                contacts=(Contact("Generated", "Contact", f"user{index}@example.org"),),
                datasets=tuple(datasets),
                images=tuple(images),
                todos=(TodoItem(f"check entry {index}", None, bool(index % 2)),),
                other_notes=(Note(rng.choice(_WORDS)),),
            )
            xmlio._write_website(writer, site, "  ")
        writer.raw("</sln>\n")

    manifest = FixtureManifest(
        website_count=spec.website_count,
        dataset_bytes=dataset_bytes,
        image_count=image_count,
        total_media_bytes=media_bytes,
        file_bytes=out_path.stat().st_size,
    )
    if manifest_path is not None:
        Path(manifest_path).write_text(
            json.dumps(asdict(manifest), indent=2) + "\n", encoding="utf-8"
        )
    return manifest


def _noise_image(rng: random.Random, size: tuple[int, int]):
    width, height = size
    pixels = np.frombuffer(rng.randbytes(width * height * 4), dtype=np.uint8)
    raster = media.Raster(pixels.reshape(height, width, 4).copy())
    thumb = media.make_thumbnail(raster)
    full_blob = MediaBlob("image/png", media.encode_raster(raster))
    thumb_blob = MediaBlob("image/png", media.encode_raster(thumb))
    return full_blob, thumb_blob, (width, height, thumb.width, thumb.height)
