"""Seeded random notebook generator shared by the property-style tests.

Everything is driven by a caller-supplied random.Random, so failures
reproduce from the seed alone.  Text draws from a pool that covers XML
metacharacters, whitespace, case-folding oddities and supplementary-plane
characters, while avoiding code points XML cannot store.
"""

import random
from datetime import date, timedelta

from sln import (
    Contact,
    Dataset,
    ImageRecord,
    MediaBlob,
    Note,
    Notebook,
    RelatedUrl,
    Raster,
    TodoItem,
    VideoRecord,
    WebsiteEntry,
    encode_raster,
    make_thumbnail,
)

_POOL = (
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    " \t\n\r<>&\"']]>;,=%-_./:"
    "äöüßçñ"
    "αβγΣΩ"
    "日本語データ"
    "\U00010000\U0001F600\U0001D11E"
)


def text(rng: random.Random, max_len: int = 16, allow_empty: bool = True) -> str:
    low = 0 if allow_empty else 1
    return "".join(rng.choice(_POOL) for _ in range(rng.randint(low, max_len)))


def name(rng: random.Random) -> str:
    return text(rng, 12, allow_empty=False)


def cal_date(rng: random.Random) -> date:
    return date(1990, 1, 1) + timedelta(days=rng.randrange(20000))


def tiny_image(rng: random.Random) -> ImageRecord:
    width, height = rng.randint(1, 4), rng.randint(1, 4)
    pixels = [[tuple(rng.randrange(256) for _ in range(4)) for _ in range(width)]
              for _ in range(height)]
    raster = Raster([[list(px) for px in row] for row in pixels])
    thumb = make_thumbnail(raster)
    return ImageRecord(
        name=name(rng),
        full=MediaBlob("image/png", encode_raster(raster)),
        thumbnail=MediaBlob("image/png", encode_raster(thumb)),
        full_width=width,
        full_height=height,
        thumb_width=thumb.width,
        thumb_height=thumb.height,
        notes=text(rng),
        related_url=name(rng) if rng.random() < 0.3 else None,
    )


def website(rng: random.Random, with_media: bool = True) -> WebsiteEntry:
    return WebsiteEntry(
        name=name(rng),
        location=text(rng, 24),
        date=cal_date(rng),
        purpose=text(rng, 24),
        related=tuple(
            RelatedUrl(name(rng), text(rng)) for _ in range(rng.randint(0, 3))
        ),
        contacts=tuple(
            Contact(name(rng), name(rng), text(rng), text(rng), text(rng))
            for _ in range(rng.randint(0, 3))
        ),
        datasets=tuple(
            Dataset(name(rng), text(rng), text(rng, 80))
            for _ in range(rng.randint(0, 2))
        ),
        images=tuple(
            tiny_image(rng)
            for _ in range(rng.randint(0, 1) if with_media else 0)
        ),
        videos=tuple(
            VideoRecord(name(rng), text(rng),
                        MediaBlob("video/webm", rng.randbytes(rng.randint(0, 32)))
                        if rng.random() < 0.5 else None)
            for _ in range(rng.randint(0, 1) if with_media else 0)
        ),
        todos=tuple(
            TodoItem(name(rng), cal_date(rng) if rng.random() < 0.5 else None,
                     rng.random() < 0.5)
            for _ in range(rng.randint(0, 2))
        ),
        other_notes=tuple(Note(text(rng)) for _ in range(rng.randint(0, 2))),
    )


def notebook(rng: random.Random, max_sites: int = 3, with_media: bool = True) -> Notebook:
    sites = tuple(website(rng, with_media) for _ in range(rng.randint(0, max_sites)))
    location = None if rng.random() < 0.1 else Notebook().schema_location
    return Notebook(sites, location)
