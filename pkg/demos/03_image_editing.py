"""The image editor operations: crop, fixed-ratio scale, auto-thumbnail.

Rasters are RGBA8 numpy grids; downscaling uses a box filter so the same
input always produces the same output.  Full images travel inside the
notebook as base64 data URIs with an auto-generated thumbnail alongside.
"""

import numpy as np

from sln import (
    CropRect,
    ImageRecord,
    MediaBlob,
    Raster,
    ScaleFactor,
    crop,
    encode_data_uri,
    encode_raster,
    make_thumbnail,
    scale,
)

# a synthetic 2048x2048 "solar disk": bright circle on dark background
yy, xx = np.mgrid[0:2048, 0:2048]
disk = ((xx - 1024) ** 2 + (yy - 1024) ** 2) < 900**2
pixels = np.zeros((2048, 2048, 4), dtype=np.uint8)
pixels[..., 3] = 255
pixels[disk] = (255, 180, 40, 255)
full = Raster(pixels)
print(f"source: {full.width}x{full.height}")

for factor in (ScaleFactor.HALF, ScaleFactor.QUARTER, ScaleFactor.EIGHTH):
    out = scale(full, factor)
    print(f"scale 1:{factor.value} -> {out.width}x{out.height}")

region = crop(full, CropRect(824, 824, 400, 400))
print(f"crop of the disk center -> {region.width}x{region.height}")

thumb = make_thumbnail(full)
print(f"auto thumbnail -> {thumb.width}x{thumb.height} (longest side <= 128)")

png = encode_raster(region)
record = ImageRecord(
    name="disk center",
    full=MediaBlob("image/png", png),
    thumbnail=MediaBlob("image/png", encode_raster(make_thumbnail(region))),
    full_width=region.width,
    full_height=region.height,
    thumb_width=make_thumbnail(region).width,
    thumb_height=make_thumbnail(region).height,
    notes="synthetic demo image",
)
uri = encode_data_uri(record.full.media_type, record.full.payload)
print(f"embedded as data URI: {uri[:60]}... ({len(uri)} chars)")
