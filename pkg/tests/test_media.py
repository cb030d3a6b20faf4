"""Data-URI codec, format sniffing, and raster operations."""

import base64
import random

import numpy as np
import pytest

import pngref
from sln import (
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


class TestDataUri:
    def test_known_value(self):
        # independently: base64 of "A" is "QQ=="
        assert base64.b64encode(b"A") == b"QQ=="
        assert encode_data_uri("text/plain", b"A") == "data:text/plain;base64,QQ=="

    def test_empty_payload(self):
        assert encode_data_uri("image/png", b"") == "data:image/png;base64,"
        assert decode_data_uri("data:image/png;base64,") == ("image/png", b"")

    def test_decode_known_value(self):
        assert decode_data_uri("data:text/plain;base64,QQ==") == ("text/plain", b"A")

    def test_bad_media_type(self):
        with pytest.raises(BadMediaType):
            encode_data_uri("noslash", b"")
        with pytest.raises(BadMediaType):
            encode_data_uri("a/b/c", b"")

    @pytest.mark.parametrize(
        "text",
        [
            "data:text/plain;base64,Q!==",   # illegal alphabet character
            "text/plain;base64,QQ==",        # missing prefix
            "data:text/plain,QQ==",          # missing base64 marker
            "data:text/plain;base64,QQ=",    # bad padding
            "data:text/plain;base64,QQ== ",  # trailing whitespace
            "data:text/plain;base64,QR==",   # non-canonical trailing bits
            "data:;base64,QQ==",             # empty media type
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(MalformedDataUri):
            decode_data_uri(text)

    def test_roundtrip_random(self):
        rng = random.Random(42)
        for _ in range(500):
            payload = rng.randbytes(rng.randrange(64))
            text = encode_data_uri("application/octet-stream", payload)
            assert decode_data_uri(text) == ("application/octet-stream", payload)

    def test_roundtrip_oracle(self):
        # the payload section must agree with the stdlib's base64
        rng = random.Random(7)
        for _ in range(100):
            payload = rng.randbytes(rng.randrange(32))
            text = encode_data_uri("image/gif", payload)
            assert text.split(",", 1)[1] == base64.b64encode(payload).decode()


class TestSniff:
    def test_png_magic(self):
        assert sniff_format(b"\x89PNG\r\n\x1a\nrest") is ImageFormat.PNG

    def test_jpeg_magic(self):
        assert sniff_format(b"\xff\xd8\xff\xe0junk") is ImageFormat.JPEG

    def test_gif_magic(self):
        assert sniff_format(b"GIF89aloop") is ImageFormat.GIF

    def test_bmp_magic(self):
        assert sniff_format(b"BM1234") is ImageFormat.BMP

    def test_svg_root(self):
        assert sniff_format(b'<svg xmlns="http://www.w3.org/2000/svg"/>') is ImageFormat.SVG

    def test_svg_with_prolog(self):
        doc = b'<?xml version="1.0"?>\n<!-- logo -->\n<svg width="1"/>'
        assert sniff_format(doc) is ImageFormat.SVG

    def test_xml_but_not_svg(self):
        assert sniff_format(b'<?xml version="1.0"?><svgx/>') is ImageFormat.UNKNOWN

    def test_empty_is_unknown(self):
        assert sniff_format(b"") is ImageFormat.UNKNOWN


def checkerboard(width=4, height=4) -> Raster:
    pixels = np.zeros((height, width, 4), dtype=np.uint8)
    for y in range(height):
        for x in range(width):
            value = 255 if (x + y) % 2 == 0 else 0
            pixels[y, x] = (value, value, value, 255)
    return Raster(pixels)


class TestCrop:
    def test_identity_crop(self):
        raster = checkerboard(8, 8)
        assert crop(raster, CropRect(0, 0, 8, 8)) == raster

    def test_out_of_bounds(self):
        with pytest.raises(OutOfBounds):
            crop(checkerboard(4, 4), CropRect(1, 0, 4, 4))
        with pytest.raises(OutOfBounds):
            crop(checkerboard(4, 4), CropRect(0, 2, 2, 3))

    def test_degenerate_rect(self):
        with pytest.raises(OutOfBounds):
            CropRect(0, 0, 0, 1)

    def test_checkerboard_oracle(self):
        raster = checkerboard(4, 4)
        out = crop(raster, CropRect(1, 1, 2, 2))
        # oracle: direct index arithmetic into the source grid
        for j in range(2):
            for i in range(2):
                assert (out.pixels[j, i] == raster.pixels[1 + j, 1 + i]).all()

    def test_crop_composition(self):
        rng = random.Random(3)
        src = Raster(np.frombuffer(rng.randbytes(32 * 16 * 4), dtype=np.uint8)
                     .reshape(16, 32, 4).copy())
        first = CropRect(4, 2, 20, 10)
        second = CropRect(3, 1, 8, 6)
        combined = CropRect(first.x + second.x, first.y + second.y, second.w, second.h)
        assert crop(crop(src, first), second) == crop(src, combined)


class TestScale:
    @pytest.mark.parametrize("ratio,expected", [("1:2", 1024), ("1:4", 512), ("1:8", 256)])
    def test_square_2048(self, ratio, expected):
        raster = Raster.filled(2048, 2048, (9, 9, 9, 255))
        out = scale(raster, ScaleFactor.from_ratio(ratio))
        assert (out.width, out.height) == (expected, expected)

    def test_identity(self):
        raster = checkerboard()
        assert scale(raster, ScaleFactor.FULL) == raster

    def test_dimension_law_grid(self):
        for w in (1, 2, 3, 7, 8, 600, 2047, 2048):
            for h in (1, 5, 16, 2048):
                raster = Raster.filled(w, h, (1, 2, 3, 4))
                for factor in ScaleFactor:
                    out = scale(raster, factor)
                    k = factor.value
                    assert out.width == max(1, w // k)
                    assert out.height == max(1, h // k)

    def test_uniform_color_fixed_point(self):
        for rgba in ((0, 0, 0, 0), (255, 255, 255, 255), (13, 200, 77, 128)):
            raster = Raster.filled(40, 24, rgba)
            for factor in ScaleFactor:
                out = scale(raster, factor)
                assert (out.pixels == np.array(rgba, dtype=np.uint8)).all()

    def test_box_average_oracle(self):
        # 2x2 block of known values averages exactly
        pixels = np.array(
            [[[0, 0, 0, 255], [10, 0, 0, 255]],
             [[20, 0, 0, 255], [30, 0, 0, 255]]],
            dtype=np.uint8,
        )
        out = scale(Raster(pixels), ScaleFactor.HALF)
        assert out.width == out.height == 1
        assert out.pixels[0, 0, 0] == 15  # (0+10+20+30)/4

    def test_rounding_half_up(self):
        pixels = np.array(
            [[[0, 0, 0, 0], [1, 0, 0, 0]],
             [[1, 0, 0, 0], [0, 0, 0, 0]]],
            dtype=np.uint8,
        )
        out = scale(Raster(pixels), ScaleFactor.HALF)
        assert out.pixels[0, 0, 0] == 1  # mean 0.5 rounds up


class TestThumbnail:
    def test_2048x1024(self):
        out = make_thumbnail(Raster.filled(2048, 1024, (5, 5, 5, 255)))
        assert (out.width, out.height) == (128, 64)

    def test_2048_square(self):
        out = make_thumbnail(Raster.filled(2048, 2048, (5, 5, 5, 255)))
        assert (out.width, out.height) == (128, 128)

    def test_small_unchanged(self):
        raster = checkerboard(100, 50)
        assert make_thumbnail(raster) is raster

    def test_idempotent(self):
        out = make_thumbnail(Raster.filled(1000, 999, (1, 1, 1, 1)))
        assert make_thumbnail(out) == out

    def test_bound_and_aspect_over_sizes(self):
        rng = random.Random(11)
        for _ in range(30):
            w = rng.randint(1, 2048)
            h = rng.randint(1, 2048)
            out = make_thumbnail(Raster.filled(w, h, (7, 7, 7, 255)))
            assert max(out.width, out.height) <= 128
            if max(w, h) > 128:
                ratio = 128 / max(w, h)
                assert abs(out.width - w * ratio) <= 1
                assert abs(out.height - h * ratio) <= 1

    def test_uniform_color_preserved(self):
        out = make_thumbnail(Raster.filled(300, 200, (200, 100, 50, 255)))
        assert (out.pixels == np.array([200, 100, 50, 255], dtype=np.uint8)).all()


class TestPngCodec:
    def test_decode_red_pixel_fixture(self):
        raster = decode_raster(pngref.RED_1PX)
        assert (raster.width, raster.height) == (1, 1)
        assert list(raster.pixels[0, 0]) == [255, 0, 0, 255]

    def test_roundtrip_pixels(self):
        rng = random.Random(5)
        pixels = np.frombuffer(rng.randbytes(6 * 4 * 4), dtype=np.uint8).reshape(4, 6, 4)
        raster = Raster(pixels.copy())
        again = decode_raster(encode_raster(raster))
        assert again == raster

    def test_decode_oracle_multirow(self):
        rows = [[(1, 2, 3, 4), (5, 6, 7, 8)], [(9, 10, 11, 12), (13, 14, 15, 16)]]
        raster = decode_raster(pngref.build_png(2, 2, rows))
        assert raster.pixels.tolist() == [[list(px) for px in row] for row in rows]

    def test_jpeg_is_unsupported_for_pixels(self):
        with pytest.raises(UnsupportedFormat):
            decode_raster(b"\xff\xd8\xff\xe0 fake jpeg")

    def test_corrupt_png(self):
        with pytest.raises(CorruptImage):
            decode_raster(b"\x89PNG\r\n\x1a\n truncated")
