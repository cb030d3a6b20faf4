"""Acceptance suite: one test per release criterion, at stated tolerances.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
PASS lines.  The whole suite is library + CLI only; no UI involvement.
"""

import random
import subprocess
import sys
import time

import pytest

import nbgen
from conftest import SAMPLE_PATH
from sln import (
    FixtureSpec,
    Raster,
    ScaleFactor,
    decode_data_uri,
    encode_data_uri,
    generate_fixture,
    parse_notebook,
    scale,
    serialize_notebook_bytes,
    validate,
)
from sln.schema import Severity

from test_search import as_tuples, brute_force
from sln import build_index, query


def ok(line: str) -> None:
    print(f"ACCEPTANCE PASS: {line}")


def test_sample_document_fidelity(sample_bytes):
    started = time.perf_counter()
    nb = parse_notebook(sample_bytes)
    assert len(nb.websites) == 1
    site = nb.websites[0]
    assert site.name == "Latest SOHO Images"
    assert site.purpose == "SOHO remote sensing data"
    assert site.date.isoformat() == "2014-09-05"
    assert len(site.related) == 4
    assert len(site.contacts) == 1

    report = validate(sample_bytes)
    assert report.valid and len(report.findings) == 0

    first = serialize_notebook_bytes(nb)
    second = serialize_notebook_bytes(parse_notebook(first))
    assert first == second

    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    ok(f"sample fidelity: model fields, 0 findings, byte-stable reserialization "
       f"({elapsed * 1000:.0f} ms)")


def test_schema_mutation_suite(sample_bytes):
    def rules_of(data: bytes) -> set:
        return {f.rule_id for f in validate(data).findings}

    no_surname = sample_bytes.replace(b' surname="Contact"', b"")
    report = validate(no_surname)
    errors = [f for f in report.findings if f.severity is Severity.ERROR]
    assert len(errors) == 1
    assert errors[0].rule_id == "SLN-ATT-002"  # RequiredAttribute
    assert errors[0].path.endswith("/contacts/contact")

    reordered = sample_bytes.replace(
        b"<email>email@nasa.gov</email>\n      <webpage>nasa.gov</webpage>",
        b"<webpage>nasa.gov</webpage>\n      <email>email@nasa.gov</email>",
    )
    assert reordered != sample_bytes
    assert rules_of(reordered) == {"SLN-SEQ-002"}  # SequenceOrder only

    contact = (
        b'<contact name="New" surname="Contact">\n'
        b"      <email>email@nasa.gov</email>\n"
        b"      <webpage>nasa.gov</webpage>\n"
        b"      <notes>New Contact</notes>\n"
        b"    </contact>"
    )
    assert contact in sample_bytes
    duplicated = sample_bytes.replace(contact, contact + b"\n    " + contact)
    assert validate(duplicated).valid  # maxOccurs unbounded

    unqualified = sample_bytes.replace(b"<email>", b'<email xmlns="">')
    assert rules_of(unqualified) == {"SLN-NS-002"}  # NamespaceQualified only

    ok("schema mutations: required-attribute, sequence-order, unbounded repeat, "
       "namespace qualification - each triggers exactly its rule")


def test_round_trip_property():
    rng = random.Random(20140905)
    failures = 0
    for _ in range(1000):
        nb = nbgen.notebook(rng)
        data = serialize_notebook_bytes(nb)
        if parse_notebook(data) != nb or not validate(data).valid:
            failures += 1
    assert failures == 0
    ok("round trip: 1000 generated notebooks reparse equal and validate clean")


def test_media_laws():
    rng = random.Random(2397)
    for _ in range(10_000):
        payload = rng.randbytes(rng.randrange(48))
        assert decode_data_uri(encode_data_uri("application/octet-stream", payload)) \
            == ("application/octet-stream", payload)

    grid = (1, 2, 3, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 127, 255, 500, 1023, 2047, 2048)
    for width in grid:
        for height in grid:
            raster = Raster.filled(width, height, (1, 2, 3, 4))
            for factor in ScaleFactor:
                out = scale(raster, factor)
                k = factor.value
                assert out.width == max(1, width // k)
                assert out.height == max(1, height // k)

    square = Raster.filled(2048, 2048, (8, 8, 8, 255))
    for ratio, side in (("1:2", 1024), ("1:4", 512), ("1:8", 256)):
        out = scale(square, ScaleFactor.from_ratio(ratio))
        assert (out.width, out.height) == (side, side)

    ok(f"media laws: 10^4 data-URI round trips, scale law over a "
       f"{len(grid)}x{len(grid)}x4 grid, 2048^2 -> 1024/512/256")


def test_search_oracle():
    rng = random.Random(111)
    for _ in range(1000):
        nb = nbgen.notebook(rng, max_sites=4, with_media=False)
        index = build_index(nb)
        needle = nbgen.text(rng, 3)
        assert as_tuples(query(index, needle)) == brute_force(nb, needle)
        extended = needle + rng.choice("aZß9 .")
        assert set(query(index, extended).entry_ids()) <= set(
            query(index, needle).entry_ids()
        )
    ok("search oracle: 1000 notebook/query pairs equal brute force; "
       "narrowing holds under extension")


_MEASURE = (
    "import resource, sys\n"
    "from sln.cli import main\n"
    "rc = main(sys.argv[2:])\n"
    "peak_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss\n"
    "open(sys.argv[1], 'w').write(str(peak_kb))\n"
    "sys.exit(rc)\n"
)


def _timed_cli(peak_file, *args) -> tuple[float, int]:
    """Run one CLI command in a fresh process; return (seconds, peak bytes)."""
    started = time.perf_counter()
    result = subprocess.run(
        [sys.executable, "-c", _MEASURE, str(peak_file), *map(str, args)],
        capture_output=True, text=True,
    )
    elapsed = time.perf_counter() - started
    assert result.returncode == 0, result.stderr
    return elapsed, int(peak_file.read_text()) * 1024


@pytest.mark.slow
def test_streaming_performance(tmp_path):
    large_spec = FixtureSpec(
        website_count=100, datasets_per_site=10, dataset_bytes=400_000,
        images_per_site=1, seed=400,
    )
    small_spec = FixtureSpec(
        website_count=10, datasets_per_site=10, dataset_bytes=400_000,
        images_per_site=1, seed=40,
    )
    large = tmp_path / "large.sln"
    small = tmp_path / "small.sln"
    manifest = generate_fixture(large_spec, large)
    generate_fixture(small_spec, small)
    assert 380e6 <= manifest.file_bytes <= 420e6
    assert abs(manifest.file_bytes - large_spec.target_bytes) <= 0.05 * large_spec.target_bytes

    peak_file = tmp_path / "peak"
    stats_time, stats_peak = _timed_cli(peak_file, "stats", large)
    validate_time, validate_peak = _timed_cli(peak_file, "validate", large, "--lenient")
    total = stats_time + validate_time
    peak = max(stats_peak, validate_peak)
    assert total <= 15.0, f"large fixture took {total:.1f}s"
    assert peak <= 512 * 1024 * 1024, f"peak {peak / 1e6:.0f} MB"

    small_stats_time, small_stats_peak = _timed_cli(peak_file, "stats", small)
    small_validate_time, small_validate_peak = _timed_cli(
        peak_file, "validate", small, "--lenient"
    )
    small_total = small_stats_time + small_validate_time
    assert small_total <= 1.5, f"small fixture took {small_total:.2f}s"

    # 10x input growth must not double streaming memory.
    small_peak = max(small_stats_peak, small_validate_peak)
    assert peak < 2 * small_peak, f"{peak} vs {small_peak}"

    ok(f"streaming: {manifest.file_bytes / 1e6:.0f} MB stats+validate in "
       f"{total:.1f}s <= 15s, peak {peak / 1e6:.0f} MB <= 512 MB; "
       f"40 MB pair in {small_total:.2f}s <= 1.5s; "
       f"10x size -> {peak / small_peak:.2f}x memory")
