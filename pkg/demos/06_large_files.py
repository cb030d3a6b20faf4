"""Streaming over a large synthetic notebook.

stream_stats and validate never buffer payloads, so memory stays flat no
matter how big the datasets grow.  This generates ~20 MB; scale the spec
up to hundreds of MB and the numbers stay proportional.
"""

import resource
import tempfile
import time
from pathlib import Path

from sln import FixtureSpec, generate_fixture, stream_stats, validate

spec = FixtureSpec(
    website_count=5, datasets_per_site=10, dataset_bytes=400_000,
    images_per_site=1, seed=2014,
)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "big.sln"
    started = time.perf_counter()
    manifest = generate_fixture(spec, path)
    print(f"generated {manifest.file_bytes / 1e6:.1f} MB "
          f"in {time.perf_counter() - started:.2f}s")

    started = time.perf_counter()
    with open(path, "rb") as handle:
        stats = stream_stats(handle)
    print(f"stream_stats in {time.perf_counter() - started:.2f}s: {stats}")
    print(f"matches generator manifest: {stats == manifest.stats()}")

    started = time.perf_counter()
    with open(path, "rb") as handle:
        report = validate(handle)
    print(f"validate in {time.perf_counter() - started:.2f}s: valid={report.valid}")

peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
print(f"peak process memory: {peak:.0f} MB")
