"""Instant search over entries and per-tab row filtering.

Typing another character can only narrow the result set, so a UI can
re-query on every keystroke.
"""

from sln import Notebook, WebsiteEntry, build_index, filter_rows, query


def site(name, location, purpose):
    return WebsiteEntry(name=name, location=location, date="2014-09-05", purpose=purpose)


nb = Notebook((
    site("Latest SOHO Images", "http://soho.nascom.nasa.gov/", "SOHO remote sensing data"),
    site("SDO Image Data", "http://sdo.gsfc.nasa.gov/data/", "AIA and HMI browse data"),
    site("NOAA SWPC", "http://www.swpc.noaa.gov/", "space weather prediction"),
    site("LMSAL Latest Events", "http://www.lmsal.com/", "solar event listings"),
))

index = build_index(nb)
for needle in ("", "s", "so", "soh", "soho"):
    hits = query(index, needle)
    names = [nb.websites[h.entry].name for h in hits.hits]
    print(f"query {needle!r:8} -> {names}")

print()
rows = [
    {"name": "AIA 304", "notes": "chromosphere, filament eruption"},
    {"name": "AIA 171", "notes": "quiet corona"},
    {"name": "HMI", "notes": "magnetogram, active region 12158"},
]
for keyword in ("", "aia", "magneto", "eruption"):
    kept = filter_rows(rows, keyword)
    print(f"filter {keyword!r:12} -> {[row['name'] for row in kept]}")
