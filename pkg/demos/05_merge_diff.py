"""Merging shared notebooks and diffing revisions.

Entries are identified by (name, location), so two labs exchanging files
can merge their notebooks and see field-level differences regardless of
entry order.
"""

from dataclasses import replace

from sln import (
    Contact,
    MergePolicy,
    Notebook,
    WebsiteEntry,
    diff,
    merge,
    patch,
)


def site(name, purpose=""):
    return WebsiteEntry(name=name, location=f"http://{name}.example/",
                        date="2014-09-05", purpose=purpose)


mine = Notebook((site("soho", "images"), site("sdo", "browse data")))
theirs = Notebook((site("sdo", "browse data, updated"), site("noaa", "forecasts")))

for policy in MergePolicy:
    merged = merge(mine, theirs, policy)
    print(f"merge {policy.name:14} -> {[s.name for s in merged.websites]}")

print()
before = mine
after = Notebook((
    replace(mine.websites[0], contacts=(Contact("New", "Contact"),)),
    site("lmsal", "event listings"),
))
changes = diff(before, after)
for change in changes:
    print(f"  {type(change).__name__}: "
          f"{getattr(change, 'key', getattr(change, 'order', ''))}")

print(f"patch(before, changes) == after: {patch(before, changes) == after}")
