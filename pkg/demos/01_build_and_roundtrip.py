"""Build a notebook in code, serialize it, and read it back.

The canonical serializer is deterministic: equal notebooks always produce
byte-identical documents, which makes files diffable and shareable.
"""

from datetime import date

from sln import (
    Contact,
    RelatedUrl,
    TodoItem,
    WebsiteEntry,
    add_website,
    new_notebook,
    parse_notebook,
    serialize_notebook_bytes,
)

nb = new_notebook()
print(f"fresh notebook: {len(nb.websites)} websites")

site = WebsiteEntry(
    name="Latest SOHO Images",
    location="http://soho.nascom.nasa.gov/data/realtime-images.html",
    date=date(2014, 9, 5),
    purpose="SOHO remote sensing data",
    related=(
        RelatedUrl("http://sdo.gsfc.nasa.gov/data/", "SDO near-realtime image data"),
    ),
    contacts=(Contact("New", "Contact", "email@nasa.gov", "nasa.gov"),),
    todos=(TodoItem("check the NOAA solar plots", date(2014, 9, 10)),),
)
nb = add_website(nb, site)

document = serialize_notebook_bytes(nb)
print("-" * 60)
print(document.decode())
print("-" * 60)

again = parse_notebook(document)
print(f"reparsed equals original: {again == nb}")
print(f"second serialization byte-identical: "
      f"{serialize_notebook_bytes(again) == document}")
