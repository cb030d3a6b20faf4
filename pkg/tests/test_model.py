"""Model construction, invariants, and immutability."""

import random
from dataclasses import FrozenInstanceError
from datetime import date

import pytest

import nbgen
from sln import (
    Contact,
    Dataset,
    ImageRecord,
    InvalidEntry,
    MediaBlob,
    Notebook,
    RelatedUrl,
    TodoItem,
    WebsiteEntry,
    add_website,
    new_notebook,
    serialize_notebook_bytes,
    validate,
)


def make_site(**overrides) -> WebsiteEntry:
    fields = dict(
        name="Latest SOHO Images",
        location="http://soho.nascom.nasa.gov/data/realtime-images.html",
        date="2014-09-05",
        purpose="SOHO remote sensing data",
    )
    fields.update(overrides)
    return WebsiteEntry(**fields)


class TestNotebook:
    def test_new_notebook_is_empty(self):
        assert new_notebook().websites == ()

    def test_new_notebook_serializes_valid(self):
        report = validate(serialize_notebook_bytes(new_notebook()))
        assert report.valid and report.findings == ()

    def test_add_website_appends(self):
        nb = add_website(new_notebook(), make_site())
        assert len(nb.websites) == 1
        assert nb.websites[0].name == "Latest SOHO Images"

    def test_add_preserves_prior_entries(self):
        nb = new_notebook()
        names = ["alpha", "beta", "gamma", "delta"]
        for entry_name in names:
            nb = add_website(nb, make_site(name=entry_name))
        assert [site.name for site in nb.websites] == names

    def test_add_rejects_non_entry(self):
        with pytest.raises(InvalidEntry):
            add_website(new_notebook(), "not an entry")

    def test_zero_websites_is_legal(self):
        assert Notebook(()).websites == ()


class TestWebsiteEntry:
    def test_empty_name_rejected(self):
        with pytest.raises(InvalidEntry):
            make_site(name="")

    def test_impossible_date_rejected(self):
        with pytest.raises(InvalidEntry):
            make_site(date="2014-13-40")

    @pytest.mark.parametrize("bad", ["2014-9-05", "2014/09/05", "14-09-05", "2014-09-05 ", ""])
    def test_bad_date_lexical_forms(self, bad):
        with pytest.raises(InvalidEntry):
            make_site(date=bad)

    def test_date_string_normalized(self):
        assert make_site(date="2014-09-05").date == date(2014, 9, 5)

    def test_supplementary_plane_text_survives(self):
        site = make_site(purpose="\U00010000 plane one \U0001F600")
        assert site.purpose == "\U00010000 plane one \U0001F600"

    def test_control_characters_rejected(self):
        with pytest.raises(InvalidEntry):
            make_site(purpose="null byte \x00")

    def test_frozen(self):
        with pytest.raises(FrozenInstanceError):
            make_site().name = "other"

    def test_collections_become_tuples(self):
        site = make_site(related=[RelatedUrl("http://x/", "n")])
        assert isinstance(site.related, tuple)


class TestLeafTypes:
    def test_contact_requires_name_and_surname(self):
        with pytest.raises(InvalidEntry):
            Contact("", "Contact")
        with pytest.raises(InvalidEntry):
            Contact("New", "")

    def test_related_url_requires_value(self):
        with pytest.raises(InvalidEntry):
            RelatedUrl("")

    def test_todo_due_date_checked(self):
        with pytest.raises(InvalidEntry):
            TodoItem("check plots", "2014-00-01")
        assert TodoItem("check plots").due_date is None
        assert TodoItem("check plots").done is False

    def test_media_blob_rejects_bad_mime(self):
        with pytest.raises(InvalidEntry):
            MediaBlob("not a mime")
        with pytest.raises(InvalidEntry):
            MediaBlob("image/")

    def test_media_blob_encoded_length(self):
        assert MediaBlob("image/png", b"").encoded_length == 0
        assert MediaBlob("image/png", b"x").encoded_length == 4
        assert MediaBlob("image/png", b"xyz").encoded_length == 4
        assert MediaBlob("image/png", b"wxyz").encoded_length == 8


class TestImageRecord:
    def blob(self) -> MediaBlob:
        return MediaBlob("image/png", b"fake")

    def record(self, **overrides) -> ImageRecord:
        fields = dict(
            name="sun", full=self.blob(), thumbnail=self.blob(),
            full_width=2048, full_height=2048, thumb_width=128, thumb_height=128,
        )
        fields.update(overrides)
        return ImageRecord(**fields)

    def test_dimension_cap(self):
        assert self.record().full_width == 2048
        with pytest.raises(InvalidEntry):
            self.record(full_width=2049)
        with pytest.raises(InvalidEntry):
            self.record(full_height=2049)

    def test_thumbnail_no_larger_than_full(self):
        with pytest.raises(InvalidEntry):
            self.record(full_width=100, thumb_width=101)

    def test_positive_dimensions(self):
        with pytest.raises(InvalidEntry):
            self.record(thumb_height=0)


def test_random_entries_keep_invariants():
    rng = random.Random(1234)
    for _ in range(200):
        site = nbgen.website(rng)
        assert site.name
        assert isinstance(site.date, date)
        for image in site.images:
            assert image.full_width <= 2048 and image.full_height <= 2048
            assert image.thumb_width <= image.full_width
            assert image.thumb_height <= image.full_height
        for todo in site.todos:
            assert todo.due_date is None or isinstance(todo.due_date, date)


def test_insertion_order_preserved_under_random_adds():
    rng = random.Random(99)
    nb = new_notebook()
    expected = []
    for i in range(50):
        site = nbgen.website(rng, with_media=False)
        expected.append(site.name)
        nb = add_website(nb, site)
    assert [site.name for site in nb.websites] == expected


def test_smp_character_survives_serialize_and_reparse():
    from sln import parse_notebook

    site = make_site(purpose="\U00010000", other_notes=(nbgen.Note("\U0001D11E"),))
    nb = add_website(new_notebook(), site)
    again = parse_notebook(serialize_notebook_bytes(nb))
    assert again.websites[0].purpose == "\U00010000"
    assert again.websites[0].other_notes[0].text == "\U0001D11E"
