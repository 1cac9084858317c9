import json

import pytest

import openbook_lab as obl


def test_catalog_round_trip():
    for entry in obl.catalog():
        book = obl.Book(entry["stanza"])
        assert book.text() == entry["stanza"]
        assert obl.Book(book.text()) == book


def test_check_detects_the_planted_bigon():
    verdict = obl.check(obl.catalog_book("annulus-neg-stabilized-3x"))
    assert verdict["found"]
    assert obl.check(obl.catalog_book("disc-id"))["found"] is False


def test_search_verify_round_trip():
    book = obl.catalog_book("annulus-tau-inverse")
    cert, report = obl.search(book, depth=3)
    assert cert is not None and cert.steps <= 3
    assert obl.verify(book, obl.Certificate(cert.text())) == (True, "")
    assert obl.verify(obl.catalog_book("annulus-tau-plus"), cert)[0] is False
    json.loads(cert.json())


def test_tight_book_has_no_certificate():
    cert, report = obl.search(obl.catalog_book("annulus-tau-plus"), depth=2, multiplicity=1)
    assert cert is None
    assert report["found"] is False


def test_surgery_on_the_identity_annulus():
    report = obl.surgery(obl.catalog_book("surgery-annulus-id"), depth=2)
    assert report["conclusion"].startswith("no contradiction found")


def test_render_is_deterministic():
    book = obl.catalog_book("annulus-tau-inverse")
    svg = obl.render_svg(book, size=300)
    assert "<svg" in svg and svg == obl.render_svg(book, size=300)


def test_parse_errors_carry_a_type():
    with pytest.raises(obl.ParseError):
        obl.Book("surface g=x b=1\n")
    assert issubclass(obl.ParseError, obl.Error)
