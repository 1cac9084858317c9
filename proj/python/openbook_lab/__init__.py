"""Abstract open books: overtwisted regions, certificates and Legendrian surgery."""

import json

from . import _core
from ._core import Book, Certificate, Error, ParseError, render_svg, verify

__all__ = [
    "Book",
    "Certificate",
    "Error",
    "ParseError",
    "catalog",
    "catalog_book",
    "check",
    "read_book",
    "render_svg",
    "search",
    "surgery",
    "verify",
]


def read_book(path):
    with open(path, encoding="utf-8") as f:
        return Book(f.read())


def check(book):
    return json.loads(_core.check(book))


def search(book, depth=3, multiplicity=1, handle_positions=1, time_cap=60.0):
    """Returns (certificate or None, report dict)."""
    cert, report = _core.search(book, depth, multiplicity, handle_positions, time_cap)
    return cert, json.loads(report)


def surgery(book, depth=3, multiplicity=1, time_cap=60.0):
    return json.loads(_core.surgery(book, depth, multiplicity, time_cap))


def catalog():
    return [_core.catalog_entry(name) for name in _core.catalog_names()]


def catalog_book(name):
    return Book(_core.catalog_entry(name)["stanza"])
