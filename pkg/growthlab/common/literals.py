"""Strict matching helpers for the text literals accepted on the command line and in files."""
from __future__ import annotations

import re
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from re import Match, Pattern


class LiteralSyntaxError(Exception):
    """Exception raised when a literal does not match the expected format."""


def strict_fullmatch(pattern: Pattern[str] | str, string: str) -> Match[str]:
    """Stricter version of re.fullmatch that raises a LiteralSyntaxError if the whole string does not match.

    Surrounding whitespace is ignored.

    Raises:
        LiteralSyntaxError: If the string does not match
    """
    output = re.fullmatch(pattern, string.strip())

    if output is None:
        error_message = f"Could not parse {string!r}"
        raise LiteralSyntaxError(error_message)
    return output


def split_top_level(string: str, separator: str = ",") -> list[str]:
    """Split a string on a separator, ignoring separators nested inside brackets.

    Returns:
        The stripped pieces, an empty list for a blank string.
    """
    pieces: list[str] = []
    depth = 0
    current = ""
    for character in string:
        if character in "([{":
            depth += 1
        elif character in ")]}":
            depth -= 1
        if character == separator and depth == 0:
            pieces.append(current.strip())
            current = ""
        else:
            current += character
    if current.strip() or pieces:
        pieces.append(current.strip())
    return pieces
