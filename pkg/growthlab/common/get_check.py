"""Registry that returns the check plugin for a lemma id.

To do this checks must be imported, the registry imports every module in the checks folder the first time it is
used.
"""
from __future__ import annotations

import importlib
from functools import cache

from common.abstract_check import AbstractCheck
from common.constants import CHECKS_DIR


class UnknownCheckError(Exception):
    """Exception raised when a campaign names a lemma id that no check plugin provides."""


def import_checks() -> None:
    """Import all plugins in the checks folder so they are available to be used."""
    for check in sorted(CHECKS_DIR.glob("*")):
        # Allow a plugin to be a package as well as a single module
        if check.is_dir() and (check / "__init__.py").exists():
            importlib.import_module(f"checks.{check.name}")
        elif check.suffix == ".py" and check.stem != "__init__":
            importlib.import_module(f"checks.{check.stem}")


def _concrete_subclasses(cls: type[AbstractCheck]) -> list[type[AbstractCheck]]:
    found: list[type[AbstractCheck]] = []
    for subclass in cls.__subclasses__():
        if hasattr(subclass, "LEMMA"):
            found.append(subclass)
        found.extend(_concrete_subclasses(subclass))
    return found


@cache
def registry() -> dict[str, type[AbstractCheck]]:
    import_checks()
    return {check.LEMMA: check for check in _concrete_subclasses(AbstractCheck)}


def known_lemmas() -> list[str]:
    return sorted(registry())


def get_check(lemma: str) -> AbstractCheck:
    """Return the check plugin for a lemma id.

    Raises:
        UnknownCheckError: If no plugin has the lemma id
    """
    try:
        return registry()[lemma]()
    except KeyError:
        error_message = f"No check found for {lemma}, known checks are {', '.join(known_lemmas())}"
        raise UnknownCheckError(error_message) from None
