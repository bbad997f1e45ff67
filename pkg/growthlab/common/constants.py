"""Contains useful constants."""

from __future__ import annotations

from paved_path import PavedPath

from growthlab.settings import BASE_DIR as _BASE_DIR
from growthlab.settings import FIXTURES_DIR as _FIXTURES_DIR
from growthlab.settings import REPORTS_DIR as _REPORTS_DIR

BASE_DIR = PavedPath(_BASE_DIR)
REPORTS_DIR = PavedPath(_REPORTS_DIR)
FIXTURES_DIR = PavedPath(_FIXTURES_DIR)
CHECKS_DIR = BASE_DIR / "checks"
