"""Ignore this file."""
