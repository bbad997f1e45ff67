"""Exact-arithmetic workbench for sum-product estimates."""
