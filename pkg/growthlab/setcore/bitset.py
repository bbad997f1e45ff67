"""Bitset backed sumsets for small prime fields.

A subset of F_p is an int whose bit r is set when the residue r is a member. Adding b to every member is a rotation
of the p low bits.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable


def to_mask(residues: Iterable[int]) -> int:
    mask = 0
    for residue in residues:
        mask |= 1 << residue
    return mask


def from_mask(mask: int) -> list[int]:
    residues: list[int] = []
    while mask:
        low_bit = mask & -mask
        residues.append(low_bit.bit_length() - 1)
        mask ^= low_bit
    return residues


def rotate(mask: int, shift: int, p: int) -> int:
    """Rotate the p low bits of mask left by shift, which is the translate by shift modulo p."""
    shift %= p
    full = (1 << p) - 1
    return ((mask << shift) | (mask >> (p - shift))) & full


def sumset_residues(left: Iterable[int], right: Iterable[int], p: int) -> list[int]:
    """Residues of left + right in F_p, ascending."""
    left_mask = to_mask(left)
    result = 0
    for shift in right:
        result |= rotate(left_mask, shift, p)
    return from_mask(result)
