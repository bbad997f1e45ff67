"""Contains PairGraph, a set of pairs G inside A x B."""
from __future__ import annotations

import json
from functools import cached_property
from typing import TYPE_CHECKING, Any

from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from fields.base import Field, FieldElement


class EdgeIndexError(Exception):
    """Exception raised when a PairGraph edge points outside of its left or right set."""


class PairGraph:
    """Bipartite graph on left x right stored as index pairs."""

    def __init__(self, left: FiniteSet, right: FiniteSet, edges: Iterable[tuple[int, int]]) -> None:
        self.left = left
        self.right = right
        self.edges: frozenset[tuple[int, int]] = frozenset((int(i), int(j)) for i, j in edges)
        for i, j in self.edges:
            if not (0 <= i < len(left) and 0 <= j < len(right)):
                error_message = f"Edge {(i, j)} is outside of {len(left)} x {len(right)}"
                raise EdgeIndexError(error_message)

    @classmethod
    def complete(cls, left: FiniteSet, right: FiniteSet) -> PairGraph:
        return cls(left, right, ((i, j) for i in range(len(left)) for j in range(len(right))))

    @classmethod
    def from_pairs(
        cls,
        left: FiniteSet,
        right: FiniteSet,
        pairs: Iterable[tuple[FieldElement, FieldElement]],
    ) -> PairGraph:
        return cls(left, right, ((left.index(a), right.index(b)) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairGraph):
            return NotImplemented
        return (self.left, self.right, self.edges) == (other.left, other.right, other.edges)

    def __hash__(self) -> int:
        return hash((self.left, self.right, self.edges))

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def pairs(self) -> Iterator[tuple[FieldElement, FieldElement]]:
        """Yield the edges as element pairs in index order."""
        for i, j in self.sorted_edges:
            yield self.left[i], self.right[j]

    @cached_property
    def _right_neighbours(self) -> tuple[frozenset[int], ...]:
        neighbours: list[set[int]] = [set() for _ in range(len(self.left))]
        for i, j in self.edges:
            neighbours[i].add(j)
        return tuple(frozenset(n) for n in neighbours)

    @cached_property
    def _left_neighbours(self) -> tuple[frozenset[int], ...]:
        neighbours: list[set[int]] = [set() for _ in range(len(self.right))]
        for i, j in self.edges:
            neighbours[j].add(i)
        return tuple(frozenset(n) for n in neighbours)

    def right_neighbours(self, i: int) -> frozenset[int]:
        """Indices of B_G(a) for the left element with index i."""
        return self._right_neighbours[i]

    def left_neighbours(self, j: int) -> frozenset[int]:
        """Indices of A_G(b) for the right element with index j."""
        return self._left_neighbours[j]

    def degree(self, i: int) -> int:
        return len(self._right_neighbours[i])

    def restricted(self, edges: Iterable[tuple[int, int]]) -> PairGraph:
        """Graph on the same vertex sets with only the given edges."""
        return PairGraph(self.left, self.right, edges)

    def to_json(self) -> dict[str, Any]:
        return {
            "field": self.left.field.tag,
            "A": self.left.to_json(),
            "B": self.right.to_json(),
            "edges": [list(edge) for edge in self.sorted_edges],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any], field: Field) -> PairGraph:
        return cls(FiniteSet.from_json(field, data["A"]), FiniteSet.from_json(field, data["B"]), data["edges"])

    def __str__(self) -> str:
        return json.dumps(self.to_json())
