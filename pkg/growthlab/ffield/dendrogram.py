"""Single linkage merge tree of a finite subset of F_q(t).

Because the distance is an ultrametric, the clusters at level r are the classes of a ~ b when |a - b| <= q^r, and
every intersection of the set with a ball is one of the clusters or empty.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Any

from ffield.valuation import dist
from setcore.finite_set import EmptyInputError

if TYPE_CHECKING:
    from collections.abc import Iterator

    from setcore.finite_set import FiniteSet


@dataclass(frozen=True)
class DendrogramNode:
    """Cluster of member indices merged at the radius exponent, None for a leaf."""

    members: tuple[int, ...]
    radius: int | None
    children: tuple[DendrogramNode, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def nodes(self) -> Iterator[DendrogramNode]:
        """Yield the subtree, children before parents."""
        for child in self.children:
            yield from child.nodes()
        yield self


class Dendrogram:
    def __init__(self, A: FiniteSet) -> None:
        """Merge the points of A level by level over the distinct pairwise distances.

        Raises:
            EmptyInputError: If A is empty
        """
        if not A:
            error_message = "A dendrogram needs at least one point"
            raise EmptyInputError(error_message)
        self.A = A
        self.root = self._build()

    def _build(self) -> DendrogramNode:
        size = len(self.A)
        distance = {
            (i, j): dist(self.A[i], self.A[j]).exponent for i in range(size) for j in range(size) if i != j
        }
        current = [DendrogramNode((i,), None) for i in range(size)]
        for radius in sorted(set(distance.values())):
            groups: list[list[DendrogramNode]] = []
            for node in current:
                group = next(
                    (group for group in groups if distance[group[0].members[0], node.members[0]] <= radius),
                    None,
                )
                if group is None:
                    groups.append([node])
                else:
                    group.append(node)
            current = [
                group[0]
                if len(group) == 1
                else DendrogramNode(tuple(sorted(i for node in group for i in node.members)), radius, tuple(group))
                for group in groups
            ]
        return current[0]

    @cached_property
    def nodes(self) -> tuple[DendrogramNode, ...]:
        return tuple(self.root.nodes())

    def cluster(self, node: DendrogramNode) -> FiniteSet:
        return self.A.subset(node.members)

    def clusters(self) -> set[FiniteSet]:
        return {self.cluster(node) for node in self.nodes}

    def node_json(self, node: DendrogramNode) -> dict[str, Any]:
        data: dict[str, Any] = {"members": self.cluster(node).to_json(), "radius": node.radius}
        if node.children:
            data["children"] = [self.node_json(child) for child in node.children]
        return data

    def to_json(self) -> dict[str, Any]:
        return {"field": self.A.field.tag, "root": self.node_json(self.root)}
