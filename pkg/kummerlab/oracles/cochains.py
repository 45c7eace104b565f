"""Harmonic cochains by exhaustive enumeration of Z/nZ-labelings."""

import itertools
from typing import FrozenSet, Tuple

from kummerlab.cochains import Cochain, HarmStructure, SemiGraph, is_harmonic
from kummerlab.oracles.base import BaseOracle

# enumeration size above which the oracle refuses to run
MAX_LABELINGS = 10**6

Labeling = Tuple[int, ...]


class HarmEnumerationOracle(BaseOracle):
    """Harm(G, Z/nZ) as the set of all harmonic labelings"""

    name = "harm-enumeration"

    def compute(self, graph: SemiGraph, n: int) -> FrozenSet[Labeling]:
        names = graph.edge_names()
        if n ** len(names) > MAX_LABELINGS:
            raise ValueError(f"{n}^{len(names)} labelings exceed the enumeration limit")
        return frozenset(
            values
            for values in itertools.product(range(n), repeat=len(names))
            if is_harmonic(graph, Cochain(n, tuple(zip(names, values))))
        )

    @staticmethod
    def span(structure: HarmStructure, names) -> FrozenSet[Labeling]:
        """Subgroup generated by the generators of the structure"""
        n = structure.n
        elements = {tuple(0 for _ in names)}
        for generator in structure.generators:
            step = tuple(generator.value(name) for name in names)
            grown = set()
            for element in elements:
                current = element
                for _ in range(n):
                    grown.add(current)
                    current = tuple((a + b) % n for a, b in zip(current, step))
            elements = grown
        return frozenset(elements)

    def agrees(self, result: HarmStructure, graph: SemiGraph, n: int) -> bool:
        reference = self.compute(graph, n)
        if result.order() != len(reference):
            return False
        return self.span(result, graph.edge_names()) == reference
