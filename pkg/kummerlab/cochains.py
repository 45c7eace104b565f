"""Semi-graphs, harmonic cochains with values in Z/nZ, bridges and θ.

An edge is stored with a reference orientation tail -> head; a branch that
is not attached to a vertex is open (None). A cochain assigns one residue
per edge in that orientation, the opposite orientation carrying the
negative value.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from kummerlab.errors import InputError, ModulusMismatch, NotHarmonic, UnknownEdge

logger = logging.getLogger(__name__)

# stands for every open branch at once when building cycle bases
_OPEN_END = "\x00open"


@dataclass(frozen=True)
class Edge:
    """An edge with branches tail -> head; None marks an open branch"""

    name: str
    tail: Optional[str]
    head: Optional[str]

    def is_closed(self) -> bool:
        return self.tail is not None and self.head is not None

    def is_loop(self) -> bool:
        return self.is_closed() and self.tail == self.head


@dataclass(frozen=True)
class SemiGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError(f"Repeated vertex names: {list(self.vertices)}")
        names = [edge.name for edge in self.edges]
        if len(set(names)) != len(names):
            raise InputError(f"Repeated edge names: {names}")
        known = set(self.vertices)
        for edge in self.edges:
            for branch in (edge.tail, edge.head):
                if branch is not None and branch not in known:
                    raise InputError(
                        f"Edge '{edge.name}' is attached to unknown vertex '{branch}'"
                    )

    @classmethod
    def from_mapping(
        cls, vertices, edges: Mapping[str, Tuple[Optional[str], Optional[str]]]
    ) -> "SemiGraph":
        return cls(
            tuple(vertices),
            tuple(Edge(name, tail, head) for name, (tail, head) in edges.items()),
        )

    def edge_names(self) -> Tuple[str, ...]:
        return tuple(edge.name for edge in self.edges)

    def edge(self, name: str) -> Edge:
        for edge in self.edges:
            if edge.name == name:
                return edge
        raise UnknownEdge(f"Edge '{name}' not found in semi-graph")


@dataclass(frozen=True)
class Cochain:
    """Residues mod n on the edges, in their reference orientation"""

    n: int
    values: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise InputError(f"Cochain modulus must be an integer ≥ 2, got {self.n!r}")
        reduced = tuple(sorted((name, value % self.n) for name, value in self.values))
        object.__setattr__(self, "values", reduced)

    @classmethod
    def from_mapping(cls, n: int, values: Mapping[str, int]) -> "Cochain":
        return cls(n, tuple(values.items()))

    def as_dict(self) -> Dict[str, int]:
        return dict(self.values)

    def value(self, edge: str) -> int:
        try:
            return self.as_dict()[edge]
        except KeyError:
            raise UnknownEdge(f"Cochain has no value on edge '{edge}'")

    def scale(self, factor: int) -> "Cochain":
        return Cochain(self.n, tuple((name, value * factor) for name, value in self.values))

    def is_zero(self) -> bool:
        return all(value == 0 for _, value in self.values)


@dataclass(frozen=True)
class HarmStructure:
    """Harm(G, Z/nZ) as a sum of cyclic groups with one generator each"""

    n: int
    invariant_factors: Tuple[int, ...]
    generators: Tuple[Cochain, ...]

    def order(self) -> int:
        result = 1
        for factor in self.invariant_factors:
            result *= factor
        return result


def incidence_matrix(graph: SemiGraph) -> Matrix:
    """Signed vertex/edge incidence: +1 at the head, -1 at the tail"""
    rows = {vertex: index for index, vertex in enumerate(graph.vertices)}
    matrix = [[0] * len(graph.edges) for _ in graph.vertices]
    for column, edge in enumerate(graph.edges):
        if edge.head is not None:
            matrix[rows[edge.head]][column] += 1
        if edge.tail is not None:
            matrix[rows[edge.tail]][column] -= 1
    return Matrix(len(graph.vertices), len(graph.edges), lambda i, j: matrix[i][j])


def _smith_diagonal(matrix: Matrix) -> List[int]:
    """Nonzero invariant factors of an integer matrix"""
    if matrix.rows == 0 or matrix.cols == 0:
        return []
    normal = smith_normal_form(matrix, domain=ZZ)
    diagonal = [abs(int(normal[i, i])) for i in range(min(normal.shape))]
    return [d for d in diagonal if d != 0]


def _multigraph(graph: SemiGraph, closed_only: bool = False) -> nx.MultiGraph:
    multigraph = nx.MultiGraph()
    multigraph.add_nodes_from(graph.vertices)
    for edge in graph.edges:
        if closed_only and not edge.is_closed():
            continue
        tail = _OPEN_END if edge.tail is None else edge.tail
        head = _OPEN_END if edge.head is None else edge.head
        multigraph.add_edge(tail, head, key=edge.name)
    return multigraph


def _cycle_basis(graph: SemiGraph) -> List[Dict[str, int]]:
    """Fundamental cycles, all open branches glued to one extra node"""
    multigraph = _multigraph(graph)
    forest = nx.Graph()
    forest.add_nodes_from(multigraph.nodes)
    tree_keys = set()
    for tail, head, key in nx.minimum_spanning_edges(
        multigraph, algorithm="kruskal", keys=True, data=False
    ):
        forest.add_edge(tail, head, key=key)
        tree_keys.add(key)
    by_name = {edge.name: edge for edge in graph.edges}
    basis = []
    for edge in graph.edges:
        if edge.name in tree_keys:
            continue
        tail = _OPEN_END if edge.tail is None else edge.tail
        head = _OPEN_END if edge.head is None else edge.head
        cycle = {edge.name: 1}
        path = nx.shortest_path(forest, head, tail)
        for start, end in zip(path, path[1:]):
            name = forest[start][end]["key"]
            step = by_name[name]
            step_tail = _OPEN_END if step.tail is None else step.tail
            cycle[name] = 1 if step_tail == start else -1
        basis.append(cycle)
    return basis


def harm_group(graph: SemiGraph, n: int) -> HarmStructure:
    """Harmonic cochains mod n

    The invariant factors come from the integer Smith normal form of the
    signed incidence matrix, specialized mod n; generators are the
    fundamental cycles of the graph with its open branches glued together.

    Args:
        graph: The semi-graph
        n: Modulus, at least 2

    Returns:
        The group structure with one generator per nontrivial factor
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InputError(f"Modulus must be an integer ≥ 2, got {n!r}")
    diagonal = _smith_diagonal(incidence_matrix(graph))
    factors = [gcd(d, n) for d in diagonal] + [n] * (len(graph.edges) - len(diagonal))
    factors = tuple(f for f in factors if f != 1)
    names = graph.edge_names()
    generators = tuple(
        Cochain(n, tuple((name, cycle.get(name, 0)) for name in names))
        for cycle in _cycle_basis(graph)
    )
    logger.debug("Harm mod %d: factors %s, %d generators", n, factors, len(generators))
    if len(generators) != len(factors):
        raise RuntimeError(
            f"Cycle basis of size {len(generators)} does not match factors {factors}"
        )
    return HarmStructure(n, factors, generators)


def vertex_sums(graph: SemiGraph, cochain: Cochain) -> Dict[str, int]:
    values = cochain.as_dict()
    sums = {vertex: 0 for vertex in graph.vertices}
    for edge in graph.edges:
        value = values[edge.name]
        if edge.head is not None:
            sums[edge.head] += value
        if edge.tail is not None:
            sums[edge.tail] -= value
    return {vertex: total % cochain.n for vertex, total in sums.items()}


def _check_total(graph: SemiGraph, cochain: Cochain) -> None:
    expected = set(graph.edge_names())
    present = set(name for name, _ in cochain.values)
    if expected != present:
        missing = sorted(expected - present)
        extra = sorted(present - expected)
        raise UnknownEdge(f"Cochain edges do not match graph: missing {missing}, extra {extra}")


def is_harmonic(graph: SemiGraph, cochain: Cochain, n: Optional[int] = None) -> bool:
    """Whether every vertex sum vanishes mod n

    Raises:
        ModulusMismatch: If n is given and differs from the cochain's modulus
        UnknownEdge: If the cochain is not total on the graph
    """
    if n is not None and n != cochain.n:
        raise ModulusMismatch(f"Cochain is mod {cochain.n}, expected mod {n}")
    _check_total(graph, cochain)
    return all(total == 0 for total in vertex_sums(graph, cochain).values())


def is_bridge(graph: SemiGraph, name: str) -> bool:
    """Whether removing the edge disconnects its two end vertices

    Raises:
        UnknownEdge: If the graph has no such edge
    """
    edge = graph.edge(name)
    if not edge.is_closed() or edge.is_loop():
        return False
    multigraph = _multigraph(graph, closed_only=True)
    multigraph.remove_edge(edge.tail, edge.head, key=name)
    return not nx.has_path(multigraph, edge.tail, edge.head)


def truncate(graph: SemiGraph) -> SemiGraph:
    """Drop every edge with an open branch"""
    return SemiGraph(graph.vertices, tuple(e for e in graph.edges if e.is_closed()))


def extend_zero(cochain: Cochain, graph: SemiGraph) -> Cochain:
    """Extend a harmonic cochain of the truncation by 0 on the removed edges

    Raises:
        NotHarmonic: If the input is not harmonic on the truncation
    """
    if not is_harmonic(truncate(graph), cochain):
        raise NotHarmonic("Only harmonic cochains of the truncation extend by zero")
    values = cochain.as_dict()
    return Cochain(
        cochain.n, tuple((name, values.get(name, 0)) for name in graph.edge_names())
    )


def eval_surjective(graph: SemiGraph, n: int, name: str) -> bool:
    """Whether evaluation at the edge is nonzero on Harm(truncate(G), Z/nZ)

    Raises:
        UnknownEdge: If the edge is not an edge of the truncation
    """
    truncated = truncate(graph)
    truncated.edge(name)
    structure = harm_group(truncated, n)
    return any(generator.value(name) != 0 for generator in structure.generators)


def theta_assemble(
    graph: SemiGraph, degrees: Mapping[str, int], n: int
) -> Tuple[Cochain, bool]:
    """Cochain of per-edge dominant degrees mod n, with its harmonicity

    Raises:
        UnknownEdge: If the degrees are not total on the edges
    """
    cochain = Cochain(n, tuple((name, int(value)) for name, value in degrees.items()))
    return cochain, is_harmonic(graph, cochain)
