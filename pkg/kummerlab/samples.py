"""Bundled test vectors: random μ_p classes and small semi-graphs."""

import random
from dataclasses import dataclass
from typing import Dict, List

from kummerlab.annuli import Annulus
from kummerlab.cochains import Edge, SemiGraph
from kummerlab.residues import ExtScalar, LaurentExt
from kummerlab.torsors.classes import TorsorClass
from kummerlab.torsors.radii import RigidPoint
from kummerlab.valnum import require_prime


@dataclass(frozen=True)
class SampleClass:
    """A class on the annulus (-1, 1) with a unit rigid point to probe at"""

    torsor: TorsorClass
    point: RigidPoint
    dominant: int


def _unit(rng: random.Random, p: int) -> int:
    value = rng.randint(1, 4 * p)
    while value % p == 0:
        value = rng.randint(1, 4 * p)
    return value * rng.choice((1, -1))


def random_class(rng: random.Random, p: int, index: int = 0) -> SampleClass:
    """g = Σ u_k p^(e_k) T^k with e_k ≥ |k - i0|, so T^{i0} dominates on (-1, 1)"""
    i0 = rng.randint(-3, 3)
    coefficients = {i0: ExtScalar.of(p, _unit(rng, p))}
    for k in range(-3, 4):
        if k != i0 and rng.random() < 0.6:
            exponent = abs(k - i0) + rng.randint(0, 2)
            coefficients[k] = ExtScalar.of(p, _unit(rng, p), exponent)
    laurent = LaurentExt(p, tuple(coefficients.items()))
    torsor = TorsorClass.from_laurent(p, laurent, Annulus.open(-1, 1))
    point = RigidPoint.at_magnitude(p, 0, _unit(rng, p), tag=f"α{index}")
    return SampleClass(torsor, point, i0)


def random_class_suite(p: int, count: int, seed: int = 0) -> List[SampleClass]:
    """Deterministic list of coefficient-level classes for a given seed"""
    require_prime(p)
    rng = random.Random(f"{seed}:{p}")
    return [random_class(rng, p, index) for index in range(count)]


def graph_suite() -> Dict[str, SemiGraph]:
    """Small semi-graphs with at most six edges"""
    return {
        "annulus": SemiGraph((), (Edge("e", None, None),)),
        "loop": SemiGraph(("v",), (Edge("e", "v", "v"),)),
        "path": SemiGraph(("a", "b"), (Edge("e", "a", "b"),)),
        "double-edge": SemiGraph(
            ("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b"))
        ),
        "theta": SemiGraph(
            ("a", "b"),
            (Edge("e1", "a", "b"), Edge("e2", "a", "b"), Edge("e3", "b", "a")),
        ),
        "triangle": SemiGraph(
            ("a", "b", "c"),
            (Edge("ab", "a", "b"), Edge("bc", "b", "c"), Edge("ca", "c", "a")),
        ),
        "dumbbell": SemiGraph(
            ("a", "b"),
            (Edge("la", "a", "a"), Edge("bridge", "a", "b"), Edge("lb", "b", "b")),
        ),
        "star-open": SemiGraph(
            ("v",),
            (Edge("o1", "v", None), Edge("o2", "v", None), Edge("o3", None, "v")),
        ),
        "tadpole-open": SemiGraph(
            ("a", "b"),
            (Edge("loop", "a", "a"), Edge("stem", "a", "b"), Edge("cusp", "b", None)),
        ),
        "k4": SemiGraph(
            ("a", "b", "c", "d"),
            (
                Edge("ab", "a", "b"),
                Edge("ac", "a", "c"),
                Edge("ad", "a", "d"),
                Edge("bc", "b", "c"),
                Edge("bd", "b", "d"),
                Edge("cd", "c", "d"),
            ),
        ),
    }
