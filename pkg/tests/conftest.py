from fractions import Fraction
from pathlib import Path

import pytest

from kummerlab.annuli import Annulus
from kummerlab.residues import LaurentExt
from kummerlab.samples import graph_suite
from kummerlab.torsors.classes import TorsorClass

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def graphs():
    return graph_suite()


@pytest.fixture
def counterexample() -> TorsorClass:
    """1 + T + 27·T^-1 at p = 3 on (-3, 0)"""
    laurent = LaurentExt.from_rationals(3, {0: 1, 1: 1, -1: 27})
    return TorsorClass.from_laurent(3, laurent, Annulus.open(-3, 0))


@pytest.fixture
def coordinate() -> TorsorClass:
    """T at p = 3 on (-1, 1)"""
    return TorsorClass.from_laurent(
        3, LaurentExt.from_rationals(3, {1: 1}), Annulus.open(-1, 1)
    )


@pytest.fixture
def gentle() -> TorsorClass:
    """1 + 3T at p = 3 on (-1/2, 1/2); its radius at a unit point is -1/2"""
    return TorsorClass.from_laurent(
        3,
        LaurentExt.from_rationals(3, {0: 1, 1: 3}),
        Annulus.open(Fraction(-1, 2), Fraction(1, 2)),
    )
