from fractions import Fraction

from hypothesis import strategies as st

from kummerlab.newton import NewtonData
from kummerlab.valnum import LogInterval

primes = st.sampled_from([2, 3, 5, 7])

fractions = st.fractions(min_value=-8, max_value=8, max_denominator=6)


@st.composite
def bounded_intervals(draw):
    lo = draw(fractions)
    width = draw(st.fractions(min_value=Fraction(1, 6), max_value=6, max_denominator=6))
    return LogInterval(lo, lo + width, draw(st.booleans()), draw(st.booleans()))


@st.composite
def newton_data(draw, min_degree=-3, max_degree=3):
    degrees = draw(
        st.lists(
            st.integers(min_degree, max_degree), min_size=1, max_size=4, unique=True
        )
    )
    return NewtonData(tuple(sorted((d, draw(fractions)) for d in degrees)))
