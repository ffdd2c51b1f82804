import math
from fractions import Fraction

from hypothesis import strategies as st

# Small rationals keep the exact-arithmetic properties fast while still
# exercising carry/reduction paths.
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)

coeff_lists = st.lists(rationals, min_size=0, max_size=9)


@st.composite
def intervals(draw, max_denominator=12):
    a = draw(st.fractions(min_value=-3, max_value=3, max_denominator=max_denominator))
    width = draw(
        st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=max_denominator)
    )
    return a, a + width


def monomial_jets(d: int, n: int, x: Fraction) -> tuple:
    """Exact derivatives 0..n-1 of x**d at a rational point."""
    return tuple(
        math.perm(d, j) * x ** (d - j) if j <= d else Fraction(0) for j in range(n)
    )
