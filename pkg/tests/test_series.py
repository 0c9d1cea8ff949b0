from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from sympconn.series import TruncatedSeries, series_exp

CAP = 4

series = st.builds(
    lambda cs: TruncatedSeries(CAP, cs),
    st.lists(st.fractions(max_denominator=8), min_size=CAP + 1, max_size=CAP + 1),
)


@given(series, series, series)
def test_series_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == TruncatedSeries(CAP, [Fraction(0)] * (CAP + 1))


@given(series, series)
def test_truncation_is_a_ring_map(a, b):
    assert (a * b).restrict(2) == (a.restrict(2) * b.restrict(2)).restrict(2)


@given(st.lists(st.fractions(max_denominator=6), min_size=CAP, max_size=CAP))
def test_exp_turns_sums_into_products(tail):
    x = TruncatedSeries(CAP, [Fraction(0)] + tail)
    one, zero = Fraction(1), Fraction(0)
    ex = series_exp(x, one, zero)
    e2x = series_exp(x + x, one, zero)
    assert ex * ex == e2x
    # exp(x) exp(-x) = 1
    inv = series_exp(-x, one, zero)
    assert ex * inv == TruncatedSeries.constant(CAP, one, zero)
