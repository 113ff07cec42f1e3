import math

from hypothesis import given, strategies as st

from psimoment.accum import NeumaierSum


def test_cancellation_case():
    acc = NeumaierSum()
    for x in [1e16, 1.0, -1e16]:
        acc.add(x)
    assert acc.value == 1.0


@given(st.lists(st.floats(-1e12, 1e12), min_size=1, max_size=200))
def test_matches_fsum(xs):
    acc = NeumaierSum()
    for x in xs:
        acc.add(x)
    exact = math.fsum(xs)
    assert acc.value == exact or math.isclose(acc.value, exact, rel_tol=1e-15, abs_tol=1e-6)


def test_state_round_trip():
    acc = NeumaierSum()
    for x in [1e16, 3.14, -1e16, 2.71]:
        acc.add(x)
    s, c = acc.state
    restored = NeumaierSum(s, c)
    acc.add(1e-3)
    restored.add(1e-3)
    assert restored.value == acc.value
