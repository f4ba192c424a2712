from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidfoliation.braidword import (
    BraidWord,
    Budget,
    WordError,
    apply_word_move,
    certify_trivial,
    closure_invariants,
    conjugate,
    destabilize,
    destabilize_with_sign,
    example_word,
    exchange,
    free_reduce,
    reduced,
    stabilize,
)


def _inv(w):
    i = closure_invariants(w)
    return i.strands, i.exponent_sum, i.component_count


def test_invariant_examples():
    i = closure_invariants(BraidWord(3, (1, 2, -1)))
    assert (i.exponent_sum, i.component_count) == (1, 2)
    assert i.permutation == (2, 1, 0)
    i = closure_invariants(BraidWord(4, (1, 2, 3)))
    assert i.component_count == 1
    assert closure_invariants(BraidWord(5)).component_count == 5


def test_move_examples():
    assert destabilize(BraidWord(2, (1,))) == BraidWord(1)
    w = BraidWord(4, (1, 3, 2, -3))
    out = exchange(w, 1)
    assert out == BraidWord(4, (1, -3, 2, 3))
    assert _inv(out) == _inv(w)
    s = stabilize(BraidWord(1), +1)
    assert s == BraidWord(2, (1,)) and closure_invariants(s).exponent_sum == 1


def test_move_errors():
    with pytest.raises(WordError):
        destabilize(BraidWord(3, (2, 1, 2)))
    with pytest.raises(WordError):
        exchange(BraidWord(4, (1, 3, 2, 3)), 1)
    with pytest.raises(WordError):
        BraidWord(3, (3,))
    with pytest.raises(WordError):
        apply_word_move(BraidWord(2), "twist")


def test_text_round_trip():
    w = BraidWord(4, (2, 3, 2, 1, -3))
    assert w.text() == "n=4\n2 3 2 1 -3\n"
    assert BraidWord.parse(w.text()) == w
    assert BraidWord.parse("n=3\n\n") == BraidWord(3)
    with pytest.raises(WordError):
        BraidWord.parse("1 2")


def test_certify_small_cases():
    assert certify_trivial(BraidWord(2, (1,))).status == "certified"
    r = certify_trivial(BraidWord(3))
    assert r.status == "certified" and r.nodes == 1
    assert certify_trivial(BraidWord(3, (1, 2, -1, -2))).status == "certified"


def test_certify_worked_example():
    w = example_word()
    assert closure_invariants(w).component_count == 1
    r = certify_trivial(w, Budget(4, 12, 10**6))
    assert r.status == "certified" and r.found == BraidWord(1)


def test_trefoil_is_not_certified():
    r = certify_trivial(BraidWord(2, (1, 1, 1)), Budget(3, 6, 20000))
    assert r.status == "inconclusive"


def test_signed_destabilization():
    w = example_word()
    for _ in range(3):
        before = closure_invariants(w)
        w = destabilize_with_sign(w, +1)
        after = closure_invariants(w)
        assert (after.strands - before.strands, after.exponent_sum - before.exponent_sum) == (-1, -1)
    assert w == BraidWord(1)


words = st.integers(2, 5).flatmap(
    lambda n: st.builds(
        BraidWord,
        st.just(n),
        st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from((i, -i))), max_size=10).map(tuple),
    )
)


@settings(max_examples=200, deadline=None)
@given(words, st.integers(1, 4), st.sampled_from((1, -1)))
def test_conjugation_and_reduction_keep_invariants(w, g, sign):
    g = min(g, w.strands - 1) * sign
    assert _inv(conjugate(w, g)) == _inv(w)
    assert _inv(reduced(w)) == _inv(w)
    assert free_reduce(free_reduce(w.letters)) == free_reduce(w.letters)


@settings(max_examples=200, deadline=None)
@given(words, st.sampled_from((1, -1)))
def test_stabilization_shifts_invariants(w, sign):
    s = stabilize(w, sign)
    n, e, c = _inv(w)
    assert _inv(s) == (n + 1, e + sign, c)
    assert destabilize(s) == w


@settings(max_examples=200, deadline=None)
@given(words, st.integers(0, 9))
def test_exchange_keeps_invariants(w, k):
    n = w.strands + 1
    top = n - 1
    body = [x for x in w.letters]
    cut = min(k, len(body))
    shaped = BraidWord(n, tuple(body[:cut]) + (top,) + tuple(body[cut:]) + (-top,))
    assert _inv(exchange(shaped, cut)) == _inv(shaped)
