import random

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ramsey_forge.board import ColoredGraph
from ramsey_forge.builders.p4 import round_bound as p4_bound
from ramsey_forge.builders.pk import internal_bound, round_bound as pk_bound
from ramsey_forge.engine import Status, replay
from ramsey_forge.painters import ChoicePainter
from ramsey_forge.solver import canonicalize
from ramsey_forge.verify import builder_spec, play_checked

bits = st.lists(st.integers(0, 1), max_size=120)


@settings(max_examples=150, deadline=None)
@given(st.integers(10, 30), bits)
def test_p4_any_painter(n, choices):
    res = play_checked(builder_spec("p4", n), ChoicePainter(choices), p4_bound(n))
    assert res.status is Status.BLUE_WIN and not res.failures
    assert replay(res.transcript).round == res.rounds


@settings(max_examples=100, deadline=None)
@given(st.integers(5, 7), st.integers(10, 45), bits)
def test_pk_any_painter(k, n, choices):
    res = play_checked(builder_spec("pk", n, k), ChoicePainter(choices), pk_bound(n, k))
    assert res.status is Status.BLUE_WIN and not res.failures
    assert res.rounds <= internal_bound(n, k)
    assert replay(res.transcript).round == res.rounds


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_canonical_key_invariant_under_relabelling(seed):
    rng = random.Random(seed)
    g = ColoredGraph.from_edges(oracles.random_edges(rng, max_vertices=8))
    assert canonicalize(g) == canonicalize(oracles.relabel(g, rng))
