"""Hypothesis strategies shared by the property tests."""
import random

from hypothesis import strategies as st

from gfgkit import formulas as fm
from gfgkit.products import LassoWord

STATES = ["p", "q", "r", "s"]

leaves = st.sampled_from(STATES).map(fm.Leaf)

conditions = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.lists(kids, min_size=2, max_size=3).map(fm.conj),
        st.lists(kids, min_size=2, max_size=3).map(fm.disj)),
    max_leaves=8)

valuations = st.sets(st.sampled_from(STATES))


def lasso_words(alphabet="ab", max_prefix=4, max_period=4):
    letters = st.sampled_from(list(alphabet))
    return st.builds(LassoWord.of,
                     st.lists(letters, max_size=max_prefix),
                     st.lists(letters, min_size=1, max_size=max_period))


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1).map(random.Random)
