import random

from hypothesis import settings, strategies as st

from treeorders.ordinal import Ordinal

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_of(seed):
    return random.Random(seed)


@st.composite
def ordinals(draw, max_exp=3, max_coef=4):
    exps = draw(st.lists(st.integers(0, max_exp), unique=True, max_size=max_exp + 1))
    terms = tuple((e, draw(st.integers(1, max_coef))) for e in sorted(exps, reverse=True))
    return Ordinal(terms)
