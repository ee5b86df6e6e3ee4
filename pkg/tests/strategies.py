"""Hypothesis strategies for small graphs and categories."""

from hypothesis import strategies as st

from iffcat.category import thin_category
from iffcat.graph import FiniteGraph

OBJECT_NAMES = "abcde"


@st.composite
def graphs(draw, max_objects=4, max_morphisms=6):
    n = draw(st.integers(1, max_objects))
    objs = list(OBJECT_NAMES[:n])
    k = draw(st.integers(0, max_morphisms))
    edges = [(f"m{i}", draw(st.sampled_from(objs)), draw(st.sampled_from(objs)))
             for i in range(k)]
    return FiniteGraph.from_edges(objs, edges)


@st.composite
def preorders(draw, max_objects=4):
    """Thin categories generated by a random relation."""
    n = draw(st.integers(1, max_objects))
    objs = list(OBJECT_NAMES[:n])
    pairs = [(x, y) for x in objs for y in objs if x != y]
    rel = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs), unique=True)) if pairs else []
    return thin_category(objs, rel, "P")
