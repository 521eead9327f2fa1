import pytest

from ccov import ConstraintType, Digraph, edges_of, validate_ccfg


def build_ccfg(edges, constraints=(), ctype=ConstraintType.NEGATIVE,
               source="s", sink="t", extra_vertices=()):
    vertices = {v for e in edges for v in e} | set(extra_vertices)
    return validate_ccfg(Digraph(vertices, edges), source, sink,
                         constraints, ctype)


# business-process regression fixture: the graph is the union of the edges
# of its three reference test paths
PROCUREMENT_PATHS = tuple(tuple(p) for p in (
    "ABFCFCDFGCFGIJ",
    "ABCECEGHGHCEGHICDEGIJ",
    "ABCEFGHGIJ",
))


def procurement_ccfg(constraints=(), ctype=ConstraintType.NEGATIVE):
    edges = {e for p in PROCUREMENT_PATHS for e in edges_of(p)}
    return build_ccfg(edges, constraints, ctype, source="A", sink="J")


@pytest.fixture
def diamond():
    # s -> a -> t, s -> b -> t
    return build_ccfg([("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")])


@pytest.fixture
def bypass():
    # diamond plus a b -> a shortcut; exactly three test paths
    return build_ccfg([("s", "a"), ("s", "b"), ("a", "t"), ("b", "t"), ("b", "a")])
