"""Shared fixture loading and cached analyses for the test suite.

Full pipeline runs on the large inputs are expensive, so every test that
needs one goes through the cached accessors below; a graph analyzed once
is reused by the whole session.
"""

import functools
import os

from pgrowth import analyze_graph, parse_graph
from pgrowth.lattice import growth_ball

FIXDIR = os.path.join(os.path.dirname(__file__), "..", "src", "pgrowth",
                      "fixtures")

ALL_FIXTURES = sorted(
    name[:-5] for name in os.listdir(FIXDIR) if name.endswith(".json"))

# inputs whose certified truncation degree is in the hundreds
HEAVY = {"six-uniform-673", "three-uniform", "k6", "cfs"}


@functools.lru_cache(maxsize=None)
def fixture_source(name):
    with open(os.path.join(FIXDIR, name + ".json")) as fh:
        return fh.read()


@functools.lru_cache(maxsize=None)
def fixture_graph(name):
    return parse_graph(fixture_source(name))


@functools.lru_cache(maxsize=None)
def analysis(name, start=0):
    return analyze_graph(fixture_source(name), start_class=start,
                         extra_terms=100, max_memory_gb=4.0)


@functools.lru_cache(maxsize=None)
def ball30(name, start=0):
    a = analysis(name, start)
    return growth_ball(a.graph, a.polytope, start, 30, a.report.C1,
                       max_memory_gb=4.0)
