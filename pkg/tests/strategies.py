"""Hypothesis strategies for small soft sets, topologies and groups."""

from __future__ import annotations

from hypothesis import assume, strategies as st

from softbitop.core_sets import SoftSet, Universe
from softbitop.finite_group import cyclic_group, klein_four
from softbitop.finite_topology import generate_topology
from softbitop.soft_topology import SoftTopology

UNIVERSES = {n: Universe(tuple("abcdef"[:n])) for n in range(1, 7)}
GROUPS = (cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four())


@st.composite
def soft_sets(draw, max_universe=4, max_params=3, eligible=False):
    n = draw(st.integers(1, max_universe))
    k = draw(st.integers(1, max_params))
    lo = 1 if eligible else 0
    secs = tuple(draw(st.integers(lo, (1 << n) - 1)) for _ in range(k))
    return SoftSet(UNIVERSES[n], tuple(f"t{i}" for i in range(k)), secs)


@st.composite
def soft_subsets(draw, F: SoftSet, eligible=False):
    secs = []
    for s in F.sections:
        h = draw(st.integers(0, (1 << F.universe.size) - 1)) & s
        if eligible and not h:
            h = s & -s
        secs.append(h)
    return F.with_sections(secs)


@st.composite
def same_shape_pairs(draw, max_universe=4, max_params=3):
    F = draw(soft_sets(max_universe, max_params))
    secs = tuple(draw(st.integers(0, F.universe.full)) for _ in F.sections)
    return F, F.with_sections(secs)


@st.composite
def finite_topologies(draw, max_points=5):
    n = draw(st.integers(1, max_points))
    sub = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=4))
    return generate_topology(sub, n)


@st.composite
def generated_soft_topologies(draw, F: SoftSet, max_generators=3):
    gens = [draw(soft_subsets(F)) for _ in range(draw(st.integers(0, max_generators)))]
    return SoftTopology.generate(gens, F)


@st.composite
def eligible_with_topology(draw, max_universe=3, max_params=2):
    F = draw(soft_sets(max_universe, max_params, eligible=True))
    return F, draw(generated_soft_topologies(F))


@st.composite
def soft_groups(draw, max_params=2, se_cap=16):
    G = draw(st.sampled_from(GROUPS))
    k = draw(st.integers(1, max_params))
    subs = G.subgroups()
    secs = tuple(draw(st.sampled_from(subs)) for _ in range(k))
    F = SoftSet(G.universe, tuple(f"t{i + 1}" for i in range(k)), secs)
    assume(F.se_count() <= se_cap)
    return G, F
