from __future__ import annotations

import math
import random

import pytest
from hypothesis import settings

from softbitop.bitop import SBTGInstance, SoftBitopSpace
from softbitop.core_sets import SoftSet, Universe
from softbitop.finite_group import SoftGroup, cyclic_group, klein_four
from softbitop.finite_topology import generate_topology
from softbitop.instance_io import load_instance
from softbitop.soft_topology import SoftTopology

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_GROUPS = (cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four())
ABCD = Universe(tuple("abcd"))


def random_sbtg_instances(count: int, seed: int = 1, se_cap: int = 12) -> list[SBTGInstance]:
    """Soft groups over groups of order at most 4 with topologies generated from random soft subsets."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        G = rng.choice(SMALL_GROUPS)
        k = rng.choice([1, 2])
        secs = tuple(rng.choice(G.subgroups()) for _ in range(k))
        F = SoftSet(G.universe, tuple(f"t{i + 1}" for i in range(k)), secs)
        if F.se_count() > se_cap:
            continue

        def random_topology():
            gens = [F.with_sections(tuple(s & rng.getrandbits(G.order) for s in secs))
                    for _ in range(rng.randint(0, 3))]
            return SoftTopology.generate(gens, F)

        out.append(SBTGInstance(SoftGroup(G, F), random_topology(), random_topology()))
    return out


def random_canonical_spaces(count: int, seed: int = 2, se_cap: int = 64) -> list[SoftBitopSpace]:
    """Canonical soft bitopological spaces on prefixes of {a, b, c, d}."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.choice([1, 2, 3])
        sizes = [rng.randint(1, 4) for _ in range(k)]
        if math.prod(sizes) > se_cap:
            continue
        F = SoftSet(ABCD, tuple(f"t{i}" for i in range(k)), tuple((1 << s) - 1 for s in sizes))

        def component(s):
            return generate_topology([rng.getrandbits(s) for _ in range(rng.randint(0, 4))], s)

        tau1 = SoftTopology.canonical(F, [component(s) for s in sizes])
        tau2 = SoftTopology.canonical(F, [component(s) for s in sizes])
        out.append(SoftBitopSpace(F, tau1, tau2))
    return out


@pytest.fixture(scope="session")
def d8():
    return load_instance("d8_example3.json")


@pytest.fixture(scope="session")
def disc_ind():
    return load_instance("discrete_indiscrete.json")


@pytest.fixture(scope="session")
def strict_union_inst():
    return load_instance("strict_union.json")
