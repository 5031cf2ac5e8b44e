import pytest

import oracles
from softbitop.bitop import SoftBitopSpace, pairwise_soft_separation
from softbitop.core_sets import SoftSet, Universe, bits, is_section_product_closed
from softbitop.errors import CapExceeded
from softbitop.finite_topology import pairwise_separation
from softbitop.soft_topology import SoftTopology, induced_topology, is_open_star
from softbitop.witnesses import (
    all_soft_subsets,
    find_noncanonical_gap,
    find_non_product_open,
    find_prop3_converse,
    find_strict_union,
)


def test_all_soft_subsets_count_and_order():
    F = SoftSet(Universe(("0", "1", "2")), ("p", "q"), (0b011, 0b101))
    subs = list(all_soft_subsets(F))
    assert len(subs) == 16
    assert subs == sorted(subs, key=SoftSet.sort_key)
    assert len(set(subs)) == 16
    with pytest.raises(CapExceeded):
        list(all_soft_subsets(F, cap=15))


def test_strict_union_from_fixture(strict_union_inst):
    cands = list(strict_union_inst.soft_sets.values())
    r = find_strict_union(cands)
    assert r.found
    F, H, a = r.data["F"], r.data["H"], r.data["element"]
    union = tuple(f | h for f, h in zip(F.sections, H.sections))
    assert a in oracles.soft_elements(union)
    assert a not in oracles.soft_elements(F.sections) and a not in oracles.soft_elements(H.sections)


def test_strict_union_falls_back_to_all_subsets():
    F = SoftSet(Universe(("0", "1")), ("p", "q"), (0b11, 0b11))
    assert not find_strict_union([F]).found
    assert find_strict_union([F], F).found


def test_strict_union_none_for_one_parameter():
    F = SoftSet(Universe(("0", "1")), ("p",), (0b11,))
    r = find_strict_union([], F)
    assert not r.found and r.searched > 0


def test_non_product_open_d8(d8):
    tau = d8.topology("tau1")
    r = find_non_product_open(tau)
    assert r.found
    T = r.data["set"]
    assert len(T) == 16
    assert not is_section_product_closed(T)
    assert is_open_star(T, tau)
    assert induced_topology(tau).is_open(sum(1 << i for i in T.members))
    assert r.data["from"] == (d8.soft_sets["F1"], d8.soft_sets["F2"])


def test_non_product_open_absent_for_indiscrete_single_parameter():
    F = SoftSet(Universe(("0", "1")), ("p",), (0b11,))
    assert not find_non_product_open(SoftTopology.discrete(F)).found


def test_noncanonical_gap(d8):
    r = find_noncanonical_gap(d8.topology("tau1"))
    assert r.found
    H = r.data["soft_set"]
    assert d8.universe.labels_of(H.sections[0]) == ["e", "r2"]
    assert d8.universe.labels_of(H.sections[1]) == ["s", "sr", "sr2", "sr3"]
    assert not find_noncanonical_gap(d8.topology("tau2")).found


@pytest.mark.parametrize("name", ["strict_union_inst", "disc_ind"])
def test_separation_converse_is_verified(name, request):
    inst = request.getfixturevalue(name)
    r = find_prop3_converse(inst.space(), 0)
    assert r.found
    t1, t2 = r.data["tau1"], r.data["tau2"]
    space = SoftBitopSpace(inst.F, t1, t2)
    assert not pairwise_soft_separation(space, 0).holds
    assert pairwise_separation(induced_topology(t1), induced_topology(t2), 0).holds
    # independent check of the soft side
    members = [[H.sections for H in t.iter_members()] for t in (t1, t2)]
    assert not oracles.soft_pairwise_separated(inst.F.sections, *members, 0)


def test_separation_converse_none_within_caps_is_reported():
    F = SoftSet(Universe(("0",)), ("p",), (0b1,))
    r = find_prop3_converse(SoftBitopSpace(F, SoftTopology.discrete(F), SoftTopology.discrete(F)), 2)
    assert not r.found
    assert r.data["level"] == 2
    assert list(bits(F.sections[0])) == [0]
