import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import same_shape_pairs, soft_sets
from softbitop.core_sets import (
    SEIndex,
    SESubset,
    SoftSet,
    Universe,
    bits,
    enumerate_se,
    is_section_product_closed,
    make_soft_set,
    mask_of,
    popcount,
    sections_of,
    soft_combine,
    soft_intersection,
    soft_subset,
    soft_union,
    strict_union_extra,
)
from softbitop.errors import CapExceeded, ShapeError, UnknownLabel

U = Universe(("0", "1", "2"))


def test_bits_and_popcount():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert popcount(0b10110) == 3
    assert mask_of([0, 3]) == 0b1001


def test_make_soft_set_mapping_and_sequence_agree():
    a = make_soft_set(U, ["t1", "t2"], {"t1": ["0"], "t2": ["1", "2"]})
    b = make_soft_set(U, ["t1", "t2"], [["0"], ["1", "2"]])
    assert a == b
    assert a.sections == (0b001, 0b110)
    assert a.to_labels() == {"t1": ["0"], "t2": ["1", "2"]}


@pytest.mark.parametrize("sections,error", [
    ({"t1": ["9"], "t2": []}, UnknownLabel),
    ({"t1": ["0"]}, ShapeError),
    ({"t1": [], "t2": [], "t3": []}, UnknownLabel),
])
def test_make_soft_set_rejects(sections, error):
    with pytest.raises(error):
        make_soft_set(U, ["t1", "t2"], sections)


def test_duplicate_params_and_labels_rejected():
    with pytest.raises(ShapeError):
        make_soft_set(U, ["t", "t"], [[], []])
    with pytest.raises(ValueError):
        Universe(("x", "x"))


def test_empty_section_makes_se_empty():
    F = make_soft_set(U, ["t1", "t2"], [["0"], []])
    assert not F.eligible
    assert F.se_count() == 0
    with pytest.raises(ShapeError):
        SEIndex(F)


def test_mixed_radix_order_last_parameter_fastest():
    F = make_soft_set(U, ["t1", "t2"], [["0", "2"], ["1", "2"]])
    idx = enumerate_se(F)
    assert idx.elements == ((0, 1), (0, 2), (2, 1), (2, 2))
    assert idx.index((2, 1)) == 2
    assert idx.labels(3) == ["2", "2"]
    with pytest.raises(ShapeError):
        idx.index((1, 1))


def test_se_cap():
    F = SoftSet(Universe(tuple("abcd")), ("p", "q", "r"), (15, 15, 15))
    with pytest.raises(CapExceeded):
        SEIndex(F, cap=63)
    assert len(SEIndex(F, cap=64)) == 64


def test_strict_union_small_case():
    F = make_soft_set(U, ["t1", "t2"], [["0"], ["0", "1"]])
    H = make_soft_set(U, ["t1", "t2"], [["0", "1"], ["0"]])
    assert strict_union_extra(F, H) == (1, 1)
    assert strict_union_extra(F, F) is None


def test_soft_combine_dispatch():
    F = make_soft_set(U, ["t"], [["0", "1"]])
    H = make_soft_set(U, ["t"], [["1", "2"]])
    assert soft_combine("union", F, H).sections == (0b111,)
    assert soft_combine("intersection", F, H).sections == (0b010,)
    with pytest.raises(ValueError):
        soft_combine("xor", F, H)


def test_shape_mismatch():
    F = make_soft_set(U, ["t"], [["0"]])
    H = make_soft_set(U, ["s"], [["0"]])
    with pytest.raises(ShapeError):
        soft_union(F, H)


@given(soft_sets(eligible=True))
def test_enumeration_matches_product_oracle(F):
    idx = SEIndex(F)
    assert list(idx.elements) == oracles.soft_elements(F.sections)
    assert len(idx) == F.se_count()
    for i in range(len(idx)):
        assert idx.index(idx.unindex(i)) == i


@given(same_shape_pairs())
def test_union_intersection_are_sectionwise(pair):
    F, H = pair
    U_ = soft_union(F, H)
    I_ = soft_intersection(F, H)
    assert soft_subset(F, U_) and soft_subset(H, U_)
    assert soft_subset(I_, F) and soft_subset(I_, H)
    assert soft_union(F, soft_intersection(F, H)) == F


@given(same_shape_pairs())
def test_se_of_union_contains_union_of_se(pair):
    """SE(F) ∪ SE(H) ⊆ SE(F ∪_s H); the extra element, if any, is outside both."""
    F, H = pair
    se_u = set(oracles.soft_elements(soft_union(F, H).sections))
    se_f = set(oracles.soft_elements(F.sections)) if F.eligible else set()
    se_h = set(oracles.soft_elements(H.sections)) if H.eligible else set()
    assert se_f | se_h <= se_u
    extra = strict_union_extra(F, H)
    if extra is None:
        assert se_u == se_f | se_h
    else:
        assert extra in se_u - (se_f | se_h)
        assert extra == min(se_u - (se_f | se_h))


@given(same_shape_pairs(), st.data())
def test_se_of_intersection_is_intersection_of_se(pair, data):
    F, H = pair
    both = soft_intersection(F, H)
    se_i = set(oracles.soft_elements(both.sections)) if both.eligible else set()
    se_f = set(oracles.soft_elements(F.sections)) if F.eligible else set()
    se_h = set(oracles.soft_elements(H.sections)) if H.eligible else set()
    assert se_i == se_f & se_h


@given(soft_sets(eligible=True), st.data())
def test_sections_of_and_product_closure(F, data):
    n = F.se_count()
    members = frozenset(data.draw(st.sets(st.integers(0, n - 1))))
    T = SESubset(F, members)
    secs = sections_of(T)
    assert soft_subset(secs, F)
    se = oracles.soft_elements(F.sections)
    box = {i for i, a in enumerate(se) if all(secs.sections[t] >> a[t] & 1 for t in range(len(a)))}
    assert members <= box
    assert is_section_product_closed(T) == (not members or members == box)


def test_se_subset_of_soft_set():
    F = make_soft_set(U, ["t1", "t2"], [["0", "1"], ["0", "1", "2"]])
    H = make_soft_set(U, ["t1", "t2"], [["1"], ["0", "2"]])
    T = SESubset.of(H, F)
    assert sorted(T.members) == [3, 5]
    assert is_section_product_closed(T)
    with pytest.raises(ShapeError):
        SESubset(F, frozenset({6}))
